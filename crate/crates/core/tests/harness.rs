use threatdyn::harness::{execute_sweep, sample_design, DesignSpec};
use threatdyn::records::{read_records, write_records};
use threatdyn::{read_records_csv, write_records_csv, SimConfig, PARAM_NAMES};

fn ks_uniform(mut values: Vec<f64>, low: f64, high: f64) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = (v - low) / (high - low);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

#[test]
fn design_is_uniform_per_parameter() {
    let spec = DesignSpec::default();
    let design = sample_design(&spec).unwrap();
    assert_eq!(design.len(), 20_000);
    for (j, name) in PARAM_NAMES.iter().enumerate() {
        let r = spec.range(name).unwrap();
        let values: Vec<f64> = design.iter().map(|p| p.to_array()[j]).collect();
        assert!(values.iter().all(|&v| v >= r.low && v < r.high));
        let d = ks_uniform(values, r.low, r.high);
        assert!(d < 0.02, "{name}: KS statistic {d}");
    }
}

fn short_config(n: usize) -> SimConfig {
    let mut c = SimConfig::default();
    c.design.n_runs = n;
    c.horizon = 50.0;
    c
}

fn serialize(config: &SimConfig, workers: usize) -> Vec<u8> {
    let design = sample_design(&config.design).unwrap();
    let result = execute_sweep(&design, config, workers).unwrap();
    let mut buf = Vec::new();
    write_records(&result, &mut buf).unwrap();
    buf
}

#[test]
fn serialized_sweep_is_schedule_independent() {
    let config = short_config(400);
    let reference = serialize(&config, 1);
    for workers in [2, 3, 8] {
        assert!(
            serialize(&config, workers) == reference,
            "workers = {workers}"
        );
    }
}

#[test]
fn every_run_id_exactly_once() {
    let config = short_config(1000);
    let design = sample_design(&config.design).unwrap();
    let result = execute_sweep(&design, &config, 4).unwrap();
    let ids: Vec<usize> = result.records.iter().map(|r| r.run_id).collect();
    assert_eq!(ids, (0..1000).collect::<Vec<_>>());
}

#[test]
fn file_round_trip() {
    let config = short_config(50);
    let design = sample_design(&config.design).unwrap();
    let result = execute_sweep(&design, &config, 2).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    write_records_csv(&result, &path).unwrap();
    assert_eq!(read_records_csv(&path).unwrap(), result);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# seed=42 n=50 dt=0.25 horizon=50\nrun_id,"));
    assert_eq!(read_records(text.as_bytes()).unwrap(), result);
}

#[test]
fn missing_file_is_an_io_error() {
    let e = read_records_csv(std::path::Path::new("/nonexistent/sweep.csv")).unwrap_err();
    assert!(e.is_io());
}
