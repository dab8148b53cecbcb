//! CSV persistence of sweep results.
//!
//! The first line is a metadata comment `# seed=<u64> n=<int> dt=<real> horizon=<real>`;
//! the second is the fixed header given by [`columns`]. Reals are written in
//! shortest round-trip form, so reading a written file reproduces it exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::SweepResult;
use crate::kernel::ThreatDimension;
use crate::params::{ParameterSet, N_PARAMS, PARAM_NAMES};
use crate::socio::{RunRecord, SocioState};
use crate::stats::Table;

/// Output names of the six stocks, in [`SocioState::to_array`] order.
pub const STOCK_COLUMNS: [&str; 6] = [
    "nationalism_level",
    "anthropomorphic_promiscuity",
    "sociographic_prudery",
    "social_conservatism",
    "economic_conservatism",
    "anti_immigrant_sentiment",
];

/// Stock columns in file order.
const STOCK_FILE_ORDER: [&str; 6] = [
    "nationalism_level",
    "economic_conservatism",
    "social_conservatism",
    "anthropomorphic_promiscuity",
    "sociographic_prudery",
    "anti_immigrant_sentiment",
];

pub const N_COLUMNS: usize = 1 + N_PARAMS + 5 + 6 + 2 + 15;

/// The header, in file order.
pub fn columns() -> Vec<String> {
    let mut c = vec!["run_id".to_string()];
    c.extend(PARAM_NAMES.iter().map(|s| s.to_string()));
    c.extend(ThreatDimension::ALL.iter().map(|d| event_count_column(*d)));
    c.extend(STOCK_FILE_ORDER.iter().map(|s| s.to_string()));
    c.push("threat_con_fin_nat".into());
    c.push("threat_soc_pred".into());
    for prefix in ["engagement", "energy", "addedEnergy"] {
        c.extend((1..=5).map(|i| format!("{prefix}_{i}")));
    }
    c
}

pub fn event_count_column(dim: ThreatDimension) -> String {
    format!("hazard_event_count_{}", dim.name())
}

fn stock_value(s: &SocioState, column: &str) -> f64 {
    let i = STOCK_COLUMNS
        .iter()
        .position(|&c| c == column)
        .expect("stock column");
    s.to_array()[i]
}

/// One record as numbers in file order.
pub fn record_values(r: &RunRecord) -> Vec<f64> {
    let mut v = Vec::with_capacity(N_COLUMNS);
    v.push(r.run_id as f64);
    v.extend(r.params.to_array());
    v.extend(r.event_counts.iter().map(|&c| c as f64));
    v.extend(STOCK_FILE_ORDER.iter().map(|c| stock_value(&r.socio, c)));
    v.push(r.threat_con_fin_nat);
    v.push(r.threat_soc_pred);
    v.extend(r.engagement);
    v.extend(r.energy);
    v.extend(r.added_energy);
    v
}

fn record_fields(r: &RunRecord) -> Vec<String> {
    let mut f = Vec::with_capacity(N_COLUMNS);
    f.push(r.run_id.to_string());
    f.extend(r.params.to_array().iter().map(f64::to_string));
    f.extend(r.event_counts.iter().map(u64::to_string));
    f.extend(
        record_values(r)[1 + N_PARAMS + 5..]
            .iter()
            .map(f64::to_string),
    );
    f
}

fn metadata_line(result: &SweepResult) -> String {
    format!(
        "# seed={} n={} dt={} horizon={}",
        result.seed,
        result.records.len(),
        result.dt,
        result.horizon
    )
}

pub fn write_records<W: Write>(result: &SweepResult, mut out: W) -> Result<()> {
    writeln!(out, "{}", metadata_line(result)).map_err(|e| Error::io("<output>", e))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns())?;
    for r in &result.records {
        w.write_record(record_fields(r))?;
    }
    w.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

pub fn write_records_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_records(result, &mut out).map_err(|e| with_path(e, path))?;
    out.flush().map_err(|e| Error::io(path, e))
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    }
}

struct Metadata {
    seed: u64,
    n: usize,
    dt: f64,
    horizon: f64,
}

fn parse_metadata(line: &str) -> Result<Metadata> {
    let body = line
        .strip_prefix('#')
        .ok_or_else(|| Error::Format(format!("expected metadata comment, found `{line}`")))?;
    let (mut seed, mut n, mut dt, mut horizon) = (None, None, None, None);
    for item in body.split_whitespace() {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("bad metadata item `{item}`")))?;
        let bad = || Error::Format(format!("bad metadata value `{item}`"));
        match k {
            "seed" => seed = Some(v.parse().map_err(|_| bad())?),
            "n" => n = Some(v.parse().map_err(|_| bad())?),
            "dt" => dt = Some(v.parse().map_err(|_| bad())?),
            "horizon" => horizon = Some(v.parse().map_err(|_| bad())?),
            _ => return Err(Error::Format(format!("unknown metadata key `{k}`"))),
        }
    }
    match (seed, n, dt, horizon) {
        (Some(seed), Some(n), Some(dt), Some(horizon)) => Ok(Metadata {
            seed,
            n,
            dt,
            horizon,
        }),
        _ => Err(Error::Format(
            "metadata needs seed, n, dt and horizon".into(),
        )),
    }
}

pub fn read_records<R: Read>(input: R) -> Result<SweepResult> {
    let mut reader = BufReader::new(input);
    let mut first = String::new();
    reader
        .read_line(&mut first)
        .map_err(|e| Error::io("<input>", e))?;
    let meta = parse_metadata(first.trim_end())?;

    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let expected = columns();
    let header = csv.headers()?.clone();
    for (i, name) in expected.iter().enumerate() {
        let found = header.get(i).unwrap_or("");
        if found != name {
            return Err(Error::HeaderMismatch {
                column: i + 1,
                expected: name.clone(),
                found: found.to_string(),
            });
        }
    }
    if header.len() > expected.len() {
        return Err(Error::HeaderMismatch {
            column: expected.len() + 1,
            expected: String::new(),
            found: header[expected.len()].to_string(),
        });
    }

    let mut records = Vec::with_capacity(meta.n);
    for (row, rec) in csv.records().enumerate() {
        let rec = rec?;
        let row = row + 1;
        let parse_err = |col: usize| Error::Parse {
            row,
            column: col + 1,
            name: expected[col].clone(),
            value: rec.get(col).unwrap_or("").to_string(),
        };
        let real = |col: usize| -> Result<f64> {
            rec.get(col)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| parse_err(col))
        };
        let int = |col: usize| -> Result<u64> {
            rec.get(col)
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| parse_err(col))
        };
        let run_id = int(0)? as usize;
        let params: [f64; N_PARAMS] = collect_array(|j| real(1 + j))?;
        let base = 1 + N_PARAMS;
        let event_counts: [u64; 5] = collect_array(|j| int(base + j))?;
        let stocks: [f64; 6] = collect_array(|j| real(base + 5 + j))?;
        let mut socio = [0.0; 6];
        for (j, name) in STOCK_FILE_ORDER.iter().enumerate() {
            socio[STOCK_COLUMNS.iter().position(|c| c == name).expect("stock")] = stocks[j];
        }
        let base = base + 11;
        records.push(RunRecord {
            run_id,
            params: ParameterSet::from_array(&params),
            event_counts,
            socio: SocioState::from_array(socio),
            threat_con_fin_nat: real(base)?,
            threat_soc_pred: real(base + 1)?,
            engagement: collect_array(|j| real(base + 2 + j))?,
            energy: collect_array(|j| real(base + 7 + j))?,
            added_energy: collect_array(|j| real(base + 12 + j))?,
        });
    }
    if records.len() != meta.n {
        return Err(Error::Format(format!(
            "metadata announces {} records, file has {}",
            meta.n,
            records.len()
        )));
    }
    Ok(SweepResult {
        seed: meta.seed,
        dt: meta.dt,
        horizon: meta.horizon,
        records,
    })
}

fn collect_array<T: Copy + Default, const K: usize>(
    mut f: impl FnMut(usize) -> Result<T>,
) -> Result<[T; K]> {
    let mut out = [T::default(); K];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = f(j)?;
    }
    Ok(out)
}

pub fn read_records_csv(path: &Path) -> Result<SweepResult> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_records(file).map_err(|e| with_path(e, path))
}

impl SweepResult {
    /// All columns as a numeric table, in file order.
    pub fn to_table(&self) -> Table {
        let names = columns();
        let mut cols = vec![Vec::with_capacity(self.records.len()); names.len()];
        for r in &self.records {
            for (c, v) in cols.iter_mut().zip(record_values(r)) {
                c.push(v);
            }
        }
        Table::new(names, cols).expect("fixed schema")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: usize) -> RunRecord {
        RunRecord {
            run_id: id,
            params: ParameterSet::default(),
            event_counts: [1, 2, 3, 4, 5],
            socio: SocioState::from_array([0.1, -0.2, 0.3, 1.0 / 3.0, -0.5, 0.6]),
            threat_con_fin_nat: 0.123456789012345,
            threat_soc_pred: 1e-300,
            engagement: [0.1, 0.2, 0.3, 0.4, 0.5],
            energy: [1.0, 2.0, 3.0, 4.0, 5.0],
            added_energy: [0.0, 0.7, 0.0, 0.9, 1.1],
        }
    }

    fn result(records: Vec<RunRecord>) -> SweepResult {
        SweepResult {
            seed: 42,
            dt: 0.25,
            horizon: 365.0,
            records,
        }
    }

    fn to_string(r: &SweepResult) -> String {
        let mut buf = Vec::new();
        write_records(r, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn header_shape() {
        let c = columns();
        assert_eq!(c.len(), N_COLUMNS);
        assert_eq!(c.len(), 50);
        assert_eq!(c[0], "run_id");
        assert_eq!(c[22], "hazard_event_count_contagion");
        assert_eq!(c[27], "nationalism_level");
        assert_eq!(c[28], "economic_conservatism");
        assert_eq!(c[33], "threat_con_fin_nat");
        assert_eq!(c[49], "addedEnergy_5");
    }

    #[test]
    fn empty_result_is_header_only() {
        let text = to_string(&result(vec![]));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "# seed=42 n=0 dt=0.25 horizon=365");
        assert!(lines[1].starts_with("run_id,Big_5_agreeableness,"));
        assert_eq!(read_records(text.as_bytes()).unwrap(), result(vec![]));
    }

    #[test]
    fn round_trip() {
        let original = result(vec![record(0), record(1)]);
        let text = to_string(&original);
        assert_eq!(read_records(text.as_bytes()).unwrap(), original);
        let table = original.to_table();
        assert_eq!(table.column("social_conservatism").unwrap()[0], 1.0 / 3.0);
        assert_eq!(
            table.column("hazard_event_count_financial").unwrap()[1],
            2.0
        );
    }

    #[test]
    fn shuffled_header_is_rejected() {
        let text = to_string(&result(vec![record(0)]));
        let swapped = text.replacen(
            "Big_5_agreeableness,Big_5_conscientiousness",
            "Big_5_conscientiousness,Big_5_agreeableness",
            1,
        );
        match read_records(swapped.as_bytes()) {
            Err(Error::HeaderMismatch { column, .. }) => assert_eq!(column, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_cell_names_row_and_column() {
        let text = to_string(&result(vec![record(0), record(1)]));
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let mut cells: Vec<String> = lines[3].split(',').map(String::from).collect();
        cells[5] = "abc".into();
        lines[3] = cells.join(",");
        match read_records(lines.join("\n").as_bytes()) {
            Err(Error::Parse {
                row, column, name, ..
            }) => {
                assert_eq!((row, column), (2, 6));
                assert_eq!(name, "Big_5_openness");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_metadata() {
        assert!(matches!(
            read_records("run_id\n".as_bytes()),
            Err(Error::Format(_))
        ));
    }
}
