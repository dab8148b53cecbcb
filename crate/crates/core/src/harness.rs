//! Design-of-experiments sampling and sweep execution.

use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::params::{admissible_range, ParameterSet, N_PARAMS, PARAM_NAMES};
use crate::rng::SplitMix64;
use crate::socio::{run_simulation, RunRecord};

pub const DEFAULT_N_RUNS: usize = 20_000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq)]
pub struct ParamRange {
    pub name: String,
    pub low: f64,
    pub high: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignSpec {
    pub n_runs: usize,
    pub seed: u64,
    /// One range per swept parameter.
    pub ranges: Vec<ParamRange>,
}

impl Default for DesignSpec {
    fn default() -> Self {
        Self {
            n_runs: DEFAULT_N_RUNS,
            seed: DEFAULT_SEED,
            ranges: default_ranges(),
        }
    }
}

/// The admissible range of every parameter, in table order.
pub fn default_ranges() -> Vec<ParamRange> {
    (0..N_PARAMS)
        .map(|i| {
            let (low, high) = admissible_range(i);
            ParamRange {
                name: PARAM_NAMES[i].to_string(),
                low,
                high,
            }
        })
        .collect()
}

impl DesignSpec {
    pub fn range(&self, name: &str) -> Option<&ParamRange> {
        self.ranges.iter().find(|r| r.name == name)
    }

    /// Checks that every parameter appears exactly once with
    /// `low < high` inside its admissible range.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        for (i, r) in self.ranges.iter().enumerate() {
            if self.ranges[..i].iter().any(|o| o.name == r.name) {
                problems.push(format!("range for {} given twice", r.name));
            }
        }
        for (i, &name) in PARAM_NAMES.iter().enumerate() {
            let Some(r) = self.range(name) else {
                problems.push(format!("no range for {name}"));
                continue;
            };
            let (lo, hi) = admissible_range(i);
            if !(r.low < r.high) {
                problems.push(format!("{name}: low {} must be < high {}", r.low, r.high));
            } else if r.low < lo || r.high > hi {
                problems.push(format!(
                    "{name}: [{}, {}] exceeds admissible [{lo}, {hi}]",
                    r.low, r.high
                ));
            }
        }
        if let Some(r) = self
            .ranges
            .iter()
            .find(|r| !PARAM_NAMES.contains(&r.name.as_str()))
        {
            problems.push(format!("unknown parameter {}", r.name));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

/// Independent uniform samples: parameter `j` of run `i` takes draw
/// `i * N_PARAMS + j` of the seeded stream, scaled to `[low, high)`.
pub fn sample_design(spec: &DesignSpec) -> Result<Vec<ParameterSet>> {
    spec.validate()?;
    let bounds: Vec<(f64, f64)> = PARAM_NAMES
        .iter()
        .map(|&n| {
            let r = spec.range(n).expect("validated");
            (r.low, r.high)
        })
        .collect();
    let mut rng = SplitMix64::new(spec.seed);
    Ok((0..spec.n_runs)
        .map(|_| {
            let values: [f64; N_PARAMS] = std::array::from_fn(|j| {
                let (lo, hi) = bounds[j];
                // Rounding can land exactly on `hi`; keep the interval half-open.
                (lo + (hi - lo) * rng.next_f64()).min(hi.next_down())
            });
            ParameterSet::from_array(&values)
        })
        .collect())
}

/// Records of a sweep, ordered by run id.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub seed: u64,
    pub dt: f64,
    pub horizon: f64,
    pub records: Vec<RunRecord>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Runs every parameter set; run `i` gets id `i`. Output does not depend on
/// `workers`. If runs fail, the error names the lowest failing run id.
pub fn execute_sweep(
    design: &[ParameterSet],
    config: &SimConfig,
    workers: usize,
) -> Result<SweepResult> {
    if workers == 0 {
        return Err(Error::Invariant("workers must be >= 1".into()));
    }
    config.validate()?;
    let run = |(i, p): (usize, &ParameterSet)| {
        run_simulation(p, config)
            .map(|mut r| {
                r.run_id = i;
                r
            })
            .map_err(|e| Error::Run {
                run_id: i,
                source: Box::new(e),
            })
    };
    let outcomes = run_all(design, workers, run)?;
    let records = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        seed: config.design.seed,
        dt: config.dt,
        horizon: config.horizon,
        records,
    })
}

#[cfg(feature = "parallel")]
fn run_all<F>(design: &[ParameterSet], workers: usize, run: F) -> Result<Vec<Result<RunRecord>>>
where
    F: Fn((usize, &ParameterSet)) -> Result<RunRecord> + Sync + Send,
{
    use rayon::prelude::*;
    if workers == 1 {
        return Ok(design.iter().enumerate().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Invariant(format!("cannot start worker pool: {e}")))?;
    // Indexed collect keeps input order regardless of scheduling.
    Ok(pool.install(|| design.par_iter().enumerate().map(run).collect()))
}

#[cfg(not(feature = "parallel"))]
fn run_all<F>(design: &[ParameterSet], _workers: usize, run: F) -> Result<Vec<Result<RunRecord>>>
where
    F: Fn((usize, &ParameterSet)) -> Result<RunRecord>,
{
    Ok(design.iter().enumerate().map(run).collect())
}

/// Samples the configured design and sweeps it.
pub fn run_design(config: &SimConfig, workers: usize) -> Result<SweepResult> {
    let design = sample_design(&config.design)?;
    execute_sweep(&design, config, workers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize) -> SimConfig {
        let mut c = SimConfig::default();
        c.design.n_runs = n;
        c.horizon = 20.0;
        c
    }

    #[test]
    fn empty_design() {
        let spec = DesignSpec {
            n_runs: 0,
            ..DesignSpec::default()
        };
        assert!(sample_design(&spec).unwrap().is_empty());
    }

    #[test]
    fn design_is_deterministic_and_in_range() {
        let spec = DesignSpec {
            n_runs: 500,
            ..DesignSpec::default()
        };
        let a = sample_design(&spec).unwrap();
        assert_eq!(a, sample_design(&spec).unwrap());
        assert!(a
            .iter()
            .all(|p| p.energy_decay >= 0.01 && p.energy_decay < 0.5));
        assert!(a.iter().all(|p| p.validate().is_ok()));
    }

    #[test]
    fn draw_layout() {
        let spec = DesignSpec {
            n_runs: 3,
            ..DesignSpec::default()
        };
        let design = sample_design(&spec).unwrap();
        let draws: Vec<f64> = SplitMix64::new(42).take(3 * N_PARAMS).collect();
        let p = design[2].to_array();
        assert_eq!(p[0], draws[2 * N_PARAMS]);
        // habituationRate (index 6) is scaled to [0.01, 1)
        assert_eq!(p[6], 0.01 + (1.0 - 0.01) * draws[2 * N_PARAMS + 6]);
    }

    #[test]
    fn spec_validation() {
        let mut spec = DesignSpec::default();
        spec.ranges.pop();
        assert!(matches!(spec.validate(), Err(Error::Validation(_))));
        let mut spec = DesignSpec::default();
        spec.ranges.push(spec.ranges[0].clone());
        assert!(spec.validate().is_err());
        let mut spec = DesignSpec::default();
        spec.ranges[3].low = 0.9;
        spec.ranges[3].high = 0.1;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn run_ids_and_worker_independence() {
        let config = small(3);
        let design = sample_design(&config.design).unwrap();
        let one = execute_sweep(&design, &config, 1).unwrap();
        assert_eq!(
            one.records.iter().map(|r| r.run_id).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert_eq!(one, execute_sweep(&design, &config, 4).unwrap());
        assert!(execute_sweep(&design, &config, 0).is_err());
    }

    #[test]
    fn failing_run_is_named() {
        let config = small(4);
        let mut design = sample_design(&config.design).unwrap();
        design[2].openness = 1.5;
        design[3].openness = -1.0;
        match execute_sweep(&design, &config, 2) {
            Err(Error::Run { run_id, source }) => {
                assert_eq!(run_id, 2);
                assert!(matches!(*source, Error::Validation(_)));
            }
            other => panic!("{other:?}"),
        }
    }
}
