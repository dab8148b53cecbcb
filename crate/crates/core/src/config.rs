//! Simulation settings and the line-oriented config format.
//!
//! ```text
//! [sim]
//! dt = 0.25
//! horizon = 365
//! tau = 20
//! rho = 0.01
//!
//! [design]
//! n_runs = 20000
//! seed = 42
//!
//! [couplings]
//! nationalism_rel = 0.5
//!
//! [ranges.energyDecay]
//! low = 0.01
//! high = 0.5
//! ```

use crate::error::{Error, Result};
use crate::harness::DesignSpec;
use crate::params::param_index;
use crate::socio::Couplings;

pub const DEFAULT_DT: f64 = 0.25;
pub const DEFAULT_HORIZON: f64 = 365.0;
pub const DEFAULT_TAU: f64 = 20.0;
pub const DEFAULT_RHO: f64 = crate::kernel::DEFAULT_RECOVERY_RATE;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    /// Relaxation time constant of the socio-political stocks.
    pub tau: f64,
    /// Spontaneous recovery rate of associative strength.
    pub rho: f64,
    pub couplings: Couplings,
    pub design: DesignSpec,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: DEFAULT_DT,
            horizon: DEFAULT_HORIZON,
            tau: DEFAULT_TAU,
            rho: DEFAULT_RHO,
            couplings: Couplings::default(),
            design: DesignSpec::default(),
        }
    }
}

impl SimConfig {
    pub fn n_steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("dt", self.dt),
            ("horizon", self.horizon),
            ("tau", self.tau),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Invariant(format!("{name} must be > 0, got {v}")));
            }
        }
        if !(self.rho >= 0.0 && self.rho.is_finite()) {
            return Err(Error::Invariant(format!(
                "rho must be >= 0, got {}",
                self.rho
            )));
        }
        if self.dt >= self.tau {
            return Err(Error::Invariant(format!(
                "dt < tau required, got dt = {} and tau = {}",
                self.dt, self.tau
            )));
        }
        if self.rho * self.dt >= 1.0 {
            return Err(Error::Invariant(format!(
                "rho * dt < 1 required, got {}",
                self.rho * self.dt
            )));
        }
        let max_decay = self.design.range("energyDecay").map_or(0.5, |r| r.high);
        if max_decay * self.dt >= 1.0 {
            return Err(Error::Invariant(format!(
                "energyDecay * dt < 1 required, got {max_decay} * {}",
                self.dt
            )));
        }
        self.couplings.validate()?;
        self.design.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Section {
    Sim,
    Design,
    Couplings,
    Range(usize),
}

/// Parses config text; absent keys keep their defaults.
pub fn parse_config(text: &str) -> Result<SimConfig> {
    let mut config = SimConfig::default();
    let mut section: Option<Section> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let err = |message: String| Error::Config {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let name = header
                .strip_suffix(']')
                .ok_or_else(|| err(format!("unterminated section header `{line}`")))?
                .trim();
            section = Some(match name {
                "sim" => Section::Sim,
                "design" => Section::Design,
                "couplings" => Section::Couplings,
                _ => match name.strip_prefix("ranges.") {
                    Some(param) => Section::Range(
                        param_index(param)
                            .ok_or_else(|| err(format!("unknown parameter `{param}`")))?,
                    ),
                    None => return Err(err(format!("unknown section `[{name}]`"))),
                },
            });
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let real = || -> Result<f64> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(format!("`{key}` expects a real number, got `{value}`")))
        };
        let section = section.ok_or_else(|| err(format!("key `{key}` outside any section")))?;
        match (section, key) {
            (Section::Sim, "dt") => config.dt = real()?,
            (Section::Sim, "horizon") => config.horizon = real()?,
            (Section::Sim, "tau") => config.tau = real()?,
            (Section::Sim, "rho") => config.rho = real()?,
            (Section::Design, "n_runs") => {
                config.design.n_runs = value.parse().map_err(|_| {
                    err(format!(
                        "`n_runs` expects a nonnegative integer, got `{value}`"
                    ))
                })?
            }
            (Section::Design, "seed") => {
                config.design.seed = value.parse().map_err(|_| {
                    err(format!(
                        "`seed` expects an unsigned 64-bit integer, got `{value}`"
                    ))
                })?
            }
            (Section::Couplings, _) => {
                let v = real()?;
                config
                    .couplings
                    .set(key, v)
                    .map_err(|_| err(format!("unknown coupling `{key}`")))?;
            }
            (Section::Range(j), "low") => config.design.ranges[j].low = real()?,
            (Section::Range(j), "high") => config.design.ranges[j].high = real()?,
            _ => return Err(err(format!("unknown key `{key}` in this section"))),
        }
    }
    config.validate().map_err(|e| match e {
        Error::Invariant(message) | Error::Domain(message) => Error::Config {
            line: last_line,
            message,
        },
        other => other,
    })?;
    Ok(config)
}

pub fn load_config(path: &std::path::Path) -> Result<SimConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}
