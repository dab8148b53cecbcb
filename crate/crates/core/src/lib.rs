//! Threat-perception system dynamics: a deterministic simulator of five threat
//! subsystems coupled to six socio-political stocks, a parameter-sweep
//! harness, and the statistics used to analyse sweeps.
//!
//! ```
//! use threatdyn::{run_simulation, ParameterSet, SimConfig};
//!
//! let record = run_simulation(&ParameterSet::default(), &SimConfig::default()).unwrap();
//! assert!(record.socio.nationalism.abs() < 1.0);
//! ```

// `!(x > 0.0)` style guards are used on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod params;
pub mod records;
pub mod rng;
pub mod socio;
pub mod stats;

pub use config::{load_config, parse_config, SimConfig};
pub use error::{Error, Result};
pub use harness::{execute_sweep, run_design, sample_design, DesignSpec, ParamRange, SweepResult};
pub use kernel::{
    aggregate_latents, fire_events, media_amplification, rescorla_wagner_update, step_threat,
    LatentThreats, ThreatDimension, ThreatGlobals, ThreatParams, ThreatState,
};
pub use params::{ParameterSet, N_PARAMS, PARAM_NAMES};
pub use records::{read_records_csv, write_records_csv};
pub use rng::{prng_next, SplitMix64};
pub use socio::{
    compute_targets, relax, run_simulation, squash, Couplings, RunRecord, SocioParams, SocioState,
};
