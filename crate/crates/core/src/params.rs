//! The swept inputs of one simulation run.

use crate::error::{Error, Result};
use crate::kernel::{ThreatDimension, ThreatGlobals, ThreatParams};

/// Number of swept parameters.
pub const N_PARAMS: usize = 21;

/// Parameter names in the canonical (table) order used by designs and CSV files.
pub const PARAM_NAMES: [&str; N_PARAMS] = [
    "Big_5_agreeableness",
    "Big_5_conscientiousness",
    "Big_5_extraversion",
    "Big_5_neuroticism",
    "Big_5_openness",
    "energyDecay",
    "habituationRate",
    "Hazard_intensity_contagion",
    "Hazard_intensity_financial",
    "Hazard_intensity_natural",
    "Hazard_intensity_predation",
    "Hazard_intensity_social",
    "Initial_concern_1",
    "Initial_concern_2",
    "Initial_concern_3",
    "Initial_concern_4",
    "Initial_concern_5",
    "Rel_frequency",
    "socialMediaUse",
    "ThreatPctOfMedia",
    "tvMediaUse",
];

/// Admissible range of every parameter, in [`PARAM_NAMES`] order.
pub fn admissible_range(index: usize) -> (f64, f64) {
    match PARAM_NAMES[index] {
        "habituationRate" => (0.01, 1.0),
        "energyDecay" => (0.01, 0.5),
        _ => (0.0, 1.0),
    }
}

pub fn param_index(name: &str) -> Option<usize> {
    PARAM_NAMES.iter().position(|&n| n == name)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterSet {
    pub agreeableness: f64,
    pub conscientiousness: f64,
    pub extraversion: f64,
    pub neuroticism: f64,
    pub openness: f64,
    pub energy_decay: f64,
    pub habituation_rate: f64,
    /// Indexed by [`ThreatDimension::index`].
    pub hazard_intensity: [f64; 5],
    /// Indexed by [`ThreatDimension::index`].
    pub initial_concern: [f64; 5],
    pub rel_frequency: f64,
    pub social_media_use: f64,
    pub threat_pct_of_media: f64,
    pub tv_media_use: f64,
}

impl Default for ParameterSet {
    /// Mid-range values for every parameter.
    fn default() -> Self {
        Self::from_array(&std::array::from_fn(|i| {
            let (lo, hi) = admissible_range(i);
            0.5 * (lo + hi)
        }))
    }
}

impl ParameterSet {
    /// Builds a set from values in [`PARAM_NAMES`] order.
    pub fn from_array(v: &[f64; N_PARAMS]) -> Self {
        Self {
            agreeableness: v[0],
            conscientiousness: v[1],
            extraversion: v[2],
            neuroticism: v[3],
            openness: v[4],
            energy_decay: v[5],
            habituation_rate: v[6],
            hazard_intensity: [v[7], v[8], v[9], v[10], v[11]],
            initial_concern: [v[12], v[13], v[14], v[15], v[16]],
            rel_frequency: v[17],
            social_media_use: v[18],
            threat_pct_of_media: v[19],
            tv_media_use: v[20],
        }
    }

    pub fn to_array(&self) -> [f64; N_PARAMS] {
        let h = &self.hazard_intensity;
        let c = &self.initial_concern;
        [
            self.agreeableness,
            self.conscientiousness,
            self.extraversion,
            self.neuroticism,
            self.openness,
            self.energy_decay,
            self.habituation_rate,
            h[0],
            h[1],
            h[2],
            h[3],
            h[4],
            c[0],
            c[1],
            c[2],
            c[3],
            c[4],
            self.rel_frequency,
            self.social_media_use,
            self.threat_pct_of_media,
            self.tv_media_use,
        ]
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        param_index(name).map(|i| self.to_array()[i])
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let i = param_index(name)
            .ok_or_else(|| Error::Schema(format!("unknown parameter `{name}`")))?;
        let mut values = self.to_array();
        values[i] = value;
        *self = Self::from_array(&values);
        Ok(())
    }

    /// Lists every field outside its admissible range.
    pub fn validate(&self) -> Result<()> {
        let offending: Vec<String> = self
            .to_array()
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| {
                let (lo, hi) = admissible_range(i);
                (!(v >= lo && v <= hi))
                    .then(|| format!("{} = {v} outside [{lo}, {hi}]", PARAM_NAMES[i]))
            })
            .collect();
        if offending.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(offending))
        }
    }

    pub fn threat_params(&self, dim: ThreatDimension) -> ThreatParams {
        ThreatParams {
            hazard_intensity: self.hazard_intensity[dim.index()],
            initial_concern: self.initial_concern[dim.index()],
        }
    }

    pub fn threat_globals(&self, recovery_rate: f64) -> ThreatGlobals {
        ThreatGlobals {
            habituation_rate: self.habituation_rate,
            energy_decay: self.energy_decay,
            threat_pct_of_media: self.threat_pct_of_media,
            tv_media_use: self.tv_media_use,
            social_media_use: self.social_media_use,
            neuroticism: self.neuroticism,
            recovery_rate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn array_layout_round_trips() {
        let values: [f64; N_PARAMS] = std::array::from_fn(|i| i as f64 / 100.0);
        let p = ParameterSet::from_array(&values);
        assert_eq!(p.to_array(), values);
        assert_eq!(p.get("Hazard_intensity_financial"), Some(0.08));
        assert_eq!(p.hazard_intensity[ThreatDimension::Financial.index()], 0.08);
        assert_eq!(p.get("Initial_concern_5"), Some(0.16));
        assert_eq!(p.initial_concern[ThreatDimension::Social.index()], 0.16);
        assert_eq!(p.get("tvMediaUse"), Some(0.2));
        assert_eq!(p.get("LHS_RUN"), None);
    }

    #[test]
    fn hazard_columns_follow_dimension_order() {
        for d in ThreatDimension::ALL {
            let idx = param_index(&format!("Hazard_intensity_{d}")).unwrap();
            assert_eq!(idx, 7 + d.index());
            let idx = param_index(&format!("Initial_concern_{}", d.number())).unwrap();
            assert_eq!(idx, 12 + d.index());
        }
    }

    #[test]
    fn validation_lists_every_offender() {
        let mut p = ParameterSet::default();
        assert!(p.validate().is_ok());
        p.energy_decay = 0.9;
        p.rel_frequency = -0.1;
        p.openness = f64::NAN;
        match p.validate() {
            Err(Error::Validation(fields)) => {
                assert_eq!(fields.len(), 3);
                assert!(fields[0].starts_with("Big_5_openness"));
                assert!(fields[1].starts_with("energyDecay"));
                assert!(fields[2].starts_with("Rel_frequency"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn set_by_name() {
        let mut p = ParameterSet::default();
        p.set("habituationRate", 0.25).unwrap();
        assert_eq!(p.habituation_rate, 0.25);
        assert!(p.set("nope", 1.0).is_err());
    }
}
