//! Threat-perception kernel.
//!
//! Each of the five threat dimensions is an independent stock-and-flow
//! subsystem: a deterministic event accumulator feeds hazard events, each
//! event injects energy scaled by the remaining "surprise" `1 - V` of a
//! Rescorla-Wagner associative strength, energy decays exponentially, and
//! engagement is the concern-weighted energy. Engagements are then pooled
//! into two latent clusters using fixed factor loadings.

use std::fmt;

use crate::error::{check_range, Error, Result};

/// Rescorla-Wagner asymptote. Habituation saturates at a unit strength.
pub const ASYMPTOTE: f64 = 1.0;

/// Default spontaneous recovery of associative strength per unit time.
pub const DEFAULT_RECOVERY_RATE: f64 = 0.01;

/// Half-width of the neuroticism modulation of injected energy.
const NEUROTICISM_GAIN: f64 = 0.5;

/// Factor loadings of the social/predation cluster (social is the marker item).
pub const LOADING_SOCIAL: f64 = 1.00;
pub const LOADING_PREDATION: f64 = 0.81;
/// Factor loadings of the contagion/financial/natural cluster (financial is the marker item).
pub const LOADING_FINANCIAL: f64 = 1.00;
pub const LOADING_CONTAGION: f64 = 0.86;
pub const LOADING_NATURAL: f64 = 0.56;

/// The five threat dimensions, indexed alphabetically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThreatDimension {
    Contagion,
    Financial,
    Natural,
    Predation,
    Social,
}

impl ThreatDimension {
    pub const ALL: [ThreatDimension; 5] = [
        ThreatDimension::Contagion,
        ThreatDimension::Financial,
        ThreatDimension::Natural,
        ThreatDimension::Predation,
        ThreatDimension::Social,
    ];

    /// Zero-based position in [`ThreatDimension::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    /// One-based suffix used by the numbered output columns (`engagement_1` ...).
    pub fn number(self) -> usize {
        self.index() + 1
    }

    pub fn from_number(number: usize) -> Option<Self> {
        number
            .checked_sub(1)
            .and_then(|i| Self::ALL.get(i).copied())
    }

    pub fn name(self) -> &'static str {
        match self {
            ThreatDimension::Contagion => "contagion",
            ThreatDimension::Financial => "financial",
            ThreatDimension::Natural => "natural",
            ThreatDimension::Predation => "predation",
            ThreatDimension::Social => "social",
        }
    }
}

impl fmt::Display for ThreatDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-dimension inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreatParams {
    /// Hazard events per unit time, in `[0, 1]`.
    pub hazard_intensity: f64,
    /// Weight turning energy into engagement, in `[0, 1]`.
    pub initial_concern: f64,
}

impl ThreatParams {
    pub fn validate(&self) -> Result<()> {
        check_range("hazard_intensity", self.hazard_intensity, 0.0, 1.0)?;
        check_range("initial_concern", self.initial_concern, 0.0, 1.0)
    }
}

/// Inputs shared by all five subsystems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreatGlobals {
    pub habituation_rate: f64,
    pub energy_decay: f64,
    pub threat_pct_of_media: f64,
    pub tv_media_use: f64,
    pub social_media_use: f64,
    pub neuroticism: f64,
    /// Spontaneous recovery `rho` of associative strength per unit time.
    pub recovery_rate: f64,
}

impl ThreatGlobals {
    pub fn validate(&self, dt: f64) -> Result<()> {
        check_range("habituationRate", self.habituation_rate, 0.01, 1.0)?;
        check_range("energyDecay", self.energy_decay, 0.01, 0.5)?;
        check_range("ThreatPctOfMedia", self.threat_pct_of_media, 0.0, 1.0)?;
        check_range("tvMediaUse", self.tv_media_use, 0.0, 1.0)?;
        check_range("socialMediaUse", self.social_media_use, 0.0, 1.0)?;
        check_range("Big_5_neuroticism", self.neuroticism, 0.0, 1.0)?;
        if !(self.recovery_rate >= 0.0) {
            return Err(Error::domain(format!(
                "recovery rate must be >= 0, got {}",
                self.recovery_rate
            )));
        }
        if !(dt > 0.0) {
            return Err(Error::domain(format!("dt must be > 0, got {dt}")));
        }
        if self.energy_decay * dt >= 1.0 || self.recovery_rate * dt >= 1.0 {
            return Err(Error::domain(format!(
                "decay rates times dt must stay below 1 (energyDecay={}, rho={}, dt={dt})",
                self.energy_decay, self.recovery_rate
            )));
        }
        Ok(())
    }

    pub fn media_amplification(&self) -> f64 {
        // Ranges are validated before any stepping.
        media_amplification_unchecked(
            self.threat_pct_of_media,
            self.tv_media_use,
            self.social_media_use,
        )
    }
}

/// State of one threat subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThreatState {
    /// Fractional progress towards the next hazard event, in `[0, 1)`.
    pub accumulator: f64,
    /// Associative strength `V`, in `[0, 1]`.
    pub assoc_strength: f64,
    pub energy: f64,
    /// Energy injected by the most recent event (0 before any event).
    pub added_energy_last: f64,
    pub event_count: u64,
    pub engagement: f64,
}

/// The two latent threat clusters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LatentThreats {
    pub threat_soc_pred: f64,
    pub threat_con_fin_nat: f64,
}

/// Multiplier on hazard inflow from threatening media content: `1 + pct * (tv + sm) / 2`.
pub fn media_amplification(pct: f64, tv: f64, sm: f64) -> Result<f64> {
    check_range("ThreatPctOfMedia", pct, 0.0, 1.0)?;
    check_range("tvMediaUse", tv, 0.0, 1.0)?;
    check_range("socialMediaUse", sm, 0.0, 1.0)?;
    Ok(media_amplification_unchecked(pct, tv, sm))
}

#[inline]
fn media_amplification_unchecked(pct: f64, tv: f64, sm: f64) -> f64 {
    1.0 + pct * (0.5 * tv + 0.5 * sm)
}

/// One Rescorla-Wagner trial towards the unit asymptote.
pub fn rescorla_wagner_update(strength: f64, rate: f64) -> Result<f64> {
    check_range("associative strength", strength, 0.0, 1.0)?;
    check_range("learning rate", rate, 0.0, 1.0)?;
    Ok(rw_step(strength, rate))
}

#[inline]
fn rw_step(strength: f64, rate: f64) -> f64 {
    // Clamp guards against 1 ulp overshoot when rate == 1.
    (strength + rate * (ASYMPTOTE - strength)).min(ASYMPTOTE)
}

/// Adds `inflow` to the accumulator and emits one event per whole unit crossed.
pub fn fire_events(accumulator: f64, inflow: f64) -> Result<(f64, u64)> {
    if !(accumulator >= 0.0) || !accumulator.is_finite() {
        return Err(Error::domain(format!(
            "accumulator must be finite and >= 0, got {accumulator}"
        )));
    }
    if !(inflow >= 0.0) || !inflow.is_finite() {
        return Err(Error::domain(format!(
            "inflow must be finite and >= 0, got {inflow}"
        )));
    }
    Ok(fire_unchecked(accumulator, inflow))
}

#[inline]
fn fire_unchecked(accumulator: f64, inflow: f64) -> (f64, u64) {
    let total = accumulator + inflow;
    let whole = total.floor();
    (total - whole, whole as u64)
}

/// Advances one subsystem by `dt`.
///
/// Order of updates: event firing, per-event energy injection and
/// habituation, energy decay, spontaneous recovery of `V`, engagement.
pub fn step_threat(
    state: &ThreatState,
    params: &ThreatParams,
    globals: &ThreatGlobals,
    dt: f64,
) -> Result<ThreatState> {
    params.validate()?;
    globals.validate(dt)?;
    check_range("accumulator", state.accumulator, 0.0, 1.0)?;
    check_range("associative strength", state.assoc_strength, 0.0, 1.0)?;
    if !(state.energy >= 0.0) {
        return Err(Error::domain(format!(
            "energy must be >= 0, got {}",
            state.energy
        )));
    }
    let amplification = globals.media_amplification();
    Ok(step_unchecked(state, params, globals, amplification, dt))
}

/// Hot-loop variant of [`step_threat`]; callers validate once up front.
#[inline]
pub(crate) fn step_unchecked(
    state: &ThreatState,
    params: &ThreatParams,
    globals: &ThreatGlobals,
    amplification: f64,
    dt: f64,
) -> ThreatState {
    let mut next = *state;
    let inflow = params.hazard_intensity * amplification * dt;
    let (accumulator, events) = fire_unchecked(state.accumulator, inflow);
    next.accumulator = accumulator;

    let sensitivity = 1.0 + NEUROTICISM_GAIN * (globals.neuroticism - 0.5);
    for _ in 0..events {
        let added = (ASYMPTOTE - next.assoc_strength) * sensitivity;
        next.energy += added;
        next.added_energy_last = added;
        next.assoc_strength = rw_step(next.assoc_strength, globals.habituation_rate);
    }
    next.event_count += events;

    next.energy *= 1.0 - globals.energy_decay * dt;
    next.assoc_strength *= 1.0 - globals.recovery_rate * dt;
    next.engagement = params.initial_concern * next.energy;
    next
}

/// Pools engagements (indexed by [`ThreatDimension::index`]) into the two latent clusters.
pub fn aggregate_latents(engagements: &[f64; 5]) -> Result<LatentThreats> {
    for dim in ThreatDimension::ALL {
        let e = engagements[dim.index()];
        if !(e >= 0.0) {
            return Err(Error::domain(format!(
                "engagement_{} ({dim}) must be >= 0, got {e}",
                dim.number()
            )));
        }
    }
    Ok(aggregate_unchecked(engagements))
}

#[inline]
pub(crate) fn aggregate_unchecked(e: &[f64; 5]) -> LatentThreats {
    use ThreatDimension::*;
    let soc_pred = (LOADING_SOCIAL * e[Social.index()] + LOADING_PREDATION * e[Predation.index()])
        / (LOADING_SOCIAL + LOADING_PREDATION);
    let con_fin_nat = (LOADING_FINANCIAL * e[Financial.index()]
        + LOADING_CONTAGION * e[Contagion.index()]
        + LOADING_NATURAL * e[Natural.index()])
        / (LOADING_FINANCIAL + LOADING_CONTAGION + LOADING_NATURAL);
    LatentThreats {
        threat_soc_pred: soc_pred,
        threat_con_fin_nat: con_fin_nat,
    }
}
