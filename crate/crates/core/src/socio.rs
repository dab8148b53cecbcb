//! Socio-political stocks driven by the threat subsystems, and the full
//! simulation loop.

use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::kernel::{
    aggregate_unchecked, step_unchecked, LatentThreats, ThreatDimension, ThreatGlobals, ThreatState,
};
use crate::params::ParameterSet;

macro_rules! couplings {
    ($($(#[$doc:meta])* $field:ident = $calibrated:expr, $nominal:expr;)*) => {
        /// Coefficients of the target equations. Every field can be overridden
        /// by name from a config file.
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct Couplings {
            $($(#[$doc])* pub $field: f64,)*
        }

        impl Couplings {
            /// Coupling names in declaration order.
            pub const NAMES: &'static [&'static str] = &[$(stringify!($field)),*];

            /// The shipped calibration.
            pub const CALIBRATED: Couplings = Couplings { $($field: $calibrated,)* };

            /// Round-number coefficients before calibration: single-power
            /// gates, no exposure term and engagements capped at 3.
            pub const NOMINAL: Couplings = Couplings { $($field: $nominal,)* };

            pub fn get(&self, name: &str) -> Option<f64> {
                match name {
                    $(stringify!($field) => Some(self.$field),)*
                    _ => None,
                }
            }

            pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
                match name {
                    $(stringify!($field) => self.$field = value,)*
                    _ => return Err(Error::Schema(format!("unknown coupling `{name}`"))),
                }
                Ok(())
            }
        }
    };
}

couplings! {
    nationalism_soc_pred = 2.75, 2.75;
    nationalism_con_fin_nat = -3.62, -3.62;
    nationalism_rel = 0.373, 0.6;
    ap_predation = 0.243, 0.243;
    ap_contagion = -0.638, -0.638;
    ap_financial = -0.142, -0.142;
    ap_natural = -0.299, -0.299;
    ap_social = 0.488, 0.488;
    ap_openness = -0.8, -0.8;
    ap_bias = 0.476, 0.1;
    sp_rel = 0.9, 0.9;
    sp_soc_pred = 0.4, 0.4;
    sp_con_fin_nat = -0.2, -0.2;
    sc_ap = 0.48, 0.48;
    sc_soc_pred = 0.578, 1.0;
    sc_con_fin_nat = -0.492, -1.3;
    ec_ap = 0.26, 0.26;
    ec_sp = -0.08, -0.08;
    ec_soc_pred = 0.422, 0.9;
    ec_con_fin_nat = -0.302, -1.2;
    ais_sc = 0.06, 0.06;
    ais_ec = 0.02, 0.02;
    ais_nationalism = 0.0309, 0.5;
    ais_openness = 0.0975, 0.3;
    ais_conscientiousness = -0.013, -0.2;
    ais_agreeableness = -0.0143, -0.15;
    /// Scale of the media term in the anti-immigrant target.
    media_gain = -50.4, -0.4;
    media_extraversion = 0.5, 0.5;
    /// Power on `(1 - SP_n)` in the media gate.
    media_sp_exponent = 2.89, 1.0;
    /// Power on `(1 - AP_n)` in the media gate.
    media_ap_exponent = 8.0, 1.0;
    fin_engagement = -0.1, -0.3;
    /// Weight of the cumulative financial event rate in the financial term.
    fin_exposure = -0.89, 0.0;
    /// Power on `(1 - N_n)` in the financial gate.
    fin_nationalism_exponent = 8.0, 1.0;
    /// Engagements are clamped to `[0, engagement_cap]` before entering the targets.
    engagement_cap = 1000.0, 3.0;
}

impl Default for Couplings {
    fn default() -> Self {
        Self::CALIBRATED
    }
}

impl Couplings {
    pub fn validate(&self) -> Result<()> {
        for &name in Self::NAMES {
            let v = self.get(name).unwrap_or(f64::NAN);
            if !v.is_finite() {
                return Err(Error::Invariant(format!(
                    "coupling {name} must be finite, got {v}"
                )));
            }
        }
        for (name, v) in [
            ("media_sp_exponent", self.media_sp_exponent),
            ("media_ap_exponent", self.media_ap_exponent),
            ("fin_nationalism_exponent", self.fin_nationalism_exponent),
        ] {
            if v < 0.0 {
                return Err(Error::Invariant(format!(
                    "coupling {name} must be >= 0, got {v}"
                )));
            }
        }
        if self.engagement_cap <= 0.0 {
            return Err(Error::Invariant(format!(
                "coupling engagement_cap must be > 0, got {}",
                self.engagement_cap
            )));
        }
        Ok(())
    }
}

/// Personality and religiosity inputs of the socio-political targets.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SocioParams {
    pub rel_frequency: f64,
    pub openness: f64,
    pub conscientiousness: f64,
    pub agreeableness: f64,
    pub extraversion: f64,
}

impl From<&ParameterSet> for SocioParams {
    fn from(p: &ParameterSet) -> Self {
        Self {
            rel_frequency: p.rel_frequency,
            openness: p.openness,
            conscientiousness: p.conscientiousness,
            agreeableness: p.agreeableness,
            extraversion: p.extraversion,
        }
    }
}

/// The six stocks, each in `(-1, 1)`. Also used for their targets.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SocioState {
    pub nationalism: f64,
    pub anthropomorphic_promiscuity: f64,
    pub sociographic_prudery: f64,
    pub social_conservatism: f64,
    pub economic_conservatism: f64,
    pub anti_immigrant_sentiment: f64,
}

impl SocioState {
    pub fn to_array(&self) -> [f64; 6] {
        [
            self.nationalism,
            self.anthropomorphic_promiscuity,
            self.sociographic_prudery,
            self.social_conservatism,
            self.economic_conservatism,
            self.anti_immigrant_sentiment,
        ]
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self {
            nationalism: v[0],
            anthropomorphic_promiscuity: v[1],
            sociographic_prudery: v[2],
            social_conservatism: v[3],
            economic_conservatism: v[4],
            anti_immigrant_sentiment: v[5],
        }
    }
}

/// Threat-side inputs of the targets at one step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThreatDrivers {
    /// Indexed by [`ThreatDimension::index`].
    pub engagements: [f64; 5],
    /// Financial hazard events per unit time since the start of the run.
    pub financial_event_rate: f64,
}

pub fn squash(x: f64) -> f64 {
    x / (1.0 + x.abs())
}

/// Maps a stock from `(-1, 1)` to `(0, 1)`.
#[inline]
fn unit(x: f64) -> f64 {
    0.5 * (x + 1.0)
}

/// Target values of the six stocks.
///
/// Nationalism, AP and SP respond to the threat inputs directly. Social and
/// economic conservatism also read the current AP and SP stocks. The
/// anti-immigrant target combines this step's nationalism and conservatism
/// targets with personality terms and two gated terms: media exposure,
/// damped by religiosity (SP, AP), and financial threat, damped by
/// nationalism.
pub fn compute_targets(
    drivers: &ThreatDrivers,
    p: &SocioParams,
    g: &ThreatGlobals,
    s: &SocioState,
    c: &Couplings,
) -> SocioState {
    use ThreatDimension::*;
    let e = drivers.engagements.map(|x| x.clamp(0.0, c.engagement_cap));
    let LatentThreats {
        threat_soc_pred: tsp,
        threat_con_fin_nat: tcfn,
    } = aggregate_unchecked(&e);

    let nationalism = squash(
        c.nationalism_soc_pred * tsp
            + c.nationalism_con_fin_nat * tcfn
            + c.nationalism_rel * p.rel_frequency,
    );
    let ap = squash(
        c.ap_predation * e[Predation.index()]
            + c.ap_contagion * e[Contagion.index()]
            + c.ap_financial * e[Financial.index()]
            + c.ap_natural * e[Natural.index()]
            + c.ap_social * e[Social.index()]
            + c.ap_openness * p.openness
            + c.ap_bias,
    );
    let sp = squash(c.sp_rel * p.rel_frequency + c.sp_soc_pred * tsp + c.sp_con_fin_nat * tcfn);
    let sc = squash(
        c.sc_ap * s.anthropomorphic_promiscuity + c.sc_soc_pred * tsp + c.sc_con_fin_nat * tcfn,
    );
    let ec = squash(
        c.ec_ap * s.anthropomorphic_promiscuity
            + c.ec_sp * s.sociographic_prudery
            + c.ec_soc_pred * tsp
            + c.ec_con_fin_nat * tcfn,
    );

    let exposure = g.threat_pct_of_media * (0.5 * g.tv_media_use + 0.5 * g.social_media_use);
    let media = c.media_gain
        * exposure
        * (1.0 + c.media_extraversion * p.extraversion)
        * (1.0 - unit(s.sociographic_prudery)).powf(c.media_sp_exponent)
        * (1.0 - unit(s.anthropomorphic_promiscuity)).powf(c.media_ap_exponent);
    let financial = (c.fin_engagement * e[Financial.index()]
        + c.fin_exposure * drivers.financial_event_rate)
        * (1.0 - unit(s.nationalism)).powf(c.fin_nationalism_exponent);
    let ais = squash(
        c.ais_sc * sc
            + c.ais_ec * ec
            + c.ais_nationalism * nationalism
            + c.ais_openness * p.openness
            + c.ais_conscientiousness * p.conscientiousness
            + c.ais_agreeableness * p.agreeableness
            + media
            + financial,
    );

    SocioState {
        nationalism,
        anthropomorphic_promiscuity: ap,
        sociographic_prudery: sp,
        social_conservatism: sc,
        economic_conservatism: ec,
        anti_immigrant_sentiment: ais,
    }
}

/// First-order relaxation of every stock towards its target.
pub fn relax(s: &SocioState, targets: &SocioState, tau: f64, dt: f64) -> Result<SocioState> {
    if !(dt > 0.0 && tau > 0.0) {
        return Err(Error::domain(format!(
            "dt and tau must be > 0, got dt={dt}, tau={tau}"
        )));
    }
    if dt >= tau {
        return Err(Error::Invariant(format!(
            "dt < tau required, got dt={dt}, tau={tau}"
        )));
    }
    Ok(relax_unchecked(s, targets, dt / tau))
}

#[inline]
fn relax_unchecked(s: &SocioState, targets: &SocioState, rate: f64) -> SocioState {
    let (x, t) = (s.to_array(), targets.to_array());
    SocioState::from_array(std::array::from_fn(|i| x[i] + (t[i] - x[i]) * rate))
}

/// Inputs and outputs of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub run_id: usize,
    pub params: ParameterSet,
    /// Totals over the run, indexed by [`ThreatDimension::index`].
    pub event_counts: [u64; 5],
    /// Final stocks.
    pub socio: SocioState,
    /// Time averages over all steps.
    pub threat_con_fin_nat: f64,
    pub threat_soc_pred: f64,
    /// Final values, indexed by [`ThreatDimension::index`].
    pub engagement: [f64; 5],
    pub energy: [f64; 5],
    pub added_energy: [f64; 5],
}

/// Runs one parameter set from rest (all states zero) over the configured horizon.
pub fn run_simulation(params: &ParameterSet, config: &SimConfig) -> Result<RunRecord> {
    params.validate()?;
    config.validate()?;
    let dt = config.dt;
    let globals = params.threat_globals(config.rho);
    globals.validate(dt)?;
    let amplification = globals.media_amplification();
    let threat_params = ThreatDimension::ALL.map(|d| params.threat_params(d));
    let socio_params = SocioParams::from(params);
    let rate = dt / config.tau;
    let n_steps = config.n_steps();

    let mut threats = [ThreatState::default(); 5];
    let mut socio = SocioState::default();
    let (mut sum_sp, mut sum_cfn) = (0.0, 0.0);
    for step in 0..n_steps {
        for (state, tp) in threats.iter_mut().zip(&threat_params) {
            *state = step_unchecked(state, tp, &globals, amplification, dt);
        }
        let engagements = threats.map(|t| t.engagement);
        let latents = aggregate_unchecked(&engagements);
        sum_sp += latents.threat_soc_pred;
        sum_cfn += latents.threat_con_fin_nat;

        let elapsed = (step + 1) as f64 * dt;
        let drivers = ThreatDrivers {
            engagements,
            financial_event_rate: threats[ThreatDimension::Financial.index()].event_count as f64
                / elapsed,
        };
        let targets = compute_targets(&drivers, &socio_params, &globals, &socio, &config.couplings);
        socio = relax_unchecked(&socio, &targets, rate);
    }

    let steps = n_steps.max(1) as f64;
    Ok(RunRecord {
        run_id: 0,
        params: *params,
        event_counts: threats.map(|t| t.event_count),
        socio,
        threat_con_fin_nat: sum_cfn / steps,
        threat_soc_pred: sum_sp / steps,
        engagement: threats.map(|t| t.engagement),
        energy: threats.map(|t| t.energy),
        added_energy: threats.map(|t| t.added_energy_last),
    })
}
