use proptest::prelude::*;
use threatdyn::kernel::{LOADING_CONTAGION, LOADING_NATURAL, LOADING_PREDATION};
use threatdyn::{
    aggregate_latents, fire_events, step_threat, ThreatGlobals, ThreatParams, ThreatState,
};

fn globals(habituation_rate: f64) -> ThreatGlobals {
    ThreatGlobals {
        habituation_rate,
        energy_decay: 0.1,
        threat_pct_of_media: 0.5,
        tv_media_use: 0.4,
        social_media_use: 0.8,
        neuroticism: 0.6,
        recovery_rate: 0.01,
    }
}

/// Total energy injected by events over `steps` steps (at most one event per step).
fn injected_energy(rate: f64, hazard: f64, steps: usize) -> f64 {
    let g = globals(rate);
    let p = ThreatParams {
        hazard_intensity: hazard,
        initial_concern: 1.0,
    };
    let mut s = ThreatState::default();
    let mut total = 0.0;
    for _ in 0..steps {
        let next = step_threat(&s, &p, &g, 0.25).unwrap();
        match next.event_count - s.event_count {
            0 => {}
            1 => total += next.added_energy_last,
            n => panic!("{n} events in one step"),
        }
        s = next;
    }
    total
}

#[test]
fn habituation_is_monotone_on_a_grid() {
    for hazard in [0.1, 0.5, 1.0] {
        let grid: Vec<f64> = (0..20).map(|i| 0.01 + 0.99 * i as f64 / 19.0).collect();
        let injected: Vec<f64> = grid
            .iter()
            .map(|&r| injected_energy(r, hazard, 1460))
            .collect();
        for w in injected.windows(2) {
            assert!(w[1] <= w[0], "hazard {hazard}: {injected:?}");
        }
        assert!(injected[0] > injected[19]);
    }
}

/// Single-step accumulator, written out independently of the library.
fn oracle_events(a0: f64, inflow: f64, steps: usize) -> u64 {
    let (mut a, mut total) = (a0, 0u64);
    for _ in 0..steps {
        a += inflow;
        while a >= 1.0 {
            a -= 1.0;
            total += 1;
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn event_count_is_exact(k in 0u32..=128, j in 0u32..64, steps in 0usize..2000) {
        // dyadic values keep every sum exact
        let inflow = k as f64 / 64.0;
        let a0 = j as f64 / 64.0;
        let (mut a, mut total) = (a0, 0u64);
        for _ in 0..steps {
            let (next, n) = fire_events(a, inflow).unwrap();
            a = next;
            total += n;
        }
        let expected = (a0 + steps as f64 * inflow).floor() as u64;
        prop_assert_eq!(total, expected);
        prop_assert_eq!(total, oracle_events(a0, inflow, steps));
    }

    #[test]
    fn step_threat_counts_match_oracle(hazard in 0.0f64..=1.0, pct in 0.0f64..=1.0, steps in 1usize..500) {
        let g = ThreatGlobals { threat_pct_of_media: pct, ..globals(0.3) };
        let p = ThreatParams { hazard_intensity: hazard, initial_concern: 0.5 };
        let inflow = hazard * g.media_amplification() * 0.25;
        let mut s = ThreatState::default();
        for _ in 0..steps {
            s = step_threat(&s, &p, &g, 0.25).unwrap();
        }
        prop_assert_eq!(s.event_count, oracle_events(0.0, inflow, steps));
    }

    #[test]
    fn latents_are_linear(e in prop::array::uniform5(0.0f64..10.0), alpha in 0.0f64..100.0) {
        let base = aggregate_latents(&e).unwrap();
        let scaled = aggregate_latents(&e.map(|x| alpha * x)).unwrap();
        let tol = 1e-12 * (1.0 + alpha * 10.0);
        prop_assert!((scaled.threat_soc_pred - alpha * base.threat_soc_pred).abs() <= tol);
        prop_assert!((scaled.threat_con_fin_nat - alpha * base.threat_con_fin_nat).abs() <= tol);
        // weighted means with the published loadings
        let sp = (e[4] + LOADING_PREDATION * e[3]) / (1.0 + LOADING_PREDATION);
        let cfn = (e[1] + LOADING_CONTAGION * e[0] + LOADING_NATURAL * e[2])
            / (1.0 + LOADING_CONTAGION + LOADING_NATURAL);
        prop_assert!((base.threat_soc_pred - sp).abs() < 1e-12);
        prop_assert!((base.threat_con_fin_nat - cfn).abs() < 1e-12);
    }

    #[test]
    fn states_stay_in_bounds(
        hazard in 0.0f64..=1.0,
        concern in 0.0f64..=1.0,
        rate in 0.01f64..=1.0,
        decay in 0.01f64..=0.5,
        neuroticism in 0.0f64..=1.0,
        media in prop::array::uniform3(0.0f64..=1.0),
        dt in 0.01f64..=1.0,
    ) {
        // 200 cases x 5_000 steps = 10^6 steps
        let g = ThreatGlobals {
            habituation_rate: rate,
            energy_decay: decay,
            threat_pct_of_media: media[0],
            tv_media_use: media[1],
            social_media_use: media[2],
            neuroticism,
            recovery_rate: 0.01,
        };
        let p = ThreatParams { hazard_intensity: hazard, initial_concern: concern };
        let mut s = ThreatState::default();
        for _ in 0..5_000 {
            let next = step_threat(&s, &p, &g, dt).unwrap();
            prop_assert!((0.0..1.0).contains(&next.accumulator));
            prop_assert!((0.0..=1.0).contains(&next.assoc_strength));
            prop_assert!(next.energy >= 0.0 && next.energy.is_finite());
            prop_assert!(next.engagement >= 0.0);
            prop_assert!(next.added_energy_last >= 0.0);
            prop_assert!(next.event_count >= s.event_count);
            s = next;
        }
    }
}
