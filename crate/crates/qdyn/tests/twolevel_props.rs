//! Properties of the driven two-level model: agreement with the closed-form
//! single-period fidelity, the exact compensation identity at odd-pi wait
//! phases, periodicity and parity symmetries, and the measured sign of the
//! detuning-induced fidelity asymmetry.

mod common;

use common::{two_level_fidelity_oracle, XorShift64};
use proptest::prelude::*;
use qdyn::twolevel::{
    analytic_fidelity_rotation, build_schedule, fidelity_series, magic_identity_residual,
    uncompensated_fidelity, Gating, TwoLevelConfig,
};
use qdyn::QdynError;

fn gated(eps: f64, phase: f64, n: usize) -> TwoLevelConfig {
    let mut cfg = TwoLevelConfig::calibrated(1.0, 10.0);
    cfg.eps_rot = eps;
    cfg.set_v_t2(phase);
    cfg.n_periods = n;
    cfg
}

#[test]
fn magic_phase_cancels_any_rotation_error() {
    // V t2 an odd multiple of pi makes one period the exact identity,
    // independent of the rotation error and the drive strength.
    for (eps, scale, mult) in [
        (0.3, 1.0, 1.0),
        (-0.45, 0.7, 3.0),
        (0.011, 1.9, 5.0),
        (0.5, 0.5, 1.0),
    ] {
        let mut cfg = gated(eps, mult * std::f64::consts::PI, 1);
        cfg.rabi_base *= scale;
        let schedule = build_schedule(&cfg).unwrap();
        let u = schedule.period_propagator().unwrap();
        let res = u.max_abs_diff_identity();
        assert!(res < 1e-12, "residual {res} at eps={eps} scale={scale}");

        let direct = magic_identity_residual(eps, scale).unwrap();
        assert!(direct < 1e-12);
    }
}

#[test]
fn numeric_trace_matches_independent_matrix_product() {
    for (eps, phase) in [(0.1, 0.0), (0.007, 2.5), (-0.04, -1.3), (0.015, 4.9)] {
        let cfg = gated(eps, phase, 50);
        let series = fidelity_series(&cfg).unwrap();
        let oracle = two_level_fidelity_oracle(eps, phase, 50);
        for (k, (a, b)) in series.iter().zip(&oracle).enumerate() {
            assert!(
                (a - b).abs() < 1e-12,
                "trace mismatch at period {}: {a} vs {b}",
                k + 1
            );
        }
    }
}

#[test]
fn uncompensated_decay_follows_cosine_law() {
    let cfg = gated(0.02, 0.0, 40);
    let series = fidelity_series(&cfg).unwrap();
    for (k, f) in series.iter().enumerate() {
        let want = uncompensated_fidelity(0.02, k + 1);
        assert!((f - want).abs() < 1e-12, "period {}: {f} vs {want}", k + 1);
    }
}

#[test]
fn compensated_example_stays_above_uncompensated() {
    // eps = 0.007 with wait phase 2.5: partial compensation keeps F(50 T)
    // near 0.88 on a single qubit (the closed form gives 0.884546), while
    // the interaction-free run decays to cos^2(50 pi eps) = 0.206.
    let on = fidelity_series(&gated(0.007, 2.5, 50)).unwrap();
    let off = fidelity_series(&gated(0.007, 0.0, 50)).unwrap();
    assert!(
        (on[49] - 0.8845456439662339).abs() < 1e-10,
        "compensated F(50T) = {}",
        on[49]
    );
    assert!(off[49] < 0.21, "uncompensated F(50T) = {}", off[49]);
    assert!(on[49] > off[49] + 0.6);
    assert!((off[49] - uncompensated_fidelity(0.007, 50)).abs() < 1e-12);
}

#[test]
fn detuning_error_is_asymmetric_in_wait_phase_sign() {
    // With a pure detuning error the fidelity acquires an odd component in
    // the wait phase: measured F(+pi/2) - F(-pi/2) = +pi eps^3 * 2 at
    // leading order, so positive phases compensate better at positive
    // detuning.
    let eps = 0.01;
    let mut base = TwoLevelConfig::calibrated(1.0, 10.0);
    base.delta = std::f64::consts::PI * eps / base.t1;
    base.n_periods = 1;

    let mut plus = base.clone();
    plus.set_v_t2(std::f64::consts::FRAC_PI_2);
    let mut minus = base.clone();
    minus.set_v_t2(-std::f64::consts::FRAC_PI_2);
    let fp = fidelity_series(&plus).unwrap()[0];
    let fm = fidelity_series(&minus).unwrap()[0];
    let diff = fp - fm;
    let predicted = 2.0 * std::f64::consts::PI * eps.powi(3);
    assert!(diff > 0.0, "expected positive asymmetry, got {diff}");
    assert!(
        (diff - predicted).abs() < 0.02 * predicted,
        "asymmetry {diff} vs leading-order {predicted}"
    );

    // The symmetric part follows the quadratic law 2 eps^2 (1 - cos phi).
    let mut pi_phase = base.clone();
    pi_phase.set_v_t2(std::f64::consts::PI);
    let infid = 1.0 - fidelity_series(&pi_phase).unwrap()[0];
    assert!((infid - 4.0 * eps * eps).abs() < 1e-6);
}

#[test]
fn configuration_validation_rejects_bad_inputs() {
    let mut cfg = gated(0.0, 1.0, 1);
    cfg.t1 = 0.0;
    assert!(matches!(
        build_schedule(&cfg),
        Err(QdynError::InvalidConfig { .. })
    ));

    let mut cfg = gated(0.0, 1.0, 1);
    cfg.n_periods = 0;
    assert!(cfg.validate().is_err());

    let mut cfg = gated(0.0, 1.0, 1);
    cfg.delta = f64::NAN;
    assert!(cfg.validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prop_single_period_matches_closed_form(
        eps in -0.015f64..0.015,
        phase in -5.0f64..5.0,
    ) {
        let cfg = gated(eps, phase, 1);
        let f = fidelity_series(&cfg).unwrap()[0];
        let want = analytic_fidelity_rotation(eps, phase);
        prop_assert!((f - want).abs() < 1e-10, "{f} vs {want}");
    }

    #[test]
    fn prop_magic_identity_for_any_error(
        eps in -0.5f64..0.5,
        scale in 0.5f64..2.0,
    ) {
        let res = magic_identity_residual(eps, scale).unwrap();
        prop_assert!(res < 1e-12);
    }

    #[test]
    fn prop_fidelity_even_in_rotation_error(
        eps in 0.001f64..0.4,
        phase in -5.0f64..5.0,
    ) {
        let fp = fidelity_series(&gated(eps, phase, 3)).unwrap();
        let fm = fidelity_series(&gated(-eps, phase, 3)).unwrap();
        for (a, b) in fp.iter().zip(&fm) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn prop_wait_phase_is_two_pi_periodic(
        eps in -0.3f64..0.3,
        phase in -3.0f64..3.0,
    ) {
        let f0 = fidelity_series(&gated(eps, phase, 2)).unwrap();
        let f1 = fidelity_series(&gated(eps, phase + 2.0 * std::f64::consts::PI, 2)).unwrap();
        for (a, b) in f0.iter().zip(&f1) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn prop_always_on_matches_gated_when_detuning_free(seed in 1u64..4000) {
        // With the interaction active during pulses the pulse Hamiltonian
        // changes, so gating matters; a vanishing interaction must make the
        // two modes identical.
        let mut rng = XorShift64::new(seed);
        let eps = rng.range(-0.2, 0.2);
        let mut a = gated(eps, 0.0, 3);
        a.v = 0.0;
        let mut b = a.clone();
        b.gating = Gating::AlwaysOn;
        let fa = fidelity_series(&a).unwrap();
        let fb = fidelity_series(&b).unwrap();
        for (x, y) in fa.iter().zip(&fb) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
