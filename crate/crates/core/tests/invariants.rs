//! Property tests for the structural invariants: dispersion identity,
//! residual bounds, bitwise step symmetry, enumeration completeness against
//! the scan oracle, reciprocity, energy closure, amplitude conservation, and
//! the sampling grid identities.

use num_complex::Complex;
use proptest::prelude::*;

use rsosc::{
    agreement_check, central_difference_signed, enumerate_modes, fit_mode_amplitudes, integrate,
    make_mode, mode_value, oracle_root_scan, planck_mean_energy, qm_oscillator_energy,
    reciprocity_product, residual, rs_energy_decomposition, Branch, EnergyVariant, ModeKind,
    OscillatorParams, QuantumConfig, SampledSeries,
};

type C64 = Complex<f64>;

/// Nyquist product u = w*d strictly inside the domain, bounded away from the
/// tangency where noted.
fn u_all() -> impl Strategy<Value = f64> {
    0.0..=0.999f64
}

fn u_safe() -> impl Strategy<Value = f64> {
    0.0..=0.99f64
}

fn spacing() -> impl Strategy<Value = f64> {
    // Log-uniform over three decades.
    (-2.0..=0.3f64).prop_map(|e| 10f64.powf(e))
}

fn any_kind() -> impl Strategy<Value = ModeKind> {
    prop_oneof![Just(ModeKind::ExactDispersion), Just(ModeKind::AliasFamily)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(
        std::env::var("PROPTEST_CASES").ok().and_then(|v| v.parse().ok()).unwrap_or(64),
    ))]

    /// Every enumerated frequency satisfies sin(omega d) = w d to near-ulp
    /// absolute accuracy.
    #[test]
    fn dispersion_identity_holds(u in u_all(), d in spacing(), twos in -50i64..=50) {
        let w = u / d;
        let branch = Branch::from_twos(twos);
        let m = make_mode(w, d, branch, twos, ModeKind::ExactDispersion).unwrap();
        let defect = ((m.omega() * d).sin() - u).abs();
        prop_assert!(defect <= 1e-12, "defect = {defect}");
    }

    /// Interior residual of every exact mode stays below 1e-12 * max(1, w).
    #[test]
    fn residual_bound_holds(
        u in u_all(),
        d in spacing(),
        twos in -30i64..=30,
        n in 1i64..=10_000,
    ) {
        let w = u / d;
        let m = make_mode(w, d, Branch::from_twos(twos), twos, ModeKind::ExactDispersion).unwrap();
        let r = residual(&m, w, n);
        prop_assert!(r <= 1e-12 * w.max(1.0), "r = {r}, w = {w}, d = {d}, n = {n}");
    }

    /// The signed difference quotient is bitwise invariant under step sign.
    #[test]
    fn step_sign_symmetry_is_bitwise(
        u in u_all(),
        d in spacing(),
        twos in -10i64..=10,
        kind in any_kind(),
    ) {
        let w = u / d;
        let m = make_mode(w, d, Branch::from_twos(twos), twos, kind).unwrap();
        let s = SampledSeries::from_mode(&m, -1, 12).unwrap();
        for n in 0..=9 {
            let fwd = central_difference_signed(&s, n, d).unwrap();
            let bwd = central_difference_signed(&s, n, -d).unwrap();
            prop_assert_eq!(fwd, bwd);
        }
    }

    /// Enumeration agrees with the independent sign-change oracle: same root
    /// count, same values to 1e-9, over windows up to 30 pi / d wide.
    #[test]
    fn enumeration_is_complete(
        u in u_safe(),
        d in spacing(),
        center_pi in -20.0..=20.0f64,
        half_width_pi in 1.0..=15.0f64,
    ) {
        let w = u / d;
        let lo = (center_pi - half_width_pi) * std::f64::consts::PI / d;
        let hi = (center_pi + half_width_pi) * std::f64::consts::PI / d;
        let modes = enumerate_modes(w, d, (lo, hi), ModeKind::ExactDispersion).unwrap();
        let roots = oracle_root_scan(w, d, (lo, hi)).unwrap();
        prop_assert_eq!(modes.len(), roots.len(), "w = {}, d = {}, window = ({}, {})", w, d, lo, hi);
        for (m, r) in modes.iter().zip(roots.iter()) {
            prop_assert!((m.omega() - r).abs() <= 1e-9, "{} vs {}", m.omega(), r);
        }
    }

    /// Sorted exact modes strictly alternate branch below the tangency.
    #[test]
    fn sorted_modes_alternate_branches(u in u_safe(), d in spacing()) {
        let w = u / d;
        let hi = 25.0 * std::f64::consts::PI / d;
        let modes = enumerate_modes(w, d, (-hi, hi), ModeKind::ExactDispersion).unwrap();
        prop_assert!(modes.len() >= 40);
        for pair in modes.windows(2) {
            prop_assert!(pair[0].omega() < pair[1].omega());
            prop_assert_ne!(pair[0].branch(), pair[1].branch());
        }
    }

    /// g_plus(n) g_minus(n) = (-1)^n for every admissible pair of either
    /// kind, any alias copies, out to n = 10^4.
    #[test]
    fn reciprocity_alternates(
        u in u_all(),
        d in spacing(),
        tp in -4i64..=4,
        tm in -4i64..=3,
        kind in any_kind(),
        n in 0i64..=10_000,
    ) {
        let w = u / d;
        let twos_plus = 2 * tp;
        let twos_minus = 2 * tm + 1;
        let plus = make_mode(w, d, Branch::Plus, twos_plus, kind).unwrap();
        let minus = make_mode(w, d, Branch::Minus, twos_minus, kind).unwrap();
        let p = reciprocity_product(&plus, &minus, n).unwrap();
        let want = if n % 2 == 0 { 1.0 } else { -1.0 };
        let err = (p - C64::new(want, 0.0)).norm();
        prop_assert!(err <= 1e-9, "err = {err} at n = {n}");
    }

    /// leading + cross + quadratic telescopes to total within relative 1e-14
    /// throughout the Nyquist domain, both variants.
    #[test]
    fn energy_closure(
        m in 0.1..=10.0f64,
        a in 0.1..=10.0f64,
        u in u_all(),
        d in spacing(),
        twos in -40i64..=40,
    ) {
        let p = OscillatorParams::new(m, a, u / d, d).unwrap();
        for variant in [EnergyVariant::PaperForm, EnergyVariant::ExactForm] {
            let dec = rs_energy_decomposition(&p, Branch::from_twos(twos), twos, variant).unwrap();
            let err = (dec.term_sum() - dec.total).abs();
            prop_assert!(err <= 1e-14 * dec.total.abs(), "err = {err}, total = {}", dec.total);
        }
    }

    /// Amplitudes fitted at any pair of consecutive samples of a marched
    /// trajectory keep their magnitudes: no mode leaks into the other.
    #[test]
    fn amplitude_magnitudes_are_conserved(
        u in 0.01..=0.9f64,
        d in spacing(),
        re0 in -2.0..=2.0f64,
        im0 in -2.0..=2.0f64,
        re1 in -2.0..=2.0f64,
        im1 in -2.0..=2.0f64,
        n in 1usize..=400,
    ) {
        let w = u / d;
        let g0 = C64::new(re0, im0);
        let g1 = C64::new(re1, im1);
        let base = fit_mode_amplitudes(g0, g1, w, d).unwrap();
        let s = integrate(g0, g1, w, d, n + 1).unwrap();
        let local = fit_mode_amplitudes(
            s.get(n as i64).unwrap(),
            s.get(n as i64 + 1).unwrap(),
            w,
            d,
        ).unwrap();
        let scale = base.c_plus().norm() + base.c_minus().norm() + 1e-30;
        prop_assert!(
            (local.c_plus().norm() - base.c_plus().norm()).abs() <= 1e-9 * scale,
            "plus magnitude drifted"
        );
        prop_assert!(
            (local.c_minus().norm() - base.c_minus().norm()).abs() <= 1e-9 * scale,
            "minus magnitude drifted"
        );
        // And the global fit reproduces the marched samples.
        let err = (base.reconstruct(n as i64) - s.get(n as i64).unwrap()).norm();
        prop_assert!(err <= 1e-10 * (1.0 + scale), "reconstruction err = {err}");
    }

    /// Conjugating a mode value runs time backwards.
    #[test]
    fn time_reversal_conjugates(
        u in u_all(),
        d in spacing(),
        twos in -10i64..=10,
        kind in any_kind(),
        n in 0i64..=1000,
    ) {
        let w = u / d;
        let m = make_mode(w, d, Branch::from_twos(twos), twos, kind).unwrap();
        let err = (mode_value(&m, -n) - mode_value(&m, n).conj()).norm();
        prop_assert!(err <= 1e-12, "err = {err}");
    }

    /// Thermal mean energy lies in [0, kT] and decreases as eta grows.
    /// Once eta * w / kT passes the exp overflow threshold the value
    /// underflows to exactly zero, so strictness only applies below it.
    #[test]
    fn planck_is_bounded_and_monotone(
        eta in 1e-6..=100.0f64,
        w in 1e-3..=100.0f64,
        k_t in 1e-3..=100.0f64,
    ) {
        let qc = QuantumConfig::new(eta, k_t).unwrap();
        let e = planck_mean_energy(&qc, w).unwrap();
        prop_assert!(e >= 0.0);
        prop_assert!(e <= k_t * (1.0 + 1e-14));
        let qc2 = QuantumConfig::new(eta * 2.0, k_t).unwrap();
        let e2 = planck_mean_energy(&qc2, w).unwrap();
        if eta * 2.0 * w / k_t < 700.0 {
            prop_assert!(e > 0.0);
            prop_assert!(e2 > 0.0);
            prop_assert!(e2 < e);
        } else {
            prop_assert!(e2 <= e);
        }
    }

    /// Every alias family reproduces the continuum grid samples up to the
    /// parity sign, within 1e-12 * a, out to n = 1000.
    #[test]
    fn families_share_grid_samples(
        a in 0.1..=10.0f64,
        u in 0.0..=6.0f64,
        d in spacing(),
        twos_list in proptest::collection::vec(-6i64..=6, 1..=4),
        n_max in 1i64..=1000,
    ) {
        let w = u / d;
        let families: Vec<_> = twos_list
            .iter()
            .map(|&t| rsosc::DisplacementFamily::new(a, w, d, t).unwrap())
            .collect();
        let rep = agreement_check(a, w, d, &families, n_max).unwrap();
        prop_assert!(rep.pass, "max deviation {} over tolerance {}", rep.max_deviation, rep.tolerance);
    }

    /// The odd-index comparator ladder is linear in both eta and w.
    #[test]
    fn comparator_ladder_is_bilinear(
        eta in 1e-6..=10.0f64,
        w in 0.0..=50.0f64,
        tm in 0i64..=20,
    ) {
        let qc = QuantumConfig::new(eta, 1.0).unwrap();
        let twos = 2 * tm + 1;
        let e = qm_oscillator_energy(&qc, twos, w).unwrap();
        prop_assert_eq!(e, eta * twos as f64 * w);
    }
}

#[test]
fn zero_frequency_splits_the_branches() {
    // At w = 0 the Plus mode is the constant 1 bitwise for every n, and the
    // Minus mode alternates with an imaginary part at the sin(pi) ulp floor.
    let plus = make_mode(0.0_f64, 0.5, Branch::Plus, 0, ModeKind::ExactDispersion).unwrap();
    let minus = make_mode(0.0_f64, 0.5, Branch::Minus, 1, ModeKind::ExactDispersion).unwrap();
    for n in 0..=1000i64 {
        assert_eq!(mode_value(&plus, n), C64::new(1.0, 0.0));
        let v = mode_value(&minus, n);
        let want = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(v.re, want, "n = {n}");
        assert!(v.im.abs() < 1e-12, "n = {n}: {}", v.im);
    }
}

#[test]
fn reciprocity_survives_distant_alias_copies() {
    let w = 0.3;
    let d = 0.7;
    let plus = make_mode(w, d, Branch::Plus, 40, ModeKind::AliasFamily).unwrap();
    let minus = make_mode(w, d, Branch::Minus, -17, ModeKind::AliasFamily).unwrap();
    for n in (0..=10_000).step_by(613) {
        let p = reciprocity_product(&plus, &minus, n).unwrap();
        let want = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert!((p - C64::new(want, 0.0)).norm() < 1e-9, "n = {n}");
    }
}
