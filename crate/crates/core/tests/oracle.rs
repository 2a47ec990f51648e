//! Cross-checks between the spectral oracle and the closed-form reduction.

use std::f64::consts::PI;

use cylbuckle_core::critical_load::{lambda3_full, lambda3_tilde, CriticalLoadProblem};
use cylbuckle_core::material::IsotropicElasticity;
use cylbuckle_core::oracle::{
    assemble_pencil, min_rayleigh, oracle_sweep, reduced_minimum, DenominatorKind, FormKind,
    ModeOperators, ModeWindow, RadialDiscretization,
};
use cylbuckle_core::quadrature::Poly;
use cylbuckle_core::spectral_reduction::{FourierMode, LinearizedMode, ShellGeometry};

fn setup(h: f64) -> (ShellGeometry, IsotropicElasticity) {
    (ShellGeometry::new(h, PI).unwrap(), IsotropicElasticity::normalized(0.3).unwrap())
}

#[test]
fn reduced_pencil_reproduces_full_closed_form() {
    for h in [0.02, 0.005, 0.001] {
        let (g, l) = setup(h);
        let pr = CriticalLoadProblem::with_default_margin(g, l);
        let disc = RadialDiscretization::default();
        for (m, n) in [(1, 0), (1, 5), (3, 4), (6, 13), (12, 2)] {
            let wn = g.wave_numbers(m, n).unwrap();
            let oracle = reduced_minimum(&g, &l, wn, &disc).unwrap();
            let closed = lambda3_full(&pr, &wn).unwrap();
            let rel = (oracle.value / closed.value - 1.0).abs();
            assert!(rel <= 1e-8, "h={h} ({m},{n}) rel={rel:e}");
            assert!((oracle.a_z - closed.a_z).abs() <= 1e-6 * (1.0 + closed.a_z.abs()));
        }
    }
}

#[test]
fn enriching_the_basis_never_raises_the_minimum() {
    let (g, l) = setup(0.01);
    for (m, n) in [(1, 5), (4, 9), (9, 0)] {
        let wn = g.wave_numbers(m, n).unwrap();
        let mut prev = f64::INFINITY;
        for p in [4, 6, 8, 12, 16] {
            let disc = RadialDiscretization::new(p).unwrap();
            let v = min_rayleigh(&assemble_pencil(&g, &l, wn, DenominatorKind::RadialAxial, &disc).unwrap()).unwrap();
            assert!(v <= prev * (1.0 + 1e-12), "p={p} ({m},{n}) {v} > {prev}");
            prev = v;
        }
    }
}

#[test]
fn quadrature_is_exact_on_polynomial_modes() {
    let (g, l) = setup(0.05);
    let disc = RadialDiscretization::default();
    let wn = g.wave_numbers(2, 3).unwrap();
    let ops = ModeOperators::assemble(&g, &l, wn, &disc);
    let mode = FourierMode::new(wn, Poly(vec![1.0, -3.0, 4.0]), Poly(vec![0.5, 2.0]), Poly(vec![-1.0, 0.0, 0.0, 7.0]));
    let x = ops.coefficients_of(&mode).unwrap();
    let f = mode.forms(&g, &l);
    for (kind, want) in [
        (FormKind::Energy, f.energy),
        (FormKind::StrainNorm, f.strain_sq),
        (FormKind::GradNorm, f.grad_sq),
        (FormKind::RadialAxial, f.rz_sq),
        (FormKind::RadialAxialMid, f.rz_mid_sq),
    ] {
        let got = ops.value(kind, &x);
        assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "{kind:?}: {got} vs {want}");
    }
}

/// The linearized optimal mode is one admissible field, so the oracle
/// minimum cannot exceed its quotient.
#[test]
fn oracle_minimum_below_any_trial_field() {
    let (g, l) = setup(0.01);
    let pr = CriticalLoadProblem::with_default_margin(g, l);
    let disc = RadialDiscretization::default();
    for (m, n) in [(1, 5), (2, 7), (5, 3)] {
        let wn = g.wave_numbers(m, n).unwrap();
        let amp = lambda3_tilde(&pr, &wn).unwrap();
        let trial = LinearizedMode::optimal(wn, amp.a_theta, amp.a_z, &l).to_fourier();
        let q = trial.forms(&g, &l).quotient_r1();
        let v = min_rayleigh(&assemble_pencil(&g, &l, wn, DenominatorKind::RadialAxial, &disc).unwrap()).unwrap();
        assert!(v <= q * (1.0 + 1e-12), "({m},{n}) {v} > {q}");
    }
}

#[test]
fn sweep_is_deterministic_and_tracks_the_closed_form() {
    let (g, l) = setup(0.02);
    let pr = CriticalLoadProblem::with_default_margin(g, l);
    let (m_max, n_max) = pr.window();
    let w = ModeWindow::new(m_max, n_max).unwrap();
    let disc = RadialDiscretization::default();
    let a = oracle_sweep(&g, &l, &w, DenominatorKind::RadialAxial, &disc).unwrap();
    let b = oracle_sweep(&g, &l, &w, DenominatorKind::RadialAxial, &disc).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!((a.m, a.n), (b.m, b.n));
    let closed = cylbuckle_core::critical_load::sweep(&pr).unwrap();
    assert!((a.value / closed.lambda - 1.0).abs() < 0.02);
}
