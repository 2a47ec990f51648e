//! Homogeneous pre-buckled state: radial stretch `a(lambda)` of the trivial
//! branch `y = ((1 + a) r, 0, (1 - lambda) z)` and its linear-elastic stress.

use thiserror::Error;

use crate::material::{IsotropicElasticity, SymStrain};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrivialBranchError {
    #[error("NoRoot: radial traction residual does not change sign on [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
    #[error("NonConvergence: radial stretch solve stalled after {0} iterations")]
    NonConvergence(usize),
}

/// Energy `W(F) = What(F^T F)` seen through diagonal Cauchy-Green tensors
/// `C = diag(c1, c1, c3)`.
pub trait HyperelasticModel {
    /// The `(r, r)` entry of `What_C(diag(c_lateral, c_lateral, c_axial))`.
    fn stress_rr(&self, c_lateral: f64, c_axial: f64) -> f64;
}

/// St. Venant-Kirchhoff: `What(C) = lambda/8 tr(C - I)^2 + mu/4 |C - I|^2`.
#[derive(Debug, Clone, Copy)]
pub struct StVenantKirchhoff {
    lame: f64,
    mu: f64,
}

impl StVenantKirchhoff {
    pub fn new(elastic: &IsotropicElasticity) -> Self {
        Self {
            lame: elastic.lame_lambda(),
            mu: elastic.shear_modulus(),
        }
    }
}

impl HyperelasticModel for StVenantKirchhoff {
    fn stress_rr(&self, c_lateral: f64, c_axial: f64) -> f64 {
        let tr = 2.0 * (c_lateral - 1.0) + (c_axial - 1.0);
        0.25 * self.lame * tr + 0.5 * self.mu * (c_lateral - 1.0)
    }
}

/// User-supplied model given directly as the `(r, r)` residual.
pub struct ResidualModel<F>(pub F);

impl<F: Fn(f64, f64) -> f64> HyperelasticModel for ResidualModel<F> {
    fn stress_rr(&self, c_lateral: f64, c_axial: f64) -> f64 {
        (self.0)(c_lateral, c_axial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrivialBranchState {
    pub lambda: f64,
    pub a: f64,
}

pub const DEFAULT_BRACKET: (f64, f64) = (-0.5, 0.5);
const MAX_ITER: usize = 200;
const RESIDUAL_TOL: f64 = 1e-12;
const FD_STEP: f64 = 1e-6;

/// Radial traction residual at `(lambda, a)`.
pub fn radial_residual<M: HyperelasticModel + ?Sized>(model: &M, lambda: f64, a: f64) -> f64 {
    model.stress_rr((1.0 + a).powi(2), (1.0 - lambda).powi(2))
}

/// Solves the natural boundary condition for `a` on the default bracket.
pub fn solve_radial_stretch<M: HyperelasticModel + ?Sized>(
    model: &M,
    lambda: f64,
) -> Result<TrivialBranchState, TrivialBranchError> {
    solve_radial_stretch_in(model, lambda, DEFAULT_BRACKET)
}

/// Safeguarded Newton iteration (finite-difference Jacobian, bisection
/// fallback) for the root of the radial residual inside `bracket`.
pub fn solve_radial_stretch_in<M: HyperelasticModel + ?Sized>(
    model: &M,
    lambda: f64,
    bracket: (f64, f64),
) -> Result<TrivialBranchState, TrivialBranchError> {
    let g = |a: f64| radial_residual(model, lambda, a);
    let (mut lo, mut hi) = bracket;
    let (mut flo, fhi) = (g(lo), g(hi));
    if flo == 0.0 {
        return Ok(TrivialBranchState { lambda, a: lo });
    }
    if fhi == 0.0 {
        return Ok(TrivialBranchState { lambda, a: hi });
    }
    if flo.signum() == fhi.signum() {
        return Err(TrivialBranchError::NoRoot { lo, hi });
    }

    let mut a = if lo < 0.0 && hi > 0.0 { 0.0 } else { 0.5 * (lo + hi) };
    let mut converged_once = false;
    for _ in 0..MAX_ITER {
        let fa = g(a);
        if fa == 0.0 {
            return Ok(TrivialBranchState { lambda, a });
        }
        if fa.signum() == flo.signum() {
            lo = a;
            flo = fa;
        } else {
            hi = a;
        }
        if fa.abs() <= RESIDUAL_TOL {
            // one extra polishing step once inside tolerance
            if converged_once {
                return Ok(TrivialBranchState { lambda, a });
            }
            converged_once = true;
        }
        let d = 1e-7 * (1.0 + a.abs());
        let slope = (g(a + d) - g(a - d)) / (2.0 * d);
        let newton = a - fa / slope;
        let next = if slope.is_finite() && slope != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == a {
            if fa.abs() <= RESIDUAL_TOL {
                return Ok(TrivialBranchState { lambda, a });
            }
            break;
        }
        a = next;
    }
    let fa = g(a);
    if fa.abs() <= RESIDUAL_TOL {
        return Ok(TrivialBranchState { lambda, a });
    }
    Err(TrivialBranchError::NonConvergence(MAX_ITER))
}

/// `a'(0)` by a central difference with step `1e-6`.
pub fn linearized_displacement_slope<M: HyperelasticModel + ?Sized>(
    model: &M,
) -> Result<f64, TrivialBranchError> {
    let plus = solve_radial_stretch(model, FD_STEP)?.a;
    let minus = solve_radial_stretch(model, -FD_STEP)?.a;
    Ok((plus - minus) / (2.0 * FD_STEP))
}

/// Linear-elastic stress of the trivial branch, `-E e_z (x) e_z`.
/// Independent of the shell thickness.
pub fn trivial_stress(elastic: &IsotropicElasticity) -> SymStrain {
    SymStrain::diag(0.0, 0.0, -elastic.young())
}

/// Strain of the leading-order displacement `u = nu r e_r - z e_z`.
pub fn trivial_strain(elastic: &IsotropicElasticity) -> SymStrain {
    let nu = elastic.poisson();
    SymStrain::diag(nu, nu, -1.0)
}
