//! Simplified-strain quotient on r-linearized modes with a free radial
//! profile: unknowns are the Chebyshev coefficients of `f_r`, `a_theta` and `a_z`.

use nalgebra::{DMatrix, DVector};

use super::basis::ChebyshevBasis;
use super::pencil::{min_rayleigh_with_vector, ModePencil, RadialDiscretization};
use super::OracleError;
use crate::material::IsotropicElasticity;
use crate::quadrature::GaussLegendre;
use crate::spectral_reduction::{ShellGeometry, TrigWeights, WaveNumbers};

/// Pencil for the simplified quotient over linearized modes. The `f_r` block
/// comes first, then `a_theta` (only when `n > 0`), then `a_z`.
pub fn reduced_pencil(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    wn: WaveNumbers,
    disc: &RadialDiscretization,
) -> ModePencil {
    let basis = ChebyshevBasis::new(disc.degree());
    let nb = basis.len();
    let has_theta = wn.n > 0;
    let it = nb;
    let iz = if has_theta { nb + 1 } else { nb };
    let dim = iz + 1;
    let h = geom.h();
    let n = wn.nf();
    let m = wn.m_hat;
    let w = TrigWeights::new(wn.n, geom.length());
    let nu = elastic.poisson();
    let vol = nu / (1.0 - 2.0 * nu);
    let inv = 1.0 / (1.0 + nu);

    let mid = DVector::from_vec(basis.values(0.0));
    let mut a = DMatrix::<f64>::zeros(dim, dim);
    let rule = GaussLegendre::new(disc.quad_nodes());
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        let r = 1.0 + 0.5 * h * x;
        let t = r - 1.0;
        let dv = 0.5 * h * wx * r;
        let sr = r.sqrt();
        let (_, d) = basis.values_and_derivatives(x);
        let mut err = DVector::zeros(dim);
        let mut ett = DVector::zeros(dim);
        let mut etz = DVector::zeros(dim);
        let mut ezz = DVector::zeros(dim);
        for k in 0..nb {
            err[k] = d[k] * 2.0 / h / sr;
            ett[k] = (t * n * n + 1.0) * mid[k] / sr;
            etz[k] = -(r * r - 1.0) * m * n * mid[k] / (2.0 * sr);
            ezz[k] = t * m * m * mid[k] / sr;
        }
        if has_theta {
            ett[it] = n * r / sr;
            etz[it] = -m * r * r / (2.0 * sr);
        }
        etz[iz] = -n / (2.0 * sr);
        ezz[iz] = m / sr;
        let tr = &err + &ett + &ezz;
        a.ger(dv * inv * vol * w.cc, &tr, &tr, 1.0);
        for row in [&err, &ett, &ezz] {
            a.ger(dv * inv * w.cc, row, row, 1.0);
        }
        if w.ss > 0.0 {
            a.ger(dv * inv * 2.0 * w.ss, &etz, &etz, 1.0);
        }
    }
    let at = a.transpose();
    a = (a + at) * 0.5;

    let mut e1 = DVector::zeros(dim);
    for k in 0..nb {
        e1[k] = mid[k];
    }
    let b = &e1 * e1.transpose() * (m * m * h * w.cs);
    let layout = super::pencil::DofLayout {
        nodes: nb,
        has_theta,
    };
    ModePencil { wn, layout, a, b }
}

/// Minimum of the simplified quotient with a free radial profile, plus the
/// minimizing amplitudes normalized to `f_r(1) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedMinimum {
    pub value: f64,
    pub a_theta: f64,
    pub a_z: f64,
}

pub fn reduced_minimum(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    wn: WaveNumbers,
    disc: &RadialDiscretization,
) -> Result<ReducedMinimum, OracleError> {
    let pencil = reduced_pencil(geom, elastic, wn, disc);
    let (value, x) = min_rayleigh_with_vector(&pencil)?;
    let basis = ChebyshevBasis::new(disc.degree());
    let nb = basis.len();
    let fr1: f64 = basis.values(0.0).iter().zip(x.iter()).map(|(v, c)| v * c).sum();
    let (a_theta, a_z) = if wn.n > 0 {
        (x[nb] / fr1, x[nb + 1] / fr1)
    } else {
        (0.0, x[nb] / fr1)
    };
    Ok(ReducedMinimum {
        value,
        a_theta,
        a_z,
    })
}
