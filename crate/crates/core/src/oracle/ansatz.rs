//! Korn-optimality test field built from a compactly supported profile
//! `W(eta, z)` whose angular variable is compressed to `eta = theta / h^{1/4}`.
//!
//! With `s = h^{1/4}` and `W` evaluated at `(theta / s, z)`:
//! `phi_r = -W_{eta eta}`,
//! `phi_theta = r s W_eta + (r - 1) W_{eta eta eta} / s`,
//! `phi_z = (r - 1) W_{eta eta z} - sqrt(h) W_z`.

use std::f64::consts::PI;

use serde::Serialize;

use super::OracleError;
use crate::spectral_reduction::ShellGeometry;

/// Partial derivatives `d^k/d eta^k d^j/dz^j W` for `k <= 4`, `j <= 2`,
/// indexed `[k][j]`.
pub trait ProfileJet: Sync {
    fn jet(&self, eta: f64, z: f64) -> [[f64; 3]; 5];
}

/// `amplitude * b(eta) * b(2 z / L - 1)` with `b(x) = exp(-1 / (1 - x^2))`
/// on `(-1, 1)` and zero outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpProfile {
    pub amplitude: f64,
    pub length: f64,
}

impl BumpProfile {
    pub fn new(length: f64) -> Self {
        Self {
            amplitude: 1.0,
            length,
        }
    }
}

impl ProfileJet for BumpProfile {
    fn jet(&self, eta: f64, z: f64) -> [[f64; 3]; 5] {
        let be = bump_derivatives(eta);
        let s = 2.0 / self.length;
        let bz = bump_derivatives(s * z - 1.0);
        let mut out = [[0.0; 3]; 5];
        for (k, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.amplitude * be[k] * bz[j] * s.powi(j as i32);
            }
        }
        out
    }
}

/// Truncated Taylor coefficients `f(x0 + d) = sum c_k d^k`, `k <= 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Jet([f64; 5]);

impl Jet {
    fn recip(&self) -> Jet {
        let a = &self.0;
        let mut b = [0.0; 5];
        b[0] = 1.0 / a[0];
        for k in 1..5 {
            let s: f64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
            b[k] = -s / a[0];
        }
        Jet(b)
    }

    fn exp(&self) -> Jet {
        let g = &self.0;
        let mut e = [0.0; 5];
        e[0] = g[0].exp();
        for k in 1..5 {
            let s: f64 = (1..=k).map(|j| j as f64 * g[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet(e)
    }

    fn derivatives(&self) -> [f64; 5] {
        let mut d = self.0;
        let mut fact = 1.0;
        for (k, v) in d.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *v *= fact;
        }
        d
    }
}

/// `b, b', ..., b''''` for `b(x) = exp(-1 / (1 - x^2))`.
fn bump_derivatives(x: f64) -> [f64; 5] {
    if x.abs() >= 1.0 {
        return [0.0; 5];
    }
    let u = Jet([1.0 - x * x, -2.0 * x, -1.0, 0.0, 0.0]);
    let mut g = u.recip();
    for c in g.0.iter_mut() {
        *c = -*c;
    }
    g.exp().derivatives()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzOptions {
    /// Uniform periodic angular grid size; by default chosen so that about
    /// `target_inside` nodes fall inside the support.
    pub theta_nodes: Option<usize>,
    pub target_inside: usize,
    /// Minimum number of angular nodes inside the support.
    pub min_inside: usize,
    pub z_nodes: usize,
    pub r_nodes: usize,
}

impl Default for AnsatzOptions {
    fn default() -> Self {
        Self {
            theta_nodes: None,
            target_inside: 256,
            min_inside: 64,
            z_nodes: 256,
            r_nodes: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnsatzRatios {
    pub h: f64,
    /// `||e||^2 / ||grad phi||^2`
    pub korn: f64,
    /// `||phi_{theta,z}||^2 / ||e||^2`
    pub theta_axial: f64,
    /// `||phi_{r,z}||^2 / ||e||^2`
    pub radial_axial: f64,
}

/// The three Korn ratios of the ansatz field by tensor-product quadrature:
/// Gauss-Legendre in `r`, trapezoid in `theta` (periodic) and `z` (the
/// profile vanishes to all orders at both ends).
pub fn ansatz_ratios<W: ProfileJet>(
    geom: &ShellGeometry,
    profile: &W,
    opts: &AnsatzOptions,
) -> Result<AnsatzRatios, OracleError> {
    let h = geom.h();
    let length = geom.length();
    let s = h.powf(0.25);
    let sh = h.sqrt();
    let n_theta = opts
        .theta_nodes
        .unwrap_or_else(|| (opts.target_inside as f64 * PI / s).ceil() as usize);
    let dtheta = 2.0 * PI / n_theta as f64;
    // nodes k * dtheta with |k dtheta| < s, i.e. |eta| < 1
    let kmax = ((s / dtheta).ceil() as i64).max(0);
    let thetas: Vec<f64> = (-kmax..=kmax)
        .map(|k| k as f64 * dtheta)
        .filter(|t| t.abs() < s)
        .collect();
    if thetas.len() < opts.min_inside {
        return Err(OracleError::QuadratureUnderResolved {
            inside: thetas.len(),
            required: opts.min_inside,
        });
    }
    let dz = length / opts.z_nodes as f64;
    let zs: Vec<f64> = (1..opts.z_nodes).map(|k| k as f64 * dz).collect();
    let radial = geom.radial_rule(opts.r_nodes);

    let (mut e2, mut g2, mut rz2, mut tz2) = (0.0, 0.0, 0.0, 0.0);
    for &theta in &thetas {
        let eta = theta / s;
        for &z in &zs {
            let w = profile.jet(eta, z);
            for &(r, wr) in &radial {
                let t = r - 1.0;
                let phi_r = -w[2][0];
                let phi_t = r * s * w[1][0] + t * w[3][0] / s;
                // partial derivatives
                let r_r = 0.0;
                let r_t = -w[3][0] / s;
                let r_z = -w[2][1];
                let t_r = s * w[1][0] + w[3][0] / s;
                let t_t = r * w[2][0] + t * w[4][0] / (s * s);
                let t_z = r * s * w[1][1] + t * w[3][1] / s;
                let z_r = w[2][1];
                let z_t = (t * w[3][1] - sh * w[1][1]) / s;
                let z_z = t * w[2][2] - sh * w[0][2];
                // physical gradient
                let g = [
                    [r_r, (r_t - phi_t) / r, r_z],
                    [t_r, (t_t + phi_r) / r, t_z],
                    [z_r, z_t / r, z_z],
                ];
                let dv = wr * r;
                let mut gg = 0.0;
                let mut ee = 0.0;
                for (i, row) in g.iter().enumerate() {
                    for (j, gij) in row.iter().enumerate() {
                        gg += gij * gij;
                        let e = 0.5 * (gij + g[j][i]);
                        ee += e * e;
                    }
                }
                g2 += dv * gg;
                e2 += dv * ee;
                rz2 += dv * r_z * r_z;
                tz2 += dv * t_z * t_z;
            }
        }
    }
    if g2.is_nan() || e2.is_nan() || g2 <= 0.0 || e2 <= 0.0 {
        return Err(OracleError::ZeroField);
    }
    Ok(AnsatzRatios {
        h,
        korn: e2 / g2,
        theta_axial: tz2 / e2,
        radial_axial: rz2 / e2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: f64) -> f64 {
        if x.abs() < 1.0 {
            (-1.0 / (1.0 - x * x)).exp()
        } else {
            0.0
        }
    }

    #[test]
    fn bump_derivatives_match_finite_differences() {
        for x in [-0.7, -0.2, 0.0, 0.35, 0.8] {
            let d = bump_derivatives(x);
            let e = 1e-3;
            assert!((d[0] - b(x)).abs() < 1e-15);
            let d1 = (b(x + e) - b(x - e)) / (2.0 * e);
            let d2 = (b(x + e) - 2.0 * b(x) + b(x - e)) / (e * e);
            let d3 = (b(x + 2.0 * e) - 2.0 * b(x + e) + 2.0 * b(x - e) - b(x - 2.0 * e))
                / (2.0 * e.powi(3));
            let d4 = (b(x + 2.0 * e) - 4.0 * b(x + e) + 6.0 * b(x) - 4.0 * b(x - e)
                + b(x - 2.0 * e))
                / e.powi(4);
            let scale = d.iter().fold(1e-3_f64, |a, v| a.max(v.abs()));
            for (k, fd) in [(1, d1), (2, d2), (3, d3), (4, d4)] {
                assert!((d[k] - fd).abs() < 1e-4 * scale, "x={x} k={k} {} {fd}", d[k]);
            }
        }
    }

    #[test]
    fn zero_profile_rejected() {
        let g = ShellGeometry::new(0.01, PI).unwrap();
        let w = BumpProfile {
            amplitude: 0.0,
            length: PI,
        };
        let opts = AnsatzOptions {
            target_inside: 64,
            z_nodes: 32,
            ..Default::default()
        };
        assert_eq!(ansatz_ratios(&g, &w, &opts), Err(OracleError::ZeroField));
    }

    #[test]
    fn coarse_angular_grid_rejected() {
        let g = ShellGeometry::new(0.01, PI).unwrap();
        let opts = AnsatzOptions {
            theta_nodes: Some(40),
            ..Default::default()
        };
        assert!(matches!(
            ansatz_ratios(&g, &BumpProfile::new(PI), &opts),
            Err(OracleError::QuadratureUnderResolved { .. })
        ));
    }

    #[test]
    fn ratios_scale_free() {
        let g = ShellGeometry::new(0.02, PI).unwrap();
        let opts = AnsatzOptions {
            target_inside: 96,
            z_nodes: 64,
            ..Default::default()
        };
        let a = ansatz_ratios(&g, &BumpProfile::new(PI), &opts).unwrap();
        let w = BumpProfile {
            amplitude: -3.5,
            length: PI,
        };
        let b = ansatz_ratios(&g, &w, &opts).unwrap();
        for (x, y) in [(a.korn, b.korn), (a.theta_axial, b.theta_axial), (a.radial_axial, b.radial_axial)] {
            assert!((x - y).abs() <= 1e-12 * x.abs());
        }
    }
}
