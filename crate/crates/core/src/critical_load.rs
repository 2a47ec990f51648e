//! Finite-dimensional minimization behind the critical strain: quadratic
//! forms in the amplitudes `(a_theta, a_z)`, their exact minimization, the
//! sweep over integer wave numbers, and the classical closed form with its
//! Koiter circle.
//!
//! All forms use the continuous axial wavenumber `m_hat = pi m / L`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::material::IsotropicElasticity;
use crate::spectral_reduction::{ShellGeometry, WaveNumbers};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CriticalLoadError {
    #[error("SingularSystem: amplitude Hessian determinant {det:e} for (m, n) = ({m}, {n})")]
    SingularSystem { m: u32, n: u32, det: f64 },
    #[error(
        "WindowTooSmall: minimizer (m, n) = ({m}, {n}) touches the sweep window \
         m <= {m_max}, n <= {n_max}; increase the margin factor"
    )]
    WindowTooSmall { m: u32, n: u32, m_max: u32, n_max: u32 },
    #[error("EmptySet: no integer wave numbers within relative tolerance {tol} of the Koiter circle")]
    EmptySet { tol: f64 },
    #[error("invalid sweep margin factor {0} (need >= 1)")]
    InvalidMargin(f64),
}

const SINGULAR_DET: f64 = 1e-14;

/// Affine function `at * a_theta + az * a_z + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub at: f64,
    pub az: f64,
    pub c: f64,
}

impl Affine {
    pub const fn new(at: f64, az: f64, c: f64) -> Self {
        Self { at, az, c }
    }

    pub fn eval(&self, a_theta: f64, a_z: f64) -> f64 {
        self.at * a_theta + self.az * a_z + self.c
    }
}

/// Quadratic `x^T P x + 2 q^T x + c` in `x = (a_theta, a_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AmplitudeQuadratic {
    pub p: [[f64; 2]; 2],
    pub q: [f64; 2],
    pub c: f64,
}

impl AmplitudeQuadratic {
    /// Adds `w * u * v`.
    pub fn add_product(&mut self, w: f64, u: Affine, v: Affine) {
        let (ua, ub) = (u.at, u.az);
        let (va, vb) = (v.at, v.az);
        self.p[0][0] += w * ua * va;
        self.p[1][1] += w * ub * vb;
        let off = 0.5 * w * (ua * vb + ub * va);
        self.p[0][1] += off;
        self.p[1][0] += off;
        self.q[0] += 0.5 * w * (ua * v.c + va * u.c);
        self.q[1] += 0.5 * w * (ub * v.c + vb * u.c);
        self.c += w * u.c * v.c;
    }

    pub fn add_square(&mut self, w: f64, u: Affine) {
        self.add_product(w, u, u);
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = *self;
        for i in 0..2 {
            out.q[i] *= s;
            for j in 0..2 {
                out.p[i][j] *= s;
            }
        }
        out.c *= s;
        out
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = *self;
        for i in 0..2 {
            out.q[i] += o.q[i];
            for j in 0..2 {
                out.p[i][j] += o.p[i][j];
            }
        }
        out.c += o.c;
        out
    }

    pub fn eval(&self, a_theta: f64, a_z: f64) -> f64 {
        let x = [a_theta, a_z];
        let mut v = self.c;
        for i in 0..2 {
            v += 2.0 * self.q[i] * x[i];
            for j in 0..2 {
                v += self.p[i][j] * x[i] * x[j];
            }
        }
        v
    }

    pub fn gradient(&self, a_theta: f64, a_z: f64) -> [f64; 2] {
        let x = [a_theta, a_z];
        [
            2.0 * (self.p[0][0] * x[0] + self.p[0][1] * x[1] + self.q[0]),
            2.0 * (self.p[1][0] * x[0] + self.p[1][1] * x[1] + self.q[1]),
        ]
    }

    pub fn determinant(&self) -> f64 {
        self.p[0][0] * self.p[1][1] - self.p[0][1] * self.p[1][0]
    }

    /// Exact minimizer via the 2x2 normal equations. `None` unless both
    /// leading minors are positive (relative to the matrix scale).
    pub fn minimize(&self) -> Option<([f64; 2], f64)> {
        let scale = self.p[0][0].abs().max(self.p[1][1].abs()).max(1.0);
        let det = self.determinant();
        if self.p[0][0] <= 0.0 || det <= SINGULAR_DET * scale * scale {
            return None;
        }
        let x0 = (-self.q[0] * self.p[1][1] + self.q[1] * self.p[0][1]) / det;
        let x1 = (-self.q[1] * self.p[0][0] + self.q[0] * self.p[1][0]) / det;
        // one step of iterative refinement on the gradient
        let g = self.gradient(x0, x1);
        let d0 = (-0.5 * g[0] * self.p[1][1] + 0.5 * g[1] * self.p[0][1]) / det;
        let d1 = (-0.5 * g[1] * self.p[0][0] + 0.5 * g[0] * self.p[1][0]) / det;
        let (x0, x1) = (x0 + d0, x1 + d1);
        Some(([x0, x1], self.eval(x0, x1)))
    }

    /// Minimizer in `a_z` with `a_theta` held fixed.
    pub fn argmin_az(&self, a_theta: f64) -> f64 {
        -(self.p[1][0] * a_theta + self.q[1]) / self.p[1][1]
    }
}

/// The four amplitude forms of one wave-number pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeForms {
    pub q0: AmplitudeQuadratic,
    pub q1: AmplitudeQuadratic,
    pub q1_tilde: AmplitudeQuadratic,
    pub q2: AmplitudeQuadratic,
}

impl AmplitudeForms {
    pub fn new(wn: &WaveNumbers, elastic: &IsotropicElasticity) -> Self {
        let n = wn.nf();
        let m = wn.m_hat;
        let k = 2.0 * elastic.lambda_ratio();

        let mut q0 = AmplitudeQuadratic::default();
        q0.add_square(k, Affine::new(n, m, 1.0));
        q0.add_square(2.0, Affine::new(n, 0.0, 1.0));
        q0.add_square(2.0 * m * m, Affine::new(0.0, 1.0, 0.0));
        q0.add_square(1.0, Affine::new(m, n, 0.0));

        let shift = Affine::new(1.0, 0.0, n);
        let mut q1_tilde = AmplitudeQuadratic::default();
        q1_tilde.add_square(k, Affine::new(n, 0.0, m * m + n * n));
        q1_tilde.add_square(2.0 * n * n, shift);
        q1_tilde.c += 2.0 * m.powi(4);
        q1_tilde.add_square(4.0 * m * m, shift);

        let mut q1 = q1_tilde;
        q1.add_product(2.0 * m, shift, Affine::new(m, n, 0.0));

        let mut q2 = AmplitudeQuadratic::default();
        q2.add_square(m * m, shift);

        Self { q0, q1, q1_tilde, q2 }
    }
}

/// Scalar values of `(Q0, Q1, Q1_tilde, Q2)` at the given amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QValues {
    pub q0: f64,
    pub q1: f64,
    pub q1_tilde: f64,
    pub q2: f64,
}

/// Evaluates the amplitude forms with `f_r(1) = 1`.
pub fn q_forms(
    wn: &WaveNumbers,
    a_theta: f64,
    a_z: f64,
    elastic: &IsotropicElasticity,
) -> QValues {
    let f = AmplitudeForms::new(wn, elastic);
    QValues {
        q0: f.q0.eval(a_theta, a_z),
        q1: f.q1.eval(a_theta, a_z),
        q1_tilde: f.q1_tilde.eval(a_theta, a_z),
        q2: f.q2.eval(a_theta, a_z),
    }
}

/// Classical asymptotic critical strain `h / sqrt(3 (1 - nu^2))`.
pub fn lambda_star_closed(h: f64, nu: f64) -> f64 {
    h / (3.0 * (1.0 - nu * nu)).sqrt()
}

/// Continuous-wavenumber reference
/// `m^2 / (m^2 + n^2)^2 + H (m^2 + n^2)^2 / ((1 - nu^2) m^2)`.
pub fn lambda3_star_mn(h: f64, nu: f64, m_hat: f64, n: f64) -> f64 {
    let hh = h * h / 12.0;
    let s = m_hat * m_hat + n * n;
    m_hat * m_hat / (s * s) + hh * s * s / ((1.0 - nu * nu) * m_hat * m_hat)
}

/// Radius of the Koiter circle `(m_hat - R)^2 + n^2 = R^2`.
pub fn koiter_radius(lambda_star: f64) -> f64 {
    1.0 / (2.0 * (lambda_star / 2.0).sqrt())
}

/// Euclidean distance of `(m_hat, n)` from the Koiter circle.
pub fn circle_distance(lambda_star: f64, m_hat: f64, n: f64) -> f64 {
    let r = koiter_radius(lambda_star);
    ((m_hat - r).powi(2) + n * n).sqrt() - r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalLoadProblem {
    pub geom: ShellGeometry,
    pub elastic: IsotropicElasticity,
    pub margin: f64,
}

pub const DEFAULT_MARGIN: f64 = 3.0;
const MIN_WINDOW: u32 = 8;

impl CriticalLoadProblem {
    pub fn new(
        geom: ShellGeometry,
        elastic: IsotropicElasticity,
        margin: f64,
    ) -> Result<Self, CriticalLoadError> {
        if !(margin >= 1.0 && margin.is_finite()) {
            return Err(CriticalLoadError::InvalidMargin(margin));
        }
        Ok(Self { geom, elastic, margin })
    }

    pub fn with_default_margin(geom: ShellGeometry, elastic: IsotropicElasticity) -> Self {
        Self { geom, elastic, margin: DEFAULT_MARGIN }
    }

    /// `H = h^2 / 12`.
    pub fn big_h(&self) -> f64 {
        self.geom.h().powi(2) / 12.0
    }

    pub fn lambda_star(&self) -> f64 {
        lambda_star_closed(self.geom.h(), self.elastic.poisson())
    }

    /// Largest `m` and `n` searched. The Koiter circle spans
    /// `m_hat <= 2R` and `n <= R`, both of order `h^{-1/2}`; the margin factor
    /// multiplies those extents.
    pub fn window(&self) -> (u32, u32) {
        let r = koiter_radius(self.lambda_star());
        let to_index = std::f64::consts::PI / self.geom.length();
        let m_max = (self.margin * 2.0 * r / to_index).ceil() as u32;
        let n_max = (self.margin * r).ceil() as u32;
        (m_max.max(MIN_WINDOW), n_max.max(MIN_WINDOW))
    }

    fn objective(&self, wn: &WaveNumbers, full: bool) -> AmplitudeQuadratic {
        let f = AmplitudeForms::new(wn, &self.elastic);
        let hh = self.big_h();
        let mut obj = if full {
            f.q0.plus(&f.q1.scaled(hh))
                .plus(&f.q2.scaled(self.geom.h().powi(4) / 80.0))
        } else {
            f.q0.plus(&f.q1_tilde.scaled(hh))
        };
        let nu = self.elastic.poisson();
        obj = obj.scaled(1.0 / (2.0 * (nu + 1.0) * wn.m_hat * wn.m_hat));
        obj
    }
}

/// Minimum over `(a_theta, a_z)` and its minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeMinimum {
    pub value: f64,
    pub a_theta: f64,
    pub a_z: f64,
}

fn minimize_objective(
    obj: &AmplitudeQuadratic,
    wn: &WaveNumbers,
) -> Result<AmplitudeMinimum, CriticalLoadError> {
    match obj.minimize() {
        Some(([a_theta, a_z], value)) => Ok(AmplitudeMinimum { value, a_theta, a_z }),
        None => Err(CriticalLoadError::SingularSystem {
            m: wn.m,
            n: wn.n,
            det: obj.determinant(),
        }),
    }
}

/// Simplified per-mode load: `min (Q0 + H Q1_tilde) / (2 (nu + 1) m^2)`.
pub fn lambda3_tilde(
    problem: &CriticalLoadProblem,
    wn: &WaveNumbers,
) -> Result<AmplitudeMinimum, CriticalLoadError> {
    minimize_objective(&problem.objective(wn, false), wn)
}

/// Unsimplified per-mode load with `Q1` and the `h^4/80 Q2` term.
pub fn lambda3_full(
    problem: &CriticalLoadProblem,
    wn: &WaveNumbers,
) -> Result<AmplitudeMinimum, CriticalLoadError> {
    minimize_objective(&problem.objective(wn, true), wn)
}

/// Objective of [`lambda3_tilde`] as a quadratic, for callers that need its
/// gradient.
pub fn lambda3_tilde_objective(problem: &CriticalLoadProblem, wn: &WaveNumbers) -> AmplitudeQuadratic {
    problem.objective(wn, false)
}

pub fn lambda3_full_objective(problem: &CriticalLoadProblem, wn: &WaveNumbers) -> AmplitudeQuadratic {
    problem.objective(wn, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BucklingResult {
    pub h: f64,
    /// Minimum of the simplified per-mode load over the window.
    pub lambda: f64,
    /// Unsimplified per-mode load at the same wave numbers.
    pub lambda_full: f64,
    pub lambda_star: f64,
    pub m: u32,
    pub n: u32,
    pub m_hat: f64,
    pub a_theta: f64,
    pub a_z: f64,
    /// `|m_hat / (m_hat^2 + n^2) - sqrt(lambda / 2)|`
    pub koiter_residual: f64,
    pub m_max: u32,
    pub n_max: u32,
}

impl BucklingResult {
    pub fn ratio(&self) -> f64 {
        self.lambda / self.lambda_star
    }
}

/// One evaluated grid point of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub wn: WaveNumbers,
    pub min: AmplitudeMinimum,
}

/// `lambda3_tilde` on every `(m, n)` of the window, ordered by `m` then `n`.
pub fn sweep_all(problem: &CriticalLoadProblem) -> Result<Vec<SweepPoint>, CriticalLoadError> {
    let (m_max, n_max) = problem.window();
    let length = problem.geom.length();
    let rows: Result<Vec<Vec<SweepPoint>>, CriticalLoadError> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            (0..=n_max)
                .map(|n| {
                    let wn = WaveNumbers::new(m, n, length).expect("m >= 1");
                    lambda3_tilde(problem, &wn).map(|min| SweepPoint { wn, min })
                })
                .collect()
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// `true` when `a` should replace `b` as the running minimum: smaller value,
/// ties resolved toward smaller `n`, then smaller `m`.
fn better(a: &SweepPoint, b: &SweepPoint) -> bool {
    match a.min.value.partial_cmp(&b.min.value) {
        Some(std::cmp::Ordering::Less) => true,
        Some(std::cmp::Ordering::Equal) => (a.wn.n, a.wn.m) < (b.wn.n, b.wn.m),
        _ => false,
    }
}

/// Exhaustive minimization of [`lambda3_tilde`] over the integer window.
pub fn sweep(problem: &CriticalLoadProblem) -> Result<BucklingResult, CriticalLoadError> {
    let points = sweep_all(problem)?;
    let (m_max, n_max) = problem.window();
    let best = points
        .iter()
        .fold(None::<&SweepPoint>, |acc, p| match acc {
            Some(b) if !better(p, b) => Some(b),
            _ => Some(p),
        })
        .expect("window is never empty");
    if best.wn.m >= m_max || best.wn.n >= n_max {
        return Err(CriticalLoadError::WindowTooSmall {
            m: best.wn.m,
            n: best.wn.n,
            m_max,
            n_max,
        });
    }
    let full = lambda3_full(problem, &best.wn)?;
    let lambda = best.min.value;
    let mh = best.wn.m_hat;
    let nf = best.wn.nf();
    Ok(BucklingResult {
        h: problem.geom.h(),
        lambda,
        lambda_full: full.value,
        lambda_star: problem.lambda_star(),
        m: best.wn.m,
        n: best.wn.n,
        m_hat: mh,
        a_theta: best.min.a_theta,
        a_z: best.min.a_z,
        koiter_residual: (mh / (mh * mh + nf * nf) - (lambda / 2.0).sqrt()).abs(),
        m_max,
        n_max,
    })
}

/// Classical closed form for the problem's `h` and `nu`.
pub fn lambda_star(problem: &CriticalLoadProblem) -> f64 {
    problem.lambda_star()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CirclePoint {
    pub wn: WaveNumbers,
    /// Distance from the circle relative to its radius.
    pub residual: f64,
}

/// Integer wave numbers whose `(m_hat, n)` lie within `rel_tol * R` of the
/// Koiter circle, sorted by residual (ties by `n`, then `m`).
pub fn koiter_circle(
    problem: &CriticalLoadProblem,
    rel_tol: f64,
) -> Result<Vec<CirclePoint>, CriticalLoadError> {
    let ls = problem.lambda_star();
    let r = koiter_radius(ls);
    let length = problem.geom.length();
    let to_index = length / std::f64::consts::PI;
    let m_top = ((2.0 * r + rel_tol * r) * to_index).ceil() as u32 + 1;
    let n_top = (r * (1.0 + rel_tol)).ceil() as u32 + 1;
    let mut out = Vec::new();
    for m in 1..=m_top {
        for n in 0..=n_top {
            let wn = WaveNumbers::new(m, n, length).expect("m >= 1");
            let residual = circle_distance(ls, wn.m_hat, n as f64).abs() / r;
            if residual <= rel_tol {
                out.push(CirclePoint { wn, residual });
            }
        }
    }
    if out.is_empty() {
        return Err(CriticalLoadError::EmptySet { tol: rel_tol });
    }
    out.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then((a.wn.n, a.wn.m).cmp(&(b.wn.n, b.wn.m)))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn problem(h: f64, nu: f64) -> CriticalLoadProblem {
        CriticalLoadProblem::with_default_margin(
            ShellGeometry::new(h, PI).unwrap(),
            IsotropicElasticity::normalized(nu).unwrap(),
        )
    }

    #[test]
    fn zero_amplitudes() {
        let l = IsotropicElasticity::normalized(0.3).unwrap();
        let wn = WaveNumbers::new(4, 3, PI).unwrap();
        let q = q_forms(&wn, 0.0, 0.0, &l);
        assert!((q.q0 - (6.0 / 7.0 + 2.0)).abs() < 1e-14);

        let wn0 = WaveNumbers::new(5, 0, 2.0).unwrap();
        let m = wn0.m_hat;
        let q = q_forms(&wn0, 0.0, 0.0, &l);
        assert!((q.q1_tilde - (6.0 / 7.0 + 2.0) * m.powi(4)).abs() < 1e-10 * m.powi(4));
    }

    #[test]
    fn q2_vanishes_at_minus_n() {
        let l = IsotropicElasticity::normalized(0.3).unwrap();
        let wn = WaveNumbers::new(3, 6, PI).unwrap();
        assert_eq!(q_forms(&wn, -6.0, 0.4, &l).q2, 0.0);
    }

    #[test]
    fn forms_match_displayed_expressions() {
        let l = IsotropicElasticity::normalized(0.27).unwrap();
        let lam = l.big_lambda();
        let k = 2.0 * lam / (lam + 2.0);
        let wn = WaveNumbers::new(7, 4, 2.5).unwrap();
        let (m, n) = (wn.m_hat, 4.0);
        for &(at, az) in &[(0.3, -1.2), (-4.0, 0.1), (2.0, 2.0)] {
            let q = q_forms(&wn, at, az, &l);
            let q0 = k * (1.0 + n * at + m * az).powi(2)
                + 2.0 * (n * at + 1.0).powi(2)
                + 2.0 * m * m * az * az
                + (m * at + n * az).powi(2);
            let q1t = k * (n * at + m * m + n * n).powi(2)
                + 2.0 * n * n * (at + n).powi(2)
                + 2.0 * m.powi(4)
                + 4.0 * m * m * (at + n).powi(2);
            let q1 = q1t + 2.0 * m * (at + n) * (m * at + n * az);
            let q2 = m * m * (at + n).powi(2);
            assert!((q.q0 - q0).abs() < 1e-12 * q0.abs().max(1.0));
            assert!((q.q1_tilde - q1t).abs() < 1e-12 * q1t.abs());
            assert!((q.q1 - q1).abs() < 1e-12 * q1.abs());
            assert!((q.q2 - q2).abs() < 1e-12 * q2.abs().max(1.0));
        }
    }

    #[test]
    fn exact_minimum_has_zero_gradient() {
        let p = problem(0.01, 0.3);
        for (m, n) in [(1, 0), (5, 3), (18, 0), (10, 8), (30, 20)] {
            let wn = WaveNumbers::new(m, n, PI).unwrap();
            let obj = lambda3_tilde_objective(&p, &wn);
            let min = lambda3_tilde(&p, &wn).unwrap();
            let g = obj.gradient(min.a_theta, min.a_z);
            let scale = obj.p[0][0].abs() + obj.p[1][1].abs() + obj.c.abs();
            assert!(g[0].hypot(g[1]) <= 1e-10 * scale, "{m} {n} {g:?}");
        }
    }

    #[test]
    fn closed_form_star() {
        let p = problem(0.01, 0.3);
        assert!((lambda_star(&p) - 0.01 / 2.73f64.sqrt()).abs() < 1e-15);
        assert!((lambda_star(&p) - 6.0523e-3).abs() < 5e-8);
        assert!((lambda_star_closed(0.02, 0.0) - 0.02 / 3f64.sqrt()).abs() < 1e-16);
        let a = lambda_star_closed(0.004, 0.3);
        assert!((lambda_star_closed(0.008, 0.3) - 2.0 * a).abs() < 1e-16);
    }

    #[test]
    fn axisymmetric_circle_point() {
        let p = problem(0.01, 0.3);
        let r = koiter_radius(p.lambda_star());
        // n = 0 => m_hat = 2R = sqrt(2 / lambda*)
        assert!((2.0 * r - (2.0 / p.lambda_star()).sqrt()).abs() < 1e-12);
        assert!((2.0 * r - 18.178).abs() < 1e-3);
        assert!(circle_distance(p.lambda_star(), 2.0 * r, 0.0).abs() < 1e-12);
        let r2 = koiter_radius(2.0 * p.lambda_star());
        assert!((r / r2 - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn small_window_still_finite() {
        let p = problem(0.5, 0.3);
        let res = sweep(&p).unwrap();
        assert!(res.lambda.is_finite() && res.lambda > 0.0);
    }

    #[test]
    fn tight_tolerance_gives_empty_set() {
        let p = problem(0.01, 0.3);
        assert!(matches!(
            koiter_circle(&p, 1e-9),
            Err(CriticalLoadError::EmptySet { .. })
        ));
        let pts = koiter_circle(&p, 0.05).unwrap();
        assert!(pts.windows(2).all(|w| w[0].residual <= w[1].residual));
    }

    #[test]
    fn rejects_bad_margin() {
        let g = ShellGeometry::new(0.01, PI).unwrap();
        let l = IsotropicElasticity::normalized(0.3).unwrap();
        assert!(CriticalLoadProblem::new(g, l, 0.5).is_err());
    }
}
