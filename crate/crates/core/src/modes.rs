//! Two-harmonic buckling mode that satisfies the end conditions of the full
//! admissible space: harmonics `m` and `m + 2` with opposite signs, so the
//! `theta` and `z` displacements vanish at `z = 0` and `z = L`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::critical_load::{circle_distance, lambda_star_closed, CriticalLoadProblem, DEFAULT_MARGIN};
use crate::material::IsotropicElasticity;
use crate::quadrature::Poly;
use crate::spectral_reduction::{
    FourierMode, LinearizedMode, ModeForms, ShellGeometry, SpectralError, WaveNumbers,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModesError {
    #[error("invalid exponent alpha = {0} (need 0 < alpha <= 1)")]
    InvalidAlpha(f64),
    #[error(
        "WindowTooSmall: mode pair (m, n) = ({m}, {n}) and ({}, {n}) leaves the sweep window \
         m <= {m_max}, n <= {n_max}",
        m + 2
    )]
    WindowTooSmall { m: u32, n: u32, m_max: u32, n_max: u32 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Exponents used for figure-style mode families.
pub const FIGURE_ALPHAS: [f64; 3] = [0.25, 0.5, 0.75];

/// Wave numbers and amplitudes of the two-harmonic mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BucklingModeSpec {
    pub geom: ShellGeometry,
    pub elastic: IsotropicElasticity,
    pub alpha: f64,
    /// `(sqrt(2 / lambda*))^alpha` before rounding to an integer index.
    pub m_hat_target: f64,
    pub m: u32,
    pub n: u32,
    pub a_theta: f64,
}

/// `a_theta = -n (n^2 + (nu + 2) m^2) / (m^2 + n^2)^2`.
pub fn mode_a_theta(nu: f64, m_hat: f64, n: f64) -> f64 {
    let s = m_hat * m_hat + n * n;
    -n * (n * n + (nu + 2.0) * m_hat * m_hat) / (s * s)
}

/// Minimizer in `a_z` of the leading-order stiffness at fixed `a_theta`:
/// `a_z = -m (2 nu + (nu + 1) n a_theta) / (2 m^2 + (1 - nu) n^2)`.
pub fn mode_a_z(nu: f64, m_hat: f64, n: f64, a_theta: f64) -> f64 {
    -m_hat * (2.0 * nu + (nu + 1.0) * n * a_theta) / (2.0 * m_hat * m_hat + (1.0 - nu) * n * n)
}

impl BucklingModeSpec {
    pub fn new(
        geom: ShellGeometry,
        elastic: IsotropicElasticity,
        alpha: f64,
    ) -> Result<Self, ModesError> {
        Self::with_margin(geom, elastic, alpha, DEFAULT_MARGIN)
    }

    pub fn with_margin(
        geom: ShellGeometry,
        elastic: IsotropicElasticity,
        alpha: f64,
        margin: f64,
    ) -> Result<Self, ModesError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(ModesError::InvalidAlpha(alpha));
        }
        let nu = elastic.poisson();
        let ls = lambda_star_closed(geom.h(), nu);
        let m_hat_target = (2.0 / ls).sqrt().powf(alpha);
        let m = ((m_hat_target * geom.length() / PI).round() as u32).max(1);
        let m_hat = PI * m as f64 / geom.length();
        let n = nearest_circle_n(ls, m_hat);

        let problem = CriticalLoadProblem {
            geom,
            elastic,
            margin,
        };
        let (m_max, n_max) = problem.window();
        if m + 2 > m_max || n > n_max {
            return Err(ModesError::WindowTooSmall { m, n, m_max, n_max });
        }
        Ok(Self {
            geom,
            elastic,
            alpha,
            m_hat_target,
            m,
            n,
            a_theta: mode_a_theta(nu, m_hat, n as f64),
        })
    }

    pub fn lambda_star(&self) -> f64 {
        lambda_star_closed(self.geom.h(), self.elastic.poisson())
    }

    pub fn wave_numbers(&self) -> [WaveNumbers; 2] {
        let l = self.geom.length();
        [
            WaveNumbers::new(self.m, self.n, l).expect("m >= 1"),
            WaveNumbers::new(self.m + 2, self.n, l).expect("m >= 1"),
        ]
    }

    /// The harmonic as an r-linearized mode, before the sign flip of the
    /// second one.
    pub fn linearized(&self, second: bool) -> LinearizedMode {
        let wn = self.wave_numbers()[usize::from(second)];
        let nu = self.elastic.poisson();
        let a_z = mode_a_z(nu, wn.m_hat, wn.nf(), self.a_theta);
        LinearizedMode::optimal(wn, self.a_theta, a_z, &self.elastic)
    }

    /// Both harmonics with their signs applied.
    pub fn harmonics(&self) -> [FourierMode; 2] {
        let first = self.linearized(false).to_fourier();
        let second = negate(&self.linearized(true).to_fourier());
        [first, second]
    }
}

fn negate(mode: &FourierMode) -> FourierMode {
    let neg = |p: &Poly| Poly(p.0.iter().map(|c| -c).collect());
    FourierMode::new(mode.wn, neg(&mode.fr), neg(&mode.ftheta), neg(&mode.fz))
}

/// Nonnegative `n` closest to the Koiter circle at axial wavenumber `m_hat`;
/// ties go to the smaller `n`.
pub fn nearest_circle_n(lambda_star: f64, m_hat: f64) -> u32 {
    let r = crate::critical_load::koiter_radius(lambda_star);
    let top = r.ceil() as u32 + 1;
    let mut best = (f64::INFINITY, 0);
    for n in 0..=top {
        let d = circle_distance(lambda_star, m_hat, n as f64).abs();
        if d < best.0 {
            best = (d, n);
        }
    }
    best.1
}

/// Sample counts of the tensor grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub nr: usize,
    pub ntheta: usize,
    pub nz: usize,
}

impl GridSpec {
    /// Smallest grid resolving both harmonics: at least `8 n + 16` angular
    /// and `8 (m + 2) + 16` axial samples.
    pub fn for_spec(spec: &BucklingModeSpec) -> Self {
        Self {
            nr: 5,
            ntheta: 8 * spec.n as usize + 16,
            nz: 8 * (spec.m as usize + 2) + 16,
        }
    }

    fn validate(&self) -> Result<(), ModesError> {
        if self.nr < 2 || self.ntheta < 3 || self.nz < 2 {
            return Err(ModesError::InvalidGrid(format!(
                "need nr >= 2, ntheta >= 3, nz >= 2, got {} x {} x {}",
                self.nr, self.ntheta, self.nz
            )));
        }
        Ok(())
    }
}

/// Displacement samples on `r x theta x z`, `r` varying fastest. The angular
/// samples run from `0` to `2 pi` inclusive, so the last one repeats the
/// first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisplacementField {
    pub spec: BucklingModeSpec,
    pub r: Vec<f64>,
    pub theta: Vec<f64>,
    pub z: Vec<f64>,
    pub phi_r: Vec<f64>,
    pub phi_theta: Vec<f64>,
    pub phi_z: Vec<f64>,
}

impl DisplacementField {
    pub fn index(&self, ir: usize, it: usize, iz: usize) -> usize {
        ir + self.r.len() * (it + self.theta.len() * iz)
    }

    pub fn len(&self) -> usize {
        self.phi_r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi_r.is_empty()
    }

    /// Largest displacement component magnitude on the grid.
    pub fn scale(&self) -> f64 {
        self.phi_r
            .iter()
            .chain(&self.phi_theta)
            .chain(&self.phi_z)
            .fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Largest `|phi_theta|`, `|phi_z|` on the end faces `z = 0, L`,
    /// relative to [`DisplacementField::scale`].
    pub fn boundary_trace(&self) -> f64 {
        let last = self.z.len() - 1;
        let mut worst: f64 = 0.0;
        for iz in [0, last] {
            for it in 0..self.theta.len() {
                for ir in 0..self.r.len() {
                    let k = self.index(ir, it, iz);
                    worst = worst.max(self.phi_theta[k].abs()).max(self.phi_z[k].abs());
                }
            }
        }
        worst / self.scale()
    }

    /// Largest mismatch between the `theta = 0` and `theta = 2 pi` samples.
    pub fn periodicity_defect(&self) -> f64 {
        let last = self.theta.len() - 1;
        let mut worst: f64 = 0.0;
        for iz in 0..self.z.len() {
            for ir in 0..self.r.len() {
                let (a, b) = (self.index(ir, 0, iz), self.index(ir, last, iz));
                for f in [&self.phi_r, &self.phi_theta, &self.phi_z] {
                    worst = worst.max((f[a] - f[b]).abs());
                }
            }
        }
        worst
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
        .collect();
    v[n - 1] = b;
    v
}

/// Samples the two-harmonic field on the default grid.
pub fn synthesize(spec: &BucklingModeSpec) -> DisplacementField {
    synthesize_on(spec, &GridSpec::for_spec(spec)).expect("default grid is valid")
}

pub fn synthesize_on(
    spec: &BucklingModeSpec,
    grid: &GridSpec,
) -> Result<DisplacementField, ModesError> {
    synthesize_harmonics(spec, &spec.harmonics(), grid)
}

/// Samples an arbitrary sum of modes, tagged with `spec`.
pub fn synthesize_harmonics(
    spec: &BucklingModeSpec,
    modes: &[FourierMode],
    grid: &GridSpec,
) -> Result<DisplacementField, ModesError> {
    grid.validate()?;
    let (lo, hi) = spec.geom.interval();
    let r = linspace(lo, hi, grid.nr);
    let mut theta = linspace(0.0, 2.0 * PI, grid.ntheta);
    theta[0] = 0.0;
    let z = linspace(0.0, spec.geom.length(), grid.nz);
    let slab = grid.nr * grid.ntheta;
    let slabs: Vec<Vec<[f64; 3]>> = z
        .par_iter()
        .map(|&zz| {
            let mut out = Vec::with_capacity(slab);
            for &t in &theta {
                for &rr in &r {
                    let mut u = [0.0; 3];
                    for mode in modes {
                        let d = mode.displacement(rr, t, zz);
                        for k in 0..3 {
                            u[k] += d[k];
                        }
                    }
                    out.push(u);
                }
            }
            out
        })
        .collect();
    let total = slab * grid.nz;
    let (mut pr, mut pt, mut pz) = (
        Vec::with_capacity(total),
        Vec::with_capacity(total),
        Vec::with_capacity(total),
    );
    for u in slabs.into_iter().flatten() {
        pr.push(u[0]);
        pt.push(u[1]);
        pz.push(u[2]);
    }
    Ok(DisplacementField {
        spec: *spec,
        r,
        theta,
        z,
        phi_r: pr,
        phi_theta: pt,
        phi_z: pz,
    })
}

/// Quotient of the two-harmonic mode against the classical critical strain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotientReport {
    pub h: f64,
    pub alpha: f64,
    pub m: u32,
    pub n: u32,
    pub lambda_star: f64,
    /// Stiffness over `||phi_{r,z}||^2` for the two-harmonic field.
    pub quotient: f64,
    pub ratio: f64,
    pub first_ratio: f64,
    pub second_ratio: f64,
}

/// Per-harmonic integrals; the harmonics are orthogonal in `z`, so the
/// quotient of the sum is `(S1 + S2) / (D1 + D2)`.
pub fn harmonic_forms(spec: &BucklingModeSpec) -> [ModeForms; 2] {
    let [a, b] = spec.harmonics();
    [
        a.forms(&spec.geom, &spec.elastic),
        b.forms(&spec.geom, &spec.elastic),
    ]
}

pub fn quotient_ratio(spec: &BucklingModeSpec) -> QuotientReport {
    let [f1, f2] = harmonic_forms(spec);
    let ls = spec.lambda_star();
    let quotient = f1.add(&f2).quotient_r1();
    QuotientReport {
        h: spec.geom.h(),
        alpha: spec.alpha,
        m: spec.m,
        n: spec.n,
        lambda_star: ls,
        quotient,
        ratio: quotient / ls,
        first_ratio: f1.quotient_r1() / ls,
        second_ratio: f2.quotient_r1() / ls,
    }
}
