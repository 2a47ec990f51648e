//! Single Fourier modes on the shell `I_h x T x [0, L]`, the linearization
//! operator in `r`, the strain of r-linearized modes and its simplified
//! counterpart.
//!
//! Trigonometric pairing: `phi_r ~ cos(n theta) cos(m z)`,
//! `phi_theta ~ sin(n theta) cos(m z)`, `phi_z ~ cos(n theta) sin(m z)`, with
//! `m` standing for the continuous axial wavenumber `pi m / L`. Every strain
//! or gradient amplitude below multiplies the trig factor fixed by this
//! pairing; [`TrigWeights`] holds the matching `theta, z` integrals.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::material::{IsotropicElasticity, SymStrain};
use crate::quadrature::{GaussLegendre, Poly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("invalid geometry: h = {h}, L = {l} (need 0 < h < 1, L > 0)")]
    InvalidGeometry { h: f64, l: f64 },
    #[error("radius {r} outside the shell interval [{lo}, {hi}]")]
    OutsideInterval { r: f64, lo: f64, hi: f64 },
    #[error("axial index m must be at least 1")]
    ZeroAxialIndex,
}

/// Radial nodes used for closed-form mode integrals.
pub const RADIAL_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellGeometry {
    h: f64,
    l: f64,
}

impl ShellGeometry {
    pub fn new(h: f64, l: f64) -> Result<Self, SpectralError> {
        if !(h > 0.0 && h < 1.0 && l > 0.0 && l.is_finite()) {
            return Err(SpectralError::InvalidGeometry { h, l });
        }
        Ok(Self { h, l })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn length(&self) -> f64 {
        self.l
    }

    /// Radial interval `[1 - h/2, 1 + h/2]`.
    pub fn interval(&self) -> (f64, f64) {
        (1.0 - 0.5 * self.h, 1.0 + 0.5 * self.h)
    }

    pub fn check_radius(&self, r: f64) -> Result<(), SpectralError> {
        let (lo, hi) = self.interval();
        let slack = 1e-14;
        if r < lo - slack || r > hi + slack || !r.is_finite() {
            return Err(SpectralError::OutsideInterval { r, lo, hi });
        }
        Ok(())
    }

    pub fn wave_numbers(&self, m: u32, n: u32) -> Result<WaveNumbers, SpectralError> {
        WaveNumbers::new(m, n, self.l)
    }

    /// Gauss-Legendre nodes and weights on the radial interval.
    pub fn radial_rule(&self, nodes: usize) -> Vec<(f64, f64)> {
        let (lo, hi) = self.interval();
        GaussLegendre::new(nodes).on_interval(lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveNumbers {
    pub m: u32,
    pub n: u32,
    pub m_hat: f64,
}

impl WaveNumbers {
    pub fn new(m: u32, n: u32, length: f64) -> Result<Self, SpectralError> {
        if m == 0 {
            return Err(SpectralError::ZeroAxialIndex);
        }
        Ok(Self {
            m,
            n,
            m_hat: PI * m as f64 / length,
        })
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }
}

/// `theta, z` integrals of the squared trig factors of one mode:
/// `cc = int cos^2(n theta) cos^2(m z)`, `sc` with `sin(n theta)`, and so on.
/// For `n = 0` the sine factors vanish identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigWeights {
    pub cc: f64,
    pub sc: f64,
    pub cs: f64,
    pub ss: f64,
}

impl TrigWeights {
    pub fn new(n: u32, length: f64) -> Self {
        let (c, s) = if n == 0 { (2.0 * PI, 0.0) } else { (PI, PI) };
        let z = 0.5 * length;
        Self {
            cc: c * z,
            sc: s * z,
            cs: c * z,
            ss: s * z,
        }
    }

    /// `int <(L0/E) e, e>` over `theta, z` for an amplitude tensor whose
    /// entries carry the mode's trig factors.
    pub fn energy(&self, elastic: &IsotropicElasticity, e: &SymStrain) -> f64 {
        let nu = elastic.poisson();
        let vol = nu / (1.0 - 2.0 * nu) * self.cc * e.trace().powi(2);
        let diag = self.cc * (e.rr * e.rr + e.tt * e.tt + e.zz * e.zz);
        let off = 2.0 * (self.sc * e.rt * e.rt + self.cs * e.rz * e.rz + self.ss * e.tz * e.tz);
        (vol + diag + off) / (1.0 + nu)
    }

    /// `int |e|^2` over `theta, z`.
    pub fn norm_sq(&self, e: &SymStrain) -> f64 {
        self.cc * (e.rr * e.rr + e.tt * e.tt + e.zz * e.zz)
            + 2.0 * (self.sc * e.rt * e.rt + self.cs * e.rz * e.rz + self.ss * e.tz * e.tz)
    }

    /// `int |grad phi|^2` over `theta, z` for a gradient amplitude.
    pub fn grad_norm_sq(&self, g: &GradAmplitude) -> f64 {
        self.cc * (g.rr * g.rr + g.tt * g.tt + g.zz * g.zz)
            + self.sc * (g.rt * g.rt + g.tr * g.tr)
            + self.cs * (g.rz * g.rz + g.zr * g.zr)
            + self.ss * (g.tz * g.tz + g.zt * g.zt)
    }
}

/// Radial amplitudes of the nine physical gradient components
/// `(grad phi)_{ij} = d_j phi_i` for a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GradAmplitude {
    pub rr: f64,
    pub rt: f64,
    pub rz: f64,
    pub tr: f64,
    pub tt: f64,
    pub tz: f64,
    pub zr: f64,
    pub zt: f64,
    pub zz: f64,
}

impl GradAmplitude {
    pub fn strain(&self) -> SymStrain {
        SymStrain {
            rr: self.rr,
            tt: self.tt,
            zz: self.zz,
            rt: 0.5 * (self.rt + self.tr),
            rz: 0.5 * (self.rz + self.zr),
            tz: 0.5 * (self.tz + self.zt),
        }
    }
}

/// A single Fourier mode with general radial profiles, each a polynomial in
/// `t = r - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierMode {
    pub wn: WaveNumbers,
    pub fr: Poly,
    pub ftheta: Poly,
    pub fz: Poly,
}

impl FourierMode {
    pub fn new(wn: WaveNumbers, fr: Poly, ftheta: Poly, fz: Poly) -> Self {
        Self { wn, fr, ftheta, fz }
    }

    /// Gradient amplitudes at radius `r`. For `n = 0` the `theta` component is
    /// identically zero whatever `ftheta` holds.
    pub fn gradient(&self, r: f64) -> GradAmplitude {
        let t = r - 1.0;
        let n = self.wn.nf();
        let m = self.wn.m_hat;
        let fr = self.fr.eval(t);
        let dfr = self.fr.derivative().eval(t);
        let (ft, dft) = if self.wn.n == 0 {
            (0.0, 0.0)
        } else {
            (self.ftheta.eval(t), self.ftheta.derivative().eval(t))
        };
        let fz = self.fz.eval(t);
        let dfz = self.fz.derivative().eval(t);
        GradAmplitude {
            rr: dfr,
            rt: (-n * fr - ft) / r,
            rz: -m * fr,
            tr: dft,
            tt: (n * ft + fr) / r,
            tz: -m * ft,
            zr: dfz,
            zt: -n * fz / r,
            zz: m * fz,
        }
    }

    pub fn strain(&self, r: f64) -> SymStrain {
        self.gradient(r).strain()
    }

    /// Displacement `(phi_r, phi_theta, phi_z)` at a point.
    pub fn displacement(&self, r: f64, theta: f64, z: f64) -> [f64; 3] {
        let t = r - 1.0;
        let (cn, sn) = ((self.wn.nf() * theta).cos(), (self.wn.nf() * theta).sin());
        let (cm, sm) = ((self.wn.m_hat * z).cos(), (self.wn.m_hat * z).sin());
        [
            self.fr.eval(t) * cn * cm,
            self.ftheta.eval(t) * sn * cm,
            self.fz.eval(t) * cn * sm,
        ]
    }

    /// Physical strain tensor at a point (amplitudes times trig factors).
    pub fn strain_at(&self, r: f64, theta: f64, z: f64) -> SymStrain {
        let e = self.strain(r);
        let (cn, sn) = ((self.wn.nf() * theta).cos(), (self.wn.nf() * theta).sin());
        let (cm, sm) = ((self.wn.m_hat * z).cos(), (self.wn.m_hat * z).sin());
        SymStrain {
            rr: e.rr * cn * cm,
            tt: e.tt * cn * cm,
            zz: e.zz * cn * cm,
            rt: e.rt * sn * cm,
            rz: e.rz * cn * sm,
            tz: e.tz * sn * sm,
        }
    }

    /// Integrals of every quadratic form the reduction uses, via Gauss-Legendre
    /// in `r` and exact trig integrals in `theta, z`.
    pub fn forms(&self, geom: &ShellGeometry, elastic: &IsotropicElasticity) -> ModeForms {
        self.forms_with(geom, elastic, RADIAL_NODES)
    }

    pub fn forms_with(
        &self,
        geom: &ShellGeometry,
        elastic: &IsotropicElasticity,
        nodes: usize,
    ) -> ModeForms {
        let w = TrigWeights::new(self.wn.n, geom.length());
        let m = self.wn.m_hat;
        let fr1 = self.fr.eval(0.0);
        let mut out = ModeForms::default();
        for (r, wr) in geom.radial_rule(nodes) {
            let g = self.gradient(r);
            let e = g.strain();
            let dv = wr * r;
            out.energy += dv * w.energy(elastic, &e);
            out.strain_sq += dv * w.norm_sq(&e);
            out.grad_sq += dv * w.grad_norm_sq(&g);
            out.rz_sq += dv * w.cs * g.rz * g.rz;
            out.rz_mid_sq += dv * w.cs * (m * fr1).powi(2);
            out.tz_sq += dv * w.ss * g.tz * g.tz;
            out.zz_sq += dv * w.cc * g.zz * g.zz;
            let fr = self.fr.eval(r - 1.0);
            out.r_sq += dv * w.cc * fr * fr;
        }
        out
    }
}

/// Integrated quadratic forms of one mode over the shell.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeForms {
    /// `int <(L0/E) e, e>`
    pub energy: f64,
    /// `||e||^2`
    pub strain_sq: f64,
    /// `||grad phi||^2`
    pub grad_sq: f64,
    /// `||phi_{r,z}||^2`
    pub rz_sq: f64,
    /// `||phi_{r,z}(1, ., .)||^2`
    pub rz_mid_sq: f64,
    /// `||phi_{theta,z}||^2`
    pub tz_sq: f64,
    /// `||phi_{z,z}||^2`
    pub zz_sq: f64,
    /// `||phi_r||^2`
    pub r_sq: f64,
}

impl ModeForms {
    /// Stiffness over the full compression measure.
    pub fn quotient_full(&self) -> f64 {
        self.energy / (self.rz_sq + self.zz_sq + self.tz_sq)
    }

    /// Stiffness over `||phi_{r,z}||^2`.
    pub fn quotient_r1(&self) -> f64 {
        self.energy / self.rz_sq
    }

    /// Stiffness over the mid-surface `||phi_{r,z}(1)||^2`.
    pub fn quotient_r2(&self) -> f64 {
        self.energy / self.rz_mid_sq
    }

    pub fn add(&self, o: &ModeForms) -> ModeForms {
        ModeForms {
            energy: self.energy + o.energy,
            strain_sq: self.strain_sq + o.strain_sq,
            grad_sq: self.grad_sq + o.grad_sq,
            rz_sq: self.rz_sq + o.rz_sq,
            rz_mid_sq: self.rz_mid_sq + o.rz_mid_sq,
            tz_sq: self.tz_sq + o.tz_sq,
            zz_sq: self.zz_sq + o.zz_sq,
            r_sq: self.r_sq + o.r_sq,
        }
    }
}

/// An r-linearized mode: `phi_theta = (r a_theta + (r - 1) n f_r(1)) ...`,
/// `phi_z = (a_z + (r - 1) m f_r(1)) ...`, radial profile `fr` with
/// `f_r(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedMode {
    pub wn: WaveNumbers,
    pub a_theta: f64,
    pub a_z: f64,
    pub fr: Poly,
}

impl LinearizedMode {
    /// Uses the pointwise-optimal radial profile `f_r' = -Lambda/(Lambda+2) p(r)`.
    pub fn optimal(
        wn: WaveNumbers,
        a_theta: f64,
        a_z: f64,
        elastic: &IsotropicElasticity,
    ) -> Self {
        let (p0, p1) = p_coefficients(&wn, a_theta, a_z, 1.0);
        let k = elastic.lambda_ratio();
        let slope = Poly::linear(-k * p0, -k * p1);
        let mut fr = slope.antiderivative();
        fr.0[0] = 1.0;
        Self { wn, a_theta, a_z, fr }
    }

    /// Caller-chosen radial profile; it is rescaled so that `f_r(1) = 1`.
    pub fn with_profile(wn: WaveNumbers, a_theta: f64, a_z: f64, fr: Poly) -> Self {
        let v = fr.eval(0.0);
        assert!(v != 0.0, "radial profile must not vanish at r = 1");
        let fr = Poly(fr.0.iter().map(|c| c / v).collect());
        Self { wn, a_theta, a_z, fr }
    }

    pub fn fr_at_mid(&self) -> f64 {
        self.fr.eval(0.0)
    }

    pub fn to_fourier(&self) -> FourierMode {
        let fr1 = self.fr_at_mid();
        let n = self.wn.nf();
        FourierMode {
            wn: self.wn,
            fr: self.fr.clone(),
            ftheta: Poly::linear(self.a_theta, self.a_theta + n * fr1),
            fz: Poly::linear(self.a_z, self.wn.m_hat * fr1),
        }
    }

    /// `p(r) = n r a_theta + (r-1) n^2 f_r(1) + f_r(1) + m a_z + (r-1) m^2 f_r(1)`.
    pub fn p(&self, r: f64) -> f64 {
        let (p0, p1) = p_coefficients(&self.wn, self.a_theta, self.a_z, self.fr_at_mid());
        p0 + p1 * (r - 1.0)
    }
}

fn p_coefficients(wn: &WaveNumbers, a_theta: f64, a_z: f64, fr1: f64) -> (f64, f64) {
    let n = wn.nf();
    let m = wn.m_hat;
    let p0 = fr1 + n * a_theta + m * a_z;
    let p1 = n * a_theta + (n * n + m * m) * fr1;
    (p0, p1)
}

/// Strain amplitudes of an r-linearized mode.
pub fn strain_components(
    geom: &ShellGeometry,
    mode: &LinearizedMode,
    r: f64,
) -> Result<SymStrain, SpectralError> {
    geom.check_radius(r)?;
    let n = mode.wn.nf();
    let m = mode.wn.m_hat;
    let (at, az) = (mode.a_theta, mode.a_z);
    let fr = mode.fr.eval(r - 1.0);
    let dfr = mode.fr.derivative().eval(r - 1.0);
    let fr1 = mode.fr_at_mid();
    Ok(SymStrain {
        rr: dfr,
        rt: n * (fr1 - fr) / (2.0 * r),
        rz: m * (fr1 - fr) / 2.0,
        tt: (n * (r * at + (r - 1.0) * n * fr1) + fr) / r,
        tz: -(m * r * r * at + n * az + (r * r - 1.0) * m * n * fr1) / (2.0 * r),
        zz: m * (az + (r - 1.0) * m * fr1),
    })
}

/// Simplified strain `E(phi)`: shear terms with `r` dropped, remaining
/// entries rescaled by `sqrt(r)`.
pub fn simplified_strain(
    geom: &ShellGeometry,
    mode: &LinearizedMode,
    r: f64,
) -> Result<SymStrain, SpectralError> {
    geom.check_radius(r)?;
    let n = mode.wn.nf();
    let m = mode.wn.m_hat;
    let (at, az) = (mode.a_theta, mode.a_z);
    let dfr = mode.fr.derivative().eval(r - 1.0);
    let fr1 = mode.fr_at_mid();
    let sr = r.sqrt();
    Ok(SymStrain {
        rr: dfr / sr,
        rt: 0.0,
        rz: 0.0,
        tt: (n * (r * at + (r - 1.0) * n * fr1) + fr1) / sr,
        tz: -(m * r * r * at + n * az + (r * r - 1.0) * m * n * fr1) / (2.0 * sr),
        zz: m * (az + (r - 1.0) * m * fr1) / sr,
    })
}

/// Pointwise minimizer in `f_r'(r)` of the simplified energy integrand.
pub fn optimal_fr_slope(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    mode: &LinearizedMode,
    r: f64,
) -> Result<f64, SpectralError> {
    geom.check_radius(r)?;
    Ok(-elastic.lambda_ratio() * mode.p(r))
}

/// Linearization in `r` about the mid-surface: `phi_r` is kept, the
/// `theta, z` components are replaced by their first-order expansions built
/// from values at `r = 1`.
pub fn linearize(mode: &FourierMode) -> FourierMode {
    let n = mode.wn.nf();
    let m = mode.wn.m_hat;
    let fr1 = mode.fr.eval(0.0);
    let ft1 = mode.ftheta.eval(0.0);
    let fz1 = mode.fz.eval(0.0);
    FourierMode {
        wn: mode.wn,
        fr: mode.fr.clone(),
        ftheta: Poly::linear(ft1, ft1 + n * fr1),
        fz: Poly::linear(fz1, m * fr1),
    }
}

/// Stiffness of an r-linearized mode with the simplified strain `E`, and
/// the matching mid-surface denominator.
pub fn simplified_forms(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    mode: &LinearizedMode,
) -> (f64, f64) {
    let w = TrigWeights::new(mode.wn.n, geom.length());
    let mut energy = 0.0;
    for (r, wr) in geom.radial_rule(RADIAL_NODES) {
        let e = simplified_strain(geom, mode, r).expect("quadrature node inside I_h");
        energy += wr * r * w.energy(elastic, &e);
    }
    let denom = w.cs * geom.h() * (mode.wn.m_hat * mode.fr_at_mid()).powi(2);
    (energy, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (ShellGeometry, IsotropicElasticity) {
        (
            ShellGeometry::new(0.01, PI).unwrap(),
            IsotropicElasticity::normalized(0.3).unwrap(),
        )
    }

    #[test]
    fn geometry_validation() {
        assert!(ShellGeometry::new(0.0, 1.0).is_err());
        assert!(ShellGeometry::new(1.0, 1.0).is_err());
        assert!(ShellGeometry::new(0.1, -1.0).is_err());
        let g = ShellGeometry::new(0.2, 2.0).unwrap();
        assert_eq!(g.interval(), (0.9, 1.1));
        assert!(g.check_radius(1.2).is_err());
        assert!(WaveNumbers::new(0, 3, 1.0).is_err());
        let wn = g.wave_numbers(3, 2).unwrap();
        assert!((wn.m_hat - 3.0 * PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn mid_surface_substitution() {
        let (g, _) = setup();
        let wn = g.wave_numbers(4, 7).unwrap();
        let mode = LinearizedMode::with_profile(wn, 0.0, 0.0, Poly::constant(1.0));
        let e = strain_components(&g, &mode, 1.0).unwrap();
        assert_eq!(e, SymStrain::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn axisymmetric_has_no_theta_shear() {
        let (g, l) = setup();
        let wn = g.wave_numbers(5, 0).unwrap();
        let mode = LinearizedMode::optimal(wn, 0.0, -0.3, &l);
        for r in [0.995, 1.0, 1.003] {
            let e = strain_components(&g, &mode, r).unwrap();
            assert_eq!(e.rt, 0.0);
            assert_eq!(e.tz, 0.0);
        }
    }

    #[test]
    fn simplified_matches_at_mid_surface_and_drops_shear() {
        let (g, l) = setup();
        let wn = g.wave_numbers(9, 4).unwrap();
        let mode = LinearizedMode::optimal(wn, 0.2, -0.4, &l);
        let e = strain_components(&g, &mode, 1.0).unwrap();
        let s = simplified_strain(&g, &mode, 1.0).unwrap();
        assert_eq!(s.tt - e.tt, 0.0);
        for r in [0.995, 0.999, 1.004] {
            let s = simplified_strain(&g, &mode, r).unwrap();
            assert_eq!((s.rt, s.rz), (0.0, 0.0));
        }
    }

    #[test]
    fn out_of_interval_rejected() {
        let (g, l) = setup();
        let mode = LinearizedMode::optimal(g.wave_numbers(1, 1).unwrap(), 0.0, 0.0, &l);
        assert!(strain_components(&g, &mode, 1.2).is_err());
        assert!(simplified_strain(&g, &mode, 0.5).is_err());
        assert!(optimal_fr_slope(&g, &l, &mode, 2.0).is_err());
    }

    #[test]
    fn optimal_slope_examples() {
        let g = ShellGeometry::new(0.01, PI).unwrap();
        let l0 = IsotropicElasticity::normalized(0.0).unwrap();
        let wn = g.wave_numbers(3, 2).unwrap();
        let mode = LinearizedMode::optimal(wn, 0.3, 0.1, &l0);
        assert_eq!(optimal_fr_slope(&g, &l0, &mode, 1.002).unwrap(), 0.0);

        let l = IsotropicElasticity::normalized(0.3).unwrap();
        let wn = g.wave_numbers(1, 0).unwrap();
        assert!((wn.m_hat - 1.0).abs() < 1e-15);
        let mode = LinearizedMode::optimal(wn, 0.0, 0.0, &l);
        let s = optimal_fr_slope(&g, &l, &mode, 1.0).unwrap();
        assert!((s + 3.0 / 7.0).abs() < 1e-15);
        // the profile carries the same slope
        assert!((mode.fr.derivative().eval(0.0) - s).abs() < 1e-15);
    }

    #[test]
    fn linearize_is_idempotent() {
        let (g, l) = setup();
        let wn = g.wave_numbers(6, 3).unwrap();
        let lin = LinearizedMode::optimal(wn, -0.7, 0.2, &l).to_fourier();
        assert_eq!(linearize(&lin), lin);
        let twice = linearize(&linearize(&FourierMode::new(
            wn,
            Poly(vec![1.0, 0.4, -3.0]),
            Poly(vec![0.2, 1.0, 5.0, 2.0]),
            Poly(vec![-0.1, 0.0, 7.0]),
        )));
        assert_eq!(linearize(&twice), twice);
    }

    #[test]
    fn linearize_matches_definition_at_mid_surface() {
        let (g, _) = setup();
        let wn = g.wave_numbers(6, 3).unwrap();
        let f = FourierMode::new(
            wn,
            Poly(vec![1.5, 0.4, -3.0]),
            Poly(vec![0.2, 1.0, 5.0, 2.0]),
            Poly(vec![-0.1, 0.3, 7.0]),
        );
        let lf = linearize(&f);
        assert_eq!(lf.fr, f.fr);
        assert_eq!(lf.ftheta.eval(0.0), f.ftheta.eval(0.0));
        assert_eq!(lf.fz.eval(0.0), f.fz.eval(0.0));
        // slope: d/dr [r ft(1) + (r-1) n fr(1)] and d/dr [fz(1) + (r-1) m fr(1)]
        assert!((lf.ftheta.derivative().eval(0.0) - (0.2 + 3.0 * 1.5)).abs() < 1e-15);
        assert!((lf.fz.derivative().eval(0.0) - wn.m_hat * 1.5).abs() < 1e-15);
    }

    #[test]
    fn linearized_mode_strain_agrees_with_general_formula() {
        let (g, l) = setup();
        let wn = g.wave_numbers(7, 5).unwrap();
        let mode = LinearizedMode::optimal(wn, 0.35, -0.8, &l);
        let f = mode.to_fourier();
        for r in [0.995, 0.9987, 1.0, 1.0031, 1.005] {
            let a = strain_components(&g, &mode, r).unwrap();
            let b = f.strain(r);
            assert!(a.sub(&b).norm_sq().sqrt() < 1e-12 * (1.0 + b.norm_sq().sqrt()));
        }
    }

    #[test]
    fn trig_weights_for_axisymmetric_modes() {
        let w = TrigWeights::new(0, 2.0);
        assert_eq!(w.sc, 0.0);
        assert_eq!(w.ss, 0.0);
        assert!((w.cc - 2.0 * PI).abs() < 1e-15);
        let w = TrigWeights::new(3, 2.0);
        assert!((w.ss - PI).abs() < 1e-15);
    }
}
