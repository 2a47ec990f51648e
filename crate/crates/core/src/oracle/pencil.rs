//! Per-mode radial discretization of the exact elastic quadratic forms and the
//! generalized symmetric eigenproblems built from them.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::basis::ChebyshevBasis;
use super::OracleError;
use crate::material::IsotropicElasticity;
use crate::quadrature::{GaussLegendre, Poly};
use crate::spectral_reduction::{FourierMode, ShellGeometry, TrigWeights, WaveNumbers};

pub const DEFAULT_DEGREE: usize = 12;

/// Polynomial degree per displacement component and the Gauss-Legendre node
/// count used for the radial integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialDiscretization {
    degree: usize,
    quad_nodes: usize,
}

impl RadialDiscretization {
    /// Degree `p` with `2p` quadrature nodes.
    pub fn new(degree: usize) -> Result<Self, OracleError> {
        Self::with_quadrature(degree, 2 * degree)
    }

    pub fn with_quadrature(degree: usize, quad_nodes: usize) -> Result<Self, OracleError> {
        if degree < 4 {
            return Err(OracleError::InvalidDegree(degree));
        }
        // exactness for degree 2p - 1 needs at least p nodes
        if quad_nodes < degree {
            return Err(OracleError::InvalidQuadrature { degree, quad_nodes });
        }
        Ok(Self { degree, quad_nodes })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn quad_nodes(&self) -> usize {
        self.quad_nodes
    }
}

impl Default for RadialDiscretization {
    fn default() -> Self {
        Self {
            degree: DEFAULT_DEGREE,
            quad_nodes: 2 * DEFAULT_DEGREE,
        }
    }
}

/// Which quadratic form of a mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormKind {
    /// `int <(L0/E) e, e>`
    Energy,
    /// `||e||^2`
    StrainNorm,
    /// `||grad phi||^2`
    GradNorm,
    /// `||phi_{r,z}||^2 + ||phi_{z,z}||^2 + ||phi_{theta,z}||^2`
    Compression,
    /// `||phi_{r,z}||^2`
    RadialAxial,
    /// `||phi_{r,z}(1, ., .)||^2` over the shell
    RadialAxialMid,
    /// `||phi_{theta,z}||^2`
    ThetaAxial,
    /// `||phi_{z,z}||^2`
    AxialAxial,
    /// `||phi_r||^2`
    RadialMass,
}

/// Denominator of the quotient placed in a [`ModePencil`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenominatorKind {
    /// The full compression measure.
    Full,
    /// `||phi_{r,z}||^2`.
    RadialAxial,
    /// `||phi_{r,z}(1, ., .)||^2`.
    RadialAxialMid,
}

impl DenominatorKind {
    pub fn form(self) -> FormKind {
        match self {
            DenominatorKind::Full => FormKind::Compression,
            DenominatorKind::RadialAxial => FormKind::RadialAxial,
            DenominatorKind::RadialAxialMid => FormKind::RadialAxialMid,
        }
    }
}

/// Degrees of freedom: Chebyshev coefficients of `f_r`, `f_theta` (absent when `n = 0`)
/// and `f_z`, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofLayout {
    pub nodes: usize,
    pub has_theta: bool,
}

impl DofLayout {
    pub fn len(&self) -> usize {
        if self.has_theta {
            3 * self.nodes
        } else {
            2 * self.nodes
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes == 0
    }

    pub fn r_block(&self) -> usize {
        0
    }

    pub fn theta_block(&self) -> Option<usize> {
        self.has_theta.then_some(self.nodes)
    }

    pub fn z_block(&self) -> usize {
        if self.has_theta {
            2 * self.nodes
        } else {
            self.nodes
        }
    }
}

/// All quadratic forms of one Fourier mode on a common radial basis.
#[derive(Debug, Clone)]
pub struct ModeOperators {
    pub wn: WaveNumbers,
    pub layout: DofLayout,
    half_width: f64,
    energy: DMatrix<f64>,
    strain_sq: DMatrix<f64>,
    grad_sq: DMatrix<f64>,
    rz_sq: DMatrix<f64>,
    rz_mid_sq: DMatrix<f64>,
    tz_sq: DMatrix<f64>,
    zz_sq: DMatrix<f64>,
    r_sq: DMatrix<f64>,
}

struct Rows {
    rr: DVector<f64>,
    rt: DVector<f64>,
    rz: DVector<f64>,
    tr: DVector<f64>,
    tt: DVector<f64>,
    tz: DVector<f64>,
    zr: DVector<f64>,
    zt: DVector<f64>,
    zz: DVector<f64>,
    fr: DVector<f64>,
}

impl ModeOperators {
    pub fn assemble(
        geom: &ShellGeometry,
        elastic: &IsotropicElasticity,
        wn: WaveNumbers,
        disc: &RadialDiscretization,
    ) -> Self {
        let basis = ChebyshevBasis::new(disc.degree());
        let layout = DofLayout {
            nodes: basis.len(),
            has_theta: wn.n > 0,
        };
        let dim = layout.len();
        let h = geom.h();
        let w = TrigWeights::new(wn.n, geom.length());
        let nu = elastic.poisson();
        let vol = nu / (1.0 - 2.0 * nu);
        let inv = 1.0 / (1.0 + nu);
        let m = wn.m_hat;

        let zero = || DMatrix::<f64>::zeros(dim, dim);
        let mut ops = Self {
            wn,
            layout,
            half_width: 0.5 * h,
            energy: zero(),
            strain_sq: zero(),
            grad_sq: zero(),
            rz_sq: zero(),
            rz_mid_sq: zero(),
            tz_sq: zero(),
            zz_sq: zero(),
            r_sq: zero(),
        };

        let rule = GaussLegendre::new(disc.quad_nodes());
        for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
            let r = 1.0 + 0.5 * h * x;
            let dv = 0.5 * h * wx * r;
            let rows = gradient_rows(&basis, &layout, wn, x, h, r);

            let ert = (&rows.rt + &rows.tr) * 0.5;
            let erz = (&rows.rz + &rows.zr) * 0.5;
            let etz = (&rows.tz + &rows.zt) * 0.5;
            let tr = &rows.rr + &rows.tt + &rows.zz;

            let e = &mut ops.energy;
            rank1(e, dv * inv * vol * w.cc, &tr);
            for row in [&rows.rr, &rows.tt, &rows.zz] {
                rank1(e, dv * inv * w.cc, row);
            }
            rank1(e, dv * inv * 2.0 * w.sc, &ert);
            rank1(e, dv * inv * 2.0 * w.cs, &erz);
            rank1(e, dv * inv * 2.0 * w.ss, &etz);

            let s = &mut ops.strain_sq;
            for row in [&rows.rr, &rows.tt, &rows.zz] {
                rank1(s, dv * w.cc, row);
            }
            rank1(s, dv * 2.0 * w.sc, &ert);
            rank1(s, dv * 2.0 * w.cs, &erz);
            rank1(s, dv * 2.0 * w.ss, &etz);

            let g = &mut ops.grad_sq;
            for row in [&rows.rr, &rows.tt, &rows.zz] {
                rank1(g, dv * w.cc, row);
            }
            rank1(g, dv * w.sc, &rows.rt);
            rank1(g, dv * w.sc, &rows.tr);
            rank1(g, dv * w.cs, &rows.rz);
            rank1(g, dv * w.cs, &rows.zr);
            rank1(g, dv * w.ss, &rows.tz);
            rank1(g, dv * w.ss, &rows.zt);

            rank1(&mut ops.rz_sq, dv * w.cs, &rows.rz);
            rank1(&mut ops.tz_sq, dv * w.ss, &rows.tz);
            rank1(&mut ops.zz_sq, dv * w.cc, &rows.zz);
            rank1(&mut ops.r_sq, dv * w.cc, &rows.fr);
        }

        // mid-surface trace: int_{I_h} r dr = h
        let mut mid = DVector::zeros(dim);
        let v0 = basis.values(0.0);
        for (k, v) in v0.iter().enumerate() {
            mid[layout.r_block() + k] = -m * v;
        }
        rank1(&mut ops.rz_mid_sq, h * w.cs, &mid);

        for mat in [
            &mut ops.energy,
            &mut ops.strain_sq,
            &mut ops.grad_sq,
            &mut ops.rz_sq,
            &mut ops.tz_sq,
            &mut ops.zz_sq,
            &mut ops.r_sq,
        ] {
            symmetrize(mat);
        }
        ops
    }

    pub fn form(&self, kind: FormKind) -> DMatrix<f64> {
        match kind {
            FormKind::Energy => self.energy.clone(),
            FormKind::StrainNorm => self.strain_sq.clone(),
            FormKind::GradNorm => self.grad_sq.clone(),
            FormKind::Compression => &self.rz_sq + &self.zz_sq + &self.tz_sq,
            FormKind::RadialAxial => self.rz_sq.clone(),
            FormKind::RadialAxialMid => self.rz_mid_sq.clone(),
            FormKind::ThetaAxial => self.tz_sq.clone(),
            FormKind::AxialAxial => self.zz_sq.clone(),
            FormKind::RadialMass => self.r_sq.clone(),
        }
    }

    pub fn form_ref(&self, kind: FormKind) -> Option<&DMatrix<f64>> {
        match kind {
            FormKind::Energy => Some(&self.energy),
            FormKind::StrainNorm => Some(&self.strain_sq),
            FormKind::GradNorm => Some(&self.grad_sq),
            FormKind::Compression => None,
            FormKind::RadialAxial => Some(&self.rz_sq),
            FormKind::RadialAxialMid => Some(&self.rz_mid_sq),
            FormKind::ThetaAxial => Some(&self.tz_sq),
            FormKind::AxialAxial => Some(&self.zz_sq),
            FormKind::RadialMass => Some(&self.r_sq),
        }
    }

    /// Basis coefficients of a mode's radial profiles, or `None` when a
    /// profile's degree exceeds the basis degree.
    pub fn coefficients_of(&self, mode: &FourierMode) -> Option<DVector<f64>> {
        let basis = ChebyshevBasis::new(self.layout.nodes - 1);
        let to_x = |p: &Poly| -> Option<Vec<f64>> {
            let mono: Vec<f64> = p
                .0
                .iter()
                .enumerate()
                .map(|(j, c)| c * self.half_width.powi(j as i32))
                .collect();
            basis.from_monomial(&mono)
        };
        let mut x = DVector::zeros(self.layout.len());
        let mut put = |block: usize, c: Vec<f64>| {
            for (k, v) in c.into_iter().enumerate() {
                x[block + k] = v;
            }
        };
        put(self.layout.r_block(), to_x(&mode.fr)?);
        if let Some(b) = self.layout.theta_block() {
            put(b, to_x(&mode.ftheta)?);
        }
        put(self.layout.z_block(), to_x(&mode.fz)?);
        Some(x)
    }

    /// Quadratic form value `x^T M x`.
    pub fn value(&self, kind: FormKind, x: &DVector<f64>) -> f64 {
        match self.form_ref(kind) {
            Some(m) => quad(m, x),
            None => quad(&self.form(kind), x),
        }
    }
}

fn gradient_rows(
    basis: &ChebyshevBasis,
    layout: &DofLayout,
    wn: WaveNumbers,
    x: f64,
    h: f64,
    r: f64,
) -> Rows {
    let dim = layout.len();
    let (v, dx) = basis.values_and_derivatives(x);
    let scale = 2.0 / h;
    let n = wn.nf();
    let m = wn.m_hat;
    let z = || DVector::<f64>::zeros(dim);
    let mut rows = Rows {
        rr: z(),
        rt: z(),
        rz: z(),
        tr: z(),
        tt: z(),
        tz: z(),
        zr: z(),
        zt: z(),
        zz: z(),
        fr: z(),
    };
    let rb = layout.r_block();
    let zb = layout.z_block();
    for k in 0..layout.nodes {
        let (vk, dk) = (v[k], dx[k] * scale);
        rows.fr[rb + k] = vk;
        rows.rr[rb + k] = dk;
        rows.rt[rb + k] = -n * vk / r;
        rows.rz[rb + k] = -m * vk;
        rows.tt[rb + k] = vk / r;
        if let Some(tb) = layout.theta_block() {
            rows.rt[tb + k] = -vk / r;
            rows.tr[tb + k] = dk;
            rows.tt[tb + k] = n * vk / r;
            rows.tz[tb + k] = -m * vk;
        }
        rows.zr[zb + k] = dk;
        rows.zt[zb + k] = -n * vk / r;
        rows.zz[zb + k] = m * vk;
    }
    rows
}

fn rank1(mat: &mut DMatrix<f64>, w: f64, row: &DVector<f64>) {
    if w == 0.0 {
        return;
    }
    mat.ger(w, row, row, 1.0);
}

fn symmetrize(mat: &mut DMatrix<f64>) {
    let t = mat.transpose();
    *mat += t;
    *mat *= 0.5;
}

pub(crate) fn quad(m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    x.dot(&(m * x))
}

/// Stiffness `A` and a destabilizing form `B` of one mode.
#[derive(Debug, Clone)]
pub struct ModePencil {
    pub wn: WaveNumbers,
    pub layout: DofLayout,
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
}

pub fn assemble_pencil(
    geom: &ShellGeometry,
    elastic: &IsotropicElasticity,
    wn: WaveNumbers,
    denominator: DenominatorKind,
    disc: &RadialDiscretization,
) -> Result<ModePencil, OracleError> {
    let ops = ModeOperators::assemble(geom, elastic, wn, disc);
    pencil_from(&ops, FormKind::Energy, denominator.form())
}

/// Pencil built from two forms of already assembled operators.
pub fn pencil_from(
    ops: &ModeOperators,
    numerator: FormKind,
    denominator: FormKind,
) -> Result<ModePencil, OracleError> {
    let a = ops.form(numerator);
    if Cholesky::new(a.clone()).is_none() {
        return Err(OracleError::AssemblyDegenerate {
            m: ops.wn.m,
            n: ops.wn.n,
        });
    }
    Ok(ModePencil {
        wn: ops.wn,
        layout: ops.layout,
        a,
        b: ops.form(denominator),
    })
}

/// Extreme eigenpairs of `B x = mu A x` for symmetric `A > 0`.
#[derive(Debug, Clone)]
pub struct PencilExtremes {
    pub mu_min: f64,
    pub mu_max: f64,
    /// `A`-normalized eigenvector for `mu_min`.
    pub x_min: DVector<f64>,
    /// `A`-normalized eigenvector for `mu_max`.
    pub x_max: DVector<f64>,
}

/// Solves `B x = mu A x` through the congruence `L^{-1} B L^{-T}` with
/// `A = L L^T`. Returns `None` when `A` is not positive definite.
pub fn pencil_extremes(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Option<PencilExtremes> {
    let chol = Cholesky::new(a.clone())?;
    let l = chol.l();
    let y = l.solve_lower_triangular(b)?;
    let mut c = l.solve_lower_triangular(&y.transpose())?;
    symmetrize(&mut c);
    let eig = SymmetricEigen::new(c);
    let (mut imin, mut imax) = (0, 0);
    for (i, &v) in eig.eigenvalues.iter().enumerate() {
        if v < eig.eigenvalues[imin] {
            imin = i;
        }
        if v > eig.eigenvalues[imax] {
            imax = i;
        }
    }
    let lt = l.transpose();
    let back = |i: usize| -> Option<DVector<f64>> {
        let y = eig.eigenvectors.column(i).into_owned();
        lt.solve_upper_triangular(&y)
    };
    Some(PencilExtremes {
        mu_min: eig.eigenvalues[imin],
        mu_max: eig.eigenvalues[imax],
        x_min: back(imin)?,
        x_max: back(imax)?,
    })
}

/// `inf x^T A x / x^T B x = 1 / mu_max`.
pub fn min_rayleigh(pencil: &ModePencil) -> Result<f64, OracleError> {
    Ok(min_rayleigh_with_vector(pencil)?.0)
}

/// The minimum together with an `A`-normalized minimizer.
pub fn min_rayleigh_with_vector(pencil: &ModePencil) -> Result<(f64, DVector<f64>), OracleError> {
    let ext = pencil_extremes(&pencil.a, &pencil.b).ok_or(OracleError::AssemblyDegenerate {
        m: pencil.wn.m,
        n: pencil.wn.n,
    })?;
    let scale = pencil.b.amax().max(f64::MIN_POSITIVE) / pencil.a.amax().max(f64::MIN_POSITIVE);
    if ext.mu_max.is_nan() || ext.mu_max <= 1e-13 * scale {
        return Err(OracleError::ZeroDenominator {
            m: pencil.wn.m,
            n: pencil.wn.n,
        });
    }
    Ok((1.0 / ext.mu_max, ext.x_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn setup(h: f64) -> (ShellGeometry, IsotropicElasticity) {
        (
            ShellGeometry::new(h, PI).unwrap(),
            IsotropicElasticity::normalized(0.3).unwrap(),
        )
    }

    #[test]
    fn rejects_low_degree() {
        assert!(RadialDiscretization::new(3).is_err());
        assert!(RadialDiscretization::with_quadrature(6, 5).is_err());
        assert_eq!(RadialDiscretization::default().quad_nodes(), 24);
    }

    #[test]
    fn identical_forms_give_one() {
        let (g, l) = setup(0.05);
        let ops = ModeOperators::assemble(&g, &l, g.wave_numbers(2, 3).unwrap(), &Default::default());
        let p = pencil_from(&ops, FormKind::Energy, FormKind::Energy).unwrap();
        assert!((min_rayleigh(&p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn axisymmetric_first_mode_has_no_rigid_motion() {
        for h in [0.1, 0.01, 0.001] {
            let (g, l) = setup(h);
            let ops = ModeOperators::assemble(&g, &l, g.wave_numbers(1, 0).unwrap(), &Default::default());
            let eig = SymmetricEigen::new(ops.form(FormKind::Energy));
            assert!(eig.eigenvalues.min() > 0.0, "h={h}");
        }
    }

    #[test]
    fn forms_match_polynomial_mode() {
        let (g, l) = setup(0.02);
        for (m, n) in [(3, 0), (2, 5), (7, 11)] {
            let wn = g.wave_numbers(m, n).unwrap();
            let mode = FourierMode::new(
                wn,
                Poly(vec![1.0, -0.4, 3.0, 2.0]),
                Poly(vec![0.2, 1.5, -7.0]),
                Poly(vec![-0.3, 2.0, 0.5, 10.0]),
            );
            let ops = ModeOperators::assemble(&g, &l, wn, &Default::default());
            let x = ops.coefficients_of(&mode).unwrap();
            let f = mode.forms(&g, &l);
            let checks = [
                (FormKind::Energy, f.energy),
                (FormKind::StrainNorm, f.strain_sq),
                (FormKind::GradNorm, f.grad_sq),
                (FormKind::RadialAxial, f.rz_sq),
                (FormKind::RadialAxialMid, f.rz_mid_sq),
                (FormKind::ThetaAxial, f.tz_sq),
                (FormKind::AxialAxial, f.zz_sq),
                (FormKind::RadialMass, f.r_sq),
                (FormKind::Compression, f.rz_sq + f.zz_sq + f.tz_sq),
            ];
            for (kind, want) in checks {
                let got = ops.value(kind, &x);
                assert!(
                    (got - want).abs() <= 1e-12 * want.abs().max(1e-300),
                    "{kind:?} ({m},{n}) got {got} want {want}"
                );
            }
        }
    }

    #[test]
    fn zero_denominator_rejected() {
        let (g, l) = setup(0.05);
        let ops = ModeOperators::assemble(&g, &l, g.wave_numbers(1, 0).unwrap(), &Default::default());
        // no theta block for n = 0, so the theta-axial form is identically zero
        let p = pencil_from(&ops, FormKind::Energy, FormKind::ThetaAxial).unwrap();
        assert!(matches!(min_rayleigh(&p), Err(OracleError::ZeroDenominator { .. })));
    }
}
