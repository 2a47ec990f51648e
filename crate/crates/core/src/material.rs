//! Isotropic linear elasticity in the local cylindrical frame.
//!
//! Every Rayleigh quotient in this crate works with the normalized tensor
//! `L0 / E`, so the Young's modulus only shows up when a dimensional stress is
//! reported.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MaterialError {
    #[error("Poisson's ratio {0} outside the open interval (-1, 1/2)")]
    InvalidPoisson(f64),
    #[error("Young's modulus {0} must be positive and finite")]
    InvalidModulus(f64),
}

/// Isotropic moduli. Construct through [`IsotropicElasticity::new`] so that
/// `-1 < nu < 1/2` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsotropicElasticity {
    e: f64,
    nu: f64,
}

impl IsotropicElasticity {
    pub fn new(e: f64, nu: f64) -> Result<Self, MaterialError> {
        if !(e.is_finite() && e > 0.0) {
            return Err(MaterialError::InvalidModulus(e));
        }
        if !(nu.is_finite() && nu > -1.0 && nu < 0.5) {
            return Err(MaterialError::InvalidPoisson(nu));
        }
        Ok(Self { e, nu })
    }

    /// Unit Young's modulus, which is all the quotients ever need.
    pub fn normalized(nu: f64) -> Result<Self, MaterialError> {
        Self::new(1.0, nu)
    }

    pub fn young(&self) -> f64 {
        self.e
    }

    pub fn poisson(&self) -> f64 {
        self.nu
    }

    /// Shear modulus `E / (2 (1 + nu))`.
    pub fn shear_modulus(&self) -> f64 {
        self.e / (2.0 * (1.0 + self.nu))
    }

    /// Bulk modulus `E / (3 (1 - 2 nu))`.
    pub fn bulk_modulus(&self) -> f64 {
        self.e / (3.0 * (1.0 - 2.0 * self.nu))
    }

    /// First Lamé parameter.
    pub fn lame_lambda(&self) -> f64 {
        self.e * self.nu / ((1.0 + self.nu) * (1.0 - 2.0 * self.nu))
    }

    /// Dimensionless `Lambda = 2 nu / (1 - 2 nu)`.
    pub fn big_lambda(&self) -> f64 {
        2.0 * self.nu / (1.0 - 2.0 * self.nu)
    }

    /// `Lambda / (Lambda + 2)`, which simplifies to `nu / (1 - nu)`.
    pub fn lambda_ratio(&self) -> f64 {
        self.nu / (1.0 - self.nu)
    }

    /// Normalized energy density `<(L0/E) e, e>`.
    pub fn energy_density(&self, e: &SymStrain) -> f64 {
        let nu = self.nu;
        (nu / (1.0 - 2.0 * nu) * e.trace().powi(2) + e.norm_sq()) / (1.0 + nu)
    }

    /// The linear map behind [`energy_density`](Self::energy_density):
    /// `(L0/E) e`, so that `energy_density(e) = <stress(e), e>`.
    pub fn normalized_stress(&self, e: &SymStrain) -> SymStrain {
        let nu = self.nu;
        let vol = nu / (1.0 - 2.0 * nu) * e.trace();
        let s = 1.0 / (1.0 + nu);
        SymStrain {
            rr: s * (vol + e.rr),
            tt: s * (vol + e.tt),
            zz: s * (vol + e.zz),
            rt: s * e.rt,
            rz: s * e.rz,
            tz: s * e.tz,
        }
    }

    /// The two eigenvalues of the isotropic normalized form:
    /// `(deviatoric, volumetric) = (1 / (1 + nu), 1 / (1 - 2 nu))`.
    pub fn form_eigenvalues(&self) -> (f64, f64) {
        (1.0 / (1.0 + self.nu), 1.0 / (1.0 - 2.0 * self.nu))
    }

    /// Largest `alpha` with `energy_density(e) >= alpha |e|^2`.
    pub fn coercivity_bound(&self) -> f64 {
        let (dev, vol) = self.form_eigenvalues();
        dev.min(vol)
    }
}

/// Symmetric tensor in the `(r, theta, z)` frame. Used both for strains and
/// for (normalized) stresses.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SymStrain {
    pub rr: f64,
    pub tt: f64,
    pub zz: f64,
    pub rt: f64,
    pub rz: f64,
    pub tz: f64,
}

impl SymStrain {
    pub const ZERO: SymStrain = SymStrain {
        rr: 0.0,
        tt: 0.0,
        zz: 0.0,
        rt: 0.0,
        rz: 0.0,
        tz: 0.0,
    };

    pub fn new(rr: f64, tt: f64, zz: f64, rt: f64, rz: f64, tz: f64) -> Self {
        Self { rr, tt, zz, rt, rz, tz }
    }

    pub fn diag(rr: f64, tt: f64, zz: f64) -> Self {
        Self::new(rr, tt, zz, 0.0, 0.0, 0.0)
    }

    pub fn trace(&self) -> f64 {
        self.rr + self.tt + self.zz
    }

    /// Squared Frobenius norm; off-diagonal entries count twice.
    pub fn norm_sq(&self) -> f64 {
        self.rr * self.rr
            + self.tt * self.tt
            + self.zz * self.zz
            + 2.0 * (self.rt * self.rt + self.rz * self.rz + self.tz * self.tz)
    }

    /// Frobenius inner product.
    pub fn dot(&self, other: &SymStrain) -> f64 {
        self.rr * other.rr
            + self.tt * other.tt
            + self.zz * other.zz
            + 2.0 * (self.rt * other.rt + self.rz * other.rz + self.tz * other.tz)
    }

    pub fn scale(&self, c: f64) -> SymStrain {
        SymStrain {
            rr: c * self.rr,
            tt: c * self.tt,
            zz: c * self.zz,
            rt: c * self.rt,
            rz: c * self.rz,
            tz: c * self.tz,
        }
    }

    pub fn sub(&self, other: &SymStrain) -> SymStrain {
        SymStrain {
            rr: self.rr - other.rr,
            tt: self.tt - other.tt,
            zz: self.zz - other.zz,
            rt: self.rt - other.rt,
            rz: self.rz - other.rz,
            tz: self.tz - other.tz,
        }
    }

    pub fn add(&self, other: &SymStrain) -> SymStrain {
        self.sub(&other.scale(-1.0))
    }

    /// Full 3x3 matrix, rows and columns ordered `(r, theta, z)`.
    pub fn to_matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.rr, self.rt, self.rz],
            [self.rt, self.tt, self.tz],
            [self.rz, self.tz, self.zz],
        ]
    }

    pub fn from_matrix(m: &[[f64; 3]; 3]) -> SymStrain {
        SymStrain {
            rr: m[0][0],
            tt: m[1][1],
            zz: m[2][2],
            rt: 0.5 * (m[0][1] + m[1][0]),
            rz: 0.5 * (m[0][2] + m[2][0]),
            tz: 0.5 * (m[1][2] + m[2][1]),
        }
    }
}

/// Free function form of [`IsotropicElasticity::energy_density`].
pub fn energy_density(elastic: &IsotropicElasticity, e: &SymStrain) -> f64 {
    elastic.energy_density(e)
}

/// Free function form of [`IsotropicElasticity::coercivity_bound`].
pub fn coercivity_bound(elastic: &IsotropicElasticity) -> f64 {
    elastic.coercivity_bound()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_strain(rng: &mut ChaCha8Rng) -> SymStrain {
        SymStrain::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    }

    #[test]
    fn rejects_out_of_range_poisson() {
        assert!(IsotropicElasticity::normalized(0.5).is_err());
        assert!(IsotropicElasticity::normalized(-1.0).is_err());
        assert!(IsotropicElasticity::normalized(f64::NAN).is_err());
        assert!(IsotropicElasticity::new(0.0, 0.3).is_err());
        assert!(IsotropicElasticity::normalized(0.499).is_ok());
    }

    #[test]
    fn density_examples() {
        let l = IsotropicElasticity::normalized(0.3).unwrap();
        assert_eq!(l.energy_density(&SymStrain::ZERO), 0.0);
        let d = l.energy_density(&SymStrain::diag(1.0, 0.0, 0.0));
        // (1/1.3) (0.3/0.4 + 1)
        assert!((d - 1.75 / 1.3).abs() < 1e-15);
        assert!((d - 1.346_153_846_153_846).abs() < 1e-12);

        let l0 = IsotropicElasticity::normalized(0.0).unwrap();
        let e = SymStrain::new(0.3, -0.2, 0.7, 0.1, -0.4, 0.25);
        assert!((l0.energy_density(&e) - e.norm_sq()).abs() < 1e-15);
    }

    #[test]
    fn derived_constants() {
        let l = IsotropicElasticity::new(2.6, 0.3).unwrap();
        assert!((l.shear_modulus() - 1.0).abs() < 1e-15);
        assert!((l.big_lambda() - 1.5).abs() < 1e-15);
        let lr = l.big_lambda() / (l.big_lambda() + 2.0);
        assert!((l.lambda_ratio() - lr).abs() < 1e-15);
        // Lame relations
        let mu = l.shear_modulus();
        assert!((l.bulk_modulus() - (l.lame_lambda() + 2.0 * mu / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn coercivity_values() {
        assert_eq!(IsotropicElasticity::normalized(0.0).unwrap().coercivity_bound(), 1.0);
        let near = IsotropicElasticity::normalized(0.4999).unwrap();
        assert!((near.coercivity_bound() - 1.0 / 1.4999).abs() < 1e-15);
        let aux = IsotropicElasticity::normalized(-0.5).unwrap();
        assert!((aux.coercivity_bound() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coercivity_sampling_nu_03() {
        let l = IsotropicElasticity::normalized(0.3).unwrap();
        let alpha = l.coercivity_bound();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut tightest = f64::INFINITY;
        for _ in 0..1000 {
            let e = random_strain(&mut rng);
            let ratio = l.energy_density(&e) / e.norm_sq();
            assert!(ratio >= alpha * (1.0 - 1e-12));
            tightest = tightest.min(ratio);
        }
        // a pure deviatoric strain attains the bound
        let dev = SymStrain::new(0.0, 0.0, 0.0, 1.0, 0.0, 0.0);
        assert!((l.energy_density(&dev) / dev.norm_sq() - alpha).abs() < 1e-15);
        assert!(tightest < 2.0 * alpha);
    }

    #[test]
    fn stress_map_reproduces_density() {
        let l = IsotropicElasticity::normalized(0.27).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let e = random_strain(&mut rng);
            let s = l.normalized_stress(&e);
            assert!((s.dot(&e) - l.energy_density(&e)).abs() < 1e-13);
        }
    }

    #[test]
    fn axis_permutations_leave_density_unchanged() {
        let l = IsotropicElasticity::normalized(0.35).unwrap();
        let e = SymStrain::new(0.3, -0.2, 0.7, 0.1, -0.4, 0.25);
        let m = e.to_matrix();
        let base = l.energy_density(&e);
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let mut pm = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    pm[i][j] = m[p[i]][p[j]];
                }
            }
            let d = l.energy_density(&SymStrain::from_matrix(&pm));
            assert!((d - base).abs() < 1e-14);
        }
    }
}
