//! Independent check of the reduction: each Fourier mode's exact quadratic
//! forms are discretized in `r` with a Chebyshev nodal basis, and Rayleigh
//! quotients become generalized symmetric eigenproblems.

mod ansatz;
mod basis;
mod korn;
mod pencil;
mod reduced;

pub use ansatz::{ansatz_ratios, AnsatzOptions, AnsatzRatios, BumpProfile, ProfileJet};
pub use basis::ChebyshevBasis;
pub use korn::{
    equivalence_gap, equivalence_scan, korn_mode_scan, oracle_sweep, EquivalenceGap,
    EquivalenceScan, KornEstimate, KornKind, ModeWindow, OracleSweep,
};
pub use pencil::{
    assemble_pencil, min_rayleigh, min_rayleigh_with_vector, pencil_extremes, pencil_from,
    DenominatorKind, DofLayout, FormKind, ModeOperators, ModePencil, PencilExtremes,
    RadialDiscretization, DEFAULT_DEGREE,
};
pub use reduced::{reduced_minimum, reduced_pencil, ReducedMinimum};

use thiserror::Error;

use crate::spectral_reduction::SpectralError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("AssemblyDegenerate: stiffness matrix of mode (m, n) = ({m}, {n}) is not positive definite")]
    AssemblyDegenerate { m: u32, n: u32 },
    #[error("ZeroDenominator: mode (m, n) = ({m}, {n}) has no destabilizing component")]
    ZeroDenominator { m: u32, n: u32 },
    #[error("invalid radial degree {0} (need >= 4)")]
    InvalidDegree(usize),
    #[error("invalid quadrature: {quad_nodes} nodes for degree {degree}")]
    InvalidQuadrature { degree: usize, quad_nodes: usize },
    #[error(
        "QuadratureUnderResolved: {inside} angular nodes inside the bump support, need {required}"
    )]
    QuadratureUnderResolved { inside: usize, required: usize },
    #[error("ZeroField: the test field vanishes identically")]
    ZeroField,
    #[error("EmptyWindow: the mode window contains no wave numbers")]
    EmptyWindow,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
