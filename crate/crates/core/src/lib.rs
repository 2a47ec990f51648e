//! Critical strain and buckling modes of an axially compressed circular
//! cylindrical shell, with an independent per-mode elasticity oracle.

pub mod acceptance;
pub mod critical_load;
pub mod export;
pub mod material;
pub mod modes;
pub mod oracle;
pub mod quadrature;
pub mod spectral_reduction;
pub mod trivial_branch;
