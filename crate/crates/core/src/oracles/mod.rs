//! Independent numerical ground truth for the closed forms.
//!
//! The Dirac oracle diagonalizes the 4×4 matrix Hamiltonian of a neutral
//! particle with a self-contained Jacobi solver. The Landau oracle solves the
//! transverse oscillator `−d²/dξ² + ξ²` by finite differences. Neither shares
//! code with [`crate::neutral`] or [`crate::charged`].

mod dirac;
mod landau;
mod rng;
mod verify;

pub use dirac::{hermitian_eigenvalues, neutral_hamiltonian, neutral_oracle, DiracMatrices, Mat4};
pub use landau::{
    convergence_order, landau_oracle, transverse_spectrum, DEFAULT_BOX_HALFWIDTH,
    DEFAULT_GRID_POINTS, MIN_GRID_POINTS,
};
pub use rng::SplitMix64;
pub use verify::{
    run_dirac_verification, run_landau_verification, run_verification, run_verification_with,
    DiracClosedForm, LandauClosedForm, OracleReport, VerifyKind, WorstSample,
};
