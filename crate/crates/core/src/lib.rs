//! Design and verification of mirror-symmetric spin chains for perfect
//! quantum state transfer.
//!
//! The single-excitation sector of an open XX or XXX chain is a Jacobi
//! (real symmetric tridiagonal) matrix. [`tridiag`] diagonalizes it exactly,
//! [`chain`] builds it from a coupling sequence, [`dynamics`] evaluates the
//! boundary-to-boundary transfer amplitude, [`designer`] synthesizes coupling
//! sequences that transfer perfectly at a requested time, and
//! [`entanglement`] computes boundary-pair concurrence.

pub mod chain;
pub mod cli;
pub mod designer;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod tridiag;

pub use chain::{BasisState, ChainSpec, Model};
pub use designer::{
    design_closed_form, design_general, reconstruct_from_spectrum, reduce_half, target_spectrum,
    xx4_natural_design, CouplingSolution, DesignRequest, Parity,
};
pub use dynamics::{
    fidelity_scan, fidelity_scan_window, transition_amplitude, verify_perfect_transfer,
    BoundaryPropagator, TransferReport, DEFAULT_SAMPLES, DEFAULT_TOLERANCE,
};
pub use entanglement::{
    concurrence_pure_boundary, concurrence_thermal_xxx4, pure_eigenstate_boundary_state,
    sector_gibbs_boundary_state, wootters_concurrence, TwoQubitState,
};
pub use error::{Error, Result};
pub use tridiag::{spectrum_is_antisymmetric, EigenDecomposition, JacobiMatrix, Polynomial};
