//! # numaj-core
//!
//! Majorization-based and entropic uncertainty bounds for a pair of
//! orthonormal bases related by a unitary matrix `W` with entries
//! `w_ij = <x_i|z_j>`, specialized to the 3x3 PMNS lepton mixing matrix.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`linalg`] | small dense complex matrices, Hermitian eigenvalues, spectral norms, submatrices, partial traces |
//! | [`entropy`] | Shannon, Rényi, Tsallis entropies and the detector-inefficiency model |
//! | [`majorization`] | the majorization order, the `zeta_k` sequence and the vectors `omega`, `omega'` |
//! | [`bounds`] | Maassen–Uffink, Coles–Piani and the majorization entropic bounds |
//! | [`mixing`] | PMNS construction, global-fit parameter ranges and region scans |
//! | [`qmemory`] | conditional von Neumann entropies and quantum-memory bounds |
//! | [`ensemble`] | seeded random states and Haar unitaries |
//! | [`suite`] | seeded Monte-Carlo verification of every bound |
//!
//! All entropies are in nats. The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use numaj_core::mixing::{bound_report_at, MixingParams};
//!
//! let report = bound_report_at(&MixingParams::nufit_best_fit()).unwrap();
//! assert!((report.zetas.as_slice()[0] - 0.8213).abs() < 5e-4);
//! assert!((report.bound("shannon_direct_sum").unwrap() - 0.5114).abs() < 5e-4);
//! ```

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod ensemble;
pub mod entropy;
pub mod linalg;
pub mod majorization;
pub mod mixing;
pub mod qmemory;
pub mod suite;

use alloc::string::String;

pub use num_complex::Complex64;

pub use entropy::{Efficiency, ProbVector};
pub use linalg::{ComplexMatrix, SubmatrixIndex};
pub use majorization::{OmegaKind, OmegaVector, ZetaSequence};

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("argument outside the function domain: {0}")]
    Domain(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("invalid parameter range `{field}`: {reason}")]
    InvalidRange { field: String, reason: String },

    #[error("property violated: {0}")]
    PropertyViolation(String),
}

pub type Result<T> = core::result::Result<T, Error>;
