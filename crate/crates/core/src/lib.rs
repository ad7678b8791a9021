//! Laboratory for finite simplicial complexes and their randomized processes.
//!
//! The crate is organized around seven areas:
//!
//! * [`complex`] — canonical representation and surgery of abstract simplicial
//!   complexes (links, skeleta, clique complexes, pure-dimensionalization).
//! * [`homology`] — exact reduced Betti numbers via boundary-matrix ranks,
//!   over the rationals (ground truth) or a large prime field (fast path).
//! * [`spectral`] — averaging-matrix Laplacian spectra of graphs, `γ`-counts,
//!   the link-spectral upper bound on Betti numbers, closed-walk combinatorics.
//! * [`cochain`] — weighted cochain spaces on pure complexes, up/down
//!   Laplacians, harmonic Betti numbers, and localization identities.
//! * [`models`] — multi-parameter random complex samplers, the `q_k`/`r_k`
//!   parameter algebra, and time-dependent parameter functions.
//! * [`persistence`] — Betti step functions along a filtration and the
//!   lifetime sums they integrate to.
//! * [`constants`] — the limiting constants (critical points, `g`/`h`
//!   densities, polylogarithm/zeta/Stirling machinery) computed by two
//!   independent routes.

pub mod cochain;
pub mod complex;
pub mod constants;
pub mod homology;
pub mod models;
pub mod persistence;
pub mod quad;
pub mod rng;
pub mod spectral;
pub mod stats;

use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A simplex literal contained a repeated vertex id.
    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),
    /// An argument referred to a simplex or vertex outside the complex.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two cochains or spaces of different dimensions were combined.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// An enumeration exceeded its hard budget.
    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),
    /// The requested quantity is undefined for the given input.
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    /// A statistical probe could not collect enough data to decide.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// Malformed model description or configuration.
    #[error("bad model description: {0}")]
    BadModel(String),
    /// I/O or parse failure on the text complex format.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
