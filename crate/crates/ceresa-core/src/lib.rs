//! Exact-arithmetic toolkit for computational tropical and symplectic geometry.
//!
//! Everything here is computed over sparse multivariate polynomials with
//! arbitrary-precision rational coefficients; there is no floating point
//! anywhere. The crate covers:
//!
//! - metric graphs, cycle bases, polarisation matrices, and the Abel-Jacobi
//!   embedding of a tropical curve into its Jacobian as a framed 1-cycle;
//! - tropical tori `B(Q) = R^n / Q.Z^n`, determinantal forms, and their
//!   period lattices (closed formula and a brute-force integration oracle);
//! - framed parallelotope chains, the cubical boundary operator, integration
//!   of constant cochains, and the explicit five-parallelogram chain bounding
//!   the Ceresa cycle of a K4 curve;
//! - lattice-membership and torsion classification of flux values against a
//!   period group, with re-verifiable Smith-normal-form certificates;
//! - the Kunneth chain maps to the symplectic torus `X(B)`, the integration
//!   pairing they preserve, symplectic period groups, and the Lefschetz
//!   Jacobian lattice.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![no_std]

extern crate alloc;

pub mod scalar;
pub mod intmat;
pub mod exterior;
pub mod graph;
pub mod torus;
pub mod chains;
pub mod lift;

pub use scalar::{Monomial, Scalar};
pub use intmat::IntMatrix;
pub use exterior::{ExteriorElement, MultiIndex};
pub use graph::{CycleBasis, MetricGraph};
pub use torus::{ConstantCochain, PeriodGroup, TropicalTorus};
pub use chains::{FluxVerdict, FramedCell, FramedChain};
pub use lift::{ChainX, ConstantFormX};

use alloc::string::String;

/// Errors surfaced by fallible operations. Dimension mismatches between
/// values that can only arise from a bug in the caller panic instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The graph is not connected.
    Disconnected,
    /// Degrees or bidegrees incompatible with the requested operation.
    DegreeMismatch(String),
    /// `perm_sign` was given tuples that are not permutations of each other.
    NotAPermutation,
    /// The operation requires a curve of type K4.
    NotK4(String),
    /// The input file/graph violates a structural precondition.
    BadLayout(String),
    /// The operation requires numeric (rational constant) data.
    SymbolicInput(String),
    /// A framing lacks the recorded pure-wedge factorization the operation needs.
    NoFactorization,
    /// A cell's spanning data is dependent or not a scalar multiple of a
    /// primitive integer vector.
    BadCell(String),
    /// A chain's boundary does not match the prescribed cycle difference.
    BoundaryMismatch(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::Disconnected => write!(f, "graph is not connected"),
            Error::DegreeMismatch(m) => write!(f, "degree mismatch: {m}"),
            Error::NotAPermutation => write!(f, "tuples are not permutations of each other"),
            Error::NotK4(m) => write!(f, "curve is not of type K4: {m}"),
            Error::BadLayout(m) => write!(f, "unsupported layout: {m}"),
            Error::SymbolicInput(m) => write!(f, "numeric lengths required: {m}"),
            Error::NoFactorization => {
                write!(f, "framing has no recorded pure-wedge factorization")
            }
            Error::BadCell(m) => write!(f, "bad cell data: {m}"),
            Error::BoundaryMismatch(m) => write!(f, "boundary mismatch: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
