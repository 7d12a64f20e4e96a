//! Cluster transformations from braid moves on wiring diagrams.
//!
//! The crate is organized bottom-up:
//!
//! - [`seedcore`]: seeds (labeled quivers with a skew-symmetric exchange
//!   matrix), mutations, automorphisms, and their exact/numeric action on
//!   A-, X-, and D-torus points.
//! - [`tropical`]: exact tropical X-variable dynamics, sign coherence,
//!   triviality certification, and γ/sign trace extraction.
//! - [`wiring`]: words, wiring diagrams, the triangle/square/butterfly quiver
//!   families, braid moves as cluster transformations, and the S4 loop.
//! - [`specialfn`]: numeric noncompact quantum dilogarithm, double sine,
//!   compact-dilogarithm cross-check, and the Faddeev beta-integral.
//! - [`kernel`]: monomial-part matrices, triple-double-sine factors, kernel
//!   specifications for intertwiners/R-matrices, numeric kernel evaluation,
//!   and gauge-theory charge tables.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so concurrent evaluation is safe with no shared mutable state.

pub mod kernel;
pub mod seedcore;
pub mod specialfn;
pub mod tropical;
pub mod wiring;

/// Crate-wide error type.
///
/// A single enum keeps error codes stable across the library, the CLI, and
/// the C ABI.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("exchange matrix is not skew-symmetric at ({row}, {col})")]
    NonSkewSymmetric { row: usize, col: usize },
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("matrix is {rows}x{cols} but there are {labels} labels")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        labels: usize,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("permutation is not a bijection")]
    NotABijection,
    #[error("integer overflow in exchange-matrix arithmetic")]
    Overflow,
    #[error("transformation changes the label set")]
    LabelSetChanged,
    #[error("exponent vector has entries of mixed sign: {0:?}")]
    SignIncoherent(Vec<i64>),
    #[error("letter {letter} out of range for {wires} wires")]
    LetterOutOfRange { letter: u8, wires: u8 },
    #[error("no braid-move pattern at position {0}")]
    NotApplicable(usize),
    #[error("|q| = {0} >= 1: infinite product diverges")]
    DivergentModulus(f64),
    #[error("quadrature did not converge within the node budget ({0} nodes)")]
    QuadratureNotConverged(usize),
    #[error("parameters violate the validity domain: {0}")]
    DomainViolation(String),
    #[error("transformation is not normalized (mutations then one automorphism)")]
    NotNormalized,
    #[error("boundary assignment is missing variable {0}")]
    MissingVariable(String),
    #[error("internal integral has dimension {0}; only dimension <= 2 is supported")]
    UnsupportedDimension(usize),
    #[error("invalid label string {0:?}")]
    BadLabel(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
