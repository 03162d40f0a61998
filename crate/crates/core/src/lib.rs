//! Exact desk-scale calculators for the Galois module structure of tame
//! extensions: finite abelian groups and their characters, cyclotomic
//! arithmetic, resolvends, the Stickelberger pairing and its transpose,
//! finite group cohomology with transgression, tame local models with
//! prime uniformizer elements, and idelic place systems with their
//! transport maps and verifiers.
//!
//! Everything is exact: group coordinates are machine integers reduced
//! modulo the invariant factors, field elements are vectors of
//! arbitrary-precision rationals, and every verifier is a zero-tolerance
//! equality check.

pub mod abelian;
pub mod cohomology;
pub mod cyclo;
pub mod finite_group;
pub mod ideles;
pub mod linalg;
pub mod resolvend;
pub mod stickelberger;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invariant factors must each be >= 2 and form a divisibility chain: {0:?}")]
    BadInvariantFactors(Vec<u64>),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(u64, u64),
    #[error("element set is not closed under the group operation")]
    NotClosed,
    #[error("group algebra element is not invertible (a character value vanishes)")]
    NotInvertible,
    #[error("map is not multiplicative")]
    NotMultiplicative,
    #[error("coset quotient does not lie in the embedded group")]
    NotInGroup,
    #[error("character combination lies outside the kernel lattice of det")]
    NotInKernelLattice,
    #[error("2-cochain violates the cocycle identity")]
    NotACocycle,
    #[error("homomorphism is not fixed by the declared group action")]
    NotSigmaFixed,
    #[error("malformed extension: {0}")]
    MalformedExtension(String),
    #[error("family member does not act as multiplication by a single unit")]
    NotScalarAction,
    #[error("search bound {0} exhausted without a witness")]
    SearchExhausted(usize),
    #[error("element order {0} does not divide q - 1 = {1}")]
    OrderNotDividing(u64, u64),
    #[error("idele vectors have mismatched kinds or systems")]
    KindMismatch,
    #[error("uniformizer symbols from different places cannot be combined")]
    UniformizerMismatch,
    #[error("transport into a ramified place is undefined for values carrying a uniformizer")]
    RamifiedTransport,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("scenario flag missing: {0}")]
    MissingFlag(String),
}

pub type Result<T> = std::result::Result<T, Error>;
