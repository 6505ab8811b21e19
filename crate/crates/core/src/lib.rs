//! Exact verification of finite-dimensional dual quasi-Hopf algebras given by
//! structure constants.
//!
//! The crate checks the defining axioms (coassociativity, quasi-associativity
//! controlled by the reassociator `φ`, the 3-cocycle and normalization
//! conditions, the antipode identities with `α`, `β`), computes integrals and
//! the distinguished grouplike, builds the maps `σ`, `σ⁻¹`, `θ*`, `p`, `θ_c`,
//! `q_c`, `r_c`, and verifies that the antipode is bijective. Identities can
//! also be written in Sweedler notation and checked exhaustively.
//!
//! All code is generic over a [`Field`]; the two concrete fields are the
//! rationals ([`Rational`]) and prime fields ([`Fp`]).

pub mod algebra;
pub mod convolution;
pub mod examples;
pub mod integrals;
pub mod pipeline;
pub mod scalars;
pub mod sweedler;
pub mod tensors;

pub use algebra::{AlgebraInstance, AnyInstance, Report};
pub use scalars::{Field, FieldSpec, Fp, Matrix, Rational};
pub use tensors::{LinMap, SparseTensor, DEFAULT_CEILING};

/// An instance over `ℚ`.
pub type QInstance = AlgebraInstance<Rational>;
/// An instance over a prime field.
pub type FpInstance = AlgebraInstance<Fp>;
/// A check report over `ℚ`.
pub type QReport = Report<Rational>;
/// A check report over a prime field.
pub type FpReport = Report<Fp>;
