//! Identities in Sweedler notation, parsed and checked by exhaustion.
//!
//! ```text
//! identity     := side "=" side
//! side         := { scalarfactor | elemexpr }      at most one elemexpr
//! scalarfactor := NAME "(" elemexpr { "," elemexpr } ")"
//! elemexpr     := VAR SUBSCRIPT | "1" | "S(" elemexpr ")" | "Sl(" elemexpr ")"
//!               | "(" elemexpr elemexpr ")"
//! ```
//!
//! Element products always need parentheses since the multiplication is not
//! associative. Each variable `h` is expanded on each side to `Δ^(m−1)(h)`,
//! where `m` is its largest subscript on that side.

mod ast;
mod corpus;
mod eval;
mod parser;

pub use ast::{ElemExpr, ElemOp, ScalarFactor, Side, SweedlerIdentity};
pub use corpus::{builtin_corpus, CORPUS};
pub use eval::{evaluate_all, evaluate_identity, parse_bindings, Binding, BindingError, EvalError};
pub use parser::{builtin_arity, parse_identity, IdentityError, MAX_DEPTH};
