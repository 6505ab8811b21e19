//! Exact scalars and dense linear algebra over them.
//!
//! Everything above this module is written against the [`Field`] trait, so
//! the same checker runs over the rationals and over prime fields.

mod fp;
mod matrix;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use fp::Fp;
pub use matrix::{LinAlgError, Matrix};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),
    #[error("invalid scalar literal `{0}`")]
    InvalidLiteral(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("cannot invert the integer constant {0} without a modulus")]
    UnboundModulus(i64),
}

/// Which exact field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// A prime field; primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if !(2..(1u64 << 31)).contains(&p) {
            return Err(ScalarError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp {p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Implementors keep values in canonical form, so `==` is exact equality.
/// `Zero::zero()` and `One::one()` must be usable without knowing the field;
/// see [`Fp`] for how the prime field copes with that.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The field descriptor this scalar type can represent, checked against `spec`.
    fn supports(spec: &FieldSpec) -> Result<(), ScalarError>;

    fn from_i64_in(spec: &FieldSpec, value: i64) -> Self;

    /// Reads `-?[0-9]+` or `a/b` with `b > 0`.
    fn parse_in(spec: &FieldSpec, text: &str) -> Result<Self, ScalarError>;

    fn try_inv(&self) -> Result<Self, ScalarError>;

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    fn zero_in(spec: &FieldSpec) -> Self {
        Self::from_i64_in(spec, 0)
    }

    fn one_in(spec: &FieldSpec) -> Self {
        Self::from_i64_in(spec, 1)
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            exp >>= 1;
        }
        acc
    }
}

/// Splits a literal into numerator and denominator text, validating the shape.
pub(crate) fn split_literal(text: &str) -> Result<(&str, Option<&str>), ScalarError> {
    let bad = || ScalarError::InvalidLiteral(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if let Some(d) = den {
        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_spec_validation() {
        assert_eq!(FieldSpec::prime(7), Ok(FieldSpec::PrimeField(7)));
        assert_eq!(FieldSpec::prime(9), Err(ScalarError::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(ScalarError::ModulusOutOfRange(1)));
        assert!(FieldSpec::prime(999_983).is_ok());
    }

    #[test]
    fn literal_shapes() {
        assert!(split_literal("12").is_ok());
        assert!(split_literal("-3/4").is_ok());
        assert!(split_literal("3/-4").is_err());
        assert!(split_literal("1.5").is_err());
        assert!(split_literal("").is_err());
    }
}
