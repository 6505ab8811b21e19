use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{split_literal, Field, FieldSpec, ScalarError};

/// Arbitrary-precision rationals; `Ratio` keeps them reduced with positive denominator.
pub type Rational = BigRational;

impl Field for BigRational {
    fn supports(spec: &FieldSpec) -> Result<(), ScalarError> {
        match spec {
            FieldSpec::Rationals => Ok(()),
            other => Err(ScalarError::FieldMismatch {
                expected: FieldSpec::Rationals,
                found: *other,
            }),
        }
    }

    fn from_i64_in(_spec: &FieldSpec, value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn parse_in(_spec: &FieldSpec, text: &str) -> Result<Self, ScalarError> {
        let (num, den) = split_literal(text)?;
        let bad = || ScalarError::InvalidLiteral(text.to_string());
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::from(1),
        };
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(BigRational::new(num, den))
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}
