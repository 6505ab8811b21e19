use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{split_literal, Field, FieldSpec, ScalarError};

/// A residue modulo a runtime prime `p`.
///
/// `Zero::zero()` and `One::one()` have no way to learn `p`, so they produce
/// an *unbound* integer constant (modulus 0). An unbound constant adopts the
/// modulus of whatever bound residue it is combined with, and compares equal
/// to a bound residue when it reduces to it. Mixing two different bound
/// moduli is a programming error and panics.
#[derive(Clone, Copy)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        Self { value, modulus }.canonical()
    }

    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus)
    }

    /// The canonical residue in `[0, p)`; for unbound constants the raw integer.
    pub fn value(&self) -> i64 {
        self.value
    }

    fn canonical(mut self) -> Self {
        if self.modulus != 0 {
            self.value = self.value.rem_euclid(self.modulus as i64);
        }
        self
    }

    fn join(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, m) | (m, 0) => m,
            (x, y) if x == y => x,
            (x, y) => panic!("mixing residues of F_{x} and F_{y}"),
        }
    }

    fn reduced_in(&self, modulus: u64) -> i64 {
        if modulus == 0 {
            self.value
        } else {
            self.value.rem_euclid(modulus as i64)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus != 0 && other.modulus != 0 && self.modulus != other.modulus {
            return false;
        }
        let m = Fp::join(self.modulus, other.modulus);
        self.reduced_in(m) == other.reduced_in(m)
    }
}

impl Eq for Fp {}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "{}", self.value),
            p => write!(f, "{} (mod {p})", self.value),
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        Fp::new(self.reduced_in(m) + rhs.reduced_in(m), m)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        Fp::new(self.reduced_in(m) - rhs.reduced_in(m), m)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let m = Fp::join(self.modulus, rhs.modulus);
        let (a, b) = (self.reduced_in(m), rhs.reduced_in(m));
        if m == 0 {
            return Fp::new(a * b, 0);
        }
        let prod = (a as i128 * b as i128).rem_euclid(m as i128);
        Fp::new(prod as i64, m)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::new(-self.value, self.modulus)
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Fp;
    fn add(self, rhs: &'a Fp) -> Fp {
        self + *rhs
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Fp;
    fn sub(self, rhs: &'a Fp) -> Fp {
        self - *rhs
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Fp;
    fn mul(self, rhs: &'a Fp) -> Fp {
        self * *rhs
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
}

impl Field for Fp {
    fn supports(spec: &FieldSpec) -> Result<(), ScalarError> {
        match spec {
            FieldSpec::PrimeField(_) => Ok(()),
            other => Err(ScalarError::FieldMismatch {
                expected: FieldSpec::PrimeField(0),
                found: *other,
            }),
        }
    }

    fn from_i64_in(spec: &FieldSpec, value: i64) -> Self {
        Fp::new(value, spec.characteristic())
    }

    fn parse_in(spec: &FieldSpec, text: &str) -> Result<Self, ScalarError> {
        let p = match spec {
            FieldSpec::PrimeField(p) => *p,
            other => {
                return Err(ScalarError::FieldMismatch {
                    expected: FieldSpec::PrimeField(0),
                    found: *other,
                })
            }
        };
        let (num, den) = split_literal(text)?;
        let bad = || ScalarError::InvalidLiteral(text.to_string());
        let reduce = |s: &str| -> Result<Fp, ScalarError> {
            let big: BigInt = s.parse().map_err(|_| bad())?;
            let r = big.mod_floor(&BigInt::from(p)).to_i64().ok_or_else(bad)?;
            Ok(Fp::new(r, p))
        };
        let n = reduce(num)?;
        match den {
            Some(d) => n.try_div(&reduce(d)?),
            None => Ok(n),
        }
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.value == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        if self.modulus == 0 {
            return match self.value {
                1 | -1 => Ok(*self),
                v => Err(ScalarError::UnboundModulus(v)),
            };
        }
        let p = self.modulus as i64;
        let (mut r0, mut r1) = (p, self.value);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp::new(t0, self.modulus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F7: FieldSpec = FieldSpec::PrimeField(7);

    fn f7(v: i64) -> Fp {
        Fp::from_i64_in(&F7, v)
    }

    #[test]
    fn product_reduces() {
        assert_eq!(f7(3) * f7(5), f7(1));
        assert_eq!((f7(3) * f7(5)).value(), 1);
    }

    #[test]
    fn inverse_and_zero() {
        assert_eq!(f7(3).try_inv().unwrap(), f7(5));
        assert_eq!(f7(0).try_inv(), Err(ScalarError::DivisionByZero));
        assert_eq!(f7(14).try_inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn unbound_constants_adopt_modulus() {
        let s = Fp::zero() + f7(6) + Fp::one();
        assert_eq!(s, f7(0));
        assert_eq!(s.modulus(), Some(7));
        assert_eq!(Fp::one(), f7(8));
        assert_ne!(Fp::one(), f7(2));
        assert!(Fp::new(7, 7).is_zero());
    }

    #[test]
    fn parse_reduces_on_read() {
        assert_eq!(Fp::parse_in(&F7, "-1").unwrap(), f7(6));
        assert_eq!(Fp::parse_in(&F7, "100000000000000000000").unwrap().value(), 100000000000000000000u128.rem_euclid(7) as i64);
        assert_eq!(Fp::parse_in(&F7, "1/2").unwrap(), f7(4));
        assert!(Fp::parse_in(&F7, "1/7").is_err());
        assert!(Fp::parse_in(&FieldSpec::Rationals, "1").is_err());
    }

    #[test]
    #[should_panic(expected = "mixing residues")]
    fn mixing_fields_panics() {
        let _ = f7(1) + Fp::new(1, 5);
    }
}
