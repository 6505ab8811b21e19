//! Left and right integrals on `H` and the distinguished grouplike.
//!
//! A left integral is `T ∈ H*` with `x₁ T(x₂) = T(x) 1` for every `x`; a right
//! integral satisfies `T(x₁) x₂ = T(x) 1`. Both spaces are computed as exact
//! null spaces and need only the coalgebra and the unit.

use thiserror::Error;

use crate::algebra::{AlgebraInstance, Check, Report, Value, Witness};
use crate::convolution::ConvContext;
use crate::scalars::{Field, Matrix};
use crate::tensors::{SparseTensor, Variance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralError {
    #[error("integral is zero")]
    ZeroIntegral,
    #[error("T * e^{0} is not a multiple of T")]
    NotProportional(usize),
    #[error("extracted element is not grouplike: {0}")]
    NotGrouplike(String),
}

/// Integral spaces of an instance, with the distinguished grouplike when `dim ∫_l = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralData<K> {
    pub left: Vec<SparseTensor<K>>,
    pub right: Vec<SparseTensor<K>>,
    pub distinguished: Option<SparseTensor<K>>,
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn integral_space<K: Field>(h: &AlgebraInstance<K>, side: Side) -> Vec<SparseTensor<K>> {
    let n = h.dim();
    let mut m = Matrix::<K>::zeros(n * n, n);
    for x in 0..n {
        for (y, z, c) in h.delta(x) {
            // left: coefficient of e_y in x₁T(x₂); right: of e_z in T(x₁)x₂
            let (kept, unknown) = match side {
                Side::Left => (y, z),
                Side::Right => (z, y),
            };
            let row = x * n + kept;
            m[(row, unknown)] = m[(row, unknown)].clone() + c;
        }
        for (k, u) in h.unit().iter() {
            let row = x * n + k[0];
            m[(row, x)] = m[(row, x)].clone() - u;
        }
    }
    normalized_basis(m.null_space())
}

/// Reduces a spanning set so that each vector has first nonzero coordinate 1.
fn normalized_basis<K: Field>(vectors: Vec<Vec<K>>) -> Vec<SparseTensor<K>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors).expect("equal lengths").rref();
    (0..pivots.len())
        .map(|i| SparseTensor::from_dense(Variance::Functional, r.row(i)))
        .collect()
}

pub fn left_integrals<K: Field>(h: &AlgebraInstance<K>) -> Vec<SparseTensor<K>> {
    integral_space(h, Side::Left)
}

pub fn right_integrals<K: Field>(h: &AlgebraInstance<K>) -> Vec<SparseTensor<K>> {
    integral_space(h, Side::Right)
}

/// `Some(λ)` with `v = λ t`, reading `λ` at the first nonzero coordinate of `t`.
fn proportional<K: Field>(v: &SparseTensor<K>, t: &SparseTensor<K>) -> Option<K> {
    let (i0, t0) = t.iter().next()?;
    let lambda = v.coeff(i0).try_div(t0).ok()?;
    (t.scale(&lambda) == *v).then_some(lambda)
}

/// Checks `e^j * T ∈ KT` and `T * e^j ∈ KT` for every dual basis vector.
pub fn check_ideal_property<K: Field>(h: &AlgebraInstance<K>, t: &SparseTensor<K>) -> Report<K> {
    let n = h.dim();
    let ctx = ConvContext::new(h, 1).expect("arity 1");
    let mut report = Report::new();
    for (name, left) in [("ideal.left", true), ("ideal.right", false)] {
        let mut check = Check::pass(name);
        for j in 0..n {
            let ej = SparseTensor::dual_basis(n, j);
            let v = if left {
                ctx.convolve(&ej, t)
            } else {
                ctx.convolve(t, &ej)
            }
            .expect("arity 1");
            if t.is_empty() || proportional(&v, t).is_none() {
                check = Check::fail(
                    name,
                    Witness {
                        indices: vec![j],
                        lhs: Value::Tensor(v),
                        rhs: Value::Note("not in span{T}".into()),
                    },
                );
                break;
            }
        }
        report.push(check);
    }
    report
}

pub fn is_grouplike<K: Field>(h: &AlgebraInstance<K>, x: &SparseTensor<K>) -> bool {
    if h.eval(h.counit(), x) != h.one() {
        return false;
    }
    let dx = h.comult().apply(x).expect("element of H");
    dx == x.outer(x).expect("elements")
}

/// The grouplike `a` with `T * h* = h*(a) T`, assembled from `T * e^j = λ_j T`.
///
/// Also verifies that `a` is invertible with inverse `S(a)` when `S` is present.
pub fn distinguished_grouplike<K: Field>(
    h: &AlgebraInstance<K>,
    t: &SparseTensor<K>,
) -> Result<SparseTensor<K>, IntegralError> {
    if t.is_empty() {
        return Err(IntegralError::ZeroIntegral);
    }
    let n = h.dim();
    let ctx = ConvContext::new(h, 1).expect("arity 1");
    let mut a = h.zero_vec();
    for j in 0..n {
        let v = ctx.convolve(t, &SparseTensor::dual_basis(n, j)).expect("arity 1");
        let lambda = proportional(&v, t).ok_or(IntegralError::NotProportional(j))?;
        a.add_entry(vec![j], lambda);
    }
    if !is_grouplike(h, &a) {
        return Err(IntegralError::NotGrouplike(h.format_element(&a)));
    }
    if h.antipode().is_some() {
        let sa = h.apply_antipode(&a);
        let one = h.unit().clone().with_variance(Variance::Element);
        if h.mul(&a, &sa) != one || h.mul(&sa, &a) != one {
            return Err(IntegralError::NotGrouplike(format!(
                "{} is not inverted by its antipode",
                h.format_element(&a)
            )));
        }
    }
    Ok(a)
}

pub fn integral_data<K: Field>(h: &AlgebraInstance<K>) -> Result<IntegralData<K>, IntegralError> {
    let left = left_integrals(h);
    let right = right_integrals(h);
    let distinguished = match left.as_slice() {
        [t] => Some(distinguished_grouplike(h, t)?),
        _ => None,
    };
    Ok(IntegralData {
        left,
        right,
        distinguished,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Status;
    use crate::examples::{group_algebra, sweedler_h4, twisted_group_algebra, CyclicGroupSpec};
    use crate::scalars::{Fp, FieldSpec, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&FieldSpec::Rationals, v)
    }

    fn delta_at(n: usize, i: usize) -> SparseTensor<Rational> {
        SparseTensor::dual_basis(n, i).scale(&q(1))
    }

    #[test]
    fn group_algebra_integrals() {
        let h = group_algebra::<Rational>(2, FieldSpec::Rationals);
        assert_eq!(left_integrals(&h), vec![delta_at(2, 0)]);
        assert_eq!(right_integrals(&h), vec![delta_at(2, 0)]);
        let a = distinguished_grouplike(&h, &delta_at(2, 0)).unwrap();
        assert_eq!(a, h.basis(0));
    }

    #[test]
    fn twisted_integrals_match_untwisted() {
        let h = twisted_group_algebra(&CyclicGroupSpec::new(2, FieldSpec::Rationals, q(-1)).unwrap()).unwrap();
        let d = integral_data(&h).unwrap();
        assert_eq!(d.left, vec![delta_at(2, 0)]);
        assert_eq!(d.right, vec![delta_at(2, 0)]);
        assert_eq!(d.distinguished, Some(h.basis(0)));
    }

    #[test]
    fn h4_integrals_and_grouplike() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let d = integral_data(&h).unwrap();
        assert_eq!(d.left.len(), 1);
        assert_eq!(d.right.len(), 1);
        assert_ne!(d.left, d.right);
        assert_eq!(d.distinguished, Some(h.basis(1)));
        assert!(check_ideal_property(&h, &d.left[0]).passed());
    }

    /// Direct pointwise test of the integral condition, independent of the null-space setup.
    fn is_left_integral(h: &AlgebraInstance<Rational>, t: &SparseTensor<Rational>) -> bool {
        (0..h.dim()).all(|x| {
            let mut lhs = h.zero_vec();
            for (y, z, c) in h.delta(x) {
                lhs.add_entry(vec![y], c.clone() * t.coeff(&[z]));
            }
            lhs == h.unit().clone().with_variance(Variance::Element).scale(&t.coeff(&[x]))
        })
    }

    #[test]
    fn h4_left_integral_satisfies_definition() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let t = &left_integrals(&h)[0];
        assert!(is_left_integral(&h, t));
        assert!(!is_left_integral(&h, &delta_at(4, 0)));
        // scaling T does not change a
        let a = distinguished_grouplike(&h, &t.scale(&q(-3))).unwrap();
        assert_eq!(a, h.basis(1));
    }

    #[test]
    fn non_integral_fails_ideal_property() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let r = check_ideal_property(&h, &delta_at(4, 0));
        assert_eq!(r.get("ideal.left").unwrap().status, Status::Fail);
        assert!(r.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn grouplike_recognition() {
        let h = group_algebra::<Rational>(2, FieldSpec::Rationals);
        assert!(is_grouplike(&h, &h.basis(0)));
        assert!(is_grouplike(&h, &h.basis(1)));
        assert!(!is_grouplike(&h, &h.zero_vec()));
        let sum = h.basis(0).add(&h.basis(1)).unwrap();
        assert!(!is_grouplike(&h, &sum));
    }

    #[test]
    fn h4_over_prime_field() {
        let f = FieldSpec::PrimeField(5);
        let h = sweedler_h4::<Fp>(f).unwrap();
        let d = integral_data(&h).unwrap();
        assert_eq!(d.distinguished, Some(h.basis(1)));
    }
}
