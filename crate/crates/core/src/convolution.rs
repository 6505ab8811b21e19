//! Convolution algebras `(H^{⊗k})*` and `Hom(H, H*)`, with exact inversion.

use thiserror::Error;

use crate::algebra::AlgebraInstance;
use crate::scalars::{Field, Matrix};
use crate::tensors::{LinMap, SparseTensor, Variance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvolutionError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("functional is not convolution invertible: {0}")]
    NotInvertible(String),
}

/// The coalgebra `H^{⊗k}` with the componentwise coproduct.
#[derive(Debug, Clone, Copy)]
pub struct ConvContext<'a, K> {
    algebra: &'a AlgebraInstance<K>,
    arity: usize,
}

impl<'a, K: Field> ConvContext<'a, K> {
    pub fn new(algebra: &'a AlgebraInstance<K>, arity: usize) -> Result<Self, ConvolutionError> {
        if arity == 0 {
            return Err(ConvolutionError::ArityMismatch { expected: 1, found: 0 });
        }
        Ok(Self { algebra, arity })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn size(&self) -> usize {
        self.algebra.dim().pow(self.arity as u32)
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.algebra.dim() + i)
    }

    fn unflat(&self, mut f: usize) -> Vec<usize> {
        let n = self.algebra.dim();
        let mut out = vec![0; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = f % n;
            f /= n;
        }
        out
    }

    /// `Δ(x¹⊗…⊗xᵏ) = (x¹₁⊗…⊗xᵏ₁) ⊗ (x¹₂⊗…⊗xᵏ₂)` as `(left, right, coefficient)`.
    pub fn coproduct(&self, x: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, K)> {
        let mut acc = vec![(Vec::new(), Vec::new(), K::one_in(&self.algebra.field()))];
        for &xi in x {
            let legs: Vec<_> = self.algebra.delta(xi).collect();
            let mut next = Vec::with_capacity(acc.len() * legs.len());
            for (l, r, c) in &acc {
                for &(a, b, v) in &legs {
                    let mut l2 = l.clone();
                    l2.push(a);
                    let mut r2 = r.clone();
                    r2.push(b);
                    next.push((l2, r2, c.clone() * v));
                }
            }
            acc = next;
        }
        acc
    }

    /// `ε^{⊗k}`, the unit of the convolution algebra.
    pub fn unit(&self) -> SparseTensor<K> {
        let n = self.algebra.dim();
        let mut out = SparseTensor::functional(vec![n; self.arity]);
        for f in 0..self.size() {
            let idx = self.unflat(f);
            let v = idx
                .iter()
                .fold(self.algebra.one(), |acc, &i| acc * self.algebra.eps(i));
            out.add_entry(idx, v);
        }
        out
    }

    fn check_arity(&self, f: &SparseTensor<K>) -> Result<(), ConvolutionError> {
        if f.arity() != self.arity || f.variance() != Variance::Functional {
            return Err(ConvolutionError::ArityMismatch {
                expected: self.arity,
                found: f.arity(),
            });
        }
        Ok(())
    }

    /// `(f*g)(x) = f(x₁) g(x₂)`.
    pub fn convolve(&self, f: &SparseTensor<K>, g: &SparseTensor<K>) -> Result<SparseTensor<K>, ConvolutionError> {
        self.check_arity(f)?;
        self.check_arity(g)?;
        let n = self.algebra.dim();
        let mut out = SparseTensor::functional(vec![n; self.arity]);
        for flat in 0..self.size() {
            let x = self.unflat(flat);
            let mut acc = self.algebra.zero();
            for (l, r, c) in self.coproduct(&x) {
                if let (Some(a), Some(b)) = (f.get(&l), g.get(&r)) {
                    acc = acc + c * a * b;
                }
            }
            out.add_entry(x, acc);
        }
        Ok(out)
    }

    /// Two-sided convolution inverse, found by an exact linear solve of
    /// `f * g = ε^{⊗k}` and then checked on the other side as well.
    pub fn inverse(&self, f: &SparseTensor<K>) -> Result<SparseTensor<K>, ConvolutionError> {
        self.check_arity(f)?;
        let size = self.size();
        let mut system = Matrix::<K>::zeros(size, size);
        for row in 0..size {
            let x = self.unflat(row);
            for (l, r, c) in self.coproduct(&x) {
                if let Some(a) = f.get(&l) {
                    let col = self.flat(&r);
                    system[(row, col)] = system[(row, col)].clone() + c * a;
                }
            }
        }
        let unit = self.unit();
        let mut rhs = Matrix::zeros(size, 1);
        for (k, v) in unit.iter() {
            rhs[(self.flat(k), 0)] = v.clone();
        }
        let sol = system
            .solve(&rhs)
            .ok_or_else(|| ConvolutionError::NotInvertible("no right inverse".into()))?;
        let n = self.algebra.dim();
        let mut g = SparseTensor::functional(vec![n; self.arity]);
        for row in 0..size {
            g.add_entry(self.unflat(row), sol[(row, 0)].clone());
        }
        if self.convolve(f, &g)? != unit {
            return Err(ConvolutionError::NotInvertible("right inverse check failed".into()));
        }
        if self.convolve(&g, f)? != unit {
            return Err(ConvolutionError::NotInvertible("left inverse check failed".into()));
        }
        Ok(g)
    }
}

pub fn convolve<K: Field>(
    f: &SparseTensor<K>,
    g: &SparseTensor<K>,
    ctx: &ConvContext<'_, K>,
) -> Result<SparseTensor<K>, ConvolutionError> {
    ctx.convolve(f, g)
}

pub fn convolution_inverse<K: Field>(
    f: &SparseTensor<K>,
    ctx: &ConvContext<'_, K>,
) -> Result<SparseTensor<K>, ConvolutionError> {
    ctx.inverse(f)
}

/// Convolution of three functionals on `H`, left to right.
pub fn convolve3<K: Field>(
    h: &AlgebraInstance<K>,
    a: &SparseTensor<K>,
    b: &SparseTensor<K>,
    c: &SparseTensor<K>,
) -> SparseTensor<K> {
    let mut out = h.zero_functional();
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return out;
    }
    for x in 0..h.dim() {
        let mut acc = h.zero();
        for (x1, rest, c1) in h.delta(x) {
            let Some(av) = a.get(&[x1]) else { continue };
            let head = c1.clone() * av;
            for (x2, x3, c2) in h.delta(rest) {
                if let (Some(bv), Some(cv)) = (b.get(&[x2]), c.get(&[x3])) {
                    acc = acc + head.clone() * c2 * bv * cv;
                }
            }
        }
        out.add_entry(vec![x], acc);
    }
    out
}

/// The functional `F(e_j)` for a map `F: H → H*` stored as a 1→1 [`LinMap`].
pub fn map_value<K: Field>(h: &AlgebraInstance<K>, map: &LinMap<K>, j: usize) -> SparseTensor<K> {
    let mut out = h.zero_functional();
    for (k, v) in map.image(&[j]) {
        out.add_entry(k.to_vec(), v.clone());
    }
    out
}

/// Convolution in `Hom(H, H*)`: `(F*G)(h) = F(h₁) * G(h₂)`, the product on the right taken in `H*`.
pub fn convolve_maps<K: Field>(
    h: &AlgebraInstance<K>,
    f: &LinMap<K>,
    g: &LinMap<K>,
) -> Result<LinMap<K>, ConvolutionError> {
    let n = h.dim();
    for m in [f, g] {
        if m.source_dims() != [n] || m.target_dims() != [n] {
            return Err(ConvolutionError::ArityMismatch {
                expected: 1,
                found: m.source_dims().len(),
            });
        }
    }
    let ctx = ConvContext::new(h, 1)?;
    let mut out = LinMap::zero(vec![n], vec![n]);
    for i in 0..n {
        let mut acc = h.zero_functional();
        for (a, b, c) in h.delta(i) {
            let prod = ctx.convolve(&map_value(h, f, a), &map_value(h, g, b))?;
            acc = acc.add(&prod.scale(c)).expect("same shape");
        }
        for (k, v) in acc.iter() {
            out.add_entry(&[i], k, v.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{group_algebra, twisted_group_algebra, CyclicGroupSpec};
    use crate::scalars::{FieldSpec, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&FieldSpec::Rationals, v)
    }

    fn kz2() -> AlgebraInstance<Rational> {
        group_algebra::<Rational>(2, FieldSpec::Rationals)
    }

    fn kw2() -> AlgebraInstance<Rational> {
        twisted_group_algebra(&CyclicGroupSpec::new(2, FieldSpec::Rationals, q(-1)).unwrap()).unwrap()
    }

    #[test]
    fn unit_law() {
        let h = kw2();
        let ctx = ConvContext::new(&h, 3).unwrap();
        let phi = h.phi().clone();
        assert_eq!(ctx.convolve(&phi, &ctx.unit()).unwrap(), phi);
        assert_eq!(ctx.convolve(&ctx.unit(), &phi).unwrap(), phi);
    }

    #[test]
    fn grouplike_convolution_is_pointwise() {
        let h = kz2();
        let ctx = ConvContext::new(&h, 1).unwrap();
        let de = SparseTensor::dual_basis(2, 0);
        assert_eq!(ctx.convolve(&de, &de).unwrap(), de);
    }

    #[test]
    fn twisted_phi_squares_to_unit_and_is_self_inverse() {
        let h = kw2();
        let ctx = ConvContext::new(&h, 3).unwrap();
        let phi = h.phi();
        assert_eq!(ctx.convolve(phi, phi).unwrap(), ctx.unit());
        assert_eq!(ctx.inverse(phi).unwrap(), *phi);
        assert_eq!(ctx.inverse(&ctx.unit()).unwrap(), ctx.unit());
    }

    #[test]
    fn zero_is_not_invertible() {
        let h = kz2();
        let ctx = ConvContext::new(&h, 3).unwrap();
        let zero = SparseTensor::functional(vec![2, 2, 2]);
        assert!(matches!(ctx.inverse(&zero), Err(ConvolutionError::NotInvertible(_))));
        assert!(matches!(
            ctx.convolve(&zero, &SparseTensor::functional(vec![2])),
            Err(ConvolutionError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn map_convolution() {
        let h = kz2();
        // h ↦ δ_h
        let delta_map = LinMap::<Rational>::identity(2);
        // h ↦ ε(h)ε
        let mut unit_map = LinMap::zero(vec![2], vec![2]);
        for i in 0..2 {
            for j in 0..2 {
                unit_map.add_entry(&[i], &[j], h.eps(i) * h.eps(j));
            }
        }
        assert_eq!(convolve_maps(&h, &delta_map, &unit_map).unwrap(), delta_map);
        // δ_h * δ_h = δ_h on grouplikes
        assert_eq!(convolve_maps(&h, &delta_map, &delta_map).unwrap(), delta_map);
        let zero = LinMap::zero(vec![2], vec![2]);
        assert_eq!(convolve_maps(&h, &delta_map, &zero).unwrap(), zero);
    }

    #[test]
    fn convolution_is_associative_on_h4() {
        let h = crate::examples::sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let ctx = ConvContext::new(&h, 1).unwrap();
        let f = SparseTensor::from_dense(Variance::Functional, &[q(1), q(2), q(-1), q(3)]);
        let g = SparseTensor::from_dense(Variance::Functional, &[q(0), q(1), q(5), q(-2)]);
        let k = SparseTensor::from_dense(Variance::Functional, &[q(2), q(0), q(1), q(1)]);
        let lhs = ctx.convolve(&ctx.convolve(&f, &g).unwrap(), &k).unwrap();
        let rhs = ctx.convolve(&f, &ctx.convolve(&g, &k).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(convolve3(&h, &f, &g, &k), lhs);
    }
}
