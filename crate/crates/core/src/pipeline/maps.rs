//! `σ`, `σ⁻¹`, the harpoon action, the `^a` coaction, and the maps `θ*(T⊗−)` and `p`.

use crate::algebra::report::exhaustive;
use crate::algebra::{AlgebraInstance, Check, Report, Value};
use crate::convolution::{convolve3, ConvContext};
use crate::integrals::is_grouplike;
use crate::scalars::{Field, Matrix};
use crate::tensors::{LinMap, SparseTensor};

use super::PipelineError;

/// `σ(h⊗g)(f) = φ(f,h,g)` and `σ⁻¹(h⊗g)(f) = φ⁻¹(f,h,g)`, tabulated on basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaMap<K> {
    phi: SparseTensor<K>,
    phi_inv: SparseTensor<K>,
    forward: Vec<SparseTensor<K>>,
    inverse: Vec<SparseTensor<K>>,
}

impl<K: Field> SigmaMap<K> {
    pub fn new(h: &AlgebraInstance<K>) -> Result<Self, PipelineError> {
        let phi_inv = ConvContext::new(h, 3)?.inverse(h.phi())?;
        let n = h.dim();
        let tabulate = |t: &SparseTensor<K>| {
            let mut out = vec![h.zero_functional(); n * n];
            for (k, v) in t.iter() {
                out[k[1] * n + k[2]].add_entry(vec![k[0]], v.clone());
            }
            out
        };
        Ok(Self {
            forward: tabulate(h.phi()),
            inverse: tabulate(&phi_inv),
            phi: h.phi().clone(),
            phi_inv,
        })
    }

    /// The reassociator, legs `(argument, left, right)`.
    pub fn phi(&self) -> &SparseTensor<K> {
        &self.phi
    }

    /// The convolution inverse of the reassociator.
    pub fn phi_inv(&self) -> &SparseTensor<K> {
        &self.phi_inv
    }

    pub fn at(&self, n: usize, i: usize, j: usize) -> &SparseTensor<K> {
        &self.forward[i * n + j]
    }

    pub fn inverse_at(&self, n: usize, i: usize, j: usize) -> &SparseTensor<K> {
        &self.inverse[i * n + j]
    }

    /// `σ(x⊗y)` for arbitrary elements.
    pub fn apply(&self, x: &SparseTensor<K>, y: &SparseTensor<K>) -> SparseTensor<K> {
        bilinear(&self.forward, x, y)
    }

    /// `σ⁻¹(x⊗y)` for arbitrary elements.
    pub fn apply_inverse(&self, x: &SparseTensor<K>, y: &SparseTensor<K>) -> SparseTensor<K> {
        bilinear(&self.inverse, x, y)
    }
}

fn bilinear<K: Field>(table: &[SparseTensor<K>], x: &SparseTensor<K>, y: &SparseTensor<K>) -> SparseTensor<K> {
    let n = x.dims()[0];
    let mut out = SparseTensor::functional(vec![n]);
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            let ab = a.clone() * b;
            for (k, v) in table[i[0] * n + j[0]].iter() {
                out.add_entry(k.to_vec(), ab.clone() * v);
            }
        }
    }
    out
}

/// Verifies `σ(h₁⊗g₁) * σ⁻¹(h₂⊗g₂) = ε(h)ε(g)ε` and the mirrored product, for all basis `h, g`.
pub fn check_sigma_inverse<K: Field>(h: &AlgebraInstance<K>, sigma: &SigmaMap<K>) -> Report<K> {
    let n = h.dim();
    let ctx = ConvContext::new(h, 1).expect("arity 1");
    let mut report = Report::new();
    for (name, left) in [("sigma.inverse.left", true), ("sigma.inverse.right", false)] {
        let check = exhaustive::<K, ()>(name, n, 2, |t| {
            let mut lhs = h.zero_functional();
            for (h1, h2, c) in h.delta(t[0]) {
                for (g1, g2, d) in h.delta(t[1]) {
                    let (a, b) = if left {
                        (sigma.at(n, h1, g1), sigma.inverse_at(n, h2, g2))
                    } else {
                        (sigma.inverse_at(n, h1, g1), sigma.at(n, h2, g2))
                    };
                    let prod = ctx.convolve(a, b).expect("arity 1");
                    lhs = lhs.add(&prod.scale(&(c.clone() * d))).expect("same shape");
                }
            }
            let rhs = h.counit().scale(&(h.eps(t[0]) * h.eps(t[1])));
            Ok((Value::Tensor(lhs), Value::Tensor(rhs)))
        })
        .expect("infallible");
        report.push(check);
    }
    report
}

/// `(x ⇀ f)(g) = f(g x)`.
pub fn harpoon<K: Field>(h: &AlgebraInstance<K>, x: &SparseTensor<K>, f: &SparseTensor<K>) -> SparseTensor<K> {
    let mut out = h.zero_functional();
    for g in 0..h.dim() {
        let gx = h.mul(&h.basis(g), x);
        out.add_entry(vec![g], h.eval(f, &gx));
    }
    out
}

/// The left coaction `h ↦ a·S(h₂) ⊗ h₁` of `^aH`, as a map `H → H⊗H`.
pub fn a_coaction<K: Field>(h: &AlgebraInstance<K>, a: &SparseTensor<K>) -> Result<LinMap<K>, PipelineError> {
    let n = h.dim();
    if !is_grouplike(h, a) {
        return Err(PipelineError::NotGrouplike(h.format_element(a)));
    }
    require_antipode(h)?;
    let mut out = LinMap::zero(vec![n], vec![n, n]);
    for i in 0..n {
        for (y, z, c) in h.delta(i) {
            let left = h.mul(a, &h.apply_antipode(&h.basis(z)));
            for (k, v) in left.iter() {
                out.add_entry(&[i], &[k[0], y], c.clone() * v);
            }
        }
    }
    Ok(out)
}

/// The induced right `H*`-action `x ·^a c* = c*(a S(x₂)) x₁`.
pub fn dual_action<K: Field>(
    h: &AlgebraInstance<K>,
    a: &SparseTensor<K>,
    x: &SparseTensor<K>,
    c: &SparseTensor<K>,
) -> SparseTensor<K> {
    let mut out = h.zero_vec();
    for (i, xv) in x.iter() {
        for (y, z, d) in h.delta(i[0]) {
            let s = h.eval(c, &h.mul(a, &h.apply_antipode(&h.basis(z))));
            out.add_entry(vec![y], xv.clone() * d * &s);
        }
    }
    out
}

pub(crate) fn require_antipode<K: Field>(h: &AlgebraInstance<K>) -> Result<(), PipelineError> {
    h.hopf().map(|_| ()).ok_or(PipelineError::MissingAntipodeData)
}

/// Images of basis vectors under a linear map, cached.
struct Images<K> {
    cols: Vec<SparseTensor<K>>,
}

impl<K: Field> Images<K> {
    fn new(h: &AlgebraInstance<K>, m: &LinMap<K>) -> Self {
        let cols = (0..h.dim())
            .map(|i| m.apply(&h.basis(i)).expect("endomorphism of H"))
            .collect();
        Self { cols }
    }

    fn of(&self, i: usize) -> &SparseTensor<K> {
        &self.cols[i]
    }
}

fn functional_columns<K: Field>(n: usize, cols: &[SparseTensor<K>]) -> Matrix<K> {
    let dense: Vec<Vec<K>> = cols.iter().map(SparseTensor::to_dense).collect();
    Matrix::from_columns(n, &dense)
}

/// The matrix of `h ↦ θ*(T⊗h)` (column `h` holds the coordinates of the functional):
///
/// `θ*(T⊗h) = σ(S(h₅) ⊗ α(h₆)h₇) * (S(h₄) ⇀ T) * σ⁻¹(S(h₃) ⊗ β(S(h₂))S²(h₁))`.
pub fn map_theta_star<K: Field>(
    h: &AlgebraInstance<K>,
    sigma: &SigmaMap<K>,
    t: &SparseTensor<K>,
    ceiling: usize,
) -> Result<Matrix<K>, PipelineError> {
    require_antipode(h)?;
    let hd = h.hopf().expect("checked");
    let n = h.dim();
    let s = Images::new(h, &hd.antipode);
    let s2 = Images::new(h, &hd.antipode.compose(&hd.antipode).expect("square"));
    let harpooned: Vec<_> = (0..n).map(|i| harpoon(h, s.of(i), t)).collect();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let legs = h.iterated_coproduct(6, i, ceiling)?;
        let mut acc = h.zero_functional();
        for (l, c) in legs.iter() {
            let alpha = hd.alpha.coeff(&[l[5]]);
            let beta = h.eval(&hd.beta, s.of(l[1]));
            if alpha.is_zero() || beta.is_zero() {
                continue;
            }
            let left = sigma.apply(s.of(l[4]), &h.basis(l[6]));
            let right = sigma.apply_inverse(s.of(l[2]), s2.of(l[0]));
            let term = convolve3(h, &left, &harpooned[l[3]], &right);
            acc = acc.add(&term.scale(&(c.clone() * &alpha * &beta))).expect("same shape");
        }
        cols.push(acc);
    }
    Ok(functional_columns(n, &cols))
}

/// The matrix of
///
/// `p(h) = σ(S(Sˡ(h₃)) ⊗ α(Sˡ(h₂))Sˡ(h₁)) * (h₄ ⇀ T) * σ⁻¹(h₅β(h₆) ⊗ S(h₇))`,
///
/// given the left inverse `Sˡ` of the antipode.
pub fn map_p<K: Field>(
    h: &AlgebraInstance<K>,
    sigma: &SigmaMap<K>,
    t: &SparseTensor<K>,
    left_inverse: &LinMap<K>,
    ceiling: usize,
) -> Result<Matrix<K>, PipelineError> {
    require_antipode(h)?;
    let hd = h.hopf().expect("checked");
    let n = h.dim();
    let s = Images::new(h, &hd.antipode);
    let sl = Images::new(h, left_inverse);
    let s_sl = Images::new(h, &hd.antipode.compose(left_inverse).expect("square"));
    let harpooned: Vec<_> = (0..n).map(|i| harpoon(h, &h.basis(i), t)).collect();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let legs = h.iterated_coproduct(6, i, ceiling)?;
        let mut acc = h.zero_functional();
        for (l, c) in legs.iter() {
            let alpha = h.eval(&hd.alpha, sl.of(l[1]));
            let beta = hd.beta.coeff(&[l[5]]);
            if alpha.is_zero() || beta.is_zero() {
                continue;
            }
            let left = sigma.apply(s_sl.of(l[2]), sl.of(l[0]));
            let right = sigma.apply_inverse(&h.basis(l[4]), s.of(l[6]));
            let term = convolve3(h, &left, &harpooned[l[3]], &right);
            acc = acc.add(&term.scale(&(c.clone() * &alpha * &beta))).expect("same shape");
        }
        cols.push(acc);
    }
    Ok(functional_columns(n, &cols))
}

fn column_functional<K: Field>(m: &Matrix<K>, j: usize) -> SparseTensor<K> {
    SparseTensor::from_dense(crate::tensors::Variance::Functional, &m.column(j))
}

/// `p(h) * c* = p(h ·^a c*)` for all basis `h` and dual basis `c*`.
pub fn check_p_colinear<K: Field>(h: &AlgebraInstance<K>, p: &Matrix<K>, a: &SparseTensor<K>) -> Check<K> {
    let n = h.dim();
    let ctx = ConvContext::new(h, 1).expect("arity 1");
    exhaustive::<K, ()>("p.colinear", n, 2, |t| {
        let c = SparseTensor::dual_basis(n, t[1]);
        let lhs = ctx.convolve(&column_functional(p, t[0]), &c).expect("arity 1");
        let moved = dual_action(h, a, &h.basis(t[0]), &c);
        let rhs = SparseTensor::from_dense(
            crate::tensors::Variance::Functional,
            &p.mul_vec(&moved.to_dense()),
        );
        Ok((Value::Tensor(lhs), Value::Tensor(rhs)))
    })
    .expect("infallible")
}

/// `g* * θ*(T⊗h) = g*(h₂) θ*(T⊗h₁)` for all basis `h` and dual basis `g*`.
pub fn check_theta_star_colinear<K: Field>(h: &AlgebraInstance<K>, theta: &Matrix<K>) -> Check<K> {
    let n = h.dim();
    let ctx = ConvContext::new(h, 1).expect("arity 1");
    exhaustive::<K, ()>("theta_star.colinear", n, 2, |t| {
        let g = SparseTensor::dual_basis(n, t[1]);
        let lhs = ctx.convolve(&g, &column_functional(theta, t[0])).expect("arity 1");
        let mut rhs = h.zero_functional();
        for (y, z, c) in h.delta(t[0]) {
            if z == t[1] {
                rhs = rhs.add(&column_functional(theta, y).scale(c)).expect("same shape");
            }
        }
        Ok((Value::Tensor(lhs), Value::Tensor(rhs)))
    })
    .expect("infallible")
}
