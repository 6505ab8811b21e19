//! Sparse multilinear data keyed by basis-index tuples.
//!
//! A [`SparseTensor`] of arity `k` is either an element of `H^{⊗k}`
//! ([`Variance::Element`]) or a functional on it ([`Variance::Functional`]).
//! A [`LinMap`] is a tensor whose legs are split into source and target legs.
//! Entries are kept in lexicographic order and zero coefficients are never
//! stored.

mod linmap;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalars::Field;

pub use linmap::LinMap;

/// Upper bound on the number of terms any single expansion may produce.
pub const DEFAULT_CEILING: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("variance mismatch: expected {expected:?}")]
    VarianceMismatch { expected: Variance },
    #[error("index {index:?} out of range for dims {dims:?}")]
    IndexOutOfRange { index: Vec<usize>, dims: Vec<usize> },
    #[error("expansion produced {terms} terms, above the ceiling of {ceiling}")]
    CostExceeded { terms: usize, ceiling: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Element,
    Functional,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparseTensor<K> {
    dims: Vec<usize>,
    variance: Variance,
    entries: BTreeMap<Vec<usize>, K>,
}

impl<K: Field> SparseTensor<K> {
    pub fn new(dims: Vec<usize>, variance: Variance) -> Self {
        Self {
            dims,
            variance,
            entries: BTreeMap::new(),
        }
    }

    pub fn element(dims: Vec<usize>) -> Self {
        Self::new(dims, Variance::Element)
    }

    pub fn functional(dims: Vec<usize>) -> Self {
        Self::new(dims, Variance::Functional)
    }

    /// The basis vector `e_i` of an `n`-dimensional space.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut t = Self::element(vec![n]);
        t.add_entry(vec![i], K::one());
        t
    }

    /// The dual basis functional `e^i`.
    pub fn dual_basis(n: usize, i: usize) -> Self {
        let mut t = Self::functional(vec![n]);
        t.add_entry(vec![i], K::one());
        t
    }

    /// Arity-1 tensor from dense coordinates.
    pub fn from_dense(variance: Variance, coords: &[K]) -> Self {
        let mut t = Self::new(vec![coords.len()], variance);
        for (i, c) in coords.iter().enumerate() {
            t.add_entry(vec![i], c.clone());
        }
        t
    }

    pub fn from_entries(
        dims: Vec<usize>,
        variance: Variance,
        entries: impl IntoIterator<Item = (Vec<usize>, K)>,
    ) -> Result<Self, TensorError> {
        let mut t = Self::new(dims, variance);
        for (idx, v) in entries {
            t.check_index(&idx)?;
            t.add_entry(idx, v);
        }
        Ok(t)
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: &[usize]) -> Option<&K> {
        self.entries.get(index)
    }

    /// Coefficient at `index`, zero when absent.
    pub fn coeff(&self, index: &[usize]) -> K {
        self.entries.get(index).cloned().unwrap_or_else(K::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &K)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Entries whose index starts with `prefix`, in lexicographic order.
    pub fn with_prefix<'a>(&'a self, prefix: &[usize]) -> impl Iterator<Item = (&'a [usize], &'a K)> {
        let lo = prefix.to_vec();
        let mut hi = prefix.to_vec();
        let bounded = match hi.last_mut() {
            Some(last) => {
                *last += 1;
                true
            }
            None => false,
        };
        let plen = prefix.len();
        let range: Box<dyn Iterator<Item = (&Vec<usize>, &K)>> = if bounded {
            Box::new(self.entries.range(lo..hi))
        } else {
            Box::new(self.entries.iter())
        };
        range.map(move |(k, v)| (&k[plen..], v))
    }

    fn check_index(&self, index: &[usize]) -> Result<(), TensorError> {
        if index.len() != self.dims.len() || index.iter().zip(&self.dims).any(|(i, d)| i >= d) {
            return Err(TensorError::IndexOutOfRange {
                index: index.to_vec(),
                dims: self.dims.clone(),
            });
        }
        Ok(())
    }

    /// Adds `value` to the coefficient at `index`, pruning a resulting zero.
    pub fn add_entry(&mut self, index: Vec<usize>, value: K) {
        debug_assert!(self.check_index(&index).is_ok(), "index out of range");
        if value.is_zero() {
            return;
        }
        match self.entries.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn set_entry(&mut self, index: Vec<usize>, value: K) {
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    pub fn scale(&self, s: &K) -> Self {
        let mut out = Self::new(self.dims.clone(), self.variance);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.entries {
            out.entries.insert(k.clone(), v.clone() * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_entry(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.add(&other.scale(&-K::one()))
    }

    fn same_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.dims != other.dims {
            return Err(TensorError::DimensionMismatch {
                expected: self.dims.clone(),
                found: other.dims.clone(),
            });
        }
        if self.variance != other.variance {
            return Err(TensorError::VarianceMismatch {
                expected: self.variance,
            });
        }
        Ok(())
    }

    /// Tensor product `self ⊗ other`; legs of `other` follow those of `self`.
    pub fn outer(&self, other: &Self) -> Result<Self, TensorError> {
        if self.variance != other.variance {
            return Err(TensorError::VarianceMismatch {
                expected: self.variance,
            });
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut out = Self::new(dims, self.variance);
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.entries.insert(idx, x.clone() * y);
            }
        }
        Ok(out)
    }

    /// Reorders legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, TensorError> {
        let mut seen = vec![false; self.arity()];
        if perm.len() != self.arity() {
            return Err(TensorError::ArityMismatch {
                expected: self.arity(),
                found: perm.len(),
            });
        }
        for &p in perm {
            if p >= seen.len() || std::mem::replace(&mut seen[p], true) {
                return Err(TensorError::IndexOutOfRange {
                    index: perm.to_vec(),
                    dims: self.dims.clone(),
                });
            }
        }
        let dims = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = Self::new(dims, self.variance);
        for (k, v) in &self.entries {
            out.entries.insert(perm.iter().map(|&p| k[p]).collect(), v.clone());
        }
        Ok(out)
    }

    /// Dense coordinates of an arity-1 tensor.
    pub fn to_dense(&self) -> Vec<K> {
        assert_eq!(self.arity(), 1, "to_dense needs an arity-1 tensor");
        let mut v = vec![K::zero(); self.dims[0]];
        for (k, c) in &self.entries {
            v[k[0]] = c.clone();
        }
        v
    }

    pub fn with_variance(mut self, variance: Variance) -> Self {
        self.variance = variance;
        self
    }
}

/// The evaluation pairing `⟨f, x⟩`.
pub fn contract<K: Field>(f: &SparseTensor<K>, x: &SparseTensor<K>) -> Result<K, TensorError> {
    if f.variance != Variance::Functional {
        return Err(TensorError::VarianceMismatch {
            expected: Variance::Functional,
        });
    }
    if x.variance != Variance::Element {
        return Err(TensorError::VarianceMismatch {
            expected: Variance::Element,
        });
    }
    if f.arity() != x.arity() {
        return Err(TensorError::ArityMismatch {
            expected: f.arity(),
            found: x.arity(),
        });
    }
    if f.dims != x.dims {
        return Err(TensorError::DimensionMismatch {
            expected: f.dims.clone(),
            found: x.dims.clone(),
        });
    }
    let (small, large) = if f.len() <= x.len() { (f, x) } else { (x, f) };
    let mut acc = K::zero();
    for (k, v) in &small.entries {
        if let Some(w) = large.entries.get(k) {
            acc = acc + v.clone() * w;
        }
    }
    Ok(acc)
}

/// Applies a one-leg linear map `m` (source arity 1) to leg `leg` of `t`.
///
/// The leg is replaced in place by the target legs of `m`.
pub fn apply_leg<K: Field>(t: &SparseTensor<K>, leg: usize, m: &LinMap<K>) -> Result<SparseTensor<K>, TensorError> {
    if leg >= t.arity() {
        return Err(TensorError::ArityMismatch {
            expected: leg + 1,
            found: t.arity(),
        });
    }
    if m.source_dims() != [t.dims[leg]] {
        return Err(TensorError::DimensionMismatch {
            expected: vec![t.dims[leg]],
            found: m.source_dims().to_vec(),
        });
    }
    let mut dims = t.dims[..leg].to_vec();
    dims.extend_from_slice(m.target_dims());
    dims.extend_from_slice(&t.dims[leg + 1..]);
    let mut out = SparseTensor::new(dims, t.variance);
    for (k, v) in &t.entries {
        for (img, c) in m.image(&[k[leg]]) {
            let mut idx = k[..leg].to_vec();
            idx.extend_from_slice(img);
            idx.extend_from_slice(&k[leg + 1..]);
            out.add_entry(idx, v.clone() * c);
        }
    }
    Ok(out)
}

/// `Δ^(m)(e_i)`: `m` successive applications of `comult` to the last leg.
///
/// `Δ^(0)` is the identity, so the result always has arity `m + 1`.
pub fn iterated_coproduct<K: Field>(
    comult: &LinMap<K>,
    m: usize,
    i: usize,
    ceiling: usize,
) -> Result<SparseTensor<K>, TensorError> {
    let n = comult.source_dims()[0];
    iterated_coproduct_of(comult, m, &SparseTensor::basis(n, i), ceiling)
}

/// `Δ^(m)(x)` for an arbitrary element `x`.
pub fn iterated_coproduct_of<K: Field>(
    comult: &LinMap<K>,
    m: usize,
    x: &SparseTensor<K>,
    ceiling: usize,
) -> Result<SparseTensor<K>, TensorError> {
    let mut t = x.clone();
    for _ in 0..m {
        let last = t.arity() - 1;
        t = apply_leg(&t, last, comult)?;
        if t.len() > ceiling {
            return Err(TensorError::CostExceeded {
                terms: t.len(),
                ceiling,
            });
        }
    }
    Ok(t)
}

/// Formats entries as `a,b:c` terms using `labels`; `0` for the empty tensor.
pub fn format_terms<K: Field>(t: &SparseTensor<K>, labels: &[String]) -> String {
    if t.is_empty() {
        return "0".to_string();
    }
    t.iter()
        .map(|(k, v)| {
            let idx: Vec<&str> = k.iter().map(|&i| labels.get(i).map_or("?", String::as_str)).collect();
            format!("{}:{}", idx.join(","), v)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl<K: fmt::Debug> fmt::Debug for SparseTensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}{{", self.variance, self.dims)?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k:?}: {v:?}")?;
        }
        write!(f, "}}")
    }
}
