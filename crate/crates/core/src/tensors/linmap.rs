use crate::scalars::{Field, Matrix};

use super::{SparseTensor, TensorError, Variance};

/// A linear map between tensor powers, stored as one tensor whose legs are
/// the source legs followed by the target legs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinMap<K> {
    source: Vec<usize>,
    target: Vec<usize>,
    entries: SparseTensor<K>,
}

impl<K: Field> LinMap<K> {
    pub fn zero(source: Vec<usize>, target: Vec<usize>) -> Self {
        let mut dims = source.clone();
        dims.extend_from_slice(&target);
        Self {
            source,
            target,
            entries: SparseTensor::element(dims),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(vec![n], vec![n]);
        for i in 0..n {
            m.entries.add_entry(vec![i, i], K::one());
        }
        m
    }

    pub fn from_tensor(source: Vec<usize>, target: Vec<usize>, entries: SparseTensor<K>) -> Result<Self, TensorError> {
        let mut dims = source.clone();
        dims.extend_from_slice(&target);
        if entries.dims() != dims.as_slice() {
            return Err(TensorError::DimensionMismatch {
                expected: dims,
                found: entries.dims().to_vec(),
            });
        }
        Ok(Self {
            source,
            target,
            entries: entries.with_variance(Variance::Element),
        })
    }

    /// A map `K^n → K^m` from its matrix (column `j` is the image of `e_j`).
    pub fn from_matrix(m: &Matrix<K>) -> Self {
        let mut out = Self::zero(vec![m.cols()], vec![m.rows()]);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.entries.add_entry(vec![j, i], m[(i, j)].clone());
            }
        }
        out
    }

    pub fn source_dims(&self) -> &[usize] {
        &self.source
    }

    pub fn target_dims(&self) -> &[usize] {
        &self.target
    }

    pub fn tensor(&self) -> &SparseTensor<K> {
        &self.entries
    }

    pub fn tensor_mut(&mut self) -> &mut SparseTensor<K> {
        &mut self.entries
    }

    /// Image of the basis tuple `src`, as `(target index, coefficient)` pairs.
    pub fn image<'a>(&'a self, src: &[usize]) -> impl Iterator<Item = (&'a [usize], &'a K)> {
        self.entries.with_prefix(src)
    }

    pub fn add_entry(&mut self, src: &[usize], dst: &[usize], value: K) {
        let mut idx = src.to_vec();
        idx.extend_from_slice(dst);
        self.entries.add_entry(idx, value);
    }

    /// Applies the map to an element of the source space.
    pub fn apply(&self, x: &SparseTensor<K>) -> Result<SparseTensor<K>, TensorError> {
        if x.dims() != self.source.as_slice() {
            return Err(TensorError::DimensionMismatch {
                expected: self.source.clone(),
                found: x.dims().to_vec(),
            });
        }
        let mut out = SparseTensor::element(self.target.clone());
        for (k, v) in x.iter() {
            for (img, c) in self.image(k) {
                out.add_entry(img.to_vec(), v.clone() * c);
            }
        }
        Ok(out)
    }

    /// Matrix of a one-leg map: entry `(i, j)` is the `e_i` coefficient of the image of `e_j`.
    pub fn to_matrix(&self) -> Matrix<K> {
        assert!(self.source.len() == 1 && self.target.len() == 1, "to_matrix needs a 1→1 map");
        let mut m = Matrix::zeros(self.target[0], self.source[0]);
        for (k, v) in self.entries.iter() {
            m[(k[1], k[0])] = v.clone();
        }
        m
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap<K>) -> Result<Self, TensorError> {
        if inner.target != self.source {
            return Err(TensorError::DimensionMismatch {
                expected: self.source.clone(),
                found: inner.target.clone(),
            });
        }
        let mut out = Self::zero(inner.source.clone(), self.target.clone());
        let slen = inner.source.len();
        for (k, v) in inner.entries.iter() {
            let (src, mid) = k.split_at(slen);
            for (dst, c) in self.image(mid) {
                out.add_entry(src, dst, v.clone() * c);
            }
        }
        Ok(out)
    }
}
