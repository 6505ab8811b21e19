use thiserror::Error;

use crate::scalars::{Field, FieldSpec};
use crate::tensors::{self, LinMap, SparseTensor, TensorError, Variance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    Field(#[from] crate::scalars::ScalarError),
}

/// Antipode data of a dual quasi-Hopf algebra: `S`, `α`, `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData<K> {
    pub antipode: LinMap<K>,
    pub alpha: SparseTensor<K>,
    pub beta: SparseTensor<K>,
}

/// Raw structure tensors, unvalidated. Used to build and to mutate instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceParts<K> {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    pub comult: LinMap<K>,
    pub counit: SparseTensor<K>,
    pub mult: LinMap<K>,
    pub unit: SparseTensor<K>,
    pub phi: SparseTensor<K>,
    pub hopf: Option<HopfData<K>>,
    pub grouplikes: Vec<SparseTensor<K>>,
}

impl<K: Field> InstanceParts<K> {
    /// All-zero structure of dimension `labels.len()`.
    pub fn empty(field: FieldSpec, labels: Vec<String>) -> Self {
        let n = labels.len();
        Self {
            field,
            labels,
            comult: LinMap::zero(vec![n], vec![n, n]),
            counit: SparseTensor::functional(vec![n]),
            mult: LinMap::zero(vec![n, n], vec![n]),
            unit: SparseTensor::element(vec![n]),
            phi: SparseTensor::functional(vec![n, n, n]),
            hopf: None,
            grouplikes: Vec::new(),
        }
    }
}

/// A candidate dual quasi-Hopf algebra given by structure constants.
///
/// Construction only checks that every tensor has the declared dimension;
/// the axioms are checked separately (see [`crate::algebra::checks`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraInstance<K> {
    parts: InstanceParts<K>,
}

impl<K: Field> AlgebraInstance<K> {
    pub fn from_parts(parts: InstanceParts<K>) -> Result<Self, InstanceError> {
        K::supports(&parts.field)?;
        let n = parts.labels.len();
        if n == 0 {
            return Err(InstanceError::DimensionMismatch("dimension must be positive".into()));
        }
        let expect = |what: &str, got: &[usize], want: &[usize]| {
            if got == want {
                Ok(())
            } else {
                Err(InstanceError::DimensionMismatch(format!(
                    "{what} has dims {got:?}, expected {want:?}"
                )))
            }
        };
        expect("comult source", parts.comult.source_dims(), &[n])?;
        expect("comult target", parts.comult.target_dims(), &[n, n])?;
        expect("counit", parts.counit.dims(), &[n])?;
        expect("mult source", parts.mult.source_dims(), &[n, n])?;
        expect("mult target", parts.mult.target_dims(), &[n])?;
        expect("unit", parts.unit.dims(), &[n])?;
        expect("phi", parts.phi.dims(), &[n, n, n])?;
        if let Some(h) = &parts.hopf {
            expect("antipode source", h.antipode.source_dims(), &[n])?;
            expect("antipode target", h.antipode.target_dims(), &[n])?;
            expect("alpha", h.alpha.dims(), &[n])?;
            expect("beta", h.beta.dims(), &[n])?;
        }
        for g in &parts.grouplikes {
            expect("grouplike", g.dims(), &[n])?;
        }
        let mut parts = parts;
        parts.counit = parts.counit.with_variance(Variance::Functional);
        parts.phi = parts.phi.with_variance(Variance::Functional);
        parts.unit = parts.unit.with_variance(Variance::Element);
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &InstanceParts<K> {
        &self.parts
    }

    pub fn into_parts(self) -> InstanceParts<K> {
        self.parts
    }

    pub fn field(&self) -> FieldSpec {
        self.parts.field
    }

    pub fn dim(&self) -> usize {
        self.parts.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.parts.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.parts.labels.iter().position(|l| l == label)
    }

    pub fn comult(&self) -> &LinMap<K> {
        &self.parts.comult
    }

    pub fn counit(&self) -> &SparseTensor<K> {
        &self.parts.counit
    }

    pub fn mult(&self) -> &LinMap<K> {
        &self.parts.mult
    }

    pub fn unit(&self) -> &SparseTensor<K> {
        &self.parts.unit
    }

    pub fn phi(&self) -> &SparseTensor<K> {
        &self.parts.phi
    }

    pub fn hopf(&self) -> Option<&HopfData<K>> {
        self.parts.hopf.as_ref()
    }

    pub fn grouplikes(&self) -> &[SparseTensor<K>] {
        &self.parts.grouplikes
    }

    pub fn zero(&self) -> K {
        K::zero_in(&self.parts.field)
    }

    pub fn one(&self) -> K {
        K::one_in(&self.parts.field)
    }

    pub fn basis(&self, i: usize) -> SparseTensor<K> {
        SparseTensor::basis(self.dim(), i)
    }

    pub fn zero_vec(&self) -> SparseTensor<K> {
        SparseTensor::element(vec![self.dim()])
    }

    pub fn zero_functional(&self) -> SparseTensor<K> {
        SparseTensor::functional(vec![self.dim()])
    }

    /// `Δ(e_i)` as `(left, right, coefficient)` triples.
    pub fn delta(&self, i: usize) -> impl Iterator<Item = (usize, usize, &K)> {
        self.parts.comult.image(&[i]).map(|(k, v)| (k[0], k[1], v))
    }

    pub fn eps(&self, i: usize) -> K {
        self.parts.counit.coeff(&[i])
    }

    /// `e_i e_j` as `(index, coefficient)` pairs.
    pub fn mul_basis(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &K)> {
        self.parts.mult.image(&[i, j]).map(|(k, v)| (k[0], v))
    }

    pub fn mul(&self, x: &SparseTensor<K>, y: &SparseTensor<K>) -> SparseTensor<K> {
        let mut out = self.zero_vec();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a.clone() * b;
                for (k, c) in self.mul_basis(i[0], j[0]) {
                    out.add_entry(vec![k], ab.clone() * c);
                }
            }
        }
        out
    }

    /// Evaluates an arity-1 functional on an element.
    pub fn eval(&self, f: &SparseTensor<K>, x: &SparseTensor<K>) -> K {
        let mut acc = self.zero();
        for (k, v) in x.iter() {
            if let Some(w) = f.get(k) {
                acc = acc + v.clone() * w;
            }
        }
        acc
    }

    pub fn phi_at(&self, i: usize, j: usize, k: usize) -> K {
        self.parts.phi.coeff(&[i, j, k])
    }

    /// Multilinear evaluation of an arity-3 functional on three elements.
    pub fn eval3(&self, f: &SparseTensor<K>, x: &SparseTensor<K>, y: &SparseTensor<K>, z: &SparseTensor<K>) -> K {
        let mut acc = self.zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a.clone() * b;
                for (k, c) in z.iter() {
                    if let Some(v) = f.get(&[i[0], j[0], k[0]]) {
                        acc = acc + ab.clone() * c * v;
                    }
                }
            }
        }
        acc
    }

    pub fn antipode(&self) -> Option<&LinMap<K>> {
        self.hopf().map(|h| &h.antipode)
    }

    /// `S(x)`; panics if the instance has no antipode.
    pub fn apply_antipode(&self, x: &SparseTensor<K>) -> SparseTensor<K> {
        self.antipode()
            .expect("instance has antipode data")
            .apply(x)
            .expect("antipode dims checked at construction")
    }

    /// `Δ^(m)(e_i)`, legs numbered left to right.
    pub fn iterated_coproduct(&self, m: usize, i: usize, ceiling: usize) -> Result<SparseTensor<K>, TensorError> {
        tensors::iterated_coproduct(&self.parts.comult, m, i, ceiling)
    }

    /// Renders an element as `label:coef` terms, or just the label when it is a basis vector.
    pub fn format_element(&self, x: &SparseTensor<K>) -> String {
        if x.len() == 1 {
            let (k, v) = x.iter().next().expect("one entry");
            if *v == self.one() && k.len() == 1 {
                return self.parts.labels[k[0]].clone();
            }
        }
        tensors::format_terms(x, &self.parts.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    #[test]
    fn rejects_wrong_dims() {
        let mut parts = InstanceParts::<Rational>::empty(FieldSpec::Rationals, vec!["e".into(), "g".into()]);
        parts.unit = SparseTensor::element(vec![3]);
        assert!(matches!(
            AlgebraInstance::from_parts(parts),
            Err(InstanceError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rejects_wrong_field() {
        let parts = InstanceParts::<Rational>::empty(FieldSpec::PrimeField(7), vec!["e".into()]);
        assert!(matches!(AlgebraInstance::from_parts(parts), Err(InstanceError::Field(_))));
    }
}
