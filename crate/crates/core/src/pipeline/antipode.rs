//! Injectivity, surjectivity, left inverse and order of the antipode.

use crate::algebra::AlgebraInstance;
use crate::scalars::{Field, Matrix};
use crate::tensors::LinMap;

use super::PipelineError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeStatus<K> {
    pub injective: bool,
    pub surjective: bool,
    /// `Sˡ` with `Sˡ∘S = id`, present iff `S` is injective.
    pub left_inverse: Option<LinMap<K>>,
    /// Whether `S∘Sˡ = id` as well.
    pub two_sided: bool,
    /// Smallest `k ≤ 2n²` with `S^k = id`.
    pub order: Option<usize>,
}

pub fn antipode_status<K: Field>(h: &AlgebraInstance<K>) -> Result<AntipodeStatus<K>, PipelineError> {
    let s = h.antipode().ok_or(PipelineError::MissingAntipodeData)?.to_matrix();
    let n = h.dim();
    let rank = s.rank();
    let id = Matrix::<K>::identity(n);
    // Sˡ S = I  ⟺  Sᵀ (Sˡ)ᵀ = I
    let left = s
        .transpose()
        .solve(&id)
        .map(|x| x.transpose())
        .filter(|sl| sl.mul(&s).expect("square") == id);
    let two_sided = left.as_ref().is_some_and(|sl| s.mul(sl).expect("square") == id);
    let mut order = None;
    let mut power = s.clone();
    for k in 1..=2 * n * n {
        if power == id {
            order = Some(k);
            break;
        }
        power = power.mul(&s).expect("square");
    }
    Ok(AntipodeStatus {
        injective: rank == n,
        surjective: rank == n,
        left_inverse: left.map(|m| LinMap::from_matrix(&m)),
        two_sided,
        order,
    })
}
