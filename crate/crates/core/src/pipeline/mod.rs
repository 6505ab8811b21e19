//! The maps used to show that the antipode is bijective, and the staged verification.

mod antipode;
mod coinner;
mod maps;
mod theorem;

use thiserror::Error;

use crate::convolution::ConvolutionError;
use crate::tensors::TensorError;

pub use antipode::{antipode_status, AntipodeStatus};
pub use coinner::{check_theta_lemma, matrix_check, q_c, r_c, theta_c};
pub use maps::{
    a_coaction, check_p_colinear, check_sigma_inverse, check_theta_star_colinear, dual_action, harpoon, map_p,
    map_theta_star, SigmaMap,
};
pub use theorem::{verify_theorem, Stage, StageId, TheoremReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("instance has no antipode/alpha/beta data")]
    MissingAntipodeData,
    #[error("antipode has no left inverse")]
    MissingLeftInverse,
    #[error("{0} is not grouplike")]
    NotGrouplike(String),
    #[error("{0} is not convolution invertible")]
    NotInvertible(String),
    #[error("expansion needs {terms} terms, above the ceiling of {ceiling}")]
    CostExceeded { terms: usize, ceiling: usize },
    #[error(transparent)]
    Tensor(TensorError),
    #[error(transparent)]
    Convolution(#[from] ConvolutionError),
}

impl From<TensorError> for PipelineError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::CostExceeded { terms, ceiling } => PipelineError::CostExceeded { terms, ceiling },
            other => PipelineError::Tensor(other),
        }
    }
}
