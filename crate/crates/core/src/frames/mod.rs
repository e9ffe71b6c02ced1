//! Polynomial vector fields realizing CR models: the CR field of a rigid
//! model, its iterated brackets and growth vector, the symbol algebra they
//! induce, and left-invariant frames on the nilpotent group of a symbol.

mod bch;
mod catalog;
mod field;
mod model;
mod poly;

use thiserror::Error;

use crate::exact::LinearError;
use crate::liealg::AlgebraError;

pub use bch::{bch_group_law, dynkin_coefficients, frame_bracket_mismatch, left_invariant_frame, GroupLaw};
pub use catalog::{Catalog, CatalogEntry, TermDoc};
pub use field::{vf_bracket, Chart, PolyVectorField};
pub use model::{
    growth_and_nondegeneracy, symbol_from_frame, tangential_cr_field, Filtration, FrameSymbol, HallFrame, ModelSpec,
    Nondegeneracy, Realization,
};
pub use poly::{Monomial, Poly};

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("model is not rigid: {0}")]
    NotRigid(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("coordinate charts differ: {0}")]
    ChartMismatch(String),
    #[error("model is not totally nondegenerate (growth {growth:?})")]
    NotTotallyNondegenerate { growth: Vec<usize> },
    #[error("frame fields violate the symbol bracket [{}, {}]", pair.0, pair.1)]
    NotRealized { pair: (String, String) },
    #[error("algebra is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}
