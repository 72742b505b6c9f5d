//! Dense exact linear algebra.

mod charpoly;
mod component;
mod echelon;
mod function_field;
mod mat;
mod subspace;

pub use charpoly::charpoly_division_free;
pub use component::{component_max_rank, mulmuley_rank, mulmuley_rank_at};
pub use echelon::{gauss_rank, image, kernel, kernel_basis, preimage, rank, rref, solve};
pub(crate) use echelon::rref_in_place;
pub use function_field::{
    clear_denominators, function_field_rank, function_field_rank_at_least, BiPolyMat, PolyMatrix,
    Specialization,
};
pub use mat::Mat;
pub use subspace::Subspace;
