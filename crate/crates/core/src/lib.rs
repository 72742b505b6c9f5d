//! Commutative and non-commutative rank of matrix spaces over exact fields.
//!
//! The non-commutative rank is computed constructively: either a shrunk
//! subspace proves an upper bound, or a matrix in a tensor blow-up of the
//! space proves the matching lower bound.

pub mod cda;
pub mod error;
pub mod exactfield;
pub mod linalg;
pub mod mspace;
pub mod ncrank;
pub mod oracle;
pub mod roundup;
pub mod wong;

pub use error::{AlgebraError, Result};
