//! Exact linear algebra over prime fields.

mod echelon;
mod field;
mod matrix;
mod subspace;

pub use echelon::{Echelon, SparseVec};
pub use field::{is_prime, Fp};
pub use matrix::FpMatrix;
pub use subspace::Subspace;
