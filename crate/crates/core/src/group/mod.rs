//! Finitely presented groups and Fox calculus.

mod fox;
mod presentation;
mod ring;
mod word;

pub use fox::{boundary_data, fox_derivative, fundamental_identity_defect, laplacian_element, BoundaryData};
pub use presentation::{validate_presentation, GroupPresentation};
pub use ring::FreeRingElement;
pub use word::{Letter, Word};
