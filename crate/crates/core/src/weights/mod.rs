//! Modular representations of PSL(2, F_p), the expected H¹ profile, integral
//! lattices in symmetric powers and admissible weights.

pub mod bn;
pub mod galois;
pub mod lattice;

pub use bn::{
    bn_decomposition, expected_h1_profile, predict_gamma_p_h1, psl2_order, BnComponent, BnDecomposition,
    GammaPPrediction, PredictionAssumption,
};
pub use galois::{admissible_weights, AdmissibilityReport, GaloisData};
pub use lattice::{lattice_reduction, InvarianceCertificate, LatticeReduction};
