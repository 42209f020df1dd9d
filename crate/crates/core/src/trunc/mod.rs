//! Truncated group algebras of the principal congruence subgroup and the
//! lowest-degree coverage test on them.

pub mod algebra;
pub mod coverage;
pub mod filtration;
pub mod module;
pub mod verify;

pub use algebra::{binom, monomial_count, TruncatedAlgebra};
pub use coverage::{lowest_degree_coverage, CoverageEntry, CoverageReport, CoverageStatus, Grading};
pub use filtration::{augmentation_filtration, filtration_by_operators, FilteredModule, Filtration};
pub use module::{FreeCoordinate, TruncatedModule};
pub use verify::{minimal_level, operator_coverage, verify_weight_hypothesis, CoverageOperator, DegreeCoverage, WeightHypothesisReport};
