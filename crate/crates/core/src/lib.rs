//! First cohomology with F_p coefficients of finitely presented groups, computed
//! along p-congruence towers, together with the checkable growth criteria that
//! go with it.

pub mod cohomology;
pub mod congruence;
pub mod error;
pub mod group;
pub mod linalg;
pub mod towers;
pub mod trunc;
pub mod weights;

pub use cohomology::{ChainData, CohomologyResult};
pub use congruence::{CongruenceMap, GammaModule, Mat2, Poly, RingSpec, SubgroupSpec};
pub use error::{Error, Result};
pub use group::{FreeRingElement, GroupPresentation, Word};
pub use linalg::{Fp, FpMatrix, Subspace};
pub use towers::{CriterionReport, TowerReport, Verdict};
