//! Congruence quotients of SL(2) and the finite modules built from them.

mod map;
mod mat2;
mod module;
pub(crate) mod poly;
mod subgroup;

pub use map::CongruenceMap;
pub use mat2::{enumerate_sl2, principal_elements, sl2_order, Mat2};
pub use module::{
    coset_module, coset_orbit, sym_module, sym_pairing, sym_power_matrix, tensor_module, CosetOrbit, GammaModule,
    DEFAULT_INDEX_CAP,
};
pub use poly::{hensel_root, inv_mod, Poly, RingSpec};
pub use subgroup::SubgroupSpec;
