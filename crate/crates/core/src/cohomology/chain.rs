use serde::{Deserialize, Serialize};

use crate::congruence::{coset_module, CongruenceMap, GammaModule, SubgroupSpec};
use crate::error::{Error, Result};
use crate::group::{laplacian_element, GroupPresentation};
use crate::linalg::{Echelon, FpMatrix};

/// Cochains C⁰ = A, C¹ = Aⁿ, C² = Aᵐ and the maps between them.
///
/// The Laplacian lives on the 0-cochains: it is δ∘d0 with δ the adjoint of d0.
#[derive(Debug, Clone)]
pub struct ChainData {
    pub n_generators: usize,
    pub n_relators: usize,
    pub dim_module: usize,
    /// (n·dimA) × dimA, block i equal to I − ρ(g_i).
    pub d0: FpMatrix,
    /// (m·dimA) × (n·dimA), block (r, j) equal to ρ(∂R_r/∂g_j).
    pub d1: FpMatrix,
    /// dimA × (n·dimA), block i equal to P⁻¹(I − ρ(g_i))ᵀP.
    pub adjoint_d0: FpMatrix,
    /// ρ(Σ 2 − g_i − g_i⁻¹).
    pub laplacian0: FpMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub h1: usize,
    pub omega1: usize,
    pub delta0: usize,
    pub h0: usize,
}

fn append_block(trip: &mut Vec<(usize, usize, i64)>, m: &FpMatrix, r0: usize, c0: usize, sign: i64) {
    for r in 0..m.rows() {
        for &(c, x) in m.row(r) {
            trip.push((r0 + r, c0 + c, sign * x as i64));
        }
    }
}

pub fn build_chain(pres: &GroupPresentation, module: &GammaModule) -> Result<ChainData> {
    let n = pres.n_generators();
    let m = pres.n_relators();
    if module.n_generators() != n {
        return Err(Error::DimensionMismatch(format!(
            "module acts through {} generators, presentation has {n}",
            module.n_generators()
        )));
    }
    let f = module.field();
    let dim = module.dim();
    let id = FpMatrix::identity(f, dim);

    let blocks: Vec<FpMatrix> = (0..n).map(|i| id.sub(module.action(i)).expect("same shape")).collect();
    let d0 = FpMatrix::vstack(&blocks.iter().collect::<Vec<_>>()).unwrap_or_else(|_| FpMatrix::zeros(f, 0, dim));

    // Fox derivatives via a running prefix: an occurrence of g_j after prefix u
    // contributes ρ(u), an occurrence of g_j⁻¹ contributes −ρ(u)ρ(g_j⁻¹).
    let mut trip = Vec::new();
    for (r, rel) in pres.relators().iter().enumerate() {
        let mut prefix = id.clone();
        for l in rel.letters() {
            let step = if l.inverse { module.inverse_action(l.gen) } else { module.action(l.gen) };
            let next = prefix.mul(step)?;
            if l.inverse {
                append_block(&mut trip, &next, r * dim, l.gen * dim, -1);
            } else {
                append_block(&mut trip, &prefix, r * dim, l.gen * dim, 1);
            }
            prefix = next;
        }
    }
    let d1 = FpMatrix::from_triplets(f, m * dim, n * dim, trip)?;

    let p_mat = module.pairing();
    let p_inv = p_mat.inverse()?;
    let adj_blocks = blocks
        .iter()
        .map(|b| p_inv.mul(&b.transpose())?.mul(p_mat))
        .collect::<Result<Vec<_>>>()?;
    let adjoint_d0 = if n == 0 {
        FpMatrix::zeros(f, dim, 0)
    } else {
        FpMatrix::hstack(&adj_blocks.iter().collect::<Vec<_>>())?
    };
    let laplacian0 = module.ring_matrix(&laplacian_element(pres));

    let chain = ChainData { n_generators: n, n_relators: m, dim_module: dim, d0, d1, adjoint_d0, laplacian0 };
    if m > 0 && n > 0 && !chain.d1.mul(&chain.d0)?.is_zero() {
        return Err(Error::Invariant(format!(
            "d1·d0 ≠ 0: some relator of {} acts nontrivially on {}",
            pres.label(),
            module.label()
        )));
    }
    Ok(chain)
}

impl ChainData {
    pub fn dim_c1(&self) -> usize {
        self.n_generators * self.dim_module
    }

    pub fn dims(&self) -> Result<CohomologyResult> {
        let f = self.d0.field();
        let c1 = self.dim_c1();
        let rank_d0 = self.d0.rank();
        // Ω¹ = ker d1 ∩ ker δ is the kernel of the stacked map, so feed the rows of
        // d1 and then of δ into one elimination.
        let density = if c1 == 0 {
            0.0
        } else {
            (self.d1.nnz() + self.adjoint_d0.nnz()) as f64 / ((self.d1.rows() + self.dim_module).max(1) as f64 * c1 as f64)
        };
        let mut e = Echelon::for_density(f, c1, density);
        for r in 0..self.d1.rows() {
            if e.is_full() {
                break;
            }
            e.insert_sparse(self.d1.row(r));
        }
        let rank_d1 = e.rank();
        for r in 0..self.adjoint_d0.rows() {
            if e.is_full() {
                break;
            }
            e.insert_sparse(self.adjoint_d0.row(r));
        }
        let rank_stack = e.rank();
        let h1 = c1 - rank_d1 - rank_d0;
        let omega1 = c1 - rank_stack;
        let delta0 = self.dim_module - self.laplacian0.rank();
        let h0 = self.dim_module - rank_d0;
        let res = CohomologyResult { h1, omega1, delta0, h0 };
        if h1.abs_diff(omega1) > delta0 {
            return Err(Error::Invariant(format!("|h1 − omega1| > delta0 in {res:?}")));
        }
        Ok(res)
    }
}

pub fn cohomology_dims(pres: &GroupPresentation, module: &GammaModule) -> Result<CohomologyResult> {
    build_chain(pres, module)?.dims()
}

/// dim H¹ of the preimage of `sub`, through the permutation module on its cosets.
pub fn h1_of_subgroup(
    pres: &GroupPresentation,
    hom: &CongruenceMap,
    sub: &SubgroupSpec,
    cap: usize,
) -> Result<CohomologyResult> {
    let module = coset_module(hom, sub, cap)?;
    cohomology_dims(pres, &module)
}
