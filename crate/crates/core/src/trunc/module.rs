use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::algebra::TruncatedAlgebra;
use crate::congruence::{enumerate_sl2, inv_mod, sym_power_matrix, CongruenceMap, Mat2};
use crate::congruence::poly::pow_u64;
use crate::error::{Error, Result};
use crate::group::GroupPresentation;
use crate::linalg::{Fp, FpMatrix};

/// Free-basis coordinate v_{j,k} = γ_j ⊗ u_k in copy `copy` of the module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeCoordinate {
    pub copy: usize,
    pub coset: usize,
    pub sym: usize,
}

/// A map sending coset j to coset perm[j] through a dense block.
#[derive(Debug, Clone)]
struct BlockMonomial {
    perm: Vec<usize>,
    blocks: Vec<Vec<u32>>,
}

impl BlockMonomial {
    fn identity(n: usize, bs: usize) -> Self {
        let mut b = vec![0u32; bs * bs];
        for i in 0..bs {
            b[i * bs + i] = 1;
        }
        BlockMonomial { perm: (0..n).collect(), blocks: vec![b; n] }
    }

    /// self ∘ other.
    fn compose(&self, other: &Self, f: Fp, bs: usize) -> Self {
        let p = u64::from(f.p());
        let mut perm = Vec::with_capacity(other.perm.len());
        let mut blocks = Vec::with_capacity(other.perm.len());
        for (j, &mid) in other.perm.iter().enumerate() {
            perm.push(self.perm[mid]);
            let a = &self.blocks[mid];
            let b = &other.blocks[j];
            let mut out = vec![0u64; bs * bs];
            for r in 0..bs {
                for k in 0..bs {
                    let x = u64::from(a[r * bs + k]);
                    if x == 0 {
                        continue;
                    }
                    let row = &mut out[r * bs..(r + 1) * bs];
                    for (o, &y) in row.iter_mut().zip(&b[k * bs..(k + 1) * bs]) {
                        *o += x * u64::from(y);
                    }
                }
                for o in &mut out[r * bs..(r + 1) * bs] {
                    *o %= p;
                }
            }
            blocks.push(out.into_iter().map(|x| x as u32).collect());
        }
        BlockMonomial { perm, blocks }
    }
}

/// V^{≤n} = F_p[G/G(p^m)]^{≤n} ⊗ Sym^d: the induction to G = SL(2, Z/p^m) of the
/// truncated algebra of G(p), tensored with a symmetric power through a second
/// congruence map.
///
/// Coordinates are ordered (coset j, Sym index k, monomial t).
#[derive(Debug, Clone)]
pub struct TruncatedModule {
    algebra: TruncatedAlgebra,
    reps: Vec<Mat2>,
    sym_dim: usize,
    action: Vec<(BlockMonomial, BlockMonomial)>,
}

/// A lift to SL(2, Z/q) of a matrix in SL(2, F_p).
fn lift(s: &Mat2, q: u64) -> Mat2 {
    let [a, b, c, d] = s.e;
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % q as u128) as u64;
    if let Some(ai) = inv_mod(a, q) {
        Mat2 { q, e: [a, b, c, mul((1 + mul(b, c)) % q, ai)] }
    } else {
        // a ≡ 0 forces b to be a unit
        let bi = inv_mod(b, q).expect("b is a unit when a is not");
        Mat2 { q, e: [a, b, mul((mul(a, d) + q - 1) % q, bi), d] }
    }
}

impl TruncatedModule {
    /// `hom_p` must have level at least m; `sym` gives the map at the second prime
    /// and the degree d (None means d = 0).
    pub fn new(algebra: TruncatedAlgebra, hom_p: &CongruenceMap, sym: Option<(&CongruenceMap, usize)>) -> Result<Self> {
        let p = algebra.p();
        let m = algebra.level();
        if hom_p.p() != p || hom_p.k() < m {
            return Err(Error::Precondition(format!(
                "need a map at level {p}^{m}, got {}^{}",
                hom_p.p(),
                hom_p.k()
            )));
        }
        let hom = hom_p.reduce_to(m)?;
        let field = algebra.field();
        let q = pow_u64(p, m);
        let residues = enumerate_sl2(p);
        let reps: Vec<Mat2> = residues.iter().map(|s| lift(s, q)).collect();
        let coset_of: HashMap<Mat2, usize> = residues.iter().enumerate().map(|(i, s)| (*s, i)).collect();

        let (sym_dim, sym_mats): (usize, Vec<(FpMatrix, FpMatrix)>) = match sym {
            None => (1, vec![(FpMatrix::identity(field, 1), FpMatrix::identity(field, 1)); hom.n_generators()]),
            Some((h, d)) => {
                if h.n_generators() != hom.n_generators() || h.p() != p {
                    return Err(Error::DimensionMismatch("the two congruence maps disagree".into()));
                }
                if d >= p as usize {
                    return Err(Error::Validation(format!("Sym^{d} needs d < p")));
                }
                let h1 = h.reduce_to(1)?;
                let mats = h1
                    .images()
                    .iter()
                    .map(|g| (sym_power_matrix(field, d, g), sym_power_matrix(field, d, &g.inv_sl2())))
                    .collect();
                (d + 1, mats)
            }
        };

        let ad = algebra.dim();
        let bs = sym_dim * ad;
        let build = |g: &Mat2, s: &FpMatrix| -> Result<BlockMonomial> {
            let mut perm = Vec::with_capacity(reps.len());
            let mut blocks = Vec::with_capacity(reps.len());
            for gamma in &reps {
                let x = g.mul(gamma);
                let j2 = coset_of[&x.reduce(p)];
                let h = reps[j2].inv_sl2().mul(&x);
                let kron = s.kron(&algebra.left_mult(&h)?)?;
                let mut dense = vec![0u32; bs * bs];
                for r in 0..bs {
                    for &(c, v) in kron.row(r) {
                        dense[r * bs + c] = v;
                    }
                }
                perm.push(j2);
                blocks.push(dense);
            }
            Ok(BlockMonomial { perm, blocks })
        };
        let action = hom
            .images()
            .iter()
            .zip(hom.inverse_images())
            .zip(&sym_mats)
            .map(|((g, gi), (s, si))| Ok((build(g, s)?, build(gi, si)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedModule { algebra, reps, sym_dim, action })
    }

    pub fn algebra(&self) -> &TruncatedAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> Fp {
        self.algebra.field()
    }

    pub fn n_cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn sym_dim(&self) -> usize {
        self.sym_dim
    }

    pub fn n_generators(&self) -> usize {
        self.action.len()
    }

    fn block_size(&self) -> usize {
        self.sym_dim * self.algebra.dim()
    }

    pub fn dim(&self) -> usize {
        self.reps.len() * self.block_size()
    }

    /// Filtration degree of each coordinate.
    pub fn degrees(&self) -> Vec<usize> {
        let deg = self.algebra.degrees();
        (0..self.dim()).map(|i| deg[i % self.algebra.dim()]).collect()
    }

    /// Free-basis coordinate of each coordinate, in copy 0.
    pub fn labels(&self) -> Vec<FreeCoordinate> {
        let ad = self.algebra.dim();
        (0..self.dim())
            .map(|i| FreeCoordinate { copy: 0, coset: i / self.block_size(), sym: (i / ad) % self.sym_dim })
            .collect()
    }

    fn generator(&self, gen: usize, inverse: bool) -> &BlockMonomial {
        if inverse {
            &self.action[gen].1
        } else {
            &self.action[gen].0
        }
    }

    fn to_matrix(&self, bm: &BlockMonomial) -> FpMatrix {
        let mut acc = BlockSum::new(self.field(), self.block_size(), self.n_cosets(), 1, 1);
        acc.add(bm, 0, 0, 1);
        acc.finish()
    }

    /// ρ(g) for generator `gen` or its inverse.
    pub fn action_matrix(&self, gen: usize, inverse: bool) -> FpMatrix {
        self.to_matrix(self.generator(gen, inverse))
    }

    /// ρ(Σ_i 2 − g_i − g_i⁻¹).
    pub fn laplacian_operator(&self) -> FpMatrix {
        let n = self.n_generators();
        let mut acc = BlockSum::new(self.field(), self.block_size(), self.n_cosets(), 1, 1);
        let id = BlockMonomial::identity(self.n_cosets(), self.block_size());
        acc.add(&id, 0, 0, 2 * n as i64);
        for g in 0..n {
            acc.add(self.generator(g, false), 0, 0, -1);
            acc.add(self.generator(g, true), 0, 0, -1);
        }
        acc.finish()
    }

    /// Transpose of the stacked map C¹ → C² ⊕ C⁰ of the cochain complex, as a map
    /// C² ⊕ C⁰ → C¹: block (j, r) is ρ applied to the involution of ∂R_r/∂g_j and
    /// block (j, C⁰) is ρ(1 − g_j). Rows are indexed by generator copies, columns by
    /// relator copies followed by one copy of C⁰.
    pub fn codifferential_operator(&self, pres: &GroupPresentation) -> Result<FpMatrix> {
        let n = self.n_generators();
        if pres.n_generators() != n {
            return Err(Error::DimensionMismatch(format!(
                "presentation has {} generators, module {n}",
                pres.n_generators()
            )));
        }
        let m = pres.n_relators();
        let f = self.field();
        let bs = self.block_size();
        let nc = self.n_cosets();
        let mut acc = BlockSum::new(f, bs, nc, n, m + 1);
        let id = BlockMonomial::identity(nc, bs);
        for (r, rel) in pres.relators().iter().enumerate() {
            // inverse of the running prefix u: ρ(u⁻¹)
            let mut prefix_inv = id.clone();
            for l in rel.letters() {
                // ρ((u·x)⁻¹) = ρ(x⁻¹)·ρ(u⁻¹)
                let next_inv = self.generator(l.gen, !l.inverse).compose(&prefix_inv, f, bs);
                if l.inverse {
                    acc.add(&next_inv, l.gen, r, -1);
                } else {
                    acc.add(&prefix_inv, l.gen, r, 1);
                }
                prefix_inv = next_inv;
            }
        }
        for j in 0..n {
            acc.add(&id, j, m, 1);
            acc.add(self.generator(j, false), j, m, -1);
        }
        Ok(acc.finish())
    }

    /// Checks that every relator acts as the identity.
    pub fn check_relators(&self, pres: &GroupPresentation) -> Result<()> {
        let f = self.field();
        let bs = self.block_size();
        for rel in pres.relators() {
            let mut acc = BlockMonomial::identity(self.n_cosets(), bs);
            for l in rel.letters() {
                acc = acc.compose(self.generator(l.gen, l.inverse), f, bs);
            }
            let id = BlockMonomial::identity(self.n_cosets(), bs);
            if acc.perm != id.perm || acc.blocks != id.blocks {
                return Err(Error::Invariant(format!("relator {} acts nontrivially on V^(<=n)", pres.format_word(rel))));
            }
        }
        Ok(())
    }
}

/// Accumulates signed block-monomial terms into a matrix with `row_copies` ×
/// `col_copies` copies of the module.
struct BlockSum {
    field: Fp,
    bs: usize,
    nc: usize,
    row_copies: usize,
    col_copies: usize,
    blocks: HashMap<(usize, usize), Vec<u32>>,
}

impl BlockSum {
    fn new(field: Fp, bs: usize, nc: usize, row_copies: usize, col_copies: usize) -> Self {
        BlockSum { field, bs, nc, row_copies, col_copies, blocks: HashMap::new() }
    }

    fn add(&mut self, bm: &BlockMonomial, row_copy: usize, col_copy: usize, coeff: i64) {
        let f = self.field;
        let c = f.from_i64(coeff);
        for (j, &t) in bm.perm.iter().enumerate() {
            let key = (row_copy * self.nc + t, col_copy * self.nc + j);
            let dst = self.blocks.entry(key).or_insert_with(|| vec![0; self.bs * self.bs]);
            for (d, &x) in dst.iter_mut().zip(&bm.blocks[j]) {
                if x != 0 {
                    *d = f.add(*d, f.mul(c, x));
                }
            }
        }
    }

    fn finish(self) -> FpMatrix {
        let bs = self.bs;
        let rows = self.row_copies * self.nc * bs;
        let cols = self.col_copies * self.nc * bs;
        let mut keys: Vec<_> = self.blocks.keys().copied().collect();
        keys.sort_unstable();
        let mut row_data: Vec<Vec<(usize, u32)>> = vec![Vec::new(); rows];
        for (br, bc) in keys {
            let b = &self.blocks[&(br, bc)];
            for r in 0..bs {
                let out = &mut row_data[br * bs + r];
                for c in 0..bs {
                    let x = b[r * bs + c];
                    if x != 0 {
                        out.push((bc * bs + c, x));
                    }
                }
            }
        }
        FpMatrix::from_rows(self.field, cols, row_data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::fox_derivative;

    fn sl2z_map(k: u32) -> CongruenceMap {
        CongruenceMap::from_integer_images(3, k, &[[1, 1, 0, 1], [0, -1, 1, 0]]).unwrap()
    }

    #[test]
    fn lifts_are_in_sl2() {
        for s in enumerate_sl2(3) {
            let l = lift(&s, 27);
            assert_eq!(l.det(), 1);
            assert_eq!(l.reduce(3), s);
        }
    }

    #[test]
    fn module_is_a_representation() {
        let alg = TruncatedAlgebra::new(3, 2, 1).unwrap();
        let hom = sl2z_map(2);
        let v = TruncatedModule::new(alg, &hom, Some((&hom, 1))).unwrap();
        assert_eq!(v.dim(), 24 * 2 * 4);
        // b⁴ and (ba)³b⁻² are trivial on a = [[1,1],[0,1]], b = [[0,−1],[1,0]]
        let pres = GroupPresentation::parse("SL2Z", 2, &["bbbb", "bababaBB"]).unwrap();
        let a = v.action_matrix(0, false);
        let ai = v.action_matrix(0, true);
        assert_eq!(a.mul(&ai).unwrap(), FpMatrix::identity(v.field(), v.dim()));
        v.check_relators(&pres).unwrap();
        let lap = v.laplacian_operator();
        let expect = FpMatrix::identity(v.field(), v.dim())
            .scale(4)
            .sub(&a)
            .unwrap()
            .sub(&ai)
            .unwrap()
            .sub(&v.action_matrix(1, false))
            .unwrap()
            .sub(&v.action_matrix(1, true))
            .unwrap();
        assert_eq!(lap, expect);
        let t = v.codifferential_operator(&pres).unwrap();
        assert_eq!((t.rows(), t.cols()), (2 * v.dim(), 3 * v.dim()));
        // block (j, r) against direct evaluation of the involuted Fox derivative
        let n = v.dim();
        let gens: Vec<FpMatrix> = (0..2).map(|g| v.action_matrix(g, false)).collect();
        let invs: Vec<FpMatrix> = (0..2).map(|g| v.action_matrix(g, true)).collect();
        let f = v.field();
        let id = FpMatrix::identity(f, n);
        for (r, rel) in pres.relators().iter().enumerate() {
            for j in 0..2 {
                let e = fox_derivative(rel, j, 2).unwrap().involution();
                let m = e.evaluate(
                    &id,
                    &gens,
                    &invs,
                    |a, b| a.mul(b).unwrap(),
                    |a, b| a.add(b).unwrap(),
                    |a, c| a.scale(f.from_i64(c)),
                    FpMatrix::zeros(f, n, n),
                );
                let block = FpMatrix::from_triplets(
                    f,
                    n,
                    n,
                    (0..n).flat_map(|i| {
                        t.row(j * n + i)
                            .iter()
                            .filter(|&&(c, _)| c / n == r)
                            .map(move |&(c, x)| (i, c % n, i64::from(x)))
                            .collect::<Vec<_>>()
                    }),
                )
                .unwrap();
                assert_eq!(block, m, "relator {r}, generator {j}");
            }
        }
    }
}
