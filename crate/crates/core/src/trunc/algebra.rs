use std::collections::HashMap;

use super::filtration::{filtration_by_operators, Filtration};
use crate::congruence::{inv_mod, principal_elements, Mat2};
use crate::congruence::poly::pow_u64;
use crate::error::{Error, Result};
use crate::linalg::{is_prime, Fp, FpMatrix};

/// Number of monomials of degree exactly i in `vars` variables.
pub fn monomial_count(vars: usize, i: usize) -> usize {
    binom(i + vars - 1, vars - 1)
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// F_p[K]/I^{n+1} for K = G(p)/G(p^m) ⊂ SL(2, Z/p^m), I the augmentation ideal,
/// in the basis of monomials z^α = z₁^α₁ z₂^α₂ z₃^α₃ with z_i = 1 − u_i and |α| ≤ n.
#[derive(Debug, Clone)]
pub struct TruncatedAlgebra {
    field: Fp,
    p: u64,
    m: u32,
    n: usize,
    elements: Vec<Mat2>,
    index: HashMap<Mat2, usize>,
    generators: [Mat2; 3],
    filtration: Filtration,
    monomials: Vec<[usize; 3]>,
    /// Group-algebra vector of each monomial.
    monomial_vectors: Vec<Vec<u32>>,
    /// Coordinates in the monomial basis of the class of each group element.
    to_coords: FpMatrix,
}

impl TruncatedAlgebra {
    /// Needs p odd, m ≥ 2 and p^{m−1} > n so that z_i^{p^{m−1}} = 0 does not cut
    /// into degrees ≤ n.
    pub fn new(p: u64, m: u32, n: usize) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::Validation(format!("p = {p} must be an odd prime")));
        }
        if m < 2 || pow_u64(p, m - 1) as usize <= n {
            return Err(Error::Validation(format!(
                "level p^{m} too small for degree {n}; need p^(m-1) > n"
            )));
        }
        if pow_u64(p, 3 * (m - 1)) > 20_000 {
            return Err(Error::ResourceCap {
                what: "principal congruence quotient".into(),
                needed: pow_u64(p, 3 * (m - 1)) as usize,
                cap: 20_000,
            });
        }
        let field = Fp::new(p as u32)?;
        let q = pow_u64(p, m);
        let elements = principal_elements(p, m);
        let index: HashMap<Mat2, usize> = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let t = 1 + p;
        let generators = [
            Mat2 { q, e: [t % q, 0, 0, inv_mod(t, q).expect("unit")] },
            Mat2 { q, e: [1, p, 0, 1] },
            Mat2 { q, e: [1, 0, p, 1] },
        ];
        let right_perm = |u: &Mat2| -> Vec<usize> { elements.iter().map(|g| index[&g.mul(u)]).collect() };
        let perms: Vec<Vec<usize>> = generators.iter().map(right_perm).collect();
        if closure_size(&perms) != elements.len() {
            return Err(Error::Invariant("chosen generators do not generate G(p)/G(p^m)".into()));
        }
        let ops: Vec<FpMatrix> = perms.iter().map(|pm| FpMatrix::permutation(field, pm)).collect();
        let filtration = filtration_by_operators(field, elements.len(), &ops, n)?;
        for (i, &g) in filtration.graded_dims().iter().enumerate() {
            if g != monomial_count(3, i) {
                return Err(Error::Validation(format!(
                    "graded piece {i} has dimension {g}, expected {}; raise the level m",
                    monomial_count(3, i)
                )));
            }
        }

        let mut monomials = Vec::new();
        for deg in 0..=n {
            for a in (0..=deg).rev() {
                for b in (0..=deg - a).rev() {
                    monomials.push([a, b, deg - a - b]);
                }
            }
        }
        let id = index[&Mat2::identity(q)];
        let monomial_vectors: Vec<Vec<u32>> = monomials
            .iter()
            .map(|alpha| {
                let mut v = vec![0u32; elements.len()];
                v[id] = 1;
                for (g, &e) in alpha.iter().enumerate() {
                    for _ in 0..e {
                        let mut w = v.clone();
                        for (src, &x) in v.iter().enumerate() {
                            if x != 0 {
                                let dst = perms[g][src];
                                w[dst] = field.sub(w[dst], x);
                            }
                        }
                        v = w;
                    }
                }
                v
            })
            .collect();

        // Quotient by F^{n+1}: coordinates on the non-pivot columns of its reduced basis.
        let top = filtration.space(n + 1);
        let mut pivot_of = vec![None; elements.len()];
        for (r, row) in top.basis().iter().enumerate() {
            pivot_of[row[0].0] = Some(r);
        }
        let free: Vec<usize> = (0..elements.len()).filter(|&c| pivot_of[c].is_none()).collect();
        let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dim = free.len();
        // class of e_c in free coordinates
        let class_of = |c: usize| -> Vec<(usize, u32)> {
            match pivot_of[c] {
                None => vec![(free_pos[&c], 1)],
                Some(r) => top.basis()[r][1..].iter().map(|&(j, x)| (free_pos[&j], field.neg(x))).collect(),
            }
        };
        let mut zt = Vec::new();
        for (t, v) in monomial_vectors.iter().enumerate() {
            for (c, &x) in v.iter().enumerate() {
                if x != 0 {
                    for (j, y) in class_of(c) {
                        zt.push((j, t, i64::from(field.mul(x, y))));
                    }
                }
            }
        }
        let z = FpMatrix::from_triplets(field, dim, monomials.len(), zt)?;
        if dim != monomials.len() || z.rank() != dim {
            return Err(Error::Validation("monomials of degree <= n are not a basis of the truncation".into()));
        }
        let zinv = z.inverse()?;
        let mut wt = Vec::new();
        for c in 0..elements.len() {
            for (j, y) in class_of(c) {
                wt.push((j, c, i64::from(y)));
            }
        }
        let w = FpMatrix::from_triplets(field, dim, elements.len(), wt)?;
        let to_coords = zinv.mul(&w)?;
        Ok(TruncatedAlgebra {
            field,
            p,
            m,
            n,
            elements,
            index,
            generators,
            filtration,
            monomials,
            monomial_vectors,
            to_coords,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.m
    }

    pub fn trunc_degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat2; 3] {
        &self.generators
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn monomials(&self) -> &[[usize; 3]] {
        &self.monomials
    }

    /// Degree |α| of each basis monomial.
    pub fn degrees(&self) -> Vec<usize> {
        self.monomials.iter().map(|a| a.iter().sum()).collect()
    }

    pub fn contains(&self, h: &Mat2) -> bool {
        self.index.contains_key(h)
    }

    /// Left multiplication by h ∈ G(p)/G(p^m) in the monomial basis.
    pub fn left_mult(&self, h: &Mat2) -> Result<FpMatrix> {
        if !self.contains(h) {
            return Err(Error::Precondition(format!("{h:?} is not congruent to I mod p")));
        }
        let n_el = self.elements.len();
        let perm: Vec<usize> = self.elements.iter().map(|g| self.index[&h.mul(g)]).collect();
        let mut trip = Vec::new();
        for (t, v) in self.monomial_vectors.iter().enumerate() {
            let mut moved = vec![0u32; n_el];
            for (src, &x) in v.iter().enumerate() {
                if x != 0 {
                    moved[perm[src]] = x;
                }
            }
            for (r, y) in self.to_coords.mul_vec(&moved).into_iter().enumerate() {
                if y != 0 {
                    trip.push((r, t, i64::from(y)));
                }
            }
        }
        FpMatrix::from_triplets(self.field, self.dim(), self.dim(), trip)
    }
}

fn closure_size(perms: &[Vec<usize>]) -> usize {
    let n = perms.first().map_or(1, Vec::len);
    let mut seen = vec![false; n];
    // the orbit of one element under right multiplication is the whole generated group
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for pm in perms {
            let y = pm[x];
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}
