//! Slow, independent ways of computing H¹ on small inputs.

use std::collections::HashSet;

use crate::congruence::GammaModule;
use crate::error::{Error, Result};
use crate::group::GroupPresentation;

pub const ORACLE_CAP: u64 = 10_000_000;

struct DenseAction {
    p: u64,
    gens: Vec<Vec<Vec<u64>>>,
    invs: Vec<Vec<Vec<u64>>>,
}

impl DenseAction {
    fn new(module: &GammaModule) -> Self {
        let conv = |m: &crate::linalg::FpMatrix| -> Vec<Vec<u64>> {
            m.to_dense().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect()
        };
        DenseAction {
            p: module.p() as u64,
            gens: (0..module.n_generators()).map(|i| conv(module.action(i))).collect(),
            invs: (0..module.n_generators()).map(|i| conv(module.inverse_action(i))).collect(),
        }
    }

    fn apply(&self, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % self.p).collect()
    }
}

fn decode(mut x: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn log_p(mut x: u64, p: u64) -> usize {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}

/// Counts crossed homomorphisms f (f(wx) = f(w) + w·f(x)) by trying every
/// assignment of values to the generators, then divides by the principal ones.
pub fn brute_force_h1_oracle(pres: &GroupPresentation, module: &GammaModule) -> Result<usize> {
    let n = pres.n_generators();
    let dim = module.dim();
    let p = module.p() as u64;
    let total_dim = (n * dim) as u32;
    let count = p.checked_pow(total_dim).filter(|&c| c <= ORACLE_CAP).ok_or(Error::ResourceCap {
        what: "brute-force cocycle enumeration".into(),
        needed: usize::MAX,
        cap: ORACLE_CAP as usize,
    })?;
    let act = DenseAction::new(module);
    let mut cocycles = 0u64;
    for code in 0..count {
        let flat = decode(code, p, n * dim);
        let vals: Vec<&[u64]> = flat.chunks(dim.max(1)).collect();
        let ok = pres.relators().iter().all(|r| {
            // running (ρ(w), f(w)) along the relator
            let mut rho: Vec<Vec<u64>> = (0..dim).map(|i| (0..dim).map(|j| u64::from(i == j)).collect()).collect();
            let mut fw = vec![0u64; dim];
            for l in r.letters() {
                let fx: Vec<u64> = if l.inverse {
                    let t = act.apply(&act.invs[l.gen], vals[l.gen]);
                    t.into_iter().map(|x| (p - x) % p).collect()
                } else {
                    vals[l.gen].to_vec()
                };
                let add = act.apply(&rho, &fx);
                for (a, b) in fw.iter_mut().zip(add) {
                    *a = (*a + b) % p;
                }
                let step = if l.inverse { &act.invs[l.gen] } else { &act.gens[l.gen] };
                rho = rho
                    .iter()
                    .map(|row| (0..dim).map(|j| (0..dim).map(|k| row[k] * step[k][j]).sum::<u64>() % p).collect())
                    .collect();
            }
            fw.iter().all(|&x| x == 0)
        });
        if ok {
            cocycles += 1;
        }
    }
    let mut principal: HashSet<Vec<u64>> = HashSet::new();
    for code in 0..p.pow(dim as u32) {
        let a = decode(code, p, dim);
        let mut img = Vec::with_capacity(n * dim);
        for g in &act.gens {
            let ga = act.apply(g, &a);
            img.extend(ga.iter().zip(&a).map(|(x, y)| (x + p - y) % p));
        }
        principal.insert(img);
    }
    Ok(log_p(cocycles, p) - log_p(principal.len() as u64, p))
}

/// n minus the mod-p rank of the exponent-sum matrix: dim Hom(Γ, F_p).
pub fn abelianization_h1_oracle(pres: &GroupPresentation, p: u64) -> usize {
    let n = pres.n_generators();
    let mut rows: Vec<Vec<u64>> = pres
        .relators()
        .iter()
        .map(|r| (0..n).map(|j| r.exponent_sum(j).rem_euclid(p as i64) as u64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = (1..p).find(|&x| x * rows[rank][col] % p == 1).expect("p prime");
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| x * inv % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    n - rank
}
