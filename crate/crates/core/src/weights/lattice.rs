use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::congruence::poly::pow_u64;
use crate::congruence::{inv_mod, principal_elements, Mat2};
use crate::error::{Error, Result};
use crate::linalg::{is_prime, Echelon, Fp, FpMatrix, SparseVec, Subspace};

/// Largest function space handled, |G(p)/G(p^m)|.
pub const LATTICE_ELEMENT_CAP: usize = 200_000;
/// Largest number of integral coefficient vectors enumerated per denominator.
pub const LATTICE_ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceCertificate {
    /// Invariance is tested under G(p^level).
    pub level: u32,
    pub generators_checked: usize,
    pub translations_checked: usize,
    pub invariant: bool,
    /// Generators of G(p^level) that move some function.
    pub failures: Vec<String>,
    /// The span is stable under left translation by G(p).
    pub submodule: bool,
    /// Every function is fixed by right translation by G(p) ∩ G₀(p^{k+2}).
    pub borel_coset_containment: bool,
}

/// L/pL for the lattice L of homogeneous degree-d polynomials in the first column
/// (a, c) taking integral values on G(p), realized as functions on G(p)/G(p^m).
#[derive(Debug, Clone)]
pub struct LatticeReduction {
    pub p: u64,
    pub d: usize,
    pub k: u32,
    pub m: u32,
    /// The functions, as vectors indexed by `elements`.
    pub span: Subspace,
    pub elements: Vec<Mat2>,
    /// Left translation by the three standard generators of G(p) and their inverses,
    /// in the reduced basis of `span`.
    pub action: Vec<(FpMatrix, FpMatrix)>,
    pub certificate: InvarianceCertificate,
}

impl LatticeReduction {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

fn legendre(p: u64, d: usize) -> u32 {
    let mut e = 0;
    let mut q = p as usize;
    while q <= d {
        e += (d / q) as u32;
        q *= p as usize;
    }
    e
}

/// Generators diag(1 + p^j, (1 + p^j)⁻¹), [[1, p^j], [0, 1]], [[1, 0], [p^j, 1]] mod p^m.
fn level_generators(p: u64, j: u32, m: u32) -> Vec<(String, Mat2)> {
    let q = pow_u64(p, m);
    let t = (1 + pow_u64(p, j)) % q;
    let x = pow_u64(p, j) % q;
    vec![
        (format!("diag(1+{p}^{j})"), Mat2 { q, e: [t, 0, 0, inv_mod(t, q).expect("unit")] }),
        (format!("upper({p}^{j})"), Mat2 { q, e: [1, x, 0, 1] }),
        (format!("lower({p}^{j})"), Mat2 { q, e: [1, 0, x, 1] }),
    ]
}

fn translate(v: &[u32], perm: &[usize]) -> Vec<u32> {
    let mut out = vec![0; v.len()];
    for (x, &y) in perm.iter().enumerate() {
        out[x] = v[y];
    }
    out
}

fn dense(v: &SparseVec, n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for &(c, x) in v {
        out[c] = x;
    }
    out
}

/// Coordinates of `v` in the reduced basis of `span`, if it lies in the span.
fn coordinates(field: Fp, span: &Subspace, v: &[u32]) -> Option<Vec<u32>> {
    let coords: Vec<u32> = span.basis().iter().map(|row| v[row[0].0]).collect();
    let mut rebuilt = vec![0u32; v.len()];
    for (row, &c) in span.basis().iter().zip(&coords) {
        for &(j, x) in row {
            rebuilt[j] = field.add(rebuilt[j], field.mul(c, x));
        }
    }
    (rebuilt == v).then_some(coords)
}

/// Builds L/pL at working level m and certifies invariance under G(p^{k+1}).
///
/// On G(p) write a = 1 + p·s and c = p·c'. A homogeneous f = Σ x_i a^{d−i} c^i equals
/// Σ y_i a^{d−i} c'^i with y_i = p^i x_i, an integer-valued polynomial in (s, c') whose
/// denominators divide d!. Hence L = ∪_e p^{−e}{y ∈ Z^{d+1} : Σ y_i a^{d−i} c'^i ≡ 0 mod p^e},
/// and for e ≤ m − 2 the congruences can be tested on the finite set G(p)/G(p^m).
pub fn lattice_reduction(p: u64, d: usize, k: u32, m: u32) -> Result<LatticeReduction> {
    if !is_prime(p) || p == 2 {
        return Err(Error::Validation(format!("p = {p} must be an odd prime")));
    }
    if (pow_u64(p, k) as usize) < d {
        return Err(Error::Validation(format!("need p^k >= d, got {p}^{k} < {d}")));
    }
    if m < k + 2 {
        return Err(Error::Precondition(format!("working level m = {m} must be at least k + 2 = {}", k + 2)));
    }
    let e_max = legendre(p, d);
    if e_max + 2 > m {
        return Err(Error::Precondition(format!(
            "denominators up to {p}^{e_max} need a working level of at least {}",
            e_max + 2
        )));
    }
    let size = pow_u64(p, 3 * (m - 1)) as usize;
    if size > LATTICE_ELEMENT_CAP {
        return Err(Error::ResourceCap { what: "G(p)/G(p^m) function space".into(), needed: size, cap: LATTICE_ELEMENT_CAP });
    }
    let field = Fp::new(p as u32)?;
    let elements = principal_elements(p, m);
    let n = elements.len();
    let index: HashMap<Mat2, usize> = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();

    // φ_i(g) = a^{d−i} c'^i mod p^{m−1}
    let r = pow_u64(p, m - 1);
    let mulr = |x: u64, y: u64| ((x as u128 * y as u128) % r as u128) as u64;
    let phi: Vec<Vec<u64>> = elements
        .iter()
        .map(|g| {
            let a = g.a() % r;
            let c1 = g.c() / p;
            (0..=d)
                .map(|i| {
                    let mut v = 1;
                    for _ in 0..d - i {
                        v = mulr(v, a);
                    }
                    for _ in 0..i {
                        v = mulr(v, c1);
                    }
                    v
                })
                .collect()
        })
        .collect();

    let mut ech = Echelon::dense(field, n);
    for i in 0..=d {
        ech.insert_dense(phi.iter().map(|row| (row[i] % p) as u32).collect());
    }
    for e in 1..=e_max {
        let modulus = pow_u64(p, e + 1);
        let count = pow_u64(modulus, d as u32 + 1);
        if count > LATTICE_ENUMERATION_CAP {
            return Err(Error::ResourceCap {
                what: "integral coefficient vectors".into(),
                needed: count as usize,
                cap: LATTICE_ENUMERATION_CAP as usize,
            });
        }
        let pe = pow_u64(p, e);
        let mut y = vec![0u64; d + 1];
        'outer: for code in 0..count {
            let mut c = code;
            for yi in y.iter_mut() {
                *yi = c % modulus;
                c /= modulus;
            }
            if y.iter().all(|&yi| yi % p == 0) {
                continue;
            }
            let mut values = Vec::with_capacity(n);
            for row in &phi {
                let v = row.iter().zip(&y).map(|(&f, &yi)| (f % modulus) * yi % modulus).sum::<u64>() % modulus;
                if !v.is_multiple_of(pe) {
                    continue 'outer;
                }
                values.push((v / pe) as u32);
            }
            ech.insert_dense(values);
        }
    }
    let span = Subspace::from_echelon(&ech);
    let basis: Vec<Vec<u32>> = span.basis().iter().map(|v| dense(v, n)).collect();

    let right_perm = |h: &Mat2| -> Vec<usize> { elements.iter().map(|g| index[&g.mul(h)]).collect() };
    let left_perm = |h: &Mat2| -> Vec<usize> { elements.iter().map(|g| index[&h.mul(g)]).collect() };

    let mut failures = Vec::new();
    let gens = level_generators(p, k + 1, m);
    for (name, h) in &gens {
        let perm = right_perm(h);
        if basis.iter().any(|f| translate(f, &perm) != *f) {
            failures.push(name.clone());
        }
    }
    // G(p) ∩ G₀(p^{k+2}) at level p^m is generated by the diagonal and upper generators
    let borel: Vec<Mat2> = level_generators(p, 1, m).into_iter().take(2).map(|(_, h)| h).collect();
    let borel_coset_containment = borel.iter().all(|h| {
        let perm = right_perm(h);
        basis.iter().all(|f| translate(f, &perm) == *f)
    });

    // (g·f)(x) = f(g⁻¹x)
    let mut submodule = true;
    let mut action = Vec::new();
    for (_, g) in level_generators(p, 1, m) {
        let mats: Vec<FpMatrix> = [g.inv_sl2(), g]
            .iter()
            .map(|h| {
                let perm = left_perm(h);
                let mut trip = Vec::new();
                for (col, f) in basis.iter().enumerate() {
                    match coordinates(field, &span, &translate(f, &perm)) {
                        Some(c) => trip.extend(c.into_iter().enumerate().filter(|&(_, x)| x != 0).map(|(r, x)| (r, col, i64::from(x)))),
                        None => submodule = false,
                    }
                }
                FpMatrix::from_triplets(field, basis.len(), basis.len(), trip)
            })
            .collect::<Result<_>>()?;
        let mut it = mats.into_iter();
        action.push((it.next().expect("two"), it.next().expect("two")));
    }

    let certificate = InvarianceCertificate {
        level: k + 1,
        generators_checked: gens.len(),
        translations_checked: gens.len() * basis.len() * n,
        invariant: failures.is_empty(),
        failures,
        submodule,
        borel_coset_containment,
    };
    Ok(LatticeReduction { p, d, k, m, span, elements, action, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_weight() {
        let l = lattice_reduction(3, 0, 1, 3).unwrap();
        assert_eq!(l.dim(), 1);
        assert!(l.certificate.invariant && l.certificate.submodule);
    }

    #[test]
    fn small_weights_have_full_dimension() {
        for d in 1..=2 {
            let l = lattice_reduction(3, d, 1, 3).unwrap();
            assert_eq!(l.dim(), d + 1);
            assert!(l.certificate.invariant, "{:?}", l.certificate);
            assert!(l.certificate.submodule && l.certificate.borel_coset_containment);
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(lattice_reduction(3, 4, 1, 3), Err(Error::Validation(_))));
        assert!(matches!(lattice_reduction(3, 2, 1, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn legendre_valuations() {
        assert_eq!(legendre(3, 3), 1);
        assert_eq!(legendre(3, 9), 4);
        assert_eq!(legendre(5, 4), 0);
    }
}
