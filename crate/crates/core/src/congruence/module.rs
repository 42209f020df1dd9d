use std::collections::HashMap;

use super::map::CongruenceMap;
use super::mat2::Mat2;
use super::subgroup::SubgroupSpec;
use crate::error::{Error, Result};
use crate::group::{FreeRingElement, GroupPresentation, Word};
use crate::linalg::{Fp, FpMatrix};

pub const DEFAULT_INDEX_CAP: usize = 200_000;

/// A finite-dimensional F_p[Γ]-module with an invariant nondegenerate pairing.
/// Generator i acts on column vectors by `action[i].0`, its inverse by `action[i].1`.
#[derive(Debug, Clone)]
pub struct GammaModule {
    field: Fp,
    dim: usize,
    action: Vec<(FpMatrix, FpMatrix)>,
    pairing: FpMatrix,
    label: String,
}

impl GammaModule {
    pub fn new(field: Fp, action: Vec<(FpMatrix, FpMatrix)>, pairing: FpMatrix, label: &str) -> Result<Self> {
        let dim = pairing.rows();
        if pairing.cols() != dim {
            return Err(Error::DimensionMismatch("pairing is not square".into()));
        }
        let id = FpMatrix::identity(field, dim);
        for (i, (g, gi)) in action.iter().enumerate() {
            for m in [g, gi] {
                if m.rows() != dim || m.cols() != dim || m.field() != field {
                    return Err(Error::DimensionMismatch(format!("action of generator {i} has the wrong shape")));
                }
            }
            if g.mul(gi)? != id {
                return Err(Error::Invariant(format!("{label}: action of generator {i} and its inverse do not compose to 1")));
            }
            if g.transpose().mul(&pairing)?.mul(g)? != pairing {
                return Err(Error::Invariant(format!("{label}: pairing is not invariant under generator {i}")));
            }
        }
        if pairing.rank() != dim {
            return Err(Error::Invariant(format!("{label}: pairing is degenerate")));
        }
        Ok(GammaModule { field, dim, action, pairing, label: label.to_string() })
    }

    pub fn trivial(field: Fp, n_generators: usize) -> Self {
        let id = FpMatrix::identity(field, 1);
        GammaModule {
            field,
            dim: 1,
            action: vec![(id.clone(), id.clone()); n_generators],
            pairing: id,
            label: "trivial".into(),
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_generators(&self) -> usize {
        self.action.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self, i: usize) -> &FpMatrix {
        &self.action[i].0
    }

    pub fn inverse_action(&self, i: usize) -> &FpMatrix {
        &self.action[i].1
    }

    pub fn pairing(&self) -> &FpMatrix {
        &self.pairing
    }

    pub fn word_matrix(&self, w: &Word) -> FpMatrix {
        let mut m = FpMatrix::identity(self.field, self.dim);
        for l in w.letters() {
            let g = if l.inverse { &self.action[l.gen].1 } else { &self.action[l.gen].0 };
            m = m.mul(g).expect("square matrices of equal size");
        }
        m
    }

    pub fn ring_matrix(&self, e: &FreeRingElement) -> FpMatrix {
        let mut acc = FpMatrix::zeros(self.field, self.dim, self.dim);
        for (w, c) in e.terms() {
            let m = self.word_matrix(w);
            acc = acc.lin_comb(1, &m, self.field.from_i64(c)).expect("same shape");
        }
        acc
    }

    /// Checks that every relator acts trivially.
    pub fn check_relators(&self, pres: &GroupPresentation) -> Result<()> {
        if pres.n_generators() != self.n_generators() {
            return Err(Error::DimensionMismatch(format!(
                "module has {} generators, presentation {}",
                self.n_generators(),
                pres.n_generators()
            )));
        }
        let id = FpMatrix::identity(self.field, self.dim);
        for r in pres.relators() {
            if self.word_matrix(r) != id {
                return Err(Error::Invariant(format!("relator {r} acts nontrivially on {}", self.label)));
            }
        }
        Ok(())
    }
}

fn field_of(hom: &CongruenceMap) -> Result<Fp> {
    Fp::new(u32::try_from(hom.p()).map_err(|_| Error::Validation("prime too large".into()))?)
}

/// Left cosets reached from the identity coset, in breadth-first order, with the
/// permutation induced by each generator.
pub struct CosetOrbit {
    pub reps: Vec<Mat2>,
    pub perms: Vec<Vec<usize>>,
}

pub fn coset_orbit(hom: &CongruenceMap, sub: &SubgroupSpec, cap: usize) -> Result<CosetOrbit> {
    sub.validate(hom.k())?;
    let p = hom.p();
    let lv = sub.level();
    let gens: Vec<Mat2> = hom.reduce_to(lv)?.images().to_vec();
    let q = crate::congruence::poly::pow_u64(p, lv);
    let start = sub.canonical_coset(&Mat2::identity(q), p);
    let mut index: HashMap<u64, usize> = HashMap::from([(start.key(), 0)]);
    let mut reps = vec![start];
    let mut perms: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < reps.len() {
        let c = reps[head];
        for (s, perm) in gens.iter().zip(perms.iter_mut()) {
            let image = sub.canonical_coset(&s.mul(&c), p);
            let next = reps.len();
            let idx = *index.entry(image.key()).or_insert(next);
            if idx == next {
                if next >= cap {
                    return Err(Error::ResourceCap { what: format!("coset module for {sub}"), needed: next + 1, cap });
                }
                reps.push(image);
            }
            perm.push(idx);
        }
        head += 1;
    }
    Ok(CosetOrbit { reps, perms })
}

/// The permutation module F_p[Q/(Q ∩ U)], Q the image of the map and U given by `sub`.
pub fn coset_module(hom: &CongruenceMap, sub: &SubgroupSpec, cap: usize) -> Result<GammaModule> {
    let field = field_of(hom)?;
    let orbit = coset_orbit(hom, sub, cap)?;
    let n = orbit.reps.len();
    let action = orbit
        .perms
        .iter()
        .map(|perm| {
            let mut inv = vec![0; n];
            for (c, &t) in perm.iter().enumerate() {
                inv[t] = c;
            }
            (FpMatrix::permutation(field, perm), FpMatrix::permutation(field, &inv))
        })
        .collect();
    let label = format!("F_{}[G/{}] mod {}^{}", hom.p(), sub, hom.p(), hom.k());
    Ok(GammaModule { field, dim: n, action, pairing: FpMatrix::identity(field, n), label })
}

fn binomial_mod(field: Fp, n: usize, k: usize) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = field.mul(num, field.from_i64((n - i) as i64));
        den = field.mul(den, field.from_i64((i + 1) as i64));
    }
    field.mul(num, field.inv(den))
}

/// Action of g on homogeneous degree-d polynomials by (g·f)(v) = f(g⁻¹v), in the
/// basis x^i y^{d−i}, i = 0..=d.
pub fn sym_power_matrix(field: Fp, d: usize, g: &Mat2) -> FpMatrix {
    let gi = g.inv_sl2();
    let f = |x: u64| field.from_i64(x as i64);
    // x ↦ αx + βy, y ↦ γx + δy; polynomials in x with y implicit.
    let (al, be, ga, de) = (f(gi.e[0]), f(gi.e[1]), f(gi.e[2]), f(gi.e[3]));
    let mul_lin = |poly: &[u32], cx: u32, cy: u32| -> Vec<u32> {
        let mut out = vec![0u32; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            out[i + 1] = field.add(out[i + 1], field.mul(c, cx));
            out[i] = field.add(out[i], field.mul(c, cy));
        }
        out
    };
    let mut trip = Vec::new();
    for i in 0..=d {
        let mut poly = vec![1u32];
        for _ in 0..i {
            poly = mul_lin(&poly, al, be);
        }
        for _ in i..d {
            poly = mul_lin(&poly, ga, de);
        }
        for (r, &c) in poly.iter().enumerate() {
            if c != 0 {
                trip.push((r, i, c as i64));
            }
        }
    }
    FpMatrix::from_triplets(field, d + 1, d + 1, trip).expect("in range")
}

/// ⟨x^i y^{d−i}, x^j y^{d−j}⟩ = δ_{j,d−i} (−1)^i binom(d,i)⁻¹.
pub fn sym_pairing(field: Fp, d: usize) -> FpMatrix {
    let trip = (0..=d).map(|i| {
        let b = field.inv(binomial_mod(field, d, i));
        let v = if i % 2 == 0 { b } else { field.neg(b) };
        (i, d - i, v as i64)
    });
    FpMatrix::from_triplets(field, d + 1, d + 1, trip).expect("in range")
}

/// Sym^d of the standard representation reduced to level one.
pub fn sym_module(hom: &CongruenceMap, d: usize) -> Result<GammaModule> {
    let field = field_of(hom)?;
    let p = hom.p() as usize;
    if d >= p {
        return Err(Error::Validation(format!("Sym^{d} needs d < p = {p}")));
    }
    if hom.k() == 0 {
        return Err(Error::Precondition("Sym^d needs a map of level at least 1".into()));
    }
    let h1 = hom.reduce_to(1)?;
    let action = h1
        .images()
        .iter()
        .map(|g| (sym_power_matrix(field, d, g), sym_power_matrix(field, d, &g.inv_sl2())))
        .collect();
    GammaModule::new(field, action, sym_pairing(field, d), &format!("Sym^{d} mod {p}"))
}

pub fn tensor_module(a: &GammaModule, b: &GammaModule) -> Result<GammaModule> {
    if a.field != b.field {
        return Err(Error::ModulusMismatch(a.p(), b.p()));
    }
    if a.n_generators() != b.n_generators() {
        return Err(Error::DimensionMismatch("modules for different generator sets".into()));
    }
    let action = a
        .action
        .iter()
        .zip(&b.action)
        .map(|((g, gi), (h, hi))| Ok((g.kron(h)?, gi.kron(hi)?)))
        .collect::<Result<Vec<_>>>()?;
    let pairing = a.pairing.kron(&b.pairing)?;
    GammaModule::new(a.field, action, pairing, &format!("{} ⊗ {}", a.label, b.label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::Poly;
    use crate::congruence::RingSpec;

    fn elementary(p: u64, k: u32) -> CongruenceMap {
        CongruenceMap::from_integer_images(p, k, &[[1, 1, 0, 1], [1, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn coset_dimensions() {
        let h = elementary(3, 1);
        assert_eq!(coset_module(&h, &SubgroupSpec::Principal { j: 1 }, DEFAULT_INDEX_CAP).unwrap().dim(), 24);
        assert_eq!(coset_module(&h, &SubgroupSpec::Full, DEFAULT_INDEX_CAP).unwrap().dim(), 1);
        assert_eq!(coset_module(&h, &SubgroupSpec::Borel0 { j: 1 }, DEFAULT_INDEX_CAP).unwrap().dim(), 4);
        let h2 = elementary(3, 2);
        assert_eq!(coset_module(&h2, &SubgroupSpec::Borel0 { j: 2 }, DEFAULT_INDEX_CAP).unwrap().dim(), 12);
        assert_eq!(coset_module(&h2, &SubgroupSpec::H { j: 2 }, DEFAULT_INDEX_CAP).unwrap().dim(), 9 * 8);
        let err = coset_module(&h2, &SubgroupSpec::Principal { j: 2 }, 100).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn coset_index_independent_of_generator_order() {
        let h = CongruenceMap::from_integer_images(3, 2, &[[1, 0, 3, 1], [1, 3, 0, 1], [4, 0, 0, 7]]).unwrap();
        let r = CongruenceMap::from_integer_images(3, 2, &[[4, 0, 0, 7], [1, 3, 0, 1], [1, 0, 3, 1]]).unwrap();
        for sub in [SubgroupSpec::Principal { j: 2 }, SubgroupSpec::H { j: 2 }, SubgroupSpec::P { j: 2, l: 2 }] {
            let a = coset_module(&h, &sub, DEFAULT_INDEX_CAP).unwrap().dim();
            let b = coset_module(&r, &sub, DEFAULT_INDEX_CAP).unwrap().dim();
            assert_eq!(a, b);
            // |Q| / |Q ∩ U| by listing Q
            let q_elems = {
                let mut seen = std::collections::HashSet::from([Mat2::identity(9)]);
                let mut stack = vec![Mat2::identity(9)];
                while let Some(g) = stack.pop() {
                    for s in h.images() {
                        let x = s.mul(&g);
                        if seen.insert(x) {
                            stack.push(x);
                        }
                    }
                }
                seen
            };
            let inter = q_elems.iter().filter(|g| sub.contains(g, 3)).count();
            assert_eq!(a, q_elems.len() / inter, "{sub}");
        }
    }

    #[test]
    fn sym_action_and_pairing() {
        let f3 = Fp::new(3).unwrap();
        let g = Mat2::new(3, [1, 1, 0, 1]);
        let m = sym_power_matrix(f3, 2, &g);
        // x ↦ x − y: y² ↦ y², xy ↦ xy − y², x² ↦ x² − 2xy + y²
        assert_eq!(m.to_dense(), vec![vec![1, 2, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        // exchanging x and y gives x² ↦ x², xy ↦ xy − x², y² ↦ y² − 2xy + x²
        let swap = FpMatrix::permutation(f3, &[2, 1, 0]);
        let mirrored = swap.mul(&m).unwrap().mul(&swap).unwrap();
        assert_eq!(mirrored.to_dense(), vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 2, 1]]);

        let h = elementary(5, 1);
        for d in 0..5 {
            let s = sym_module(&h, d).unwrap();
            assert_eq!(s.dim(), d + 1);
        }
        assert!(sym_module(&h, 5).is_err());
        let s1 = sym_module(&h, 1).unwrap();
        assert_eq!(s1.pairing().to_dense(), vec![vec![0, 1], vec![4, 0]]);
    }

    #[test]
    fn sym_is_a_homomorphism() {
        let f5 = Fp::new(5).unwrap();
        let g = Mat2::new(5, [2, 1, 3, 2]);
        let h = Mat2::new(5, [1, 4, 0, 1]);
        for d in 0..5 {
            let lhs = sym_power_matrix(f5, d, &g.mul(&h));
            let rhs = sym_power_matrix(f5, d, &g).mul(&sym_power_matrix(f5, d, &h)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tensor_products() {
        let h = elementary(3, 1);
        let c = coset_module(&h, &SubgroupSpec::Principal { j: 1 }, DEFAULT_INDEX_CAP).unwrap();
        let s = sym_module(&h, 2).unwrap();
        let t = tensor_module(&c, &s).unwrap();
        assert_eq!(t.dim(), 72);
        let triv = GammaModule::trivial(c.field(), 2);
        let ct = tensor_module(&c, &triv).unwrap();
        assert_eq!(ct.action(0), c.action(0));
        let other = sym_module(&elementary(5, 1), 1).unwrap();
        assert!(tensor_module(&c, &other).is_err());
    }

    #[test]
    fn relators_checked() {
        let ring = RingSpec::new(Poly::parse("x^2 + x + 1").unwrap(), "Q(sqrt -3)").unwrap();
        let pres = GroupPresentation::parse("4_1", 2, &["aBAbaBabAB"]).unwrap();
        let one = Poly::constant(1);
        let zero = Poly::constant(0);
        let x = [one.clone(), one.clone(), zero.clone(), one.clone()];
        let y = [one.clone(), zero, Poly::parse("-x").unwrap(), one];
        let hom = CongruenceMap::from_ring(&ring, &[x, y], 7, 2, 1).unwrap();
        let m = coset_module(&hom, &SubgroupSpec::Principal { j: 1 }, DEFAULT_INDEX_CAP).unwrap();
        m.check_relators(&pres).unwrap();
        let s = sym_module(&hom, 3).unwrap();
        s.check_relators(&pres).unwrap();
    }
}
