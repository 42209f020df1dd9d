use std::fmt;

use serde::{Deserialize, Serialize};

use super::mat2::Mat2;
use super::poly::{inv_mod, pow_u64};
use crate::error::{Error, Result};

/// Congruence subgroups of SL(2, Z_p), described by conditions on entries.
///
/// * `Principal { j }`: g ≡ I mod p^j.
/// * `Borel0 { j }`: c ≡ 0 mod p^j.
/// * `H { j }`: g ≡ I mod p on the diagonal, c ≡ 0 mod p, b ≡ 0 mod p^j.
/// * `P { j, l }`: g ≡ I mod p on the diagonal, b ≡ 0 mod p^j, c ≡ 0 mod p^l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubgroupSpec {
    Principal { j: u32 },
    Borel0 { j: u32 },
    H { j: u32 },
    P { j: u32, l: u32 },
    Full,
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Principal { j } => write!(f, "principal({j})"),
            SubgroupSpec::Borel0 { j } => write!(f, "borel0({j})"),
            SubgroupSpec::H { j } => write!(f, "H({j})"),
            SubgroupSpec::P { j, l } => write!(f, "P({j},{l})"),
            SubgroupSpec::Full => write!(f, "full"),
        }
    }
}

impl std::str::FromStr for SubgroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "full" {
            return Ok(SubgroupSpec::Full);
        }
        let err = || Error::Parse(format!("cannot parse subgroup {s:?}"));
        let open = s.find('(').ok_or_else(err)?;
        let args = s[open + 1..].strip_suffix(')').ok_or_else(err)?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<u32>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        match (&s[..open], nums.as_slice()) {
            ("principal", &[j]) => Ok(SubgroupSpec::Principal { j }),
            ("borel0", &[j]) => Ok(SubgroupSpec::Borel0 { j }),
            ("H", &[j]) => Ok(SubgroupSpec::H { j }),
            ("P", &[j, l]) => Ok(SubgroupSpec::P { j, l }),
            _ => Err(err()),
        }
    }
}

/// Shape of a subgroup reduced mod p^L: α ranges over units (or 1 + pZ),
/// β over p^sb Z, γ over p^sc Z, and δ = (1 + βγ)/α.
#[derive(Debug, Clone, Copy)]
struct Shape {
    alpha_one: bool,
    sb: u32,
    sc: u32,
}

impl SubgroupSpec {
    /// Smallest L such that membership depends only on the reduction mod p^L.
    pub fn level(&self) -> u32 {
        match *self {
            SubgroupSpec::Principal { j } | SubgroupSpec::Borel0 { j } => j,
            SubgroupSpec::H { j } => j.max(1),
            SubgroupSpec::P { j, l } => j.max(l).max(1),
            SubgroupSpec::Full => 0,
        }
    }

    pub fn validate(&self, k: u32) -> Result<()> {
        if let SubgroupSpec::P { j: 0, l: 0 } = self {
            return Err(Error::Validation("P(0,0) is not a subgroup".into()));
        }
        if self.level() > k {
            return Err(Error::Validation(format!("{self} needs level {} but the map has level {k}", self.level())));
        }
        Ok(())
    }

    fn shape(&self) -> Option<Shape> {
        match *self {
            SubgroupSpec::Principal { .. } | SubgroupSpec::Full | SubgroupSpec::Borel0 { j: 0 } => None,
            SubgroupSpec::Borel0 { j } => Some(Shape { alpha_one: false, sb: 0, sc: j }),
            SubgroupSpec::H { j } => Some(Shape { alpha_one: true, sb: j, sc: 1 }),
            SubgroupSpec::P { j, l } => Some(Shape { alpha_one: true, sb: j, sc: l }),
        }
    }

    /// Membership of a matrix whose modulus is a power of p at least p^level.
    pub fn contains(&self, m: &Mat2, p: u64) -> bool {
        let dv = |x: u64, e: u32| x.is_multiple_of(pow_u64(p, e));
        let one = |x: u64| x % p == 1 % p;
        match *self {
            SubgroupSpec::Full => true,
            SubgroupSpec::Principal { j } => {
                let q = pow_u64(p, j);
                m.e[0] % q == 1 % q && dv(m.e[1], j) && dv(m.e[2], j) && m.e[3] % q == 1 % q
            }
            SubgroupSpec::Borel0 { j } => dv(m.e[2], j),
            SubgroupSpec::H { j } => one(m.e[0]) && one(m.e[3]) && dv(m.e[1], j) && dv(m.e[2], 1),
            SubgroupSpec::P { j, l } => one(m.e[0]) && one(m.e[3]) && dv(m.e[1], j) && dv(m.e[2], l),
        }
    }

    /// All elements of the subgroup reduced mod p^level.
    pub fn elements_mod_level(&self, p: u64) -> Vec<Mat2> {
        let lv = self.level();
        let q = pow_u64(p, lv);
        let Some(sh) = self.shape() else {
            return match self {
                SubgroupSpec::Principal { .. } => vec![Mat2::identity(q)],
                _ => super::mat2::enumerate_sl2(q),
            };
        };
        let mut out = Vec::new();
        let bstep = pow_u64(p, sh.sb.min(lv));
        let cstep = pow_u64(p, sh.sc.min(lv));
        for alpha in 0..q {
            let ok = if sh.alpha_one { alpha % p == 1 % p } else { alpha % p != 0 };
            if !ok {
                continue;
            }
            let ai = inv_mod(alpha, q).expect("unit");
            for beta in (0..q).step_by(bstep as usize) {
                for gamma in (0..q).step_by(cstep as usize) {
                    let delta = ((1 + beta as u128 * gamma as u128) % q as u128 * ai as u128 % q as u128) as u64;
                    out.push(Mat2 { q, e: [alpha, beta, gamma, delta] });
                }
            }
        }
        out
    }

    /// The lexicographically smallest matrix (row-major) of the coset g·U mod p^level.
    ///
    /// Every u ∈ U factors as L(x)·D(α)·N(y) with L lower and N upper unipotent, so
    /// the first row of g·u is (α(a + bx), α⁻¹b + yα(a + bx)). The first row is
    /// minimized in closed form; matrices of the coset sharing that row differ by
    /// left multiplication with L(t), t ∈ p^τ Z, which fixes the second row.
    pub fn canonical_coset(&self, g: &Mat2, p: u64) -> Mat2 {
        let lv = self.level();
        let q = pow_u64(p, lv);
        let g = g.reduce(q);
        let Some(sh) = self.shape() else {
            return match self {
                SubgroupSpec::Principal { .. } => g,
                _ => Mat2::identity(q),
            };
        };
        let r = Ring { p, l: lv, q };
        let [a, b, _, _] = g.e;
        let (va, vb) = (r.val(a), r.val(b));
        let e = (vb + sh.sc).min(lv);

        // minimal a' and the admissible α⁻¹ as a union of classes base + p^h Z
        let (a_min, classes): (u64, Vec<(u64, u32)>) = if va < e {
            let w = a / r.pw(va);
            let m = if sh.alpha_one { w % p } else { 1 };
            let h = e - va;
            let ph = pow_u64(p, h);
            let rho0 = r.mul(w % ph, inv_mod(m, ph).expect("unit")) % ph;
            (r.pw(va) * m % q, vec![(rho0, h)])
        } else {
            // a + bx sweeps all of p^e Z, including 0
            let a_min = 0;
            let classes = if sh.alpha_one { vec![(1 % q, 1)] } else { (1..p).map(|c| (c % q, 1)).collect() };
            (a_min, classes)
        };

        // minimal b' = α⁻¹ b mod p^f over the admissible α⁻¹
        let f = (r.val(a_min) + sh.sb).min(lv);
        let mut best: Option<(u64, u64)> = None;
        for &(base, h) in &classes {
            let (m, t0, _) = lin_min(r.mul(base, b), r.mul(r.pw(h.min(lv)), b), p, f);
            if best.is_none_or(|(bm, _)| m < bm) {
                best = Some((m, (base + r.mul(r.pw(h.min(lv)), t0)) % q));
            }
        }
        let (_, alpha_inv) = best.expect("nonempty");
        let alpha = inv_mod(alpha_inv, q).expect("unit");

        // an explicit coset element with that first row
        let rhs = (r.mul(alpha_inv, a_min) + q - a) % q;
        let x = if e >= lv {
            0
        } else {
            let k = r.mul(b, r.pw(sh.sc.min(lv)));
            let pe = r.pw(e);
            let u = inv_mod(k / pe, q).expect("unit part");
            let z = r.mul(rhs / pe, u) % pow_u64(p, lv - e);
            r.mul(z, r.pw(sh.sc.min(lv)))
        };
        let hmat = g
            .mul(&Mat2 { q, e: [1 % q, 0, x, 1 % q] })
            .mul(&Mat2 { q, e: [alpha, 0, 0, alpha_inv] });
        let pb = r.pw(sh.sb.min(lv));
        let (b_min, ty, _) = lin_min(hmat.e[1], r.mul(hmat.e[0], pb), p, lv);
        let y = r.mul(ty, pb);
        let hmat = hmat.mul(&Mat2 { q, e: [1 % q, y, 0, 1 % q] });
        debug_assert_eq!((hmat.e[0], hmat.e[1]), (a_min, b_min));

        // remaining freedom: L(t)·h with t ∈ p^τ Z
        let (va2, vb2) = (r.val(a_min), r.val(b_min));
        let mut tau = 0u32;
        tau = tau.max(sh.sb.saturating_sub(2 * vb2));
        tau = tau.max(sh.sc.saturating_sub(2 * va2));
        if sh.alpha_one {
            tau = tau.max(1u32.saturating_sub(va2 + vb2));
        }
        let pt = r.pw(tau.min(lv));
        let (c_min, t0, step) = lin_min(hmat.e[2], r.mul(a_min, pt), p, lv);
        let d0 = (hmat.e[3] + r.mul(r.mul(t0, pt), b_min)) % q;
        let (d_min, _, _) = lin_min(d0, r.mul(r.mul(step % q.max(1), pt), b_min), p, lv);
        Mat2 { q, e: [a_min, b_min, c_min, d_min] }
    }
}

struct Ring {
    p: u64,
    l: u32,
    q: u64,
}

impl Ring {
    fn val(&self, x: u64) -> u32 {
        val(x % self.q, self.p, self.l)
    }
    fn pw(&self, e: u32) -> u64 {
        if e >= self.l {
            0
        } else {
            pow_u64(self.p, e)
        }
    }
    fn mul(&self, x: u64, y: u64) -> u64 {
        (x as u128 * y as u128 % self.q as u128) as u64
    }
}

fn val(x: u64, p: u64, l: u32) -> u32 {
    if x == 0 {
        return l;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) && v < l {
        y /= p;
        v += 1;
    }
    v
}

/// Minimum of c + t·k over t, modulo p^l, with one minimizer t0 and the step
/// between minimizers.
fn lin_min(c: u64, k: u64, p: u64, l: u32) -> (u64, u64, u64) {
    let q = pow_u64(p, l);
    let k = k % q;
    if k == 0 {
        return (c % q, 0, 1);
    }
    let v = val(k, p, l);
    let pv = pow_u64(p, v);
    let u = k / pv;
    let min = c % pv;
    let qr = pow_u64(p, l - v);
    let mm = ((c - min) / pv) % qr;
    let ui = inv_mod(u % qr, qr).unwrap_or(0);
    let t0 = ((qr - mm) % qr) as u128 * ui as u128 % qr.max(1) as u128;
    (min, t0 as u64, qr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::mat2::enumerate_sl2;

    fn brute(spec: &SubgroupSpec, g: &Mat2, p: u64) -> Mat2 {
        let q = pow_u64(p, spec.level());
        let g = g.reduce(q);
        spec.elements_mod_level(p).iter().map(|u| g.mul(u)).min_by_key(|m| m.e).unwrap()
    }

    #[test]
    fn element_counts() {
        assert_eq!(SubgroupSpec::Borel0 { j: 1 }.elements_mod_level(3).len(), 6);
        assert_eq!(SubgroupSpec::Borel0 { j: 2 }.elements_mod_level(3).len(), 9 * 6);
        assert_eq!(SubgroupSpec::H { j: 2 }.elements_mod_level(3).len(), 9);
        assert_eq!(SubgroupSpec::Principal { j: 2 }.elements_mod_level(3).len(), 1);
        for spec in [SubgroupSpec::Borel0 { j: 2 }, SubgroupSpec::H { j: 2 }, SubgroupSpec::P { j: 1, l: 2 }] {
            for u in spec.elements_mod_level(3) {
                assert!(spec.contains(&u, 3));
                assert_eq!(u.det(), 1);
            }
        }
    }

    #[test]
    fn canonical_matches_brute_force() {
        let specs = [
            SubgroupSpec::Borel0 { j: 1 },
            SubgroupSpec::Borel0 { j: 2 },
            SubgroupSpec::H { j: 0 },
            SubgroupSpec::H { j: 1 },
            SubgroupSpec::H { j: 2 },
            SubgroupSpec::P { j: 1, l: 0 },
            SubgroupSpec::P { j: 1, l: 2 },
            SubgroupSpec::P { j: 2, l: 1 },
            SubgroupSpec::P { j: 0, l: 2 },
            SubgroupSpec::Principal { j: 1 },
        ];
        for p in [2u64, 3] {
            let all = enumerate_sl2(p * p);
            for spec in &specs {
                for g in &all {
                    assert_eq!(spec.canonical_coset(g, p), brute(spec, g, p), "{spec} {g:?}");
                }
            }
        }
        let all5 = enumerate_sl2(25);
        for spec in &specs {
            for g in all5.iter().step_by(37) {
                assert_eq!(spec.canonical_coset(g, 5), brute(spec, g, 5), "{spec} {g:?}");
            }
        }
        let deep = [SubgroupSpec::Borel0 { j: 3 }, SubgroupSpec::H { j: 3 }, SubgroupSpec::P { j: 1, l: 3 }, SubgroupSpec::P { j: 3, l: 2 }];
        let all27 = enumerate_sl2(27);
        for spec in &deep {
            for g in all27.iter().step_by(97) {
                assert_eq!(spec.canonical_coset(g, 3), brute(spec, g, 3), "{spec} {g:?}");
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["principal(3)", "borel0(1)", "H(2)", "P(1,2)", "full"] {
            assert_eq!(s.parse::<SubgroupSpec>().unwrap().to_string(), s);
        }
        assert!("P(1)".parse::<SubgroupSpec>().is_err());
        assert!(SubgroupSpec::P { j: 0, l: 0 }.validate(3).is_err());
        assert!(SubgroupSpec::Principal { j: 4 }.validate(3).is_err());
    }
}
