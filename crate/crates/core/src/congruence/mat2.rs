use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{inv_mod, pow_u64};

/// A 2×2 matrix over Z/q, entries row-major in `0..q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub q: u64,
    pub e: [u64; 4],
}

impl Mat2 {
    pub fn new(q: u64, e: [i64; 4]) -> Self {
        let r = |x: i64| x.rem_euclid(q as i64) as u64;
        Mat2 { q, e: [r(e[0]), r(e[1]), r(e[2]), r(e[3])] }
    }

    pub fn identity(q: u64) -> Self {
        Mat2 { q, e: [1 % q, 0, 0, 1 % q] }
    }

    pub fn a(&self) -> u64 {
        self.e[0]
    }
    pub fn b(&self) -> u64 {
        self.e[1]
    }
    pub fn c(&self) -> u64 {
        self.e[2]
    }
    pub fn d(&self) -> u64 {
        self.e[3]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        debug_assert_eq!(self.q, o.q);
        let q = self.q as u128;
        let [a, b, c, d] = self.e.map(|x| x as u128);
        let [w, x, y, z] = o.e.map(|x| x as u128);
        let m = |s: u128| (s % q) as u64;
        Mat2 { q: self.q, e: [m(a * w + b * y), m(a * x + b * z), m(c * w + d * y), m(c * x + d * z)] }
    }

    pub fn det(&self) -> u64 {
        let q = self.q as u128;
        let [a, b, c, d] = self.e.map(|x| x as u128);
        ((a * d % q + q - b * c % q) % q) as u64
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv_sl2(&self) -> Mat2 {
        debug_assert_eq!(self.det(), 1 % self.q);
        self.adjugate()
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let di = inv_mod(self.det(), self.q)?;
        Some(self.adjugate().scale(di))
    }

    fn adjugate(&self) -> Mat2 {
        let q = self.q;
        let neg = |x: u64| (q - x) % q;
        Mat2 { q, e: [self.e[3], neg(self.e[1]), neg(self.e[2]), self.e[0]] }
    }

    pub fn scale(&self, s: u64) -> Mat2 {
        let q = self.q as u128;
        Mat2 { q: self.q, e: self.e.map(|x| (x as u128 * s as u128 % q) as u64) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.q)
    }

    /// Reduction to a modulus dividing q.
    pub fn reduce(&self, q2: u64) -> Mat2 {
        debug_assert_eq!(self.q % q2, 0);
        Mat2 { q: q2, e: self.e.map(|x| x % q2) }
    }

    /// Entry as a signed representative in (−q/2, q/2].
    pub fn signed(&self, i: usize) -> i64 {
        let x = self.e[i] as i64;
        let q = self.q as i64;
        if x > q / 2 {
            x - q
        } else {
            x
        }
    }

    /// Packs the entries into a single key; valid for q < 2^16.
    pub fn key(&self) -> u64 {
        debug_assert!(self.q < 1 << 16);
        (self.e[0] << 48) | (self.e[1] << 32) | (self.e[2] << 16) | self.e[3]
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]] mod {}", self.e[0], self.e[1], self.e[2], self.e[3], self.q)
    }
}

/// All matrices of SL(2, Z/q).
pub fn enumerate_sl2(q: u64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = Mat2 { q, e: [a, b, c, d] };
                    if m.det() == 1 % q {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// |SL(2, Z/p^k)| = p^{3k−2}(p²−1).
pub fn sl2_order(p: u64, k: u32) -> u64 {
    if k == 0 {
        return 1;
    }
    p.pow(3 * k - 2) * (p * p - 1)
}

/// Elements of G(p)/G(p^m) ⊂ SL(2, Z/p^m), the matrices congruent to I mod p.
pub fn principal_elements(p: u64, m: u32) -> Vec<Mat2> {
    let q = pow_u64(p, m);
    let mut out = Vec::new();
    for a in (1..q).step_by(p as usize) {
        let ai = inv_mod(a, q).expect("unit");
        for b in (0..q).step_by(p as usize) {
            for c in (0..q).step_by(p as usize) {
                let d = ((1 + b as u128 * c as u128) % q as u128 * ai as u128 % q as u128) as u64;
                out.push(Mat2 { q, e: [a, b, c, d] });
            }
        }
    }
    out
}
