use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::mat2::Mat2;
use super::poly::{hensel_root, pow_u64, Poly, RingSpec};
use crate::error::{Error, Result};
use crate::group::Word;
use crate::linalg::is_prime;

/// Generator images in SL(2, Z/p^k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceMap {
    p: u64,
    k: u32,
    root: Option<u64>,
    images: Vec<Mat2>,
    #[serde(skip)]
    inverses: Vec<Mat2>,
}

impl CongruenceMap {
    pub fn from_images(p: u64, k: u32, images: Vec<Mat2>) -> Result<Self> {
        Self::build(p, k, None, images)
    }

    /// Integer matrices reduced mod p^k.
    pub fn from_integer_images(p: u64, k: u32, images: &[[i64; 4]]) -> Result<Self> {
        let q = Self::modulus_for(p, k)?;
        Self::build(p, k, None, images.iter().map(|e| Mat2::new(q, *e)).collect())
    }

    /// Matrices with entries in Z[x]/(f), reduced at the degree-one prime (p, x − a1)
    /// lifted to level k.
    pub fn from_ring(ring: &RingSpec, images: &[[Poly; 4]], p: u64, a1: u64, k: u32) -> Result<Self> {
        let q = Self::modulus_for(p, k)?;
        let root = hensel_root(&ring.min_poly, p, a1, k.max(1))? % q.max(1);
        let mats = images
            .iter()
            .map(|m| Mat2 { q, e: [0, 1, 2, 3].map(|i| m[i].eval_mod(root, q)) })
            .collect();
        Self::build(p, k, Some(root), mats)
    }

    fn modulus_for(p: u64, k: u32) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q < 1 << 16)
            .ok_or_else(|| Error::Validation(format!("level {p}^{k} is too large")))?;
        Ok(q)
    }

    fn build(p: u64, k: u32, root: Option<u64>, images: Vec<Mat2>) -> Result<Self> {
        let q = Self::modulus_for(p, k)?;
        for (i, m) in images.iter().enumerate() {
            if m.q != q {
                return Err(Error::Validation(format!("image {i} is mod {} but the level is {q}", m.q)));
            }
            if m.det() != 1 % q {
                return Err(Error::Validation(format!("image {i} has determinant {} mod {q}", m.det())));
            }
        }
        let inverses = images.iter().map(Mat2::inv_sl2).collect();
        Ok(CongruenceMap { p, k, root, images, inverses })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        pow_u64(self.p, self.k)
    }

    pub fn root(&self) -> Option<u64> {
        self.root
    }

    pub fn n_generators(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Mat2] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Mat2] {
        &self.inverses
    }

    pub fn word_image(&self, w: &Word) -> Mat2 {
        w.evaluate(Mat2::identity(self.modulus()), &self.images, &self.inverses, Mat2::mul)
    }

    /// The same homomorphism followed by reduction to level j ≤ k.
    pub fn reduce_to(&self, j: u32) -> Result<Self> {
        if j > self.k {
            return Err(Error::Precondition(format!("cannot raise level {} to {j}", self.k)));
        }
        let q = pow_u64(self.p, j);
        let root = self.root.map(|r| r % q);
        Self::build(self.p, j, root, self.images.iter().map(|m| m.reduce(q)).collect())
    }

    /// Order of the subgroup generated by the images, by breadth-first closure.
    pub fn generated_order(&self, cap: usize) -> Result<usize> {
        let id = Mat2::identity(self.modulus());
        let mut seen = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.images {
                let h = s.mul(&g);
                if seen.insert(h) {
                    if seen.len() > cap {
                        return Err(Error::ResourceCap {
                            what: "generated subgroup".into(),
                            needed: seen.len(),
                            cap,
                        });
                    }
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.len())
    }
}
