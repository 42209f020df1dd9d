use super::echelon::{Echelon, SparseVec};
use super::field::Fp;
use crate::error::{Error, Result};

/// A subspace of F_p^n held as a reduced row echelon basis: pivots strictly
/// increasing, each pivot entry 1 and the only nonzero in its column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Fp,
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: Fp, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| vec![(i, 1)]).collect();
        Subspace { field, ambient_dim, basis }
    }

    pub fn from_vectors(field: Fp, ambient_dim: usize, vectors: &[SparseVec]) -> Self {
        let total: usize = vectors.iter().map(Vec::len).sum();
        let density = if vectors.is_empty() || ambient_dim == 0 {
            0.0
        } else {
            total as f64 / (vectors.len() as f64 * ambient_dim as f64)
        };
        let mut e = Echelon::for_density(field, ambient_dim, density);
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert_sparse(v);
        }
        Self::from_echelon(&e)
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        Subspace { field: e.field(), ambient_dim: e.width(), basis: e.rref() }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_dense(&self) -> Vec<Vec<u32>> {
        self.basis
            .iter()
            .map(|row| {
                let mut v = vec![0u32; self.ambient_dim];
                for &(c, x) in row {
                    v[c] = x;
                }
                v
            })
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r[0].0).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::sparse(self.field, self.ambient_dim);
        for v in &self.basis {
            e.insert_sparse(v);
        }
        e
    }

    pub fn contains(&self, v: &[(usize, u32)]) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let mut e = self.echelon();
        other.basis.iter().all(|v| e.contains(v))
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_p^{} and F_p^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert_sparse(v);
        }
        Ok(Self::from_echelon(&e))
    }

    /// Zassenhaus intersection: reduce `[a | a]` and `[b | 0]`; the rows whose left
    /// half vanishes carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient_dim;
        let mut e = Echelon::sparse(self.field, 2 * n);
        for v in &self.basis {
            let mut row = v.clone();
            row.extend(v.iter().map(|&(c, x)| (c + n, x)));
            e.insert_sparse(&row);
        }
        for v in &other.basis {
            e.insert_sparse(v);
        }
        let meet: Vec<SparseVec> = e
            .rows()
            .into_iter()
            .filter(|r| r[0].0 >= n)
            .map(|r| r.into_iter().map(|(c, x)| (c - n, x)).collect())
            .collect();
        Ok(Subspace::from_vectors(self.field, n, &meet))
    }

    /// Coordinates restricted to the index set `keep`, reindexed in order.
    pub fn project(&self, keep: &[usize]) -> Subspace {
        let mut pos = vec![usize::MAX; self.ambient_dim];
        for (k, &c) in keep.iter().enumerate() {
            pos[c] = k;
        }
        let vs: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|r| r.iter().filter(|&&(c, _)| pos[c] != usize::MAX).map(|&(c, x)| (pos[c], x)).collect())
            .collect();
        Subspace::from_vectors(self.field, keep.len(), &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_examples() {
        let f = Fp::new(3).unwrap();
        let b = Subspace::from_vectors(f, 2, &[vec![(0, 1), (1, 2)]]);
        assert_eq!(Subspace::full(f, 2).intersect(&b).unwrap(), b);
        let a = Subspace::from_vectors(f, 2, &[vec![(0, 1)]]);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);

        let f5 = Fp::new(5).unwrap();
        let a = Subspace::from_vectors(f5, 3, &[vec![(0, 1)], vec![(1, 1)]]);
        let b = Subspace::from_vectors(f5, 3, &[vec![(1, 1)], vec![(2, 1)]]);
        // enumerate F_5^3 and keep the common vectors
        let mut common = 0;
        for x in 0..125u32 {
            let v: Vec<(usize, u32)> = (0..3)
                .map(|i| (i, x / 5u32.pow(i as u32) % 5))
                .filter(|&(_, c)| c != 0)
                .collect();
            if a.contains(&v) && b.contains(&v) {
                common += 1;
            }
        }
        assert_eq!(common, 5);
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet, Subspace::from_vectors(f5, 3, &[vec![(1, 1)]]));
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let f = Fp::new(3).unwrap();
        assert!(Subspace::full(f, 2).intersect(&Subspace::full(f, 3)).is_err());
    }
}
