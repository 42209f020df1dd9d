use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::module::FreeCoordinate;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, FpMatrix, SparseVec};

/// Degree and free-basis coordinate of every coordinate of a truncated module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub degrees: Vec<usize>,
    pub labels: Vec<FreeCoordinate>,
}

impl Grading {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// `copies` stacked copies of this grading, relabelled by copy.
    pub fn repeat(&self, copies: usize) -> Grading {
        let mut degrees = Vec::with_capacity(self.dim() * copies);
        let mut labels = Vec::with_capacity(self.dim() * copies);
        for c in 0..copies {
            degrees.extend_from_slice(&self.degrees);
            labels.extend(self.labels.iter().map(|l| FreeCoordinate { copy: c, ..*l }));
        }
        Grading { degrees, labels }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageEntry {
    pub coordinate: FreeCoordinate,
    pub found: bool,
    pub witness_degree: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageStatus {
    /// Every coordinate has a witness.
    Full,
    /// Some coordinate block is missed by the whole image up to the truncation degree.
    Fail,
    /// Witnesses are missing but the image reaches every block; a deeper
    /// truncation may find them.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub trunc_degree: usize,
    pub entries: Vec<CoverageEntry>,
    pub status: CoverageStatus,
    /// Highest degree whose truncation was examined.
    pub examined_degree: usize,
}

impl CoverageReport {
    pub fn covered(&self) -> usize {
        self.entries.iter().filter(|e| e.found).count()
    }

    pub fn is_full(&self) -> bool {
        self.status == CoverageStatus::Full
    }
}

/// For each free coordinate, looks for x in the image of `op` whose lowest-degree
/// part is supported on that coordinate alone.
///
/// A witness of degree δ is already visible in the truncation at degree δ, so the
/// truncations are examined in increasing degree and the search stops once every
/// coordinate has a witness. At degree δ the graded classes of the image form the
/// space P_δ spanned by the reduced echelon rows whose pivot has degree δ
/// (coordinates sorted by degree); a block B carries a witness iff P_δ meets the
/// coordinates of B, i.e. iff the annihilator of P_δ restricted to B has rank below |B|.
pub fn lowest_degree_coverage(op: &FpMatrix, target: &Grading, source: &Grading, n: usize) -> Result<CoverageReport> {
    if op.rows() != target.dim() || op.cols() != source.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator {}x{} between gradings of dimensions {} and {}",
            op.rows(),
            op.cols(),
            target.dim(),
            source.dim()
        )));
    }
    let f = op.field();
    let columns = op.transpose();
    let mut blocks: BTreeMap<FreeCoordinate, Option<usize>> = target.labels.iter().map(|l| (*l, None)).collect();
    let mut examined = 0;
    let mut touched: BTreeMap<FreeCoordinate, bool> = BTreeMap::new();
    let max_deg = target.degrees.iter().copied().max().unwrap_or(0);
    for delta in 0..=n.min(max_deg) {
        examined = delta;
        // target coordinates of degree ≤ δ, sorted by degree
        let mut order: Vec<usize> = (0..target.dim()).filter(|&i| target.degrees[i] <= delta).collect();
        order.sort_by_key(|&i| target.degrees[i]);
        let mut pos = vec![usize::MAX; target.dim()];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let width = order.len();
        let mut e = Echelon::dense(f, width);
        for c in (0..source.dim()).filter(|&c| source.degrees[c] <= delta) {
            if e.is_full() {
                break;
            }
            let v: SparseVec = columns
                .row(c)
                .iter()
                .filter(|&&(r, _)| pos[r] != usize::MAX)
                .map(|&(r, x)| (pos[r], x))
                .collect();
            let mut v = v;
            v.sort_unstable_by_key(|&(c, _)| c);
            e.insert_sparse(&v);
        }
        let rref = e.rref();
        if delta == n.min(max_deg) {
            for row in &rref {
                for &(c, _) in row {
                    touched.insert(target.labels[order[c]], true);
                }
            }
        }
        // coordinates of degree exactly δ
        let top: Vec<usize> = (0..width).filter(|&k| target.degrees[order[k]] == delta).collect();
        let top_start = top.first().copied().unwrap_or(width);
        let p_rows: Vec<SparseVec> = rref
            .iter()
            .filter(|row| row[0].0 >= top_start)
            .map(|row| row.iter().map(|&(c, x)| (c - top_start, x)).collect())
            .collect();
        let p_mat = FpMatrix::from_rows(f, top.len(), p_rows);
        let ann = p_mat.kernel();
        // group annihilator columns by block
        let mut by_block: BTreeMap<FreeCoordinate, Vec<usize>> = BTreeMap::new();
        for (k, &c) in top.iter().enumerate() {
            by_block.entry(target.labels[order[c]]).or_default().push(k);
        }
        for (label, cols) in by_block {
            if blocks[&label].is_some() {
                continue;
            }
            let mut index = vec![usize::MAX; top.len()];
            for (i, &c) in cols.iter().enumerate() {
                index[c] = i;
            }
            let restricted: Vec<SparseVec> = ann
                .basis()
                .iter()
                .map(|v| v.iter().filter(|&&(c, _)| index[c] != usize::MAX).map(|&(c, x)| (index[c], x)).collect())
                .collect();
            let r = FpMatrix::from_rows(f, cols.len(), restricted).rank();
            if r < cols.len() {
                blocks.insert(label, Some(delta));
            }
        }
        if blocks.values().all(Option::is_some) {
            break;
        }
    }
    let entries: Vec<CoverageEntry> = blocks
        .iter()
        .map(|(l, w)| CoverageEntry { coordinate: *l, found: w.is_some(), witness_degree: *w })
        .collect();
    let status = if entries.iter().all(|e| e.found) {
        CoverageStatus::Full
    } else if entries.iter().any(|e| !e.found && !touched.contains_key(&e.coordinate)) {
        CoverageStatus::Fail
    } else {
        CoverageStatus::Inconclusive
    };
    Ok(CoverageReport { trunc_degree: n, entries, status, examined_degree: examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;

    fn grading(blocks: usize, degs: &[usize]) -> Grading {
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for b in 0..blocks {
            for &d in degs {
                degrees.push(d);
                labels.push(FreeCoordinate { copy: 0, coset: b, sym: 0 });
            }
        }
        Grading { degrees, labels }
    }

    #[test]
    fn identity_covers_at_degree_zero() {
        let f = Fp::new(3).unwrap();
        let g = grading(3, &[0, 1, 1]);
        let r = lowest_degree_coverage(&FpMatrix::identity(f, 9), &g, &g, 1).unwrap();
        assert!(r.is_full());
        assert!(r.entries.iter().all(|e| e.witness_degree == Some(0)));
    }

    #[test]
    fn zero_covers_nothing() {
        let f = Fp::new(3).unwrap();
        let g = grading(2, &[0, 1]);
        let r = lowest_degree_coverage(&FpMatrix::zeros(f, 4, 4), &g, &g, 1).unwrap();
        assert_eq!(r.covered(), 0);
        assert_eq!(r.status, CoverageStatus::Fail);
    }

    #[test]
    fn mixed_leading_terms_need_higher_degree() {
        // image spanned by e(0,deg0) + e(1,deg0) and e(1,deg1): block 1 has a
        // witness at degree 1 only, block 0 none (inconclusive)
        let f = Fp::new(3).unwrap();
        let g = grading(2, &[0, 1]);
        let op = FpMatrix::from_dense(f, &[vec![1, 0, 0, 0], vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1]])
            .unwrap();
        let r = lowest_degree_coverage(&op, &g, &g, 1).unwrap();
        assert_eq!(r.entries[0].witness_degree, None);
        assert_eq!(r.entries[1].witness_degree, Some(1));
        assert_eq!(r.status, CoverageStatus::Inconclusive);
    }
}
