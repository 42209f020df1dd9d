use std::fmt;

use super::echelon::{Echelon, SparseVec};
use super::field::Fp;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Sparse matrix over F_p, stored row by row. Each row is sorted by column and
/// never holds explicit zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.field.p())?;
        if self.rows <= 16 && self.cols <= 16 {
            for r in self.to_dense() {
                writeln!(f, "  {:?}", r)?;
            }
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, 1 % field.p())]).collect();
        FpMatrix { field, rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I>(field: Fp, rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
            let x = field.from_i64(v);
            if x != 0 {
                data[r].push((c, x));
            }
        }
        for row in &mut data {
            normalize_row(field, row);
        }
        Ok(FpMatrix { field, rows, cols, data })
    }

    pub fn from_dense(field: Fp, entries: &[Vec<i64>]) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_triplets(
            field,
            rows,
            cols,
            entries
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    /// Builds from already-normalized sparse rows.
    pub fn from_rows(field: Fp, cols: usize, rows: Vec<SparseVec>) -> Self {
        let mut data = rows;
        for row in &mut data {
            normalize_row(field, row);
            debug_assert!(row.last().is_none_or(|&(c, _)| c < cols));
        }
        FpMatrix { field, rows: data.len(), cols, data }
    }

    /// Permutation matrix with `m[perm[c]][c] = 1`.
    pub fn permutation(field: Fp, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut data = vec![Vec::new(); n];
        for (c, &r) in perm.iter().enumerate() {
            data[r].push((c, 1));
        }
        FpMatrix { field, rows: n, cols: n, data }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, u32)] {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        match self.data[r].binary_search_by_key(&c, |&(j, _)| j) {
            Ok(k) => self.data[r][k].1,
            Err(_) => 0,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, x) in row {
                out[r][c] = x;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, x) in row {
                data[c].push((r, x));
            }
        }
        FpMatrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.p(), other.p()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut acc = vec![0u32; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for &(k, x) in row {
                for &(j, y) in &other.data[k] {
                    if acc[j] == 0 {
                        touched.push(j);
                    }
                    // a zero sum is re-pushed harmlessly; dedup below
                    acc[j] = f.add(acc[j], f.mul(x, y));
                    if acc[j] == 0 {
                        touched.push(j);
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                if acc[j] != 0 {
                    out.push((j, acc[j]));
                }
                acc[j] = 0;
            }
            touched.clear();
            data.push(out);
        }
        Ok(FpMatrix { field: f, rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.lin_comb(1, other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.lin_comb(1, other, self.p() - 1)
    }

    /// `a * self + b * other`.
    pub fn lin_comb(&self, a: u32, other: &Self, b: u32) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("shape mismatch in sum".into()));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| merge_rows(f, x, a, y, b))
            .collect();
        Ok(FpMatrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, a: u32) -> Self {
        let f = self.field;
        let a = a % f.p();
        let data = if a == 0 {
            vec![Vec::new(); self.rows]
        } else {
            self.data
                .iter()
                .map(|r| r.iter().map(|&(c, x)| (c, f.mul(a, x))).collect())
                .collect()
        };
        FpMatrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product, with `(i, k)` indexing row `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = self.field;
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for &(ca, xa) in ra {
                    for &(cb, xb) in rb {
                        row.push((ca * other.cols + cb, f.mul(xa, xb)));
                    }
                }
                data.push(row);
            }
        }
        Ok(FpMatrix { field: f, rows: self.rows * other.rows, cols: self.cols * other.cols, data })
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&FpMatrix]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty vstack".into()))?;
        let mut data = Vec::new();
        for m in parts {
            first.check_field(m)?;
            if m.cols != first.cols {
                return Err(Error::DimensionMismatch("vstack column counts differ".into()));
            }
            data.extend(m.data.iter().cloned());
        }
        Ok(FpMatrix { field: first.field, rows: data.len(), cols: first.cols, data })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        self.data
            .iter()
            .map(|row| row.iter().fold(0, |s, &(c, x)| f.add(s, f.mul(x, v[c]))))
            .collect()
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(parts: &[&FpMatrix]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty hstack".into()))?;
        let mut data = vec![Vec::new(); first.rows];
        let mut offset = 0;
        for m in parts {
            first.check_field(m)?;
            if m.rows != first.rows {
                return Err(Error::DimensionMismatch("hstack row counts differ".into()));
            }
            for (out, row) in data.iter_mut().zip(&m.data) {
                out.extend(row.iter().map(|&(c, x)| (c + offset, x)));
            }
            offset += m.cols;
        }
        Ok(FpMatrix { field: first.field, rows: first.rows, cols: offset, data })
    }

    /// True when every row and every column holds exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        if self.rows != self.cols || self.data.iter().any(|r| r.len() != 1) {
            return false;
        }
        let mut seen = vec![false; self.cols];
        self.data.iter().all(|r| !std::mem::replace(&mut seen[r[0].0], true))
    }

    pub fn inverse(&self) -> Result<Self> {
        let f = self.field;
        let n = self.rows;
        if self.cols != n {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        if self.is_monomial() {
            let mut data = vec![Vec::new(); n];
            for (r, row) in self.data.iter().enumerate() {
                let (c, x) = row[0];
                data[c].push((r, f.inv(x)));
            }
            return Ok(FpMatrix { field: f, rows: n, cols: n, data });
        }
        let mut e = Echelon::sparse(f, 2 * n);
        for (r, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            aug.push((n + r, 1));
            e.insert_sparse(&aug);
        }
        let rref = e.rref();
        if rref.len() < n || rref.iter().take(n).enumerate().any(|(i, r)| r[0].0 != i || r.get(1).is_some_and(|&(c, _)| c < n)) {
            return Err(Error::Validation("matrix is singular".into()));
        }
        let data = rref.into_iter().map(|r| r[1..].iter().map(|&(c, x)| (c - n, x)).collect()).collect();
        Ok(FpMatrix { field: f, rows: n, cols: n, data })
    }

    fn echelon_of_rows(&self) -> Echelon {
        let mut e = Echelon::for_density(self.field, self.cols, self.density());
        for row in &self.data {
            if e.is_full() {
                break;
            }
            e.insert_sparse(row);
        }
        e
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.cols > self.rows {
            self.transpose().echelon_of_rows().rank()
        } else {
            self.echelon_of_rows().rank()
        }
    }

    /// Row space as a subspace of F_p^cols.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_echelon(&self.echelon_of_rows())
    }

    /// Right kernel `{x : m x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let rref = self.echelon_of_rows().rref();
        let mut is_pivot = vec![false; self.cols];
        for row in &rref {
            is_pivot[row[0].0] = true;
        }
        let mut basis: Vec<Vec<(usize, u32)>> = Vec::new();
        // column index -> (pivot row index, entry) lookups per free column
        let mut by_col: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.cols];
        for row in &rref {
            let pc = row[0].0;
            for &(c, x) in &row[1..] {
                by_col[c].push((pc, x));
            }
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v: Vec<(usize, u32)> = by_col[free].iter().map(|&(pc, x)| (pc, f.neg(x))).collect();
            v.push((free, 1));
            v.sort_unstable_by_key(|&(c, _)| c);
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis)
    }

    /// Column space as a subspace of F_p^rows.
    pub fn image(&self) -> Subspace {
        self.transpose().row_space()
    }
}

fn normalize_row(f: Fp, row: &mut SparseVec) {
    row.sort_unstable_by_key(|&(c, _)| c);
    let mut out: SparseVec = Vec::with_capacity(row.len());
    for &(c, x) in row.iter() {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = f.add(*lx, x % f.p()),
            _ => out.push((c, x % f.p())),
        }
    }
    out.retain(|&(_, x)| x != 0);
    *row = out;
}

pub(crate) fn merge_rows(f: Fp, x: &[(usize, u32)], a: u32, y: &[(usize, u32)], b: u32) -> SparseVec {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (c, v) = if take_x {
            i += 1;
            (x[i - 1].0, f.mul(a, x[i - 1].1))
        } else if take_y {
            j += 1;
            (y[j - 1].0, f.mul(b, y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, f.add(f.mul(a, x[i - 1].1), f.mul(b, y[j - 1].1)))
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}
