//! Incremental row reduction over F_p.
//!
//! Rows are inserted one at a time and reduced against the pivots found so far,
//! scanning columns left to right. The first surviving nonzero column becomes the
//! new pivot, so the result only depends on the insertion order.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::field::Fp;

pub type SparseVec = Vec<(usize, u32)>;

const NO_PIVOT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Echelon {
    field: Fp,
    width: usize,
    engine: Engine,
}

#[derive(Debug, Clone)]
enum Engine {
    Dense(DenseRows),
    Sparse(SparseRows),
}

#[derive(Debug, Clone)]
struct DenseRows {
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    pivot_row: Vec<u32>,
}

#[derive(Debug, Clone)]
struct SparseRows {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<u32>,
    scratch: Vec<u32>,
    queued: Vec<bool>,
}

impl Echelon {
    pub fn dense(field: Fp, width: usize) -> Self {
        Echelon {
            field,
            width,
            engine: Engine::Dense(DenseRows {
                rows: Vec::new(),
                pivots: Vec::new(),
                pivot_row: vec![NO_PIVOT; width],
            }),
        }
    }

    pub fn sparse(field: Fp, width: usize) -> Self {
        Echelon {
            field,
            width,
            engine: Engine::Sparse(SparseRows {
                rows: Vec::new(),
                pivots: Vec::new(),
                pivot_row: vec![NO_PIVOT; width],
                scratch: vec![0; width],
                queued: vec![false; width],
            }),
        }
    }

    /// Picks the dense engine for narrow or dense inputs.
    pub fn for_density(field: Fp, width: usize, density: f64) -> Self {
        if width <= 64 || density > 0.25 {
            Self::dense(field, width)
        } else {
            Self::sparse(field, width)
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.pivots().len()
    }

    /// Pivot column of each stored row, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        match &self.engine {
            Engine::Dense(d) => &d.pivots,
            Engine::Sparse(s) => &s.pivots,
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.width
    }

    /// Inserts a sparse row; returns `true` if it was independent of the stored rows.
    pub fn insert_sparse(&mut self, v: &[(usize, u32)]) -> bool {
        match &mut self.engine {
            Engine::Dense(d) => {
                let mut dense = vec![0u32; self.width];
                for &(c, x) in v {
                    dense[c] = self.field.add(dense[c], x % self.field.p());
                }
                d.insert(self.field, dense)
            }
            Engine::Sparse(s) => s.insert(self.field, v),
        }
    }

    /// Inserts a dense row of residues; returns `true` if it was independent.
    pub fn insert_dense(&mut self, v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.width);
        match &mut self.engine {
            Engine::Dense(d) => d.insert(self.field, v),
            Engine::Sparse(s) => {
                let sv: SparseVec = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x % self.field.p() != 0)
                    .map(|(i, &x)| (i, x % self.field.p()))
                    .collect();
                s.insert(self.field, &sv)
            }
        }
    }

    /// Rows in row echelon form (leading entry 1), in insertion order.
    pub fn rows(&self) -> Vec<SparseVec> {
        match &self.engine {
            Engine::Dense(d) => d.rows.iter().map(|r| to_sparse(r)).collect(),
            Engine::Sparse(s) => s.rows.clone(),
        }
    }

    /// Reduced row echelon form, rows sorted by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        let f = self.field;
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by_key(|&i| self.pivots()[i]);
        match &self.engine {
            Engine::Dense(d) => {
                let mut rows: Vec<Vec<u32>> = order.iter().map(|&i| d.rows[i].clone()).collect();
                let piv: Vec<usize> = order.iter().map(|&i| d.pivots[i]).collect();
                for i in (0..rows.len()).rev() {
                    let (head, tail) = rows.split_at_mut(i);
                    let pr = &tail[0];
                    for row in head.iter_mut() {
                        let x = row[piv[i]];
                        if x != 0 {
                            let c = f.neg(x);
                            for (a, &b) in row[piv[i]..].iter_mut().zip(&pr[piv[i]..]) {
                                if b != 0 {
                                    *a = f.add(*a, f.mul(c, b));
                                }
                            }
                        }
                    }
                }
                rows.iter().map(|r| to_sparse(r)).collect()
            }
            Engine::Sparse(s) => {
                let piv: Vec<usize> = order.iter().map(|&i| s.pivots[i]).collect();
                let mut position = vec![NO_PIVOT; self.width];
                for (k, &c) in piv.iter().enumerate() {
                    position[c] = k as u32;
                }
                let mut reduced: Vec<SparseVec> = vec![Vec::new(); piv.len()];
                for k in (0..piv.len()).rev() {
                    let mut acc: BTreeMap<usize, u32> = s.rows[order[k]].iter().copied().collect();
                    let mut cursor = piv[k] + 1;
                    loop {
                        let next = acc
                            .range(cursor..)
                            .find(|(&c, _)| position[c] != NO_PIVOT)
                            .map(|(&c, &x)| (c, x));
                        let Some((c, x)) = next else { break };
                        let other = &reduced[position[c] as usize];
                        let coeff = f.neg(x);
                        for &(j, y) in other {
                            let e = acc.entry(j).or_insert(0);
                            *e = f.add(*e, f.mul(coeff, y));
                            if *e == 0 {
                                acc.remove(&j);
                            }
                        }
                        cursor = c + 1;
                    }
                    reduced[k] = acc.into_iter().collect();
                }
                reduced
            }
        }
    }

    /// Residue of `v` after reduction against the stored rows (zero iff `v` lies in the span).
    pub fn reduce(&mut self, v: &[(usize, u32)]) -> SparseVec {
        let f = self.field;
        let width = self.width;
        match &mut self.engine {
            Engine::Dense(d) => {
                let mut dense = vec![0u32; width];
                for &(c, x) in v {
                    dense[c] = f.add(dense[c], x % f.p());
                }
                d.reduce_in_place(f, &mut dense, usize::MAX);
                to_sparse(&dense)
            }
            Engine::Sparse(s) => s.reduce_full(f, v),
        }
    }

    pub fn contains(&mut self, v: &[(usize, u32)]) -> bool {
        self.reduce(v).is_empty()
    }
}

fn to_sparse(r: &[u32]) -> SparseVec {
    r.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect()
}

fn lazy_limit(p: u32) -> u32 {
    let sq = ((p - 1) as u64) * ((p - 1) as u64);
    ((u32::MAX as u64 - p as u64) / sq.max(1)).min(u32::MAX as u64) as u32
}

impl DenseRows {
    /// Reduces `v` left to right. Stops at the first column that is nonzero and has
    /// no pivot unless `stop_at_new` is `usize::MAX`, in which case every column is
    /// reduced. Returns the first free nonzero column, if any.
    fn reduce_in_place(&self, f: Fp, v: &mut [u32], stop_at_new: usize) -> Option<usize> {
        let p = f.p();
        let limit = lazy_limit(p);
        let mut pending = 0u32;
        let mut first_free = None;
        for col in 0..v.len() {
            let x = v[col] % p;
            v[col] = x;
            if x == 0 {
                continue;
            }
            let r = self.pivot_row[col];
            if r == NO_PIVOT {
                if first_free.is_none() {
                    first_free = Some(col);
                    if stop_at_new != usize::MAX {
                        break;
                    }
                }
                continue;
            }
            let row = &self.rows[r as usize];
            let coeff = p - x;
            v[col] = 0;
            for (a, &b) in v[col + 1..].iter_mut().zip(&row[col + 1..]) {
                *a += coeff * b;
            }
            pending += 1;
            if pending >= limit {
                for a in v[col + 1..].iter_mut() {
                    *a %= p;
                }
                pending = 0;
            }
        }
        for a in v.iter_mut() {
            *a %= p;
        }
        first_free
    }

    fn insert(&mut self, f: Fp, mut v: Vec<u32>) -> bool {
        let Some(col) = self.reduce_in_place(f, &mut v, 0) else {
            return false;
        };
        let inv = f.inv(v[col]);
        for a in v[col..].iter_mut() {
            if *a != 0 {
                *a = f.mul(*a, inv);
            }
        }
        for a in v[..col].iter_mut() {
            *a = 0;
        }
        self.pivot_row[col] = self.rows.len() as u32;
        self.pivots.push(col);
        self.rows.push(v);
        true
    }
}

impl SparseRows {
    fn load(&mut self, f: Fp, v: &[(usize, u32)], heap: &mut BinaryHeap<Reverse<usize>>, touched: &mut Vec<usize>) {
        for &(c, x) in v {
            self.scratch[c] = f.add(self.scratch[c], x % f.p());
            if !self.queued[c] {
                self.queued[c] = true;
                heap.push(Reverse(c));
                touched.push(c);
            }
        }
    }

    fn eliminate(&mut self, f: Fp, c: usize, x: u32, heap: &mut BinaryHeap<Reverse<usize>>, touched: &mut Vec<usize>) {
        let r = self.pivot_row[c] as usize;
        let coeff = f.neg(x);
        for k in 0..self.rows[r].len() {
            let (j, y) = self.rows[r][k];
            self.scratch[j] = f.add(self.scratch[j], f.mul(coeff, y));
            if !self.queued[j] {
                self.queued[j] = true;
                heap.push(Reverse(j));
                touched.push(j);
            }
        }
    }

    fn clear(&mut self, touched: &[usize]) {
        for &c in touched {
            self.scratch[c] = 0;
            self.queued[c] = false;
        }
    }

    fn insert(&mut self, f: Fp, v: &[(usize, u32)]) -> bool {
        let mut heap = BinaryHeap::new();
        let mut touched = Vec::new();
        self.load(f, v, &mut heap, &mut touched);
        let mut result = None;
        while let Some(Reverse(c)) = heap.pop() {
            self.queued[c] = false;
            let x = self.scratch[c];
            if x == 0 {
                continue;
            }
            if self.pivot_row[c] != NO_PIVOT {
                self.eliminate(f, c, x, &mut heap, &mut touched);
                continue;
            }
            // new pivot: the rest of the row is whatever is still queued
            let inv = f.inv(x);
            let mut row = vec![(c, 1u32)];
            while let Some(Reverse(j)) = heap.pop() {
                self.queued[j] = false;
                let y = self.scratch[j];
                if y != 0 {
                    row.push((j, f.mul(y, inv)));
                }
            }
            result = Some((c, row));
            break;
        }
        self.clear(&touched);
        match result {
            Some((c, row)) => {
                self.pivot_row[c] = self.rows.len() as u32;
                self.pivots.push(c);
                self.rows.push(row);
                true
            }
            None => false,
        }
    }

    fn reduce_full(&mut self, f: Fp, v: &[(usize, u32)]) -> SparseVec {
        let mut heap = BinaryHeap::new();
        let mut touched = Vec::new();
        self.load(f, v, &mut heap, &mut touched);
        let mut out = Vec::new();
        while let Some(Reverse(c)) = heap.pop() {
            self.queued[c] = false;
            let x = self.scratch[c];
            if x == 0 {
                continue;
            }
            if self.pivot_row[c] != NO_PIVOT {
                self.eliminate(f, c, x, &mut heap, &mut touched);
            } else {
                out.push((c, x));
            }
        }
        self.clear(&touched);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(f: Fp, w: usize) -> [Echelon; 2] {
        [Echelon::dense(f, w), Echelon::sparse(f, w)]
    }

    #[test]
    fn engines_agree_on_small_input() {
        let f = Fp::new(5).unwrap();
        let rows: Vec<SparseVec> = vec![
            vec![(1, 2), (3, 1)],
            vec![(0, 1), (1, 1)],
            vec![(0, 2), (1, 4), (3, 1)],
            vec![(2, 3)],
        ];
        for mut e in both(f, 4) {
            let flags: Vec<bool> = rows.iter().map(|r| e.insert_sparse(r)).collect();
            assert_eq!(flags, vec![true, true, false, true]);
            assert_eq!(e.rank(), 3);
            let rref = e.rref();
            assert_eq!(rref[0][0], (0, 1));
            assert!(e.contains(&[(0, 1), (1, 1)]));
            assert!(!e.contains(&[(3, 1)]));
        }
    }

    #[test]
    fn lazy_reduction_survives_many_ops() {
        // p = 2^15 - 19 is the largest prime we accept; forces frequent flushes
        let f = Fp::new(32749).unwrap();
        let w = 40;
        let mut e = Echelon::dense(f, w);
        for i in 0..w {
            let v: Vec<u32> = (0..w).map(|j| ((i * 7919 + j * 104729) % 32749) as u32).collect();
            e.insert_dense(v);
        }
        let mut s = Echelon::sparse(f, w);
        for i in 0..w {
            let v: Vec<u32> = (0..w).map(|j| ((i * 7919 + j * 104729) % 32749) as u32).collect();
            s.insert_dense(v);
        }
        assert_eq!(e.rank(), s.rank());
        assert_eq!(e.rref(), s.rref());
    }
}
