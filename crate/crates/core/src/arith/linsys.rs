//! Incremental sparse row echelon form.
//!
//! Rows are kept fully reduced (every pivot column is zero in every other row),
//! which makes kernel bases and particular solutions direct to read off.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{CyclotomicField, CyclotomicScalar};

/// Sparse vector: `(column, value)` pairs sorted by column, no zero values.
pub type SparseVec = Vec<(usize, CyclotomicScalar)>;

#[derive(Clone)]
pub struct Echelon {
    field: Arc<CyclotomicField>,
    ncols: usize,
    /// Each row has leading entry 1 at its pivot column.
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: &Arc<CyclotomicField>, ncols: usize) -> Self {
        Self {
            field: Arc::clone(field),
            ncols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a dense vector against the current rows in place.
    fn reduce_dense(&self, buf: &mut [CyclotomicScalar]) {
        for (&p, &r) in &self.pivot_row {
            if buf[p].is_zero() {
                continue;
            }
            let c = buf[p].clone();
            for (j, a) in &self.rows[r] {
                let t = &c * a;
                buf[*j] -= &t;
            }
        }
    }

    fn densify(&self, v: &[(usize, CyclotomicScalar)]) -> Vec<CyclotomicScalar> {
        let mut buf = vec![self.field.zero(); self.ncols];
        for (j, a) in v {
            buf[*j] += a;
        }
        buf
    }

    /// Residue of `v` modulo the row space, as a sparse vector.
    pub fn reduce(&self, v: &[(usize, CyclotomicScalar)]) -> SparseVec {
        let mut buf = self.densify(v);
        self.reduce_dense(&mut buf);
        sparsify(buf)
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[(usize, CyclotomicScalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &[(usize, CyclotomicScalar)]) -> bool {
        let residue = self.reduce(v);
        self.insert_reduced(residue)
    }

    pub fn insert_dense(&mut self, v: Vec<CyclotomicScalar>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let mut buf = v;
        self.reduce_dense(&mut buf);
        self.insert_reduced(sparsify(buf))
    }

    fn insert_reduced(&mut self, residue: SparseVec) -> bool {
        let Some((pivot, lead)) = residue.first().cloned() else {
            return false;
        };
        let inv = lead.inverse().expect("nonzero lead");
        let row: SparseVec = residue.into_iter().map(|(j, a)| (j, &a * &inv)).collect();
        // clear the new pivot column from existing rows
        for existing in &mut self.rows {
            let Ok(pos) = existing.binary_search_by_key(&pivot, |(j, _)| *j) else {
                continue;
            };
            let c = existing[pos].1.clone();
            *existing = axpy(existing, &c, &row);
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn has_pivot(&self, column: usize) -> bool {
        self.pivot_row.contains_key(&column)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Basis of `{x : r·x = 0 for every row r}`, as dense vectors.
    pub fn kernel(&self) -> Vec<Vec<CyclotomicScalar>> {
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.pivot_row.contains_key(c)) {
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (&p, &r) in &self.pivot_row {
                if let Ok(pos) = self.rows[r].binary_search_by_key(&free, |(j, _)| *j) {
                    v[p] = -&self.rows[r][pos].1;
                }
            }
            out.push(v);
        }
        out
    }

    /// Treats the last column as a right-hand side and returns the solution
    /// with all free variables zero, or `None` if the system is inconsistent.
    pub fn particular_solution(&self) -> Option<Vec<CyclotomicScalar>> {
        let rhs = self.ncols.checked_sub(1)?;
        if self.pivot_row.contains_key(&rhs) {
            return None;
        }
        let mut x = vec![self.field.zero(); rhs];
        for (&p, &r) in &self.pivot_row {
            if let Ok(pos) = self.rows[r].binary_search_by_key(&rhs, |(j, _)| *j) {
                x[p] = self.rows[r][pos].1.clone();
            }
        }
        Some(x)
    }
}

fn sparsify(buf: Vec<CyclotomicScalar>) -> SparseVec {
    buf.into_iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .collect()
}

/// `x - c * y` for sorted sparse vectors.
fn axpy(x: &SparseVec, c: &CyclotomicScalar, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(c * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - &(c * &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Matrix;

    #[test]
    fn matches_dense_kernel() {
        let f = CyclotomicField::new(15);
        let z = f.root_of_unity(1);
        let rows = vec![
            vec![f.one(), z.clone(), f.zero(), f.int(2)],
            vec![f.zero(), f.one(), z.clone(), f.zero()],
            vec![f.one(), &z + &f.one(), z.clone(), f.int(2)],
        ];
        let dense = Matrix::from_rows(&f, rows.clone(), 4);
        let mut e = Echelon::new(&f, 4);
        let ranks: Vec<bool> = rows.into_iter().map(|r| e.insert_dense(r)).collect();
        assert_eq!(ranks, vec![true, true, false]);
        assert_eq!(e.rank(), dense.rank());
        let k = e.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dense.apply(v).iter().all(CyclotomicScalar::is_zero));
        }
    }

    #[test]
    fn particular_solution_and_inconsistency() {
        let f = CyclotomicField::new(3);
        let mut e = Echelon::new(&f, 3);
        // x + y = 2, y = 1
        e.insert_dense(vec![f.one(), f.one(), f.int(2)]);
        e.insert_dense(vec![f.zero(), f.one(), f.one()]);
        let x = e.particular_solution().unwrap();
        assert_eq!(x, vec![f.one(), f.one()]);
        // 0 = 1
        e.insert_dense(vec![f.zero(), f.zero(), f.one()]);
        assert!(e.particular_solution().is_none());
    }
}
