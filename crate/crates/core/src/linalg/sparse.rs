use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Triplet accumulator used during element assembly. Duplicate entries add.
#[derive(Debug, Clone, Default)]
pub struct TripletBuffer {
    rows: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl TripletBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: usize, col: usize, val: f64) {
        if val != 0.0 {
            self.rows.push(row);
            self.cols.push(col);
            self.vals.push(val);
        }
    }

    pub fn append(&mut self, other: &TripletBuffer) {
        self.rows.extend_from_slice(&other.rows);
        self.cols.extend_from_slice(&other.cols);
        self.vals.extend_from_slice(&other.vals);
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }
}

/// Row-compressed sparse matrix. Used both for the symmetric operators
/// (stiffness, mass) where both triangles are stored, and for the
/// rectangular gradient coupling.
#[derive(Debug, Clone)]
pub struct RectOp {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl RectOp {
    /// Compresses triplets into CSR, summing duplicates. Deterministic for a
    /// fixed triplet order.
    pub fn from_triplets(nrows: usize, ncols: usize, t: &TripletBuffer) -> Self {
        let mut counts = vec![0usize; nrows + 1];
        for &r in &t.rows {
            counts[r + 1] += 1;
        }
        for i in 0..nrows {
            counts[i + 1] += counts[i];
        }
        let mut col_idx = vec![0usize; t.len()];
        let mut values = vec![0.0f64; t.len()];
        let mut next = counts.clone();
        for k in 0..t.len() {
            let r = t.rows[k];
            let slot = next[r];
            col_idx[slot] = t.cols[k];
            values[slot] = t.vals[k];
            next[r] += 1;
        }
        // sort each row by column and merge duplicates
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut out_cols = Vec::with_capacity(t.len());
        let mut out_vals = Vec::with_capacity(t.len());
        for r in 0..nrows {
            let lo = counts[r];
            let hi = counts[r + 1];
            let mut entries: Vec<(usize, f64)> = (lo..hi).map(|k| (col_idx[k], values[k])).collect();
            entries.sort_by_key(|e| e.0);
            for (c, v) in entries {
                if let Some(last) = out_cols.last() {
                    if *last == c && out_cols.len() > row_ptr[r] {
                        *out_vals.last_mut().unwrap() += v;
                        continue;
                    }
                }
                out_cols.push(c);
                out_vals.push(v);
            }
            row_ptr[r + 1] = out_cols.len();
        }
        Self {
            nrows,
            ncols,
            row_ptr,
            col_idx: out_cols,
            values: out_vals,
        }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            row_ptr: vec![0; nrows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (self.col_idx[k], self.values[k]))
    }

    /// y = A x
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.ncols);
        let mut y = vec![0.0; self.nrows];
        for r in 0..self.nrows {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            y[r] = acc;
        }
        y
    }

    /// y = A^T x
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.nrows);
        let mut y = vec![0.0; self.ncols];
        for r in 0..self.nrows {
            let xr = x[r];
            if xr == 0.0 {
                continue;
            }
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                y[self.col_idx[k]] += self.values[k] * xr;
            }
        }
        y
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            for (c, v) in self.row(r) {
                m[(r, c)] += v;
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Sparse symmetric operator in row-compressed form; both triangles stored.
#[derive(Debug, Clone)]
pub struct SparseSymOp {
    inner: RectOp,
}

impl SparseSymOp {
    /// Builds from triplets of the full matrix (both triangles present, or a
    /// symmetric triplet stream). Verifies numerical symmetry.
    pub fn from_triplets(dim: usize, t: &TripletBuffer) -> Result<Self> {
        let inner = RectOp::from_triplets(dim, dim, t);
        let op = Self { inner };
        let asym = op.symmetry_defect();
        let scale = op.inner.max_abs().max(1.0);
        if asym > 1e-12 * scale {
            return Err(Error::DimensionMismatch(format!(
                "operator not symmetric: defect {asym:.3e} vs scale {scale:.3e}"
            )));
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn nnz(&self) -> usize {
        self.inner.nnz()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.inner.apply(x)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.inner.row(r)
    }

    /// x^T A y
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        self.inner
            .apply(y)
            .iter()
            .zip(x)
            .map(|(ay, xv)| ay * xv)
            .sum()
    }

    /// x^T A x
    pub fn quadratic(&self, x: &[f64]) -> f64 {
        self.bilinear(x, x)
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.max_abs()
    }

    /// max_ij |A_ij - A_ji|
    pub fn symmetry_defect(&self) -> f64 {
        let mut defect = 0.0f64;
        for r in 0..self.dim() {
            for (c, v) in self.inner.row(r) {
                let mut vt = 0.0;
                for (c2, v2) in self.inner.row(c) {
                    if c2 == r {
                        vt = v2;
                        break;
                    }
                }
                defect = defect.max((v - vt).abs());
            }
        }
        defect
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        self.inner.to_dense()
    }

    /// A + s*B, pattern union.
    pub fn add_scaled(&self, other: &SparseSymOp, s: f64) -> Self {
        assert_eq!(self.dim(), other.dim());
        let mut t = TripletBuffer::new();
        for r in 0..self.dim() {
            for (c, v) in self.row(r) {
                t.push(r, c, v);
            }
            for (c, v) in other.row(r) {
                t.push(r, c, s * v);
            }
        }
        Self {
            inner: RectOp::from_triplets(self.dim(), self.dim(), &t),
        }
    }

    /// Writes the lower triangle in MatrixMarket coordinate format.
    pub fn write_matrix_market(&self, path: &Path) -> Result<()> {
        let mut nnz_lower = 0usize;
        for r in 0..self.dim() {
            for (c, _) in self.row(r) {
                if c <= r {
                    nnz_lower += 1;
                }
            }
        }
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "%%MatrixMarket matrix coordinate real symmetric")?;
        writeln!(f, "{} {} {}", self.dim(), self.dim(), nnz_lower)?;
        for r in 0..self.dim() {
            for (c, v) in self.row(r) {
                if c <= r {
                    writeln!(f, "{} {} {:.17e}", r + 1, c + 1, v)?;
                }
            }
        }
        Ok(())
    }
}

/// Euclidean basis vector.
pub fn unit_vector(dim: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[k] = 1.0;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_duplicates() {
        let mut t = TripletBuffer::new();
        t.push(0, 1, 2.0);
        t.push(0, 1, 3.0);
        t.push(1, 0, 5.0);
        t.push(1, 1, 1.0);
        let m = RectOp::from_triplets(2, 2, &t);
        assert_eq!(m.nnz(), 3);
        let d = m.to_dense();
        assert_eq!(d[(0, 1)], 5.0);
        assert_eq!(d[(1, 0)], 5.0);
        assert_eq!(d[(1, 1)], 1.0);
    }

    #[test]
    fn symmetric_rejects_asymmetry() {
        let mut t = TripletBuffer::new();
        t.push(0, 1, 1.0);
        t.push(1, 0, 2.0);
        assert!(SparseSymOp::from_triplets(2, &t).is_err());
    }

    #[test]
    fn transpose_apply_matches_dense() {
        let mut t = TripletBuffer::new();
        t.push(0, 0, 1.0);
        t.push(0, 2, -4.0);
        t.push(1, 1, 2.5);
        let m = RectOp::from_triplets(2, 3, &t);
        let x = vec![1.0, 2.0];
        let y = m.apply_transpose(&x);
        let yd = m.to_dense().transpose() * nalgebra::DVector::from_vec(x);
        for (a, b) in y.iter().zip(yd.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
