use crate::error::{Error, Result};
use crate::linalg::sparse::RectOp;

/// Column-profile (skyline) storage of a symmetric matrix. Entry `(i, j)`
/// with `i <= j` lives in column `j` iff `i >= first[j]`; the factorization
/// fill stays inside the profile.
#[derive(Debug, Clone)]
pub struct SkylineProfile {
    n: usize,
    first: Vec<usize>,
    col_ptr: Vec<usize>,
    values: Vec<f64>,
}

impl SkylineProfile {
    /// Builds the envelope of the given symmetric pattern. Every `(i, j)`
    /// pair widens the column of `max(i, j)` down to `min(i, j)`.
    pub fn from_pattern<I: IntoIterator<Item = (usize, usize)>>(n: usize, pattern: I) -> Self {
        let mut first: Vec<usize> = (0..n).collect();
        for (i, j) in pattern {
            let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
            if lo < first[hi] {
                first[hi] = lo;
            }
        }
        let mut col_ptr = vec![0usize; n + 1];
        for j in 0..n {
            col_ptr[j + 1] = col_ptr[j] + (j - first[j] + 1);
        }
        let values = vec![0.0; col_ptr[n]];
        Self {
            n,
            first,
            col_ptr,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn profile_len(&self) -> usize {
        self.values.len()
    }

    pub fn clear(&mut self) {
        self.values.iter_mut().for_each(|v| *v = 0.0);
    }

    /// Adds `v` at `(i, j)` (upper triangle, symmetric source); the pair must
    /// be inside the profile.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        debug_assert!(lo >= self.first[hi], "entry outside skyline profile");
        let idx = self.col_ptr[hi] + (lo - self.first[hi]);
        self.values[idx] += v;
    }

    fn get(&self, lo: usize, hi: usize) -> f64 {
        if lo < self.first[hi] {
            0.0
        } else {
            self.values[self.col_ptr[hi] + (lo - self.first[hi])]
        }
    }

    /// LDL^T factorization without pivoting. `sign_hints`, when given, carry
    /// the expected inertia (+1/-1 per unknown) used for dynamic
    /// regularization of breakdown pivots; `None` entries leave a tiny pivot
    /// with its computed sign.
    pub fn factorize(&self, sign_hints: Option<&[i8]>) -> Result<SkylineFactor> {
        let n = self.n;
        let mut l = self.values.clone(); // will hold scaled columns L(j, k)
        let mut d = vec![0.0f64; n];
        let mut scale = 0.0f64;
        for j in 0..n {
            scale = scale.max(self.get(j, j).abs());
        }
        if scale == 0.0 {
            scale = 1.0;
        }
        let breakdown = 1e-14 * scale;
        let reg = 1e-12 * scale;
        let mut regularized = 0usize;
        let mut neg = 0usize;

        // cc[i] = D(i) * L(j, i) for the column j in progress
        let mut cc = vec![0.0f64; n];
        for j in 0..n {
            let fj = self.first[j];
            for i in fj..j {
                let fi = self.first[i];
                let lo = fi.max(fj);
                let mut c = l[self.col_ptr[j] + (i - fj)];
                // subtract sum_k L(i,k) * cc(k)
                let off_i = self.col_ptr[i] - fi;
                for k in lo..i {
                    c -= l[off_i + k] * cc[k];
                }
                cc[i] = c;
                l[self.col_ptr[j] + (i - fj)] = c; // rescaled below
            }
            let mut dj = l[self.col_ptr[j] + (j - fj)];
            for k in fj..j {
                let lkj = cc[k] / d[k];
                dj -= lkj * cc[k];
                l[self.col_ptr[j] + (k - fj)] = lkj;
            }
            if dj.abs() < breakdown {
                let sign = match sign_hints {
                    Some(h) if h[j] < 0 => -1.0,
                    Some(h) if h[j] > 0 => 1.0,
                    _ => {
                        if dj < 0.0 {
                            -1.0
                        } else {
                            1.0
                        }
                    }
                };
                dj = sign * reg;
                regularized += 1;
            }
            if dj < 0.0 {
                neg += 1;
            }
            d[j] = dj;
        }
        Ok(SkylineFactor {
            n,
            first: self.first.clone(),
            col_ptr: self.col_ptr.clone(),
            l,
            d,
            negative_pivots: neg,
            regularized_pivots: regularized,
        })
    }
}

/// LDL^T factor in skyline storage.
#[derive(Debug, Clone)]
pub struct SkylineFactor {
    n: usize,
    first: Vec<usize>,
    col_ptr: Vec<usize>,
    l: Vec<f64>,
    d: Vec<f64>,
    negative_pivots: usize,
    regularized_pivots: usize,
}

impl SkylineFactor {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Inertia diagnostic: (positive, negative) pivot counts.
    pub fn inertia(&self) -> (usize, usize) {
        (self.n - self.negative_pivots, self.negative_pivots)
    }

    pub fn regularized_pivots(&self) -> usize {
        self.regularized_pivots
    }

    /// Solves A x = b in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        debug_assert_eq!(b.len(), self.n);
        // forward: L y = b
        for j in 0..self.n {
            let fj = self.first[j];
            let mut acc = b[j];
            let off = self.col_ptr[j] - fj;
            for k in fj..j {
                acc -= self.l[off + k] * b[k];
            }
            b[j] = acc;
        }
        // diagonal
        for j in 0..self.n {
            b[j] /= self.d[j];
        }
        // backward: L^T x = z
        for j in (0..self.n).rev() {
            let fj = self.first[j];
            let xj = b[j];
            let off = self.col_ptr[j] - fj;
            for k in fj..j {
                b[k] -= self.l[off + k] * xj;
            }
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    /// Solves with a few steps of iterative refinement against the exact
    /// operator `a` (CSR). Restores accuracy lost to pivot regularization.
    pub fn solve_refined(&self, a: &RectOp, b: &[f64], steps: usize) -> Result<Vec<f64>> {
        let mut x = self.solve(b);
        for _ in 0..steps {
            let ax = a.apply(&x);
            let mut r: Vec<f64> = b.iter().zip(&ax).map(|(bi, axi)| bi - axi).collect();
            let rnorm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            let bnorm = b.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
            if !rnorm.is_finite() {
                return Err(Error::SingularSystem(format!(
                    "non-finite refinement residual (inertia {:?})",
                    self.inertia()
                )));
            }
            if rnorm <= 1e-15 * bnorm {
                break;
            }
            self.solve_in_place(&mut r);
            for (xi, ri) in x.iter_mut().zip(&r) {
                *xi += ri;
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sparse::TripletBuffer;

    fn csr_from(entries: &[(usize, usize, f64)], n: usize) -> RectOp {
        let mut t = TripletBuffer::new();
        for &(i, j, v) in entries {
            t.push(i, j, v);
            if i != j {
                t.push(j, i, v);
            }
        }
        RectOp::from_triplets(n, n, &t)
    }

    #[test]
    fn spd_solve_roundtrip() {
        // tridiagonal SPD
        let n = 20;
        let mut entries = Vec::new();
        for i in 0..n {
            entries.push((i, i, 2.0));
            if i + 1 < n {
                entries.push((i, i + 1, -1.0));
            }
        }
        let a = csr_from(&entries, n);
        let mut prof = SkylineProfile::from_pattern(n, entries.iter().map(|e| (e.0, e.1)));
        for &(i, j, v) in &entries {
            prof.add(i, j, v);
        }
        let f = prof.factorize(None).unwrap();
        assert_eq!(f.inertia(), (n, 0));
        let b: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x = f.solve_refined(&a, &b, 2).unwrap();
        let r = a.apply(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).abs() < 1e-12);
        }
    }

    #[test]
    fn indefinite_saddle_inertia() {
        // [2 0 1; 0 2 1; 1 1 0] : one constraint row, inertia (2, 1)
        let entries = vec![
            (0usize, 0usize, 2.0),
            (1, 1, 2.0),
            (0, 2, 1.0),
            (1, 2, 1.0),
        ];
        let a = csr_from(&entries, 3);
        let mut prof = SkylineProfile::from_pattern(3, entries.iter().map(|e| (e.0, e.1)));
        for &(i, j, v) in &entries {
            prof.add(i, j, v);
        }
        let f = prof.factorize(Some(&[1, 1, -1])).unwrap();
        assert_eq!(f.inertia(), (2, 1));
        let b = vec![1.0, 2.0, 0.0];
        let x = f.solve_refined(&a, &b, 2).unwrap();
        let r = a.apply(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).abs() < 1e-12);
        }
        // constraint x0 + x1 = 0 is the last equation
        assert!((x[0] + x[1]).abs() < 1e-12);
    }
}
