use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Eigenpairs of a small dense symmetric matrix, ascending.
pub fn sym_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let se = a.clone().symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &se.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Solves the generalized symmetric eigenproblem `A x = lambda M x` with `M`
/// positive definite, via the Cholesky reduction `L^-1 A L^-T`. Returns
/// ascending eigenvalues and M-orthonormal eigenvectors as matrix columns.
pub fn generalized_sym_eigen(a: &DMatrix<f64>, m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let chol = m
        .clone()
        .cholesky()
        .ok_or_else(|| Error::SingularSystem("mass matrix not positive definite".into()))?;
    let l = chol.l();
    // B = L^-1 A L^-T
    let mut b = a.clone();
    // solve L X = A  (column-wise forward substitution)
    for j in 0..b.ncols() {
        let mut col = b.column(j).into_owned();
        l.solve_lower_triangular_mut(&mut col);
        b.set_column(j, &col);
    }
    // solve X L^T = B  <=>  L Y^T = B^T
    let mut bt = b.transpose();
    for j in 0..bt.ncols() {
        let mut col = bt.column(j).into_owned();
        l.solve_lower_triangular_mut(&mut col);
        bt.set_column(j, &col);
    }
    let sym = (bt.transpose() + &bt) * 0.5;
    let (vals, y) = sym_eigen(&sym.transpose()); // sym already symmetric; transpose is a no-op copy
    // x = L^-T y
    let mut x = y;
    for j in 0..x.ncols() {
        let mut col = x.column(j).into_owned();
        l.transpose().solve_upper_triangular_mut(&mut col);
        x.set_column(j, &col);
    }
    Ok((vals, x))
}

/// Dimension of the kernel of a dense symmetric matrix, counting eigenvalues
/// below `tol * max|lambda|`.
pub fn kernel_dimension(a: &DMatrix<f64>, tol: f64) -> usize {
    let (vals, _) = sym_eigen(a);
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    vals.iter().filter(|v| v.abs() <= tol * scale).count()
}

/// Convenience: DVector from slice.
pub fn dvec(x: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_eigen_recovers_diagonal_pair() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 6.0, 12.0]));
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 3.0]));
        let (vals, vecs) = generalized_sym_eigen(&a, &m).unwrap();
        for (v, expect) in vals.iter().zip([2.0, 3.0, 4.0]) {
            assert!((v - expect).abs() < 1e-12);
        }
        // M-orthonormal columns
        let g = vecs.transpose() * m * &vecs;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kernel_dimension_counts_null_modes() {
        let mut a = DMatrix::zeros(3, 3);
        a[(0, 0)] = 1.0;
        assert_eq!(kernel_dimension(&a, 1e-12), 2);
    }
}
