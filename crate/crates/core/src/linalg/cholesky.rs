use ndarray::Array2;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::{Complex64, Scalar, FLOAT_PIVOT_TOL};

/// Lower-triangular L with positive real diagonal such that L·L* = H.
pub fn cholesky_float(h: &HermitianMatrix<Complex64>) -> Result<Array2<Complex64>> {
    let n = h.size();
    let a = h.entries();
    let cutoff = FLOAT_PIVOT_TOL * h.max_diag_abs();
    let mut l = Array2::from_elem((n, n), Complex64::zero());
    for j in 0..n {
        let mut pivot = a[[j, j]].re;
        for k in 0..j {
            pivot -= l[[j, k]].norm_sqr();
        }
        if pivot.is_nan() || pivot <= cutoff {
            return Err(Error::NotPositiveDefinite(j));
        }
        let ljj = pivot.sqrt();
        l[[j, j]] = Complex64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut v = a[[i, j]];
            for k in 0..j {
                v -= l[[i, k]] * l[[j, k]].conj();
            }
            l[[i, j]] = v / ljj;
        }
    }
    Ok(l)
}

/// Solves L·X = B for lower-triangular L, in place on B's columns.
pub fn forward_solve(l: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let n = l.nrows();
    let mut x = b.clone();
    for col in 0..b.ncols() {
        for i in 0..n {
            let mut v = x[[i, col]];
            for k in 0..i {
                v -= l[[i, k]] * x[[k, col]];
            }
            x[[i, col]] = v / l[[i, i]];
        }
    }
    x
}
