//! Cyclic Jacobi eigenvalue iteration for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot entry a_pq with a
//! diagonal unitary and then applies the classical real plane rotation, so
//! the whole step is J = diag(1, e^{-iφ}) · R(c, s) on the (p, q) plane.
//! Off-diagonal entries below `ε·sqrt(|a_pp a_qq|)` are treated as converged,
//! which gives small eigenvalues of graded matrices high relative accuracy.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::Complex64;

pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Clone, Copy, Debug)]
pub struct JacobiConfig {
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        Self {
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigs(h: &HermitianMatrix<Complex64>) -> Result<Vec<f64>> {
    hermitian_eigs_with(h.entries().clone(), JacobiConfig::default())
}

/// Same as [`hermitian_eigs`] on a raw array the caller vouches is Hermitian.
pub fn hermitian_eigs_with(mut a: Array2<Complex64>, cfg: JacobiConfig) -> Result<Vec<f64>> {
    let n = a.nrows();
    for i in 0..n {
        a[[i, i]].im = 0.0;
    }
    let eps = f64::EPSILON;
    let mut converged = n <= 1;
    let mut sweeps = 0;
    while !converged {
        if sweeps == cfg.max_sweeps {
            return Err(Error::NoConvergence(cfg.max_sweeps));
        }
        sweeps += 1;
        converged = true;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                if r <= eps * (app * aqq).abs().sqrt() || r < f64::MIN_POSITIVE {
                    a[[p, q]] = Complex64::new(0.0, 0.0);
                    a[[q, p]] = Complex64::new(0.0, 0.0);
                    continue;
                }
                converged = false;
                rotate(&mut a, p, q, apq, r, app, aqq);
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[[i, i]].re).collect();
    eigs.sort_by(|x, y| x.total_cmp(y));
    Ok(eigs)
}

fn rotate(
    a: &mut Array2<Complex64>,
    p: usize,
    q: usize,
    apq: Complex64,
    r: f64,
    app: f64,
    aqq: f64,
) {
    let n = a.nrows();
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = [[c, s], [-s·conj(e), c·conj(e)]] on (p, q).
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A ← A·J
    for i in 0..n {
        let aip = a[[i, p]];
        let aiq = a[[i, q]];
        a[[i, p]] = aip * jpp + aiq * jqp;
        a[[i, q]] = aip * jpq + aiq * jqq;
    }
    // A ← J*·A
    for j in 0..n {
        let apj = a[[p, j]];
        let aqj = a[[q, j]];
        a[[p, j]] = jpp.conj() * apj + jqp.conj() * aqj;
        a[[q, j]] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    a[[p, q]] = Complex64::new(0.0, 0.0);
    a[[q, p]] = Complex64::new(0.0, 0.0);
    a[[p, p]].im = 0.0;
    a[[q, q]].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_sorted() {
        let h = HermitianMatrix::diagonal(&[c(3., 0.), c(1., 0.), c(2., 0.)]);
        assert_eq!(hermitian_eigs(&h).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two() {
        let h =
            HermitianMatrix::new(array![[c(2., 0.), c(1., 0.)], [c(1., 0.), c(2., 0.)]]).unwrap();
        let e = hermitian_eigs(&h).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-15 && (e[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn identity_five() {
        assert_eq!(
            hermitian_eigs(&HermitianMatrix::identity(5)).unwrap(),
            vec![1.0; 5]
        );
    }

    #[test]
    fn complex_entries() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let h =
            HermitianMatrix::new(array![[c(2., 0.), c(0., 1.)], [c(0., -1.), c(2., 0.)]]).unwrap();
        let e = hermitian_eigs(&h).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn sweep_cap_is_reported() {
        let h =
            HermitianMatrix::new(array![[c(2., 0.), c(1., 0.)], [c(1., 0.), c(2., 0.)]]).unwrap();
        let err = hermitian_eigs_with(h.entries().clone(), JacobiConfig { max_sweeps: 0 });
        assert_eq!(err, Err(Error::NoConvergence(0)));
    }
}
