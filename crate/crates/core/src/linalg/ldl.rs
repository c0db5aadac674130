use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::Scalar;

/// H = L · diag(D) · L* with L unit lower triangular and D real.
#[derive(Clone, Debug, PartialEq)]
pub struct LdlFactorization<S> {
    pub l: Array2<S>,
    pub d: Array1<S>,
}

/// LDL* without pivoting. Fails at the first pivot that is not positive,
/// so success certifies positive definiteness (exactly, in exact mode).
pub fn ldl_decompose<S: Scalar>(h: &HermitianMatrix<S>) -> Result<LdlFactorization<S>> {
    let n = h.size();
    let a = h.entries();
    let max_diag = h.max_diag_abs();
    let mut l = Array2::from_elem((n, n), S::zero());
    let mut d: Array1<S> = Array1::from_elem(n, S::zero());
    // ld[i][k] = L_ik * d_k for k < i
    let mut ld = Array2::from_elem((n, n), S::zero());

    for j in 0..n {
        let mut pivot = a[[j, j]].clone();
        for k in 0..j {
            pivot = pivot.sub_mul(&ld[[j, k]], &l[[j, k]].conj());
        }
        let pivot = pivot.real();
        if !pivot.is_positive_pivot(max_diag) {
            return Err(Error::NotPositiveDefinite(j));
        }
        l[[j, j]] = S::one();
        for i in (j + 1)..n {
            let mut v = a[[i, j]].clone();
            for k in 0..j {
                v = v.sub_mul(&ld[[i, k]], &l[[j, k]].conj());
            }
            ld[[i, j]] = v.clone();
            l[[i, j]] = v / pivot.clone();
        }
        d[j] = pivot;
    }
    Ok(LdlFactorization { l, d })
}

impl<S: Scalar> LdlFactorization<S> {
    pub fn size(&self) -> usize {
        self.d.len()
    }

    /// L · diag(D) · L*.
    pub fn reconstruct(&self) -> Array2<S> {
        let n = self.size();
        let mut out = Array2::from_elem((n, n), S::zero());
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for k in 0..=i.min(j) {
                    let t = self.l[[i, k]].mul_ref(&self.d[k]);
                    acc = acc + t.mul_ref(&self.l[[j, k]].conj());
                }
                out[[i, j]] = acc;
            }
        }
        out
    }

    /// L⁻¹, again unit lower triangular. Row n holds the coefficients of the
    /// monic polynomial of degree n orthogonal to all lower degrees.
    pub fn inverse_l(&self) -> Array2<S> {
        unit_lower_inverse(&self.l)
    }
}

/// Inverse of a unit lower-triangular matrix by forward substitution.
pub fn unit_lower_inverse<S: Scalar>(l: &Array2<S>) -> Array2<S> {
    let n = l.nrows();
    let mut inv = Array2::from_elem((n, n), S::zero());
    for i in 0..n {
        inv[[i, i]] = S::one();
        for j in 0..i {
            // inv[i][j] = -Σ_{k=j}^{i-1} L[i][k] inv[k][j]
            let mut acc = S::zero();
            for k in j..i {
                acc = acc.sub_mul(&l[[i, k]], &inv[[k, j]]);
            }
            inv[[i, j]] = acc;
        }
    }
    inv
}
