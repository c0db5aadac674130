//! Dense Hermitian truncations.

use ndarray::{s, Array2};

use crate::error::{Error, Result};
use crate::scalar::{Complex64, ExactComplex, Scalar};

/// Finite (n+1)×(n+1) section of an infinite Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix<S> {
    entries: Array2<S>,
}

impl<S: Scalar> HermitianMatrix<S> {
    /// Validates shape and the Hermitian property.
    pub fn new(entries: Array2<S>) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != c || r == 0 {
            return Err(Error::SizeMismatch(format!(
                "expected non-empty square matrix, got {r}x{c}"
            )));
        }
        let scale = entries
            .iter()
            .map(|v| v.to_c64().norm())
            .fold(0.0, f64::max);
        for i in 0..r {
            for j in i..r {
                if !entries[[i, j]].conj_matches(&entries[[j, i]], scale) {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Builds from the upper triangle; the lower triangle is filled by conjugation
    /// and the diagonal is forced real.
    pub fn from_upper(size: usize, mut upper: impl FnMut(usize, usize) -> S) -> Self {
        assert!(size >= 1, "truncation size must be at least 1");
        let mut entries = Array2::from_elem((size, size), S::zero());
        for i in 0..size {
            entries[[i, i]] = upper(i, i).real();
            for j in (i + 1)..size {
                let v = upper(i, j);
                entries[[j, i]] = v.conj();
                entries[[i, j]] = v;
            }
        }
        Self { entries }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_upper(size, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(diag: &[S]) -> Self {
        Self::from_upper(
            diag.len(),
            |i, j| if i == j { diag[i].clone() } else { S::zero() },
        )
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    /// Degree bound n of a size n+1 truncation.
    pub fn degree(&self) -> usize {
        self.size() - 1
    }

    pub fn entries(&self) -> &Array2<S> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<S> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[[i, j]]
    }

    /// Leading (n+1)×(n+1) block.
    pub fn leading(&self, n: usize) -> Result<Self> {
        if n >= self.size() {
            return Err(Error::SizeMismatch(format!(
                "requested degree {n} from a truncation of size {}",
                self.size()
            )));
        }
        Ok(Self {
            entries: self.entries.slice(s![..=n, ..=n]).to_owned(),
        })
    }

    /// Principal block on indices `start..start+len`.
    pub fn block(&self, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > self.size() {
            return Err(Error::SizeMismatch(format!(
                "block {start}..{} outside size {}",
                start + len,
                self.size()
            )));
        }
        Ok(Self {
            entries: self
                .entries
                .slice(s![start..start + len, start..start + len])
                .to_owned(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            entries: self.entries.mapv(|v| v * c.clone()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(format!(
                "{} vs {}",
                self.size(),
                other.size()
            )));
        }
        let mut entries = self.entries.clone();
        entries.zip_mut_with(&other.entries, |a, b| *a = a.clone() + b.clone());
        Ok(Self { entries })
    }

    pub fn to_float(&self) -> HermitianMatrix<Complex64> {
        HermitianMatrix {
            entries: self.entries.mapv(|v| v.to_c64()),
        }
    }

    pub fn max_diag_abs(&self) -> f64 {
        (0..self.size())
            .map(|i| self.entries[[i, i]].to_c64().re.abs())
            .fold(0.0, f64::max)
    }
}

/// Truncation with its scalar mode known only at runtime (file IO, CLI).
#[derive(Clone, Debug, PartialEq)]
pub enum Truncation {
    Exact(HermitianMatrix<ExactComplex>),
    Float(HermitianMatrix<Complex64>),
}

impl Truncation {
    pub fn size(&self) -> usize {
        match self {
            Truncation::Exact(m) => m.size(),
            Truncation::Float(m) => m.size(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Truncation::Exact(_))
    }

    pub fn to_float(&self) -> HermitianMatrix<Complex64> {
        match self {
            Truncation::Exact(m) => m.to_float(),
            Truncation::Float(m) => m.clone(),
        }
    }
}

/// Dense product of two general matrices.
pub fn matmul<S: Scalar>(a: &Array2<S>, b: &Array2<S>) -> Array2<S> {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions differ");
    let mut out = Array2::from_elem((a.nrows(), b.ncols()), S::zero());
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            let aik = &a[[i, k]];
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.ncols() {
                out[[i, j]] = out[[i, j]].clone() + aik.mul_ref(&b[[k, j]]);
            }
        }
    }
    out
}

/// Conjugate transpose.
pub fn adjoint<S: Scalar>(a: &Array2<S>) -> Array2<S> {
    let mut out = Array2::from_elem((a.ncols(), a.nrows()), S::zero());
    for ((i, j), v) in a.indexed_iter() {
        out[[j, i]] = v.conj();
    }
    out
}
