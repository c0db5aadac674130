//! Anything that can hand out truncations of an infinite Hermitian matrix.

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::measures::{MeasureSpec, WeightedCircle};
use crate::scalar::Scalar;

pub trait MatrixSource<S: Scalar>: Send + Sync {
    fn label(&self) -> String;

    /// Entry (i, j) of the infinite matrix.
    fn entry(&self, i: usize, j: usize) -> Result<S>;

    /// Largest degree available, or `None` when unbounded.
    fn max_degree(&self) -> Option<usize> {
        None
    }

    /// (n+1)×(n+1) leading section.
    fn truncation(&self, n: usize) -> Result<HermitianMatrix<S>> {
        if let Some(max) = self.max_degree() {
            if n > max {
                return Err(Error::SizeMismatch(format!(
                    "{} only provides degree ≤ {max}, asked for {n}",
                    self.label()
                )));
            }
        }
        let mut err = None;
        let m = HermitianMatrix::from_upper(n + 1, |i, j| match self.entry(i, j) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                S::zero()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(m),
        }
    }

    /// Density on the unit circle, when the source is a weighted circle.
    fn weight(&self) -> Option<&WeightedCircle> {
        None
    }
}

impl<S: Scalar> MatrixSource<S> for MeasureSpec {
    fn label(&self) -> String {
        self.to_string()
    }

    fn entry(&self, i: usize, j: usize) -> Result<S> {
        Ok(S::from_exact(&self.moment(i, j)))
    }

    fn truncation(&self, n: usize) -> Result<HermitianMatrix<S>> {
        Ok(self.moment_matrix_as(n))
    }

    fn weight(&self) -> Option<&WeightedCircle> {
        MeasureSpec::weight(self)
    }
}

impl<S: Scalar> MatrixSource<S> for HermitianMatrix<S> {
    fn label(&self) -> String {
        format!("matrix[{}x{}]", self.size(), self.size())
    }

    fn entry(&self, i: usize, j: usize) -> Result<S> {
        if i >= self.size() || j >= self.size() {
            return Err(Error::SizeMismatch(format!(
                "entry ({i}, {j}) outside size {}",
                self.size()
            )));
        }
        Ok(self.get(i, j).clone())
    }

    fn max_degree(&self) -> Option<usize> {
        Some(self.degree())
    }

    fn truncation(&self, n: usize) -> Result<HermitianMatrix<S>> {
        self.leading(n)
    }
}

/// The infinite identity (moment matrix of the unit-circle measure).
#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl<S: Scalar> MatrixSource<S> for Identity {
    fn label(&self) -> String {
        "identity".into()
    }

    fn entry(&self, i: usize, j: usize) -> Result<S> {
        Ok(if i == j { S::one() } else { S::zero() })
    }
}

impl<S: Scalar, T: MatrixSource<S> + ?Sized> MatrixSource<S> for &T {
    fn label(&self) -> String {
        (**self).label()
    }
    fn entry(&self, i: usize, j: usize) -> Result<S> {
        (**self).entry(i, j)
    }
    fn max_degree(&self) -> Option<usize> {
        (**self).max_degree()
    }
    fn truncation(&self, n: usize) -> Result<HermitianMatrix<S>> {
        (**self).truncation(n)
    }
    fn weight(&self) -> Option<&WeightedCircle> {
        (**self).weight()
    }
}

impl<S: Scalar, T: MatrixSource<S> + ?Sized> MatrixSource<S> for Box<T> {
    fn label(&self) -> String {
        (**self).label()
    }
    fn entry(&self, i: usize, j: usize) -> Result<S> {
        (**self).entry(i, j)
    }
    fn max_degree(&self) -> Option<usize> {
        (**self).max_degree()
    }
    fn truncation(&self, n: usize) -> Result<HermitianMatrix<S>> {
        (**self).truncation(n)
    }
    fn weight(&self) -> Option<&WeightedCircle> {
        (**self).weight()
    }
}
