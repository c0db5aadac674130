//! Extreme generalized eigenvalues of Hermitian definite pencils (A, B).
//!
//! The pencil is reduced once to a standard Hermitian matrix C with the same
//! spectrum. Because the factor of B is lower triangular, the leading
//! (n+1)×(n+1) block of C is exactly the reduction of the leading blocks of
//! A and B, so one reduction serves a whole sequence of truncation sizes.

use ndarray::{s, Array2};

use crate::error::{Error, Result};
use crate::linalg::cholesky::{cholesky_float, forward_solve};
use crate::linalg::jacobi::{hermitian_eigs_with, JacobiConfig};
use crate::linalg::ldl::ldl_decompose;
use crate::matrix::{adjoint, matmul, HermitianMatrix};
use crate::scalar::{Complex64, Scalar};

pub const DEFAULT_CONDITION_THRESHOLD: f64 = 1e12;
/// Spread λmax/λmin of a reduced block above which λmin is taken from the
/// dual pencil (B, A) as 1/λmax, keeping relative accuracy.
pub const DUAL_SPREAD: f64 = 1e6;

#[derive(Clone, Copy, Debug)]
pub struct PencilConfig {
    /// Condition estimate of B above which a result is flagged, and above
    /// which exact inputs are reduced with exact LDL*.
    pub condition_threshold: f64,
    /// Recover small λmin through the dual pencil when A is ill-conditioned.
    pub dual_lambda_min: bool,
    pub jacobi: JacobiConfig,
}

impl Default for PencilConfig {
    fn default() -> Self {
        Self {
            condition_threshold: DEFAULT_CONDITION_THRESHOLD,
            dual_lambda_min: true,
            jacobi: JacobiConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PencilExtremes {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub condition_estimate: f64,
    /// Condition estimate exceeded the threshold; values are still reported.
    pub ill_conditioned: bool,
    /// Reduction went through exact LDL* rather than float Cholesky.
    pub exact_reduction: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ConditionSource {
    /// B's own spectrum in float.
    Direct,
    /// λmax(B) · λmax(B⁻¹), with B⁻¹ assembled from the exact factorization.
    ExactInverse,
}

/// Reduced pencil ready for per-size extreme queries.
#[derive(Clone, Debug)]
pub struct PencilReduction {
    reduced: Array2<Complex64>,
    b_float: Array2<Complex64>,
    /// Congruent to B⁻¹ block by block (exact path only).
    b_inverse: Option<Array2<Complex64>>,
    condition_source: ConditionSource,
    exact_reduction: bool,
    /// Reduction of (B, A), present when the spread of the full block
    /// exceeds [`DUAL_SPREAD`] and A is positive definite.
    dual: Option<Box<PencilReduction>>,
    cfg: PencilConfig,
}

impl PencilReduction {
    pub fn new<S: Scalar>(
        a: &HermitianMatrix<S>,
        b: &HermitianMatrix<S>,
        cfg: PencilConfig,
    ) -> Result<Self> {
        let mut red = Self::reduce(a, b, cfg)?;
        if cfg.dual_lambda_min {
            let eigs = hermitian_eigs_with(red.reduced.clone(), cfg.jacobi)?;
            let (lo, hi) = (eigs[0], *eigs.last().expect("non-empty"));
            if lo <= 0.0 || hi / lo > DUAL_SPREAD {
                let dual_cfg = PencilConfig {
                    dual_lambda_min: false,
                    ..cfg
                };
                red.dual = Self::reduce(b, a, dual_cfg).ok().map(Box::new);
            }
        }
        Ok(red)
    }

    fn reduce<S: Scalar>(
        a: &HermitianMatrix<S>,
        b: &HermitianMatrix<S>,
        cfg: PencilConfig,
    ) -> Result<Self> {
        if a.size() != b.size() {
            return Err(Error::SizeMismatch(format!(
                "pencil sizes {} and {}",
                a.size(),
                b.size()
            )));
        }
        let b_float = b.to_float().into_entries();
        if S::EXACT {
            let ldl = ldl_decompose(b)?;
            let phi = ldl.inverse_l();
            let d: Vec<f64> = ldl.d.iter().map(|v| v.to_c64().re).collect();
            let inv_sqrt_d: Vec<f64> = d.iter().map(|v| 1.0 / v.sqrt()).collect();
            // G = D^{-1/2} Φ Φ* D^{-1/2}: its leading blocks share spectra with B_n⁻¹.
            let phi_phi = matmul(&phi, &adjoint(&phi));
            let g = scale_float(&phi_phi, &inv_sqrt_d);
            let b_inverse = Some(g);
            let probe = Self {
                reduced: Array2::zeros((0, 0)),
                b_float: b_float.clone(),
                b_inverse,
                condition_source: ConditionSource::ExactInverse,
                exact_reduction: true,
                dual: None,
                cfg,
            };
            let cond = probe.condition(b.size() - 1)?;
            if cond > cfg.condition_threshold {
                // W = Φ A Φ* exactly, then C = D^{-1/2} W D^{-1/2} in float.
                let w = matmul(&matmul(&phi, a.entries()), &adjoint(&phi));
                let reduced = scale_float(&w, &inv_sqrt_d);
                return Ok(Self {
                    reduced: symmetrize(reduced),
                    ..probe
                });
            }
            let reduced = float_reduce(&a.to_float(), &b.to_float())?;
            return Ok(Self {
                reduced,
                exact_reduction: false,
                ..probe
            });
        }
        let reduced = float_reduce(&a.to_float(), &b.to_float())?;
        Ok(Self {
            reduced,
            b_float,
            b_inverse: None,
            condition_source: ConditionSource::Direct,
            exact_reduction: false,
            dual: None,
            cfg,
        })
    }

    /// Largest degree n available (size − 1).
    pub fn degree(&self) -> usize {
        self.b_float.nrows() - 1
    }

    /// Condition estimate of the leading (n+1)×(n+1) block of B.
    pub fn condition(&self, n: usize) -> Result<f64> {
        let bn = self.b_float.slice(s![..=n, ..=n]).to_owned();
        let eb = hermitian_eigs_with(bn, self.cfg.jacobi)?;
        let bmax = *eb.last().expect("non-empty block");
        match self.condition_source {
            ConditionSource::Direct => {
                let bmin = eb[0];
                Ok(if bmin > 0.0 {
                    bmax / bmin
                } else {
                    f64::INFINITY
                })
            }
            ConditionSource::ExactInverse => {
                let g = self
                    .b_inverse
                    .as_ref()
                    .expect("exact path keeps the inverse");
                let gn = g.slice(s![..=n, ..=n]).to_owned();
                let eg = hermitian_eigs_with(gn, self.cfg.jacobi)?;
                Ok(bmax * eg.last().copied().unwrap_or(f64::INFINITY))
            }
        }
    }

    /// Extremes of the pencil restricted to degree ≤ n.
    pub fn extremes(&self, n: usize) -> Result<PencilExtremes> {
        if n > self.degree() {
            return Err(Error::SizeMismatch(format!(
                "degree {n} beyond reduced pencil degree {}",
                self.degree()
            )));
        }
        let cn = self.reduced.slice(s![..=n, ..=n]).to_owned();
        let eigs = hermitian_eigs_with(cn, self.cfg.jacobi)?;
        let mut lambda_min = eigs[0];
        if let Some(dual) = &self.dual {
            let lambda_max = *eigs.last().expect("non-empty");
            if lambda_min <= 0.0 || lambda_max / lambda_min > DUAL_SPREAD {
                lambda_min = 1.0 / dual.extremes(n)?.lambda_max;
            }
        }
        let condition_estimate = self.condition(n)?;
        Ok(PencilExtremes {
            lambda_min,
            lambda_max: *eigs.last().expect("non-empty"),
            condition_estimate,
            ill_conditioned: condition_estimate > self.cfg.condition_threshold,
            exact_reduction: self.exact_reduction,
        })
    }
}

/// Smallest and largest λ with A v = λ B v.
pub fn generalized_extreme_eigs<S: Scalar>(
    a: &HermitianMatrix<S>,
    b: &HermitianMatrix<S>,
) -> Result<PencilExtremes> {
    generalized_extreme_eigs_with(a, b, PencilConfig::default())
}

pub fn generalized_extreme_eigs_with<S: Scalar>(
    a: &HermitianMatrix<S>,
    b: &HermitianMatrix<S>,
    cfg: PencilConfig,
) -> Result<PencilExtremes> {
    let red = PencilReduction::new(a, b, cfg)?;
    red.extremes(red.degree())
}

fn float_reduce(
    a: &HermitianMatrix<Complex64>,
    b: &HermitianMatrix<Complex64>,
) -> Result<Array2<Complex64>> {
    let l = cholesky_float(b)?;
    // C = L⁻¹ A L⁻* = L⁻¹ (L⁻¹ A)*
    let y = forward_solve(&l, a.entries());
    let c = forward_solve(&l, &adjoint(&y));
    Ok(symmetrize(c))
}

fn scale_float<S: Scalar>(m: &Array2<S>, scale: &[f64]) -> Array2<Complex64> {
    Array2::from_shape_fn(m.dim(), |(i, j)| m[[i, j]].to_c64() * (scale[i] * scale[j]))
}

fn symmetrize(c: Array2<Complex64>) -> Array2<Complex64> {
    Array2::from_shape_fn(c.dim(), |(i, j)| {
        if i == j {
            Complex64::new(c[[i, i]].re, 0.0)
        } else {
            (c[[i, j]] + c[[j, i]].conj()) * 0.5
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;

    fn fdiag(v: &[f64]) -> HermitianMatrix<Complex64> {
        HermitianMatrix::diagonal(
            &v.iter()
                .map(|x| Complex64::new(*x, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn diagonal_against_identity() {
        let r =
            generalized_extreme_eigs(&fdiag(&[1.0, 0.25, 0.0625]), &HermitianMatrix::identity(3))
                .unwrap();
        assert_eq!((r.lambda_min, r.lambda_max), (0.0625, 1.0));
        assert!(!r.ill_conditioned);
    }

    #[test]
    fn identical_pencil() {
        let m = HermitianMatrix::new(ndarray::array![
            [Complex64::new(4.0, 0.0), Complex64::new(1.0, 1.0)],
            [Complex64::new(1.0, -1.0), Complex64::new(3.0, 0.0)]
        ])
        .unwrap();
        let r = generalized_extreme_eigs(&m, &m).unwrap();
        assert!((r.lambda_min - 1.0).abs() < 1e-14 && (r.lambda_max - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ratio_of_diagonals() {
        let r = generalized_extreme_eigs(&fdiag(&[2.0, 8.0]), &fdiag(&[1.0, 2.0])).unwrap();
        assert!((r.lambda_min - 2.0).abs() < 1e-15 && (r.lambda_max - 4.0).abs() < 1e-15);
    }

    #[test]
    fn indefinite_b_is_rejected() {
        let err = generalized_extreme_eigs(&fdiag(&[1.0, 1.0]), &fdiag(&[1.0, -1.0]));
        assert_eq!(err, Err(Error::NotPositiveDefinite(1)));
    }

    #[test]
    fn exact_ill_conditioned_b_takes_exact_path() {
        let n = 30;
        let b: Vec<ExactComplex> = (0..=n)
            .map(|i| {
                ExactComplex::from_rational(num::rational::BigRational::new(
                    1.into(),
                    num::pow(num::BigInt::from(4), i),
                ))
            })
            .collect();
        let a: Vec<ExactComplex> = b
            .iter()
            .map(|v| v / &ExactComplex::from_integer(4))
            .collect();
        let r = generalized_extreme_eigs(
            &HermitianMatrix::diagonal(&a),
            &HermitianMatrix::diagonal(&b),
        )
        .unwrap();
        assert!(r.exact_reduction && r.ill_conditioned);
        assert_eq!((r.lambda_min, r.lambda_max), (0.25, 0.25));
        assert!((r.condition_estimate / 4f64.powi(30) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_lambda_min_comes_from_the_dual_pencil() {
        // Hilbert-type A: λmin of the 14×14 block is far below ε·λmax.
        let n = 13;
        let a = HermitianMatrix::<ExactComplex>::from_upper(n + 1, |i, j| {
            ExactComplex::from_rational(num::rational::BigRational::new(
                1.into(),
                ((1 + i + j) as i64).into(),
            ))
        });
        let id = HermitianMatrix::<ExactComplex>::identity(n + 1);
        let red = PencilReduction::new(&a, &id, PencilConfig::default()).unwrap();
        let dual = PencilReduction::new(&id, &a, PencilConfig::default()).unwrap();
        for k in 0..=n {
            let lo = red.extremes(k).unwrap().lambda_min;
            let hi = dual.extremes(k).unwrap().lambda_max;
            assert!(lo > 0.0);
            assert!((lo * hi - 1.0).abs() < 1e-12, "k = {k}: {lo} * {hi}");
        }
    }

    #[test]
    fn leading_blocks_match_direct_reduction() {
        let a = HermitianMatrix::<Complex64>::from_upper(5, |i, j| {
            Complex64::new(1.0 / (1 + i + j) as f64, 0.0)
        });
        let b = HermitianMatrix::<Complex64>::from_upper(5, |i, j| {
            Complex64::new(
                if i == j {
                    2.0
                } else {
                    0.3 / (1 + j - i) as f64
                },
                0.0,
            )
        });
        let red = PencilReduction::new(&a, &b, PencilConfig::default()).unwrap();
        for n in 0..5 {
            let direct =
                generalized_extreme_eigs(&a.leading(n).unwrap(), &b.leading(n).unwrap()).unwrap();
            let via = red.extremes(n).unwrap();
            assert!((direct.lambda_max - via.lambda_max).abs() < 1e-13);
            assert!((direct.lambda_min - via.lambda_min).abs() < 1e-13);
        }
    }
}
