//! Per-degree sequences: pencil extremes, diagonal ratios and restricted
//! multiplication norms.

use std::ops::RangeInclusive;

use crate::diagnostics::trend::{classify_trend, Trend};
use crate::error::{Error, Result};
use crate::linalg::{PencilConfig, PencilReduction};
use crate::scalar::{rational_to_f64, Rational, Scalar};
use crate::source::MatrixSource;

/// Slack allowed in the monotonicity checks, relative to max(1, |value|).
pub const MONOTONE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenRow {
    pub n: usize,
    pub lambda: f64,
    pub beta: f64,
    pub condition: f64,
    pub ill_conditioned: bool,
    pub exact_reduction: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenSequence {
    pub a_id: String,
    pub b_id: String,
    pub rows: Vec<EigenRow>,
}

impl EigenSequence {
    /// λ_n non-increasing and β_n non-decreasing, up to [`MONOTONE_SLACK`].
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            b.lambda <= a.lambda + MONOTONE_SLACK * a.lambda.abs().max(1.0)
                && b.beta >= a.beta - MONOTONE_SLACK * a.beta.abs().max(1.0)
        })
    }

    pub fn lambdas(&self) -> Vec<(usize, f64)> {
        self.rows.iter().map(|r| (r.n, r.lambda)).collect()
    }

    pub fn betas(&self) -> Vec<(usize, f64)> {
        self.rows.iter().map(|r| (r.n, r.beta)).collect()
    }

    pub fn beta_trend(&self) -> Trend {
        classify_trend(&self.betas())
    }

    /// Trend of 1/λ_n: bounded-looking means λ_n stays away from zero.
    pub fn inverse_lambda_trend(&self) -> Trend {
        classify_trend(
            &self
                .rows
                .iter()
                .map(|r| (r.n, 1.0 / r.lambda))
                .collect::<Vec<_>>(),
        )
    }

    pub fn max_beta(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.beta)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_lambda(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.lambda)
            .fold(f64::INFINITY, f64::min)
    }
}

fn check_range(range: &RangeInclusive<usize>) -> Result<()> {
    if range.is_empty() {
        return Err(Error::InvalidInput(format!(
            "empty degree range {}..{}",
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

/// Extremes of (A_n, B_n) for every n in the range, from a single reduction.
pub fn eigen_sequence<S: Scalar>(
    a: &dyn MatrixSource<S>,
    b: &dyn MatrixSource<S>,
    range: RangeInclusive<usize>,
) -> Result<EigenSequence> {
    eigen_sequence_with(a, b, range, PencilConfig::default())
}

pub fn eigen_sequence_with<S: Scalar>(
    a: &dyn MatrixSource<S>,
    b: &dyn MatrixSource<S>,
    range: RangeInclusive<usize>,
    cfg: PencilConfig,
) -> Result<EigenSequence> {
    check_range(&range)?;
    let top = *range.end();
    let red = PencilReduction::new(&a.truncation(top)?, &b.truncation(top)?, cfg)?;
    let rows = range
        .map(|n| red.extremes(n).map(|e| row(n, e)))
        .collect::<Result<_>>()?;
    Ok(EigenSequence {
        a_id: a.label(),
        b_id: b.label(),
        rows,
    })
}

fn row(n: usize, e: crate::linalg::PencilExtremes) -> EigenRow {
    EigenRow {
        n,
        lambda: e.lambda_min,
        beta: e.lambda_max,
        condition: e.condition_estimate,
        ill_conditioned: e.ill_conditioned,
        exact_reduction: e.exact_reduction,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    /// c_{n+1,n+1}/c_{n,n} exactly, for exact sources.
    pub exact: Option<Rational>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioSequence {
    pub source_id: String,
    pub rows: Vec<RatioRow>,
    pub trend: Trend,
}

/// Diagonal ratios c_{n+1,n+1}/c_{n,n}; only diagonal entries are touched,
/// so large n stays cheap.
pub fn ratio_sequence<S: Scalar>(
    m: &dyn MatrixSource<S>,
    range: RangeInclusive<usize>,
) -> Result<RatioSequence> {
    check_range(&range)?;
    let diag = |n: usize| -> Result<S> {
        let v = m.entry(n, n)?;
        if v.to_c64().re.is_nan() || v.to_c64().re <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "diagonal entry {n} of {} is not positive",
                m.label()
            )));
        }
        Ok(v)
    };
    let mut rows = Vec::new();
    let mut current = diag(*range.start())?;
    for n in range {
        let next = diag(n + 1)?;
        let (exact, value) = match (next.to_exact(), current.to_exact()) {
            (Some(num), Some(den)) => {
                let q = num.re / den.re;
                let v = rational_to_f64(&q);
                (Some(q), v)
            }
            _ => (None, next.to_c64().re / current.to_c64().re),
        };
        rows.push(RatioRow { n, exact, value });
        current = next;
    }
    let trend = classify_trend(&rows.iter().map(|r| (r.n, r.value)).collect::<Vec<_>>());
    Ok(RatioSequence {
        source_id: m.label(),
        rows,
        trend,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultNormRow {
    pub n: usize,
    /// Norm of p ↦ zp on polynomials of degree ≤ n.
    pub d: f64,
    /// √(c_{n+1,n+1}/c_{n,n}), the monomial lower bound for d.
    pub witness: f64,
    pub condition: f64,
    pub ill_conditioned: bool,
    pub exact_reduction: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultNormSequence {
    pub source_id: String,
    pub rows: Vec<MultNormRow>,
}

impl MultNormSequence {
    pub fn is_monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].d >= w[0].d - MONOTONE_SLACK * w[0].d.max(1.0))
    }

    /// d_n² ≥ c_{n+1,n+1}/c_{n,n} − slack on every row.
    pub fn witness_holds(&self, slack: f64) -> bool {
        self.rows
            .iter()
            .all(|r| r.d * r.d >= r.witness * r.witness - slack)
    }

    pub fn d(&self, n: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.n == n).map(|r| r.d)
    }

    pub fn last(&self) -> Option<f64> {
        self.rows.last().map(|r| r.d)
    }

    pub fn trend(&self) -> Trend {
        classify_trend(&self.rows.iter().map(|r| (r.n, r.d)).collect::<Vec<_>>())
    }
}

/// d_n² is the largest eigenvalue of the pencil (S*M_{n+1}S, M_n), S the
/// coefficient shift p ↦ zp. S*M_{n+1}S is the block of M on indices
/// 1..=n+1, so one truncation of size n_max+2 serves every row.
pub fn multnorm_sequence<S: Scalar>(
    m: &dyn MatrixSource<S>,
    range: RangeInclusive<usize>,
) -> Result<MultNormSequence> {
    multnorm_sequence_with(m, range, PencilConfig::default())
}

pub fn multnorm_sequence_with<S: Scalar>(
    m: &dyn MatrixSource<S>,
    range: RangeInclusive<usize>,
    cfg: PencilConfig,
) -> Result<MultNormSequence> {
    check_range(&range)?;
    let top = *range.end();
    let full = m.truncation(top + 1)?;
    let shifted = full.block(1, top + 1)?;
    let base = full.leading(top)?;
    let red = PencilReduction::new(
        &shifted,
        &base,
        PencilConfig {
            dual_lambda_min: false,
            ..cfg
        },
    )?;
    let rows = range
        .map(|n| {
            let e = red.extremes(n)?;
            let witness = (full.get(n + 1, n + 1).to_c64().re / full.get(n, n).to_c64().re).sqrt();
            Ok(MultNormRow {
                n,
                d: e.lambda_max.max(0.0).sqrt(),
                witness,
                condition: e.condition_estimate,
                ill_conditioned: e.ill_conditioned,
                exact_reduction: e.exact_reduction,
            })
        })
        .collect::<Result<_>>()?;
    Ok(MultNormSequence {
        source_id: m.label(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::HermitianMatrix;
    use crate::measures::MeasureSpec;
    use crate::scalar::{Complex64, ExactComplex};
    use crate::source::Identity;

    fn spec(s: &str) -> MeasureSpec {
        s.parse().unwrap()
    }

    #[test]
    fn example1_pencil() {
        let a = spec("circle:0,0,1/2");
        let seq = eigen_sequence::<ExactComplex>(&a, &Identity, 0..=10).unwrap();
        for r in &seq.rows {
            assert!((r.beta - 1.0).abs() < 1e-14);
            assert!(
                (r.lambda - 0.25f64.powi(r.n as i32)).abs() <= 1e-14 * 0.25f64.powi(r.n as i32)
            );
        }
        assert!(seq.is_monotone());
        assert_eq!(seq.beta_trend(), Trend::BoundedLooking);
    }

    #[test]
    fn identical_pencil() {
        let p = spec("circle:1/2,1/2,1");
        let seq = eigen_sequence::<Complex64>(&p, &p, 0..=6).unwrap();
        assert!(seq
            .rows
            .iter()
            .all(|r| (r.lambda - 1.0).abs() < 1e-9 && (r.beta - 1.0).abs() < 1e-9));
    }

    #[test]
    fn pascal_below_sobolev() {
        let pascal = spec("circle:1,0,1");
        let ms = crate::sobolev::tests::example2();
        let seq = eigen_sequence::<ExactComplex>(&pascal, &ms, 0..=12).unwrap();
        assert!(seq.rows.iter().all(|r| r.beta <= 1.0 + 1e-9));
        assert!(seq.is_monotone());
    }

    #[test]
    fn ratios() {
        let ms = crate::sobolev::tests::example2();
        let seq = ratio_sequence::<ExactComplex>(&ms, 0..=3).unwrap();
        let expected = [(3, 1), (10, 3), (29, 10), (86, 29)];
        for (r, (p, q)) in seq.rows.iter().zip(expected) {
            assert_eq!(r.exact, Some(Rational::new(p.into(), q.into())));
        }
        let id = ratio_sequence::<Complex64>(&Identity, 0..=5).unwrap();
        assert!(id.rows.iter().all(|r| r.value == 1.0 && r.exact.is_none()));
        let bad = HermitianMatrix::diagonal(&[
            ExactComplex::from_integer(1),
            ExactComplex::from_integer(0),
        ]);
        assert!(ratio_sequence::<ExactComplex>(&bad, 0..=0).is_err());
    }

    #[test]
    fn multnorm_examples() {
        let id = multnorm_sequence::<ExactComplex>(&Identity, 0..=10).unwrap();
        assert!(id.rows.iter().all(|r| r.d == 1.0));
        let half = multnorm_sequence::<ExactComplex>(&spec("circle:0,0,1/2"), 0..=12).unwrap();
        assert!(half.rows.iter().all(|r| (r.d - 0.5).abs() < 1e-12));
        let pascal = multnorm_sequence::<ExactComplex>(&spec("circle:1,0,1"), 0..=15).unwrap();
        assert!(pascal.is_monotone());
        assert!(pascal.witness_holds(1e-9));
        assert!(pascal.last().unwrap() < 2.0);
    }

    #[test]
    fn empty_range_rejected() {
        #[allow(clippy::reversed_empty_ranges)]
        let r = 3..=2;
        assert!(eigen_sequence::<ExactComplex>(&Identity, &Identity, r).is_err());
    }
}
