//! Sequential domination M_j ≤ C M_{j−1}, tail sums of a family, and the
//! zero radius assembled from domination constants and multiplication norms.

use crate::diagnostics::sequences::{eigen_sequence, EigenSequence};
use crate::diagnostics::trend::Trend;
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::Scalar;
use crate::source::MatrixSource;

/// Slack on the tail-sum comparability bound.
pub const TAIL_SUM_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PairDomination {
    /// Index j of the dominated member M_j (compared against M_{j−1}).
    pub j: usize,
    pub sequence: EigenSequence,
    /// Observed sup of β_n(M_j, M_{j−1}): a candidate constant, not a proof.
    pub constant: f64,
    pub trend: Trend,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominationReport {
    pub pairs: Vec<PairDomination>,
}

impl DominationReport {
    /// Largest candidate constant over all pairs.
    pub fn constant(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.constant)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn all_bounded_looking(&self) -> bool {
        self.pairs.iter().all(|p| p.trend == Trend::BoundedLooking)
    }

    pub fn constants(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.constant).collect()
    }
}

pub fn domination_check<S: Scalar>(
    family: &[&dyn MatrixSource<S>],
    n_max: usize,
) -> Result<DominationReport> {
    if family.len() < 2 {
        return Err(Error::InvalidInput(
            "domination needs at least two sources".into(),
        ));
    }
    let pairs = (1..family.len())
        .map(|j| {
            let sequence = eigen_sequence(family[j], family[j - 1], 0..=n_max)?;
            Ok(PairDomination {
                j,
                constant: sequence.max_beta(),
                trend: sequence.beta_trend(),
                sequence,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DominationReport { pairs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailSumRow {
    pub j: usize,
    /// λ_n(M′_j, M_j) and β_n(M′_j, M_j) per n.
    pub sequence: EigenSequence,
    /// Σ_{i=0}^{k−j} C^i when a domination constant C was supplied.
    pub bound: Option<f64>,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailSumReport<S> {
    /// M′_j = M_j + … + M_k.
    pub tails: Vec<HermitianMatrix<S>>,
    pub rows: Vec<TailSumRow>,
}

/// Tail sums of a family of equal-size truncations. With a domination
/// constant C, M_{j+i} ≤ C^i M_j gives β_n(M′_j, M_j) ≤ Σ_{i=0}^{k−j} C^i,
/// which is checked per row; M′_j ⪰ M_j always gives λ_n ≥ 1.
pub fn tail_sum_family<S: Scalar>(
    family: &[HermitianMatrix<S>],
    domination: Option<f64>,
) -> Result<TailSumReport<S>> {
    if family.len() < 2 {
        return Err(Error::InvalidInput(
            "tail sums need at least two matrices".into(),
        ));
    }
    let size = family[0].size();
    if family.iter().any(|m| m.size() != size) {
        return Err(Error::SizeMismatch(
            "tail-sum family members differ in size".into(),
        ));
    }
    let k = family.len() - 1;
    let mut tails = vec![family[k].clone()];
    for m in family[..k].iter().rev() {
        let next = m.add(tails.last().expect("non-empty"))?;
        tails.push(next);
    }
    tails.reverse();
    let rows = (0..=k)
        .map(|j| {
            let sequence = eigen_sequence::<S>(&tails[j], &family[j], 0..=size - 1)?;
            let bound = domination.map(|c| (0..=k - j).map(|i| c.powi(i as i32)).sum::<f64>());
            let within_bound = bound.is_none_or(|b| sequence.max_beta() <= b + TAIL_SUM_SLACK);
            Ok(TailSumRow {
                j,
                sequence,
                bound,
                within_bound,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TailSumReport { tails, rows })
}

/// √(‖D₀‖² + Σ_{j=1}^{k} (j²C_j + ‖D_j‖² + 2j√C_j‖D_j‖)).
///
/// Both lists have length k+1 and are indexed by derivative order 0..=k;
/// `c[0]` has no partner and is ignored beyond the positivity check.
pub fn theorem1_bound(c: &[f64], d_norms: &[f64]) -> Result<f64> {
    if c.is_empty() || c.len() != d_norms.len() {
        return Err(Error::InvalidInput(format!(
            "need equal non-empty lists, got {} constants and {} norms",
            c.len(),
            d_norms.len()
        )));
    }
    if let Some(v) = c
        .iter()
        .chain(d_norms)
        .find(|v| v.is_nan() || **v <= 0.0 || !v.is_finite())
    {
        return Err(Error::InvalidInput(format!(
            "entry {v} is not a positive finite number"
        )));
    }
    let mut total = d_norms[0] * d_norms[0];
    for j in 1..c.len() {
        let jf = j as f64;
        total += jf * jf * c[j] + d_norms[j] * d_norms[j] + 2.0 * jf * c[j].sqrt() * d_norms[j];
    }
    Ok(total.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;
    use crate::scalar::{Complex64, ExactComplex};
    use crate::source::Identity;

    fn spec(s: &str) -> MeasureSpec {
        s.parse().unwrap()
    }

    #[test]
    fn example1_domination() {
        let half = spec("circle:0,0,1/2");
        let rep = domination_check::<ExactComplex>(&[&Identity, &half], 12).unwrap();
        assert!((rep.constant() - 1.0).abs() < 1e-12);
        assert!(rep.all_bounded_looking());
    }

    #[test]
    fn self_domination() {
        let m = spec("wcircle:2;1/2,1/5");
        let rep = domination_check::<Complex64>(&[&m, &m], 8).unwrap();
        assert!((rep.constant() - 1.0).abs() < 1e-9);
        assert!(domination_check::<Complex64>(&[&m], 8).is_err());
    }

    #[test]
    fn weight_ratio_bounds_domination() {
        // w0 = 2 + cos θ, w1 = (2 + cos θ)(1 + cos θ / 2): ratio ≤ 3/2
        let w0 = spec("wcircle:2;1/2,0");
        let w1 = match (&w0, &spec("wcircle:1;1/4,0")) {
            (MeasureSpec::WeightedCircle(a), MeasureSpec::WeightedCircle(b)) => {
                MeasureSpec::WeightedCircle(a.product(b).unwrap())
            }
            _ => unreachable!(),
        };
        let rep = domination_check::<ExactComplex>(&[&w0, &w1], 20).unwrap();
        assert!(rep.constant() <= 1.5 + 1e-9);
    }

    #[test]
    fn tail_sums() {
        let n = 10;
        let i = HermitianMatrix::<ExactComplex>::identity(n + 1);
        let half = spec("circle:0,0,1/2").moment_matrix(n);
        let rep = tail_sum_family(&[i.clone(), half], Some(1.0)).unwrap();
        assert!(rep
            .rows
            .iter()
            .all(|r| r.within_bound && r.sequence.min_lambda() >= 1.0 - 1e-9));
        assert_eq!(rep.rows[0].bound, Some(2.0));

        let rep = tail_sum_family(&[i.clone(), i], None).unwrap();
        assert!(rep.rows[0]
            .sequence
            .rows
            .iter()
            .all(|r| r.beta == 2.0 && r.lambda == 2.0));
    }

    #[test]
    fn zero_radius_values() {
        assert!((theorem1_bound(&[1.0, 1.0], &[1.0, 1.0]).unwrap() - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(theorem1_bound(&[1.0], &[1.5]).unwrap(), 1.5);
        assert!(
            (theorem1_bound(&[1.0, 1.0], &[1.0, 0.5]).unwrap() - (13.0f64 / 4.0).sqrt()).abs()
                < 1e-12
        );
        assert!(theorem1_bound(&[1.0, 0.0], &[1.0, 1.0]).is_err());
        assert!(theorem1_bound(&[1.0], &[1.0, 1.0]).is_err());
    }
}
