//! Support predicates, single-source zero criteria, and the zero-radius
//! pipelines that tie orthopoly to the multiplication-norm bounds.

use std::fmt;
use std::str::FromStr;

use crate::diagnostics::domination::{domination_check, theorem1_bound};
use crate::diagnostics::sequences::{eigen_sequence, multnorm_sequence, EigenSequence};
use crate::diagnostics::trend::Trend;
use crate::diagnostics::weights::weight_extrema;
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::measures::{supports_disjoint, MeasureSpec};
use crate::orthopoly::{monic_orthogonal_family, zero_bound_check, zeros, ZeroReport};
use crate::scalar::Scalar;
use crate::sobolev::SobolevSpec;
use crate::source::{Identity, MatrixSource};

/// Slack added to d_{n−1} when checking zeros of φ̂_n.
pub const ZERO_RADIUS_SLACK: f64 = 1e-7;

/// Whether the closed disk hull of `inner` lies in that of `outer`.
pub fn hull_containment(inner: &MeasureSpec, outer: &MeasureSpec) -> Result<bool> {
    for m in [inner, outer] {
        if matches!(m, MeasureSpec::WeightedSum(_)) {
            return Err(Error::UnsupportedMeasure {
                op: "hull_containment",
                spec: m.to_string(),
            });
        }
    }
    Ok(outer.hull().contains_disk(&inner.hull()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportRelation {
    /// Hull of the first measure contained in the hull of the second.
    pub hull_contained: bool,
    /// Supports share no point, so no measure inequality μ_a ≤ C μ_b holds.
    pub disjoint: bool,
}

pub fn support_relation(a: &MeasureSpec, b: &MeasureSpec) -> Result<SupportRelation> {
    Ok(SupportRelation {
        hull_contained: hull_containment(a, b)?,
        disjoint: supports_disjoint(a, b),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// M paired with M₀ = I as the order-1 term: needs bounded β_n.
    DerivativeTerm,
    /// M as the order-0 term with M₁ = I: needs λ_n bounded away from 0.
    BaseTerm,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::DerivativeTerm => "as-derivative-term",
            Role::BaseTerm => "as-base-term",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-derivative-term" | "derivative" => Ok(Role::DerivativeTerm),
            "as-base-term" | "base" => Ok(Role::BaseTerm),
            _ => Err(Error::parse(
                s,
                "expected as-derivative-term or as-base-term",
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ZerosBounded,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ZerosBounded => "zeros-bounded",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoleVerdictReport {
    pub role: Role,
    /// Pencil (M_n, I_n).
    pub sequence: EigenSequence,
    /// β_n for the derivative role, 1/λ_n for the base role.
    pub trend: Trend,
    /// (ess inf, ess sup) of the weight, for weighted-circle sources.
    pub weight_extrema: Option<(f64, f64)>,
    /// ess sup < ∞ (derivative role) or ess inf > 0 (base role).
    pub weight_criterion: Option<bool>,
    pub verdict: Verdict,
}

/// Zero boundedness of {I, M} or {M, I} Sobolev families, judged from the
/// eigenvalues of M's truncations and, for weights, from the weight itself.
pub fn corollary7_check<S: Scalar>(
    m: &dyn MatrixSource<S>,
    role: Role,
    n_max: usize,
) -> Result<RoleVerdictReport> {
    let sequence = eigen_sequence(m, &Identity, 0..=n_max)?;
    let trend = match role {
        Role::DerivativeTerm => sequence.beta_trend(),
        Role::BaseTerm => sequence.inverse_lambda_trend(),
    };
    let extrema = m.weight().map(weight_extrema);
    let weight_criterion = extrema.map(|(lo, hi)| match role {
        Role::DerivativeTerm => hi.is_finite(),
        Role::BaseTerm => lo > 0.0,
    });
    let verdict = if trend == Trend::BoundedLooking || weight_criterion == Some(true) {
        Verdict::ZerosBounded
    } else {
        Verdict::Inconclusive
    };
    Ok(RoleVerdictReport {
        role,
        sequence,
        trend,
        weight_extrema: extrema,
        weight_criterion,
        verdict,
    })
}

/// Zeros of φ̂_1..φ̂_{n_max} checked against d_{n−1} + [`ZERO_RADIUS_SLACK`].
pub fn zeros_within_multnorm<S: Scalar>(
    m: &HermitianMatrix<S>,
    n_max: usize,
) -> Result<ZeroReport> {
    if n_max == 0 {
        return Err(Error::InvalidDegree);
    }
    let family = monic_orthogonal_family(m, n_max)?;
    let norms = multnorm_sequence::<S>(m, 0..=n_max - 1)?;
    let radii: Vec<f64> = norms.rows.iter().map(|r| r.d + ZERO_RADIUS_SLACK).collect();
    zero_bound_check(&zeros(&family, 1..=n_max)?, &radii)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SobolevRadius {
    /// Observed domination constants, index 0 unused (1.0).
    pub constants: Vec<f64>,
    /// d_{n_max} of each component.
    pub norms: Vec<f64>,
    pub radius: f64,
}

/// Zero radius from observed constants on degrees ≤ n_max; bounds the zeros
/// of Sobolev monic polynomials up to degree n_max + 1. Orders must be 0..k.
pub fn sobolev_zero_radius<S: Scalar>(
    spec: &SobolevSpec<S>,
    n_max: usize,
) -> Result<SobolevRadius> {
    if !spec.consecutive_orders() {
        return Err(Error::InvalidInput(format!(
            "orders of `{spec}` are not 0, 1, ..., k"
        )));
    }
    let sources = spec.sources();
    let mut constants = vec![1.0];
    if sources.len() > 1 {
        constants.extend(domination_check(&sources, n_max)?.constants());
    }
    let norms = sources
        .iter()
        .map(|s| multnorm_sequence(*s, 0..=n_max).map(|seq| seq.last().expect("non-empty range")))
        .collect::<Result<Vec<_>>>()?;
    let radius = theorem1_bound(&constants, &norms)?;
    Ok(SobolevRadius {
        constants,
        norms,
        radius,
    })
}
