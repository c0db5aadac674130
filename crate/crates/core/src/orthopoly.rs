//! Monic and orthonormal polynomial families of an HPD truncation, and
//! their zeros.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::linalg::ldl_decompose;
use crate::linalg::roots::{companion_roots, newton_polish};
use crate::matrix::HermitianMatrix;
use crate::poly::Polynomial;
use crate::scalar::{Complex64, ExactComplex, Scalar};

/// Allowed |φ̂_n(root)| relative to the largest coefficient modulus.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-6;
/// Slack subtracted from a radius before a root counts as a violation.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct OrthoMember<S> {
    /// φ̂_n, degree exactly n, leading coefficient 1.
    pub monic: Polynomial<S>,
    /// h_n = ⟨φ̂_n, φ̂_n⟩.
    pub norm_sq: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthoFamily<S> {
    pub source_id: String,
    pub members: Vec<OrthoMember<S>>,
}

impl<S: Scalar> OrthoFamily<S> {
    pub fn max_degree(&self) -> usize {
        self.members.len() - 1
    }

    pub fn member(&self, n: usize) -> Option<&OrthoMember<S>> {
        self.members.get(n)
    }

    pub fn with_source_id(mut self, id: impl Into<String>) -> Self {
        self.source_id = id.into();
        self
    }
}

/// φ̂_n = row n of L⁻¹ where M = L D L*, and h_n = D_n.
pub fn monic_orthogonal_family<S: Scalar>(
    m: &HermitianMatrix<S>,
    max_degree: usize,
) -> Result<OrthoFamily<S>> {
    let section = m.leading(max_degree)?;
    let ldl = ldl_decompose(&section)?;
    let inv = ldl.inverse_l();
    let members = (0..=max_degree)
        .map(|n| OrthoMember {
            monic: Polynomial::new((0..=n).map(|k| inv[[n, k]].clone()).collect()),
            norm_sq: ldl.d[n].clone(),
        })
        .collect();
    Ok(OrthoFamily {
        source_id: format!("matrix[{}x{}]", m.size(), m.size()),
        members,
    })
}

/// φ_n = φ̂_n / √h_n in float; leading coefficients are positive reals.
pub fn orthonormalize<S: Scalar>(family: &OrthoFamily<S>) -> Vec<Polynomial<Complex64>> {
    family
        .members
        .iter()
        .map(|m| {
            let scale = 1.0 / m.norm_sq.to_c64().re.sqrt();
            m.monic.to_float().scale(&Complex64::new(scale, 0.0))
        })
        .collect()
}

pub use crate::poly::evaluate;

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeZeros {
    pub degree: usize,
    pub roots: Vec<Complex64>,
    pub max_modulus: f64,
    /// Largest |φ̂_n(root)| / max|coeff| after polishing.
    pub max_residual: f64,
    pub bound: Option<f64>,
    pub violations: Vec<Complex64>,
}

impl DegreeZeros {
    pub fn residual_ok(&self) -> bool {
        self.max_residual <= ROOT_RESIDUAL_TOL
    }

    pub fn within_bound(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroReport {
    pub source_id: String,
    pub degrees: Vec<DegreeZeros>,
}

impl ZeroReport {
    pub fn all_within_bounds(&self) -> bool {
        self.degrees.iter().all(DegreeZeros::within_bound)
    }

    pub fn max_modulus(&self) -> f64 {
        self.degrees
            .iter()
            .map(|d| d.max_modulus)
            .fold(0.0, f64::max)
    }
}

/// Roots of φ̂_n for each degree in `degrees` (degree 0 has none).
pub fn zeros<S: Scalar>(
    family: &OrthoFamily<S>,
    degrees: RangeInclusive<usize>,
) -> Result<ZeroReport> {
    if *degrees.end() > family.max_degree() {
        return Err(Error::SizeMismatch(format!(
            "degree {} requested from a family of degree {}",
            degrees.end(),
            family.max_degree()
        )));
    }
    let mut out = Vec::new();
    for n in degrees {
        let p = &family.members[n].monic;
        let roots = polynomial_roots(p)?;
        let coeffs: Vec<Complex64> = p.coeffs().iter().map(|c| c.to_c64()).collect();
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let max_residual = roots
            .iter()
            .map(|r| evaluate(p, *r).norm() / scale)
            .fold(0.0, f64::max);
        out.push(DegreeZeros {
            degree: n,
            max_modulus: roots.iter().map(|r| r.norm()).fold(0.0, f64::max),
            roots,
            max_residual,
            bound: None,
            violations: Vec::new(),
        });
    }
    Ok(ZeroReport {
        source_id: family.source_id.clone(),
        degrees: out,
    })
}

/// All roots with multiplicity. Exact polynomials are first split into
/// square-free factors so repeated roots are found as simple ones.
pub fn polynomial_roots<S: Scalar>(p: &Polynomial<S>) -> Result<Vec<Complex64>> {
    let degree = p.degree().ok_or(Error::InvalidDegree)?;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let exact: Option<Vec<ExactComplex>> = p.coeffs().iter().map(|c| c.to_exact()).collect();
    match exact {
        Some(coeffs) => {
            let mut roots = Vec::with_capacity(degree);
            for (factor, mult) in Polynomial::new(coeffs).square_free() {
                for r in simple_roots(&factor)? {
                    roots.extend(std::iter::repeat_n(r, mult));
                }
            }
            Ok(roots)
        }
        None => simple_roots(&p.monic()),
    }
}

fn simple_roots<S: Scalar>(monic: &Polynomial<S>) -> Result<Vec<Complex64>> {
    let coeffs: Vec<Complex64> = monic.coeffs().iter().map(|c| c.to_c64()).collect();
    Ok(companion_roots(monic.coeffs())?
        .into_iter()
        .map(|z| newton_polish(&coeffs, z))
        .collect())
}

/// Fills in bounds and flags roots with |root| ≥ radius − 1e−9; `radii` has
/// one entry per degree of the report.
pub fn zero_bound_check(report: &ZeroReport, radii: &[f64]) -> Result<ZeroReport> {
    zero_bound_check_with(report, radii, BOUND_SLACK)
}

pub fn zero_bound_check_with(report: &ZeroReport, radii: &[f64], slack: f64) -> Result<ZeroReport> {
    if radii.len() != report.degrees.len() {
        return Err(Error::SizeMismatch(format!(
            "{} radii for {} degrees",
            radii.len(),
            report.degrees.len()
        )));
    }
    if let Some(r) = radii.iter().find(|r| r.is_nan() || **r <= 0.0) {
        return Err(Error::InvalidInput(format!("radius {r} is not positive")));
    }
    let degrees = report
        .degrees
        .iter()
        .zip(radii)
        .map(|(d, &radius)| DegreeZeros {
            bound: Some(radius),
            violations: d
                .roots
                .iter()
                .copied()
                .filter(|z| z.norm() >= radius - slack)
                .collect(),
            ..d.clone()
        })
        .collect();
    Ok(ZeroReport {
        source_id: report.source_id.clone(),
        degrees,
    })
}
