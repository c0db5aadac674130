//! Derivative operators Λ^j and matrix Sobolev truncations
//! M_S = Σ_j Λ^j M_j (Λ^j)*.
//!
//! Λ^j has a single nonzero band, entry (n, n−j) = n!/(n−j)!. Because the
//! band lies strictly on or below the diagonal, the leading section of the
//! infinite product only involves leading sections of the factors; the
//! assembly below relies on that and the tests check it against dense
//! products of larger truncations.

use std::fmt;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::linalg::ldl_decompose;
use crate::matrix::HermitianMatrix;
use crate::measures::MeasureSpec;
use crate::poly::Polynomial;
use crate::scalar::{falling_factorial, ExactComplex, Scalar};
use crate::source::MatrixSource;

/// Degree probed when checking that a measure source is positive definite.
const DEFINITENESS_PROBE_DEGREE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivativeOperator {
    pub order: usize,
    pub size: usize,
}

pub fn derivative_operator(order: usize, size: usize) -> DerivativeOperator {
    assert!(size >= 1, "operator size must be at least 1");
    DerivativeOperator { order, size }
}

impl DerivativeOperator {
    /// λ^j_{n,m} = n!/(n−j)! δ_{j, n−m}.
    pub fn entry<S: Scalar>(&self, n: usize, m: usize) -> S {
        if n >= self.order && m == n - self.order {
            S::from_exact(&ExactComplex::from_integer(falling_factorial(
                n, self.order,
            )))
        } else {
            S::zero()
        }
    }

    pub fn to_matrix<S: Scalar>(&self) -> Array2<S> {
        Array2::from_shape_fn((self.size, self.size), |(n, m)| self.entry(n, m))
    }

    /// (Λ^j)* applied to a coefficient vector: j-fold differentiation,
    /// result padded/truncated to the operator size.
    pub fn apply_adjoint<S: Scalar>(&self, coeffs: &[S]) -> Vec<S> {
        (0..self.size)
            .map(|m| {
                let n = m + self.order;
                match coeffs.get(n) {
                    Some(c) if n < self.size => c.mul_ref(&self.entry(n, m)),
                    _ => S::zero(),
                }
            })
            .collect()
    }

    /// Λ^j M (Λ^j)* restricted to this operator's size. Only the leading
    /// `size − order` rows and columns of `m` are read.
    pub fn conjugate<S: Scalar>(&self, m: &HermitianMatrix<S>) -> Result<HermitianMatrix<S>> {
        let j = self.order;
        let needed = self.size.saturating_sub(j);
        if m.size() < needed {
            return Err(Error::SizeMismatch(format!(
                "need a {needed}x{needed} section, got size {}",
                m.size()
            )));
        }
        Ok(HermitianMatrix::from_upper(self.size, |a, b| {
            if a < j || b < j {
                return S::zero();
            }
            let fa: S = self.entry(a, a - j);
            let fb: S = self.entry(b, b - j);
            fa.mul_ref(m.get(a - j, b - j)).mul_ref(&fb)
        }))
    }
}

/// Where a Sobolev component's matrix comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum ComponentSource<S: Scalar> {
    Measure(MeasureSpec),
    Matrix(HermitianMatrix<S>),
}

impl<S: Scalar> ComponentSource<S> {
    fn as_source(&self) -> &dyn MatrixSource<S> {
        match self {
            ComponentSource::Measure(m) => m,
            ComponentSource::Matrix(m) => m,
        }
    }
}

impl<S: Scalar> fmt::Display for ComponentSource<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_source().label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SobolevComponent<S: Scalar> {
    pub source: ComponentSource<S>,
    pub order: usize,
}

/// Ordered (source, derivative order) pairs defining ⟨·,·⟩_{M_S}.
#[derive(Clone, Debug, PartialEq)]
pub struct SobolevSpec<S: Scalar> {
    components: Vec<SobolevComponent<S>>,
}

impl<S: Scalar> SobolevSpec<S> {
    /// Orders must be strictly increasing; the lowest-order source must be
    /// positive definite (checked on a probe truncation for measures, on the
    /// whole matrix for explicit matrices). Higher components may be any
    /// Hermitian source.
    pub fn new(components: Vec<SobolevComponent<S>>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidInput("Sobolev spec needs a component".into()))?;
        if components.windows(2).any(|w| w[0].order >= w[1].order) {
            return Err(Error::InvalidInput(
                "component orders must be strictly increasing".into(),
            ));
        }
        let probe = match &first.source {
            ComponentSource::Matrix(m) => m.clone(),
            ComponentSource::Measure(m) => m.moment_matrix_as(DEFINITENESS_PROBE_DEGREE),
        };
        ldl_decompose(&probe)?;
        Ok(Self { components })
    }

    /// Shorthand for measure components.
    pub fn from_measures(parts: &[(MeasureSpec, usize)]) -> Result<Self> {
        Self::new(
            parts
                .iter()
                .map(|(m, order)| SobolevComponent {
                    source: ComponentSource::Measure(m.clone()),
                    order: *order,
                })
                .collect(),
        )
    }

    pub fn components(&self) -> &[SobolevComponent<S>] {
        &self.components
    }

    /// Whether the orders are exactly 0, 1, ..., k.
    pub fn consecutive_orders(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| c.order == i)
    }

    /// Sources of the components, in order.
    pub fn sources(&self) -> Vec<&dyn MatrixSource<S>> {
        self.components
            .iter()
            .map(|c| c.source.as_source())
            .collect()
    }
}

impl<S: Scalar> fmt::Display for SobolevSpec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:order={}", c.source, c.order)?;
        }
        Ok(())
    }
}

/// Σ_j Λ^j_{(n)} (M_j)_{(n)} (Λ^j_{(n)})*, checked for positive definiteness.
pub fn sobolev_matrix<S: Scalar>(spec: &SobolevSpec<S>, n: usize) -> Result<HermitianMatrix<S>> {
    let m = assemble(spec, n)?;
    ldl_decompose(&m)?;
    Ok(m)
}

fn assemble<S: Scalar>(spec: &SobolevSpec<S>, n: usize) -> Result<HermitianMatrix<S>> {
    let mut total = HermitianMatrix::from_upper(n + 1, |_, _| S::zero());
    for c in spec.components.iter().take_while(|c| c.order <= n) {
        let part = derivative_operator(c.order, n + 1)
            .conjugate(&c.source.as_source().truncation(n - c.order)?)?;
        total = total.add(&part)?;
    }
    Ok(total)
}

impl<S: Scalar> MatrixSource<S> for SobolevSpec<S> {
    fn label(&self) -> String {
        format!("sobolev[{self}]")
    }

    fn entry(&self, a: usize, b: usize) -> Result<S> {
        let mut acc = S::zero();
        for c in &self.components {
            let j = c.order;
            if a < j || b < j {
                continue;
            }
            let op = derivative_operator(j, a.max(b) + 1);
            let fa: S = op.entry(a, a - j);
            let fb: S = op.entry(b, b - j);
            acc = acc
                + fa.mul_ref(&c.source.as_source().entry(a - j, b - j)?)
                    .mul_ref(&fb);
        }
        Ok(acc)
    }

    fn max_degree(&self) -> Option<usize> {
        // A finite component of degree d supports Sobolev degree d + order.
        self.components
            .iter()
            .filter_map(|c| c.source.as_source().max_degree().map(|d| d + c.order))
            .min()
    }

    fn truncation(&self, n: usize) -> Result<HermitianMatrix<S>> {
        assemble(self, n)
    }
}

/// v M w*, with v, w the coefficient vectors of p and q.
pub fn inner_product<S: Scalar>(
    p: &Polynomial<S>,
    q: &Polynomial<S>,
    m: &HermitianMatrix<S>,
) -> Result<S> {
    let size = m.size();
    for (name, poly) in [("p", p), ("q", q)] {
        if poly.degree().is_some_and(|d| d >= size) {
            return Err(Error::SizeMismatch(format!(
                "{name} has degree {} but the matrix only has size {size}",
                poly.degree().unwrap_or(0)
            )));
        }
    }
    let mut acc = S::zero();
    for (i, v) in p.coeffs().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut row = S::zero();
        for (j, w) in q.coeffs().iter().enumerate() {
            row = row + m.get(i, j).mul_ref(&w.conj());
        }
        acc = acc + v.mul_ref(&row);
    }
    Ok(acc)
}

/// Σ_j ⟨p^{(j)}, q^{(j)}⟩_{M_j} with derivatives taken formally.
pub fn sobolev_inner_product_direct<S: Scalar>(
    p: &Polynomial<S>,
    q: &Polynomial<S>,
    spec: &SobolevSpec<S>,
) -> Result<S> {
    let deg = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
    let mut acc = S::zero();
    for c in &spec.components {
        let dp = p.derivative(c.order);
        let dq = q.derivative(c.order);
        if dp.is_zero() || dq.is_zero() {
            continue;
        }
        let m = c
            .source
            .as_source()
            .truncation(deg.saturating_sub(c.order))?;
        acc = acc + inner_product(&dp, &dq, &m)?;
    }
    Ok(acc)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::matrix::{adjoint, matmul};
    use crate::scalar::{binomial, Complex64};

    fn ex(v: i64) -> ExactComplex {
        ExactComplex::from_integer(v)
    }

    fn poly(c: &[i64]) -> Polynomial<ExactComplex> {
        Polynomial::new(c.iter().map(|v| ex(*v)).collect())
    }

    pub(crate) fn example2() -> SobolevSpec<ExactComplex> {
        SobolevSpec::from_measures(&[
            ("circle:1,0,1".parse().unwrap(), 0),
            (MeasureSpec::UnitCircle, 1),
        ])
        .unwrap()
    }

    #[test]
    fn first_derivative_operator() {
        let op = derivative_operator(1, 5);
        let m: Array2<ExactComplex> = op.to_matrix();
        for n in 0..5 {
            for k in 0..5 {
                let expected = if n >= 1 && k == n - 1 {
                    ex(n as i64)
                } else {
                    ex(0)
                };
                assert_eq!(m[[n, k]], expected);
            }
        }
    }

    #[test]
    fn zeroth_and_second_order() {
        let id: Array2<ExactComplex> = derivative_operator(0, 4).to_matrix();
        assert_eq!(
            id,
            HermitianMatrix::<ExactComplex>::identity(4).into_entries()
        );
        let op: Array2<ExactComplex> = derivative_operator(2, 4).to_matrix();
        let nonzero: Vec<_> = op
            .indexed_iter()
            .filter(|(_, v)| !num::Zero::is_zero(*v))
            .map(|(ix, v)| (ix, v.clone()))
            .collect();
        assert_eq!(nonzero, vec![((2, 0), ex(2)), ((3, 1), ex(6))]);
    }

    #[test]
    fn adjoint_action_differentiates() {
        let op = derivative_operator(2, 6);
        for n in 0..6 {
            let mono = Polynomial::<ExactComplex>::monomial(n);
            assert_eq!(
                op.apply_adjoint(&mono.padded(6)),
                mono.derivative(2).padded(6)
            );
        }
    }

    #[test]
    fn example2_matrix() {
        let m = sobolev_matrix(&example2(), 4).unwrap();
        let rows = [
            [1, 1, 1, 1, 1],
            [1, 3, 3, 4, 5],
            [1, 3, 10, 10, 15],
            [1, 4, 10, 29, 35],
            [1, 5, 15, 35, 86],
        ];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), &ex(*v));
            }
        }
        // closed form C(i+j, i) + δ_ij i²
        let big = sobolev_matrix(&example2(), 12).unwrap();
        for i in 0..13 {
            for j in 0..13 {
                let mut v = binomial(i + j, i);
                if i == j {
                    v += i * i;
                }
                assert_eq!(big.get(i, j), &ExactComplex::from_integer(v));
            }
        }
    }

    #[test]
    fn single_and_doubled_unit_circle() {
        let s =
            SobolevSpec::<ExactComplex>::from_measures(&[(MeasureSpec::UnitCircle, 0)]).unwrap();
        assert_eq!(sobolev_matrix(&s, 3).unwrap(), HermitianMatrix::identity(4));
        let s = SobolevSpec::<ExactComplex>::from_measures(&[
            (MeasureSpec::UnitCircle, 0),
            (MeasureSpec::UnitCircle, 1),
        ])
        .unwrap();
        assert_eq!(
            sobolev_matrix(&s, 2).unwrap(),
            HermitianMatrix::diagonal(&[ex(1), ex(2), ex(5)])
        );
    }

    #[test]
    fn truncation_commutes_with_assembly() {
        let spec = SobolevSpec::<ExactComplex>::from_measures(&[
            ("circle:1/2,1/3,1".parse().unwrap(), 0),
            ("wcircle:2;1/2,1/4".parse().unwrap(), 1),
            (MeasureSpec::DiskArea, 3),
        ])
        .unwrap();
        let n = 5;
        let big_n = 9;
        let direct = sobolev_matrix(&spec, n).unwrap();
        // dense products of larger truncations, then truncate
        let mut dense = Array2::from_elem((big_n + 1, big_n + 1), ex(0));
        for c in spec.components() {
            let lam: Array2<ExactComplex> = derivative_operator(c.order, big_n + 1).to_matrix();
            let mj = c.source.as_source().truncation(big_n).unwrap();
            let prod = matmul(&matmul(&lam, mj.entries()), &adjoint(&lam));
            dense = dense + prod;
        }
        assert_eq!(
            direct,
            HermitianMatrix::new(dense).unwrap().leading(n).unwrap()
        );
        for a in 0..=n {
            for b in 0..=n {
                assert_eq!(&MatrixSource::entry(&spec, a, b).unwrap(), direct.get(a, b));
            }
        }
    }

    #[test]
    fn spec_validation() {
        let bad = SobolevSpec::<ExactComplex>::from_measures(&[
            (MeasureSpec::UnitCircle, 1),
            (MeasureSpec::UnitCircle, 0),
        ]);
        assert!(matches!(bad, Err(Error::InvalidInput(_))));
        let semidef = HermitianMatrix::<ExactComplex>::diagonal(&[ex(1), ex(0)]);
        let bad = SobolevSpec::new(vec![SobolevComponent {
            source: ComponentSource::Matrix(semidef.clone()),
            order: 0,
        }]);
        assert_eq!(bad, Err(Error::NotPositiveDefinite(1)));
        // semidefinite higher components are fine
        let ok = SobolevSpec::new(vec![
            SobolevComponent {
                source: ComponentSource::Measure(MeasureSpec::UnitCircle),
                order: 0,
            },
            SobolevComponent {
                source: ComponentSource::Matrix(semidef),
                order: 2,
            },
        ])
        .unwrap();
        assert!(!ok.consecutive_orders());
        assert_eq!(MatrixSource::max_degree(&ok), Some(3));
        assert!(MatrixSource::truncation(&ok, 3).is_ok());
    }

    #[test]
    fn inner_products() {
        let ms = sobolev_matrix(&example2(), 4).unwrap();
        let z = poly(&[0, 1]);
        assert_eq!(inner_product(&z, &z, &ms).unwrap(), ex(3));
        let one_plus_z = poly(&[1, 1]);
        assert_eq!(
            inner_product(&one_plus_z, &one_plus_z, &HermitianMatrix::identity(2)).unwrap(),
            ex(2)
        );
        let pascal = MeasureSpec::moment_matrix(&"circle:1,0,1".parse().unwrap(), 4);
        assert_eq!(inner_product(&poly(&[1]), &z, &pascal).unwrap(), ex(1));
        assert!(matches!(
            inner_product(&poly(&[0, 0, 1]), &z, &HermitianMatrix::identity(2)),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn direct_sobolev_products() {
        let spec = example2();
        let z2 = poly(&[0, 0, 1]);
        assert_eq!(
            sobolev_inner_product_direct(&z2, &z2, &spec).unwrap(),
            ex(10)
        );
        assert_eq!(
            sobolev_inner_product_direct(&poly(&[1]), &poly(&[1]), &spec).unwrap(),
            ex(1)
        );
        assert_eq!(
            sobolev_inner_product_direct(&poly(&[0, 1]), &z2, &spec).unwrap(),
            ex(3)
        );
    }

    #[test]
    fn complex_inner_product_is_conjugate_symmetric() {
        let m = MeasureSpec::moment_matrix(&"circle:1/2,1/3,1".parse().unwrap(), 3);
        let p = Polynomial::new(vec![ExactComplex::i(), ex(2), ex(-1)]);
        let q = Polynomial::new(vec![ex(1), ExactComplex::i(), ex(0), ex(3)]);
        assert_eq!(
            inner_product(&p, &q, &m).unwrap(),
            inner_product(&q, &p, &m).unwrap().conj()
        );
        let pp = inner_product(&p, &p, &m).unwrap();
        assert!(pp.is_real() && pp.to_c64().re > 0.0);
        let f: HermitianMatrix<Complex64> = m.to_float();
        let fp = inner_product(&p.to_float(), &p.to_float(), &f).unwrap();
        assert!((fp - pp.to_c64()).norm() < 1e-12);
    }
}
