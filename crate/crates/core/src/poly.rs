//! Dense univariate polynomials over a [`Scalar`] field.

use crate::error::{Error, Result};
use crate::scalar::{falling_factorial, Complex64, ExactComplex, Scalar};

/// Coefficients in ascending order; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![S::one()],
        }
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![S::zero(); k + 1];
        c[k] = S::one();
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Coefficient vector padded with zeros (or truncated) to `len`.
    pub fn padded(&self, len: usize) -> Vec<S> {
        (0..len)
            .map(|k| self.coeffs.get(k).cloned().unwrap_or_else(S::zero))
            .collect()
    }

    /// j-fold formal derivative.
    pub fn derivative(&self, j: usize) -> Self {
        if j == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(j)
            .map(|(k, c)| {
                let f = S::from_exact(&ExactComplex::from_integer(falling_factorial(k, j)));
                c.mul_ref(&f)
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.padded(n)
                .into_iter()
                .zip(other.padded(n))
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.padded(n)
                .into_iter()
                .zip(other.padded(n))
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.mul_ref(b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|v| v.mul_ref(c)).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lead) => {
                let inv = S::one() / lead.clone();
                let mut p = self.scale(&inv);
                if let Some(last) = p.coeffs.last_mut() {
                    *last = S::one();
                }
                p
            }
        }
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lead = d.leading().expect("non-zero").clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); sd - dd + 1];
        for k in (0..=(sd - dd)).rev() {
            let coef = rem[k + dd].clone() / lead.clone();
            if !coef.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].sub_mul(&coef, dc);
                }
            }
            rem[k + dd] = S::zero();
            quot[k] = coef;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Horner evaluation in float.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        evaluate(self, z)
    }

    pub fn to_float(&self) -> Polynomial<Complex64> {
        Polynomial::new(self.coeffs.iter().map(|c| c.to_c64()).collect())
    }
}

/// Horner evaluation; exact coefficients are converted to float first.
pub fn evaluate<S: Scalar>(p: &Polynomial<S>, z: Complex64) -> Complex64 {
    p.coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
}

impl Polynomial<ExactComplex> {
    /// Monic greatest common divisor over the Gaussian rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is non-zero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free factorization: returns (factor, multiplicity) pairs
    /// with square-free, pairwise coprime monic factors whose product with
    /// multiplicities is `self.monic()`.
    pub fn square_free(&self) -> Vec<(Self, usize)> {
        let a = self.monic();
        if a.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let b = a.derivative(1);
        let c = a.gcd(&b);
        let mut w = a.div_rem(&c).expect("gcd non-zero").0;
        let mut y = b.div_rem(&c).expect("gcd non-zero").0;
        let mut z = y.sub(&w.derivative(1));
        let mut out = Vec::new();
        let mut mult = 1;
        while w.degree().unwrap_or(0) > 0 {
            let g = w.gcd(&z);
            w = w.div_rem(&g).expect("gcd non-zero").0;
            y = z.div_rem(&g).expect("gcd non-zero").0;
            z = y.sub(&w.derivative(1));
            if g.degree().unwrap_or(0) > 0 {
                out.push((g, mult));
            }
            mult += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: i64) -> ExactComplex {
        ExactComplex::from_integer(v)
    }

    fn p(c: &[i64]) -> Polynomial<ExactComplex> {
        Polynomial::new(c.iter().map(|v| ex(*v)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn derivatives() {
        // d²/dz² (z^4) = 12 z^2
        assert_eq!(
            Polynomial::<ExactComplex>::monomial(4).derivative(2),
            p(&[0, 0, 12])
        );
        assert_eq!(p(&[5]).derivative(1), p(&[]));
    }

    #[test]
    fn division() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!(q, Polynomial::new(vec![ex(0), ExactComplex::ratio(1, 2)]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn square_free_of_power() {
        // (z-1)^3 (z+2)
        let f = p(&[-1, 1])
            .mul(&p(&[-1, 1]))
            .mul(&p(&[-1, 1]))
            .mul(&p(&[2, 1]));
        let sf = f.square_free();
        assert_eq!(sf, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn evaluation() {
        assert_eq!(
            p(&[-1, 0, 1]).evaluate(Complex64::new(2.0, 0.0)),
            Complex64::new(3.0, 0.0)
        );
        let cube = p(&[-1, 3, -3, 1]);
        assert_eq!(
            cube.evaluate(Complex64::new(1.0, 0.0)),
            Complex64::new(0.0, 0.0)
        );
        let z3 = Polynomial::<ExactComplex>::monomial(3);
        assert_eq!(
            z3.evaluate(Complex64::new(0.0, 1.0)),
            Complex64::new(0.0, -1.0)
        );
    }
}
