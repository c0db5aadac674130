//! Scalar fields used by every matrix in the crate.
//!
//! Two implementations exist: [`ExactComplex`], a Gaussian rational with
//! arbitrary-precision parts, and [`Complex64`]. Conversion only ever goes
//! from exact to float.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

pub use num::complex::Complex64;

pub type Rational = BigRational;

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }

    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> Rational {
        if self.im.is_zero() {
            &self.re * &self.re
        } else {
            &self.re * &self.re + &self.im * &self.im
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::from_integer(1);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Round-to-nearest conversion that survives numerators and denominators
/// far outside the f64 range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    // Fall back to scaling by powers of two.
    let num = r.numer().abs();
    let den = r.denom().clone();
    let shift = num.bits() as i64 - den.bits() as i64;
    let (n, d) = if shift > 60 {
        (num, den << (shift - 60) as usize)
    } else if shift < -60 {
        (num << (-shift - 60) as usize, den)
    } else {
        (num, den)
    };
    let mantissa = Rational::new(n, d).to_f64().unwrap_or(f64::NAN);
    let exp = if shift > 60 {
        shift - 60
    } else if shift < -60 {
        shift + 60
    } else {
        0
    };
    let v = mantissa * 2f64.powi(exp.clamp(-2000, 2000) as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if t.contains('/') || frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let mag = BigInt::from_str(&digits).ok()?;
        let den = num::pow(BigInt::from(10), frac_part.len());
        let r = Rational::new(mag, den);
        return Some(if negative { -r } else { r });
    }
    let r = Rational::from_str(t).ok()?;
    Some(r)
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", format_rational(&self.im))
        } else if self.im.is_negative() {
            write!(
                f,
                "{}-{}i",
                format_rational(&self.re),
                format_rational(&-&self.im)
            )
        } else {
            write!(
                f,
                "{}+{}i",
                format_rational(&self.re),
                format_rational(&self.im)
            )
        }
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, o: &ExactComplex) -> ExactComplex {
        let im = if self.im.is_zero() {
            o.im.clone()
        } else if o.im.is_zero() {
            self.im.clone()
        } else {
            &self.im + &o.im
        };
        ExactComplex {
            re: &self.re + &o.re,
            im,
        }
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, o: &ExactComplex) -> ExactComplex {
        let im = if o.im.is_zero() {
            self.im.clone()
        } else {
            &self.im - &o.im
        };
        ExactComplex {
            re: &self.re - &o.re,
            im,
        }
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, o: &ExactComplex) -> ExactComplex {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => ExactComplex::from_rational(&self.re * &o.re),
            (true, false) => ExactComplex {
                re: &self.re * &o.re,
                im: &self.re * &o.im,
            },
            (false, true) => ExactComplex {
                re: &self.re * &o.re,
                im: &self.im * &o.re,
            },
            (false, false) => ExactComplex {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl<'a> Div<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn div(self, o: &ExactComplex) -> ExactComplex {
        assert!(!Zero::is_zero(o), "division by exact zero");
        if o.im.is_zero() {
            return ExactComplex {
                re: &self.re / &o.re,
                im: &self.im / &o.re,
            };
        }
        let den = o.norm_sqr();
        let num = self * &o.conj();
        ExactComplex {
            re: num.re / &den,
            im: num.im / den,
        }
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, o: ExactComplex) -> ExactComplex { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -&self
    }
}

impl Zero for ExactComplex {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactComplex {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

/// Field operations shared by the exact and float paths.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for the rational implementation.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_exact(v: &ExactComplex) -> Self;
    fn from_i64(v: i64) -> Self {
        Self::from_exact(&ExactComplex::from_integer(v))
    }
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_c64(&self) -> Complex64;
    /// The exact value, when this scalar carries one.
    fn to_exact(&self) -> Option<ExactComplex>;
    /// Lift a float; `None` for exact scalars, which never absorb floats.
    fn from_float(v: Complex64) -> Option<Self>;
    /// Real part, imaginary part discarded.
    fn real(&self) -> Self;
    /// Hermitian pair check: exact equality, or 1e-14 relative to `scale`.
    fn conj_matches(&self, other: &Self, scale: f64) -> bool;
    /// Pivot positivity for LDL: exact sign test, or a cutoff of
    /// `1e-13 * max_diag` in float.
    fn is_positive_pivot(&self, max_diag: f64) -> bool;

    /// `self - a * b`; overridden to avoid clones for big rationals.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.clone() - a.clone() * b.clone()
    }
    fn mul_ref(&self, b: &Self) -> Self {
        self.clone() * b.clone()
    }
}

pub const FLOAT_PIVOT_TOL: f64 = 1e-13;

impl Scalar for ExactComplex {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_integer(1)
    }
    fn from_exact(v: &ExactComplex) -> Self {
        v.clone()
    }
    fn conj(&self) -> Self {
        ExactComplex::conj(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_c64(&self) -> Complex64 {
        ExactComplex::to_c64(self)
    }
    fn to_exact(&self) -> Option<ExactComplex> {
        Some(self.clone())
    }
    fn from_float(_: Complex64) -> Option<Self> {
        None
    }
    fn real(&self) -> Self {
        Self::from_rational(self.re.clone())
    }
    fn conj_matches(&self, other: &Self, _scale: f64) -> bool {
        self.re == other.re && self.im == -&other.im
    }
    fn is_positive_pivot(&self, _max_diag: f64) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return self.clone();
        }
        self - &(a * b)
    }
    fn mul_ref(&self, b: &Self) -> Self {
        self * b
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_exact(v: &ExactComplex) -> Self {
        v.to_c64()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_exact(&self) -> Option<ExactComplex> {
        None
    }
    fn from_float(v: Complex64) -> Option<Self> {
        Some(v)
    }
    fn real(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }
    fn conj_matches(&self, other: &Self, scale: f64) -> bool {
        (*self - other.conj()).norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE)
    }
    fn is_positive_pivot(&self, max_diag: f64) -> bool {
        self.re > FLOAT_PIVOT_TOL * max_diag
    }
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self - a * b
    }
    fn mul_ref(&self, b: &Self) -> Self {
        self * b
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// n! / (n - j)! for n ≥ j, else 0.
pub fn falling_factorial(n: usize, j: usize) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    ((n - j + 1)..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
