//! Catalog of planar measures with closed-form moments
//! c_{n,m} = ∫ zⁿ z̄^m dμ, a quadrature oracle for them, and the geometry
//! of their supports.
//!
//! Every circle measure is normalized to total mass 1. Weighted circles carry
//! the density w(θ) = Σ_{|k|≤K} a_k e^{ikθ} against dθ/2π, so c_{0,0} = a_0.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num::traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::{
    binomial, format_rational, parse_rational, Complex64, ExactComplex, Rational, Scalar,
};

/// Grid used to certify non-negativity of weighted-circle densities.
pub const WEIGHT_GRID_POINTS: usize = 4096;

/// Radial Gauss–Legendre nodes used by the disk quadrature.
pub const RADIAL_NODES: usize = 48;

/// Real trigonometric-polynomial weight on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedCircle {
    /// a_0 (real, positive) followed by a_1..a_K; a_{-k} = conj(a_k).
    coeffs: Vec<ExactComplex>,
}

impl WeightedCircle {
    pub fn new(coeffs: Vec<ExactComplex>) -> Result<Self> {
        let Some(a0) = coeffs.first() else {
            return Err(Error::InvalidInput("weighted circle needs a_0".into()));
        };
        if !a0.is_real() || !a0.re.is_positive() {
            return Err(Error::InvalidInput(format!(
                "a_0 must be real and positive, got {a0}"
            )));
        }
        let w = Self { coeffs };
        if let Some(theta) = w.first_negative_on_grid(WEIGHT_GRID_POINTS) {
            return Err(Error::InvalidInput(format!(
                "weight is negative at theta = {theta:.6}"
            )));
        }
        Ok(w)
    }

    /// Fourier coefficients a_0..a_K.
    pub fn coeffs(&self) -> &[ExactComplex] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// a_k for any integer k.
    pub fn fourier(&self, k: i64) -> ExactComplex {
        let idx = k.unsigned_abs() as usize;
        match self.coeffs.get(idx) {
            None => ExactComplex::default(),
            Some(c) if k < 0 => c.conj(),
            Some(c) => c.clone(),
        }
    }

    /// w(θ) = a_0 + 2 Re Σ_{k≥1} a_k e^{ikθ}.
    pub fn eval(&self, theta: f64) -> f64 {
        let mut v = self.coeffs[0].to_c64().re;
        for (k, a) in self.coeffs.iter().enumerate().skip(1) {
            let e = Complex64::from_polar(1.0, k as f64 * theta);
            v += 2.0 * (a.to_c64() * e).re;
        }
        v
    }

    fn first_negative_on_grid(&self, points: usize) -> Option<f64> {
        (0..points)
            .map(|i| 2.0 * PI * i as f64 / points as f64)
            .find(|t| self.eval(*t) < 0.0)
    }

    /// Product of two weights (Fourier convolution), exact.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let k = (self.order() + other.order()) as i64;
        let coeffs = (0..=k)
            .map(|n| {
                let mut acc = ExactComplex::default();
                for j in -(self.order() as i64)..=(self.order() as i64) {
                    let b = other.fourier(n - j);
                    if !Zero::is_zero(&b) {
                        acc = &acc + &(&self.fourier(j) * &b);
                    }
                }
                acc
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        let f = ExactComplex::from_rational(c.clone());
        Self::new(self.coeffs.iter().map(|a| a * &f).collect())
    }
}

/// Symbolic description of a catalog measure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MeasureSpec {
    /// Normalized arc length on |z| = 1.
    UnitCircle,
    /// Normalized arc length on |z − center| = radius.
    Circle {
        center: ExactComplex,
        radius: Rational,
    },
    WeightedCircle(WeightedCircle),
    /// Normalized area measure dA/π on |z| ≤ 1.
    DiskArea,
    WeightedSum(Vec<(Rational, MeasureSpec)>),
}

impl MeasureSpec {
    pub fn circle(center: ExactComplex, radius: Rational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::InvalidInput(format!(
                "circle radius must be positive, got {}",
                format_rational(&radius)
            )));
        }
        Ok(MeasureSpec::Circle { center, radius })
    }

    pub fn weighted_sum(parts: Vec<(Rational, MeasureSpec)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("empty weighted sum".into()));
        }
        if let Some((w, _)) = parts.iter().find(|(w, _)| !w.is_positive()) {
            return Err(Error::InvalidInput(format!(
                "sum weights must be positive, got {}",
                format_rational(w)
            )));
        }
        Ok(MeasureSpec::WeightedSum(parts))
    }

    /// c_{n,m} = ∫ zⁿ z̄^m dμ, exact.
    pub fn moment(&self, n: usize, m: usize) -> ExactComplex {
        match self {
            MeasureSpec::UnitCircle => delta(n, m),
            MeasureSpec::DiskArea => {
                if n == m {
                    ExactComplex::ratio(1, n as i64 + 1)
                } else {
                    ExactComplex::default()
                }
            }
            MeasureSpec::WeightedCircle(w) => w.fourier(m as i64 - n as i64),
            MeasureSpec::Circle { center, radius } => circle_moment(center, radius, n, m),
            MeasureSpec::WeightedSum(parts) => {
                parts
                    .iter()
                    .fold(ExactComplex::default(), |acc, (w, spec)| {
                        &acc + &(&ExactComplex::from_rational(w.clone()) * &spec.moment(n, m))
                    })
            }
        }
    }

    /// (n+1)×(n+1) moment matrix.
    pub fn moment_matrix(&self, n: usize) -> HermitianMatrix<ExactComplex> {
        HermitianMatrix::from_upper(n + 1, |i, j| self.moment(i, j))
    }

    /// Moment matrix converted entry-wise to float.
    pub fn moment_matrix_as<S: Scalar>(&self, n: usize) -> HermitianMatrix<S> {
        HermitianMatrix::from_upper(n + 1, |i, j| S::from_exact(&self.moment(i, j)))
    }

    /// The density, if this is a weighted circle.
    pub fn weight(&self) -> Option<&WeightedCircle> {
        match self {
            MeasureSpec::WeightedCircle(w) => Some(w),
            _ => None,
        }
    }

    /// Smallest catalog disk containing the polynomial convex hull of the support.
    pub fn hull(&self) -> HullDescriptor {
        let (center, radius) = match self {
            MeasureSpec::UnitCircle | MeasureSpec::WeightedCircle(_) | MeasureSpec::DiskArea => {
                (Complex64::new(0.0, 0.0), 1.0)
            }
            MeasureSpec::Circle { center, radius } => {
                (center.to_c64(), crate::scalar::rational_to_f64(radius))
            }
            MeasureSpec::WeightedSum(parts) => {
                let disks: Vec<(Complex64, f64)> = parts
                    .iter()
                    .map(|(_, s)| {
                        let h = s.hull();
                        (h.center, h.radius)
                    })
                    .collect();
                enclosing_disk(&disks)
            }
        };
        HullDescriptor {
            center,
            radius,
            sup_abs: center.norm() + radius,
        }
    }

    /// Pieces of the support: circles or closed disks.
    pub fn support(&self) -> Vec<SupportPiece> {
        match self {
            MeasureSpec::UnitCircle | MeasureSpec::WeightedCircle(_) => {
                vec![SupportPiece::Circle {
                    center: Complex64::new(0.0, 0.0),
                    radius: 1.0,
                }]
            }
            MeasureSpec::Circle { center, radius } => {
                vec![SupportPiece::Circle {
                    center: center.to_c64(),
                    radius: crate::scalar::rational_to_f64(radius),
                }]
            }
            MeasureSpec::DiskArea => vec![SupportPiece::Disk {
                center: Complex64::new(0.0, 0.0),
                radius: 1.0,
            }],
            MeasureSpec::WeightedSum(parts) => {
                parts.iter().flat_map(|(_, s)| s.support()).collect()
            }
        }
    }
}

fn delta(n: usize, m: usize) -> ExactComplex {
    if n == m {
        ExactComplex::from_integer(1)
    } else {
        ExactComplex::default()
    }
}

/// Σ_k C(n,k) C(m,k) a^{n−k} ā^{m−k} r^{2k}.
fn circle_moment(a: &ExactComplex, r: &Rational, n: usize, m: usize) -> ExactComplex {
    let r2 = ExactComplex::from_rational(r * r);
    if Zero::is_zero(a) {
        return if n == m {
            r2.pow(n)
        } else {
            ExactComplex::default()
        };
    }
    let abar = a.conj();
    let mut acc = ExactComplex::default();
    for k in 0..=n.min(m) {
        let c = ExactComplex::from_integer(binomial(n, k) * binomial(m, k));
        let term = &(&(&c * &a.pow(n - k)) * &abar.pow(m - k)) * &r2.pow(k);
        acc = &acc + &term;
    }
    acc
}

/// Disk enclosing a set of disks, minimizing radius.
fn enclosing_disk(disks: &[(Complex64, f64)]) -> (Complex64, f64) {
    let reach = |c: Complex64| {
        disks
            .iter()
            .map(|(d, r)| (c - d).norm() + r)
            .fold(0.0, f64::max)
    };
    // One of the disks may already contain all the others.
    for (c, r) in disks {
        if reach(*c) <= r + 1e-15 {
            return (*c, *r);
        }
    }
    // Optimum fixed by two disks: centre on the segment between them.
    let mut best: Option<(Complex64, f64)> = None;
    for (i, (c1, r1)) in disks.iter().enumerate() {
        for (c2, r2) in &disks[i + 1..] {
            let d = (c2 - c1).norm();
            if d == 0.0 {
                continue;
            }
            let radius = (d + r1 + r2) / 2.0;
            let c = c1 + (c2 - c1) * ((radius - r1) / d);
            if reach(c) <= radius * (1.0 + 1e-14) && best.is_none_or(|(_, r)| radius < r) {
                best = Some((c, radius));
            }
        }
    }
    if let Some(found) = best {
        return found;
    }
    // Otherwise three disks are active; reach is convex, so a nested
    // golden-section search on a bounding box finds the centre.
    let xs = disks.iter().map(|(c, r)| (c.re - r, c.re + r));
    let ys = disks.iter().map(|(c, r)| (c.im - r, c.im + r));
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (l, h)| {
        (a.min(l), b.max(h))
    });
    let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (l, h)| {
        (a.min(l), b.max(h))
    });
    let best_y = |x: f64| golden_min(|y| reach(Complex64::new(x, y)), y0, y1, 1e-13);
    let x = golden_min(|x| best_y(x).1, x0, x1, 1e-13).0;
    let y = best_y(x).0;
    let c = Complex64::new(x, y);
    (c, reach(c))
}

/// Golden-section minimization of a unimodal function; returns (argmin, min).
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// Closed disk enclosing the polynomial convex hull of a support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HullDescriptor {
    pub center: Complex64,
    pub radius: f64,
    /// max |z| over the disk.
    pub sup_abs: f64,
}

impl HullDescriptor {
    pub fn contains_disk(&self, other: &HullDescriptor) -> bool {
        (other.center - self.center).norm() + other.radius <= self.radius + 1e-12
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupportPiece {
    Circle { center: Complex64, radius: f64 },
    Disk { center: Complex64, radius: f64 },
}

impl SupportPiece {
    fn center_radius(&self) -> (Complex64, f64) {
        match *self {
            SupportPiece::Circle { center, radius } | SupportPiece::Disk { center, radius } => {
                (center, radius)
            }
        }
    }

    /// Whether this piece lies inside `outer`, up to 1e-12.
    pub fn within(&self, outer: &SupportPiece) -> bool {
        let (c1, r1) = self.center_radius();
        let (c2, r2) = outer.center_radius();
        let d = (c1 - c2).norm();
        match (self, outer) {
            (_, SupportPiece::Disk { .. }) => d + r1 <= r2 + 1e-12,
            (SupportPiece::Circle { .. }, SupportPiece::Circle { .. }) => {
                d <= 1e-12 && (r1 - r2).abs() <= 1e-12
            }
            (SupportPiece::Disk { .. }, SupportPiece::Circle { .. }) => false,
        }
    }

    /// Whether the two pieces share no point (or only finitely many, for two
    /// distinct circles, which carry no arc-length mass).
    pub fn disjoint_from(&self, other: &SupportPiece) -> bool {
        let (c1, r1) = self.center_radius();
        let (c2, r2) = other.center_radius();
        let d = (c1 - c2).norm();
        match (self, other) {
            (SupportPiece::Circle { .. }, SupportPiece::Circle { .. }) => {
                !(d <= 1e-12 && (r1 - r2).abs() <= 1e-12)
            }
            (SupportPiece::Disk { .. }, SupportPiece::Disk { .. }) => d > r1 + r2 + 1e-12,
            (SupportPiece::Circle { .. }, SupportPiece::Disk { .. }) => {
                d > r1 + r2 + 1e-12 || d + r2 < r1 - 1e-12
            }
            (SupportPiece::Disk { .. }, SupportPiece::Circle { .. }) => other.disjoint_from(self),
        }
    }
}

/// supp(inner) ⊂ supp(outer), piece by piece.
pub fn support_contained(inner: &MeasureSpec, outer: &MeasureSpec) -> bool {
    let outer_pieces = outer.support();
    inner
        .support()
        .iter()
        .all(|p| outer_pieces.iter().any(|o| p.within(o)))
}

/// The supports meet in at most a set that is null for both measures.
pub fn supports_disjoint(a: &MeasureSpec, b: &MeasureSpec) -> bool {
    let bp = b.support();
    a.support()
        .iter()
        .all(|p| bp.iter().all(|q| p.disjoint_from(q)))
}

/// Trapezoid rule in θ (and Gauss–Legendre in the radius for the disk)
/// applied to zⁿ z̄^m; independent of the closed forms above.
pub fn quadrature_moment_oracle(
    spec: &MeasureSpec,
    n: usize,
    m: usize,
    points: usize,
) -> Result<Complex64> {
    if points < 64 {
        return Err(Error::InvalidInput(format!(
            "quadrature needs at least 64 points, got {points}"
        )));
    }
    let angles = (0..points).map(|i| 2.0 * PI * i as f64 / points as f64);
    let integrand = |z: Complex64| z.powu(n as u32) * z.conj().powu(m as u32);
    let avg = |sum: Complex64| sum / points as f64;
    match spec {
        MeasureSpec::UnitCircle => Ok(avg(angles
            .map(|t| integrand(Complex64::from_polar(1.0, t)))
            .sum())),
        MeasureSpec::Circle { center, radius } => {
            let a = center.to_c64();
            let r = crate::scalar::rational_to_f64(radius);
            Ok(avg(angles
                .map(|t| integrand(a + Complex64::from_polar(r, t)))
                .sum()))
        }
        MeasureSpec::WeightedCircle(w) => Ok(avg(angles
            .map(|t| integrand(Complex64::from_polar(1.0, t)) * w.eval(t))
            .sum())),
        MeasureSpec::DiskArea => {
            let (nodes, weights) = gauss_legendre_unit(RADIAL_NODES);
            let mut total = Complex64::new(0.0, 0.0);
            for t in angles {
                let e = Complex64::from_polar(1.0, t);
                for (x, wt) in nodes.iter().zip(&weights) {
                    // dA/π = 2r dr · dθ/2π
                    total += integrand(e * *x) * (2.0 * x * wt);
                }
            }
            Ok(avg(total))
        }
        MeasureSpec::WeightedSum(_) => Err(Error::UnsupportedMeasure {
            op: "quadrature_moment_oracle",
            spec: spec.to_string(),
        }),
    }
}

/// Gauss–Legendre nodes and weights on [0, 1].
pub fn gauss_legendre_unit(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    let nf = count as f64;
    for i in 0..count {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(count, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(count, x);
        if d.is_finite() {
            dp = d;
        }
        nodes.push((x + 1.0) / 2.0);
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn parse_q(token: &str) -> Result<Rational> {
    parse_rational(token)
        .ok_or_else(|| Error::parse(token, "expected a rational such as 3, -1/2 or 0.25"))
}

impl FromStr for MeasureSpec {
    type Err = Error;

    /// `unit-circle`, `circle:<re>,<im>,<r>`, `wcircle:<a_0>;<re>,<im>;...`,
    /// `disk-area`, `sum:<w>*<spec>+<w>*<spec>`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "unit-circle" => return Ok(MeasureSpec::UnitCircle),
            "disk-area" => return Ok(MeasureSpec::DiskArea),
            _ => {}
        }
        let (kind, body) = t
            .split_once(':')
            .ok_or_else(|| Error::parse(t, "unknown measure"))?;
        match kind {
            "circle" => {
                let parts: Vec<&str> = body.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::parse(body, "circle needs <re>,<im>,<r>"));
                }
                let center = ExactComplex::new(parse_q(parts[0])?, parse_q(parts[1])?);
                MeasureSpec::circle(center, parse_q(parts[2])?)
                    .map_err(|e| Error::parse(parts[2], e.to_string()))
            }
            "wcircle" => {
                let mut fields = body.split(';');
                let a0 = parse_q(fields.next().unwrap_or(""))?;
                let mut coeffs = vec![ExactComplex::from_rational(a0)];
                for f in fields {
                    let (re, im) = f
                        .split_once(',')
                        .ok_or_else(|| Error::parse(f, "coefficient needs <re>,<im>"))?;
                    coeffs.push(ExactComplex::new(parse_q(re)?, parse_q(im)?));
                }
                WeightedCircle::new(coeffs)
                    .map(MeasureSpec::WeightedCircle)
                    .map_err(|e| Error::parse(body, e.to_string()))
            }
            "sum" => {
                let mut parts = Vec::new();
                for term in body.split('+') {
                    let (w, spec) = term
                        .split_once('*')
                        .ok_or_else(|| Error::parse(term, "term needs <w>*<spec>"))?;
                    if spec.trim_start().starts_with("sum:") {
                        return Err(Error::parse(spec, "nested sums are not supported"));
                    }
                    parts.push((parse_q(w)?, spec.parse()?));
                }
                MeasureSpec::weighted_sum(parts).map_err(|e| Error::parse(body, e.to_string()))
            }
            _ => Err(Error::parse(kind, "unknown measure kind")),
        }
    }
}

impl fmt::Display for MeasureSpec {
    /// Canonical text form; parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::UnitCircle => write!(f, "unit-circle"),
            MeasureSpec::DiskArea => write!(f, "disk-area"),
            MeasureSpec::Circle { center, radius } => write!(
                f,
                "circle:{},{},{}",
                format_rational(&center.re),
                format_rational(&center.im),
                format_rational(radius)
            ),
            MeasureSpec::WeightedCircle(w) => {
                write!(f, "wcircle:{}", format_rational(&w.coeffs[0].re))?;
                for c in &w.coeffs[1..] {
                    write!(f, ";{},{}", format_rational(&c.re), format_rational(&c.im))?;
                }
                Ok(())
            }
            MeasureSpec::WeightedSum(parts) => {
                write!(f, "sum:")?;
                for (i, (w, s)) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{}*{}", format_rational(w), s)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: i64) -> ExactComplex {
        ExactComplex::from_integer(v)
    }

    fn spec(t: &str) -> MeasureSpec {
        t.parse().unwrap()
    }

    #[test]
    fn unit_circle_moments() {
        assert_eq!(MeasureSpec::UnitCircle.moment(3, 3), ex(1));
        assert_eq!(MeasureSpec::UnitCircle.moment(3, 2), ex(0));
    }

    #[test]
    fn half_circle_diagonal() {
        let s = spec("circle:0,0,1/2");
        for n in 0..6 {
            assert_eq!(
                s.moment(n, n),
                ExactComplex::from_rational(Rational::new(
                    1.into(),
                    num::pow(num::BigInt::from(4), n)
                ))
            );
        }
        assert_eq!(s.moment(2, 1), ex(0));
    }

    #[test]
    fn shifted_circle_is_pascal() {
        let s = spec("circle:1,0,1");
        assert_eq!(s.moment(2, 1), ex(3));
        let m = s.moment_matrix(4);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m.get(i, j), &ExactComplex::from_integer(binomial(i + j, i)));
            }
        }
    }

    #[test]
    fn disk_area_moment() {
        assert_eq!(
            MeasureSpec::DiskArea.moment(2, 2),
            ExactComplex::ratio(1, 3)
        );
    }

    #[test]
    fn weighted_circle_toeplitz() {
        let s = spec("wcircle:2;1/2,0");
        let m = s.moment_matrix(2);
        let half = ExactComplex::ratio(1, 2);
        let expected = [
            [ex(2), half.clone(), ex(0)],
            [half.clone(), ex(2), half.clone()],
            [ex(0), half.clone(), ex(2)],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), v);
            }
        }
    }

    #[test]
    fn complex_weight_orientation() {
        // w = 1 + 2 Re(a_1 e^{iθ}); c_{0,1} = a_1.
        let s = spec("wcircle:1;0,1/4");
        assert_eq!(
            s.moment(0, 1),
            ExactComplex::new(Rational::zero(), Rational::new(1.into(), 4.into()))
        );
        let q = quadrature_moment_oracle(&s, 0, 1, 256).unwrap();
        assert!((q - Complex64::new(0.0, 0.25)).norm() < 1e-14);
    }

    #[test]
    fn weighted_sum_moments() {
        let s = spec("sum:1/2*unit-circle+1/2*disk-area");
        assert_eq!(s.moment(1, 1), ExactComplex::ratio(3, 4));
    }

    #[test]
    fn oracle_examples() {
        let q = quadrature_moment_oracle(&spec("circle:1,0,1"), 2, 2, 4096).unwrap();
        assert!((q - 6.0).norm() < 1e-10);
        let q = quadrature_moment_oracle(&MeasureSpec::UnitCircle, 1, 0, 256).unwrap();
        assert!(q.norm() < 1e-12);
        let q = quadrature_moment_oracle(&MeasureSpec::DiskArea, 1, 1, 4096).unwrap();
        assert!((q - 0.5).norm() < 1e-8);
        assert!(matches!(
            quadrature_moment_oracle(&spec("sum:1*unit-circle"), 0, 0, 4096),
            Err(Error::UnsupportedMeasure { .. })
        ));
    }

    #[test]
    fn hulls() {
        let h = spec("circle:1,0,1").hull();
        assert_eq!(
            (h.center, h.radius, h.sup_abs),
            (Complex64::new(1.0, 0.0), 1.0, 2.0)
        );
        let h = MeasureSpec::UnitCircle.hull();
        assert_eq!(
            (h.center, h.radius, h.sup_abs),
            (Complex64::new(0.0, 0.0), 1.0, 1.0)
        );
        assert_eq!(spec("circle:0,0,1/2").hull().sup_abs, 0.5);
        assert_eq!(MeasureSpec::DiskArea.hull().sup_abs, 1.0);
    }

    #[test]
    fn hull_of_sum_encloses_components() {
        let h = spec("sum:1*circle:-1,0,1+1*circle:2,0,1").hull();
        assert!((h.center - Complex64::new(0.5, 0.0)).norm() < 1e-9);
        assert!((h.radius - 2.5).abs() < 1e-9);
        let h = spec("sum:1*unit-circle+1*circle:0,0,1/2").hull();
        assert_eq!(h.radius, 1.0);
    }

    #[test]
    fn support_relations() {
        let outer = MeasureSpec::UnitCircle;
        let inner = spec("circle:0,0,1/2");
        assert!(!support_contained(&inner, &outer));
        assert!(supports_disjoint(&inner, &outer));
        assert!(support_contained(&inner, &MeasureSpec::DiskArea));
        assert!(support_contained(&spec("wcircle:2;1/2,0"), &outer));
        assert!(!supports_disjoint(&spec("wcircle:2;1/2,0"), &outer));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        for t in [
            "unit-circle",
            "disk-area",
            "circle:1,-1/2,3/4",
            "wcircle:2;1/2,0;0,1/8",
            "sum:1/3*unit-circle+2/3*circle:0,0,1/2",
        ] {
            assert_eq!(spec(t).to_string(), t);
        }
        match "circle:1,0,x".parse::<MeasureSpec>() {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("{other:?}"),
        }
        assert!("circle:0,0,0".parse::<MeasureSpec>().is_err());
        assert!(
            "wcircle:1;1,0".parse::<MeasureSpec>().is_err(),
            "1 + 2cos is negative"
        );
        assert!("wcircle:-1".parse::<MeasureSpec>().is_err());
        assert!("blob".parse::<MeasureSpec>().is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_unit(RADIAL_NODES);
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| x.powi(40) * w).sum();
        assert!((integral - 1.0 / 41.0).abs() < 1e-15);
    }
}
