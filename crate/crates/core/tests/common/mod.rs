//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use num::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sobspec_core::scalar::{Complex64, ExactComplex, Rational};
use sobspec_core::{HermitianMatrix, MeasureSpec, SobolevSpec, WeightedCircle};

pub fn small_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    Rational::new(
        rng.gen_range(-max_num..=max_num).into(),
        rng.gen_range(1..=max_den).into(),
    )
}

/// Trigonometric weight with a_0 = 1 + 2Σ|a_k|₁, so w ≥ 1 everywhere.
pub fn random_weight(rng: &mut ChaCha8Rng) -> WeightedCircle {
    let order = rng.gen_range(1..=3);
    let mut coeffs = vec![ExactComplex::from_integer(0)];
    let mut mass = Rational::from_integer(1.into());
    for _ in 0..order {
        let re = small_rational(rng, 3, 4);
        let im = small_rational(rng, 3, 4);
        mass += (re.clone().abs() + im.clone().abs()) * Rational::from_integer(2.into());
        coeffs.push(ExactComplex::new(re, im));
    }
    coeffs[0] = ExactComplex::from_rational(mass);
    WeightedCircle::new(coeffs).expect("positive by construction")
}

pub fn random_leaf(rng: &mut ChaCha8Rng) -> MeasureSpec {
    match rng.gen_range(0..4) {
        0 => MeasureSpec::UnitCircle,
        1 => MeasureSpec::DiskArea,
        2 => MeasureSpec::WeightedCircle(random_weight(rng)),
        _ => {
            let center = ExactComplex::new(small_rational(rng, 2, 3), small_rational(rng, 2, 3));
            let radius = Rational::new(rng.gen_range(1..=4).into(), rng.gen_range(1..=3).into());
            MeasureSpec::circle(center, radius).expect("positive radius")
        }
    }
}

/// Orders {0, 1} with catalog sources.
pub fn random_sobolev(rng: &mut ChaCha8Rng) -> SobolevSpec<ExactComplex> {
    SobolevSpec::from_measures(&[(random_leaf(rng), 0), (random_leaf(rng), 1)])
        .expect("catalog leaves are definite")
}

/// G G* + δI with G complex Gaussian-ish entries; HPD of the given size.
pub fn random_hpd(rng: &mut ChaCha8Rng, size: usize) -> HermitianMatrix<Complex64> {
    let g: Vec<Complex64> = (0..size * size)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let delta = rng.gen_range(0.05..1.0);
    HermitianMatrix::from_upper(size, |i, j| {
        let mut acc = Complex64::new(if i == j { delta } else { 0.0 }, 0.0);
        for k in 0..size {
            acc += g[i * size + k] * g[j * size + k].conj();
        }
        acc
    })
}

pub fn pascal(n: usize) -> HermitianMatrix<ExactComplex> {
    "circle:1,0,1"
        .parse::<MeasureSpec>()
        .unwrap()
        .moment_matrix(n)
}
