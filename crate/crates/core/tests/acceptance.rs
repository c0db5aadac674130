//! Acceptance criteria 1–11. Runs without the libtest harness so every
//! criterion prints its own PASS/FAIL line; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::{BigInt, One};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sobspec_core::diagnostics::{
    domination_check, eigen_sequence, hull_containment, multnorm_sequence, ratio_sequence,
    sobolev_zero_radius, support_relation, tail_sum_family, theorem1_bound, weight_extrema,
    zeros_within_multnorm,
};
use sobspec_core::measures::quadrature_moment_oracle;
use sobspec_core::orthopoly::{monic_orthogonal_family, zeros};
use sobspec_core::scalar::{binomial, Complex64, ExactComplex, Rational};
use sobspec_core::sobolev::sobolev_matrix;
use sobspec_core::{HermitianMatrix, Identity, MeasureSpec, Polynomial, Result, SobolevSpec};

type Outcome = Result<std::result::Result<String, String>>;

fn spec(s: &str) -> MeasureSpec {
    s.parse().expect("valid spec")
}

fn example2() -> SobolevSpec<ExactComplex> {
    SobolevSpec::from_measures(&[(spec("circle:1,0,1"), 0), (MeasureSpec::UnitCircle, 1)])
        .expect("valid spec")
}

fn verdict(ok: bool, detail: String) -> std::result::Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_example2_matrix() -> Outcome {
    let rows = [
        [1, 1, 1, 1, 1],
        [1, 3, 3, 4, 5],
        [1, 3, 10, 10, 15],
        [1, 4, 10, 29, 35],
        [1, 5, 15, 35, 86],
    ];
    let m = sobolev_matrix(&example2(), 4)?;
    let expected = HermitianMatrix::from_upper(5, |i, j| ExactComplex::from_integer(rows[i][j]));
    Ok(verdict(m == expected, "exact 5x5 Sobolev matrix".into()))
}

fn c2_example1() -> Outcome {
    let half = spec("circle:0,0,1/2");
    let seq = eigen_sequence::<ExactComplex>(&half, &Identity, 0..=20)?;
    let exact_values = seq
        .rows
        .iter()
        .all(|r| r.beta == 1.0 && r.lambda == 0.25f64.powi(r.n as i32));
    let dom = domination_check::<ExactComplex>(&[&Identity, &half], 20)?;
    let contained = hull_containment(&half, &MeasureSpec::UnitCircle)?;
    let rel = support_relation(&half, &MeasureSpec::UnitCircle)?;
    let ok = exact_values && dom.constant() == 1.0 && contained && rel.disjoint;
    Ok(verdict(
        ok,
        format!(
            "beta_n = 1 and lambda_n = 4^-n: {exact_values}; C = {}; hull contained: {contained}; supports disjoint: {}",
            dom.constant(),
            rel.disjoint
        ),
    ))
}

fn c3_pascal_family() -> Outcome {
    let n_max = 20;
    let family = monic_orthogonal_family(&common::pascal(n_max), n_max)?;
    let mut exact = true;
    for (n, member) in family.members.iter().enumerate() {
        let expected: Vec<ExactComplex> = (0..=n)
            .map(|k| {
                let sign = if (n - k) % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                ExactComplex::from_integer(binomial(n, k) * sign)
            })
            .collect();
        exact &= member.monic == Polynomial::new(expected)
            && member.norm_sq == ExactComplex::from_integer(1);
    }
    let report = zeros(&family, 1..=n_max)?;
    let worst = report
        .degrees
        .iter()
        .flat_map(|d| d.roots.iter())
        .map(|z| (z - Complex64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max);
    let inside = report.max_modulus() < 2.0;
    Ok(verdict(
        exact && worst <= 1e-5 && inside,
        format!(
            "coefficients exact: {exact}; max |root - 1| = {worst:.2e}; max |root| = {:.6}",
            report.max_modulus()
        ),
    ))
}

fn c4_ratios() -> Outcome {
    let ms = example2();
    let head = ratio_sequence::<ExactComplex>(&ms, 0..=3)?;
    let expected = [(3, 1), (10, 3), (29, 10), (86, 29)];
    let head_ok = head
        .rows
        .iter()
        .zip(expected)
        .all(|(r, (p, q))| r.exact == Some(Rational::new(p.into(), q.into())));
    let tail = ratio_sequence::<ExactComplex>(&ms, 200..=200)?;
    let r200 = tail.rows[0].value;
    Ok(verdict(
        head_ok && (3.95..=4.01).contains(&r200),
        format!(
            "r_0..r_3 = 3, 10/3, 29/10, 86/29: {head_ok}; r_200 = {r200:.6} (limit 4; a stated limit of 1 would be an erratum)"
        ),
    ))
}

fn c5_multnorm() -> Outcome {
    let id = multnorm_sequence::<ExactComplex>(&Identity, 0..=30)?;
    let id_ok = id.rows.iter().all(|r| r.d == 1.0);
    let half = multnorm_sequence::<ExactComplex>(&spec("circle:0,0,1/2"), 0..=30)?;
    let half_err = half
        .rows
        .iter()
        .map(|r| (r.d - 0.5).abs())
        .fold(0.0, f64::max);
    let pascal = multnorm_sequence::<ExactComplex>(&spec("circle:1,0,1"), 0..=60)?;
    let d60 = pascal.d(60).unwrap_or(0.0);
    let exact_path = pascal.rows.iter().any(|r| r.exact_reduction);
    let ok = id_ok && half_err <= 1e-12 && pascal.is_monotone() && d60 >= 1.98 && exact_path;
    Ok(verdict(
        ok,
        format!(
            "identity d_n = 1: {id_ok}; max |d_n - 1/2| = {half_err:.1e}; Pascal monotone: {}, d_60 = {d60:.6}, exact reduction: {exact_path}",
            pascal.is_monotone()
        ),
    ))
}

/// Shared by criteria 6 and 9.
struct RandomRuns {
    weight_violations: usize,
    sobolev_violations: usize,
    radius_violations: usize,
    max_ratio_to_radius: f64,
    elapsed: Duration,
}

fn random_runs() -> Result<RandomRuns> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let n_max = 10;
    let mut weight_violations = 0;
    for _ in 0..50 {
        let m = MeasureSpec::WeightedCircle(common::random_weight(&mut rng)).moment_matrix(n_max);
        let report = zeros_within_multnorm(&m, n_max)?;
        weight_violations += report
            .degrees
            .iter()
            .map(|d| d.violations.len())
            .sum::<usize>();
    }
    let mut sobolev_violations = 0;
    let mut radius_violations = 0;
    let mut max_ratio_to_radius: f64 = 0.0;
    for _ in 0..10 {
        let s = common::random_sobolev(&mut rng);
        let m = sobolev_matrix(&s, n_max)?;
        let report = zeros_within_multnorm(&m, n_max)?;
        sobolev_violations += report
            .degrees
            .iter()
            .map(|d| d.violations.len())
            .sum::<usize>();
        let radius = sobolev_zero_radius(&s, n_max)?.radius;
        let worst = report.max_modulus();
        max_ratio_to_radius = max_ratio_to_radius.max(worst / radius);
        if worst >= radius {
            radius_violations += 1;
        }
    }
    Ok(RandomRuns {
        weight_violations,
        sobolev_violations,
        radius_violations,
        max_ratio_to_radius,
        elapsed: start.elapsed(),
    })
}

fn c6_zeros_in_norms(runs: &RandomRuns) -> Outcome {
    Ok(verdict(
        runs.weight_violations == 0 && runs.sobolev_violations == 0,
        format!(
            "violations of |root| < d_(n-1) + 1e-7: {} over 50 weights, {} over 10 Sobolev specs; runs took {:.2}s",
            runs.weight_violations,
            runs.sobolev_violations,
            runs.elapsed.as_secs_f64()
        ),
    ))
}

fn c7_pencils() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst_duality: f64 = 0.0;
    let mut monotone = true;
    for case in 0..100 {
        let size = 2 + case % 11;
        let a = common::random_hpd(&mut rng, size);
        let b = common::random_hpd(&mut rng, size);
        let ab = eigen_sequence::<Complex64>(&a, &b, 0..=size - 1)?;
        let ba = eigen_sequence::<Complex64>(&b, &a, 0..=size - 1)?;
        monotone &= ab.is_monotone() && ba.is_monotone();
        for (x, y) in ab.rows.iter().zip(&ba.rows) {
            worst_duality = worst_duality.max((x.beta * y.lambda - 1.0).abs());
        }
    }
    Ok(verdict(
        monotone && worst_duality <= 1e-8,
        format!("monotone: {monotone}; max |beta_n(A,B) lambda_n(B,A) - 1| = {worst_duality:.1e}"),
    ))
}

fn c8_density_domination() -> Outcome {
    let scaled = spec("wcircle:2/3;1/6,0");
    let seq = eigen_sequence::<ExactComplex>(&scaled, &MeasureSpec::UnitCircle, 0..=30)?;
    let beta = seq.max_beta();
    let raw = match spec("wcircle:2;1/2,0") {
        MeasureSpec::WeightedCircle(w) => w,
        _ => unreachable!(),
    };
    let (lo, hi) = weight_extrema(&raw);
    let ok = beta <= 1.0 + 1e-8 && (lo - 1.0).abs() <= 1e-9 && (hi - 3.0).abs() <= 1e-9;
    Ok(verdict(
        ok,
        format!("max beta_n = {beta:.12}; extrema of 2 + cos = ({lo:.12}, {hi:.12})"),
    ))
}

fn c9_zero_radius(runs: &RandomRuns) -> Outcome {
    let r = theorem1_bound(&[1.0, 1.0], &[1.0, 1.0])?;
    let err = (r - 5f64.sqrt()).abs();
    Ok(verdict(
        err <= 1e-12 && runs.radius_violations == 0,
        format!(
            "|bound - sqrt 5| = {err:.1e}; specs with a zero outside the radius: {}; max |root|/radius = {:.4}",
            runs.radius_violations, runs.max_ratio_to_radius
        ),
    ))
}

fn c10_tail_sums() -> Outcome {
    let n = 20;
    let half = spec("circle:0,0,1/2");
    let c = domination_check::<ExactComplex>(&[&Identity, &half], n)?.constant();
    let report = tail_sum_family(
        &[HermitianMatrix::identity(n + 1), half.moment_matrix(n)],
        Some(c),
    )?;
    let beta0 = report.rows[0].sequence.max_beta();
    let min_lambda = report
        .rows
        .iter()
        .map(|r| r.sequence.min_lambda())
        .fold(f64::INFINITY, f64::min);
    Ok(verdict(
        beta0 <= 2.0 + 1e-9 && min_lambda >= 1.0 - 1e-9,
        format!("max beta_n(M'_0, M_0) = {beta0:.12}; min lambda_n(M'_j, M_j) = {min_lambda:.12}"),
    ))
}

fn c11_oracle() -> Outcome {
    let leaves = [
        "unit-circle",
        "circle:0,0,1/2",
        "circle:1,0,1",
        "circle:1/2,-1/3,3/4",
        "wcircle:2;1/2,0",
        "wcircle:3;1/2,1/4;-1/4,1/8",
        "disk-area",
    ];
    let mut worst: f64 = 0.0;
    for leaf in leaves {
        let m = spec(leaf);
        for n in 0..=8 {
            for k in 0..=8 {
                let exact = m.moment(n, k).to_c64();
                let approx = quadrature_moment_oracle(&m, n, k, 4096)?;
                worst = worst.max((exact - approx).norm() / exact.norm().max(1.0));
            }
        }
    }
    Ok(verdict(
        worst <= 1e-8,
        format!(
            "max scaled deviation {worst:.1e} over {} leaves",
            leaves.len()
        ),
    ))
}

fn main() -> ExitCode {
    let runs = random_runs();
    let mut failures = 0;
    let mut report = |id: usize, name: &str, limit: Option<Duration>, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let timing = match limit {
            Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        let pass = ok && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {id:>2} {} {name}: {detail} ({timing})",
            if pass { "PASS" } else { "FAIL" }
        );
    };
    let secs = |s| Some(Duration::from_secs(s));
    report(1, "Example 2 Sobolev matrix", secs(1), &c1_example2_matrix);
    report(2, "Example 1 pencil and supports", secs(5), &c2_example1);
    report(3, "Pascal orthogonal family", secs(10), &c3_pascal_family);
    report(4, "diagonal ratio test", secs(5), &c4_ratios);
    report(5, "multiplication-norm bounds", secs(60), &c5_multnorm);
    match &runs {
        Ok(r) => {
            report(6, "zeros inside restricted norms", None, &|| {
                c6_zeros_in_norms(r)
            });
            report(7, "pencil monotonicity and duality", None, &c7_pencils);
            report(8, "density domination", None, &c8_density_domination);
            report(9, "Sobolev zero radius", None, &|| c9_zero_radius(r));
        }
        Err(e) => {
            let e = e.clone();
            report(6, "zeros inside restricted norms", None, &|| Err(e.clone()));
            report(7, "pencil monotonicity and duality", None, &c7_pencils);
            report(8, "density domination", None, &c8_density_domination);
            report(9, "Sobolev zero radius", None, &|| Err(e.clone()));
        }
    }
    report(10, "tail sums", None, &c10_tail_sums);
    report(11, "moment quadrature oracle", None, &c11_oracle);
    if failures == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
