//! `reproduce example1|example2`: full pipeline runs writing a report
//! directory with matrices, sequences, zeros and a PASS/FAIL summary.
//! Always exact mode, so reruns give byte-identical artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num::Signed;
use sobspec_core::diagnostics::checks::corollary7_check;
use sobspec_core::diagnostics::{
    domination_check, eigen_sequence, multnorm_sequence, ratio_sequence, sobolev_zero_radius,
    support_relation, tail_sum_family, Role, Trend, Verdict,
};
use sobspec_core::scalar::{format_rational, ExactComplex, Rational};
use sobspec_core::sobolev::sobolev_matrix;
use sobspec_core::{HermitianMatrix, Identity, MeasureSpec, SobolevSpec};

use crate::commands::{self, Ctx, Output};
use crate::error::{CliError, CliResult};
use crate::matrix_file::{MatrixFile, Provenance};
use crate::source_arg::{BoundArg, SourceArg};
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Example1,
    Example2,
}

impl Example {
    pub fn name(self) -> &'static str {
        match self {
            Example::Example1 => "example1",
            Example::Example2 => "example2",
        }
    }
}

struct Report {
    dir: PathBuf,
    outputs: Vec<PathBuf>,
    checks: Vec<(bool, String)>,
    notes: Vec<String>,
}

impl Report {
    fn write(&mut self, name: &str, contents: &str) -> CliResult<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.outputs.push(path);
        Ok(())
    }

    fn table(&mut self, name: &str, t: &Table) -> CliResult<()> {
        self.write(name, &t.to_csv())
    }

    fn check(&mut self, ok: bool, text: impl Into<String>) {
        self.checks.push((ok, text.into()));
    }

    fn summary(&self, title: &str) -> String {
        let mut s = format!("{title}\n\n");
        for (ok, text) in &self.checks {
            let _ = writeln!(s, "{} {text}", if *ok { "PASS" } else { "FAIL" });
        }
        if !self.notes.is_empty() {
            s.push('\n');
            for n in &self.notes {
                let _ = writeln!(s, "note: {n}");
            }
        }
        let failed = self.failures();
        let _ = writeln!(
            s,
            "\n{} of {} checks passed",
            self.checks.len() - failed,
            self.checks.len()
        );
        s
    }

    fn failures(&self) -> usize {
        self.checks.iter().filter(|(ok, _)| !ok).count()
    }
}

pub struct ReproduceOutcome {
    pub outputs: Vec<PathBuf>,
    pub failures: usize,
}

fn measure(text: &str) -> SourceArg {
    SourceArg::parse(text).expect("built-in measure spec")
}

fn table_of(out: Output) -> Table {
    match out {
        Output::Table(t) => t,
        Output::Matrix(_) => unreachable!("command returns a table"),
    }
}

pub fn reproduce(ctx: &mut Ctx, example: Example, dir: &Path) -> CliResult<ReproduceOutcome> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut r = Report {
        dir: dir.to_path_buf(),
        outputs: Vec::new(),
        checks: Vec::new(),
        notes: Vec::new(),
    };
    let title = match example {
        Example::Example1 => {
            example1(ctx, &mut r)?;
            "Example 1: unit circle and the circle of radius 1/2"
        }
        Example::Example2 => {
            example2(ctx, &mut r)?;
            "Example 2: Pascal moments with a unit-circle derivative term"
        }
    };
    let summary = r.summary(title);
    r.write("summary.txt", &summary)?;
    Ok(ReproduceOutcome {
        failures: r.failures(),
        outputs: r.outputs,
    })
}

const EXAMPLE1_N: usize = 20;

fn example1(ctx: &mut Ctx, r: &mut Report) -> CliResult<()> {
    let n = EXAMPLE1_N;
    let unit = measure("unit-circle");
    let half_arg = measure("circle:0,0,1/2");
    let half = half_arg.measure().expect("measure").clone();

    let Output::Matrix(file) = commands::moments::<ExactComplex>(ctx, &half_arg, n)? else {
        unreachable!()
    };
    r.write("moments_half.json", &file.to_json())?;
    let m1 = half.moment_matrix(n);
    let diag_ok = (0..=n).all(|i| {
        (0..=n).all(|j| {
            let expected = if i == j {
                Rational::new(1.into(), num::BigInt::from(4).pow(i as u32))
            } else {
                Rational::from_integer(0.into())
            };
            m1.get(i, j) == &ExactComplex::new(expected, Rational::from_integer(0.into()))
        })
    });
    r.check(
        diag_ok,
        format!("M(circle 0,0,1/2) = diag(4^-i) for i <= {n}"),
    );

    let t = table_of(commands::eigs::<ExactComplex>(
        ctx,
        &half_arg,
        &unit,
        0..=n,
    )?);
    r.table("eigs.csv", &t)?;
    let seq = eigen_sequence::<ExactComplex>(&half, &Identity, 0..=n)?;
    let beta_one = seq.rows.iter().all(|row| row.beta == 1.0);
    let lambda_exact = seq
        .rows
        .iter()
        .all(|row| row.lambda == 0.25f64.powi(row.n as i32));
    r.check(beta_one, format!("beta_n(M1, M0) = 1 for n = 0..{n}"));
    r.check(
        lambda_exact,
        format!("lambda_n(M1, M0) = 4^-n for n = 0..{n}"),
    );

    let family = [unit.clone(), half_arg.clone()];
    let t = table_of(commands::dominate::<ExactComplex>(ctx, &family, n)?);
    r.table("dominate.csv", &t)?;
    let dom = domination_check::<ExactComplex>(&[&Identity, &half], n)?;
    r.check(
        dom.constant() == 1.0 && dom.all_bounded_looking(),
        format!(
            "domination constant C = {} ({}), so the family is MSD",
            dom.constant(),
            dom.pairs[0].trend
        ),
    );

    let t = table_of(commands::tailsum::<ExactComplex>(ctx, &family, n, None)?);
    r.table("tailsum.csv", &t)?;
    let tails = tail_sum_family(
        &[HermitianMatrix::identity(n + 1), m1],
        Some(dom.constant()),
    )?;
    let beta0 = tails.rows[0].sequence.max_beta();
    let min_lambda = tails
        .rows
        .iter()
        .map(|row| row.sequence.min_lambda())
        .fold(f64::INFINITY, f64::min);
    r.check(
        beta0 <= 2.0 + 1e-9 && min_lambda >= 1.0 - 1e-9,
        format!("tail sums: max beta_n(M'_0, M_0) = {beta0} <= 2, min lambda_n(M'_j, M_j) = {min_lambda} >= 1"),
    );

    let rel = support_relation(&half, &MeasureSpec::UnitCircle)?;
    r.check(
        rel.hull_contained,
        "hull of supp(mu_1) lies inside the hull of supp(mu_0)",
    );
    r.check(
        rel.disjoint,
        "supports of mu_0 and mu_1 are disjoint, so the family is not ESD",
    );

    let components = [(unit, 0), (half_arg, 1)];
    let spec: SobolevSpec<ExactComplex> = crate::source_arg::sobolev_spec(&components)?;
    let radius = sobolev_zero_radius(&spec, 10)?;
    let t = commands::zero_table::<ExactComplex>(
        &spec,
        None,
        1..=11,
        BoundArg::Value(radius.radius),
        ctx.tol,
    )?;
    r.table("sobolev_zeros.csv", &t)?;
    let ok = t.notes.iter().any(|n| n == "violations: 0");
    r.check(
        ok,
        format!(
            "Sobolev zeros of degree 1..11 lie inside the radius {:.6}",
            radius.radius
        ),
    );
    Ok(())
}

fn example2_spec(unit: &SourceArg, pascal: &SourceArg) -> CliResult<SobolevSpec<ExactComplex>> {
    crate::source_arg::sobolev_spec(&[(pascal.clone(), 0), (unit.clone(), 1)])
}

fn example2(ctx: &mut Ctx, r: &mut Report) -> CliResult<()> {
    let unit = measure("unit-circle");
    let pascal_arg = measure("circle:1,0,1");
    let spec = example2_spec(&unit, &pascal_arg)?;

    let m = sobolev_matrix(&spec, 4)?;
    let prov = Provenance {
        measure: None,
        assembly: Some(spec.to_string()),
    };
    r.write(
        "sobolev.json",
        &MatrixFile::from_matrix(&m, Some(prov)).to_json(),
    )?;
    let rows = [
        [1, 1, 1, 1, 1],
        [1, 3, 3, 4, 5],
        [1, 3, 10, 10, 15],
        [1, 4, 10, 29, 35],
        [1, 5, 15, 35, 86],
    ];
    let expected = HermitianMatrix::from_upper(5, |i, j| ExactComplex::from_integer(rows[i][j]));
    r.check(
        m == expected,
        "5x5 Sobolev matrix matches binom(i+j, i) + delta_ij i^2",
    );

    let ratios = ratio_sequence::<ExactComplex>(&spec, 0..=200)?;
    let mut t = Table::new(&["n", "ratio"]);
    for row in &ratios.rows {
        t.push(vec![
            row.n.into(),
            row.exact.clone().expect("exact mode").into(),
        ]);
    }
    t.note(format!("trend: {}", ratios.trend));
    r.table("ratios.csv", &t)?;
    let head: Vec<String> = ratios.rows[..4]
        .iter()
        .map(|row| format_rational(row.exact.as_ref().expect("exact mode")))
        .collect();
    let head_ok = head == ["3", "10/3", "29/10", "86/29"];
    r.check(
        head_ok,
        format!("diagonal ratios r_0..r_3 = {}", head.join(", ")),
    );
    let r200 = ratios.rows[200].value;
    r.check(
        (3.95..=4.01).contains(&r200),
        format!("r_200 = {r200:.6}, approaching 4"),
    );
    r.notes.push(format!(
        "the diagonal is binom(2n, n) + n^2 (1, 3, 10, 29, 86), so the ratio tends to 4; the stated limit 1 is an erratum \
         arising from a diagonal of 2^(n+1)/(n+1)! + (n+1)^2. Either way the ratio stays bounded (r_200 = {r200:.6})"
    ));

    let t = table_of(commands::eigs::<ExactComplex>(
        ctx,
        &pascal_arg,
        &unit,
        0..=20,
    )?);
    r.table("eigs_pascal.csv", &t)?;
    let pascal = pascal_arg.measure().expect("measure").clone();
    let seq = eigen_sequence::<ExactComplex>(&pascal, &Identity, 0..=20)?;
    let lambda8 = seq.rows[8].lambda;
    r.check(
        lambda8 < 1e-4,
        format!("lambda_8(Pascal, I) = {lambda8:.3e} < 1e-4"),
    );
    r.check(
        seq.inverse_lambda_trend() == Trend::Growing,
        format!(
            "1/lambda_n trend is {}, so lambda_n -> 0",
            seq.inverse_lambda_trend()
        ),
    );

    let cor = corollary7_check::<ExactComplex>(&pascal, Role::BaseTerm, 20)?;
    r.check(
        cor.verdict == Verdict::Inconclusive,
        format!(
            "Pascal as the base term: verdict {} (lambda_n -> 0 gives no information)",
            cor.verdict
        ),
    );

    let norms = multnorm_sequence::<ExactComplex>(&spec, 0..=20)?;
    let mut t = Table::new(&["n", "d_n", "witness", "flag"]);
    for row in &norms.rows {
        let flag = if row.ill_conditioned {
            "ill-conditioned"
        } else {
            "ok"
        };
        t.push(vec![
            row.n.into(),
            row.d.into(),
            row.witness.into(),
            flag.into(),
        ]);
    }
    t.note(format!("monotone: {}", norms.is_monotone()));
    t.note(format!("trend: {}", norms.trend()));
    r.table("multnorm.csv", &t)?;
    r.check(
        norms.is_monotone(),
        "restricted multiplication norms d_n are non-decreasing",
    );

    let t = commands::zero_table::<ExactComplex>(&spec, None, 1..=12, BoundArg::MultNorm, ctx.tol)?;
    r.table("zeros.csv", &t)?;
    r.check(
        t.notes.iter().any(|n| n == "violations: 0"),
        "zeros of degree 1..12 lie inside d_(n-1)",
    );
    let first = &t.rows[0];
    let root_one = match (&first[1], &first[2]) {
        (crate::table::Cell::Float(re), crate::table::Cell::Float(im)) => {
            (re - 1.0).abs() < 1e-12 && im.abs() < 1e-12
        }
        _ => false,
    };
    r.check(root_one, "degree-1 Sobolev polynomial is z - 1");

    let ratio_limit_gap =
        (Rational::from_integer(4.into()) - ratios.rows[200].exact.clone().expect("exact")).abs();
    r.notes.push(format!(
        "4 - r_200 = {:.3e}",
        sobspec_core::scalar::rational_to_f64(&ratio_limit_gap)
    ));
    ctx.inputs.push(unit.input_record());
    ctx.inputs.push(pascal_arg.input_record());
    Ok(())
}
