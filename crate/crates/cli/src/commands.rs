//! Subcommand bodies, generic over the working scalar.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use sobspec_core::diagnostics::checks::ZERO_RADIUS_SLACK;
use sobspec_core::diagnostics::{
    domination_check, eigen_sequence, esd_density_check, multnorm_sequence, ratio_sequence,
    sobolev_zero_radius, support_relation, tail_sum_family, theorem1_bound, weight_extrema,
};
use sobspec_core::linalg::ldl_decompose;
use sobspec_core::orthopoly::{monic_orthogonal_family, zero_bound_check_with, zeros};
use sobspec_core::scalar::Scalar;
use sobspec_core::{HermitianMatrix, MatrixSource, MeasureSpec};

use crate::cache::CachedSource;
use crate::error::{CliError, CliResult};
use crate::manifest::InputRecord;
use crate::matrix_file::{MatrixFile, Provenance};
use crate::source_arg::{sobolev_spec, BoundArg, SourceArg};
use crate::table::{Cell, Table};

pub struct Ctx {
    pub cache_dir: Option<PathBuf>,
    pub tol: f64,
    pub inputs: Vec<InputRecord>,
}

impl Ctx {
    pub fn source<S: Scalar>(&mut self, arg: &SourceArg) -> CliResult<Box<dyn MatrixSource<S>>> {
        self.inputs.push(arg.input_record());
        arg.build(self.cache_dir.as_deref())
    }
}

pub enum Output {
    Table(Table),
    Matrix(MatrixFile),
}

/// Real and imaginary parts as exact or float cells.
fn scalar_cells<S: Scalar>(v: &S) -> (Cell, Cell) {
    match v.to_exact() {
        Some(e) => (e.re.into(), e.im.into()),
        None => {
            let c = v.to_c64();
            (c.re.into(), c.im.into())
        }
    }
}

fn flag(ill_conditioned: bool) -> Cell {
    if ill_conditioned {
        "ill-conditioned"
    } else {
        "ok"
    }
    .into()
}

pub fn moments<S: Scalar>(ctx: &mut Ctx, arg: &SourceArg, n: usize) -> CliResult<Output> {
    let src = ctx.source::<S>(arg)?;
    let m = src.truncation(n)?;
    let prov = Provenance {
        measure: Some(arg.text()),
        assembly: None,
    };
    Ok(Output::Matrix(MatrixFile::from_matrix(&m, Some(prov))))
}

pub fn sobolev<S: Scalar>(
    ctx: &mut Ctx,
    components: &[(SourceArg, usize)],
    n: usize,
) -> CliResult<Output> {
    ctx.inputs
        .extend(components.iter().map(|(a, _)| a.input_record()));
    let spec = sobolev_spec::<S>(components)?;
    let text = spec.to_string();
    let src: Box<dyn MatrixSource<S>> = match &ctx.cache_dir {
        Some(dir) => Box::new(CachedSource::new(
            Box::new(spec),
            format!("sobolev {text}"),
            dir,
        )),
        None => Box::new(spec),
    };
    let m = src.truncation(n)?;
    ldl_decompose(&m)?;
    let prov = Provenance {
        measure: None,
        assembly: Some(text),
    };
    Ok(Output::Matrix(MatrixFile::from_matrix(&m, Some(prov))))
}

pub fn opoly<S: Scalar>(
    ctx: &mut Ctx,
    arg: &SourceArg,
    degrees: RangeInclusive<usize>,
) -> CliResult<Output> {
    let m = ctx.source::<S>(arg)?.truncation(*degrees.end())?;
    let family = monic_orthogonal_family(&m, *degrees.end())?;
    let mut t = Table::new(&["degree", "term", "coeff_re", "coeff_im", "norm_sq"]);
    for n in degrees {
        let member = &family.members[n];
        let (h, _) = scalar_cells(&member.norm_sq);
        for (k, c) in member.monic.coeffs().iter().enumerate() {
            let (re, im) = scalar_cells(c);
            t.push(vec![n.into(), k.into(), re, im, h.clone()]);
        }
    }
    Ok(Output::Table(t))
}

pub fn zero_table<S: Scalar>(
    src: &dyn MatrixSource<S>,
    measure: Option<&MeasureSpec>,
    degrees: RangeInclusive<usize>,
    bound: BoundArg,
    tol: f64,
) -> CliResult<Table> {
    let start = (*degrees.start()).max(1);
    let end = *degrees.end();
    if end == 0 {
        return Err(CliError::Usage(
            "degree-0 polynomials have no zeros; use degrees from 1".into(),
        ));
    }
    let m = src.truncation(end)?;
    let family = monic_orthogonal_family(&m, end)?;
    let report = zeros(&family, start..=end)?;
    let radii: Vec<f64> = match bound {
        BoundArg::Value(x) => vec![x; report.degrees.len()],
        BoundArg::Hull => {
            let spec = measure
                .ok_or_else(|| CliError::Usage("--bound hull needs a measure source".into()))?;
            vec![spec.hull().sup_abs; report.degrees.len()]
        }
        BoundArg::MultNorm => {
            let norms = multnorm_sequence::<S>(&m, start - 1..=end - 1)?;
            norms.rows.iter().map(|r| r.d + ZERO_RADIUS_SLACK).collect()
        }
    };
    let checked = zero_bound_check_with(&report, &radii, tol)?;
    let mut t = Table::new(&["degree", "root_re", "root_im", "root_abs", "bound", "ok"]);
    for d in &checked.degrees {
        let bound = d.bound.expect("bounds filled in");
        for z in &d.roots {
            t.push(vec![
                d.degree.into(),
                z.re.into(),
                z.im.into(),
                z.norm().into(),
                bound.into(),
                (!d.violations.contains(z)).into(),
            ]);
        }
    }
    let violations: usize = checked.degrees.iter().map(|d| d.violations.len()).sum();
    t.note(format!("violations: {violations}"));
    Ok(t)
}

pub fn zeros_cmd<S: Scalar>(
    ctx: &mut Ctx,
    arg: &SourceArg,
    degrees: RangeInclusive<usize>,
    bound: BoundArg,
) -> CliResult<Output> {
    let src = ctx.source::<S>(arg)?;
    Ok(Output::Table(zero_table(
        src.as_ref(),
        arg.measure(),
        degrees,
        bound,
        ctx.tol,
    )?))
}

pub fn eigs<S: Scalar>(
    ctx: &mut Ctx,
    a: &SourceArg,
    b: &SourceArg,
    range: RangeInclusive<usize>,
) -> CliResult<Output> {
    let (sa, sb) = (ctx.source::<S>(a)?, ctx.source::<S>(b)?);
    let seq = eigen_sequence(sa.as_ref(), sb.as_ref(), range)?;
    let mut t = Table::new(&["n", "lambda_n", "beta_n", "flag"]);
    for r in &seq.rows {
        t.push(vec![
            r.n.into(),
            r.lambda.into(),
            r.beta.into(),
            flag(r.ill_conditioned),
        ]);
    }
    t.note(format!("monotone: {}", seq.is_monotone()));
    t.note(format!(
        "trend: beta={} inverse_lambda={}",
        seq.beta_trend(),
        seq.inverse_lambda_trend()
    ));
    Ok(Output::Table(t))
}

pub fn ratio<S: Scalar>(
    ctx: &mut Ctx,
    arg: &SourceArg,
    range: RangeInclusive<usize>,
) -> CliResult<Output> {
    let src = ctx.source::<S>(arg)?;
    let seq = ratio_sequence(src.as_ref(), range)?;
    let mut t = Table::new(&["n", "ratio"]);
    for r in &seq.rows {
        let cell = match &r.exact {
            Some(q) => Cell::Rational(q.clone()),
            None => r.value.into(),
        };
        t.push(vec![r.n.into(), cell]);
    }
    t.note(format!("trend: {}", seq.trend));
    Ok(Output::Table(t))
}

pub fn multnorm<S: Scalar>(
    ctx: &mut Ctx,
    arg: &SourceArg,
    range: RangeInclusive<usize>,
) -> CliResult<Output> {
    let src = ctx.source::<S>(arg)?;
    let seq = multnorm_sequence(src.as_ref(), range)?;
    let mut t = Table::new(&["n", "d_n", "witness", "flag"]);
    for r in &seq.rows {
        t.push(vec![
            r.n.into(),
            r.d.into(),
            r.witness.into(),
            flag(r.ill_conditioned),
        ]);
    }
    t.note(format!("monotone: {}", seq.is_monotone()));
    t.note(format!("trend: {}", seq.trend()));
    Ok(Output::Table(t))
}

fn family_sources<S: Scalar>(
    ctx: &mut Ctx,
    family: &[SourceArg],
) -> CliResult<Vec<Box<dyn MatrixSource<S>>>> {
    if family.len() < 2 {
        return Err(CliError::Usage(
            "--family needs at least two sources".into(),
        ));
    }
    family.iter().map(|a| ctx.source::<S>(a)).collect()
}

pub fn dominate<S: Scalar>(ctx: &mut Ctx, family: &[SourceArg], n: usize) -> CliResult<Output> {
    let sources = family_sources::<S>(ctx, family)?;
    let refs: Vec<&dyn MatrixSource<S>> = sources.iter().map(|s| s.as_ref()).collect();
    let report = domination_check(&refs, n)?;
    let mut t = Table::new(&["j", "n", "beta_n", "flag"]);
    for p in &report.pairs {
        for r in &p.sequence.rows {
            t.push(vec![
                p.j.into(),
                r.n.into(),
                r.beta.into(),
                flag(r.ill_conditioned),
            ]);
        }
    }
    for p in &report.pairs {
        t.note(format!(
            "trend: j={} constant={} {}",
            p.j,
            crate::table::format_float(p.constant),
            p.trend
        ));
    }
    Ok(Output::Table(t))
}

pub fn tailsum<S: Scalar>(
    ctx: &mut Ctx,
    family: &[SourceArg],
    n: usize,
    constant: Option<f64>,
) -> CliResult<Output> {
    let sources = family_sources::<S>(ctx, family)?;
    let refs: Vec<&dyn MatrixSource<S>> = sources.iter().map(|s| s.as_ref()).collect();
    let c = match constant {
        Some(c) => c,
        None => domination_check(&refs, n)?.constant(),
    };
    let mats = refs
        .iter()
        .map(|s| s.truncation(n))
        .collect::<sobspec_core::Result<Vec<HermitianMatrix<S>>>>()?;
    let report = tail_sum_family(&mats, Some(c))?;
    let mut t = Table::new(&["j", "n", "lambda_n", "beta_n", "bound", "ok"]);
    for row in &report.rows {
        let bound = row.bound.expect("constant supplied");
        for r in &row.sequence.rows {
            let ok = r.beta <= bound + ctx.tol && r.lambda >= 1.0 - ctx.tol;
            t.push(vec![
                row.j.into(),
                r.n.into(),
                r.lambda.into(),
                r.beta.into(),
                bound.into(),
                ok.into(),
            ]);
        }
    }
    t.note(format!(
        "domination constant: {}",
        crate::table::format_float(c)
    ));
    Ok(Output::Table(t))
}

fn measure_arg(arg: &SourceArg) -> CliResult<&MeasureSpec> {
    arg.measure()
        .ok_or_else(|| CliError::Usage(format!("`{}` is not a measure spec", arg.text())))
}

pub fn hull(ctx: &mut Ctx, inner: &SourceArg, outer: &SourceArg) -> CliResult<Output> {
    ctx.inputs
        .extend([inner.input_record(), outer.input_record()]);
    let rel = support_relation(measure_arg(inner)?, measure_arg(outer)?)?;
    let mut t = Table::new(&["inner", "outer", "hull_contained", "supports_disjoint"]);
    t.push(vec![
        inner.text().into(),
        outer.text().into(),
        rel.hull_contained.into(),
        rel.disjoint.into(),
    ]);
    Ok(Output::Table(t))
}

pub fn weight_extrema_cmd(
    ctx: &mut Ctx,
    num: &SourceArg,
    den: Option<&SourceArg>,
) -> CliResult<Output> {
    let weight_of = |a: &SourceArg| -> CliResult<sobspec_core::WeightedCircle> {
        match measure_arg(a)? {
            MeasureSpec::WeightedCircle(w) => Ok(w.clone()),
            other => Err(CliError::Usage(format!(
                "`{other}` is not a weighted circle (wcircle:...)"
            ))),
        }
    };
    ctx.inputs.push(num.input_record());
    let w = weight_of(num)?;
    let (lo, hi) = match den {
        Some(d) => {
            ctx.inputs.push(d.input_record());
            esd_density_check(&w, &weight_of(d)?)?
        }
        None => weight_extrema(&w),
    };
    let mut t = Table::new(&["ess_inf", "ess_sup"]);
    t.push(vec![lo.into(), hi.into()]);
    Ok(Output::Table(t))
}

pub fn thm1_from_lists(constants: &[f64], norms: &[f64]) -> CliResult<Output> {
    let radius = theorem1_bound(constants, norms)?;
    let mut t = Table::new(&["radius"]);
    t.push(vec![radius.into()]);
    Ok(Output::Table(t))
}

pub fn thm1_from_components<S: Scalar>(
    ctx: &mut Ctx,
    components: &[(SourceArg, usize)],
    n: usize,
) -> CliResult<Output> {
    ctx.inputs
        .extend(components.iter().map(|(a, _)| a.input_record()));
    let spec = sobolev_spec::<S>(components)?;
    let r = sobolev_zero_radius(&spec, n)?;
    let mut t = Table::new(&["order", "constant", "norm"]);
    for (j, (c, d)) in r.constants.iter().zip(&r.norms).enumerate() {
        t.push(vec![j.into(), (*c).into(), (*d).into()]);
    }
    t.note(format!("radius: {}", crate::table::format_float(r.radius)));
    Ok(Output::Table(t))
}
