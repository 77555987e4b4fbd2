use std::fs::File;
use std::io::{self, BufWriter, Write};

use sqbessel_core::kernels::{forward_kernel_with, InversionKernel, KernelPoint};
use sqbessel_core::quadrature::{IntegralEstimate, QuadratureBudget};
use sqbessel_core::transforms::{
    forward_integral, forward_series, inverse_coefficients, inversion_class, profile_coefficients, CoefficientSequence,
    ConstantChoice, PeriodicProfile, Scaling, Synthesizer, TransformKind,
};
use sqbessel_core::verify::{
    calibrate_normalization, inverse_roundtrip, profile_roundtrip, run_suite, GridSpec, IdentityReport,
};

use crate::config::{CommandName, MethodName, ProfileConfig, RunConfig, UsageError};
use crate::output::{format_float, Cell, Table};

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    /// A verification or round-trip check failed.
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    /// An evaluation did not converge or was refused.
    pub const NOT_CONVERGED: i32 = 3;
}

/// The table a run produced and the exit status it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub status: i32,
}

/// Runs `config` and writes its table to the configured destination.
pub fn execute(config: &RunConfig) -> i32 {
    let outcome = match evaluate(config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("sqbessel: {e}");
            return exit::USAGE;
        }
    };
    let written = match &config.output.path {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.table.write(config.output.format, &mut w)?;
            w.flush()
        }),
        None => outcome.table.write(config.output.format, io::stdout().lock()),
    };
    if let Err(e) = written {
        let dest = config.output.path.as_ref().map_or("stdout".to_string(), |p| p.display().to_string());
        eprintln!("sqbessel: cannot write {dest}: {e}");
        return exit::USAGE;
    }
    outcome.status
}

/// Computes the table without writing it.
pub fn evaluate(config: &RunConfig) -> Result<Outcome, UsageError> {
    match config.command {
        CommandName::Kernel => kernel_table(config),
        CommandName::Forward => forward_table(config),
        CommandName::Inverse => inverse_table(config),
        CommandName::Verify => Ok(report_outcome(run_suite(config.suite.suite(), &grid_spec(config)))),
        CommandName::Roundtrip => roundtrip_table(config),
        CommandName::Calibrate => calibration_table(config),
    }
}

fn budget_or(config: &RunConfig, default: QuadratureBudget) -> QuadratureBudget {
    config.budget.map_or(default, |b| b.budget())
}

fn profile(p: &ProfileConfig) -> Result<PeriodicProfile, UsageError> {
    PeriodicProfile::trig(p.sines.clone(), p.cosines.clone()).map_err(|e| UsageError(format!("profile: {e}")))
}

fn sequence(values: &[f64]) -> Result<CoefficientSequence, UsageError> {
    CoefficientSequence::new(values.to_vec(), 0.0).map_err(|e| UsageError(format!("--sequence: {e}")))
}

fn status_of(all_converged: bool) -> i32 {
    if all_converged {
        exit::OK
    } else {
        exit::NOT_CONVERGED
    }
}

fn kernel_table(config: &RunConfig) -> Result<Outcome, UsageError> {
    let kind = config.kind.expect("validated").kernel();
    let budget = budget_or(config, QuadratureBudget::default());
    let mut table = Table::new(&["kernel", "n", "x", "method", "value", "error"]);
    let mut ok = true;
    for &n in &config.grid.n {
        let inversion = if kind.is_forward() { None } else { Some(InversionKernel::new(kind, n, &budget)) };
        for &x in &config.grid.x {
            let (method, value) = match &inversion {
                None => (config.method, forward_kernel_with(kind, KernelPoint { n, x }, config.method.method(), &budget)),
                Some(k) => (MethodName::Integral, k.clone().and_then(|k| k.eval(x))),
            };
            let method = match method {
                MethodName::Direct => "direct",
                MethodName::Integral => "integral",
            };
            let (value, error) = split(value);
            ok &= error.is_none();
            table.push(vec![kind.name().into(), n.into(), x.into(), method.into(), value.into(), error.into()]);
        }
    }
    Ok(Outcome { table, status: status_of(ok) })
}

fn split(r: sqbessel_core::Result<f64>) -> (f64, Option<String>) {
    match r {
        Ok(v) => (v, None),
        Err(e) => (f64::NAN, Some(e.to_string())),
    }
}

const COEFFICIENT_COLUMNS: [&str; 7] = ["transform", "n", "value", "error_estimate", "converged", "reference", "error"];

fn coefficient_row(kind: TransformKind, n: u32, est: sqbessel_core::Result<IntegralEstimate>, reference: Option<f64>) -> (Vec<Cell>, bool) {
    match est {
        Ok(e) => (
            vec![kind.name().into(), n.into(), e.value.into(), e.error_estimate.into(), e.converged.into(), reference.into(), Cell::Empty],
            e.converged,
        ),
        Err(err) => (
            vec![kind.name().into(), n.into(), f64::NAN.into(), f64::NAN.into(), false.into(), reference.into(), err.to_string().into()],
            false,
        ),
    }
}

/// Sequence: `f(x)` on the `x` grid. Profile: `a_n` of the synthesized
/// function by quadrature on the `n` grid, next to the closed form.
fn forward_table(config: &RunConfig) -> Result<Outcome, UsageError> {
    let kind = config.transform()?;
    let budget = budget_or(config, QuadratureBudget::default());
    if let Some(values) = &config.sequence {
        let a = sequence(values)?;
        let mut table = Table::new(&["transform", "x", "value", "tail_bound", "error"]);
        let mut ok = true;
        for &x in &config.grid.x {
            let row = match forward_series(kind, &a, x, f64::INFINITY) {
                Ok(s) => vec![kind.name().into(), x.into(), s.value.into(), s.tail_bound.into(), Cell::Empty],
                Err(e) => {
                    ok = false;
                    vec![kind.name().into(), x.into(), f64::NAN.into(), f64::NAN.into(), e.to_string().into()]
                }
            };
            table.push(row);
        }
        return Ok(Outcome { table, status: status_of(ok) });
    }
    let p = profile(config.profile.as_ref().expect("validated"))?;
    let synth = Synthesizer::new(kind, &p, Scaling::TwoX, &budget).map_err(|e| UsageError(format!("profile: {e}")))?;
    let mut table = Table::new(&COEFFICIENT_COLUMNS);
    let mut ok = true;
    for &n in &config.grid.n {
        let est = forward_integral(kind, |x: f64| synth.eval(x), n, inversion_class(kind), &budget);
        let reference = profile_coefficients(kind, &p, n, ConstantChoice::Calibrated, &budget).ok().map(|e| e.value);
        let (row, conv) = coefficient_row(kind, n, est, reference);
        ok &= conv;
        table.push(row);
    }
    Ok(Outcome { table, status: status_of(ok) })
}

/// Applies the inversion formula to the forward series of `--sequence`;
/// `reference` is the coefficient it should recover.
fn inverse_table(config: &RunConfig) -> Result<Outcome, UsageError> {
    let kind = config.transform()?;
    let budget = budget_or(config, GridSpec::default().roundtrip_budget);
    let a = sequence(config.sequence.as_deref().expect("validated"))?;
    let mut table = Table::new(&COEFFICIENT_COLUMNS);
    let mut ok = true;
    for &n in &config.grid.n {
        let est = inverse_coefficients(kind, |x: f64| Ok(forward_series(kind, &a, x, 0.0)?.value), n, &budget);
        let (row, conv) = coefficient_row(kind, n, est, Some(a.get(n)));
        ok &= conv;
        table.push(row);
    }
    Ok(Outcome { table, status: status_of(ok) })
}

fn grid_spec(config: &RunConfig) -> GridSpec {
    let mut g = GridSpec { n_max: config.grid.n_max, ..GridSpec::default() };
    if let Some(b) = config.budget {
        g.budget = b.budget();
        g.roundtrip_budget = b.budget();
    }
    g
}

fn roundtrip_table(config: &RunConfig) -> Result<Outcome, UsageError> {
    let kind = config.transform()?;
    let budget = budget_or(config, GridSpec::default().roundtrip_budget);
    let reports = match &config.sequence {
        Some(values) => inverse_roundtrip(kind, "sequence", &sequence(values)?, config.grid.n_max, &budget),
        None => {
            let default_profile = ProfileConfig { sines: vec![1.0], cosines: Vec::new() };
            let p = profile(config.profile.as_ref().unwrap_or(&default_profile))?;
            profile_roundtrip(kind, "profile", &p, &config.grid.x, config.grid.terms, &budget)
        }
    };
    Ok(report_outcome(reports))
}

fn params_text(r: &IdentityReport) -> String {
    let p = &r.params;
    let mut s = format!("n={};m={};u={};t={};x={};terms={}", p.n, p.m, p.u, p.t, p.x, p.terms);
    if r.identity_id == "y0-cosine-modulus" {
        s.push_str(";convention=");
        s.push_str(p.convention.name());
    }
    s
}

fn report_outcome(reports: Vec<IdentityReport>) -> Outcome {
    let mut table = Table::new(&[
        "identity_id", "kind", "label", "params", "lhs", "rhs", "abs_residual", "rel_residual", "tolerance", "passed",
        "evaluations", "reason",
    ]);
    let mut all = true;
    for r in &reports {
        all &= r.passed;
        table.push(vec![
            r.identity_id.into(),
            r.params.kind.map(|k| k.name()).into(),
            r.params.label.into(),
            params_text(r).into(),
            r.lhs.into(),
            r.rhs.into(),
            r.abs_residual.into(),
            r.rel_residual.into(),
            r.tolerance.into(),
            r.passed.into(),
            r.evaluations.into(),
            r.reason.clone().into(),
        ]);
    }
    Outcome { table, status: if all { exit::OK } else { exit::CHECK_FAILED } }
}

fn calibration_table(config: &RunConfig) -> Result<Outcome, UsageError> {
    let kinds = match config.kind {
        Some(_) => vec![config.transform()?],
        None => TransformKind::ALL.to_vec(),
    };
    let budget = budget_or(config, QuadratureBudget { rel_tol: 1e-9, abs_tol: 1e-10, ..QuadratureBudget::default() });
    let mut table = Table::new(&[
        "transform", "scaling", "fitted_factor", "fitted_constant", "printed_constant", "residual_at_fit",
        "reconstruction_prefactor", "printed_reconstruction_prefactor", "reconstruction_residual",
        "printed_reconstruction_residual", "candidates", "error",
    ]);
    let mut ok = true;
    for kind in kinds {
        match calibrate_normalization(kind, &budget) {
            Ok(c) => {
                let candidates = c
                    .candidates
                    .iter()
                    .map(|k| format!("{}:{}:{}", k.scaling.name(), k.factor, format_float(k.residual)))
                    .collect::<Vec<_>>()
                    .join(";");
                table.push(vec![
                    kind.name().into(),
                    c.scaling_choice.name().into(),
                    c.fitted_factor.into(),
                    c.fitted_constant.into(),
                    c.printed_constant.into(),
                    c.residual_at_fit.into(),
                    c.reconstruction_prefactor.into(),
                    c.printed_reconstruction_prefactor.into(),
                    c.reconstruction_residual.into(),
                    c.printed_reconstruction_residual.into(),
                    candidates.into(),
                    Cell::Empty,
                ]);
            }
            Err(e) => {
                ok = false;
                let mut row = vec![kind.name().into()];
                row.extend(std::iter::repeat_n(Cell::Empty, 10));
                row.push(e.to_string().into());
                table.push(row);
            }
        }
    }
    Ok(Outcome { table, status: status_of(ok) })
}
