use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex64;
use serde::Serialize;

use super::problem::{Problem, ProblemKind};
use super::suites::{run_suite, Suite};
use super::{parse_complex, Format, TableKind, EXIT_OK, EXIT_VERIFY};
use crate::autonomous::build_gamma_u;
use crate::oracle::{direct_solve_with_tol, solve_with_halving};
use crate::polyfield::{GKind, ProblemSpec, WordBasis};
use crate::quasiperiodic::{beta_bar_with_model, GammaTable};
use crate::words::CoefficientTable;
use crate::{Error, Result};

/// Trajectories written by `average` are converged to this.
const TRAJECTORY_TOL: f64 = 1e-12;

/// Exported entries smaller than this are rounding residue of exact zeros
/// (for instance every nonempty word of `α(t₀; t₀)`) and are omitted.
pub const ZERO_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone, Args)]
pub struct CoeffsArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub what: TableKind,
    /// Evaluation time; `τ` for `gamma-u`. Defaults to `t0 + 1`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Initial time; defaults to the file's `t0`.
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Angles for `kappa`, comma separated; defaults to `t0·ω`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub theta: Option<Vec<f64>>,
    /// Shift for `gamma-u` and `rho`, comma separated `re` or `re:im`;
    /// defaults to zero for `gamma-u` and `v` for `rho`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
    pub u: Option<Vec<Complex64>>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct AverageArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Final time; defaults to `t0 + 1/ε` (or `t0 + 1` when `ε = 0`).
    #[arg(long, allow_hyphen_values = true)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Initial state, comma separated `re` or `re:im`; defaults to 0.1 in
    /// every component.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_complex)]
    pub x0: Option<Vec<Complex64>>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Fails with the matching error when the problem's hypotheses or its
/// nonresonance condition do not hold up to `order` letters.
pub(super) fn check_problem(problem: &Problem, order: usize) -> Result<()> {
    let spec = &problem.spec;
    let report = spec.eigen_check(order);
    if !report.hypotheses_hold() {
        let which = report
            .worst_eigen
            .map(|(j, l)| format!(" (g_{} against mode {l})", j + 1))
            .unwrap_or_default();
        return Err(Error::Hypothesis(format!(
            "eigen relations off by {:e}{which}, projectors by {:e}",
            report.eigen_deviation, report.projector_deviation
        )));
    }
    match report.resonant_letter {
        Some(l) => Err(spec.model().divisor(&l).expect_err("reported resonant")),
        None => Ok(()),
    }
}

fn resonance_message(kind: ProblemKind, e: &Error) -> String {
    match (kind, e) {
        (ProblemKind::Quasiperiodic, Error::Resonance { letter, .. }) => {
            format!("resonance: k·ω = 0 for k = ({letter})")
        }
        (_, Error::Resonance { letter, .. }) => format!("resonance: ν^v = 0 for letter ({letter})"),
        _ => e.to_string(),
    }
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let problem = Problem::load(path)?;
    let spec = &problem.spec;
    let order = problem.defaults.order;
    let report = spec.eigen_check(order);
    writeln!(out, "problem: {:?}, D = {}, d = {}, {} modes", problem.kind, spec.dim(), spec.d(), spec.modes().len())?;
    writeln!(out, "eigen relations: max deviation {:e}", report.eigen_deviation)?;
    if matches!(spec.gkind(), GKind::LinearProjector { .. }) {
        writeln!(out, "projector algebra: max deviation {:e}", report.projector_deviation)?;
    }
    if let Err(e) = check_problem(&problem, order) {
        writeln!(out, "{}", resonance_message(problem.kind, &e))?;
        return Err(e);
    }
    writeln!(out, "nonresonant through {order} letters: ok")?;
    Ok(EXIT_OK)
}

fn open_output(path: &Option<PathBuf>, stdout: &mut dyn Write, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => write(stdout),
    }
}

fn omega(spec: &ProblemSpec) -> Vec<f64> {
    spec.model().v.iter().map(|z| z.re).collect()
}

fn quasiperiodic_only(problem: &Problem, what: &str) -> Result<()> {
    if problem.kind != ProblemKind::Quasiperiodic {
        return Err(Error::Unsupported(format!("{what} is defined for quasiperiodic problems")));
    }
    Ok(())
}

/// Builds the requested table from the file's problem and the flags.
pub fn coefficient_table(problem: &Problem, args: &CoeffsArgs) -> Result<CoefficientTable> {
    let spec = &problem.spec;
    let order = args.order.unwrap_or(problem.defaults.order);
    check_problem(problem, order)?;
    let support = spec.support();
    let model = spec.model();
    let t0 = args.t0.unwrap_or(problem.defaults.t0);
    let t = args.t.unwrap_or(t0 + 1.0);
    let gamma = || GammaTable::build(model.clone(), &support, order);
    let table = match args.what {
        TableKind::Alpha => match problem.kind {
            ProblemKind::Quasiperiodic => gamma()?.eval_alpha(t, t0),
            ProblemKind::Autonomous => build_gamma_u(model, &support, order)?.eval_alpha(t - t0),
        },
        TableKind::Alphabar => {
            quasiperiodic_only(problem, "alphabar")?;
            gamma()?.eval_alpha_bar(t, t0)
        }
        TableKind::Betabar => match problem.kind {
            ProblemKind::Quasiperiodic => beta_bar_with_model(model, &support, order, t0)?,
            ProblemKind::Autonomous => build_gamma_u(model, &support, order)?.beta_bar(),
        },
        TableKind::Kappa => {
            quasiperiodic_only(problem, "kappa")?;
            let theta = match &args.theta {
                Some(th) => th.clone(),
                None => omega(spec).iter().map(|w| w * t0).collect(),
            };
            if theta.len() != model.d {
                return Err(Error::DimensionMismatch { expected: model.d, got: theta.len() });
            }
            gamma()?.kappa(&theta, t0)
        }
        TableKind::GammaU => {
            let u = args.u.clone().unwrap_or_else(|| vec![Complex64::default(); model.d]);
            model.check_dim(&u)?;
            build_gamma_u(model, &support, order)?.eval(t, &u)
        }
        TableKind::Rho => {
            let u = args.u.clone().unwrap_or_else(|| model.v.clone());
            model.check_dim(&u)?;
            build_gamma_u(model, &support, order)?.rho(&u)
        }
    };
    Ok(table)
}

#[derive(Serialize)]
struct Row {
    word: String,
    re: f64,
    im: f64,
}

/// Entries above [`ZERO_CUTOFF`] in graded order, negative zeros
/// normalized.
fn rows(table: &CoefficientTable) -> Vec<Row> {
    table
        .iter()
        .filter(|(_, z)| z.norm() > ZERO_CUTOFF)
        .map(|(w, z)| Row { word: w.to_string(), re: z.re + 0.0, im: z.im + 0.0 })
        .collect()
}

pub fn write_table(table: &CoefficientTable, format: Format, out: &mut dyn Write) -> Result<()> {
    let rows = rows(table);
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["word", "re", "im"]).map_err(csv_error)?;
            for r in &rows {
                w.write_record([r.word.clone(), r.re.to_string(), r.im.to_string()]).map_err(csv_error)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(|e| Error::Parse(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

pub fn cmd_coeffs(args: &CoeffsArgs, out: &mut dyn Write) -> Result<i32> {
    let problem = Problem::load(&args.file)?;
    let table = coefficient_table(&problem, args)?;
    open_output(&args.out, out, |w| write_table(&table, args.format, w))?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let problem = Problem::load(&args.file)?;
    let order = args.order.unwrap_or(problem.defaults.order);
    check_problem(&problem, order)?;
    let report = run_suite(&problem, args.suite, order, args.seed)?;
    for check in &report.checks {
        writeln!(out, "{check}")?;
    }
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "{} checks, {} failed", report.checks.len(), failed)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
}

/// Sampled times and states of `y(t) = W_{κ(tω;t₀)}(Y(t))` together with
/// the direct reference.
pub struct AveragedRun {
    pub times: Vec<f64>,
    pub averaged: Vec<Vec<Complex64>>,
    pub reference: Vec<Vec<Complex64>>,
}

impl AveragedRun {
    pub fn errors(&self) -> Vec<f64> {
        self.averaged
            .iter()
            .zip(&self.reference)
            .map(|(a, b)| a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max))
            .collect()
    }
}

pub fn averaged_run(
    spec: &ProblemSpec,
    eps: f64,
    order: usize,
    x0: &[Complex64],
    t0: f64,
    t_end: f64,
    samples: usize,
) -> Result<AveragedRun> {
    if spec.gkind() != &GKind::Forced {
        return Err(Error::Unsupported("averaging needs a forced quasiperiodic problem".into()));
    }
    if x0.len() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), got: x0.len() });
    }
    let support = spec.support();
    let gamma = GammaTable::build(spec.model().clone(), &support, order)?;
    let beta = beta_bar_with_model(spec.model(), &support, order, t0)?;
    let basis = WordBasis::new(spec, order)?;
    let field = basis.series_field(&beta, eps)?;
    let slow = solve_with_halving(|_, y, o| o.copy_from_slice(&field.eval(y)), x0, t0, t_end, samples, TRAJECTORY_TOL);
    let reference = direct_solve_with_tol(spec, eps, x0, t0, t_end, samples, TRAJECTORY_TOL);
    let w = omega(spec);
    let averaged = slow
        .times
        .iter()
        .zip(&slow.states)
        .map(|(t, y)| {
            let theta: Vec<f64> = w.iter().map(|wj| wj * t).collect();
            basis.eval_series(&gamma.kappa(&theta, t0), eps, y)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AveragedRun { times: slow.times, averaged, reference: reference.states })
}

pub fn cmd_average(args: &AverageArgs, out: &mut dyn Write) -> Result<i32> {
    let problem = Problem::load(&args.file)?;
    quasiperiodic_only(&problem, "average")?;
    let order = args.order.unwrap_or(problem.defaults.order);
    check_problem(&problem, order)?;
    let spec = &problem.spec;
    let eps = args.eps.unwrap_or(problem.defaults.eps);
    let t0 = problem.defaults.t0;
    let t_end = args.t_end.unwrap_or(if eps == 0.0 { t0 + 1.0 } else { t0 + 1.0 / eps });
    let x0 = args.x0.clone().unwrap_or_else(|| vec![Complex64::new(0.1, 0.0); spec.dim()]);
    let run = averaged_run(spec, eps, order, &x0, t0, t_end, args.samples.max(1))?;

    open_output(&args.out, out, |w| {
        let mut csv = csv::Writer::from_writer(w);
        let n = spec.dim();
        let mut header = vec!["t".to_string()];
        for prefix in ["y", "ref"] {
            for j in 0..n {
                header.push(format!("{prefix}{j}_re"));
                header.push(format!("{prefix}{j}_im"));
            }
        }
        header.push("error".into());
        csv.write_record(&header).map_err(csv_error)?;
        for (i, err) in run.errors().into_iter().enumerate() {
            let mut rec = vec![run.times[i].to_string()];
            for z in run.averaged[i].iter().chain(&run.reference[i]) {
                rec.push(z.re.to_string());
                rec.push(z.im.to_string());
            }
            rec.push(err.to_string());
            csv.write_record(&rec).map_err(csv_error)?;
        }
        csv.flush()?;
        Ok(())
    })?;
    Ok(EXIT_OK)
}
