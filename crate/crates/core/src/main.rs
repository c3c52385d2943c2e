use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use isolab::algebra::rational::parse_rational;
use isolab::algebra::text::format_ratfunc;
use isolab::algebra::{RatFunc, Rational};
use isolab::curve::SuperellipticCurve;
use isolab::garnier::{
    garnier_residual_m2, thm10_solution, thm11_family, GarnierAlgebraicSolution, GarnierDocument, Sign,
};
use isolab::golden::{self, ExampleId, GARNIER_POINTS, GARNIER_STEP, GARNIER_TOL, LIOUVILLIAN_QUAD_TOL, LIOUVILLIAN_SAMPLES, ODE_TOL, WRONSKIAN_TOL};
use isolab::painleve::{
    liouvillian_eval, polynomial_zeros, pvi_residual, thm5_polynomials, thm5_solution, thm6_family, thm7_polynomials,
    thm7_solution, thm8_family, write_zeros_csv, FamilyDocument, PVISolutionFamily, ZeroRow,
};
use isolab::periods::{
    build_cycle_basis, continue_w, period_report, write_period_matrix_csv, write_trace_csv, HomologyCase,
    PeriodOptions, PeriodTolerances,
};
use isolab::schlesinger::{
    build_polynomial_solution, build_rational_solution, check_against_oracle, schlesinger_residual, sum_constraint,
    SolutionDocument, TriangularSolution, SCHEMA_VERSION,
};
use isolab::Error;

#[derive(Parser)]
#[command(name = "isolab", version, about = "Triangular Schlesinger, Painleve VI and Garnier solutions, superelliptic periods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a solution family and print it as JSON.
    Generate(Params),
    /// Run the residual suite on a document, or on a family built from the flags.
    Verify {
        /// Solution document (`-` for stdin).
        document: Option<PathBuf>,
        /// Add the numeric checks (Liouvillian samples for Theorem 7).
        #[arg(long)]
        numeric: bool,
        #[command(flatten)]
        params: Params,
    },
    /// Roots of P_(n+1) and Q_(n+1) (Theorem 5, or Theorem 7 with --b and --c).
    Zeros(Params),
    /// Period matrix of w^(jn) dz/(z - a_i) on w^m = (z - a_1)...(z - a_N).
    Periods {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Also compare finite differences in the a_i, with this step.
        #[arg(long)]
        fd: Option<f64>,
        /// Emit the w-continuation of this basis cycle (1-based) as CSV.
        #[arg(long)]
        trace: Option<usize>,
    },
    /// Regenerate a worked example and compare with its printed values.
    Reproduce {
        /// example-1, example-2, example-3, example-4, example-8 or example-9.
        id: String,
    },
}

#[derive(Args, Default)]
struct Params {
    /// Which construction to run: 3, 4, 5, 6, 7, 8, 10 or 11.
    #[arg(long)]
    theorem: Option<u8>,
    /// Integer exponent n; negative for the rational families.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    /// Curve degree m in w^m.
    #[arg(long)]
    m: Option<u32>,
    /// Number of Garnier variables.
    #[arg(long = "M")]
    big_m: Option<usize>,
    /// Number of poles or branch points.
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Matrix size of the Schlesinger system.
    #[arg(long)]
    p: Option<usize>,
    /// Rational b for Theorem 7, integer b for Theorem 8.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Rational, or comma-separated list for Theorems 3, 4 and 11.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Sign vector such as `++-+`.
    #[arg(long)]
    eps: Option<String>,
    /// Points: `x1,x2;y1,y2` for Garnier, sample abscissae for Liouvillian
    /// checks, complex branch points for periods, the integer a for Theorem 8.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Pole index for Theorems 3 and 4.
    #[arg(long)]
    pole: Option<usize>,
    /// Tolerance override for numeric checks.
    #[arg(long)]
    tol: Option<f64>,
}

/// Usage and parameter problems exit with 2, failed checks with 1.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn required<T: Clone>(value: &Option<T>, flag: &str) -> CliResult<T> {
    value.clone().ok_or_else(|| usage(format!("--{flag} is required here")))
}

fn rational(text: &str, flag: &str) -> CliResult<Rational> {
    parse_rational(text.trim()).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn rationals(text: &str, flag: &str) -> CliResult<Vec<Rational>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| rational(s, flag)).collect()
}

fn floats(text: &str, flag: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| usage(format!("--{flag}: {s:?}: {e}"))))
        .collect()
}

fn tolerance(params: &Params, default: f64) -> CliResult<f64> {
    match params.tol {
        Some(t) if t.is_nan() || t <= 0.0 => Err(usage("--tol must be positive")),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> CliResult<()> {
    let written = match out {
        Some(path) => fs::write(path, bytes),
        None => io::stdout().lock().write_all(bytes),
    };
    written.map_err(|e| usage(format!("cannot write output: {e}")))
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
    text.push('\n');
    emit(out, text.as_bytes())
}

fn json_only(format: Format, command: &str) -> CliResult<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(usage(format!("{command} has no CSV output"))),
    }
}

// one value per run, so the variant sizes do not matter
#[allow(clippy::large_enum_variant)]
enum Subject {
    Triangular(TriangularSolution),
    Pvi(PVISolutionFamily),
    Garnier(GarnierAlgebraicSolution),
}

impl Subject {
    fn kind(&self) -> &'static str {
        match self {
            Subject::Triangular(_) => "triangular_solution",
            Subject::Pvi(_) => "pvi_family",
            Subject::Garnier(_) => "garnier_solution",
        }
    }
}

fn build(params: &Params) -> CliResult<Subject> {
    let theorem = required(&params.theorem, "theorem")?;
    let subject = match theorem {
        3 | 4 => {
            let p = required(&params.p, "p")?;
            let big_n = required(&params.big_n, "N")?;
            let m = required(&params.m, "m")?;
            let n = required(&params.n, "n")?;
            let constants = match &params.c {
                Some(c) => rationals(c, "c")?,
                None => Vec::new(),
            };
            let pole = params.pole.unwrap_or(1);
            let sol = if theorem == 3 {
                build_polynomial_solution(p, big_n, m, n, &constants, pole)?
            } else {
                build_rational_solution(p, big_n, m, n, &constants, pole)?
            };
            Subject::Triangular(sol)
        }
        5 => Subject::Pvi(thm5_solution(required(&params.n, "n")?)?),
        6 => Subject::Pvi(thm6_family(required(&params.n, "n")?)?),
        7 => {
            let b = rational(&required(&params.b, "b")?, "b")?;
            let c = rational(&required(&params.c, "c")?, "c")?;
            Subject::Pvi(thm7_solution(required(&params.n, "n")?, &b, &c)?)
        }
        8 => {
            let int_flag = |v: &Option<String>, flag: &str| -> CliResult<i64> {
                let text = required(v, flag)?;
                text.trim().parse::<i64>().map_err(|e| usage(format!("--{flag}: {text:?}: {e}")))
            };
            let (a, b, c) = (int_flag(&params.a, "a")?, int_flag(&params.b, "b")?, int_flag(&params.c, "c")?);
            Subject::Pvi(thm8_family(a, b, c)?)
        }
        10 => {
            let m = required(&params.m, "m")?;
            Subject::Garnier(thm10_solution(required(&params.big_m, "M")?, m as i64, required(&params.n, "n")?)?)
        }
        11 => {
            let c = rationals(&required(&params.c, "c")?, "c")?;
            Subject::Garnier(thm11_family(required(&params.big_m, "M")?, required(&params.n, "n")?, &c)?)
        }
        other => return Err(usage(format!("no generator for Theorem {other}; use 3, 4, 5, 6, 7, 8, 10 or 11"))),
    };
    Ok(subject)
}

fn generate(params: &Params, format: Format, out: &Option<PathBuf>) -> CliResult<()> {
    json_only(format, "generate")?;
    match build(params)? {
        Subject::Triangular(sol) => emit_json(out, &sol.to_document()?),
        Subject::Pvi(fam) => emit_json(out, &fam.to_document(None)),
        Subject::Garnier(sol) => emit_json(out, &sol.to_document(None)),
    }
}

fn load(path: &PathBuf) -> CliResult<Subject> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?
    };
    let malformed = |e: serde_json::Error| usage(format!("malformed document: {e}"));
    let value: serde_json::Value = serde_json::from_str(&text).map_err(malformed)?;
    let kind = value.get("kind").and_then(|k| k.as_str()).unwrap_or_default().to_string();
    let subject = match kind.as_str() {
        "triangular_solution" => {
            let doc: SolutionDocument = serde_json::from_value(value).map_err(malformed)?;
            Subject::Triangular(TriangularSolution::from_document(&doc)?)
        }
        "pvi_family" => {
            let doc: FamilyDocument = serde_json::from_value(value).map_err(malformed)?;
            Subject::Pvi(PVISolutionFamily::from_document(&doc)?)
        }
        "garnier_solution" => {
            let doc: GarnierDocument = serde_json::from_value(value).map_err(malformed)?;
            Subject::Garnier(GarnierAlgebraicSolution::from_document(&doc)?)
        }
        other => return Err(usage(format!("malformed document: unknown kind {other:?}"))),
    };
    Ok(subject)
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    /// Exact residual text, or the numeric residual.
    residual: String,
}

impl Check {
    fn exact(name: impl Into<String>, value: &RatFunc) -> Self {
        Check { name: name.into(), passed: value.is_zero(), residual: format_ratfunc(value) }
    }

    fn numeric(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Check { name: name.into(), passed: value < tol, residual: format!("{value:.6e}") }
    }
}

#[derive(Serialize)]
struct VerificationReport {
    schema_version: u32,
    kind: &'static str,
    subject: &'static str,
    passed: bool,
    checks: Vec<Check>,
}

fn verify_triangular(sol: &TriangularSolution) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    let residual = schlesinger_residual(sol)?;
    if residual.is_zero() {
        checks.push(Check::exact("Schlesinger equations", &RatFunc::zero()));
    }
    for e in residual.nonzero() {
        checks.push(Check::exact(format!("equation i={} j={} k={} l={}", e.i, e.j, e.k, e.l), &e.value));
    }
    if sol.size() >= 3 {
        let worst = residual.inhomogeneity.iter().find(|e| !e.value.is_zero()).map(|e| e.value.clone());
        checks.push(Check::exact("inhomogeneity", &worst.unwrap_or_else(RatFunc::zero)));
    }
    for ((k, l), value) in sum_constraint(sol)? {
        checks.push(Check::exact(format!("sum over poles k={k} l={l}"), &value));
    }
    if sol.provenance().theorem.is_some() {
        for o in check_against_oracle(sol)? {
            checks.push(Check {
                name: format!("oracle i={} gap={}", o.i, o.gap),
                passed: o.agrees,
                residual: if o.agrees { "0".into() } else { "mismatch".into() },
            });
        }
    }
    Ok(checks)
}

fn verify_pvi(fam: &PVISolutionFamily, numeric: bool, params: &Params) -> CliResult<Vec<Check>> {
    let mut checks = vec![Check::exact("PVI residual", &pvi_residual(&fam.y, &fam.params)?)];
    if numeric {
        if fam.provenance.theorem != 7 {
            return Err(usage("numeric checks exist for Theorem 7 families only"));
        }
        let get = |key: &str| -> CliResult<String> {
            fam.provenance.parameters.get(key).cloned().ok_or_else(|| usage(format!("provenance lacks {key}")))
        };
        let n: i64 = get("n")?.parse().map_err(|_| usage("provenance n is not an integer"))?;
        let (b, c) = (rational(&get("b")?, "b")?, rational(&get("c")?, "c")?);
        let xs = match &params.a {
            Some(a) => floats(a, "a")?,
            None => LIOUVILLIAN_SAMPLES.to_vec(),
        };
        let ode_tol = tolerance(params, ODE_TOL)?;
        for s in liouvillian_eval(n, &b, &c, &xs, LIOUVILLIAN_QUAD_TOL)? {
            checks.push(Check::numeric(format!("Wronskian at x={}", s.x), s.wronskian_rel_error, WRONSKIAN_TOL));
            checks.push(Check::numeric(format!("ODE residual at x={}", s.x), s.ode_residual, ode_tol));
        }
    }
    Ok(checks)
}

fn garnier_points(params: &Params) -> CliResult<Vec<[f64; 2]>> {
    let Some(text) = &params.a else { return Ok(GARNIER_POINTS.to_vec()) };
    text.split(';')
        .map(|pair| match floats(pair, "a")?.as_slice() {
            &[a1, a2] => Ok([a1, a2]),
            other => Err(usage(format!("--a: expected a1,a2 per point, got {} values", other.len()))),
        })
        .collect()
}

fn sign_vectors(params: &Params, len: usize) -> CliResult<Vec<Vec<Sign>>> {
    let Some(text) = &params.eps else { return Ok(Sign::all_vectors(len)) };
    let signs = text
        .chars()
        .map(|ch| match ch {
            '+' => Sign::from_value(1).map_err(Failure::from),
            '-' => Sign::from_value(-1).map_err(Failure::from),
            other => Err(usage(format!("--eps: unexpected {other:?}, use + and -"))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    if signs.len() != len {
        return Err(usage(format!("--eps needs {len} signs, got {}", signs.len())));
    }
    Ok(vec![signs])
}

fn verify_garnier(sol: &GarnierAlgebraicSolution, params: &Params) -> CliResult<Vec<Check>> {
    let points = garnier_points(params)?;
    let signs = sign_vectors(params, sol.m_vars() + 2)?;
    let tol = tolerance(params, GARNIER_TOL)?;
    let jobs: Vec<([f64; 2], &Vec<Sign>)> = points.iter().flat_map(|&a| signs.iter().map(move |e| (a, e))).collect();
    let rows = jobs
        .par_iter()
        .map(|(a, eps)| garnier_residual_m2(sol, eps, *a, GARNIER_STEP).map(|r| (a, eps, r.max())))
        .collect::<isolab::Result<Vec<_>>>()?;
    Ok(rows
        .into_iter()
        .map(|(a, eps, r)| {
            let signs: String = eps.iter().map(|s| if s.value() > 0 { '+' } else { '-' }).collect();
            Check::numeric(format!("a=({}, {}) eps={signs}", a[0], a[1]), r, tol)
        })
        .collect())
}

fn verify(document: &Option<PathBuf>, numeric: bool, params: &Params, format: Format, out: &Option<PathBuf>) -> CliResult<()> {
    json_only(format, "verify")?;
    let subject = match document {
        Some(path) => load(path)?,
        None if params.theorem.is_some() => build(params)?,
        None => return Err(usage("give a document path or --theorem with its parameters")),
    };
    let checks = match &subject {
        Subject::Triangular(sol) => verify_triangular(sol)?,
        Subject::Pvi(fam) => verify_pvi(fam, numeric, params)?,
        Subject::Garnier(sol) => verify_garnier(sol, params)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    let report = VerificationReport {
        schema_version: SCHEMA_VERSION,
        kind: "verification_report",
        subject: subject.kind(),
        passed,
        checks,
    };
    emit_json(out, &report)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct PolynomialZeros {
    poly_id: String,
    degree: usize,
    palindromic: bool,
    conjugation_defect: f64,
    inversion_defect: f64,
    roots: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct ZerosDocument {
    schema_version: u32,
    kind: &'static str,
    polynomials: Vec<PolynomialZeros>,
}

fn zeros(params: &Params, format: Format, out: &Option<PathBuf>) -> CliResult<()> {
    let n = required(&params.n, "n")?;
    let (p, q) = match (&params.b, &params.c) {
        (Some(b), Some(c)) => thm7_polynomials(n, &rational(b, "b")?, &rational(c, "c")?)?,
        (None, None) => thm5_polynomials(n)?,
        _ => return Err(usage("give both --b and --c for Theorem 7 zeros, or neither")),
    };
    let mut reports = Vec::new();
    for (name, poly) in [("P", p), ("Q", q)] {
        reports.push((format!("{name}{}", n + 1), polynomial_zeros(&poly)?));
    }
    match format {
        Format::Csv => {
            let rows: Vec<ZeroRow> = reports.iter().flat_map(|(id, r)| ZeroRow::from_report(id, r)).collect();
            let mut buf = Vec::new();
            write_zeros_csv(&mut buf, &rows)?;
            emit(out, &buf)
        }
        Format::Json => {
            let polynomials = reports
                .into_iter()
                .map(|(poly_id, r)| PolynomialZeros {
                    poly_id,
                    degree: r.degree,
                    palindromic: r.palindromic,
                    conjugation_defect: r.conjugation_defect,
                    inversion_defect: r.inversion_defect,
                    roots: r.roots.iter().map(|z| [z.re, z.im]).collect(),
                })
                .collect();
            emit_json(out, &ZerosDocument { schema_version: SCHEMA_VERSION, kind: "zeros", polynomials })
        }
    }
}

fn branch_points(params: &Params) -> CliResult<Vec<Complex64>> {
    let text = required(&params.a, "a")?;
    text.split(',')
        .map(|s| {
            let s = s.trim();
            Complex64::from_str(s).map_err(|_| usage(format!("--a: {s:?} is not a complex number like 2.1-0.9i")))
        })
        .collect()
}

fn periods(params: &Params, j: u32, fd: Option<f64>, trace: Option<usize>, format: Format, out: &Option<PathBuf>) -> CliResult<()> {
    let curve = SuperellipticCurve::numeric(required(&params.m, "m")?, required(&params.n, "n")?, branch_points(params)?)?;
    if let Some(big_n) = params.big_n {
        if big_n != curve.branch_points().len() {
            return Err(usage(format!("--N {big_n} but {} branch points given", curve.branch_points().len())));
        }
    }
    let opts = PeriodOptions { tol: params.tol.unwrap_or(PeriodOptions::default().tol), ..PeriodOptions::default() };
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    if let Some(k) = trace {
        let cycles = build_cycle_basis(&curve, HomologyCase::of(&curve), &opts)?;
        let cycle = cycles.get(k.wrapping_sub(1)).ok_or_else(|| usage(format!("--trace {k} outside 1..={}", cycles.len())))?;
        let w = continue_w(&curve, &cycle.path, opts.steps, opts.clearance(&curve))?;
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &w)?;
        return emit(out, &buf);
    }
    let report = period_report(&curve, j, &opts, fd, PeriodTolerances::default())?;
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_period_matrix_csv(&mut buf, &report.matrix)?;
            emit(out, &buf)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct PeriodsDocument<'a> {
                schema_version: u32,
                kind: &'static str,
                #[serde(flatten)]
                report: &'a isolab::periods::PeriodReport,
            }
            emit_json(out, &PeriodsDocument { schema_version: SCHEMA_VERSION, kind: "period_report", report: &report })?;
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn reproduce(id: &str, format: Format, out: &Option<PathBuf>) -> CliResult<()> {
    json_only(format, "reproduce")?;
    let id = ExampleId::from_str(id)?;
    let report = golden::reproduce(id)?;
    emit_json(out, &report)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(text) = std::env::var("ISOLAB_THREADS") else { return Ok(()) };
    let threads: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| usage(format!("ISOLAB_THREADS must be a positive integer, got {text:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| usage(format!("cannot size the thread pool: {e}")))
}

fn run(cli: &Cli) -> CliResult<()> {
    configure_threads()?;
    match &cli.command {
        Command::Generate(params) => generate(params, cli.format, &cli.out),
        Command::Verify { document, numeric, params } => verify(document, *numeric, params, cli.format, &cli.out),
        Command::Zeros(params) => zeros(params, cli.format, &cli.out),
        Command::Periods { params, j, fd, trace } => periods(params, *j, *fd, *trace, cli.format, &cli.out),
        Command::Reproduce { id } => reproduce(id, cli.format, &cli.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
