//! `tsch`: command-line front end.
//!
//! Exit codes: 0 success, 1 computation failure (error JSON on stderr), 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Arc;
use tschirnhaus::bounds::{bounds_table, check_lemma_dim, phi, psi_sequence, table_csv, table_markdown};
use tschirnhaus::finite_field::{split_prime_power, FiniteField};
use tschirnhaus::forms::{
    complete_intersection, form_terms, pencil_form, restrict_to_chart, transform_coeffs, transform_coeffs_oracle,
    tschirnhaus_form, CompleteIntersectionSpec, Pencil, DEFAULT_ORACLE_CAP,
};
use tschirnhaus::reduction::{reduce, verify_trace, Level, ReductionOptions, ReductionTrace, VerifyReport};
use tschirnhaus::smoothness::{
    brute_force_smooth, orbit_certificate, orbit_structure, quadric_discriminant_scaling, DEFAULT_POINT_BUDGET,
};
use tschirnhaus::symmetric::CoeffVector;
use tschirnhaus::AlgebraError;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "tsch", version, about = "Tschirnhaus forms, transformations, smoothness certificates and bounds")]
struct Cli {
    /// Emit versioned JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration and batch reductions (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolvent-degree bound tables and the dimension-lemma sweep.
    Bounds {
        #[command(subcommand)]
        action: BoundsAction,
    },
    /// The psi sequence for (d, k).
    Psi { d: u32, k: u64 },
    /// Tschirnhaus form T_i in n variables.
    Form(FormArgs),
    /// Coefficients of the transformed polynomial.
    Transform(TransformArgs),
    /// Reduce a polynomial to principal or Bring form.
    Reduce(ReduceArgs),
    /// Orbit certificate of generic smoothness for i = p^r + 1.
    Certify(CertifyArgs),
    /// Brute-force Jacobian check of a complete intersection on a pencil.
    VerifySmooth(VerifySmoothArgs),
    /// det(Gram of T_12) / disc at random points.
    DiscScaling(DiscScalingArgs),
}

#[derive(Subcommand)]
enum BoundsAction {
    /// FW(r) against the prior bounds for 2 <= r <= max-r.
    Table {
        #[arg(long, default_value_t = 15)]
        max_r: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
    },
    /// Check the psi dimension inequalities for 2 <= d <= max-d, 1 <= k <= max-k.
    Lemma {
        #[arg(long, default_value_t = 6)]
        max_d: u32,
        #[arg(long, default_value_t = 12)]
        max_k: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PencilArg {
    Radical,
    RadicalLinear,
}

impl From<PencilArg> for Pencil {
    fn from(p: PencilArg) -> Self {
        match p {
            PencilArg::Radical => Pencil::Radical,
            PencilArg::RadicalLinear => Pencil::RadicalLinear,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Principal,
    Bring,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Principal => Level::Principal,
            LevelArg::Bring => Level::Bring,
        }
    }
}

#[derive(Args)]
struct FormArgs {
    #[arg(long)]
    n: usize,
    /// Degree i of the form.
    #[arg(long, short = 'i')]
    degree: u32,
    /// Expand the power sums into the coefficients a_k (or the pencil parameter).
    #[arg(long)]
    expand: bool,
    /// Specialize to a pencil and drop the coordinates fixed by T_1 (implies --expand).
    #[arg(long, value_enum)]
    pencil: Option<PencilArg>,
    /// Set b0 = 0.
    #[arg(long)]
    reduced: bool,
}

#[derive(Args)]
struct TransformArgs {
    /// a_1,...,a_n
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// b_0,...,b_{n-1}
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Use the companion-matrix oracle instead of power sums.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// a_1,...,a_n
    #[arg(long, allow_hyphen_values = true, required_unless_present = "batch", conflicts_with = "batch")]
    coeffs: Option<String>,
    /// File with one coefficient list per line; reductions run in parallel.
    #[arg(long)]
    batch: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = LevelArg::Principal)]
    level: LevelArg,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: u32,
    /// Orbits and bound only, without building the witness field.
    #[arg(long)]
    structure_only: bool,
}

#[derive(Args)]
struct VerifySmoothArgs {
    #[arg(long)]
    n: usize,
    /// Strictly increasing form degrees, e.g. 1,2.
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
    #[arg(long)]
    reduced: bool,
    #[arg(long, value_enum, default_value_t = PencilArg::Radical)]
    pencil: PencilArg,
    /// Field order q = p^m, as `11`, `2^4` or `GF(16)`.
    #[arg(long)]
    field: String,
    /// Pencil parameter: an integer or `(c0,c1,...)` in the polynomial basis.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value_t = DEFAULT_POINT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct DiscScalingArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Compute { kind: &'static str, message: String, report: Option<Value> },
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let kind = match &e {
            AlgebraError::Parse(_) | AlgebraError::InvalidArgument(_) => return Failure::Usage(e.to_string()),
            AlgebraError::BudgetExceeded { .. } => "budget_exceeded",
            AlgebraError::Hypothesis(_) => "hypothesis",
            AlgebraError::Numerical(_) => "numerical",
            _ => "algebra",
        };
        Failure::Compute { kind, message: e.to_string(), report: None }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute { kind: "io", message: e.to_string(), report: None }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(out), Value::Object(extra)) = (&mut v, body) {
        out.extend(extra);
    }
    v
}

fn emit_json(out: &mut impl Write, command: &str, body: Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &envelope(command, body))?;
    writeln!(out)
}

fn parse_coeffs(s: &str) -> std::result::Result<CoeffVector<num_rational::BigRational>, Failure> {
    CoeffVector::parse(s).map_err(|e| usage(format!("--coeffs: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global();
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!(
                "{}",
                json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": "usage", "message": message } })
            );
            ExitCode::from(2)
        }
        Err(Failure::Compute { kind, message, report }) => {
            let mut err = json!({ "kind": kind, "message": message });
            if let Some(r) = report {
                err["report"] = r;
            }
            eprintln!("{}", json!({ "schema_version": SCHEMA_VERSION, "error": err }));
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    match &cli.command {
        Command::Bounds { action } => run_bounds(action, cli.json, out),
        Command::Psi { d, k } => {
            let psi = psi_sequence(*d, *k)?;
            let text: Vec<String> = psi.iter().map(|x| x.to_string()).collect();
            if cli.json {
                emit_json(out, "psi", json!({ "d": d, "k": k, "psi": text, "phi": phi(*d, *k)?.to_string() }))?;
            } else {
                writeln!(out, "{}", text.join(" "))?;
            }
            Ok(())
        }
        Command::Form(args) => run_form(args, cli.json, out),
        Command::Transform(args) => run_transform(args, cli.json, out),
        Command::Reduce(args) => run_reduce(args, cli.json, out),
        Command::Certify(args) => run_certify(args, cli.json, out),
        Command::VerifySmooth(args) => run_verify_smooth(args, cli.json, out),
        Command::DiscScaling(args) => {
            let report = quadric_discriminant_scaling(args.n, args.trials, args.seed)?;
            if cli.json {
                emit_json(out, "disc-scaling", serde_json::to_value(&report).expect("serializable"))?;
            } else {
                for s in &report.samples {
                    writeln!(
                        out,
                        "a = ({})  det = {}  disc = {}  ratio = {}",
                        s.a.join(","),
                        s.gram_det,
                        s.discriminant,
                        s.ratio
                    )?;
                }
                match &report.ratio {
                    Some(r) => writeln!(out, "constant ratio {r}")?,
                    None => writeln!(out, "ratio not constant")?,
                }
            }
            if !report.constant {
                return Err(Failure::Compute {
                    kind: "verification_failed",
                    message: format!("det/disc is not constant for n = {}", args.n),
                    report: None,
                });
            }
            Ok(())
        }
    }
}

fn run_bounds(action: &BoundsAction, json_mode: bool, out: &mut impl Write) -> Outcome {
    match action {
        BoundsAction::Table { max_r, format } => {
            let rows = bounds_table(*max_r)?;
            match (json_mode, format) {
                (true, _) | (_, TableFormat::Json) => emit_json(
                    out,
                    "bounds table",
                    json!({ "rows": serde_json::to_value(&rows).expect("serializable") }),
                )?,
                (false, TableFormat::Csv) => out.write_all(table_csv(&rows).as_bytes())?,
                (false, TableFormat::Md) => out.write_all(table_markdown(&rows).as_bytes())?,
            }
            Ok(())
        }
        BoundsAction::Lemma { max_d, max_k } => {
            if *max_d < 2 || *max_k < 1 {
                return Err(usage("need --max-d >= 2 and --max-k >= 1"));
            }
            let mut checks = Vec::new();
            for d in 2..=*max_d {
                for k in 1..=*max_k {
                    checks.push(check_lemma_dim(d, k)?);
                }
            }
            let failures: Vec<(u32, u64)> = checks.iter().filter(|c| !c.holds).map(|c| (c.d, c.k)).collect();
            if json_mode {
                emit_json(
                    out,
                    "bounds lemma",
                    json!({ "checks": serde_json::to_value(&checks).expect("serializable") }),
                )?;
            } else {
                for c in &checks {
                    let mark = if c.holds { "ok" } else { "FAILS" };
                    writeln!(
                        out,
                        "d={} k={}  first={}  second: {} >= {} {}  {mark}",
                        c.d, c.k, c.first, c.second_lhs, c.second_rhs, c.second
                    )?;
                }
            }
            if !failures.is_empty() {
                let list: Vec<String> = failures.iter().map(|(d, k)| format!("({d},{k})")).collect();
                return Err(Failure::Compute {
                    kind: "verification_failed",
                    message: format!("inequalities fail at {}", list.join(" ")),
                    report: None,
                });
            }
            Ok(())
        }
    }
}

fn run_form(args: &FormArgs, json_mode: bool, out: &mut impl Write) -> Outcome {
    if args.n < 1 || args.degree < 1 {
        return Err(usage("need n >= 1 and degree >= 1"));
    }
    if args.pencil.is_none() && !args.expand {
        // streamed: one summand per line, power sums left as p_k
        if json_mode {
            write!(
                out,
                "{{\"schema_version\":{SCHEMA_VERSION},\"command\":\"form\",\"n\":{},\"degree\":{},\"terms\":[",
                args.n, args.degree
            )?;
            let mut first = true;
            for t in form_terms(args.n, args.degree) {
                if args.reduced && t.kappa[0] > 0 {
                    continue;
                }
                let term = json!({ "kappa": t.kappa, "multinomial": t.multinomial.to_string(), "power_sum": t.weight });
                write!(out, "{}{term}", if first { "" } else { "," })?;
                first = false;
            }
            writeln!(out, "]}}")?;
        } else {
            for t in form_terms(args.n, args.degree) {
                if args.reduced && t.kappa[0] > 0 {
                    continue;
                }
                writeln!(out, "{}", t.render())?;
            }
        }
        return Ok(());
    }
    let poly = match args.pencil {
        Some(p) => {
            let pencil = Pencil::from(p);
            let spec = CompleteIntersectionSpec::new(args.n, vec![args.degree], args.reduced)?;
            let full = pencil_form(spec.n, args.degree, pencil)?;
            if args.reduced {
                restrict_to_chart(&full, args.n, pencil)?
            } else {
                full
            }
        }
        None if args.reduced => {
            let spec = CompleteIntersectionSpec::new(args.n, vec![args.degree], true)?;
            complete_intersection(&spec)?.remove(0).poly
        }
        None => tschirnhaus_form(args.n, args.degree)?.poly,
    };
    if json_mode {
        emit_json(
            out,
            "form",
            json!({ "n": args.n, "degree": args.degree, "poly": serde_json::to_value(poly.to_json()).expect("serializable") }),
        )?;
    } else {
        writeln!(out, "{poly}")?;
    }
    Ok(())
}

fn run_transform(args: &TransformArgs, json_mode: bool, out: &mut impl Write) -> Outcome {
    let a = parse_coeffs(&args.coeffs)?;
    let b = CoeffVector::parse(&args.b).map_err(|e| usage(format!("--b: {e}")))?.coeffs().to_vec();
    if b.len() != a.degree() {
        return Err(usage(format!("--b needs {} entries, got {}", a.degree(), b.len())));
    }
    let c = if args.oracle { transform_coeffs_oracle(&a, &b, DEFAULT_ORACLE_CAP)? } else { transform_coeffs(&a, &b)? };
    let text: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
    if json_mode {
        let a_text: Vec<String> = a.coeffs().iter().map(|x| x.to_string()).collect();
        let b_text: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        emit_json(out, "transform", json!({ "a": a_text, "b": b_text, "c": text, "oracle": args.oracle }))?;
    } else {
        writeln!(out, "{}", text.join(","))?;
    }
    Ok(())
}

struct Reduced {
    trace: ReductionTrace,
    report: VerifyReport,
}

fn reduce_one(
    a: &CoeffVector<num_rational::BigRational>,
    level: Level,
    opts: &ReductionOptions,
) -> tschirnhaus::Result<Reduced> {
    let trace = reduce(a, level, opts)?;
    let report = verify_trace(&trace, opts.tol)?;
    Ok(Reduced { trace, report })
}

fn write_trace_text(out: &mut impl Write, r: &Reduced) -> io::Result<()> {
    let t = &r.trace;
    writeln!(out, "input  ({})", t.input.join(","))?;
    writeln!(out, "level  {:?}  seed {}  precision {} bits  attempts {}", t.level, t.seed, t.precision, t.attempts)?;
    for (i, s) in t.steps.iter().enumerate() {
        writeln!(out, "step {i}: {}", s.description)?;
        if let Some(e) = &s.exact {
            writeln!(out, "  b (exact) = [{}]", e.b_display.join(", "))?;
        }
        let b: Vec<String> = s.b.iter().map(fmt_complex).collect();
        writeln!(out, "  b = [{}]", b.join(", "))?;
        let c: Vec<String> = s.c.iter().map(fmt_complex).collect();
        writeln!(out, "  c = [{}]", c.join(", "))?;
    }
    for res in &t.residuals {
        writeln!(out, "residual p_{} = {:e}", res.k, res.value)?;
    }
    writeln!(out, "root error {:e}", t.root_error)?;
    writeln!(out, "verified {}", if r.report.ok { "ok" } else { "FAILED" })
}

fn fmt_complex(z: &[String; 2]) -> String {
    // the trace keeps full precision; text output shows 17 significant digits
    let short = |s: &str| s.parse::<f64>().map(|x| format!("{x:e}")).unwrap_or_else(|_| s.to_string());
    if z[1].parse::<f64>().map(|x| x == 0.0).unwrap_or(false) {
        short(&z[0])
    } else {
        format!("{}{}{}i", short(&z[0]), if z[1].starts_with('-') { "" } else { "+" }, short(&z[1]))
    }
}

fn failed_verification(r: &Reduced) -> Failure {
    Failure::Compute {
        kind: "verification_failed",
        message: format!("trace did not verify (flagged steps {:?})", r.report.flagged),
        report: Some(serde_json::to_value(&r.report).expect("serializable")),
    }
}

fn run_reduce(args: &ReduceArgs, json_mode: bool, out: &mut impl Write) -> Outcome {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(usage("--tol must be positive"));
    }
    let level = Level::from(args.level);
    let opts = ReductionOptions { seed: args.seed, tol: args.tol, ..ReductionOptions::default() };
    let Some(path) = &args.batch else {
        let a = parse_coeffs(args.coeffs.as_deref().expect("clap enforces --coeffs or --batch"))?;
        let r = reduce_one(&a, level, &opts)?;
        if json_mode {
            emit_json(
                out,
                "reduce",
                json!({
                    "trace": serde_json::to_value(&r.trace).expect("serializable"),
                    "verification": serde_json::to_value(&r.report).expect("serializable"),
                }),
            )?;
        } else {
            write_trace_text(out, &r)?;
        }
        return if r.report.ok { Ok(()) } else { Err(failed_verification(&r)) };
    };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("--batch {}: {e}", path.display())))?;
    let inputs = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| CoeffVector::parse(l).map_err(|e| usage(format!("batch line `{l}`: {e}"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    // the same seed for every line keeps each result independent of its position
    let results: Vec<tschirnhaus::Result<Reduced>> = inputs.par_iter().map(|a| reduce_one(a, level, &opts)).collect();
    let failures = results.iter().filter(|r| !matches!(r, Ok(x) if x.report.ok)).count();
    if json_mode {
        let entries: Vec<Value> = results
            .iter()
            .map(|r| match r {
                Ok(x) => json!({
                    "trace": serde_json::to_value(&x.trace).expect("serializable"),
                    "verification": serde_json::to_value(&x.report).expect("serializable"),
                }),
                Err(e) => json!({ "error": e.to_string() }),
            })
            .collect();
        emit_json(out, "reduce", json!({ "results": entries }))?;
    } else {
        for (i, r) in results.iter().enumerate() {
            writeln!(out, "# input {i}")?;
            match r {
                Ok(x) => write_trace_text(out, x)?,
                Err(e) => writeln!(out, "error: {e}")?,
            }
        }
    }
    if failures > 0 {
        return Err(Failure::Compute {
            kind: "verification_failed",
            message: format!("{failures} of {} reductions failed", results.len()),
            report: None,
        });
    }
    Ok(())
}

fn run_certify(args: &CertifyArgs, json_mode: bool, out: &mut impl Write) -> Outcome {
    let cert = if args.structure_only {
        orbit_structure(args.n, args.p, args.r)?
    } else {
        orbit_certificate(args.n, args.p, args.r)?
    };
    if json_mode {
        emit_json(out, "certify", serde_json::to_value(&cert).expect("serializable"))?;
    } else {
        writeln!(out, "n = {}  p = {}  r = {}  i = {}  case {}", cert.n, cert.p, cert.r, cert.i, cert.case)?;
        for o in &cert.orbits {
            let el: Vec<String> = o.elements.iter().map(u64::to_string).collect();
            let eps: Vec<String> = o.epsilons.iter().map(u64::to_string).collect();
            let ex: Vec<String> = o.exponents.iter().map(|x| x.to_string()).collect();
            let split = if o.split { "  split" } else { "" };
            writeln!(out, "orbit {{{}}}  eps ({})  E ({}){split}", el.join(","), eps.join(","), ex.join(","))?;
        }
        writeln!(
            out,
            "bound N = {}  (printed bound {}, needed {})",
            cert.bound_n, cert.printed_bound, cert.corrected_bound
        )?;
        writeln!(out, "witness degree {}", cert.witness_degree)?;
        if let (Some(f), Some(a)) = (&cert.witness_field, &cert.witness_a) {
            writeln!(out, "witness a = {a} in {}  modulus {:?}", f.name, f.modulus)?;
        }
        writeln!(out, "unobstructed {}", cert.unobstructed())?;
    }
    Ok(())
}

fn parse_field(s: &str) -> std::result::Result<Arc<FiniteField>, Failure> {
    let t = s.trim();
    let inner = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let bad = || usage(format!("--field: `{s}` is not a prime power"));
    let (p, m) = match inner.split_once('^') {
        Some((p, m)) => (p.trim().parse::<u64>().map_err(|_| bad())?, m.trim().parse::<u32>().map_err(|_| bad())?),
        None => split_prime_power(inner.parse::<u64>().map_err(|_| bad())?).ok_or_else(bad)?,
    };
    Ok(Arc::new(FiniteField::new(p, m)?))
}

fn run_verify_smooth(args: &VerifySmoothArgs, json_mode: bool, out: &mut impl Write) -> Outcome {
    let spec = CompleteIntersectionSpec::new(args.n, args.degrees.clone(), args.reduced)?;
    let field = parse_field(&args.field)?;
    let a = field.parse_elem(&args.a).map_err(|e| usage(format!("--a: {e}")))?;
    let report = brute_force_smooth(&spec, args.pencil.into(), field, &a, args.budget)?;
    let value = serde_json::to_value(&report).expect("serializable");
    if json_mode {
        emit_json(out, "verify-smooth", value.clone())?;
    } else {
        let degrees: Vec<String> = report.degrees.iter().map(u32::to_string).collect();
        writeln!(
            out,
            "n = {}  degrees ({})  {}  pencil {}  field {}  a = {}",
            report.n,
            degrees.join(","),
            if report.reduced { "reduced" } else { "full" },
            report.pencil,
            report.field.name,
            report.a
        )?;
        writeln!(out, "coordinates {}", report.coords.join(" "))?;
        for f in &report.forms {
            writeln!(out, "form {f}")?;
        }
        writeln!(out, "points checked {}  on variety {}", report.points_checked, report.points_on_variety)?;
        writeln!(out, "singular points {}", report.singular_count)?;
        for p in &report.singular_points {
            writeln!(out, "  ({})", p.join(","))?;
        }
        writeln!(out, "{}", if report.smooth { "smooth" } else { "NOT smooth" })?;
    }
    if !report.smooth {
        return Err(Failure::Compute {
            kind: "verification_failed",
            message: format!("{} singular points", report.singular_count),
            report: None,
        });
    }
    Ok(())
}
