use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;

use laddernet::dirichlet::{source_current, Admittance};
use laddernet::exhaustion::{diagnose, exhaust, ladder_term, ConvergenceStatus, Source};
use laddernet::format::{format_complex, format_real, parse_complex};
use laddernet::infinite::{cl_infinite_admittance, lc_infinite_admittance, LimitValue};
use laddernet::sweep::{sweep, write_csv, SweepGrid};
use laddernet::{build_ladder, solve_dirichlet, Error, LadderSpec, Lambda, Network};

/// Ladder network admittances over the complex frequency plane.
#[derive(Parser)]
#[command(name = "laddernet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite and infinite ladder admittance at one λ.
    Compute(ComputeArgs),
    /// Region and limit map over a grid, written as CSV.
    Sweep(SweepArgs),
    /// Table of Pₙ for n = 1..n_max with a convergence verdict.
    Converge(ConvergeArgs),
    /// Voltages and admittance of a network read from JSON.
    Solve(SolveArgs),
    /// Write an LC or CL ladder as a JSON network file.
    Export(ExportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Lc,
    Cl,
    Ab,
}

#[derive(Args)]
struct LadderArgs {
    #[arg(long, value_enum, default_value = "lc")]
    kind: Kind,
    /// Inductance.
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
    /// Capacitance.
    #[arg(long = "C", default_value_t = 1.0)]
    c: f64,
    /// Series admittance for `--kind ab`.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    alpha: Option<Complex64>,
    /// Rung admittance for `--kind ab`.
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    beta: Option<Complex64>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    ladder: LadderArgs,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    lambda: Complex64,
    /// Finite ladder size.
    #[arg(long)]
    n: Option<usize>,
    /// Also report the infinite-ladder limit.
    #[arg(long)]
    limit: bool,
    /// Terms used to estimate the limit for `--kind ab`.
    #[arg(long, default_value_t = 200)]
    n_max: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    ladder: LadderArgs,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    re_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    re_max: f64,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    im_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    im_max: f64,
    #[arg(long, default_value_t = 61)]
    nre: usize,
    #[arg(long, default_value_t = 61)]
    nim: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    ladder: LadderArgs,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    lambda: Complex64,
    #[arg(long, default_value_t = 30)]
    n_max: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct SolveArgs {
    /// JSON network file.
    #[arg(long)]
    file: PathBuf,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    lambda: Complex64,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    ladder: LadderArgs,
    #[arg(long)]
    n: usize,
    /// JSON destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Input(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Schema(_) | Error::InvalidNetwork(_) | Error::Io(_) => Failure::Input(msg),
            Error::InvalidParameter(_)
            | Error::InvalidEdgeParams(_)
            | Error::InvalidSize { .. }
            | Error::InvalidGrid(_)
            | Error::TooFewTerms { .. }
            | Error::Unsupported(_) => Failure::Usage(msg),
            _ => Failure::Numeric(msg),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Converge(a) => converge(a),
        Command::Solve(a) => solve(a),
        Command::Export(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

impl LadderArgs {
    fn spec(&self) -> Result<LadderSpec, Failure> {
        match self.kind {
            Kind::Lc => Ok(LadderSpec::lc(self.l, self.c)?),
            Kind::Cl => Ok(LadderSpec::cl(self.l, self.c)?),
            Kind::Ab => match (self.alpha, self.beta) {
                (Some(a), Some(b)) => Ok(LadderSpec::general(a, b)),
                _ => Err(Failure::Usage(
                    "--kind ab needs both --alpha and --beta".into(),
                )),
            },
        }
    }

    fn tag(&self) -> &'static str {
        match self.kind {
            Kind::Lc => "lc",
            Kind::Cl => "cl",
            Kind::Ab => "ab",
        }
    }
}

fn lambda_of(z: Complex64) -> Result<Lambda, Failure> {
    Lambda::new(z).map_err(|e| Failure::Numeric(e.to_string()))
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("formatted JSON is valid")
}

fn complex_json(z: Complex64) -> Box<RawValue> {
    if z.re.is_finite() && z.im.is_finite() {
        raw(format!(
            "{{\"re\":{},\"im\":{}}}",
            format_real(z.re),
            format_real(z.im)
        ))
    } else {
        raw("\"infinity\"".into())
    }
}

fn admittance_json(p: Admittance) -> (Box<RawValue>, Box<RawValue>) {
    match p {
        Admittance::Finite(p) if p.norm() == 0.0 => (complex_json(p), raw("\"infinity\"".into())),
        Admittance::Finite(p) => (complex_json(p), complex_json(p.inv())),
        Admittance::Infinite => (
            raw("\"infinity\"".into()),
            complex_json(Complex64::new(0.0, 0.0)),
        ),
    }
}

#[allow(non_snake_case)]
#[derive(Serialize)]
struct ComputeRecord {
    kind: &'static str,
    lambda: Box<RawValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    region: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    P_n: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    Z_n: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    P_inf: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    Z_inf: Option<Box<RawValue>>,
}

/// Infinite-ladder limit for LC/CL kinds, with the region tag.
fn known_limit(
    spec: &LadderSpec,
    lambda: Lambda,
) -> Result<Option<(&'static str, LimitValue)>, Failure> {
    Ok(match *spec {
        LadderSpec::Lc {
            inductance,
            capacitance,
        } => {
            let r = lc_infinite_admittance(lambda, inductance, capacitance)?;
            Some((r.region.tag(), r.value))
        }
        LadderSpec::Cl {
            inductance,
            capacitance,
        } => {
            let r = cl_infinite_admittance(lambda, inductance, capacitance)?;
            Some((r.region.tag(), r.value))
        }
        LadderSpec::General { .. } => None,
    })
}

fn compute(a: ComputeArgs) -> CliResult {
    if a.n.is_none() && !a.limit {
        return Err(Failure::Usage("give --n, --limit or both".into()));
    }
    let spec = a.ladder.spec()?;
    let lambda = lambda_of(a.lambda)?;
    spec.alpha(lambda)
        .map_err(|_| Error::NotInLambdaSet { u: 0, v: 2 })?;
    spec.beta(lambda)
        .map_err(|_| Error::NotInLambdaSet { u: 1, v: 2 })?;

    let limit = known_limit(&spec, lambda)?;
    let mut record = ComputeRecord {
        kind: a.ladder.tag(),
        lambda: complex_json(a.lambda),
        region: limit.map(|(tag, _)| tag),
        n: a.n,
        P_n: None,
        Z_n: None,
        status: None,
        P_inf: None,
        Z_inf: None,
    };
    if let Some(n) = a.n {
        let (p, z) = admittance_json(ladder_term(&spec, lambda, n, Source::ClosedForm)?);
        record.P_n = Some(p);
        record.Z_n = Some(z);
    }
    if a.limit {
        let value = match limit {
            Some((_, v)) => v,
            None => {
                let seq = exhaust(&spec, lambda, a.n_max.max(4), Source::ClosedForm)?;
                let verdict = diagnose(&seq, a.tol)?;
                match (verdict.status, verdict.estimated_limit) {
                    (ConvergenceStatus::Converged, Some(p)) => LimitValue::Finite(p),
                    _ => LimitValue::NonConvergent,
                }
            }
        };
        match value {
            LimitValue::Finite(p) => {
                let (p, z) = admittance_json(Admittance::Finite(p));
                record.status = Some("converged");
                record.P_inf = Some(p);
                record.Z_inf = Some(z);
            }
            LimitValue::NonConvergent => record.status = Some("non_convergent"),
        }
    }
    let text = serde_json::to_string(&record).map_err(|e| Failure::Input(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => fs::File::create(p)
            .map(|f| Box::new(io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn run_sweep(a: SweepArgs) -> CliResult {
    if a.ladder.kind == Kind::Ab {
        return Err(Failure::Usage("sweep supports --kind lc or cl".into()));
    }
    let spec = a.ladder.spec()?;
    let grid = SweepGrid::new((a.re_min, a.re_max), (a.im_min, a.im_max), a.nre, a.nim)?;
    let rows = sweep(&spec, &grid)?;
    write_csv(&rows, open_out(&a.out)?)?;
    Ok(())
}

fn converge(a: ConvergeArgs) -> CliResult {
    if a.n_max < 4 {
        return Err(Failure::Usage(format!(
            "--n-max must be at least 4, got {}",
            a.n_max
        )));
    }
    let spec = a.ladder.spec()?;
    let lambda = lambda_of(a.lambda)?;
    let seq = exhaust(&spec, lambda, a.n_max, Source::ClosedForm)?;
    let limit = known_limit(&spec, lambda)?.and_then(|(_, v)| v.finite());

    let mut out = io::stdout().lock();
    let w = |e: io::Error| Failure::Input(e.to_string());
    writeln!(out, "{:>4}  {:<32}  |P_n - P_inf|", "n", "P_n").map_err(w)?;
    for (n, p) in &seq.terms {
        let (value, error) = match (p, limit) {
            (Admittance::Finite(p), Some(l)) => (format_complex(*p), format_real((p - l).norm())),
            (Admittance::Finite(p), None) => (format_complex(*p), "-".into()),
            (Admittance::Infinite, _) => ("infinity".into(), "-".into()),
        };
        writeln!(out, "{n:>4}  {value:<32}  {error}").map_err(w)?;
    }
    let v = diagnose(&seq, a.tol)?;
    let mut line = format!("verdict: {}", v.status.tag());
    if let Some(p) = v.estimated_limit {
        line.push_str(&format!("  limit {}", format_complex(p)));
    }
    if let Some(r) = v.estimated_rate {
        line.push_str(&format!("  rate {}", format_real(r)));
    }
    writeln!(out, "{line}").map_err(w)?;
    Ok(())
}

fn solve(a: SolveArgs) -> CliResult {
    let text = fs::read_to_string(&a.file)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.file.display())))?;
    let net = Network::from_json(&text)?;
    let lambda = lambda_of(a.lambda)?;
    let mut out = io::stdout().lock();
    let w = |e: io::Error| Failure::Input(e.to_string());
    match solve_dirichlet(&net, lambda) {
        Ok(v) => {
            for (x, value) in v.values() {
                writeln!(out, "v({x}) = {}", format_complex(*value)).map_err(w)?;
            }
            let p = source_current(&net, &v)?;
            writeln!(out, "P = {}", format_complex(p)).map_err(w)?;
            if p.norm() == 0.0 {
                writeln!(out, "Z = infinity").map_err(w)?;
            } else {
                writeln!(out, "Z = {}", format_complex(p.inv())).map_err(w)?;
            }
            if !v.is_unique() {
                writeln!(out, "note: voltages are not unique; one solution shown").map_err(w)?;
            }
        }
        Err(Error::NoSolution) => {
            writeln!(out, "P = infinity").map_err(w)?;
            writeln!(out, "Z = {}", format_complex(Complex64::new(0.0, 0.0))).map_err(w)?;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn export(a: ExportArgs) -> CliResult {
    if a.ladder.kind == Kind::Ab {
        return Err(Failure::Usage("export supports --kind lc or cl".into()));
    }
    let net = build_ladder(&a.ladder.spec()?, a.n)?;
    let json = net.to_json()?;
    let mut out = open_out(&a.out)?;
    writeln!(out, "{json}").map_err(|e| Failure::Input(e.to_string()))?;
    Ok(())
}
