//! `interlace`: build polynomial families, compute their zeros, and check
//! interlacing results from the command line.
//!
//! Exit codes: 0 when every applicable clause passes, 1 on a clause failure,
//! 2 on invalid input.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use interlace_core::families::monic_by_recurrence;
use interlace_core::relations::{
    build_relation_kind, check_corollary, check_relation, oracle_theorem1, oracle_theorem2, oracle_theorem2star,
    CheckReport, ClauseStatus, EPlacement, OracleOptions, Outcome, RelationKind, Shape, Thm1Orientation,
};
use interlace_core::rootfind::zeros_of;
use interlace_core::scalar::{format_rational, parse_rational};
use interlace_core::sweep::{run_sweep, NRange, OutputFormat, SweepOutcome, SweepSpec};
use interlace_core::table::{table2, table2_rows};
use interlace_core::{BigRational, Error, FamilyKind, FamilySpec};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "interlace",
    version,
    about = "Interlacing checks for mixed three-term relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the monic polynomial of a family member as JSON.
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        /// Print floating-point coefficients instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Print the zeros of a family member as JSON.
    Zeros {
        #[command(flatten)]
        family: FamilyArgs,
        /// Significant digits in the printed zeros.
        #[arg(long, default_value_t = 6)]
        digits: usize,
        /// Emit `x,family` CSV pairs for plotting instead of JSON.
        #[arg(long)]
        plot_data: bool,
    },
    /// Build the relation behind an interlacing result and check it.
    Check {
        /// Result id such as `jacobi-3.6`, or `jacobi-structure`, `oracle-thm1`, `oracle-thm2star`, `oracle-thm2`.
        id: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Seed for oracle relations.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the two-block Jacobi zero comparison as CSV.
    Table2 {
        #[arg(long, default_value_t = 6)]
        digits: usize,
        /// Emit `x,family` CSV pairs for plotting.
        #[arg(long)]
        plot_data: bool,
    },
    /// Run a parameter sweep from a JSON file, or an oracle sweep from flags.
    Sweep {
        /// Sweep specification file.
        file: Option<String>,
        /// Oracle shape to sweep instead of a file.
        #[arg(long, value_enum, conflicts_with = "file")]
        oracle: Option<OracleShape>,
        /// Degree range for oracle sweeps, `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "1..8")]
        n: String,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, value_enum)]
        placement: Option<PlacementArg>,
        #[arg(long, value_enum)]
        orientation: Option<OrientationArg>,
        /// Output path; defaults to the file's `output` field, then stdout.
        #[arg(long)]
        output: Option<String>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleShape {
    Thm1,
    Thm2star,
    Thm2,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementArg {
    Anywhere,
    Below,
    Interior,
    Above,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    QBelowG,
    GBelowQ,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct FamilyArgs {
    /// jacobi, laguerre, krawtchouk, meixner, narayana, narayana-reduced,
    /// narayana-christoffel or narayana-perturbed.
    #[arg(long)]
    family: String,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long = "N")]
    big_n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long)]
    w: Option<String>,
}

impl ParamArgs {
    fn map(&self) -> Result<BTreeMap<String, BigRational>, Error> {
        let mut m = BTreeMap::new();
        for (k, v) in [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("p", &self.p),
            ("N", &self.big_n),
            ("t", &self.t),
            ("w", &self.w),
        ] {
            if let Some(v) = v {
                m.insert(k.to_string(), parse_rational(v)?);
            }
        }
        Ok(m)
    }

    fn spec(&self, family: &str) -> Result<FamilySpec, Error> {
        FamilySpec::new(FamilyKind::from_parts(family, &self.map()?)?, self.n)
    }
}

enum Failure {
    Clause,
    Input(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::ParseRational(_)
            | Error::Malformed(_)
            | Error::Unsupported(_)
            | Error::OutOfRange(_)
            | Error::ModeMismatch { .. } => Failure::Input(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Rounds to `digits` significant digits and prints the shortest
/// representation of the rounded value.
fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Clause) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match command {
        Command::Poly { family, float } => {
            let spec = family.params.spec(&family.family)?;
            let poly = monic_by_recurrence(&spec)?;
            let coeffs = if float {
                json!(poly.to_f64().coeffs())
            } else {
                json!(poly.coeffs().iter().map(format_rational).collect::<Vec<_>>())
            };
            let doc = json!({
                "family": spec.kind.name(),
                "params": spec.kind.params().iter().map(|(k, v)| (k.clone(), format_rational(v))).collect::<BTreeMap<_, _>>(),
                "n": spec.n,
                "degree": poly.degree().unwrap_or(0),
                "mode": if float { "float" } else { "rational" },
                "coeffs": coeffs,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Command::Zeros {
            family,
            digits,
            plot_data,
        } => {
            let spec = family.params.spec(&family.family)?;
            let zs = zeros_of(&spec)?;
            if plot_data {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["x", "family"])?;
                for z in zs.zeros() {
                    w.write_record([round_sig(*z, digits).to_string(), spec.label()])?;
                }
                w.flush()?;
                return Ok(());
            }
            let doc = json!({
                "family": spec.label(),
                "zeros": zs.zeros().iter().map(|z| round_sig(*z, digits)).collect::<Vec<_>>(),
                "bound": zs.bound(),
                "method": zs.method().name(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Command::Check { id, params, seed, json } => {
            let report = check(&id, &params, seed)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                print_report(&mut out, &report)?;
            }
            match report.outcome {
                Outcome::Pass => {}
                Outcome::NotApplicable => {
                    eprintln!("note: a hypothesis of the theorem fails here, so it makes no claim");
                }
                Outcome::Fail | Outcome::Inconclusive => return Err(Failure::Clause),
            }
        }
        Command::Table2 { digits, plot_data } => {
            let blocks = table2()?;
            let mut w = csv::Writer::from_writer(out);
            if plot_data {
                w.write_record(["x", "family"])?;
                for b in &blocks {
                    let (a, be) = (format_rational(&b.alpha), format_rational(&b.beta));
                    for x in &b.x {
                        w.write_record([
                            round_sig(*x, digits).to_string(),
                            format!("jacobi[alpha={a},beta={be};n={}]", b.n),
                        ])?;
                    }
                    for z in &b.z {
                        w.write_record([
                            round_sig(*z, digits).to_string(),
                            format!("jacobi[alpha={}+1,beta={}+1;n={}]", a, be, b.n),
                        ])?;
                    }
                }
            } else {
                for mut row in table2_rows(&blocks) {
                    row.x = round_sig(row.x, digits);
                    row.z = round_sig(row.z, digits);
                    w.serialize(row)?;
                }
            }
            w.flush()?;
        }
        Command::Sweep {
            file,
            oracle,
            n,
            seeds,
            placement,
            orientation,
            output,
            format,
        } => {
            let mut spec = match (file, oracle) {
                (Some(path), _) => {
                    let text = fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
                    SweepSpec::from_json(&text)?
                }
                (None, Some(shape)) => {
                    let shape = match shape {
                        OracleShape::Thm1 => Shape::Thm1,
                        OracleShape::Thm2star => Shape::Thm2star,
                        OracleShape::Thm2 => Shape::Thm2,
                    };
                    SweepSpec::oracle(shape, parse_range(&n)?, seeds)
                }
                (None, None) => return Err(Failure::Input("give a sweep file or --oracle".into())),
            };
            if let Some(p) = placement {
                spec.placement = Some(match p {
                    PlacementArg::Anywhere => EPlacement::Anywhere,
                    PlacementArg::Below => EPlacement::Below,
                    PlacementArg::Interior => EPlacement::Interior,
                    PlacementArg::Above => EPlacement::Above,
                });
            }
            if let Some(o) = orientation {
                spec.orientation = Some(match o {
                    OrientationArg::QBelowG => Thm1Orientation::QBelowG,
                    OrientationArg::GBelowQ => Thm1Orientation::GBelowQ,
                    OrientationArg::Random => Thm1Orientation::Random,
                });
            }
            if let Some(f) = format {
                spec.format = match f {
                    FormatArg::Csv => OutputFormat::Csv,
                    FormatArg::Json => OutputFormat::Json,
                };
            }
            if output.is_some() {
                spec.output = output;
            }
            let result = run_sweep(&spec)?;
            match &spec.output {
                Some(path) => write_sweep(fs::File::create(path)?, &result)?,
                None => write_sweep(&mut out, &result)?,
            }
            eprintln!("{}", result.summary.line());
            if !result.summary.all_pass() {
                return Err(Failure::Clause);
            }
        }
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<NRange, Failure> {
    let bad = || Failure::Input(format!("invalid degree range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let min = a.trim().parse().map_err(|_| bad())?;
    let max = b.trim().parse().map_err(|_| bad())?;
    if min > max {
        return Err(bad());
    }
    Ok(NRange { min, max })
}

fn check(id: &str, params: &ParamArgs, seed: u64) -> Result<CheckReport, Failure> {
    let kind: RelationKind = id.parse()?;
    let report = match kind {
        RelationKind::Corollary(c) => check_corollary(c, &params.spec(c.base_family())?)?,
        RelationKind::JacobiStructure => check_relation(&build_relation_kind(kind, &params.spec("jacobi")?)?)?,
        RelationKind::Oracle(shape) => {
            let opts = OracleOptions::new(params.n, seed);
            let r = match shape {
                Shape::Thm1 => oracle_theorem1(&opts)?,
                Shape::Thm2star => oracle_theorem2star(&opts)?,
                Shape::Thm2 => oracle_theorem2(&opts)?,
            };
            check_relation(&r)?
        }
    };
    Ok(report)
}

fn print_report(out: &mut impl Write, r: &CheckReport) -> io::Result<()> {
    writeln!(out, "relation  {} ({})", r.relation, r.params)?;
    writeln!(out, "shape     {:?}", r.shape)?;
    writeln!(out, "E         {} ({})", r.e_exact, r.e)?;
    if let Some(case) = r.case {
        writeln!(out, "case      {case}")?;
    }
    if let Some(pos) = r.e_position {
        writeln!(out, "E slot    {pos}")?;
    }
    if let Some(zg) = &r.zeros_g {
        if let (Some(first), Some(last)) = (zg.first(), zg.last()) {
            writeln!(out, "G zeros   {first} .. {last}")?;
        }
    }
    if let Some(c) = &r.configuration {
        writeln!(out, "config    {c:?}")?;
    }
    if let Some(x) = &r.extremes {
        writeln!(out, "extremes  left={} right={}", x.left, x.right)?;
    }
    let width = r.clauses.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.clauses {
        let mark = match c.status {
            ClauseStatus::Pass => "pass",
            ClauseStatus::Fail => "FAIL",
            ClauseStatus::Inconclusive => "????",
            ClauseStatus::Skipped => "skip",
        };
        writeln!(out, "  [{mark}] {:width$}  {}", c.name, c.detail)?;
    }
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    writeln!(out, "outcome   {:?}", r.outcome)
}

fn write_sweep(w: impl Write, result: &SweepOutcome) -> Result<(), Failure> {
    match result.spec.format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(w);
            for row in result.rows() {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let doc = json!({ "summary": result.summary, "rows": result.rows() });
            let mut w = w;
            writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}
