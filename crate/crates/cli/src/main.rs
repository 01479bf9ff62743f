//! `newton-mu`: Newton numbers, Milnor number lower bounds and truncation
//! checks from the command line. Every report is a JSON document on stdout.
//!
//! Exit status: 0 on success, 2 when the input is well formed but the
//! construction does not apply to it, 1 for malformed input or usage.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use newton_mu::json::{region_from_json, RegionJson, SCHEMA};
use newton_mu::oracles::{confirm_mu_step, milnor_colength, shuffled_newton_number};
use newton_mu::parse::parse_polynomial_with;
use newton_mu::rational::{format_rational, parse_rational_list};
use newton_mu::{
    bound_simplex, decompose_difference, gamma_minus, milnor_lower_bound, negligible_truncation_check,
    newton_diagram, newton_number, parse_polynomial, r_bound, r_newton_number, sciv_milnor_bound,
    vanishing_check, BoundCertificate, DegreeTuple, Error, FamilyStep, NewtonRegion, ParsedPolynomial,
    SupportSet,
};

#[derive(Parser, Debug)]
#[command(name = "newton-mu", version, about = "Exact Newton numbers and Milnor number lower bounds")]
struct Cli {
    /// Run every command listed in FILE (one JSON array of arguments per
    /// line) and print the reports as one array, in input order.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compact facets and vertices of the Newton boundary.
    Diagram(InputArgs),
    /// The Newton number with its term-by-term breakdown.
    Nn(InputArgs),
    /// The r-th Newton number for degrees d.
    Rnn {
        #[command(flatten)]
        input: InputArgs,
        /// Number of equations; must match the length of --d when given.
        #[arg(long)]
        r: Option<usize>,
        /// Comma separated positive degrees, e.g. 1,2.
        #[arg(long)]
        d: String,
    },
    /// Certified lower bound for the Milnor number of a hypersurface.
    Bound {
        #[command(flatten)]
        input: InputArgs,
        /// Axis intercepts, e.g. 8/3,4.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Certified lower bound for a similar complete intersection.
    ScivBound {
        #[command(flatten)]
        input: InputArgs,
        /// Comma separated positive degrees of the equations.
        #[arg(long)]
        d: String,
        /// Axis intercepts, e.g. 3,3,3.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Whether removing a vertex monomial keeps the Newton number (n = 4).
    FamilyCheck {
        #[command(flatten)]
        input: InputArgs,
        /// Exponent of the removed monomial, e.g. 0,2,1,1.
        #[arg(long)]
        vertex: String,
    },
    /// The vanishing criteria for the Newton number.
    Vanish {
        #[command(flatten)]
        input: InputArgs,
        /// Assert that the complement of an explicit region is convex.
        #[arg(long)]
        complement_convex: bool,
    },
    /// Pieces of the region between two Newton polyhedra.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        /// The smaller region: a support or region JSON file.
        #[arg(long, value_name = "FILE", required_unless_present = "inner_poly")]
        inner: Option<PathBuf>,
        /// The smaller region given as polynomial text.
        #[arg(long, value_name = "TEXT", conflicts_with = "inner")]
        inner_poly: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Polynomial text, e.g. "x^3+y^2".
    #[arg(long, group = "source")]
    poly: Option<String>,
    /// Support JSON file ("-" for stdin).
    #[arg(long, value_name = "FILE", group = "source")]
    support: Option<PathBuf>,
    /// Explicit region JSON file ("-" for stdin).
    #[arg(long, value_name = "FILE", group = "source")]
    region: Option<PathBuf>,
    /// Variable names for --poly, comma separated.
    #[arg(long)]
    variables: Option<String>,
    /// Add independent cross-checks to the report.
    #[arg(long)]
    with_oracles: bool,
    /// Seed for the randomized triangulation oracle.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_domain() => 2,
            _ => 1,
        }
    }

    fn report(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Lib(e) if e.is_domain() => ("domain", e.to_string()),
            CliError::Lib(e) => ("usage", e.to_string()),
        };
        json!({"schema": SCHEMA, "error": message, "kind": kind})
    }
}

type CliResult<T> = Result<T, CliError>;

enum Input {
    Polynomial(ParsedPolynomial),
    Support(SupportSet),
    Region(NewtonRegion),
}

impl Input {
    fn support(&self) -> CliResult<&SupportSet> {
        match self {
            Input::Polynomial(p) => Ok(&p.support),
            Input::Support(s) => Ok(s),
            Input::Region(_) => Err(CliError::Usage("this command needs --poly or --support".into())),
        }
    }

    fn region(&self) -> CliResult<NewtonRegion> {
        match self {
            Input::Region(r) => Ok(r.clone()),
            _ => Ok(gamma_minus(self.support()?)?),
        }
    }
}

fn read_source(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_support_json(text: &str) -> CliResult<SupportSet> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("support JSON: {e}")))
}

/// A support or region file, told apart by the presence of "simplices".
fn read_region_or_support(path: &PathBuf) -> CliResult<NewtonRegion> {
    let text = read_source(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("JSON: {e}")))?;
    if value.get("simplices").is_some() {
        Ok(region_from_json(&text)?)
    } else {
        Ok(gamma_minus(&parse_support_json(&text)?)?)
    }
}

fn load(input: &InputArgs) -> CliResult<Input> {
    if let Some(text) = &input.poly {
        let parsed = match &input.variables {
            Some(vars) => {
                let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
                parse_polynomial_with(text, &vars)?
            }
            None => parse_polynomial(text)?,
        };
        return Ok(Input::Polynomial(parsed));
    }
    if let Some(path) = &input.support {
        return Ok(Input::Support(parse_support_json(&read_source(path)?)?));
    }
    if let Some(path) = &input.region {
        return Ok(Input::Region(region_from_json(&read_source(path)?)?));
    }
    Err(CliError::Usage("one of --poly, --support or --region is required".into()))
}

fn parse_list(text: &str) -> CliResult<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("{t:?} is not a nonnegative integer")))
        })
        .collect()
}

fn certificate_report(cert: &BoundCertificate) -> Value {
    let mut report = json!({
        "schema": SCHEMA,
        "a": cert.a.iter().map(format_rational).collect::<Vec<_>>(),
        "nu_g": format_rational(&cert.nu_value),
        "bound": format_rational(&cert.bound),
        "verdict": cert.verdict,
        "m_used": cert.modification_m,
        "chain": cert.chain,
    });
    if let (Some(r), Some(d)) = (cert.r, &cert.d) {
        report["r"] = json!(r);
        report["d"] = json!(d);
    }
    report
}

fn run(command: &Command) -> CliResult<Value> {
    match command {
        Command::Diagram(input) => {
            let diagram = newton_diagram(load(input)?.support()?)?;
            Ok(json!({
                "schema": SCHEMA,
                "n": diagram.n,
                "vertices": diagram.vertices,
                "facets": diagram.facets,
            }))
        }
        Command::Nn(args) => {
            let input = load(args)?;
            let report = newton_number(&input.region()?)?;
            let mut out = json!({
                "schema": SCHEMA,
                "n": report.n,
                "nu": format_rational(&report.total),
                "terms": report.terms,
            });
            if args.with_oracles {
                out["oracles"] = nn_oracles(&input, args.seed);
            }
            Ok(out)
        }
        Command::Rnn { input, r, d } => {
            let d: DegreeTuple = d.parse()?;
            if let Some(r) = r {
                if *r != d.r() {
                    return Err(CliError::Usage(format!("--r {r} does not match {} degrees", d.r())));
                }
            }
            let report = r_newton_number(&load(input)?.region()?, &d)?;
            Ok(json!({
                "schema": SCHEMA,
                "n": report.n,
                "r": report.r,
                "d": report.d,
                "nu": format_rational(&report.total),
                "epsilon": report.epsilon,
                "epsilon_term": format_rational(&report.epsilon_term),
                "terms": report.terms,
            }))
        }
        Command::Bound { input: args, a } => {
            let a = parse_rational_list(a)?;
            let input = load(args)?;
            let mut cert = match &input {
                Input::Region(region) => bound_simplex(region, &a)?,
                _ => milnor_lower_bound(input.support()?, &a)?,
            };
            let mut mu = None;
            if args.with_oracles {
                if let Input::Polynomial(p) = &input {
                    mu = Some(confirm_mu_step(&mut cert, &p.polynomial()?)?);
                }
            }
            let mut out = certificate_report(&cert);
            if let Some(mu) = mu {
                out["mu"] = json!(mu);
            }
            Ok(out)
        }
        Command::ScivBound { input, d, a } => {
            let d: DegreeTuple = d.parse()?;
            let a = parse_rational_list(a)?;
            let cert = match load(input)? {
                Input::Region(region) => r_bound(&region, &d, &a)?,
                other => sciv_milnor_bound(other.support()?, &d, &a)?,
            };
            Ok(certificate_report(&cert))
        }
        Command::FamilyCheck { input, vertex } => {
            let vertex = parse_list(vertex)?;
            let step = FamilyStep::new(load(input)?.support()?.clone(), &vertex)?;
            let verdict = negligible_truncation_check(&step)?;
            let mut out = serde_json::to_value(&verdict).expect("serializable");
            out["schema"] = json!(SCHEMA);
            out["vertex"] = json!(vertex);
            Ok(out)
        }
        Command::Vanish { input, complement_convex } => {
            let region = load(input)?.region()?;
            let verdict = vanishing_check(&region, Some(*complement_convex))?;
            let mut out = serde_json::to_value(&verdict).expect("serializable");
            out["schema"] = json!(SCHEMA);
            Ok(out)
        }
        Command::Decompose { input, inner, inner_poly } => {
            let outer = load(input)?.region()?;
            let inner = match (inner, inner_poly) {
                (_, Some(text)) => gamma_minus(&parse_polynomial(text)?.support)?,
                (Some(path), None) => read_region_or_support(path)?,
                (None, None) => return Err(CliError::Usage("--inner or --inner-poly is required".into())),
            };
            let pieces = decompose_difference(&outer, &inner)?;
            let nu_outer = newton_number(&outer)?.total;
            let nu_inner = newton_number(&inner)?.total;
            let sum: newton_mu::Rational = pieces.iter().map(|p| p.nu.clone()).sum();
            Ok(json!({
                "schema": SCHEMA,
                "nu_outer": format_rational(&nu_outer),
                "nu_inner": format_rational(&nu_inner),
                "pieces_sum": format_rational(&sum),
                "pieces": pieces,
            }))
        }
    }
}

fn nn_oracles(input: &Input, seed: u64) -> Value {
    let mut out = json!({});
    if let Ok(support) = input.support() {
        out["seed"] = json!(seed);
        out["shuffled_nu"] = match shuffled_newton_number(support, seed) {
            Ok(v) => json!(format_rational(&v)),
            Err(e) => json!({"error": e.to_string()}),
        };
    }
    if let Input::Region(region) = input {
        out["region"] = json!(RegionJson::from_region(region));
    }
    if let Input::Polynomial(p) = input {
        out["colength_mu"] = match p.polynomial().and_then(|poly| milnor_colength(&poly)) {
            Ok(mu) => json!(mu),
            Err(e) => json!({"error": e.to_string()}),
        };
    }
    out
}

/// Runs one parsed command line; returns the exit code and the report.
fn execute(cli: Cli) -> (u8, Value) {
    let Some(command) = cli.command else {
        return (1, CliError::Usage("a command or --batch is required".into()).report());
    };
    match run(&command) {
        Ok(report) => (0, report),
        Err(e) => (e.exit_code(), e.report()),
    }
}

fn run_batch(path: &PathBuf) -> CliResult<(u8, Value)> {
    let text = read_source(path)?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    let results: Vec<(u8, Value)> = lines
        .par_iter()
        .map(|(line, l)| {
            let args: Vec<String> = match serde_json::from_str(l) {
                Ok(args) => args,
                Err(e) => return (1, CliError::Usage(format!("line {}: {e}", line + 1)).report()),
            };
            let parsed = Cli::try_parse_from(std::iter::once("newton-mu".to_string()).chain(args));
            match parsed {
                Ok(cli) if cli.batch.is_some() => (1, CliError::Usage("nested --batch".into()).report()),
                Ok(cli) => execute(cli),
                Err(e) => (1, CliError::Usage(e.to_string()).report()),
            }
        })
        .collect();
    let code = results.iter().map(|(c, _)| *c).max().unwrap_or(0);
    let entries: Vec<Value> = results
        .into_iter()
        .enumerate()
        .map(|(index, (exit, report))| json!({"index": index, "exit": exit, "report": report}))
        .collect();
    Ok((code, json!({"schema": SCHEMA, "results": entries})))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let (code, report) = match &cli.batch {
        Some(_) if cli.command.is_some() => (1, CliError::Usage("--batch takes no command".into()).report()),
        Some(path) => run_batch(path).unwrap_or_else(|e| (e.exit_code(), e.report())),
        None => execute(cli),
    };
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    let _ = writeln!(std::io::stdout(), "{text}");
    if let Some(message) = report.get("error").and_then(Value::as_str) {
        eprintln!("error: {message}");
    }
    ExitCode::from(code)
}
