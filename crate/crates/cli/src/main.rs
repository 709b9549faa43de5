//! `kmforge`: build algebras and automorphisms from JSON, compute invariants,
//! enumerate involutions and real forms, and run exact verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 catalog or
//! classifier miss. Errors are reported as a JSON object on stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kmforge::automorphism::DEFAULT_ORDER_BOUND;
use kmforge::classification::{self, Invariant, InvolutionKind};
use kmforge::json::{self as codec, Codec, InvariantJson, StandardJson};
use kmforge::lie::BUILTIN_NAMES;
use kmforge::verify::{self, Suite, VerifyConfig};
use kmforge::{Error, LieAlgebra, Order, StandardAutomorphism};

#[derive(Parser, Debug)]
#[command(name = "kmforge", version, about = "Exact loop algebras, affine Kac-Moody algebras and their real forms")]
struct Cli {
    #[command(flatten)]
    session: Session,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Session {
    /// Built-in algebra.
    #[arg(long, global = true, default_value = "sl2C")]
    algebra: String,
    /// Exponent denominator of test contexts.
    #[arg(long = "D", global = true, default_value_t = 1)]
    denominator: u64,
    /// Truncation for slice-based checks.
    #[arg(long = "N", global = true, default_value_t = 4)]
    truncation: i64,
    /// Upper bound for order searches.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    bound: u32,
    /// Seed for random trials.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Built-in algebras.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Standard automorphisms and their invariants.
    #[command(subcommand)]
    Auto(AutoCommand),
    /// Involutions and real forms of the loop algebras.
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Run an exact verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum AlgebraCommand {
    /// Names of the built-in algebras.
    List,
    /// Structure constants and Killing form of `--algebra`.
    Show,
}

#[derive(Subcommand, Debug)]
enum AutoCommand {
    /// Invariant of a finite-order standard automorphism (file or `-`).
    Invariant {
        input: String,
        /// Order of the automorphism; computed when omitted.
        #[arg(long)]
        q: Option<u32>,
    },
    /// A standard automorphism realizing an invariant (file or `-`).
    Realize { input: String },
    /// Order of a standard automorphism (file or `-`).
    Order { input: String },
    /// Whether two automorphisms or invariants are equivalent.
    Equivalent { left: String, right: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    #[value(name = "1a")]
    OneA,
    #[value(name = "1b")]
    OneB,
    #[value(name = "2")]
    Two,
}

impl From<KindArg> for InvolutionKind {
    fn from(k: KindArg) -> InvolutionKind {
        match k {
            KindArg::OneA => InvolutionKind::OneA,
            KindArg::OneB => InvolutionKind::OneB,
            KindArg::Two => InvolutionKind::Two,
        }
    }
}

#[derive(Subcommand, Debug)]
enum ClassifyCommand {
    /// Involutions up to quasiconjugation.
    Involutions {
        #[arg(long)]
        kind: Option<KindArg>,
    },
    /// Real forms: the compact form and one per involution class.
    Realforms,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// jacobi, cocycle, roundtrip, realforms, cartan, hat, scaling, expiso or all.
    suite: String,
    /// Random trials for property checks.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Maximal exponent of random loops.
    #[arg(long, default_value_t = 6)]
    degree: i64,
    /// Orders for first-kind round trips (repeatable).
    #[arg(long = "q")]
    orders: Vec<u32>,
    /// Scaling factor for the scaling suite.
    #[arg(long, default_value_t = 2)]
    r: u32,
}

/// Outcome of a command: JSON output plus whether verification passed.
struct Output {
    value: Value,
    passed: bool,
}

impl Output {
    fn ok(value: Value) -> Output {
        Output { value, passed: true }
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_catalog_miss() => 3,
            _ => 2,
        }
    }

    fn body(&self) -> Value {
        match self {
            Failure::Core(e) => json!({ "error": e.code(), "message": e.to_string() }),
            Failure::Input(m) => json!({ "error": "InvalidInput", "message": m }),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn codec_from_env(session: &Session) -> CliResult<Codec> {
    let level = match std::env::var("KMFORGE_LEVEL") {
        Ok(s) if !s.trim().is_empty() => {
            let l: u64 = s
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("KMFORGE_LEVEL `{s}` is not a positive integer")))?;
            if session.denominator == 0 || l % session.denominator != 0 {
                return Err(Failure::Input(format!(
                    "KMFORGE_LEVEL {l} is not a multiple of D = {}",
                    session.denominator
                )));
            }
            Some(l)
        }
        _ => None,
    };
    Ok(Codec::new(level)?)
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {path}: {e}")))
    }
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed {what} JSON: {e}")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn algebra(session: &Session) -> CliResult<Arc<LieAlgebra>> {
    Ok(LieAlgebra::builtin_arc(&session.algebra)?)
}

fn finite_order(phi: &StandardAutomorphism, bound: u32) -> CliResult<u32> {
    match phi.order(bound)? {
        Order::Finite(n) => Ok(n),
        Order::Unbounded => Err(Error::NotFiniteOrder(bound).into()),
    }
}

/// Either an invariant or an automorphism whose invariant is computed.
fn load_invariant(codec: &Codec, text: &str, bound: u32) -> CliResult<(Arc<LieAlgebra>, Invariant)> {
    let value: Value = parse(text, "input")?;
    if value.get("kind").is_some() {
        let j: InvariantJson = parse(text, "invariant")?;
        return Ok(codec.decode_invariant(&j)?);
    }
    let j: StandardJson = parse(text, "automorphism")?;
    let phi = codec.decode_standard(&j)?;
    let q = finite_order(&phi, bound)?;
    let g = phi.source().algebra().clone();
    Ok((g, Invariant::of(&phi, q)?))
}

fn rational_matrix(m: &[Vec<kmforge::Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn cmd_algebra(cmd: &AlgebraCommand, session: &Session) -> CliResult<Output> {
    match cmd {
        AlgebraCommand::List => {
            let rows: Vec<Value> = BUILTIN_NAMES
                .iter()
                .map(|n| {
                    let g = LieAlgebra::builtin(n).expect("built-in");
                    json!({ "name": n, "dim": g.dim().to_string(), "field": g.base_field(), "compact": g.is_compact() })
                })
                .collect();
            Ok(Output::ok(Value::Array(rows)))
        }
        AlgebraCommand::Show => {
            let g = algebra(session)?;
            let c = g.structure_constants();
            let mut brackets = Vec::new();
            for (i, row) in c.iter().enumerate() {
                for (j, col) in row.iter().enumerate().skip(i + 1) {
                    for (k, x) in col.iter().enumerate() {
                        if *x != kmforge::rat(0, 1) {
                            brackets.push(json!({ "i": i.to_string(), "j": j.to_string(), "k": k.to_string(), "c": x.to_string() }));
                        }
                    }
                }
            }
            Ok(Output::ok(json!({
                "name": g.name(),
                "dim": g.dim().to_string(),
                "field": g.base_field(),
                "compact": g.is_compact(),
                "killing": rational_matrix(g.killing_matrix()),
                "brackets": brackets,
            })))
        }
    }
}

fn cmd_auto(cmd: &AutoCommand, session: &Session, codec: &Codec) -> CliResult<Output> {
    match cmd {
        AutoCommand::Invariant { input, q } => {
            let j: StandardJson = parse(&read_input(input)?, "automorphism")?;
            let phi = codec.decode_standard(&j)?;
            let q = match q {
                Some(q) => *q,
                None => finite_order(&phi, session.bound)?,
            };
            let inv = Invariant::of(&phi, q)?;
            Ok(Output::ok(to_value(&codec.encode_invariant(phi.source().algebra(), &inv)?)))
        }
        AutoCommand::Realize { input } => {
            let j: InvariantJson = parse(&read_input(input)?, "invariant")?;
            let (g, inv) = codec.decode_invariant(&j)?;
            let phi = codec::realize(&g, &inv)?;
            Ok(Output::ok(to_value(&codec.encode_standard(&phi)?)))
        }
        AutoCommand::Order { input } => {
            let j: StandardJson = parse(&read_input(input)?, "automorphism")?;
            let phi = codec.decode_standard(&j)?;
            let order = phi.order(session.bound)?;
            Ok(Output::ok(json!({
                "order": order.to_string(),
                "finite": order.finite().is_some(),
                "bound": session.bound.to_string(),
            })))
        }
        AutoCommand::Equivalent { left, right } => {
            let (ga, a) = load_invariant(codec, &read_input(left)?, session.bound)?;
            let (gb, b) = load_invariant(codec, &read_input(right)?, session.bound)?;
            let equivalent = ga.name() == gb.name() && a.equivalent(&b)?;
            Ok(Output::ok(json!({
                "equivalent": equivalent,
                "left": a.to_string(),
                "right": b.to_string(),
            })))
        }
    }
}

fn cmd_classify(cmd: &ClassifyCommand, session: &Session, codec: &Codec) -> CliResult<Output> {
    let g = algebra(session)?;
    match cmd {
        ClassifyCommand::Involutions { kind } => {
            let kinds: Vec<InvolutionKind> = match kind {
                Some(k) => vec![(*k).into()],
                None => InvolutionKind::all().to_vec(),
            };
            let mut rows = Vec::new();
            for k in kinds {
                for d in classification::enumerate_involutions(&g, k)? {
                    rows.push(json!({
                        "kind": k,
                        "invariant": codec.encode_invariant(&g, &d.invariant)?,
                        "automorphism": codec.encode_standard(&d.map)?,
                    }));
                }
            }
            Ok(Output::ok(Value::Array(rows)))
        }
        ClassifyCommand::Realforms => {
            let mut rows = Vec::new();
            for f in classification::enumerate_real_forms(&g)? {
                rows.push(json!({
                    "kind": f.kind,
                    "invariant": codec.encode_invariant(&g, &f.invariant)?,
                    "condition": f.condition(),
                    "affine": f.hat,
                    "conjugation": codec.encode_standard(&f.conjugation)?,
                }));
            }
            Ok(Output::ok(Value::Array(rows)))
        }
    }
}

fn cmd_verify(args: &VerifyArgs, session: &Session) -> CliResult<Output> {
    let mut config = VerifyConfig::new(algebra(session)?);
    if session.truncation < 0 {
        return Err(Failure::Input("--N must be non-negative".into()));
    }
    if session.denominator == 0 {
        return Err(Failure::Input("--D must be positive".into()));
    }
    config.truncation = session.truncation;
    config.trials = args.trials;
    config.degree = args.degree;
    config.seed = session.seed;
    config.bound = session.bound;
    config.scaling = args.r;
    config.denominator = session.denominator;
    if !args.orders.is_empty() {
        config.orders = args.orders.clone();
    }
    let suites = if args.suite == "all" {
        Suite::ALL.into_iter().filter(|s| s.applies_to(&config.algebra)).collect()
    } else {
        vec![Suite::parse(&args.suite)?]
    };
    let mut reports = Vec::new();
    let mut passed = true;
    for s in suites {
        let r = verify::run(s, &config)?;
        passed &= r.passed;
        reports.push(to_value(&r));
    }
    let value = if reports.len() == 1 {
        reports.pop().expect("one report")
    } else {
        json!({ "passed": passed, "suites": reports })
    };
    Ok(Output { value, passed })
}

fn execute(cli: &Cli) -> CliResult<Output> {
    let codec = codec_from_env(&cli.session)?;
    match &cli.command {
        Command::Algebra(c) => cmd_algebra(c, &cli.session),
        Command::Auto(c) => cmd_auto(c, &cli.session, &codec),
        Command::Classify(c) => cmd_classify(c, &cli.session, &codec),
        Command::Verify(a) => cmd_verify(a, &cli.session),
    }
}

fn emit(value: &Value, out: Option<&PathBuf>) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let body = json!({ "error": "InvalidInput", "message": e.to_string() });
            eprintln!("{body}");
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            if let Err(e) = emit(&output.value, cli.session.out.as_ref()) {
                eprintln!("{}", json!({ "error": "Io", "message": e.to_string() }));
                return ExitCode::from(2);
            }
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("{}", f.body());
            ExitCode::from(f.exit_code())
        }
    }
}
