use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use nilten_core::ccalc::{SBasisKind, Strategy};
use nilten_core::checks::{self, CheckConfig, Report, Suite};
use nilten_core::dmodule::DVector;
use nilten_core::hall::GroupSchema;
use nilten_core::rword::{eval_str, print_normal_form};
use nilten_core::scalars::{parse_scalar, Poly, RatFun, Rational, Ring, RingKind, DEFAULT_FACTOR_DEGREE_BOUND};
use nilten_core::{Error, Result};

#[derive(Parser)]
#[command(name = "nilten", version, about = "Exact arithmetic in R-completions of 2-nilpotent groups")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(clap::Args)]
struct Opts {
    /// Scalar ring: Z, Q, Q[t] or Q(t).
    #[arg(long, global = true, default_value = "Q[t]")]
    ring: String,
    /// `free2:<rank>` or a path to a schema JSON file.
    #[arg(long, global = true, default_value = "free2:2")]
    group: String,
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random cases per invariant.
    #[arg(long, global = true, default_value_t = 100)]
    cases: usize,
    /// Largest irreducible factor degree the factorizer searches for.
    #[arg(long, global = true, default_value_t = DEFAULT_FACTOR_DEGREE_BOUND)]
    factor_degree_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = SBasisArg::Std)]
    s_basis: SBasisArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Formal,
}

#[derive(Clone, Copy, ValueEnum)]
enum SBasisArg {
    Std,
    Paper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an R-word and print its normal form.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
    /// Run randomized invariant suites.
    Check {
        /// axioms, facts, hall-oracle, confluence or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Decompose c(x^alpha, y^beta)_lambda in the basis of D.
    Basis {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Env {
    opts: Opts,
    ring: RingKind,
    schema: Arc<GroupSchema>,
}

impl Env {
    fn strategy(&self) -> Strategy {
        let s = match self.opts.strategy {
            StrategyArg::Auto => Strategy::auto(self.ring, self.schema.clone()),
            StrategyArg::Formal => Strategy::formal(self.schema.clone()),
        };
        s.with_max_deg(self.opts.factor_degree_bound).with_s_basis(self.s_basis())
    }

    fn s_basis(&self) -> SBasisKind {
        match self.opts.s_basis {
            SBasisArg::Std => SBasisKind::Std,
            SBasisArg::Paper => SBasisKind::Paper,
        }
    }
}

macro_rules! by_ring {
    ($ring:expr, $f:ident($($arg:expr),*)) => {
        match $ring {
            RingKind::Z => $f::<BigInt>($($arg),*),
            RingKind::Q => $f::<Rational>($($arg),*),
            RingKind::QtPoly => $f::<Poly>($($arg),*),
            RingKind::QtField => $f::<RatFun>($($arg),*),
        }
    };
}

fn d_json<R: Ring>(d: &DVector<R>) -> Value {
    Value::Array(d.iter().map(|(k, c)| json!({ "key": k.to_string(), "coeff": c.to_string() })).collect())
}

fn cmd_eval<R: Ring>(env: &Env, expression: &str) -> Result<String> {
    let g = eval_str::<R>(expression, &env.strategy())?;
    Ok(match env.opts.format {
        Format::Text => print_normal_form(&g),
        Format::Json => {
            let coords = |v: &[R]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
            let rec = json!({
                "input": expression,
                "hall": { "a": coords(g.hall.a()), "b": coords(g.hall.b()) },
                "d": d_json(&g.d),
            });
            serde_json::to_string_pretty(&rec).expect("json values serialize")
        }
    })
}

fn cmd_basis<R: Ring>(env: &Env, alpha: &str, beta: &str, lambda: &str) -> Result<String> {
    let (a, b, l) = (parse_scalar::<R>(alpha)?, parse_scalar::<R>(beta)?, parse_scalar::<R>(lambda)?);
    let d = env.strategy().ccoord(&a, &b, &l)?;
    Ok(match env.opts.format {
        Format::Text if d.is_zero() => "(zero)".to_string(),
        Format::Text => d.iter().map(|(k, c)| format!("{k}: {c}")).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            let rec = json!({ "input": { "alpha": alpha, "beta": beta, "lambda": lambda }, "d": d_json(&d) });
            serde_json::to_string_pretty(&rec).expect("json values serialize")
        }
    })
}

fn report_json(r: &Report) -> Value {
    let tallies: Vec<Value> = r
        .tallies
        .iter()
        .map(|t| {
            json!({
                "suite": t.suite.name(),
                "name": t.name,
                "passed": t.passed,
                "failed": t.failed,
                "counterexample": t.counterexample,
            })
        })
        .collect();
    json!({
        "ring": r.ring.to_string(),
        "seed": r.seed,
        "cases": r.cases,
        "invariants": tallies,
        "notes": r.notes,
        "all_passed": r.all_passed(),
    })
}

fn cmd_check(env: &Env, suite: &str) -> std::result::Result<bool, Failure> {
    let suite: Suite = suite.parse().map_err(|_| Failure::Usage(format!("unknown suite `{suite}`")))?;
    let cfg = CheckConfig {
        seed: env.opts.seed,
        cases: env.opts.cases,
        factor_bound: env.opts.factor_degree_bound,
        s_basis: env.s_basis(),
        formal: matches!(env.opts.strategy, StrategyArg::Formal),
        ..CheckConfig::default()
    };
    let report = checks::run(suite, env.ring, env.schema.clone(), &cfg)?;
    match env.opts.format {
        Format::Text => println!("{report}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report_json(&report)).expect("json values serialize")),
    }
    Ok(report.all_passed())
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let ring = RingKind::parse(&cli.opts.ring).ok_or_else(|| Failure::Usage(format!("unknown ring `{}`", cli.opts.ring)))?;
    let schema = Arc::new(GroupSchema::load(&cli.opts.group)?);
    let env = Env { opts: cli.opts, ring, schema };
    let out = match &cli.cmd {
        Command::Eval { expression } => by_ring!(ring, cmd_eval(&env, expression))?,
        Command::Basis { alpha, beta, lambda } => by_ring!(ring, cmd_basis(&env, alpha, beta, lambda))?,
        Command::Check { suite } => {
            return if cmd_check(&env, suite)? { Ok(()) } else { Err(Failure::Checks) };
        }
    };
    println!("{out}");
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_factor_bound() { 3 } else { 2 })
        }
    }
}
