//! Command-line front end: single prices, comparison tables, the boundary
//! condition study and the invariant suite.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use divpricer_core::harness::{
    emit_csv, fig1_series, run_scenario, validate_suite, HarnessError, PrecisionMode, Scenario,
};
use divpricer_core::mc::mc_price;
use divpricer_core::pde::{cn_price_european, psor_price_american_put, PsorSettings};
use divpricer_core::{
    BoundaryVariant, Dividend, DividendPolicy, DividendSchedule, GridSpec, MarketParams, McConfig,
    OptionKind, PricingMethod,
};

#[derive(Parser)]
#[command(name = "divpricer", version, about = "European options with discrete cash dividends")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number formatting: full (9 significant digits) or table (2/1 decimals).
    #[arg(long, global = true, default_value = "full")]
    precision: String,
    /// Seed for Monte Carlo runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Price one option with one method.
    Price(PriceArgs),
    /// Reproduce a builtin comparison table (table1, table2, table3, fig1).
    Table { name: String },
    /// European puts under each boundary variant against the American put.
    Fig1,
    /// Run the invariant suite; exits with status 1 if any check fails.
    Validate,
    /// Run a scenario file.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct PriceArgs {
    /// Analytic method id (e.g. hybrid-vapa2), or cn, american, mc.
    #[arg(long, default_value = "hybrid-va2")]
    method: String,
    #[arg(long, default_value = "call")]
    kind: String,
    #[arg(long, default_value = "liquidator")]
    policy: String,
    /// Lower boundary variant for cn: spot, strike or hybrid.
    #[arg(long, default_value = "spot")]
    boundary: String,
    #[arg(long, default_value_t = 100.0)]
    spot: f64,
    #[arg(long, default_value_t = 100.0)]
    strike: f64,
    #[arg(long, default_value_t = 0.06)]
    rate: f64,
    #[arg(long, default_value_t = 0.3)]
    vol: f64,
    #[arg(long, default_value_t = 1.0)]
    term: f64,
    /// Cash dividend as `<time>:<amount>`; repeatable.
    #[arg(long = "dividend", value_name = "TIME:AMOUNT")]
    dividends: Vec<String>,
    /// Monte Carlo path count.
    #[arg(long, default_value_t = 1_000_000)]
    paths: usize,
}

enum Failure {
    Config(String),
    Validation(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::PostCondition(_) => Failure::Validation(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<divpricer_core::PricingError> for Failure {
    fn from(e: divpricer_core::PricingError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let precision: PrecisionMode = cli.precision.parse()?;
    let with_seed = |mut s: Scenario| {
        if let (Some(seed), Some(mc)) = (cli.seed, s.mc.as_mut()) {
            mc.seed = seed;
        }
        s
    };
    let (text, failed) = match &cli.command {
        Command::Price(args) => (price(args, cli.seed)?, None),
        Command::Table { name } => {
            let rows = run_scenario(&with_seed(Scenario::builtin(name)?))?;
            (emit_csv(&rows, precision), None)
        }
        Command::Compare { config } => {
            let source = fs::read_to_string(config)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", config.display())))?;
            let rows = run_scenario(&with_seed(Scenario::parse(&source)?))?;
            (emit_csv(&rows, precision), None)
        }
        Command::Fig1 => (fig1_series(&GridSpec::default())?.to_csv(), None),
        Command::Validate => {
            let outcomes = validate_suite(&GridSpec::default());
            let mut text = String::new();
            for o in &outcomes {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{tag} {}: {}\n", o.name, o.detail));
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            (text, (failed > 0).then(|| format!("{failed} check(s) failed")))
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    match failed {
        Some(msg) => Err(Failure::Validation(msg)),
        None => Ok(()),
    }
}

fn price(args: &PriceArgs, seed: Option<u64>) -> Result<String, Failure> {
    let kind: OptionKind = args.kind.parse()?;
    let policy: DividendPolicy = args.policy.parse()?;
    let market = MarketParams::new(args.spot, args.strike, args.rate, args.vol, args.term)?;
    let dividends = args
        .dividends
        .iter()
        .map(|d| {
            let (t, a) = d
                .split_once(':')
                .ok_or_else(|| Failure::Config(format!("dividend '{d}' is not TIME:AMOUNT")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Failure::Config(format!("bad number in dividend '{d}'")))
            };
            Ok(Dividend::new(num(t)?, num(a)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let schedule = DividendSchedule::new(dividends)?;
    let grid = GridSpec::default();
    let line = match args.method.to_ascii_lowercase().as_str() {
        "cn" => {
            let boundary: BoundaryVariant = args.boundary.parse()?;
            let p = cn_price_european(kind, &market, &schedule, policy, boundary, &grid)?;
            format!("cn,{p:.9}")
        }
        "american" => {
            if kind != OptionKind::Put {
                return Err(Failure::Config("the American solver prices puts only".into()));
            }
            let p = psor_price_american_put(&market, &schedule, policy, &grid, &PsorSettings::default())?;
            format!("american,{p:.9}")
        }
        "mc" => {
            let cfg = McConfig {
                paths: args.paths,
                seed: seed.unwrap_or(McConfig::default().seed),
                antithetic: true,
            };
            let e = mc_price(kind, &market, &schedule, policy, &cfg)?;
            format!("mc,{:.9},{:.9}", e.price, e.std_error)
        }
        other => {
            let method: PricingMethod = other.parse()?;
            let p = method.price(kind, &market, &schedule, policy)?;
            format!("{method},{p:.9}")
        }
    };
    Ok(format!("method,price{}\n{line}\n", if args.method.eq_ignore_ascii_case("mc") { ",std_error" } else { "" }))
}
