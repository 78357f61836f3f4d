use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cohodim::oracle::{check_laws, CheckConfig, Law, Universe};
use cohodim::prime_base::Prime;
use cohodim_cli::eval::run;
use cohodim_cli::table;
use cohodim_cli::verify::{verify, Params, Target};
use cohodim_homology::Coefficients;
use serde_json::json;

#[derive(Parser)]
#[command(name = "cohodim", version, about = "Cohomological dimension types, tables and homology checks")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a cd-type expression or query.
    Eval { expr: String },
    /// Print a table of computed dimensions.
    Table {
        kind: TableKind,
        #[command(flatten)]
        primes: PQ,
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        m: u64,
    },
    /// Write a cd-type as a wedge of fundamental types and 1-types.
    Decompose { expr: String },
    /// Bockstein family of a group.
    Sigma { group: String },
    /// Run the homology checks for a finite construction.
    Verify {
        target: TargetArg,
        #[command(flatten)]
        primes: PQ,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        stages: usize,
        /// Coefficients: Z, Q, Z/m or Zpinf(p).
        #[arg(long, value_parser = parse_coeff)]
        coeff: Option<Coefficients>,
    },
    /// Check algebra laws on a finite universe.
    CheckLaws {
        #[arg(long, default_value = "2,3", value_delimiter = ',')]
        primes: Vec<Prime>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        max: i64,
        /// Comma separated law names, or `all`.
        #[arg(long, default_value = "all", value_parser = Law::parse_selection)]
        laws: LawList,
    },
}

type LawList = Vec<Law>;

#[derive(Args)]
struct PQ {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 3)]
    q: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Fundamental,
    Products,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Pontryagin,
    MpPair,
    Ew,
    Join,
}

fn parse_coeff(s: &str) -> Result<Coefficients, String> {
    s.parse().map_err(|e: cohodim_homology::HomologyError| e.to_string())
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn prime(v: u64) -> Result<Prime, ExitCode> {
    Prime::new(v).map_err(usage)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command, cli.json) {
        Ok(code) | Err(code) => code,
    }
}

fn execute(command: Command, as_json: bool) -> Result<ExitCode, ExitCode> {
    let show = |text: String, value: serde_json::Value| {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        } else {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    };
    match command {
        Command::Eval { expr } => evaluate(&expr, show),
        Command::Decompose { expr } => evaluate(&format!("decompose({expr})"), show),
        Command::Sigma { group } => evaluate(&format!("sigma({group})"), show),
        Command::Table { kind, primes, n, m } => {
            let (p, q) = (prime(primes.p)?, prime(primes.q)?);
            let t = match kind {
                TableKind::Fundamental => table::fundamental(p, q, n),
                TableKind::Products => table::products(p, q, n, m),
            }
            .map_err(usage)?;
            show(t.to_string(), t.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { target, primes, n, stages, coeff } => {
            let target = match target {
                TargetArg::Pontryagin => Target::Pontryagin,
                TargetArg::MpPair => Target::MpPair,
                TargetArg::Ew => Target::Ew,
                TargetArg::Join => Target::Join,
            };
            let params = Params { p: primes.p, q: primes.q, n, stages, coeff };
            let report = verify(target, &params).map_err(usage)?;
            show(report.to_string(), report.to_json());
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::CheckLaws { primes, max, laws } => {
            let u = Universe::new(primes, max);
            let reports = check_laws(&u, &laws, CheckConfig::default());
            let passed = reports.iter().all(|r| r.passed());
            let mut text: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let failed = reports.iter().filter(|r| !r.passed()).count();
            text += &format!("{} laws, {failed} failed\n", reports.len());
            show(text, json!({ "reports": reports, "passed": passed }));
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn evaluate(text: &str, show: impl Fn(String, serde_json::Value)) -> Result<ExitCode, ExitCode> {
    let v = run(text).map_err(usage)?;
    show(v.to_string(), v.to_json());
    Ok(ExitCode::SUCCESS)
}
