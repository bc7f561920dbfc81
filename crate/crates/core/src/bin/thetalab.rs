use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use iwasawa::encoding::{parse_element, Element};
use iwasawa::experiment::{
    run_nonordinary, run_ordinary, ExperimentConfig, ExperimentReport, Perturbation,
};
use iwasawa::lemmas::{run_suite, SuiteConfig};
use iwasawa::{Error, InvariantResult};

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ZERO: u8 = 3;
const EXIT_CONFIG: u8 = 4;
const EXIT_TRUNCATION: u8 = 5;

#[derive(Parser)]
#[command(
    name = "thetalab",
    version,
    about = "Finite-level Iwasawa invariants of theta elements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print mu and lambda of a JSON element.
    Invariants { file: PathBuf },
    /// Run the randomized lemma suite.
    VerifyLemmas(Common),
    /// Random ordinary families against the ordinary theorem.
    Ordinary(Common),
    /// Random sharp/flat families against the non-ordinary theorem.
    Nonordinary(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 5)]
    p: u64,
    #[arg(long, default_value_t = 20)]
    precision: u32,
    #[arg(long, default_value_t = 4)]
    n_max: u32,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, allow_hyphen_values = true)]
    a_p: Option<i64>,
    #[arg(long)]
    mu: Option<u32>,
    #[arg(long)]
    lambda: Option<u32>,
    /// Add 1 to the T^INDEX coefficient of theta_LEVEL (negative control).
    #[arg(long, value_name = "LEVEL:INDEX")]
    perturb: Option<Perturbation>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Common {
    fn experiment(&self) -> ExperimentConfig {
        ExperimentConfig {
            p: self.p,
            precision: self.precision,
            n_max: self.n_max,
            trunc: self.trunc,
            trials: self.trials,
            seed: self.seed,
            a_p: self.a_p,
            mu: self.mu,
            lambda: self.lambda,
            perturb: self.perturb,
        }
    }

    fn emit(&self, text: &str) -> Result<(), ExitCode> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(EXIT_CONFIG)
            }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn exit_for(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(match err {
        Error::Parse(_) => EXIT_PARSE,
        Error::ZeroAtPrecision => EXIT_ZERO,
        Error::LambdaExceedsTruncation(_) => EXIT_TRUNCATION,
        _ => EXIT_CONFIG,
    })
}

fn invariants(file: &PathBuf) -> ExitCode {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let result = parse_element(&text).and_then(|el| match el {
        Element::Finite(x) => Ok(x.invariants()),
        Element::Series(s) => s.invariants(),
    });
    match result {
        Ok(r) => {
            println!("{r}");
            if r == InvariantResult::ZeroAtPrecision {
                ExitCode::from(EXIT_ZERO)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => exit_for(&e),
    }
}

fn verify_lemmas(args: &Common) -> ExitCode {
    let cfg = SuiteConfig::new(args.p, args.precision, args.trials, args.seed);
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => return exit_for(&Error::Config(e.to_string())),
    };
    let value = serde_json::to_value(&report).expect("serializable");
    let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
    if let Err(code) = args.emit(&text) {
        return code;
    }
    if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn experiment(
    args: &Common,
    run: fn(&ExperimentConfig) -> iwasawa::Result<ExperimentReport>,
) -> ExitCode {
    let report = match run(&args.experiment()) {
        Ok(r) => r,
        Err(e @ Error::Config(_)) => return exit_for(&e),
        Err(e) => return exit_for(&Error::Config(e.to_string())),
    };
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    if let Err(code) = args.emit(&text) {
        return code;
    }
    if report.has_failures() {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match &cli.command {
        Command::Invariants { file } => invariants(file),
        Command::VerifyLemmas(args) => verify_lemmas(args),
        Command::Ordinary(args) => experiment(args, run_ordinary),
        Command::Nonordinary(args) => experiment(args, run_nonordinary),
    }
}
