use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use schubert_core::harness::{self, Index, Level};
use schubert_core::{Composition, Error, Partition};

#[derive(Parser)]
#[command(name = "schubert", version, about = "Universal, quantum and multiparameter Schubert polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a polynomial of the given family.
    Compute {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// One-line notation, e.g. 2314.
        #[arg(long, conflicts_with_all = ["shape", "comp"])]
        perm: Option<String>,
        /// Partition of a Grassmannian permutation, e.g. 2,1.
        #[arg(long, requires = "descent")]
        shape: Option<String>,
        #[arg(long)]
        descent: Option<usize>,
        /// Exponent vector or index pair, e.g. 2,0.
        #[arg(long)]
        comp: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check one registered identity.
    Verify {
        #[arg(long)]
        identity: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Residue of a monomial over a deformed ideal.
    Residue {
        #[arg(long, value_enum)]
        ideal: IdealArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        monomial: String,
    },
    /// Run the identity suite.
    Suite {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        /// Highest rank for the cheap cases in the full suite.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// List registered identities.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealArg {
    Multiparam,
    Universal,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_index(perm: Option<String>, shape: Option<String>, descent: Option<usize>, comp: Option<String>) -> Result<Index, Error> {
    match (perm, shape, comp) {
        (Some(p), None, None) => Ok(Index::Perm(p.parse()?)),
        (None, Some(s), None) => Ok(Index::Shape(s.parse::<Partition>()?, descent.unwrap_or(0))),
        (None, None, Some(c)) => Ok(Index::Comp(c.parse::<Composition>()?)),
        _ => Err(Error::Usage("give exactly one of --perm, --shape/--descent, --comp".into())),
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Compute { family, n, perm, shape, descent, comp, json } => {
            let index = parse_index(perm, shape, descent, comp)?;
            let poly = harness::compute(&family, &index, n)?;
            if json {
                let value = serde_json::json!({
                    "family": family,
                    "n": n,
                    "polynomial": poly.to_text(),
                    "structured": serde_json::from_str::<serde_json::Value>(&poly.to_json()).expect("valid json"),
                });
                println!("{value}");
            } else {
                println!("{}", poly.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { identity, n, json } => {
            let report = harness::verify(&identity, n)?;
            if json {
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            } else {
                println!("{report}");
            }
            eprintln!("{} n={}: {:.3?}", report.name, report.n, report.elapsed);
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Residue { ideal, n, monomial } => {
            let name = match ideal {
                IdealArg::Multiparam => "multiparam",
                IdealArg::Universal => "universal",
                IdealArg::Classical => "classical",
            };
            println!("{}", harness::residue_of(name, n, &monomial)?.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { level, max_n, json } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let report = harness::run_suite(level, max_n);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                println!("{report}");
            }
            for r in &report.reports {
                eprintln!("{:>10.3?}  {} n={}", r.elapsed, r.name, r.n);
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::List => {
            for case in harness::registry() {
                println!("{:<28} n={}..={}  {}", case.name, case.min_n, case.max_n, case.statement);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
