use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use socrank::axioms::Budget;
use socrank::cli::{self, CheckArgs, Format, Output};
use socrank::error::Result;

#[derive(Parser)]
#[command(
    name = "socrank",
    version,
    about = "Social rankings over weak orders on coalitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Most base orders a fan-out axiom examines before sampling.
    #[arg(long, default_value_t = Budget::DEFAULT_MAX_ORDERS)]
    budget: usize,
    #[arg(long, default_value_t = Budget::DEFAULT_SEED)]
    seed: u64,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<Budget> {
        Ok(Budget {
            max_domain: cli::max_domain_from_env()?,
            ..Budget::default()
                .with_max_orders(self.budget)
                .with_seed(self.seed)
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rank individuals from a ranking file (`-` reads stdin).
    Rank {
        file: PathBuf,
        rule: String,
        /// Tie-break order for plurality-tb, e.g. "3>2>1".
        #[arg(long)]
        tiebreak: Option<String>,
    },
    /// Check one axiom against one rule.
    Check {
        rule: String,
        axiom: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        tiebreak: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Rebuild the rule × axiom matrix.
    Table3 {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run the whole verification battery.
    Verify {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Count weak orders on m-element sets.
    Enumerate {
        /// Largest m (defaults to the domain cap).
        #[arg(long)]
        max: Option<usize>,
    },
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Rank {
            file,
            rule,
            tiebreak,
        } => {
            let text = match read_input(&file) {
                Ok(text) => text,
                Err(message) => {
                    return Ok(Output {
                        text: format!("error: {message}\n"),
                        code: cli::EXIT_INPUT,
                    })
                }
            };
            cli::cmd_rank(&text, &rule, tiebreak.as_deref())
        }
        Command::Check {
            rule,
            axiom,
            n,
            tiebreak,
            budget,
            json,
        } => cli::cmd_check(&CheckArgs {
            rule: &rule,
            axiom: &axiom,
            tiebreak: tiebreak.as_deref(),
            n,
            budget: budget.resolve()?,
            json,
        }),
        Command::Table3 { n, budget, format } => cli::cmd_table3(n, &budget.resolve()?, format),
        Command::Verify { n, budget } => cli::cmd_verify(n, &budget.resolve()?),
        Command::Enumerate { max } => {
            let cap = cli::max_domain_from_env()?;
            cli::cmd_enumerate(max.unwrap_or(cap), cap)
        }
    }
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                cli::EXIT_INPUT as u8
            } else {
                0
            });
        }
    };
    match run(args.command) {
        Ok(out) => {
            if out.code == cli::EXIT_INPUT {
                eprint!("{}", out.text);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
