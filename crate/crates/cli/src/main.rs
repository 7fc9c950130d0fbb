use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use maxlot::search::{Domain, SearchBudget};
use maxlot_cli::{cmd_audit, cmd_check, cmd_search, cmd_solve, CheckFlags, CmdResult, Failure};

/// Exact maximal lotteries and axiom audits for randomized voting rules.
#[derive(Parser)]
#[command(name = "maxlot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Strict,
    Weak,
}

#[derive(Args)]
struct Output {
    /// Text for people, machine for a single JSON record.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Also write the JSON record to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Scope {
    #[arg(long, default_value_t = 3)]
    alts: usize,

    /// Largest electorate.
    #[arg(long, default_value_t = 4)]
    voters: u64,

    #[arg(long, value_enum, default_value = "strict")]
    domain: DomainArg,

    /// Maximum number of profiles to check.
    #[arg(long, default_value_t = 200_000)]
    budget: u64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Check profiles one at a time (same result, no worker pool).
    #[arg(long)]
    sequential: bool,
}

impl Scope {
    fn budget(&self) -> Result<SearchBudget, Failure> {
        let domain = match self.domain {
            DomainArg::Strict => Domain::Strict,
            DomainArg::Weak => Domain::Weak,
        };
        let budget = SearchBudget::new(self.alts, self.voters, domain, self.budget, self.seed)?;
        Ok(if self.sequential { budget.sequential() } else { budget })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a mechanism's lottery for a profile file.
    Solve {
        file: PathBuf,
        #[arg(long)]
        mechanism: String,
        #[command(flatten)]
        output: Output,
    },
    /// Check one property of one mechanism on a profile file.
    Check {
        file: PathBuf,
        #[arg(long)]
        mechanism: String,
        #[arg(long)]
        property: String,
        /// Largest replication factor for homogeneity.
        #[arg(long)]
        k_max: Option<u64>,
        /// Cancelling order such as "a > b = c" (repeatable; default all).
        #[arg(long)]
        order: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Search generated profiles for a violation.
    Search {
        #[arg(long)]
        mechanism: String,
        #[arg(long)]
        property: String,
        #[arg(long)]
        k_max: Option<u64>,
        #[command(flatten)]
        scope: Scope,
        #[command(flatten)]
        output: Output,
    },
    /// Run a named audit campaign.
    Audit {
        campaign: String,
        #[command(flatten)]
        scope: Scope,
        #[command(flatten)]
        output: Output,
    },
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        exit_code: 2,
    })
}

fn emit(result: CmdResult, output: &Output) -> i32 {
    let run = match result {
        Ok(run) => run,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            return failure.exit_code;
        }
    };
    let json = run.record.to_json();
    match output.format {
        Format::Text => print!("{}", run.text),
        Format::Machine => print!("{json}"),
    }
    if let Some(path) = &output.out {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error: {}: {e}", path.display());
            return 2;
        }
    }
    run.exit_code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match &cli.command {
        Command::Solve {
            file,
            mechanism,
            output,
        } => emit(read(file).and_then(|text| cmd_solve(&text, mechanism)), output),
        Command::Check {
            file,
            mechanism,
            property,
            k_max,
            order,
            output,
        } => {
            let flags = CheckFlags {
                k_max: *k_max,
                orders: order.clone(),
            };
            emit(read(file).and_then(|text| cmd_check(&text, mechanism, property, &flags)), output)
        }
        Command::Search {
            mechanism,
            property,
            k_max,
            scope,
            output,
        } => {
            let code = emit(scope.budget().and_then(|b| cmd_search(mechanism, property, &b, *k_max)), output);
            eprintln!("elapsed: {:.2?}", start.elapsed());
            code
        }
        Command::Audit {
            campaign,
            scope,
            output,
        } => {
            let code = emit(scope.budget().and_then(|b| cmd_audit(campaign, &b)), output);
            eprintln!("elapsed: {:.2?}", start.elapsed());
            code
        }
    };
    ExitCode::from(code as u8)
}
