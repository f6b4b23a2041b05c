use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use prodmin::{cmd_eval, cmd_relations, cmd_simplify, cmd_verify, CliResult, CommandOutput};

/// Minimal representations of hypergeometric products over Q(i)(k).
#[derive(Parser)]
#[command(name = "prodmin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and verify a minimal representation of the input products.
    Simplify { file: PathBuf },
    /// Print the relation lattice and the relation generators.
    Relations { file: PathBuf },
    /// Check a previously emitted representation against the input products.
    Verify {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        n_max: Option<i64>,
    },
    /// Evaluate every input product at one index.
    Eval {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
}

fn run(command: Command) -> CliResult<CommandOutput> {
    match command {
        Command::Simplify { file } => cmd_simplify(&file),
        Command::Relations { file } => cmd_relations(&file),
        Command::Verify { file, rep, n_max } => cmd_verify(&file, &rep, n_max),
        Command::Eval { file, n } => cmd_eval(&file, n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            // a closed pipe on stdout is not an error of the computation
            let _ = writeln!(std::io::stdout(), "{}", out.json);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
