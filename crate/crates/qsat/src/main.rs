use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qsat::commands::{self, Options};

#[derive(Parser)]
#[command(name = "qsat", version, about = "Realize colored DAGs as lattices of normal subgroups and check the result")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Witness and scheme-probe bound.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..))]
    bound: i64,
    /// Also write Graphviz files.
    #[arg(long)]
    dot: bool,
    /// Seed for randomized soundness probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Realize a colored DAG and verify the realization.
    Realize {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Re-verify a realization file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite a realization into a finitely presented group along a CEP embedding.
    Transfer {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// CEP, almost-CEP and transitivity checks on a finite group.
    Cep {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a worked example: free-counterexample or s4-d4-cep.
    Demo {
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

fn options(c: Common) -> Options {
    Options { out: c.out, bound: c.bound, dot: c.dot, seed: c.seed }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Realize { input, common } => commands::cmd_realize(&input, &options(common)),
        Command::Verify { input, common } => commands::cmd_verify(&input, &options(common)),
        Command::Transfer { input, embedding, common } => commands::cmd_transfer(&input, &embedding, &options(common)),
        Command::Cep { input, common } => commands::cmd_cep(&input, &options(common)),
        Command::Demo { name, common } => commands::cmd_demo(&name, &options(common)),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.transcript);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
