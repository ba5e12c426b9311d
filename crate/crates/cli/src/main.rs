use clap::{Parser, Subcommand};
use std::path::PathBuf;
use torsionflow_cli::{cmd_report, cmd_run, cmd_verify, VerifyArgs, EXIT_CONFIG};

#[derive(Parser)]
#[command(
    name = "torsionflow",
    version,
    about = "CR torsion flow engine and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario described by a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output_dir.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        degree: Option<u16>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "torsionflow-out")]
        out: PathBuf,
        #[arg(long)]
        timing: bool,
    },
    /// Summarize the reports in a directory.
    Report { dir: PathBuf },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Run {
            config,
            out,
            timing,
        } => cmd_run(&config, out.as_deref(), timing),
        Command::Verify {
            suite,
            cases,
            degree,
            seed,
            out,
            timing,
        } => cmd_verify(&VerifyArgs {
            suite,
            cases,
            degree,
            seed,
            out,
            timing,
        }),
        Command::Report { dir } => cmd_report(&dir),
    };
    std::process::exit(code);
}
