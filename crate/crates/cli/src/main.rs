//! `qlt`: command-line front end for the question-lattice toolkit. Every
//! command reads explicit inputs, writes one JSON report to standard output
//! (or --out), and emits a run manifest on standard error.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{Execution, InputError};
use manifest::ManifestBuilder;

#[derive(Parser)]
#[command(name = "qlt", version, about = "Finite quantum-logic and contextual-theory toolkit")]
struct Cli {
    /// Write the JSON report to this path instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice classification and fixture generation.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Question-space consistency checks.
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// Theory contextuality and isolation analysis.
    Theory {
        #[command(subcommand)]
        cmd: TheoryCmd,
    },
    /// Key-agreement protocol simulation.
    Bb84 {
        #[command(subcommand)]
        cmd: Bb84Cmd,
    },
    /// Sealed-lab branch comparison.
    Wigner {
        #[command(subcommand)]
        cmd: WignerCmd,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Classify the lattice in the given file.
    Check { file: PathBuf },
    /// Emit a canonical family fixture as a lattice file.
    Gen {
        /// boolean, chain, mo, benzene, m3, or n5.
        family: String,
        /// Size parameter; ignored by the fixed families.
        #[arg(default_value_t = 0)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// Run the orthogonality, preservation, and join checks.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum TheoryCmd {
    /// Analyze a theory against a space and a sequence domain.
    Check {
        file: PathBuf,
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        domain: PathBuf,
    },
}

#[derive(Args)]
struct Bb84Args {
    /// Theory file; defaults to the built-in qubit pair Z/X.
    #[arg(long)]
    theory: Option<PathBuf>,
    /// Space file; defaults to the built-in conjugate-pair space.
    #[arg(long)]
    space: Option<PathBuf>,
    /// quantum or flip.
    #[arg(long, default_value = "quantum")]
    model: String,
    #[arg(long, default_value_t = 10_000)]
    rounds: u64,
    /// none, intercept_resend_uniform, intercept_resend_matching, or
    /// intercept_resend_fixed:<class>.
    #[arg(long, default_value = "none")]
    eve: String,
    #[arg(long, default_value_t = 0.0)]
    eve_rate: f64,
    #[arg(long, default_value_t = 0.10)]
    threshold: f64,
    #[arg(long, default_value_t = 0.5)]
    sample_fraction: f64,
    /// Comma-separated question classes; defaults to Z,X.
    #[arg(long)]
    classes: Option<String>,
    /// Seed; falls back to QLL_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Write per-round records as CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Bb84Cmd {
    /// Simulate the protocol and report the statistics.
    Run(Bb84Args),
}

#[derive(Subcommand)]
enum WignerCmd {
    /// Evaluate the branch transcripts.
    Run {
        /// friend_first, wigner_first, or both.
        #[arg(long, default_value = "both")]
        branch: String,
        /// super or eigen.
        #[arg(long, default_value = "super")]
        input: String,
        /// unitary or collapse.
        #[arg(long, default_value = "unitary")]
        account: String,
        /// Accepted for compatibility; output is always JSON.
        #[arg(long)]
        json: bool,
    },
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, InputError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("QLL_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| InputError(format!("QLL_SEED is not a number: `{text}`"))),
        Err(_) => Ok(0),
    }
}

fn run(cli: &Cli, manifest: &mut ManifestBuilder) -> Result<Execution, InputError> {
    match &cli.command {
        Command::Lattice { cmd } => match cmd {
            LatticeCmd::Check { file } => commands::lattice_check(file, manifest),
            LatticeCmd::Gen { family, n } => commands::lattice_gen(family, *n),
        },
        Command::Space { cmd } => match cmd {
            SpaceCmd::Check { file } => commands::space_check(file, manifest),
        },
        Command::Theory { cmd } => match cmd {
            TheoryCmd::Check { file, space, domain } => {
                commands::theory_check(file, space, domain, manifest)
            }
        },
        Command::Bb84 { cmd } => match cmd {
            Bb84Cmd::Run(args) => {
                let seed = resolve_seed(args.seed)?;
                manifest.set_seed(seed);
                commands::bb84_run(
                    args.theory.as_deref(),
                    args.space.as_deref(),
                    &args.model,
                    args.rounds,
                    &args.eve,
                    args.eve_rate,
                    args.threshold,
                    args.sample_fraction,
                    args.classes.as_deref(),
                    seed,
                    args.csv.as_deref(),
                    manifest,
                )
            }
        },
        Command::Wigner { cmd } => match cmd {
            WignerCmd::Run { branch, input, account, .. } => {
                commands::wigner_run(branch, input, account)
            }
        },
    }
}

fn command_name(cli: &Cli) -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let _ = cli;
    format!("qlt {}", args.join(" "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut manifest = ManifestBuilder::new(command_name(&cli));

    let execution = match run(&cli, &mut manifest) {
        Ok(execution) => execution,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let wrapped = json!({
        "schema": "v1",
        "report": execution.report,
    });
    let mut rendered = serde_json::to_string_pretty(&wrapped).expect("report serializes");
    rendered.push('\n');

    let mut output_paths = Vec::new();
    if let Some((path, csv)) = &execution.csv {
        if let Err(e) = std::fs::write(path, csv) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
        output_paths.push(path.display().to_string());
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            output_paths.push(path.display().to_string());
        }
        None => print!("{rendered}"),
    }

    let manifest = manifest.finish(output_paths);
    let line = json!({ "schema": "v1", "manifest": manifest });
    eprintln!("{}", serde_json::to_string(&line).expect("manifest serializes"));

    if execution.check_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
