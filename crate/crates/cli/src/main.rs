//! `chx`: exact Clifford-hierarchy analysis from the command line.
//!
//! Exit status is 0 when a question was decided (including negative answers
//! such as NOT_IN_CH or a failed check), 1 for unreadable or invalid input,
//! and 2 when a resource limit stopped the computation.

mod commands;
mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CtCommand, GroupCommand, GroupOptions};
use report::{InputInfo, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "chx",
    version,
    about = "Exact Clifford-hierarchy analysis of monomial, diagonal and permutation gates"
)]
struct Cli {
    /// Largest qubit count the engines will accept.
    #[arg(long, global = true, default_value_t = 5)]
    max_qubits: usize,
    /// Largest number of elements any closure or engine query may visit.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    closure_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Seed recorded in the report for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, env = "CHX_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hierarchy level of a circuit with a monomial core.
    Level { file: PathBuf },
    /// Level and rotation-angle table of a diagonal gate.
    Diag { file: PathBuf },
    /// Group closure, structure checks, double cosets and recipe lint.
    Group {
        #[arg(value_enum)]
        action: GroupCommand,
        file: PathBuf,
        /// With `closure`: histogram of hierarchy levels over the closure.
        #[arg(long)]
        levels: bool,
        /// With `closure`: list the shortest word of every element.
        #[arg(long)]
        words: bool,
        /// With `check-gsc`: cap on the permutation-part closure.
        #[arg(long, default_value_t = 1_000_000)]
        perm_cap: usize,
    },
    /// Clifford circuit mapping a stabilizer group onto Z strings.
    Encode { file: PathBuf },
    /// Time slices and control/target mismatch of multi-controlled-X circuits.
    Ct {
        #[arg(value_enum)]
        action: CtCommand,
        file: PathBuf,
        /// With `push`: wires carrying the X string, comma separated.
        #[arg(long, value_delimiter = ',')]
        x: Vec<usize>,
    },
    /// Order of the level-k diagonal group on n qubits.
    CountDk {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Cross-check the formula against a closure of the generators.
        #[arg(long)]
        verify: bool,
    },
    /// Exact verification of the Toffoli-word and Toffoli-T identities.
    VerifyIdentities,
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Level { .. } => "level".into(),
        Command::Diag { .. } => "diag".into(),
        Command::Group { action, .. } => {
            format!("group {}", clap::ValueEnum::to_possible_value(action).expect("named").get_name())
        }
        Command::Encode { .. } => "encode".into(),
        Command::Ct { action, .. } => {
            format!("ct {}", clap::ValueEnum::to_possible_value(action).expect("named").get_name())
        }
        Command::CountDk { .. } => "count-dk".into(),
        Command::VerifyIdentities => "verify-identities".into(),
    }
}

fn run(cli: &Cli, cfg: &RunConfig) -> anyhow::Result<(Option<InputInfo>, report::CommandResult)> {
    let read = |p: &PathBuf| InputInfo::read(p);
    Ok(match &cli.command {
        Command::Level { file } => {
            let (info, text) = read(file)?;
            (Some(info), commands::level(&text, cfg)?)
        }
        Command::Diag { file } => {
            let (info, text) = read(file)?;
            (Some(info), commands::diag(&text, cfg)?)
        }
        Command::Group { action, file, levels, words, perm_cap } => {
            let (info, text) = read(file)?;
            let opts = GroupOptions { levels: *levels, words: *words, perm_cap: *perm_cap };
            (Some(info), commands::group(*action, &text, cfg, &opts)?)
        }
        Command::Encode { file } => {
            let (info, text) = read(file)?;
            (Some(info), commands::encode(&text)?)
        }
        Command::Ct { action, file, x } => {
            let (info, text) = read(file)?;
            (Some(info), commands::ct(*action, &text, x, cfg)?)
        }
        Command::CountDk { n, k, verify } => (None, commands::count_dk(*n, *k, *verify, cfg)?),
        Command::VerifyIdentities => (None, commands::identities(cfg)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = if cli.threads == 0 { rayon::current_num_threads() } else { cli.threads };
    if cli.threads > 0 {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    if cli.max_qubits == 0 || cli.closure_cap == 0 {
        eprintln!("error: --max-qubits and --closure-cap must be positive");
        return ExitCode::from(1);
    }
    let cfg = RunConfig {
        max_qubits: cli.max_qubits,
        closure_cap: cli.closure_cap,
        output: cli.output,
        seed: cli.seed,
        threads,
    };
    let name = command_name(&cli.command);
    match run(&cli, &cfg) {
        Ok((input, r)) => {
            print!("{}", report::render(&name, input.as_ref(), &cfg, &r));
            ExitCode::from(r.outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
