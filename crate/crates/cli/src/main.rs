//! `pathbisim`: equivalence checking and minimization for labelled
//! transition systems (`.aut`) and fully probabilistic systems (`.fps`).
//!
//! Exit status: 0 on success or equivalence, 1 on inequivalence or failed
//! audit laws, 2 on usage, input or I/O errors.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathbisim::lts::Semantics;

#[derive(Parser)]
#[command(
    name = "pathbisim",
    version,
    about = "Silent-step and probabilistic bisimulation on path signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Aut,
    Fps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Branching,
    Weak,
    Eta,
    Delay,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Branching => Semantics::Branching,
            SemanticsArg::Weak => Semantics::Weak,
            SemanticsArg::Eta => Semantics::Eta,
            SemanticsArg::Delay => Semantics::Delay,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// System file (`.aut` or `.fps`).
    pub input: PathBuf,
    /// Overrides the format inferred from the file extension.
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormat>,
    /// Label of the silent action.
    #[arg(long, default_value = "tau")]
    pub tau_label: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide whether two states are equivalent.
    Check {
        #[command(flatten)]
        common: Common,
        /// Required for `.aut` input; `.fps` input always uses delay.
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
        #[arg(long, num_args = 2, value_names = ["X", "Y"], required = true)]
        pair: Vec<String>,
    },
    /// Print the blocks of the coarsest equivalence.
    Partition {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
    },
    /// Write the quotient system and a JSON state map.
    Minimize {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
        /// Defaults to `<stem>.min.<ext>` next to the input.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact probability of reaching the targets along `τ*·action`.
    ProbReach {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: String,
        /// A visible action, or `eps` / `ε` / the τ label for `τ*`.
        #[arg(long)]
        action: String,
        /// Comma-separated, or repeated.
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<String>,
    },
    /// List the stutter classes of the α-paths of a state.
    AlphaDump {
        #[command(flatten)]
        common: Common,
        /// All four semantics when omitted.
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
        #[arg(long)]
        state: String,
        /// Defaults to `states · (blocks + 1)`.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check the valuation laws on random execution sets.
    Audit {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// List executions up to a depth, with their weights for `.fps` input.
    Paths {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Check { common, .. }
            | Command::Partition { common, .. }
            | Command::Minimize { common, .. }
            | Command::ProbReach { common, .. }
            | Command::AlphaDump { common, .. }
            | Command::Audit { common, .. }
            | Command::Paths { common, .. } => common,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.command.common().format;
    match commands::run(&cli.command) {
        Ok(out) => {
            match format {
                OutputFormat::Text => print!("{}", out.text),
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out.json).expect("serializable")
                    )
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
