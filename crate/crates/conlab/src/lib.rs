//! The `conlab` command line: argument handling, output formats and
//! valuation files around `conlab-core`.

mod commands;
mod config;
mod render;
mod valuation;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand};

pub use config::{Common, EnumerationId, Format, Mode, RunConfig};
pub use valuation::{load_valuation, parse_valuation};

/// Environment variable fixing the sampling order of `dichotomy`.
pub const SEED_VAR: &str = "CONLAB_SEED";

#[derive(Parser, Debug)]
#[command(name = "conlab", version, about = "Consistency-operator workbench")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print it in canonical form
    Parse { text: String },
    /// Arithmetical hierarchy level of a formula
    Classify { formula: String },
    /// Con_T(phi) for the theory EA
    Con {
        sentence: String,
        /// Print level and size instead of the sentence
        #[arg(long)]
        summary: bool,
    },
    /// Iterated consistency Con^n(phi), or Con^omega(phi) in arith mode
    Itcon {
        sentence: String,
        #[arg(long, value_name = "N", conflicts_with = "omega", required_unless_present = "omega")]
        n: Option<u64>,
        #[arg(long)]
        omega: bool,
        #[arg(long)]
        summary: bool,
    },
    /// Fixed point theta with theta <-> psi(#theta) for a one-variable formula psi
    Diagonal {
        formula: String,
        #[arg(long)]
        summary: bool,
    },
    /// Decide a modal formula in GL
    Gl {
        #[arg(long, value_name = "FORMULA")]
        prove: String,
    },
    /// Surrogate truth of a modal formula under --valuation
    Truth { formula: String },
    /// Sentence A for an operator with a registered graph
    BuildA {
        #[arg(long, default_value = "con")]
        operator: String,
        /// Level of the truth predicate
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        summary: bool,
    },
    /// Run the staged construction
    Construct,
    /// The tree of consistent numerated sentences
    Tree,
    /// Apply an operator to a sentence
    GApply {
        #[arg(long)]
        input: String,
        /// thm13, con, con^N, const_top, const_con_top, identity, broken
        #[arg(long, default_value = "thm13")]
        operator: String,
    },
    /// Case split on g(bot) with sampled cone members
    Dichotomy {
        #[arg(long)]
        operator: String,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Generator of the cone for the con-like case
        #[arg(long, default_value = "top")]
        candidate: String,
        /// Overrides CONLAB_SEED
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check the vacillation claims along the true branch
    Claims,
    /// Derive Con(phi) from sentence A and check the derivation, or check one from a file
    Certify {
        #[arg(long, default_value = "con")]
        operator: String,
        #[arg(long, default_value = "top")]
        input: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Check this certificate instead of the generated one
        #[arg(long, value_name = "FILE")]
        certificate: Option<PathBuf>,
        #[arg(long)]
        summary: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations: exit status 2.
    Usage(String),
    /// The inputs were understood but the operation failed: exit status 1.
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// Everything a run produced.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Help text of the subcommand named in `args`, or of the whole program.
fn help_for(args: &[OsString]) -> String {
    let mut cmd = Cli::command();
    // building propagates global flags and the `conlab` prefix into subcommands
    cmd.build();
    let name = args.iter().skip(1).filter_map(|a| a.to_str()).find(|a| cmd.find_subcommand(a).is_some());
    match name {
        Some(n) => cmd.find_subcommand_mut(n).expect("found above").render_help().to_string(),
        None => cmd.render_help().to_string(),
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: format!("{text}\n{}", help_for(&args)) }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        // a failed check still reports what was checked
        Err((e, stdout)) => {
            let stderr = match &e {
                CliError::Usage(m) => format!("error: {m}\n\n{}", help_for(&args)),
                CliError::Domain(m) => format!("error: {m}\n"),
            };
            Output { code: e.code(), stdout, stderr }
        }
    }
}
