//! Run settings shared by every subcommand, and the rules tying them together.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use conlab_core::entailment::Budget;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// The decidable provability-logic surrogate.
    Modal,
    /// First-order arithmetic with the budgeted schematic prover.
    Arith,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerationId {
    /// `phi_n = p_n` (modal).
    Atoms,
    /// Sentences by size, then code (arithmetic).
    BySize,
}

#[derive(Args, Clone, Debug, Default)]
pub struct Common {
    /// Modal surrogate or arithmetic; each subcommand has a default
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// JSON map such as {"p0": true, "p1": false}
    #[arg(long, global = true, value_name = "FILE")]
    pub valuation: Option<PathBuf>,
    /// Last stage of the construction
    #[arg(long, global = true, value_name = "N")]
    pub stages: Option<usize>,
    /// Rule applications per schematic query (arith mode)
    #[arg(long, global = true, value_name = "STEPS")]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub enumeration: Option<EnumerationId>,
}

/// What a subcommand accepts.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub modes: &'static [Mode],
    pub truth: bool,
    pub dot: bool,
}

impl Shape {
    pub const MODAL: Shape = Shape { modes: &[Mode::Modal], truth: false, dot: false };
    pub const ARITH: Shape = Shape { modes: &[Mode::Arith], truth: false, dot: false };
    pub const BOTH: Shape = Shape { modes: &[Mode::Modal, Mode::Arith], truth: false, dot: false };
    pub const TRUTH: Shape = Shape { modes: &[Mode::Modal], truth: true, dot: false };
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    pub format: Format,
    pub valuation: Option<PathBuf>,
    pub stages: Option<usize>,
    pub budget: Budget,
    pub enumeration: EnumerationId,
}

impl RunConfig {
    pub fn new(c: &Common, shape: Shape) -> Result<Self, CliError> {
        let mode = c.mode.unwrap_or(shape.modes[0]);
        if !shape.modes.contains(&mode) {
            return Err(CliError::Usage(format!("this subcommand has no {} mode", mode_name(mode))));
        }
        if c.format == Format::Dot && !shape.dot {
            return Err(CliError::Usage("--format dot is only available for `tree`".into()));
        }
        match mode {
            Mode::Modal if c.budget.is_some() => {
                return Err(CliError::Usage("--budget applies only in arith mode; modal answers never depend on it".into()))
            }
            Mode::Arith if c.valuation.is_some() => {
                return Err(CliError::Usage("arith mode takes no valuation: truth queries are modal only".into()))
            }
            _ => {}
        }
        if c.valuation.is_some() && !shape.truth {
            return Err(CliError::Usage("--valuation is only used by truth, dichotomy and claims".into()));
        }
        let budget = match c.budget {
            Some(n) => Budget::new(n).ok_or_else(|| CliError::Usage("--budget must be positive".into()))?,
            None => Budget::default(),
        };
        let enumeration = match (mode, c.enumeration) {
            (Mode::Modal, None | Some(EnumerationId::Atoms)) => EnumerationId::Atoms,
            (Mode::Arith, None | Some(EnumerationId::BySize)) => EnumerationId::BySize,
            (_, Some(_)) => {
                return Err(CliError::Usage(format!(
                    "--enumeration atoms is modal, --enumeration by-size is arith; got {} mode",
                    mode_name(mode)
                )))
            }
        };
        Ok(RunConfig { mode, format: c.format, valuation: c.valuation.clone(), stages: c.stages, budget, enumeration })
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Modal => "modal",
        Mode::Arith => "arith",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn common() -> Common {
        Common::default()
    }

    #[test]
    fn defaults_follow_the_shape() {
        let c = RunConfig::new(&common(), Shape::ARITH).unwrap();
        assert_eq!((c.mode, c.enumeration), (Mode::Arith, EnumerationId::BySize));
        assert_eq!(c.budget, Budget::default());
        let c = RunConfig::new(&common(), Shape::BOTH).unwrap();
        assert_eq!((c.mode, c.enumeration), (Mode::Modal, EnumerationId::Atoms));
    }

    #[test]
    fn modal_forbids_budget_and_arith_forbids_valuation() {
        let c = Common { budget: Some(5), ..common() };
        assert!(matches!(RunConfig::new(&c, Shape::BOTH), Err(CliError::Usage(_))));
        assert!(RunConfig::new(&Common { mode: Some(Mode::Arith), ..c }, Shape::BOTH).is_ok());
        let c = Common { valuation: Some("v.json".into()), mode: Some(Mode::Arith), ..common() };
        assert!(matches!(RunConfig::new(&c, Shape::BOTH), Err(CliError::Usage(_))));
    }

    #[test]
    fn valuation_only_for_truth_commands() {
        let c = Common { valuation: Some("v.json".into()), ..common() };
        assert!(RunConfig::new(&c, Shape::TRUTH).is_ok());
        assert!(RunConfig::new(&c, Shape::MODAL).is_err());
    }

    #[test]
    fn zero_budget_and_dot_are_rejected() {
        let c = Common { budget: Some(0), ..common() };
        assert!(RunConfig::new(&c, Shape::ARITH).is_err());
        let c = Common { format: Format::Dot, ..common() };
        assert!(RunConfig::new(&c, Shape::BOTH).is_err());
        assert!(RunConfig::new(&c, Shape { dot: true, ..Shape::BOTH }).is_ok());
    }

    #[test]
    fn enumeration_must_match_mode() {
        let c = Common { enumeration: Some(EnumerationId::Atoms), mode: Some(Mode::Arith), ..common() };
        assert!(RunConfig::new(&c, Shape::BOTH).is_err());
        let c = Common { enumeration: Some(EnumerationId::BySize), mode: Some(Mode::Arith), ..common() };
        assert!(RunConfig::new(&c, Shape::BOTH).is_ok());
    }
}
