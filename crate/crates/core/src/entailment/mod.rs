//! Entailment queries over modal and arithmetic statements.
//!
//! GL decides modal entailment outright and stands in for an oracle for
//! provability. Arithmetic entailment is answered by a budgeted schematic
//! prover that may give up with [`Verdict::Unknown`].

mod certificate;
mod facts;
mod gl;
mod prop;
mod schematic;

use alloc::vec::Vec;
use core::fmt;

pub use certificate::{check_certificate, Certificate, CertificateParseError, CheckFailure, Justification, Premise, Step};
pub use facts::{FactId, FactStore, Provenance, SchematicFact};
pub use gl::GlProvider;
pub use prop::tautologically_entails;
pub use schematic::SchematicProver;

use crate::formula::Sentence;
use crate::modal::{ModalFormula, TruthError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Provable,
    /// The context proves the negation of the goal.
    Refutable,
    /// Neither the goal nor its negation follows. Only decidable providers say this.
    Independent,
    /// The budget ran out.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Provable => "Provable",
            Verdict::Refutable => "Refutable",
            Verdict::Independent => "Independent",
            Verdict::Unknown => "Unknown",
        })
    }
}

/// Maximum number of rule applications; always positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub fn new(max_steps: u64) -> Option<Budget> {
        (max_steps > 0).then_some(Budget(max_steps))
    }

    pub fn max_steps(self) -> u64 {
        self.0
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(10_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Modal(ModalFormula),
    Arith(Sentence),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProviderId {
    Gl,
    Schematic,
}

#[derive(Clone, Debug)]
pub enum Provider {
    Gl(GlProvider),
    Schematic(SchematicProver),
}

impl Provider {
    pub fn id(&self) -> ProviderId {
        match self {
            Provider::Gl(_) => ProviderId::Gl,
            Provider::Schematic(_) => ProviderId::Schematic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntailmentError {
    /// Context and goal mix modal and arithmetic statements.
    KindMismatch,
    /// The provider does not handle this kind of statement.
    WrongProvider(ProviderId),
    Valuation(TruthError),
}

impl fmt::Display for EntailmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntailmentError::KindMismatch => write!(f, "context and goal mix modal and arithmetic statements"),
            EntailmentError::WrongProvider(p) => write!(f, "provider {p:?} does not handle these statements"),
            EntailmentError::Valuation(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EntailmentError {}

/// An entailment provider for one kind of sentence.
pub trait Oracle<S> {
    fn entails(&self, context: &[S], goal: &S) -> Result<Verdict, EntailmentError>;

    /// `Provable`, `Unknown` surfaced as `None`.
    fn proves(&self, context: &[S], goal: &S) -> Result<Option<bool>, EntailmentError> {
        Ok(match self.entails(context, goal)? {
            Verdict::Unknown => None,
            v => Some(v == Verdict::Provable),
        })
    }
}

impl Oracle<ModalFormula> for GlProvider {
    fn entails(&self, context: &[ModalFormula], goal: &ModalFormula) -> Result<Verdict, EntailmentError> {
        GlProvider::entails(self, context, goal).map_err(EntailmentError::Valuation)
    }
}

/// The schematic prover with a fixed budget per query.
#[derive(Clone, Debug)]
pub struct Budgeted {
    pub prover: SchematicProver,
    pub budget: Budget,
}

impl Oracle<Sentence> for Budgeted {
    fn entails(&self, context: &[Sentence], goal: &Sentence) -> Result<Verdict, EntailmentError> {
        Ok(self.prover.entails(context, goal, self.budget))
    }
}

/// Whether the theory plus `context` proves `goal`.
pub fn entails(
    context: &[Statement],
    goal: &Statement,
    provider: &Provider,
    budget: Budget,
) -> Result<Verdict, EntailmentError> {
    match (goal, provider) {
        (Statement::Modal(g), Provider::Gl(p)) => {
            let ctx = context
                .iter()
                .map(|s| match s {
                    Statement::Modal(m) => Ok(m.clone()),
                    Statement::Arith(_) => Err(EntailmentError::KindMismatch),
                })
                .collect::<Result<Vec<_>, _>>()?;
            p.entails(&ctx, g).map_err(EntailmentError::Valuation)
        }
        (Statement::Arith(g), Provider::Schematic(p)) => {
            let ctx = context
                .iter()
                .map(|s| match s {
                    Statement::Arith(a) => Ok(a.clone()),
                    Statement::Modal(_) => Err(EntailmentError::KindMismatch),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(p.entails(&ctx, g, budget))
        }
        (_, p) => {
            if context.iter().any(|s| core::mem::discriminant(s) != core::mem::discriminant(goal)) {
                Err(EntailmentError::KindMismatch)
            } else {
                Err(EntailmentError::WrongProvider(p.id()))
            }
        }
    }
}

#[cfg(test)]
mod tests;
