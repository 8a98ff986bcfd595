use core::cell::RefCell;

use super::Verdict;
use crate::modal::{GlProver, ModalFormula, TruthError, Valuation};

/// Decides entailment over GL. Without a valuation atoms are uninterpreted
/// sentences; with one, each atom is replaced by its truth value first, the
/// reading of atoms as decided bounded facts.
#[derive(Default)]
pub struct GlProvider {
    valuation: Option<Valuation>,
    prover: RefCell<GlProver>,
}

impl core::fmt::Debug for GlProvider {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("GlProvider").field("valuation", &self.valuation).finish_non_exhaustive()
    }
}

impl Clone for GlProvider {
    fn clone(&self) -> Self {
        GlProvider { valuation: self.valuation.clone(), prover: RefCell::new(GlProver::new()) }
    }
}

impl GlProvider {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_valuation(valuation: Valuation) -> Self {
        GlProvider { valuation: Some(valuation), prover: RefCell::new(GlProver::new()) }
    }

    pub fn valuation(&self) -> Option<&Valuation> {
        self.valuation.as_ref()
    }

    /// GL proves `f`, after substitution when a valuation is set.
    pub fn valid(&self, f: &ModalFormula) -> Result<bool, TruthError> {
        let f = match &self.valuation {
            Some(v) => v.apply(f)?,
            None => f.clone(),
        };
        Ok(self.prover.borrow_mut().is_valid(&f))
    }

    pub fn entails(&self, context: &[ModalFormula], goal: &ModalFormula) -> Result<Verdict, TruthError> {
        let hyp = ModalFormula::and_all(context.iter().cloned());
        if self.valid(&ModalFormula::implies(hyp.clone(), goal.clone()))? {
            Ok(Verdict::Provable)
        } else if self.valid(&ModalFormula::implies(hyp, ModalFormula::not(goal.clone())))? {
            Ok(Verdict::Refutable)
        } else {
            Ok(Verdict::Independent)
        }
    }

    pub fn proves(&self, context: &[ModalFormula], goal: &ModalFormula) -> Result<bool, TruthError> {
        Ok(self.entails(context, goal)? == Verdict::Provable)
    }

    /// `f` does not prove `bot`.
    pub fn consistent(&self, f: &ModalFormula) -> Result<bool, TruthError> {
        Ok(!self.valid(&ModalFormula::not(f.clone()))?)
    }
}
