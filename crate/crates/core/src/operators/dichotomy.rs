//! The case split on whether `g(bot)` is true, checked on sampled cone members.

use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Operator;
use crate::construction::tree::consistent;
use crate::entailment::{EntailmentError, Oracle, Verdict};
use crate::modal::{mock_con, modal_formulas_by_size, truth, ModalFormula, TruthError, Valuation};

/// Largest sampled conjunct.
const POOL_SIZE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `g(bot)` is true: every `phi` proving it proves `g(phi)`.
    EventuallyTrivial,
    /// `g(bot)` is false: on a true cone, `phi & g(phi)` proves `Con(phi)`.
    EventuallyConLike,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::EventuallyTrivial => "eventually-trivial",
            Case::EventuallyConLike => "eventually-con-like",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub sentence: ModalFormula,
    pub verdict: Verdict,
}

impl Sample {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Provable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub case: Case,
    pub generator: ModalFormula,
    pub samples: Vec<Sample>,
    /// Fewer consistent cone members were found than requested.
    pub exhausted: bool,
}

impl DichotomyReport {
    pub fn failures(&self) -> usize {
        self.samples.iter().filter(|s| !s.passed()).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DichotomyError {
    Truth(TruthError),
    Oracle(EntailmentError),
    /// The candidate cone generator is false.
    FalseCandidate(ModalFormula),
}

impl fmt::Display for DichotomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DichotomyError::Truth(e) => write!(f, "{e}"),
            DichotomyError::Oracle(e) => write!(f, "{e}"),
            DichotomyError::FalseCandidate(c) => write!(f, "candidate cone generator {c} is false"),
        }
    }
}

impl core::error::Error for DichotomyError {}

/// Decides the case by the truth of `g(bot)` and checks the matching
/// conclusion on `samples` consistent members `c & chi` of the cone, with
/// `chi` drawn from small formulas over `p0, p1` in an order fixed by `seed`.
/// When `g(bot)` is false, `candidate` generates the cone.
pub fn dichotomy(
    g: &Operator<ModalFormula>,
    v: &Valuation,
    o: &dyn Oracle<ModalFormula>,
    candidate: &ModalFormula,
    samples: usize,
    seed: u64,
) -> Result<DichotomyReport, DichotomyError> {
    let at_bot = g.apply(&ModalFormula::Bottom);
    let (case, generator) = if truth(&at_bot, v).map_err(DichotomyError::Truth)? {
        (Case::EventuallyTrivial, at_bot)
    } else {
        if !truth(candidate, v).map_err(DichotomyError::Truth)? {
            return Err(DichotomyError::FalseCandidate(candidate.clone()));
        }
        (Case::EventuallyConLike, candidate.clone())
    };

    let leaves = [ModalFormula::Bottom, ModalFormula::Top, ModalFormula::atom(0), ModalFormula::atom(1)];
    let mut pool: Vec<ModalFormula> = modal_formulas_by_size(&leaves, POOL_SIZE).into_iter().flatten().collect();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut out = Vec::new();
    let mut seen = Vec::new();
    for chi in pool {
        if out.len() == samples {
            break;
        }
        let phi = ModalFormula::and(generator.clone(), chi);
        if seen.contains(&phi) || consistent(o, &phi).map_err(DichotomyError::Oracle)? != Some(true) {
            continue;
        }
        let g_phi = g.apply(&phi);
        let verdict = match case {
            Case::EventuallyTrivial => o.entails(core::slice::from_ref(&phi), &g_phi),
            Case::EventuallyConLike => o.entails(&[phi.clone(), g_phi], &mock_con(&phi)),
        }
        .map_err(DichotomyError::Oracle)?;
        seen.push(phi.clone());
        out.push(Sample { sentence: phi, verdict });
    }
    Ok(DichotomyReport { case, generator, exhausted: out.len() < samples, samples: out })
}
