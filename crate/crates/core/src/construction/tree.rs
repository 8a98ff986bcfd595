use alloc::vec::Vec;
use core::fmt;

use super::{activated, Language, Trace};
use crate::entailment::{EntailmentError, Oracle, Verdict};
use crate::modal::{truth, ModalFormula, TruthError, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode<S> {
    pub sentence: S,
    /// Index into the trace's entries.
    pub entry: usize,
    pub stage: usize,
    /// Index into the forest's nodes; `None` for a root.
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// The consistent numerated sentences arranged by numeration parentage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest<S> {
    pub nodes: Vec<TreeNode<S>>,
}

impl<S> Forest<S> {
    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| n.parent.is_none()).map(|(i, _)| i)
    }

    /// `a` is `b` or an ancestor of `b`.
    pub fn below_or_equal(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = self.nodes[c].parent;
        }
        false
    }

    pub fn node_of_entry(&self, entry: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.entry == entry)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TreeError<S> {
    /// The provider could not decide whether this sentence is consistent.
    Undecided(S),
    Oracle(EntailmentError),
}

impl<S: fmt::Display> fmt::Display for TreeError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Undecided(s) => write!(f, "could not decide consistency of {s}"),
            TreeError::Oracle(e) => write!(f, "{e}"),
        }
    }
}

/// Whether `s` is consistent, `None` when undecided.
pub(crate) fn consistent<S: Language>(oracle: &dyn Oracle<S>, s: &S) -> Result<Option<bool>, EntailmentError> {
    Ok(match oracle.entails(core::slice::from_ref(s), &S::bottom())? {
        Verdict::Provable => Some(false),
        Verdict::Unknown => None,
        _ => Some(true),
    })
}

pub fn tree<S: Language>(tr: &Trace<S>, oracle: &dyn Oracle<S>) -> Result<Forest<S>, TreeError<S>> {
    let mut nodes: Vec<TreeNode<S>> = Vec::new();
    let mut node_of: Vec<Option<usize>> = alloc::vec![None; tr.entries.len()];
    for (i, e) in tr.entries.iter().enumerate() {
        match consistent(oracle, &e.sentence).map_err(TreeError::Oracle)? {
            None => return Err(TreeError::Undecided(e.sentence.clone())),
            Some(false) => continue,
            Some(true) => {}
        }
        // a consistent sentence implies its parent, which is therefore consistent too
        let parent = e.parent.and_then(|p| node_of[p]);
        let id = nodes.len();
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        nodes.push(TreeNode { sentence: e.sentence.clone(), entry: i, stage: e.stage, parent, children: Vec::new() });
        node_of[i] = Some(id);
    }
    Ok(Forest { nodes })
}

/// Entry indices of the chain of true numerated sentences, one per stage.
pub fn true_branch(tr: &Trace<ModalFormula>, v: &Valuation) -> Result<Vec<usize>, TruthError> {
    let mut out: Vec<usize> = Vec::new();
    for stage in 0..=tr.depth() {
        let prev = out.last().copied();
        let mut next = None;
        for (i, e) in tr.entries.iter().enumerate() {
            if e.stage == stage && e.parent == prev && truth(&e.sentence, v)? {
                next = Some(i);
                break;
            }
        }
        match next {
            Some(i) => out.push(i),
            None => break,
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaError {
    NotOnTrueBranch,
    Truth(TruthError),
}

impl fmt::Display for ThetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaError::NotOnTrueBranch => write!(f, "sentence is not on the true branch"),
            ThetaError::Truth(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ThetaError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SharpError {
    Theta(ThetaError),
    Oracle(EntailmentError),
    /// The provider ran out of budget.
    Undecided,
}

impl fmt::Display for SharpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SharpError::Theta(e) => write!(f, "{e}"),
            SharpError::Oracle(e) => write!(f, "{e}"),
            SharpError::Undecided => write!(f, "provider could not decide the condition"),
        }
    }
}

impl core::error::Error for SharpError {}

impl Trace<ModalFormula> {
    /// For true `psi` numerated at stage `n`, the true one of `phi_(n+1)` and `~phi_(n+1)`.
    pub fn theta(&self, psi: &ModalFormula, v: &Valuation) -> Result<ModalFormula, ThetaError> {
        let branch = true_branch(self, v).map_err(ThetaError::Truth)?;
        let i = self.entry_of(psi).ok_or(ThetaError::NotOnTrueBranch)?;
        if !branch.contains(&i) {
            return Err(ThetaError::NotOnTrueBranch);
        }
        let phi = self.enumeration().nth(self.entries[i].stage + 1);
        Ok(if truth(&phi, v).map_err(ThetaError::Truth)? { phi } else { phi.negate() })
    }

    /// `psi & Con(psi)` does not prove `theta_psi`.
    pub fn check_sharp(
        &self,
        psi: &ModalFormula,
        v: &Valuation,
        oracle: &dyn Oracle<ModalFormula>,
    ) -> Result<bool, SharpError> {
        let theta = self.theta(psi, v).map_err(SharpError::Theta)?;
        match oracle.entails(&[activated(self, psi)], &theta).map_err(SharpError::Oracle)? {
            Verdict::Unknown => Err(SharpError::Undecided),
            verdict => Ok(verdict != Verdict::Provable),
        }
    }
}
