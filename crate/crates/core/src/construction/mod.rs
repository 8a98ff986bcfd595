//! The staged set of sentences, its tree of consistent members and the true branch.
//!
//! Stage 0 numerates `phi_0` and `~phi_0` and activates `phi_0 & Con(phi_0)`
//! and `~phi_0 & Con(~phi_0)`. Stage `n + 1` takes every active `psi`,
//! numerates `psi & phi_(n+1)` and `psi & ~phi_(n+1)`, deactivates `psi`,
//! and activates `theta & Con(theta)` for both new sentences. Membership is
//! syntactic identity with a numerated sentence.

pub(crate) mod tree;

use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{conjoin, sentences_by_size, EnumConfig, Formula, Sentence};
use crate::modal::ModalFormula;

pub use tree::{tree, true_branch, Forest, SharpError, ThetaError, TreeError, TreeNode};

/// Connectives the construction needs.
pub trait Language: Clone + PartialEq + fmt::Display {
    fn top() -> Self;
    fn bottom() -> Self;
    fn negate(&self) -> Self;
    fn conj(&self, other: &Self) -> Self;
    fn imp(&self, other: &Self) -> Self;
    /// Right-nested conjunction, `top` when empty.
    fn conjoin(items: &[Self]) -> Self;
}

impl Language for ModalFormula {
    fn top() -> Self {
        ModalFormula::Top
    }
    fn bottom() -> Self {
        ModalFormula::Bottom
    }
    fn negate(&self) -> Self {
        ModalFormula::not(self.clone())
    }
    fn conj(&self, other: &Self) -> Self {
        ModalFormula::and(self.clone(), other.clone())
    }
    fn imp(&self, other: &Self) -> Self {
        ModalFormula::implies(self.clone(), other.clone())
    }
    fn conjoin(items: &[Self]) -> Self {
        ModalFormula::and_all(items.iter().cloned())
    }
}

impl Language for Sentence {
    fn top() -> Self {
        Sentence::top()
    }
    fn bottom() -> Self {
        Sentence::bottom()
    }
    fn negate(&self) -> Self {
        Sentence::new(Formula::not(self.formula().clone())).expect("closed")
    }
    fn conj(&self, other: &Self) -> Self {
        Sentence::new(Formula::and(self.formula().clone(), other.formula().clone())).expect("closed")
    }
    fn imp(&self, other: &Self) -> Self {
        Sentence::new(Formula::implies(self.formula().clone(), other.formula().clone())).expect("closed")
    }
    fn conjoin(items: &[Self]) -> Self {
        conjoin(items)
    }
}

type Nth<S> = Rc<dyn Fn(usize) -> S>;
type Bound<S> = Rc<dyn Fn(&S) -> Option<usize>>;

/// A total enumeration `phi_0, phi_1, ...` with a stage bound: a sentence
/// can only prove members numerated by stage `bound(phi)`.
#[derive(Clone)]
pub struct Enumeration<S> {
    id: String,
    nth: Nth<S>,
    bound: Bound<S>,
}

impl<S> fmt::Debug for Enumeration<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enumeration").field("id", &self.id).finish_non_exhaustive()
    }
}

impl<S> Enumeration<S> {
    pub fn new(
        id: &str,
        nth: impl Fn(usize) -> S + 'static,
        bound: impl Fn(&S) -> Option<usize> + 'static,
    ) -> Self {
        Enumeration { id: id.into(), nth: Rc::new(nth), bound: Rc::new(bound) }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn nth(&self, n: usize) -> S {
        (self.nth)(n)
    }

    pub fn stage_bound(&self, s: &S) -> Option<usize> {
        (self.bound)(s)
    }
}

fn max_atom(f: &ModalFormula) -> usize {
    f.atoms().iter().next_back().map_or(0, |a| *a as usize)
}

impl Enumeration<ModalFormula> {
    /// `phi_n = p_n`. A consistent sentence proves no member deciding an
    /// atom it does not mention, so its bound is its largest atom index.
    pub fn atoms() -> Self {
        Enumeration::new("atoms", |n| ModalFormula::atom(n as u32), |f| Some(max_atom(f)))
    }

    /// The listed sentences first, then `p_n` for `n` past the list.
    pub fn doctored(prefix: Vec<ModalFormula>) -> Self {
        let len = prefix.len();
        let nth = move |n: usize| prefix.get(n).cloned().unwrap_or_else(|| ModalFormula::atom(n as u32));
        Enumeration::new("doctored", nth, move |f| Some(max_atom(f).max(len.saturating_sub(1))))
    }
}

impl Enumeration<Sentence> {
    /// Closed formulas ordered by size and then by code. A sentence's
    /// bound is its own index.
    pub fn by_size() -> Self {
        let cfg = EnumConfig::default();
        let list = move |need: usize| {
            let mut max = 1;
            loop {
                let v = sentences_by_size(&cfg, max);
                if v.len() >= need {
                    return v;
                }
                max += 1;
            }
        };
        let cfg2 = EnumConfig::default();
        let bound = move |s: &Sentence| {
            let v = sentences_by_size(&cfg2, s.formula().size());
            v.iter().position(|x| x == s)
        };
        Enumeration::new("by-size", move |n| list(n + 1)[n].clone(), bound)
    }
}

/// One numerated sentence and the numerated sentence it extends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<S> {
    pub sentence: S,
    pub stage: usize,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageState<S> {
    pub stage: usize,
    /// Sentences numerated at this stage.
    pub numerated: Vec<S>,
    /// Sentences active after this stage, all activated at this stage.
    pub active: Vec<S>,
    pub deactivated: Vec<S>,
}

pub type ConBuilder<S> = Rc<dyn Fn(&S) -> S>;

/// Stages `0..=N` of the construction.
#[derive(Clone)]
pub struct Trace<S> {
    pub stages: Vec<StageState<S>>,
    pub entries: Vec<Entry<S>>,
    enumeration: Enumeration<S>,
    con: ConBuilder<S>,
}

impl<S: fmt::Debug> fmt::Debug for Trace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Trace").field("stages", &self.stages).field("enumeration", &self.enumeration).finish()
    }
}

impl<S: PartialEq> PartialEq for Trace<S> {
    fn eq(&self, other: &Self) -> bool {
        self.stages == other.stages && self.entries == other.entries
    }
}

/// Runs stages `0..=n`.
pub fn run_stages<S: Language>(e: &Enumeration<S>, n: usize, con: ConBuilder<S>) -> Trace<S> {
    let mut entries: Vec<Entry<S>> = Vec::new();
    let mut stages = Vec::new();
    // active sentences with the entry they were activated for
    let mut active: Vec<(S, Option<usize>)> = alloc::vec![(S::top(), None)];
    for stage in 0..=n {
        let phi = e.nth(stage);
        let mut numerated = Vec::new();
        let mut next = Vec::new();
        let mut deactivated = Vec::new();
        for (psi, from) in &active {
            for lit in [phi.clone(), phi.negate()] {
                let theta = if from.is_none() { lit } else { psi.conj(&lit) };
                entries.push(Entry { sentence: theta.clone(), stage, parent: *from });
                numerated.push(theta.clone());
                next.push((theta.conj(&con(&theta)), Some(entries.len() - 1)));
            }
            if from.is_some() {
                deactivated.push(psi.clone());
            }
        }
        active = next;
        stages.push(StageState {
            stage,
            numerated,
            active: active.iter().map(|(s, _)| s.clone()).collect(),
            deactivated,
        });
    }
    Trace { stages, entries, enumeration: e.clone(), con }
}

impl<S: Language> Trace<S> {
    /// The last stage run.
    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn enumeration(&self) -> &Enumeration<S> {
        &self.enumeration
    }

    pub fn con(&self, s: &S) -> S {
        (self.con)(s)
    }

    /// Stage at which `s` was numerated.
    pub fn membership(&self, s: &S) -> Option<usize> {
        self.entry_of(s).map(|i| self.entries[i].stage)
    }

    pub fn entry_of(&self, s: &S) -> Option<usize> {
        self.entries.iter().position(|e| e.sentence == *s)
    }

    /// Entry `i` and its numerated ancestors, nearest first.
    pub fn ancestry(&self, i: usize) -> Vec<usize> {
        let mut out = alloc::vec![i];
        let mut cur = i;
        while let Some(p) = self.entries[cur].parent {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Entries numerated at stages `0..=stage`, in numeration order.
    pub fn numerated_by(&self, stage: usize) -> impl Iterator<Item = (usize, &Entry<S>)> {
        self.entries.iter().enumerate().filter(move |(_, e)| e.stage <= stage)
    }
}

/// `psi & Con(psi)`, the sentence activated for `psi`.
pub fn activated<S: Language>(tr: &Trace<S>, psi: &S) -> S {
    psi.conj(&tr.con(psi))
}
