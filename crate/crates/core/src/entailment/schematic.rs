//! Budgeted, incomplete entailment for arithmetic sentences.
//!
//! Saturates the context and the registered facts under three rules, one
//! budget step per derived sentence, and answers from propositional
//! consequence between rounds:
//!
//! - closed bounded atoms are evaluated and added with their truth value;
//! - universal sentences are instantiated at the numerals in play;
//! - `Con(a) -> Con(b)` is added when `a -> b` is a tautology.

use alloc::vec::Vec;

use super::prop::{tautologically_entails, Abstraction};
use super::{Budget, FactStore, Verdict};
use crate::arith::{build_con, match_con, TheoryDescriptor};
use crate::formula::{classify, substitute, Evaluator, Formula, HierarchyLevel, Sentence, Term};

const EVAL_BUDGET: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct SchematicProver {
    theory: TheoryDescriptor,
    facts: FactStore,
}

impl SchematicProver {
    pub fn new(theory: TheoryDescriptor, facts: FactStore) -> Self {
        SchematicProver { theory, facts }
    }

    pub fn theory(&self) -> &TheoryDescriptor {
        &self.theory
    }

    pub fn facts(&self) -> &FactStore {
        &self.facts
    }

    pub fn facts_mut(&mut self) -> &mut FactStore {
        &mut self.facts
    }

    pub fn entails(&self, context: &[Sentence], goal: &Sentence, budget: Budget) -> Verdict {
        let goal = goal.formula();
        let neg = Formula::not(goal.clone());
        let mut known: Vec<Formula> = context.iter().map(|s| s.formula().clone()).collect();
        known.extend(self.facts.sentences().into_iter().map(Sentence::into_formula));
        let mut seen = Seen::default();
        let mut steps = 0u64;
        loop {
            let refs: Vec<&Formula> = known.iter().collect();
            if tautologically_entails(&refs, goal) {
                return Verdict::Provable;
            }
            if tautologically_entails(&refs, &neg) {
                return Verdict::Refutable;
            }
            let derived = self.round(&known, goal, &mut seen);
            if derived.is_empty() {
                return Verdict::Unknown;
            }
            for f in derived {
                if steps == budget.max_steps() {
                    return Verdict::Unknown;
                }
                steps += 1;
                if !known.contains(&f) {
                    known.push(f);
                }
            }
        }
    }

    /// New sentences derivable in one rule application. Work done in
    /// earlier rounds is skipped: rules only fire on atoms, universal
    /// sentences and numerals not seen before.
    fn round(&self, known: &[Formula], goal: &Formula, seen: &mut Seen) -> Vec<Formula> {
        let mut ab = Abstraction::new();
        for f in known {
            ab.add(f);
        }
        ab.add(goal);
        let mut out: Vec<Formula> = Vec::new();
        let push = |f: Formula, out: &mut Vec<Formula>| {
            if !known.contains(&f) && !out.contains(&f) {
                out.push(f);
            }
        };

        let fresh_atoms: Vec<Formula> = ab.atoms().iter().filter(|a| !seen.atoms.contains(a)).cloned().collect();
        for a in &fresh_atoms {
            if a.is_closed() && classify(a) == HierarchyLevel::Delta0 {
                if let Ok(b) = Evaluator::new(EVAL_BUDGET).formula(a) {
                    push(if b { a.clone() } else { Formula::not(a.clone()) }, &mut out);
                }
            }
        }

        // consistency statements are opaque: never instantiated, and their
        // internal numerals stay out of the instantiation pool
        let fresh_cons: Vec<(Formula, Sentence)> = fresh_atoms
            .iter()
            .filter_map(|a| match_con(&self.theory, a).map(|phi| (a.clone(), phi)))
            .collect();
        let old_cons = seen.cons.len();
        seen.cons.extend(fresh_cons);
        let is_con = |f: &Formula, seen: &Seen| seen.cons.iter().any(|(c, _)| c == f);

        let old_pool = seen.pool.len();
        for a in &fresh_atoms {
            if is_con(a, seen) {
                continue;
            }
            a.visit_terms(&mut |t| {
                if matches!(t, Term::Numeral(_)) && !seen.pool.contains(t) {
                    seen.pool.push(t.clone());
                }
            });
        }
        for f in known {
            if let Formula::ForAll(v, body) = f {
                if is_con(f, seen) {
                    continue;
                }
                let from = if seen.universals.contains(f) { old_pool } else { 0 };
                for t in core::iter::once(&Term::Zero).filter(|_| from == 0).chain(&seen.pool[from..]) {
                    push(substitute(body, *v, t), &mut out);
                }
                if from == 0 {
                    seen.universals.push(f.clone());
                }
            }
        }

        for (i, (_, a)) in seen.cons.iter().enumerate() {
            for (j, (_, b)) in seen.cons.iter().enumerate() {
                if (i >= old_cons || j >= old_cons) && a != b && tautologically_entails(&[a.formula()], b.formula()) {
                    let ca = build_con(&self.theory, a).into_formula();
                    let cb = build_con(&self.theory, b).into_formula();
                    push(Formula::implies(ca, cb), &mut out);
                }
            }
        }
        seen.atoms.extend(fresh_atoms);
        out
    }
}

#[derive(Default)]
struct Seen {
    atoms: Vec<Formula>,
    pool: Vec<Term>,
    universals: Vec<Formula>,
    cons: Vec<(Formula, Sentence)>,
}
