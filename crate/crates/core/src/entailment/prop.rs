//! Propositional reasoning over first-order sentences.
//!
//! Every maximal subformula that is not a propositional connective (an
//! atomic formula or a quantified formula) becomes a propositional atom,
//! identified up to syntactic identity.

use alloc::vec::Vec;

use crate::formula::Formula;

#[derive(Clone, Debug)]
enum Prop {
    Atom(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
}

/// Atoms and a node arena shared by all formulas abstracted together.
#[derive(Debug, Default)]
pub struct Abstraction {
    atoms: Vec<Formula>,
    nodes: Vec<Prop>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropId(usize);

impl Abstraction {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, p: Prop) -> usize {
        self.nodes.push(p);
        self.nodes.len() - 1
    }

    pub fn add(&mut self, f: &Formula) -> PropId {
        PropId(self.node(f))
    }

    fn node(&mut self, f: &Formula) -> usize {
        let p = match f {
            Formula::Top => Prop::Const(true),
            Formula::Bottom => Prop::Const(false),
            Formula::Not(a) => Prop::Not(self.node(a)),
            Formula::And(a, b) => Prop::And(self.node(a), self.node(b)),
            Formula::Or(a, b) => Prop::Or(self.node(a), self.node(b)),
            Formula::Implies(a, b) => Prop::Implies(self.node(a), self.node(b)),
            other => {
                let i = match self.atoms.iter().position(|a| a == other) {
                    Some(i) => i,
                    None => {
                        self.atoms.push(other.clone());
                        self.atoms.len() - 1
                    }
                };
                Prop::Atom(i)
            }
        };
        self.push(p)
    }

    pub fn atoms(&self) -> &[Formula] {
        &self.atoms
    }

    /// Value under a partial assignment, `None` when undetermined.
    fn eval(&self, n: usize, asg: &[Option<bool>]) -> Option<bool> {
        match self.nodes[n] {
            Prop::Atom(i) => asg[i],
            Prop::Const(b) => Some(b),
            Prop::Not(a) => self.eval(a, asg).map(|b| !b),
            Prop::And(a, b) => match (self.eval(a, asg), self.eval(b, asg)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Prop::Or(a, b) => match (self.eval(a, asg), self.eval(b, asg)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            Prop::Implies(a, b) => match (self.eval(a, asg), self.eval(b, asg)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        }
    }

    /// Whether every assignment making all `premises` true makes `goal` true.
    pub fn entails(&self, premises: &[PropId], goal: PropId) -> bool {
        let mut asg = alloc::vec![None; self.atoms.len()];
        !self.countermodel(premises, goal, 0, &mut asg)
    }

    fn countermodel(&self, premises: &[PropId], goal: PropId, next: usize, asg: &mut [Option<bool>]) -> bool {
        if self.eval(goal.0, asg) == Some(true) {
            return false;
        }
        let mut open = false;
        for p in premises {
            match self.eval(p.0, asg) {
                Some(false) => return false,
                None => open = true,
                Some(true) => {}
            }
        }
        if !open && self.eval(goal.0, asg) == Some(false) {
            return true;
        }
        if next == asg.len() {
            return false;
        }
        for b in [true, false] {
            asg[next] = Some(b);
            if self.countermodel(premises, goal, next + 1, asg) {
                asg[next] = None;
                return true;
            }
        }
        asg[next] = None;
        false
    }
}

/// Propositional consequence of sentences.
pub fn tautologically_entails(premises: &[&Formula], goal: &Formula) -> bool {
    let mut ab = Abstraction::new();
    let ps: Vec<PropId> = premises.iter().map(|p| ab.add(p)).collect();
    let g = ab.add(goal);
    ab.entails(&ps, g)
}
