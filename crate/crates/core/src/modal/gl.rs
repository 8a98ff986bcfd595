//! Backward proof search for GL.
//!
//! Sequents are pairs of formula sets. Propositional rules are applied
//! eagerly (they are invertible); once only atoms and boxes remain, the
//! sequent is provable iff some Löb-rule premise is:
//!
//! ```text
//!   B, []B (for []B on the left), []A  =>  A
//!   ----------------------------------------
//!            Gamma  =>  []A, Delta
//! ```
//!
//! Failed searches are replayed to build a finite transitive irreflexive
//! countermodel; worlds are shared between identical failed sequents.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::ModalFormula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Atom(u32),
    Bot,
    Top,
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    Imp(u32, u32),
    Box(u32),
}

type Set = BTreeSet<u32>;
type Key = (Vec<u32>, Vec<u32>);

/// A finite Kripke model; world 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    /// `succ[w]` lists every world visible from `w`; the relation is transitive and irreflexive.
    pub succ: Vec<Vec<usize>>,
    /// Atoms true at each world.
    pub true_atoms: Vec<BTreeSet<u32>>,
}

impl KripkeModel {
    pub fn worlds(&self) -> usize {
        self.succ.len()
    }

    pub fn holds(&self, w: usize, f: &ModalFormula) -> bool {
        match f {
            ModalFormula::Atom(i) => self.true_atoms[w].contains(i),
            ModalFormula::Bottom => false,
            ModalFormula::Top => true,
            ModalFormula::Not(a) => !self.holds(w, a),
            ModalFormula::And(a, b) => self.holds(w, a) && self.holds(w, b),
            ModalFormula::Or(a, b) => self.holds(w, a) || self.holds(w, b),
            ModalFormula::Implies(a, b) => !self.holds(w, a) || self.holds(w, b),
            ModalFormula::Box(a) => self.succ[w].iter().all(|&u| self.holds(u, a)),
            ModalFormula::Diamond(a) => self.succ[w].iter().any(|&u| self.holds(u, a)),
        }
    }

    /// Transitive, irreflexive and with a root from which every world is visible.
    pub fn is_gl_frame(&self) -> bool {
        let n = self.worlds();
        let rel = |a: usize, b: usize| self.succ[a].contains(&b);
        for a in 0..n {
            if rel(a, a) {
                return false;
            }
            for &b in &self.succ[a] {
                for &c in &self.succ[b] {
                    if !rel(a, c) {
                        return false;
                    }
                }
            }
        }
        (1..n).all(|w| rel(0, w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlResult {
    Valid,
    /// The formula fails at the root of the model.
    Invalid(KripkeModel),
}

impl GlResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, GlResult::Valid)
    }
}

/// Prover with an interned formula arena and a sequent memo table.
#[derive(Default)]
pub struct GlProver {
    nodes: Vec<Node>,
    ids: BTreeMap<Node, u32>,
    memo: BTreeMap<Key, bool>,
}

impl GlProver {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, n: Node) -> u32 {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(n);
        self.ids.insert(n, id);
        id
    }

    fn add(&mut self, f: &ModalFormula) -> u32 {
        let n = match f {
            ModalFormula::Atom(i) => Node::Atom(*i),
            ModalFormula::Bottom => Node::Bot,
            ModalFormula::Top => Node::Top,
            ModalFormula::Not(a) => Node::Not(self.add(a)),
            ModalFormula::And(a, b) => Node::And(self.add(a), self.add(b)),
            ModalFormula::Or(a, b) => Node::Or(self.add(a), self.add(b)),
            ModalFormula::Implies(a, b) => Node::Imp(self.add(a), self.add(b)),
            ModalFormula::Box(a) => Node::Box(self.add(a)),
            ModalFormula::Diamond(a) => {
                let na = self.add(a);
                let inner = self.intern(Node::Not(na));
                let b = self.intern(Node::Box(inner));
                Node::Not(b)
            }
        };
        self.intern(n)
    }

    pub fn prove(&mut self, f: &ModalFormula) -> GlResult {
        let id = self.add(f);
        let ant = Set::new();
        let suc: Set = [id].into_iter().collect();
        if self.provable(ant.clone(), suc.clone()) {
            return GlResult::Valid;
        }
        let mut builder = ModelBuilder::default();
        self.refute(ant, suc, &mut builder);
        let model = builder.finish();
        debug_assert!(model.is_gl_frame());
        debug_assert!(!model.holds(0, f));
        GlResult::Invalid(model)
    }

    pub fn is_valid(&mut self, f: &ModalFormula) -> bool {
        let id = self.add(f);
        self.provable(Set::new(), [id].into_iter().collect())
    }

    fn is_axiom(&self, ant: &Set, suc: &Set) -> bool {
        ant.iter().any(|&a| matches!(self.nodes[a as usize], Node::Bot))
            || suc.iter().any(|&s| matches!(self.nodes[s as usize], Node::Top))
            || ant.iter().any(|a| suc.contains(a))
    }

    /// Finds a formula to decompose: (on_left, id).
    fn pick(&self, ant: &Set, suc: &Set) -> Option<(bool, u32)> {
        let composite = |id: &u32| !matches!(self.nodes[*id as usize], Node::Atom(_) | Node::Box(_));
        if let Some(&a) = ant.iter().find(|a| composite(a)) {
            return Some((true, a));
        }
        suc.iter().find(|s| composite(s)).map(|&s| (false, s))
    }

    /// Premises of the propositional rule for the picked formula.
    fn premises(&self, ant: &Set, suc: &Set, left: bool, id: u32) -> Vec<(Set, Set)> {
        let mut a = ant.clone();
        let mut s = suc.clone();
        if left {
            a.remove(&id);
        } else {
            s.remove(&id);
        }
        let with = |mut a: Set, mut s: Set, l: &[u32], r: &[u32]| {
            a.extend(l);
            s.extend(r);
            (a, s)
        };
        match (left, self.nodes[id as usize]) {
            // Top on the left and Bot on the right are simply dropped.
            (true, Node::Top) | (false, Node::Bot) => vec![(a, s)],
            (true, Node::Not(x)) => vec![with(a, s, &[], &[x])],
            (false, Node::Not(x)) => vec![with(a, s, &[x], &[])],
            (true, Node::And(x, y)) => vec![with(a, s, &[x, y], &[])],
            (false, Node::And(x, y)) => vec![with(a.clone(), s.clone(), &[], &[x]), with(a, s, &[], &[y])],
            (true, Node::Or(x, y)) => vec![with(a.clone(), s.clone(), &[x], &[]), with(a, s, &[y], &[])],
            (false, Node::Or(x, y)) => vec![with(a, s, &[], &[x, y])],
            (true, Node::Imp(x, y)) => vec![with(a.clone(), s.clone(), &[], &[x]), with(a, s, &[y], &[])],
            (false, Node::Imp(x, y)) => vec![with(a, s, &[x], &[y])],
            _ => unreachable!("axioms are checked before decomposition"),
        }
    }

    fn lob_premises(&self, ant: &Set, suc: &Set) -> Vec<(u32, Set, Set)> {
        let mut base = Set::new();
        for &a in ant {
            if let Node::Box(b) = self.nodes[a as usize] {
                base.insert(a);
                base.insert(b);
            }
        }
        let mut out = Vec::new();
        for &s in suc {
            if let Node::Box(x) = self.nodes[s as usize] {
                let mut a = base.clone();
                a.insert(s);
                out.push((s, a, [x].into_iter().collect()));
            }
        }
        out
    }

    fn provable(&mut self, ant: Set, suc: Set) -> bool {
        if self.is_axiom(&ant, &suc) {
            return true;
        }
        let key: Key = (ant.iter().copied().collect(), suc.iter().copied().collect());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = match self.pick(&ant, &suc) {
            Some((left, id)) => {
                let prem = self.premises(&ant, &suc, left, id);
                prem.into_iter().all(|(a, s)| self.provable(a, s))
            }
            None => {
                let prem = self.lob_premises(&ant, &suc);
                prem.into_iter().any(|(_, a, s)| self.provable(a, s))
            }
        };
        self.memo.insert(key, r);
        r
    }

    /// Builds the countermodel world for an unprovable sequent.
    fn refute(&mut self, ant: Set, suc: Set, b: &mut ModelBuilder) -> usize {
        let key: Key = (ant.iter().copied().collect(), suc.iter().copied().collect());
        if let Some(&w) = b.by_key.get(&key) {
            return w;
        }
        let w = match self.pick(&ant, &suc) {
            Some((left, id)) => {
                let prem = self.premises(&ant, &suc, left, id);
                let failing = prem
                    .into_iter()
                    .find(|(a, s)| !self.provable(a.clone(), s.clone()))
                    .expect("an unprovable sequent has an unprovable premise");
                self.refute(failing.0, failing.1, b)
            }
            None => {
                let w = b.children.len();
                b.children.push(Vec::new());
                let atoms = ant
                    .iter()
                    .filter_map(|&a| match self.nodes[a as usize] {
                        Node::Atom(i) => Some(i),
                        _ => None,
                    })
                    .collect();
                b.atoms.push(atoms);
                for (_, a, s) in self.lob_premises(&ant, &suc) {
                    let child = self.refute(a, s, b);
                    b.children[w].push(child);
                }
                w
            }
        };
        b.by_key.insert(key, w);
        w
    }
}

#[derive(Default)]
struct ModelBuilder {
    children: Vec<Vec<usize>>,
    atoms: Vec<BTreeSet<u32>>,
    by_key: BTreeMap<Key, usize>,
}

impl ModelBuilder {
    /// Transitive closure; worlds are renumbered so the first world built is 0.
    fn finish(self) -> KripkeModel {
        let n = self.children.len();
        let mut succ = Vec::with_capacity(n);
        for w in 0..n {
            let mut seen = vec![false; n];
            let mut stack = self.children[w].clone();
            while let Some(u) = stack.pop() {
                if !seen[u] {
                    seen[u] = true;
                    stack.extend(self.children[u].iter().copied());
                }
            }
            succ.push((0..n).filter(|&u| seen[u]).collect());
        }
        KripkeModel { succ, true_atoms: self.atoms }
    }
}

/// Decides GL-validity; invalid formulas come with a countermodel.
pub fn gl_prove(f: &ModalFormula) -> GlResult {
    GlProver::new().prove(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::parse_modal;

    fn valid(s: &str) -> bool {
        gl_prove(&parse_modal(s).unwrap()).is_valid()
    }

    #[test]
    fn examples() {
        assert!(valid("([](p0 -> p1) -> ([]p0 -> []p1))"));
        assert!(valid("([]([]p0 -> p0) -> []p0)"));
        match gl_prove(&parse_modal("<>top").unwrap()) {
            GlResult::Invalid(m) => assert_eq!(m.worlds(), 1),
            GlResult::Valid => panic!("<>top is not valid"),
        }
    }

    #[test]
    fn t_and_four() {
        assert!(!valid("([]p0 -> p0)"));
        assert!(valid("([]p0 -> [][]p0)"));
        assert!(valid("([]<>top -> []bot)"));
    }

    #[test]
    fn countermodels_refute() {
        for s in ["([]p0 -> p0)", "(<>p0 -> <><>p0)", "(p0 -> []p0)", "~[][]bot"] {
            let f = parse_modal(s).unwrap();
            match gl_prove(&f) {
                GlResult::Invalid(m) => {
                    assert!(m.is_gl_frame());
                    assert!(!m.holds(0, &f), "{s}");
                }
                GlResult::Valid => panic!("{s} should be invalid"),
            }
        }
    }
}
