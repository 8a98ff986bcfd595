//! Brute-force Kripke semantics over finite trees.
//!
//! Every finite transitive irreflexive frame unravels into a tree, so trees
//! suffice. This module is deliberately independent of the sequent prover
//! and exists to cross-check it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{KripkeModel, ModalFormula};

/// Rooted unlabeled trees with `n` nodes, as parent arrays in preorder
/// (`parent[0]` is the root's own index and is ignored).
pub fn rooted_trees(n: usize) -> Vec<Vec<usize>> {
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(), vec![vec![0]]];
    for k in 2..=n {
        let mut layer = Vec::new();
        let mut chosen = Vec::new();
        forests(&by_size, k - 1, (1, 0), &mut chosen, &mut layer);
        by_size.push(layer);
    }
    if n == 0 {
        return Vec::new();
    }
    by_size.swap_remove(n)
}

/// Builds every tree whose root has child subtrees drawn in non-decreasing
/// (size, index) order, totalling `remaining` nodes.
fn forests(
    by_size: &[Vec<Vec<usize>>],
    remaining: usize,
    min: (usize, usize),
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining == 0 {
        let mut parent = vec![0];
        for &(s, i) in chosen.iter() {
            let base = parent.len();
            for (j, &p) in by_size[s][i].iter().enumerate() {
                parent.push(if j == 0 { 0 } else { base + p });
            }
        }
        out.push(parent);
        return;
    }
    for s in min.0..=remaining {
        let start = if s == min.0 { min.1 } else { 0 };
        for i in start..by_size[s].len() {
            chosen.push((s, i));
            forests(by_size, remaining - s, (s, i), chosen, out);
            chosen.pop();
        }
    }
}

fn descendants(parent: &[usize]) -> Vec<Vec<usize>> {
    let n = parent.len();
    let mut succ = vec![Vec::new(); n];
    for w in 1..n {
        let mut a = parent[w];
        loop {
            succ[a].push(w);
            if a == 0 {
                break;
            }
            a = parent[a];
        }
    }
    for s in &mut succ {
        s.sort_unstable();
    }
    succ
}

/// Searches tree models with at most `max_worlds` worlds for one whose root
/// falsifies `f`. `None` means valid up to that bound.
pub fn kripke_oracle(f: &ModalFormula, max_worlds: usize) -> Option<KripkeModel> {
    let atoms: Vec<u32> = f.atoms().into_iter().collect();
    for n in 1..=max_worlds {
        for parent in rooted_trees(n) {
            let succ = descendants(&parent);
            let bits = atoms.len() * n;
            for assignment in 0u64..(1u64 << bits) {
                let true_atoms = (0..n)
                    .map(|w| {
                        atoms
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| assignment >> (w * atoms.len() + k) & 1 == 1)
                            .map(|(_, a)| *a)
                            .collect::<BTreeSet<u32>>()
                    })
                    .collect();
                let model = KripkeModel { succ: succ.clone(), true_atoms };
                if !model.holds(0, f) {
                    return Some(model);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Op {
    Atom(u32),
    Bot,
    Top,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Box(usize),
    Dia(usize),
}

/// Shared-subformula evaluator for validity checks over many formulas at once.
pub struct KripkeCorpus {
    ops: Vec<Op>,
    roots: Vec<usize>,
    atoms: Vec<u32>,
}

impl KripkeCorpus {
    pub fn new(formulas: &[ModalFormula]) -> Self {
        let mut ids = BTreeMap::new();
        let mut ops = Vec::new();
        let mut atoms = BTreeSet::new();
        let roots = formulas.iter().map(|f| intern(f, &mut ids, &mut ops, &mut atoms)).collect();
        KripkeCorpus { ops, roots, atoms: atoms.into_iter().collect() }
    }

    /// For each formula, whether it holds at the root of every tree model with
    /// at most `max_worlds` worlds (at most 8).
    pub fn valid_up_to(&self, max_worlds: usize) -> Vec<bool> {
        assert!((1..=8).contains(&max_worlds));
        let mut valid = vec![true; self.ops.len()];
        let mut mask = vec![0u8; self.ops.len()];
        for n in 1..=max_worlds {
            for parent in rooted_trees(n) {
                let succ: Vec<u8> = descendants(&parent)
                    .iter()
                    .map(|s| s.iter().fold(0u8, |m, &u| m | 1 << u))
                    .collect();
                let bits = self.atoms.len() * n;
                for assignment in 0u64..(1u64 << bits) {
                    for (i, op) in self.ops.iter().enumerate() {
                        mask[i] = match *op {
                            Op::Atom(a) => {
                                let k = self.atoms.binary_search(&a).expect("interned atom");
                                (0..n).fold(0u8, |m, w| {
                                    m | ((assignment >> (w * self.atoms.len() + k) & 1) as u8) << w
                                })
                            }
                            Op::Bot => 0,
                            Op::Top => 0xff,
                            Op::Not(a) => !mask[a],
                            Op::And(a, b) => mask[a] & mask[b],
                            Op::Or(a, b) => mask[a] | mask[b],
                            Op::Imp(a, b) => !mask[a] | mask[b],
                            Op::Box(a) => (0..n).fold(0u8, |m, w| m | u8::from(succ[w] & !mask[a] == 0) << w),
                            Op::Dia(a) => (0..n).fold(0u8, |m, w| m | u8::from(succ[w] & mask[a] != 0) << w),
                        };
                        if mask[i] & 1 == 0 {
                            valid[i] = false;
                        }
                    }
                }
            }
        }
        self.roots.iter().map(|&r| valid[r]).collect()
    }
}

fn intern(f: &ModalFormula, ids: &mut BTreeMap<Op, usize>, ops: &mut Vec<Op>, atoms: &mut BTreeSet<u32>) -> usize {
    let op = match f {
        ModalFormula::Atom(a) => {
            atoms.insert(*a);
            Op::Atom(*a)
        }
        ModalFormula::Bottom => Op::Bot,
        ModalFormula::Top => Op::Top,
        ModalFormula::Not(a) => Op::Not(intern(a, ids, ops, atoms)),
        ModalFormula::And(a, b) => Op::And(intern(a, ids, ops, atoms), intern(b, ids, ops, atoms)),
        ModalFormula::Or(a, b) => Op::Or(intern(a, ids, ops, atoms), intern(b, ids, ops, atoms)),
        ModalFormula::Implies(a, b) => Op::Imp(intern(a, ids, ops, atoms), intern(b, ids, ops, atoms)),
        ModalFormula::Box(a) => Op::Box(intern(a, ids, ops, atoms)),
        ModalFormula::Diamond(a) => Op::Dia(intern(a, ids, ops, atoms)),
    };
    *ids.entry(op).or_insert_with(|| {
        ops.push(op);
        ops.len() - 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::parse_modal;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| rooted_trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn examples() {
        assert!(kripke_oracle(&parse_modal("([]([]p0 -> p0) -> []p0)").unwrap(), 4).is_none());
        let m = kripke_oracle(&parse_modal("(p0 -> <>p0)").unwrap(), 1).expect("refuted");
        assert_eq!(m.worlds(), 1);
        assert!(kripke_oracle(&parse_modal("(<><>top -> <>top)").unwrap(), 5).is_none());
    }

    #[test]
    fn corpus_matches_single() {
        let fs: Vec<ModalFormula> = ["([]p0 -> p0)", "([]p0 -> [][]p0)", "(<>p0 | ~<>p0)", "[]bot"]
            .iter()
            .map(|s| parse_modal(s).unwrap())
            .collect();
        let batch = KripkeCorpus::new(&fs).valid_up_to(4);
        let single: Vec<bool> = fs.iter().map(|f| kripke_oracle(f, 4).is_none()).collect();
        assert_eq!(batch, single);
    }
}
