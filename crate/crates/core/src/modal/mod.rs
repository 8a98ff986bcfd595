//! Propositional modal language read as provability logic.
//!
//! `[]A` reads "A is provable" and `<>A` reads "A is consistent", so `<>A`
//! is the stand-in for the arithmetized consistency of `A`.

mod closed;
mod enumerate;
mod gl;
mod kripke;
mod parse;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

pub use closed::{closed_normal_form, truth, ClosedForm, TruthError, Valuation};
pub use enumerate::modal_formulas_by_size;
pub use gl::{gl_prove, GlProver, GlResult, KripkeModel};
pub use kripke::{kripke_oracle, rooted_trees, KripkeCorpus};
pub use parse::{parse_modal, ModalParseError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalFormula {
    Atom(u32),
    Bottom,
    Top,
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
    Diamond(Box<ModalFormula>),
}

impl ModalFormula {
    pub fn atom(i: u32) -> Self {
        ModalFormula::Atom(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Self) -> Self {
        ModalFormula::Not(Box::new(a))
    }

    pub fn and(a: Self, b: Self) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        ModalFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Self, b: Self) -> Self {
        Self::and(Self::implies(a.clone(), b.clone()), Self::implies(b, a))
    }

    pub fn boxed(a: Self) -> Self {
        ModalFormula::Box(Box::new(a))
    }

    pub fn diamond(a: Self) -> Self {
        ModalFormula::Diamond(Box::new(a))
    }

    /// `[]^n bot`.
    pub fn box_bottom(n: u32) -> Self {
        let mut f = ModalFormula::Bottom;
        for _ in 0..n {
            f = Self::boxed(f);
        }
        f
    }

    pub fn size(&self) -> usize {
        match self {
            ModalFormula::Atom(_) | ModalFormula::Bottom | ModalFormula::Top => 1,
            ModalFormula::Not(a) | ModalFormula::Box(a) | ModalFormula::Diamond(a) => 1 + a.size(),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn modal_depth(&self) -> u32 {
        match self {
            ModalFormula::Atom(_) | ModalFormula::Bottom | ModalFormula::Top => 0,
            ModalFormula::Not(a) => a.modal_depth(),
            ModalFormula::Box(a) | ModalFormula::Diamond(a) => 1 + a.modal_depth(),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Implies(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            ModalFormula::Atom(i) => {
                out.insert(*i);
            }
            ModalFormula::Bottom | ModalFormula::Top => {}
            ModalFormula::Not(a) | ModalFormula::Box(a) | ModalFormula::Diamond(a) => a.collect_atoms(out),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.atoms().is_empty()
    }

    /// Replaces each atom by the formula `f` returns for it.
    pub fn map_atoms(&self, f: &mut dyn FnMut(u32) -> ModalFormula) -> ModalFormula {
        match self {
            ModalFormula::Atom(i) => f(*i),
            ModalFormula::Bottom | ModalFormula::Top => self.clone(),
            ModalFormula::Not(a) => Self::not(a.map_atoms(f)),
            ModalFormula::Box(a) => Self::boxed(a.map_atoms(f)),
            ModalFormula::Diamond(a) => Self::diamond(a.map_atoms(f)),
            ModalFormula::And(a, b) => Self::and(a.map_atoms(f), b.map_atoms(f)),
            ModalFormula::Or(a, b) => Self::or(a.map_atoms(f), b.map_atoms(f)),
            ModalFormula::Implies(a, b) => Self::implies(a.map_atoms(f), b.map_atoms(f)),
        }
    }

    /// Right-nested conjunction; `top` when empty.
    pub fn and_all<I: IntoIterator<Item = ModalFormula>>(items: I) -> ModalFormula {
        let mut items: Vec<ModalFormula> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return ModalFormula::Top;
        };
        while let Some(f) = items.pop() {
            acc = Self::and(f, acc);
        }
        acc
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalFormula::Atom(i) => write!(f, "p{i}"),
            ModalFormula::Bottom => write!(f, "bot"),
            ModalFormula::Top => write!(f, "top"),
            ModalFormula::Not(a) => write!(f, "~{a}"),
            ModalFormula::And(a, b) => write!(f, "({a} & {b})"),
            ModalFormula::Or(a, b) => write!(f, "({a} | {b})"),
            ModalFormula::Implies(a, b) => write!(f, "({a} -> {b})"),
            ModalFormula::Box(a) => write!(f, "[]{a}"),
            ModalFormula::Diamond(a) => write!(f, "<>{a}"),
        }
    }
}

/// Consistency of `f`, read modally.
pub fn mock_con(f: &ModalFormula) -> ModalFormula {
    ModalFormula::diamond(f.clone())
}

/// `n`-fold iterated consistency over `f`: `Con^0 = top`, `Con^(m+1) = <>(f & Con^m)`.
pub fn mock_iterated_con(n: u32, f: &ModalFormula) -> ModalFormula {
    let mut acc = ModalFormula::Top;
    for _ in 0..n {
        acc = ModalFormula::diamond(ModalFormula::and(f.clone(), acc));
    }
    acc
}
