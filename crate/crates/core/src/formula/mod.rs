//! First-order arithmetic syntax: terms, formulas, sentences.
//!
//! Variables are indexed (`x0`, `x1`, ...). Numeral literals (`#n`) are a
//! compact closed term denoting `n`; [`crate::coding::numeral`] gives the
//! unary `S(S(...0))` form.

mod classify;
mod enumerate;
mod eval;
mod parse;
mod subst;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

pub use classify::{classify, classify_bounds, HierarchyLevel, LevelBounds};
pub use enumerate::{formulas_of_size, formulas_up_to, sentences_by_size, terms_of_size, EnumConfig};
pub use eval::{evaluate_bounded, EvalError, Evaluator};
pub use parse::{parse_formula, parse_sentence, parse_term, ParseError};
pub use subst::{substitute, substitute_all};

/// An object-language variable, identified by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Exp(Box<Term>, Box<Term>),
    Var(Var),
    /// Closed numeral literal denoting the given natural.
    Numeral(BigUint),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    Bottom,
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    /// `forall v < t A`; `t` never mentions `v`.
    BoundedForAll(Var, Term, Box<Formula>),
    /// `exists v < t A`; `t` never mentions `v`.
    BoundedExists(Var, Term, Box<Formula>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(Var(i))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn exp(a: Term, b: Term) -> Term {
        Term::Exp(Box::new(a), Box::new(b))
    }

    pub fn lit<N: Into<BigUint>>(n: N) -> Term {
        Term::Numeral(n.into())
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Zero | Term::Numeral(_) => false,
            Term::Var(w) => *w == v,
            Term::Succ(t) => t.contains_var(v),
            Term::Add(a, b) | Term::Mul(a, b) | Term::Exp(a, b) => a.contains_var(v) || b.contains_var(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out.is_empty()
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Zero | Term::Numeral(_) => {}
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) | Term::Exp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Numeral(_) | Term::Var(_) => 1,
            Term::Succ(t) => 1 + t.size(),
            Term::Add(a, b) | Term::Mul(a, b) | Term::Exp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Zero | Term::Numeral(_) | Term::Var(_) => 0,
            Term::Succ(t) => 1 + t.depth(),
            Term::Add(a, b) | Term::Mul(a, b) | Term::Exp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Visits every subterm, outermost first.
    pub fn visit<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        f(self);
        match self {
            Term::Zero | Term::Numeral(_) | Term::Var(_) => {}
            Term::Succ(t) => t.visit(f),
            Term::Add(a, b) | Term::Mul(a, b) | Term::Exp(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Lt(a, b)
    }

    /// `a <= b`, written as `a < S(b)`.
    pub fn le(a: Term, b: Term) -> Formula {
        Formula::Lt(a, Term::succ(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::ForAll(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    /// `forall v < bound body`.
    ///
    /// # Panics
    /// If `bound` mentions `v`.
    pub fn bounded_forall(v: Var, bound: Term, body: Formula) -> Formula {
        assert!(!bound.contains_var(v), "bound term mentions its own variable");
        Formula::BoundedForAll(v, bound, Box::new(body))
    }

    /// `exists v < bound body`.
    ///
    /// # Panics
    /// If `bound` mentions `v`.
    pub fn bounded_exists(v: Var, bound: Term, body: Formula) -> Formula {
        assert!(!bound.contains_var(v), "bound term mentions its own variable");
        Formula::BoundedExists(v, bound, Box::new(body))
    }

    /// Right-nested conjunction; `Top` for an empty list.
    pub fn and_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return Formula::Top;
        };
        while let Some(f) = items.pop() {
            acc = Formula::and(f, acc);
        }
        acc
    }

    /// Right-nested disjunction; `Bottom` for an empty list.
    pub fn or_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return Formula::Bottom;
        };
        while let Some(f) = items.pop() {
            acc = Formula::or(f, acc);
        }
        acc
    }

    pub fn free_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Not(a) => a.collect_free(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::ForAll(v, body) | Formula::Exists(v, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
            Formula::BoundedForAll(v, t, body) | Formula::BoundedExists(v, t, body) => {
                t.collect_vars(out);
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// Every variable index mentioned anywhere, bound or free.
    pub fn all_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Not(a) => a.collect_all(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::ForAll(v, body) | Formula::Exists(v, body) => {
                out.insert(*v);
                body.collect_all(out);
            }
            Formula::BoundedForAll(v, t, body) | Formula::BoundedExists(v, t, body) => {
                out.insert(*v);
                t.collect_vars(out);
                body.collect_all(out);
            }
        }
    }

    pub fn max_var_index(&self) -> Option<u32> {
        self.all_variables().iter().next_back().map(|v| v.0)
    }

    pub fn is_closed(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Number of nodes: every term and formula constructor counts one.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => 1 + a.size() + b.size(),
            Formula::Bottom | Formula::Top => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::ForAll(_, body) | Formula::Exists(_, body) => 1 + body.size(),
            Formula::BoundedForAll(_, t, body) | Formula::BoundedExists(_, t, body) => 1 + t.size() + body.size(),
        }
    }

    /// True when `needle` occurs as a subformula (including `self`).
    pub fn contains_subformula(&self, needle: &Formula) -> bool {
        if self == needle {
            return true;
        }
        match self {
            Formula::Eq(..) | Formula::Lt(..) | Formula::Bottom | Formula::Top => false,
            Formula::Not(a) => a.contains_subformula(needle),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.contains_subformula(needle) || b.contains_subformula(needle)
            }
            Formula::ForAll(_, body)
            | Formula::Exists(_, body)
            | Formula::BoundedForAll(_, _, body)
            | Formula::BoundedExists(_, _, body) => body.contains_subformula(needle),
        }
    }

    /// True when `needle` occurs as a subterm anywhere in the formula.
    pub fn contains_term(&self, needle: &Term) -> bool {
        let mut found = false;
        self.visit_terms(&mut |t| {
            if t == needle {
                found = true;
            }
        });
        found
    }

    /// Visits every term occurrence (including nested subterms).
    pub fn visit_terms<'a>(&'a self, f: &mut dyn FnMut(&'a Term)) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Not(a) => a.visit_terms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Formula::ForAll(_, body) | Formula::Exists(_, body) => body.visit_terms(f),
            Formula::BoundedForAll(_, t, body) | Formula::BoundedExists(_, t, body) => {
                t.visit(f);
                body.visit_terms(f);
            }
        }
    }
}

/// A closed formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sentence(Formula);

/// Raised when a formula with free variables is offered where a sentence is required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenFormula {
    pub free: Vec<Var>,
}

impl fmt::Display for OpenFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "formula is not closed; free variables:")?;
        for v in &self.free {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for OpenFormula {}

impl Sentence {
    pub fn new(f: Formula) -> Result<Sentence, OpenFormula> {
        let free = f.free_variables();
        if free.is_empty() {
            Ok(Sentence(f))
        } else {
            Err(OpenFormula { free: free.into_iter().collect() })
        }
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }

    pub(crate) fn new_unchecked(f: Formula) -> Sentence {
        debug_assert!(f.is_closed());
        Sentence(f)
    }

    pub fn top() -> Sentence {
        Sentence(Formula::Top)
    }

    pub fn bottom() -> Sentence {
        Sentence(Formula::Bottom)
    }
}

impl TryFrom<Formula> for Sentence {
    type Error = OpenFormula;

    fn try_from(f: Formula) -> Result<Self, Self::Error> {
        Sentence::new(f)
    }
}

impl AsRef<Formula> for Sentence {
    fn as_ref(&self) -> &Formula {
        &self.0
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::Succ(t) => write!(f, "S({t})"),
            Term::Add(a, b) => write!(f, "({a}+{b})"),
            Term::Mul(a, b) => write!(f, "({a}*{b})"),
            Term::Exp(a, b) => write!(f, "exp({a},{b})"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Numeral(n) => write!(f, "#{n}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a}={b}"),
            Formula::Lt(a, b) => write!(f, "{a}<{b}"),
            Formula::Bottom => write!(f, "bot"),
            Formula::Top => write!(f, "top"),
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::ForAll(v, body) => write!(f, "forall {v} {body}"),
            Formula::Exists(v, body) => write!(f, "exists {v} {body}"),
            Formula::BoundedForAll(v, t, body) => write!(f, "forall {v} < {t} {body}"),
            Formula::BoundedExists(v, t, body) => write!(f, "exists {v} < {t} {body}"),
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Canonical text of a formula.
pub fn print_formula(f: &Formula) -> alloc::string::String {
    use alloc::string::ToString;
    f.to_string()
}

/// Right-nested conjunction of sentences in the given order; `top` when empty.
pub fn conjoin(ss: &[Sentence]) -> Sentence {
    Sentence(Formula::and_all(ss.iter().map(|s| s.0.clone())))
}

/// Free-variable set of a formula.
pub fn free_variables(f: &Formula) -> BTreeSet<Var> {
    f.free_variables()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn printing_examples() {
        assert_eq!(Formula::eq(Term::Zero, Term::Zero).to_string(), "0=0");
        assert_eq!(Formula::Bottom.to_string(), "bot");
        assert_eq!(Formula::and(Formula::Top, Formula::Bottom).to_string(), "(top & bot)");
    }

    #[test]
    fn free_variable_examples() {
        let x0 = Term::var(0);
        let x1 = Term::var(1);
        assert_eq!(
            Formula::eq(x0.clone(), x1.clone()).free_variables(),
            [Var(0), Var(1)].into_iter().collect()
        );
        assert_eq!(
            Formula::forall(Var(0), Formula::eq(x0, x1)).free_variables(),
            [Var(1)].into_iter().collect()
        );
        assert!(Formula::Bottom.free_variables().is_empty());
    }

    #[test]
    fn conjoin_examples() {
        let zz = Sentence::new(Formula::eq(Term::Zero, Term::Zero)).unwrap();
        assert_eq!(conjoin(&[]), Sentence::top());
        assert_eq!(conjoin(&[zz.clone()]).to_string(), "0=0");
        assert_eq!(conjoin(&[zz, Sentence::bottom()]).to_string(), "(0=0 & bot)");
    }

    #[test]
    fn conjoin_nests_right() {
        let items = vec![Sentence::top(), Sentence::bottom(), Sentence::top()];
        assert_eq!(conjoin(&items).to_string(), "(top & (bot & top))");
    }

    #[test]
    fn open_formula_is_not_a_sentence() {
        let err = Sentence::new(Formula::eq(Term::var(3), Term::Zero)).unwrap_err();
        assert_eq!(err.free, vec![Var(3)]);
    }

    #[test]
    #[should_panic]
    fn bounded_quantifier_rejects_self_reference() {
        Formula::bounded_forall(Var(0), Term::var(0), Formula::Top);
    }
}
