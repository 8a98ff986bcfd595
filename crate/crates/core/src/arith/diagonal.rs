//! Fixed points.
//!
//! The diagonalization of a formula `chi(v)` is the sentence
//!
//! ```text
//! D(chi) := forall v (v = #chi -> chi)
//! ```
//!
//! Its code is a bounded function of the code of `chi`: the token string
//! `FORALL [v] IMPLIES EQ VAR [v] NUMERAL [code of chi]` followed by the code of
//! `chi`. The predicate `Diag(v, y)` below defines this function. For a
//! formula `psi(x)`, put `chi(v) := forall y (Diag(v, y) -> psi(y))`; then
//! `theta := D(chi)` satisfies `theta <-> psi(#theta)` in any theory
//! proving the true instances of `Diag`.
//!
//! Iterated consistency up to omega uses a fixed point with a parameter `a`:
//! `D(chi)` with `a` left free, instantiated by the numeral `#b` at stage
//! `b`. Stage codes are `omega -> 0` and `n -> n + 1`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::theory::{build_con, TheoryDescriptor};
use super::toolkit::{lit, Dsl, Part};
use crate::coding::{encode, formula_tokens, payload_tokens, quote, tag, tokens_to_value, var_tokens};
use crate::formula::{substitute, Formula, Sentence, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalError {
    /// The defining formula must have exactly one free variable.
    Arity(usize),
}

impl fmt::Display for DiagonalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagonalError::Arity(n) => write!(f, "diagonal needs exactly one free variable, found {n}"),
        }
    }
}

impl core::error::Error for DiagonalError {}

/// A fixed point `theta` of `psi`, with `chi` the formula it diagonalizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalResult {
    pub sentence: Sentence,
    pub defining_formula: Formula,
    /// The formula the fixed point was asked for.
    pub target: Formula,
}

impl DiagonalResult {
    /// `psi(#theta)`, the sentence `theta` is equivalent to.
    pub fn instance(&self) -> Sentence {
        let x = *self.target.free_variables().iter().next().expect("one free variable");
        let f = substitute(&self.target, x, &quote(self.sentence.formula()));
        Sentence::new(f).expect("closed after substitution")
    }

    /// The sentence is the diagonalization of the defining formula, and its
    /// code is the one `Diag` assigns to the defining formula's code.
    pub fn shape_holds(&self) -> bool {
        let free = self.defining_formula.free_variables();
        let [v] = free.iter().copied().collect::<Vec<_>>()[..] else { return false };
        let theta = diagonalize(&self.defining_formula, v);
        theta == *self.sentence.formula()
            && encode(&theta).into_value() == diag_code(encode(&self.defining_formula).value(), v)
    }
}

/// `forall v (v = #chi -> chi)`.
pub fn diagonalize(chi: &Formula, v: Var) -> Formula {
    Formula::forall(v, Formula::implies(Formula::eq(Term::Var(v), quote(chi)), chi.clone()))
}

fn diag_prefix(v: Var) -> Vec<u8> {
    let mut t = Vec::new();
    t.push(tag::FORALL);
    t.extend(payload_tokens(&BigUint::from(v.0)));
    t.push(tag::IMPLIES);
    t.push(tag::EQ);
    t.extend(var_tokens(v));
    t.push(tag::NUMERAL);
    t
}

/// Code of `forall v (v = #c -> C)` where `c` codes `C`.
pub fn diag_code(c: &BigUint, v: Var) -> BigUint {
    let mut t = diag_prefix(v);
    t.extend(payload_tokens(c));
    t.extend(crate::coding::value_to_tokens(c));
    tokens_to_value(&t)
}

fn prefix_parts(v: Var) -> Vec<Part> {
    alloc::vec![
        Part::Tok(tag::FORALL),
        Part::Payload(lit(v.0.into())),
        Part::Tok(tag::IMPLIES),
        Part::Tok(tag::EQ),
        Part::Tok(tag::VAR),
        Part::Payload(lit(v.0.into())),
        Part::Tok(tag::NUMERAL),
    ]
}

/// `Diag(c, y)`: `y = diag_code(c, v)`.
pub fn diag_predicate(dsl: &mut Dsl, c: &Term, y: &Term, v: Var) -> Formula {
    let mut parts = prefix_parts(v);
    parts.push(Part::Payload(c.clone()));
    parts.push(Part::Sub(c.clone()));
    dsl.layout(y, &parts)
}

/// Fixed point of `psi(x)`.
pub fn diagonal(psi: &Formula) -> Result<DiagonalResult, DiagonalError> {
    let free = psi.free_variables();
    if free.len() != 1 {
        return Err(DiagonalError::Arity(free.len()));
    }
    let x = *free.iter().next().expect("one free variable");
    let mut dsl = Dsl::above(psi.max_var_index().map_or(0, |m| m + 1));
    let v = dsl.fresh();
    let y = dsl.fresh();
    let yt = Term::Var(y);
    let chi = Formula::forall(
        y,
        Formula::implies(diag_predicate(&mut dsl, &Term::Var(v), &yt, v), substitute(psi, x, &yt)),
    );
    let theta = diagonalize(&chi, v);
    Ok(DiagonalResult {
        sentence: Sentence::new(theta).expect("v is bound"),
        defining_formula: chi,
        target: psi.clone(),
    })
}

/// A stage of iterated consistency: a natural number or omega.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrdinalNotation {
    Finite(u64),
    Omega,
}

impl OrdinalNotation {
    /// `self < other` in the standard order with omega on top.
    pub fn precedes(self, other: OrdinalNotation) -> bool {
        match (self, other) {
            (OrdinalNotation::Finite(a), OrdinalNotation::Finite(b)) => a < b,
            (OrdinalNotation::Finite(_), OrdinalNotation::Omega) => true,
            (OrdinalNotation::Omega, _) => false,
        }
    }

    /// Code used inside formulas: omega is 0, `n` is `n + 1`.
    pub fn code(self) -> u64 {
        match self {
            OrdinalNotation::Finite(n) => n + 1,
            OrdinalNotation::Omega => 0,
        }
    }
}

impl fmt::Display for OrdinalNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalNotation::Finite(n) => write!(f, "{n}"),
            OrdinalNotation::Omega => write!(f, "omega"),
        }
    }
}

impl core::str::FromStr for OrdinalNotation {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "omega" | "w" => Ok(OrdinalNotation::Omega),
            _ => s.parse().map(OrdinalNotation::Finite).map_err(|_| ()),
        }
    }
}

/// `b` precedes `a` on stage codes.
pub fn prec_predicate(b: &Term, a: &Term) -> Formula {
    let pos = Formula::lt(Term::Zero, b.clone());
    Formula::or(
        Formula::and(Formula::eq(a.clone(), Term::Zero), pos.clone()),
        Formula::and(pos, Formula::lt(b.clone(), a.clone())),
    )
}

/// The omega stage together with the pieces it is built from.
#[derive(Clone, Debug)]
pub struct OmegaCon {
    pub sentence: Sentence,
    /// `chi(v, a)`, diagonalized with `a` left free.
    pub defining_formula: Formula,
    pub code_var: Var,
    pub stage_var: Var,
}

impl OmegaCon {
    /// The fixed point at stage code `b`.
    pub fn stage(&self, b: u64) -> Sentence {
        let theta = diagonalize(&self.defining_formula, self.code_var);
        let f = substitute(&theta, self.stage_var, &Term::Numeral(b.into()));
        Sentence::new(f).expect("both variables instantiated")
    }
}

/// `Con^omega(phi)`: the fixed point `C(a) <-> forall b < a Con(phi & C(b))` at `a = omega`.
pub fn iterated_con_omega(t: &TheoryDescriptor, phi: &Sentence) -> OmegaCon {
    let pp = t.proof_predicate();
    let mut dsl = Dsl::above_all(&[&pp.formula, phi.formula()]);
    let v = dsl.fresh();
    let a = dsl.fresh();
    let (vt, at) = (Term::Var(v), Term::Var(a));
    let phi_tokens = formula_tokens(phi.formula());
    let phi_code = Term::Numeral(tokens_to_value(&phi_tokens));
    let phi_len = lit(phi_tokens.len() as u64);
    let a_str = Term::Numeral(tokens_to_value(&var_tokens(a)));

    let chi = dsl.all(|dsl, b| {
        let stages = dsl.all(|dsl, y| {
            dsl.all(|dsl, d| {
                // y codes C(b): the diagonalization of v with #b for a
                let stage = dsl.ex_le(&y.clone(), 3, |dsl, w| {
                    let (ns, lns, inst) = (&w[0], &w[1], &w[2]);
                    let mut parts = prefix_parts(v);
                    parts.push(Part::Payload(vt.clone()));
                    parts.push(Part::Sub(inst.clone()));
                    Formula::and_all([
                        dsl.numeral_str(&b, ns, lns),
                        dsl.subst_tok(&vt, &a_str, ns, inst),
                        dsl.layout(&y, &parts),
                    ])
                });
                let conj = dsl.layout(&d, &[Part::Tok(tag::AND), Part::Sized(phi_code.clone(), phi_len.clone()), Part::Sub(y.clone())]);
                let con = con_of_code(dsl, t, &d);
                Formula::implies(Formula::and(stage, conj), con)
            })
        });
        Formula::implies(prec_predicate(&b, &at), stages)
    });
    let out = OmegaCon {
        sentence: Sentence::top(),
        defining_formula: chi,
        code_var: v,
        stage_var: a,
    };
    OmegaCon { sentence: out.stage(OrdinalNotation::Omega.code()), ..out }
}

/// `forall p forall e ((d -> bot) = e -> ~Proof(p, e))`: consistency of the sentence coded by `d`.
pub fn con_of_code(dsl: &mut Dsl, t: &TheoryDescriptor, d: &Term) -> Formula {
    let pp = t.proof_predicate();
    let d = d.clone();
    dsl.all(|dsl, p| {
        dsl.all(|dsl, e| {
            let imp = dsl.imp_bot(&d, &e);
            let proof = crate::formula::substitute_all(
                &pp.formula,
                &[(pp.proof_var, p.clone()), (pp.code_var, e.clone())],
            );
            Formula::implies(imp, Formula::not(proof))
        })
    })
}

/// `Con^alpha_T(phi)`: the direct unfolding for finite stages, the fixed point at omega.
pub fn build_iterated_con(t: &TheoryDescriptor, alpha: OrdinalNotation, phi: &Sentence) -> Sentence {
    match alpha {
        OrdinalNotation::Finite(n) => {
            let mut c = Sentence::top();
            for _ in 0..n {
                let conj = Sentence::new(Formula::and(phi.formula().clone(), c.into_formula())).expect("closed");
                c = build_con(t, &conj);
            }
            c
        }
        OrdinalNotation::Omega => iterated_con_omega(t, phi).sentence,
    }
}
