use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::fmt;

use super::schemas::{logic_schemas, no_binder, recognize};
use super::toolkit::{lit, Dsl, Part};
use crate::coding::{encode, quote, tag};
use crate::formula::{classify, parse_sentence, Formula, HierarchyLevel, Sentence, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryError {
    /// The recognizer must have exactly one free variable.
    RecognizerArity(usize),
    /// The recognizer must be bounded or Sigma_1.
    RecognizerLevel(HierarchyLevel),
}

impl fmt::Display for TheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryError::RecognizerArity(n) => write!(f, "axiom recognizer has {n} free variables, expected 1"),
            TheoryError::RecognizerLevel(l) => write!(f, "axiom recognizer is {l}, expected Delta0 or Sigma1"),
        }
    }
}

impl core::error::Error for TheoryError {}

/// `Proof(p, x)`: `p` codes a proof of the formula coded by `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofPredicate {
    pub formula: Formula,
    pub proof_var: Var,
    pub code_var: Var,
}

/// A recursively axiomatized theory given by a formula recognizing the codes of its axioms.
#[derive(Clone)]
pub struct TheoryDescriptor {
    name: String,
    recognizer: Formula,
    coding_scheme_id: String,
    proof: Rc<OnceCell<ProofPredicate>>,
}

impl fmt::Debug for TheoryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoryDescriptor")
            .field("name", &self.name)
            .field("coding_scheme_id", &self.coding_scheme_id)
            .finish_non_exhaustive()
    }
}

impl PartialEq for TheoryDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.recognizer == other.recognizer && self.coding_scheme_id == other.coding_scheme_id
    }
}

impl Eq for TheoryDescriptor {}

pub const CODING_SCHEME: &str = "polish-base64";

impl TheoryDescriptor {
    pub fn new(name: &str, recognizer: Formula) -> Result<Self, TheoryError> {
        let free = recognizer.free_variables();
        if free.len() != 1 {
            return Err(TheoryError::RecognizerArity(free.len()));
        }
        let level = classify(&recognizer);
        if !level.within(HierarchyLevel::Sigma(1)) {
            return Err(TheoryError::RecognizerLevel(level));
        }
        Ok(TheoryDescriptor {
            name: name.into(),
            recognizer,
            coding_scheme_id: CODING_SCHEME.into(),
            proof: Rc::new(OnceCell::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn recognizer(&self) -> &Formula {
        &self.recognizer
    }

    pub fn coding_scheme_id(&self) -> &str {
        &self.coding_scheme_id
    }

    pub fn recognizer_var(&self) -> Var {
        *self.recognizer.free_variables().iter().next().expect("validated arity")
    }

    /// Elementary arithmetic: Robinson's axioms, the recursion equations for
    /// exponentiation, numeral literal equations and bounded induction.
    pub fn ea() -> Self {
        let r = Var(0);
        let rt = Term::Var(r);
        let mut dsl = Dsl::above(1);
        let mut cases: Vec<Formula> = ea_axioms()
            .iter()
            .map(|s| Formula::eq(rt.clone(), Term::Numeral(encode(s.formula()).into_value())))
            .collect();
        cases.push(numeral_axiom(&mut dsl, &rt));
        cases.push(bounded_induction(&mut dsl, &rt));
        TheoryDescriptor::new("EA", Formula::or_all(cases)).expect("EA recognizer is bounded")
    }

    /// The proof predicate, built once per descriptor.
    pub fn proof_predicate(&self) -> &ProofPredicate {
        self.proof.get_or_init(|| build_proof(self))
    }
}

/// The finitely many single axioms of EA.
pub fn ea_axioms() -> Vec<Sentence> {
    [
        "forall x0 ~S(x0)=0",
        "forall x0 forall x1 (S(x0)=S(x1) -> x0=x1)",
        "forall x0 (x0=0 | exists x1 x0=S(x1))",
        "forall x0 (x0+0)=x0",
        "forall x0 forall x1 (x0+S(x1))=S((x0+x1))",
        "forall x0 (x0*0)=0",
        "forall x0 forall x1 (x0*S(x1))=((x0*x1)+x0)",
        "forall x0 forall x1 (x0<x1 -> exists x2 (S(x2)+x0)=x1)",
        "forall x0 forall x1 (exists x2 (S(x2)+x0)=x1 -> x0<x1)",
        "forall x0 exp(x0,0)=S(0)",
        "forall x0 forall x1 exp(x0,S(x1))=(exp(x0,x1)*x0)",
        "#0=0",
    ]
    .iter()
    .map(|s| parse_sentence(s).expect("well-formed axiom"))
    .collect()
}

/// `#(n+1) = S(#n)` for every `n`.
fn numeral_axiom(dsl: &mut Dsl, r: &Term) -> Formula {
    let r = r.clone();
    dsl.ex_le(&r.clone(), 1, |dsl, n| {
        let n = n[0].clone();
        dsl.layout(
            &r,
            &[
                Part::Tok(tag::EQ),
                Part::Tok(tag::NUMERAL),
                Part::Payload(Term::succ(n.clone())),
                Part::Tok(tag::SUCC),
                Part::Tok(tag::NUMERAL),
                Part::Payload(n),
            ],
        )
    })
}

/// `(A[0/v] & forall v (A -> A[S(v)/v])) -> forall v A` for bounded `A`.
fn bounded_induction(dsl: &mut Dsl, r: &Term) -> Formula {
    let r = r.clone();
    dsl.ex_le(&r.clone(), 9, |dsl, w| {
        let (a, v, la, vs, lvs, sv, a0, as_, _) = (&w[0], &w[1], &w[2], &w[3], &w[4], &w[5], &w[6], &w[7], &w[8]);
        let mut conds = Vec::new();
        conds.push(Formula::lt(Term::Zero, la.clone()));
        conds.push(dsl.str_len(a, la));
        conds.push(dsl.well_formed(a, la));
        conds.push(dsl.lacks_token(a, la, tag::FORALL));
        conds.push(dsl.lacks_token(a, la, tag::EXISTS));
        conds.push(no_binder(dsl, &r, a, v));
        conds.push(dsl.var_str(v, vs, lvs));
        conds.push(dsl.layout(sv, &[Part::Tok(tag::SUCC), Part::Sized(vs.clone(), lvs.clone())]));
        conds.push(dsl.subst_tok(a, vs, &lit(tag::ZERO.into()), a0));
        conds.push(dsl.subst_tok(a, vs, sv, as_));
        let body = dsl.ex_le(&r, 4, |dsl, c| {
            Formula::and_all([
                dsl.layout(&c[0], &[Part::Tok(tag::IMPLIES), Part::Sub(a.clone()), Part::Sub(as_.clone())]),
                dsl.layout(&c[1], &[Part::Tok(tag::FORALL), Part::Payload(v.clone()), Part::Sub(c[0].clone())]),
                dsl.layout(&c[2], &[Part::Tok(tag::AND), Part::Sub(a0.clone()), Part::Sub(c[1].clone())]),
                dsl.layout(&c[3], &[Part::Tok(tag::FORALL), Part::Payload(v.clone()), Part::Sub(a.clone())]),
                dsl.layout(&r, &[Part::Tok(tag::IMPLIES), Part::Sub(c[2].clone()), Part::Sub(c[3].clone())]),
            ])
        });
        conds.push(body);
        Formula::and_all(conds)
    })
}

fn build_proof(t: &TheoryDescriptor) -> ProofPredicate {
    let rv = t.recognizer_var();
    let mut dsl = Dsl::above_all(&[&t.recognizer]);
    let p = dsl.fresh();
    let x = dsl.fresh();
    let (pt, xt) = (Term::Var(p), Term::Var(x));
    let e = Term::Var(rv);
    let formula = dsl.ex_le(&pt.clone(), 3, |dsl, w| {
        let (wd, s, n) = (w[0].clone(), w[1].clone(), w[2].clone());
        let pairing = dsl.pair(&wd, &s, &pt);
        let last = dsl.ex_lt(&n, |dsl, m| {
            let el = dsl.elem(&s, &wd, &m, &xt);
            Formula::and(Formula::eq(n.clone(), Term::succ(m)), el)
        });
        let lines = dsl.all_lt(&n, |dsl, i| {
            let el = dsl.elem(&s, &wd, &i, &e);
            let mut cases: Vec<Formula> = logic_schemas().iter().map(|sc| recognize(dsl, &e, sc)).collect();
            cases.push(t.recognizer.clone());
            cases.push(modus_ponens(dsl, &s, &wd, &i, &e));
            cases.push(generalization(dsl, &s, &wd, &i, &e));
            Formula::bounded_exists(rv, Term::succ(s.clone()), Formula::and(el, Formula::or_all(cases)))
        });
        Formula::and_all([pairing, Formula::lt(Term::Zero, n.clone()), last, lines])
    });
    ProofPredicate { formula, proof_var: p, code_var: x }
}

fn modus_ponens(dsl: &mut Dsl, s: &Term, wd: &Term, i: &Term, e: &Term) -> Formula {
    dsl.ex_lt(i, |dsl, j| {
        dsl.ex_lt(i, |dsl, k| {
            dsl.ex_le(s, 2, |dsl, ab| {
                Formula::and_all([
                    dsl.elem(s, wd, &j, &ab[0]),
                    dsl.elem(s, wd, &k, &ab[1]),
                    dsl.imp_code(&ab[0], e, &ab[1]),
                ])
            })
        })
    })
}

fn generalization(dsl: &mut Dsl, s: &Term, wd: &Term, i: &Term, e: &Term) -> Formula {
    dsl.ex_lt(i, |dsl, j| {
        dsl.ex_le(s, 1, |dsl, a| {
            dsl.ex_le(e, 1, |dsl, v| {
                Formula::and(
                    dsl.elem(s, wd, &j, &a[0]),
                    dsl.layout(e, &[Part::Tok(tag::FORALL), Part::Payload(v[0].clone()), Part::Sub(a[0].clone())]),
                )
            })
        })
    })
}

/// `Proof(p, x)` for the theory.
pub fn build_proof_predicate(t: &TheoryDescriptor) -> Formula {
    t.proof_predicate().formula.clone()
}

/// `forall p ~Proof(p, x)` together with its free variable `x`.
pub fn con_template(t: &TheoryDescriptor) -> (Formula, Var) {
    let pp = t.proof_predicate();
    (Formula::forall(pp.proof_var, Formula::not(pp.formula.clone())), pp.code_var)
}

/// `Con_T(phi) := forall p ~Proof(p, #(phi -> bot))`.
pub fn build_con(t: &TheoryDescriptor, phi: &Sentence) -> Sentence {
    let pp = t.proof_predicate();
    let target = Formula::implies(phi.formula().clone(), Formula::Bottom);
    // the predicate's free variables are exactly p and x; substituting into
    // the cached copy avoids cloning it first
    let proof = crate::formula::substitute(&pp.formula, pp.code_var, &quote(&target));
    let f = Formula::forall(pp.proof_var, Formula::not(proof));
    Sentence::new_unchecked(f)
}

/// Recovers `phi` from a sentence of the form `Con_T(phi)`.
pub fn match_con(t: &TheoryDescriptor, s: &Formula) -> Option<Sentence> {
    let pp = t.proof_predicate();
    let Formula::ForAll(p, body) = s else { return None };
    if *p != pp.proof_var {
        return None;
    }
    let Formula::Not(inner) = body.as_ref() else { return None };
    let code = find_code_argument(&pp.formula, inner, pp.code_var)?;
    let Formula::Implies(phi, bot) = crate::coding::decode(&code).ok()? else { return None };
    if *bot != Formula::Bottom {
        return None;
    }
    let phi = Sentence::new(*phi).ok()?;
    (build_con(t, &phi).formula() == s).then_some(phi)
}

/// Finds the numeral substituted for `x` by comparing with the template at the first differing term.
fn find_code_argument(template: &Formula, instance: &Formula, x: Var) -> Option<num_bigint::BigUint> {
    let mut found = None;
    let mut stack = alloc::vec![(template, instance)];
    while let Some((a, b)) = stack.pop() {
        match (a, b) {
            (Formula::Eq(t1, t2), Formula::Eq(u1, u2)) | (Formula::Lt(t1, t2), Formula::Lt(u1, u2)) => {
                for (t, u) in [(t1, u1), (t2, u2)] {
                    if let Some(n) = term_arg(t, u, x) {
                        found = Some(n);
                    }
                }
            }
            (Formula::Not(a), Formula::Not(b)) => stack.push((a, b)),
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Implies(a1, a2), Formula::Implies(b1, b2)) => {
                stack.push((a1, b1));
                stack.push((a2, b2));
            }
            (Formula::ForAll(_, a), Formula::ForAll(_, b)) | (Formula::Exists(_, a), Formula::Exists(_, b)) => {
                stack.push((a, b))
            }
            (Formula::BoundedForAll(_, t, a), Formula::BoundedForAll(_, u, b))
            | (Formula::BoundedExists(_, t, a), Formula::BoundedExists(_, u, b)) => {
                if let Some(n) = term_arg(t, u, x) {
                    found = Some(n);
                }
                stack.push((a, b));
            }
            _ => {}
        }
        if found.is_some() {
            break;
        }
    }
    found
}

fn term_arg(t: &Term, u: &Term, x: Var) -> Option<num_bigint::BigUint> {
    match (t, u) {
        (Term::Var(v), Term::Numeral(n)) if *v == x => Some(n.clone()),
        (Term::Succ(a), Term::Succ(b)) => term_arg(a, b, x),
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) | (Term::Exp(a1, a2), Term::Exp(b1, b2)) => {
            term_arg(a1, b1, x).or_else(|| term_arg(a2, b2, x))
        }
        _ => None,
    }
}
