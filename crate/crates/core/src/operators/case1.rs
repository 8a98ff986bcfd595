//! The six-line derivation of `phi + g(phi) |- Con(phi)` for `phi` in the
//! cone of sentence A.
//!
//! ```text
//! 1 | A                                  | Fact(cone)
//! 2 | (G(#phi,#psi) & True(#psi)) -> Con(#phi) | Instantiation(1;#phi;#psi)
//! 3 | G(#phi,#psi)                       | Fact(graph)
//! 4 | True(#psi) -> Con(#phi)            | Logic(2,3)
//! 5 | psi -> Con(#phi)                   | Logic(4,reflection)
//! 6 | psi -> Con(#phi)                   | PriorStep(5)
//! ```
//!
//! with `psi = g(phi)`. The reflection fact is `psi -> True(#psi)` for the
//! Pi_k sentence `psi`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Operator;
use crate::arith::{build_sentence_a, sigma1_fact, FactError, Graph, TheoryDescriptor, TruthPredicateError};
use crate::coding::quote;
use crate::entailment::{
    Certificate, FactId, FactStore, Justification, Premise, Provenance, SchematicFact, Step,
};
use crate::formula::{classify, substitute, Formula, HierarchyLevel, Sentence, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Case1Facts {
    pub cone: FactId,
    pub graph: FactId,
    pub reflection: FactId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case1Error {
    NoGraph(String),
    Truth(TruthPredicateError),
    Fact(FactError),
    /// `g(phi)` is above the truth predicate's level.
    Level { level: HierarchyLevel, k: u32 },
    MissingFact(&'static str),
}

impl fmt::Display for Case1Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case1Error::NoGraph(id) => write!(f, "operator {id} has no registered graph"),
            Case1Error::Truth(e) => write!(f, "{e}"),
            Case1Error::Fact(e) => write!(f, "{e}"),
            Case1Error::Level { level, k } => write!(f, "output is {level}, above Pi_{k}"),
            Case1Error::MissingFact(which) => write!(f, "the {which} fact is not registered"),
        }
    }
}

impl core::error::Error for Case1Error {}

struct Parts {
    a: Sentence,
    psi: Sentence,
    terms: Vec<Term>,
    instance: Sentence,
    graph_fact: Sentence,
    truth_fact: Formula,
    con: Formula,
}

fn graph_of(g: &Operator<Sentence>) -> Result<&Graph, Case1Error> {
    g.graph().ok_or_else(|| Case1Error::NoGraph(g.id().into()))
}

fn parts(phi: &Sentence, g: &Operator<Sentence>, k: u32, t: &TheoryDescriptor) -> Result<Parts, Case1Error> {
    let graph = graph_of(g)?;
    let a = build_sentence_a(graph, k, t).map_err(Case1Error::Truth)?;
    let psi = g.apply(phi);
    let level = classify(psi.formula());
    if !level.within(HierarchyLevel::Pi(k)) {
        return Err(Case1Error::Level { level, k });
    }
    let terms = vec![quote(phi.formula()), quote(psi.formula())];
    // same stripping as the certificate checker
    let mut f = a.formula().clone();
    for term in &terms {
        let Formula::ForAll(v, body) = f else { unreachable!("A opens with two universal quantifiers") };
        f = substitute(&body, v, term);
    }
    let Formula::Implies(lhs, con) = &f else { unreachable!("A's matrix is an implication") };
    let Formula::And(graph_fact, truth_fact) = &**lhs else { unreachable!("A's antecedent is a conjunction") };
    let sentence = |f: &Formula| Sentence::new(f.clone()).expect("instantiated at closed terms");
    Ok(Parts {
        graph_fact: sentence(graph_fact),
        truth_fact: (**truth_fact).clone(),
        con: (**con).clone(),
        instance: sentence(&f),
        a,
        psi,
        terms,
    })
}

fn reflection(p: &Parts) -> Sentence {
    Sentence::new(Formula::implies(p.psi.formula().clone(), p.truth_fact.clone())).expect("closed")
}

/// Registers `A` as a cone hypothesis, the graph instance `G(#phi, #g(phi))`
/// and the reflection fact for `g(phi)`.
pub fn register_case1(
    phi: &Sentence,
    g: &Operator<Sentence>,
    k: u32,
    t: &TheoryDescriptor,
    store: &mut FactStore,
) -> Result<Case1Facts, Case1Error> {
    let p = parts(phi, g, k, t)?;
    let cone = store.add(SchematicFact { sentence: p.a.clone(), provenance: Provenance::ConeMembership });
    let graph = sigma1_fact(graph_of(g)?, phi, &p.psi, store).map_err(Case1Error::Fact)?;
    let reflection = store.add(SchematicFact { sentence: reflection(&p), provenance: Provenance::TruthReflection });
    Ok(Case1Facts { cone, graph, reflection })
}

/// Emits the derivation from facts already in `store`.
pub fn thm4_certificate(
    phi: &Sentence,
    g: &Operator<Sentence>,
    k: u32,
    t: &TheoryDescriptor,
    store: &FactStore,
) -> Result<Certificate, Case1Error> {
    let p = parts(phi, g, k, t)?;
    let find = |s: &Sentence, prov: Provenance, which| store.find(s, &prov).ok_or(Case1Error::MissingFact(which));
    let cone = find(&p.a, Provenance::ConeMembership, "cone")?;
    let graph = find(&p.graph_fact, Provenance::GraphInstance { operator: graph_of(g)?.name().into() }, "graph")?;
    let refl = find(&reflection(&p), Provenance::TruthReflection, "reflection")?;

    let sentence = |f: Formula| Sentence::new(f).expect("closed");
    let truth_to_con = sentence(Formula::implies(p.truth_fact.clone(), p.con.clone()));
    let conclusion = sentence(Formula::implies(p.psi.formula().clone(), p.con.clone()));
    let steps = vec![
        Step { claim: p.a.clone(), justification: Justification::Fact(cone) },
        Step { claim: p.instance, justification: Justification::Instantiation { from: 1, terms: p.terms } },
        Step { claim: p.graph_fact, justification: Justification::Fact(graph) },
        Step { claim: truth_to_con, justification: Justification::Logic(vec![Premise::Step(2), Premise::Step(3)]) },
        Step {
            claim: conclusion.clone(),
            justification: Justification::Logic(vec![Premise::Step(4), Premise::Fact(refl)]),
        },
        Step { claim: conclusion, justification: Justification::PriorStep(5) },
    ];
    Ok(Certificate { steps })
}

/// A change to one step of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edit {
    NegateClaim,
    /// Take the claim of this step (numbered from 1).
    ClaimOf(usize),
    Justify(Justification),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    /// Numbered from 1.
    pub step: usize,
    pub edit: Edit,
}

impl Mutation {
    pub fn apply(&self, c: &Certificate) -> Certificate {
        let mut m = c.clone();
        let s = &mut m.steps[self.step - 1];
        match &self.edit {
            Edit::NegateClaim => s.claim = negate(&s.claim),
            Edit::ClaimOf(j) => s.claim = c.steps[j - 1].claim.clone(),
            Edit::Justify(j) => s.justification = j.clone(),
        }
        m
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.edit {
            Edit::NegateClaim => write!(f, "step {}: negated claim", self.step),
            Edit::ClaimOf(j) => write!(f, "step {}: claim of step {j}", self.step),
            Edit::Justify(j) => write!(f, "step {}: justified by {j}", self.step),
        }
    }
}

/// Single-step changes to `c`: a negated claim, another step's claim, or
/// a justification citing other steps, facts or terms.
pub fn certificate_mutations(c: &Certificate, facts: &FactStore) -> Vec<Mutation> {
    let ids: Vec<FactId> = facts.iter().map(|(id, _)| id).collect();
    // step references, valid or not
    let refs: Vec<usize> = (0..=c.steps.len()).collect();
    let mut out = Vec::new();
    for (i, step) in c.steps.iter().enumerate() {
        let n = i + 1;
        out.push(Mutation { step: n, edit: Edit::NegateClaim });
        for (j, other) in c.steps.iter().enumerate() {
            if other.claim != step.claim {
                out.push(Mutation { step: n, edit: Edit::ClaimOf(j + 1) });
            }
        }
        let mut just: Vec<Justification> = Vec::new();
        match &step.justification {
            Justification::Fact(_) => just.extend(ids.iter().map(|&o| Justification::Fact(o))),
            Justification::Logic(ps) => {
                for (pi, p) in ps.iter().enumerate() {
                    let mut dropped = ps.clone();
                    dropped.remove(pi);
                    just.push(Justification::Logic(dropped));
                    let swaps: Vec<Premise> = match p {
                        Premise::Step(_) => refs.iter().map(|&r| Premise::Step(r)).collect(),
                        Premise::Fact(_) => ids.iter().map(|&f| Premise::Fact(f)).collect(),
                    };
                    for q in swaps.into_iter().filter(|q| !ps.contains(q)) {
                        let mut swapped = ps.clone();
                        swapped[pi] = q;
                        just.push(Justification::Logic(swapped));
                    }
                }
            }
            Justification::Instantiation { from, terms } => {
                let inst = |from: usize, terms: Vec<Term>| Justification::Instantiation { from, terms };
                just.extend(refs.iter().map(|&r| inst(r, terms.clone())));
                let mut rev = terms.clone();
                rev.reverse();
                just.push(inst(*from, rev));
                for ti in 0..terms.len() {
                    let mut z = terms.clone();
                    z[ti] = Term::Zero;
                    just.push(inst(*from, z));
                    let mut short = terms.clone();
                    short.remove(ti);
                    just.push(inst(*from, short));
                }
            }
            Justification::PriorStep(_) => just.extend(refs.iter().map(|&r| Justification::PriorStep(r))),
            Justification::Monotonicity(_) => just.extend(refs.iter().map(|&r| Justification::Monotonicity(r))),
        }
        for j in just {
            if j != step.justification {
                out.push(Mutation { step: n, edit: Edit::Justify(j) });
            }
        }
    }
    out
}

fn negate(s: &Sentence) -> Sentence {
    Sentence::new(Formula::not(s.formula().clone())).expect("closed")
}
