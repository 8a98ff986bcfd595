//! Graphs of recursive operators, sentence A, and the Sigma_1 facts a graph licenses.
//!
//! Sentence A for an operator with graph `G(x, y)` reads
//!
//! ```text
//! forall x forall y ((G(x, y) & True_Pi_k(y)) -> Con(x))
//! ```
//!
//! where `Con(x)` is consistency of the sentence coded by `x`, stated with
//! the proof predicate applied to the code of `x -> bot`.

use alloc::rc::Rc;
use alloc::string::String;
use core::fmt;

use super::diagonal::con_of_code;
use super::theory::{build_con, con_template, TheoryDescriptor};
use super::toolkit::{Dsl, Part};
use super::truth::{build_partial_truth, TruthPredicateError, TRUTH_VAR};
use crate::coding::{encode, quote, tag, tokens_to_value, var_tokens};
use crate::entailment::{FactId, FactStore, Provenance, SchematicFact};
use crate::formula::{classify, substitute, substitute_all, Formula, HierarchyLevel, Sentence, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Free variables other than the input and output variables.
    Arity(usize),
    /// Graphs must be bounded or Sigma_1.
    Level(HierarchyLevel),
    SameVariable,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Arity(n) => write!(f, "graph formula has {n} free variables outside x and y"),
            GraphError::Level(l) => write!(f, "graph formula is {l}, expected Delta0 or Sigma1"),
            GraphError::SameVariable => write!(f, "graph input and output variables coincide"),
        }
    }
}

impl core::error::Error for GraphError {}

type ApplyFn = Rc<dyn Fn(&Sentence) -> Sentence>;

/// The registered graph `G(x, y)` of a recursive operator together with the
/// operator itself, so that instances can be checked against it.
#[derive(Clone)]
pub struct Graph {
    name: String,
    formula: Formula,
    x: Var,
    y: Var,
    apply: ApplyFn,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("name", &self.name).field("x", &self.x).field("y", &self.y).finish_non_exhaustive()
    }
}

impl Graph {
    pub fn new(
        name: &str,
        formula: Formula,
        x: Var,
        y: Var,
        apply: impl Fn(&Sentence) -> Sentence + 'static,
    ) -> Result<Graph, GraphError> {
        if x == y {
            return Err(GraphError::SameVariable);
        }
        let extra = formula.free_variables().into_iter().filter(|v| *v != x && *v != y).count();
        if extra > 0 {
            return Err(GraphError::Arity(extra));
        }
        let level = classify(&formula);
        if !level.within(HierarchyLevel::Sigma(1)) {
            return Err(GraphError::Level(level));
        }
        Ok(Graph { name: name.into(), formula, x, y, apply: Rc::new(apply) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn vars(&self) -> (Var, Var) {
        (self.x, self.y)
    }

    pub fn apply(&self, phi: &Sentence) -> Sentence {
        (self.apply)(phi)
    }

    /// `G(#phi, #psi)`.
    pub fn instance(&self, phi: &Sentence, psi: &Sentence) -> Sentence {
        let f = substitute_all(&self.formula, &[(self.x, quote(phi.formula())), (self.y, quote(psi.formula()))]);
        Sentence::new(f).expect("both graph variables instantiated")
    }

    /// `x = y`.
    pub fn identity() -> Graph {
        let (x, y) = (Var(0), Var(1));
        Graph::new("identity", Formula::eq(Term::Var(x), Term::Var(y)), x, y, |phi| phi.clone())
            .expect("bounded graph")
    }

    /// `y = #top`.
    pub fn const_top() -> Graph {
        let (x, y) = (Var(0), Var(1));
        Graph::new("const_top", Formula::eq(Term::Var(y), quote(&Formula::Top)), x, y, |_| Sentence::top())
            .expect("bounded graph")
    }

    /// `y = #Con(top)`.
    pub fn const_con_top(t: &TheoryDescriptor) -> Graph {
        let (x, y) = (Var(0), Var(1));
        let con_top = build_con(t, &Sentence::top());
        let f = Formula::eq(Term::Var(y), quote(con_top.formula()));
        Graph::new("const_con_top", f, x, y, move |_| con_top.clone()).expect("bounded graph")
    }

    /// `y` codes `Con(phi)` where `x` codes `phi`: the code of `x -> bot`
    /// replaces the code variable in the code of the consistency template.
    pub fn con(t: &TheoryDescriptor) -> Graph {
        let (template, xt) = con_template(t);
        let template_code = Term::Numeral(encode(&template).into_value());
        let xt_str = Term::Numeral(tokens_to_value(&var_tokens(xt)));
        let mut dsl = Dsl::above_all(&[&template]);
        let x = dsl.fresh();
        let y = dsl.fresh();
        let (xv, yv) = (Term::Var(x), Term::Var(y));
        let f = dsl.ex_le(&yv.clone(), 3, |dsl, w| {
            let (d, ns, lns) = (&w[0], &w[1], &w[2]);
            Formula::and_all([
                dsl.layout(d, &[Part::Tok(tag::IMPLIES), Part::Sub(xv.clone()), Part::Tok(tag::BOTTOM)]),
                dsl.numeral_str(d, ns, lns),
                dsl.subst_tok(&template_code, &xt_str, ns, &yv),
            ])
        });
        let t = t.clone();
        Graph::new("con", f, x, y, move |phi| build_con(&t, phi)).expect("bounded graph")
    }
}

/// `forall x forall y ((G(x, y) & True_Pi_k(y)) -> Con(x))`.
pub fn build_sentence_a(g: &Graph, k: u32, t: &TheoryDescriptor) -> Result<Sentence, TruthPredicateError> {
    let truth = build_partial_truth(k)?;
    let pp = t.proof_predicate();
    let mut dsl = Dsl::above_all(&[&truth, &g.formula, &pp.formula]);
    let x = dsl.fresh();
    let y = TRUTH_VAR;
    let gxy = substitute(&substitute(&g.formula, g.x, &Term::Var(x)), g.y, &Term::Var(y));
    let con = con_of_code(&mut dsl, t, &Term::Var(x));
    let body = Formula::implies(Formula::and(gxy, truth), con);
    Ok(Sentence::new(Formula::forall(x, Formula::forall(y, body))).expect("x and y are the only free variables"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactError {
    /// The registered operator maps the input elsewhere.
    Disagreement { expected: Sentence, given: Sentence },
}

impl fmt::Display for FactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactError::Disagreement { expected, given } => {
                write!(f, "operator output is {expected}, not {given}")
            }
        }
    }
}

impl core::error::Error for FactError {}

/// Records the true Sigma_1 sentence `G(#phi, #psi)` as an assumption.
pub fn sigma1_fact(g: &Graph, phi: &Sentence, psi: &Sentence, store: &mut FactStore) -> Result<FactId, FactError> {
    let expected = g.apply(phi);
    if expected != *psi {
        return Err(FactError::Disagreement { expected, given: psi.clone() });
    }
    Ok(store.add(SchematicFact {
        sentence: g.instance(phi, psi),
        provenance: Provenance::GraphInstance { operator: g.name.clone() },
    }))
}
