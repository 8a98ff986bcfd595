//! Operators on sentences, Lindenbaum-class comparisons and the experiments
//! built on them.

mod case1;
mod claims;
mod dichotomy;
mod thm13;

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{build_con, Graph, TheoryDescriptor};
use crate::construction::{Enumeration, Language};
use crate::entailment::{EntailmentError, Oracle, Verdict};
use crate::formula::{HierarchyLevel, Sentence};
use crate::modal::{mock_con, mock_iterated_con, ModalFormula};

pub use case1::{certificate_mutations, register_case1, thm4_certificate, Case1Error, Case1Facts, Edit, Mutation};
pub use claims::{thm13_claims, ClaimCheck, ClaimsError, ClaimsReport};
pub use dichotomy::{dichotomy, Case, DichotomyError, DichotomyReport, Sample};
pub use thm13::{thm13_g, thm13_g_with, Thm13Error};

/// A map on sentences, with the output level and graph formula it declares.
#[derive(Clone)]
pub struct Operator<S> {
    id: String,
    apply: Rc<dyn Fn(&S) -> S>,
    level: Option<HierarchyLevel>,
    graph: Option<Graph>,
}

impl<S> fmt::Debug for Operator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator").field("id", &self.id).field("level", &self.level).finish_non_exhaustive()
    }
}

impl<S> Operator<S> {
    pub fn new(id: &str, apply: impl Fn(&S) -> S + 'static) -> Self {
        Operator { id: id.into(), apply: Rc::new(apply), level: None, graph: None }
    }

    pub fn with_level(mut self, level: HierarchyLevel) -> Self {
        self.level = Some(level);
        self
    }

    pub fn with_graph(mut self, graph: Graph) -> Self {
        self.graph = Some(graph);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn apply(&self, s: &S) -> S {
        (self.apply)(s)
    }

    pub fn level(&self) -> Option<HierarchyLevel> {
        self.level
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }
}

impl Operator<ModalFormula> {
    pub fn const_top() -> Self {
        Operator::new("const_top", |_| ModalFormula::Top)
    }

    pub fn con_op() -> Self {
        Operator::new("con", mock_con)
    }

    pub fn con_n_op(n: u32) -> Self {
        Operator::new(&format!("con^{n}"), move |f| mock_iterated_con(n, f))
    }

    pub fn identity() -> Self {
        Operator::new("identity", ModalFormula::clone)
    }

    pub fn const_con_top() -> Self {
        Operator::new("const_con_top", |_| mock_con(&ModalFormula::Top))
    }

    /// Swaps `top` and `bot` and fixes everything else; not monotone.
    pub fn broken() -> Self {
        Operator::new("broken", |f| match f {
            ModalFormula::Top => ModalFormula::Bottom,
            ModalFormula::Bottom => ModalFormula::Top,
            other => other.clone(),
        })
    }

    /// `thm13_g` over the construction for `e`, run as deep as each input needs.
    pub fn thm13(e: Enumeration<ModalFormula>) -> Self {
        let gl = crate::entailment::GlProvider::new();
        Operator::new("thm13", move |f| {
            let depth = e.stage_bound(f).unwrap_or(0);
            let tr = crate::construction::run_stages(&e, depth, Rc::new(mock_con));
            thm13_g(f, &tr, &gl).expect("GL decides every query and the trace is deep enough")
        })
    }
}

impl Operator<Sentence> {
    pub fn const_top() -> Self {
        Operator::new("const_top", |_| Sentence::top()).with_level(HierarchyLevel::Delta0).with_graph(Graph::const_top())
    }

    pub fn identity() -> Self {
        Operator::new("identity", Sentence::clone).with_graph(Graph::identity())
    }

    pub fn con_op(t: &TheoryDescriptor) -> Self {
        let th = t.clone();
        Operator::new("con", move |f| build_con(&th, f)).with_level(HierarchyLevel::Pi(1)).with_graph(Graph::con(t))
    }

    pub fn const_con_top(t: &TheoryDescriptor) -> Self {
        let c = build_con(t, &Sentence::top());
        Operator::new("const_con_top", move |_| c.clone())
            .with_level(HierarchyLevel::Pi(1))
            .with_graph(Graph::const_con_top(t))
    }
}

/// A query the provider could not settle, or a provider error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryError {
    Oracle(EntailmentError),
    Undecided(String),
}

impl fmt::Display for QueryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryError::Oracle(e) => write!(f, "{e}"),
            QueryError::Undecided(q) => write!(f, "provider could not decide {q}"),
        }
    }
}

impl core::error::Error for QueryError {}

fn query<S: Language>(o: &dyn Oracle<S>, ctx: &[S], goal: &S) -> Result<Option<bool>, EntailmentError> {
    Ok(match o.entails(ctx, goal)? {
        Verdict::Provable => Some(true),
        Verdict::Unknown => None,
        _ => Some(false),
    })
}

pub(crate) fn provable<S: Language>(o: &dyn Oracle<S>, ctx: &[S], goal: &S) -> Result<bool, QueryError> {
    query(o, ctx, goal).map_err(QueryError::Oracle)?.ok_or_else(|| {
        let ctx: Vec<String> = ctx.iter().map(|s| format!("{s}")).collect();
        QueryError::Undecided(format!("[{}] |- {goal}", ctx.join(", ")))
    })
}

/// `[a] = [b]`.
pub fn class_equal<S: Language>(a: &S, b: &S, o: &dyn Oracle<S>) -> Result<bool, QueryError> {
    Ok(provable(o, core::slice::from_ref(a), b)? && provable(o, core::slice::from_ref(b), a)?)
}

/// `phi` proves `psi` but not conversely, or both are inconsistent.
pub fn strict_implies<S: Language>(phi: &S, psi: &S, o: &dyn Oracle<S>) -> Result<bool, QueryError> {
    let forward = provable(o, core::slice::from_ref(phi), psi)?;
    if forward && !provable(o, core::slice::from_ref(psi), phi)? {
        return Ok(true);
    }
    let bot = S::bottom();
    Ok(provable(o, core::slice::from_ref(phi), &bot)? && provable(o, core::slice::from_ref(psi), &bot)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneReport<S> {
    /// Pairs with `phi |- psi` whose images were compared.
    pub checked: usize,
    pub violations: Vec<(S, S)>,
    pub inconclusive: Vec<(S, S)>,
}

/// For each pair with `phi |- psi`, checks `g(phi) |- g(psi)`.
pub fn monotone_check<S: Language>(
    g: &Operator<S>,
    pairs: &[(S, S)],
    o: &dyn Oracle<S>,
) -> Result<MonotoneReport<S>, EntailmentError> {
    let mut r = MonotoneReport { checked: 0, violations: Vec::new(), inconclusive: Vec::new() };
    for (a, b) in pairs {
        match query(o, core::slice::from_ref(a), b)? {
            None => r.inconclusive.push((a.clone(), b.clone())),
            Some(false) => {}
            Some(true) => match query(o, &[g.apply(a)], &g.apply(b))? {
                None => r.inconclusive.push((a.clone(), b.clone())),
                Some(ok) => {
                    r.checked += 1;
                    if !ok {
                        r.violations.push((a.clone(), b.clone()));
                    }
                }
            },
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests;
