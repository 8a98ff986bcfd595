//! Logical axiom schemas of the Hilbert calculus and their bounded recognizers.
//!
//! A schema is a pattern over metavariables (`A`, `B`, `C` for formulas,
//! `t` for a term, `v`, `w` for variable indices) plus side conditions. The
//! recognizer for a schema says "the code `e` matches the pattern for some
//! choice of metavariables", with each pattern node given its own witness.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use super::toolkit::{lit, Dsl, Part};
use crate::coding::tag;
use crate::formula::{Formula, Term, Var};

#[derive(Clone, Debug)]
pub enum Pat {
    /// Formula metavariable.
    M(usize),
    /// Term metavariable.
    T(usize),
    /// The variable whose index is metavariable `v`, as a term.
    VarT(usize),
    Bot,
    Top,
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Or(Box<Pat>, Box<Pat>),
    Imp(Box<Pat>, Box<Pat>),
    Eq(Box<Pat>, Box<Pat>),
    Lt(Box<Pat>, Box<Pat>),
    All(usize, Box<Pat>),
    Ex(usize, Box<Pat>),
    BAll(usize, Box<Pat>, Box<Pat>),
    BEx(usize, Box<Pat>, Box<Pat>),
}

#[derive(Clone, Debug)]
pub enum Side {
    /// Term metavariable contains no variable.
    Closed(usize),
    /// Formula `dst` is formula `src` with variable `v` replaced by term `by`.
    SubstTerm { src: usize, v: usize, by: usize, dst: usize },
    /// Formula `dst` is formula `src` with variable `v` replaced by variable `w`.
    SubstVar { src: usize, v: usize, w: usize, dst: usize },
    /// Variable `v` does not occur in formula `m`.
    NoOcc { m: usize, v: usize },
    /// Variable `v` is not bound by any quantifier inside formula `m`.
    NoBinder { m: usize, v: usize },
    /// Variable `v` does not occur in term `t`.
    TermNoOcc { t: usize, v: usize },
}

#[derive(Clone, Debug)]
pub struct Schema {
    pub name: &'static str,
    pub pattern: Pat,
    pub sides: Vec<Side>,
}

fn b(p: Pat) -> Box<Pat> {
    Box::new(p)
}

fn imp(a: Pat, c: Pat) -> Pat {
    Pat::Imp(b(a), b(c))
}

fn not(a: Pat) -> Pat {
    Pat::Not(b(a))
}

fn and(a: Pat, c: Pat) -> Pat {
    Pat::And(b(a), b(c))
}

fn or(a: Pat, c: Pat) -> Pat {
    Pat::Or(b(a), b(c))
}

const A: Pat = Pat::M(0);
const B: Pat = Pat::M(1);
const C: Pat = Pat::M(2);

/// The fixed list of logical axiom schemas.
pub fn logic_schemas() -> Vec<Schema> {
    use Pat::*;
    let s = |name, pattern, sides| Schema { name, pattern, sides };
    alloc::vec![
        s("K", imp(A, imp(B, A)), alloc::vec![]),
        s("S", imp(imp(A, imp(B, C)), imp(imp(A, B), imp(A, C))), alloc::vec![]),
        s("Contra", imp(imp(not(B), not(A)), imp(A, B)), alloc::vec![]),
        s("BotE", imp(Bot, A), alloc::vec![]),
        s("TopI", Top, alloc::vec![]),
        s("AndI", imp(A, imp(B, and(A, B))), alloc::vec![]),
        s("AndE1", imp(and(A, B), A), alloc::vec![]),
        s("AndE2", imp(and(A, B), B), alloc::vec![]),
        s("OrI1", imp(A, or(A, B)), alloc::vec![]),
        s("OrI2", imp(B, or(A, B)), alloc::vec![]),
        s("OrE", imp(imp(A, C), imp(imp(B, C), imp(or(A, B), C))), alloc::vec![]),
        s("ExDef1", imp(Ex(0, b(A)), not(All(0, b(not(A))))), alloc::vec![]),
        s("ExDef2", imp(not(All(0, b(not(A)))), Ex(0, b(A))), alloc::vec![]),
        s(
            "BAll1",
            imp(BAll(0, b(T(0)), b(A)), All(0, b(imp(Lt(b(VarT(0)), b(T(0))), A)))),
            alloc::vec![Side::TermNoOcc { t: 0, v: 0 }]
        ),
        s(
            "BAll2",
            imp(All(0, b(imp(Lt(b(VarT(0)), b(T(0))), A))), BAll(0, b(T(0)), b(A))),
            alloc::vec![Side::TermNoOcc { t: 0, v: 0 }]
        ),
        s(
            "BEx1",
            imp(BEx(0, b(T(0)), b(A)), Ex(0, b(and(Lt(b(VarT(0)), b(T(0))), A)))),
            alloc::vec![Side::TermNoOcc { t: 0, v: 0 }]
        ),
        s(
            "BEx2",
            imp(Ex(0, b(and(Lt(b(VarT(0)), b(T(0))), A))), BEx(0, b(T(0)), b(A))),
            alloc::vec![Side::TermNoOcc { t: 0, v: 0 }]
        ),
        s(
            "Inst",
            imp(All(0, b(A)), B),
            alloc::vec![
                Side::Closed(0),
                Side::NoBinder { m: 0, v: 0 },
                Side::SubstTerm { src: 0, v: 0, by: 0, dst: 1 }
            ]
        ),
        s(
            "AllImp",
            imp(All(0, b(imp(A, B))), imp(A, All(0, b(B)))),
            alloc::vec![Side::NoOcc { m: 0, v: 0 }]
        ),
        s("Refl", Eq(b(VarT(0)), b(VarT(0))), alloc::vec![]),
        s(
            "Leibniz",
            imp(Eq(b(VarT(0)), b(VarT(1))), imp(A, B)),
            alloc::vec![
                Side::NoBinder { m: 0, v: 0 },
                Side::NoBinder { m: 0, v: 1 },
                Side::SubstVar { src: 0, v: 0, w: 1, dst: 1 }
            ]
        ),
    ]
}

struct Counts {
    m: usize,
    t: usize,
    v: usize,
}

fn counts(p: &Pat, c: &mut Counts) {
    match p {
        Pat::M(i) => c.m = c.m.max(i + 1),
        Pat::T(i) => c.t = c.t.max(i + 1),
        Pat::VarT(i) => c.v = c.v.max(i + 1),
        Pat::Bot | Pat::Top => {}
        Pat::Not(a) => counts(a, c),
        Pat::And(a, d) | Pat::Or(a, d) | Pat::Imp(a, d) | Pat::Eq(a, d) | Pat::Lt(a, d) => {
            counts(a, c);
            counts(d, c);
        }
        Pat::All(v, a) | Pat::Ex(v, a) => {
            c.v = c.v.max(v + 1);
            counts(a, c);
        }
        Pat::BAll(v, t, a) | Pat::BEx(v, t, a) => {
            c.v = c.v.max(v + 1);
            counts(t, c);
            counts(a, c);
        }
    }
}

fn side_counts(s: &Side, c: &mut Counts) {
    match *s {
        Side::Closed(t) => c.t = c.t.max(t + 1),
        Side::SubstTerm { src, v, by, dst } => {
            c.m = c.m.max(src.max(dst) + 1);
            c.v = c.v.max(v + 1);
            c.t = c.t.max(by + 1);
        }
        Side::SubstVar { src, v, w, dst } => {
            c.m = c.m.max(src.max(dst) + 1);
            c.v = c.v.max(v.max(w) + 1);
        }
        Side::NoOcc { m, v } | Side::NoBinder { m, v } => {
            c.m = c.m.max(m + 1);
            c.v = c.v.max(v + 1);
        }
        Side::TermNoOcc { t, v } => {
            c.t = c.t.max(t + 1);
            c.v = c.v.max(v + 1);
        }
    }
}

struct Metas {
    m: Vec<Term>,
    t: Vec<Term>,
    v: Vec<Term>,
}

/// Recognizer of the schema applied to the code `e`.
pub fn recognize(dsl: &mut Dsl, e: &Term, schema: &Schema) -> Formula {
    let mut c = Counts { m: 0, t: 0, v: 0 };
    counts(&schema.pattern, &mut c);
    for s in &schema.sides {
        side_counts(s, &mut c);
    }
    let total = c.m + c.t + c.v;
    let e = e.clone();
    dsl.ex_le(&e.clone(), total, |dsl, vars| {
        let metas = Metas {
            m: vars[..c.m].to_vec(),
            t: vars[c.m..c.m + c.t].to_vec(),
            v: vars[c.m + c.t..].to_vec(),
        };
        let mut conds = Vec::new();
        for x in metas.m.iter().chain(metas.t.iter()) {
            conds.push(well_formed_code(dsl, &e, x));
        }
        for s in &schema.sides {
            conds.push(side(dsl, &e, &metas, s));
        }
        let mut nodes = Vec::new();
        let root = node(dsl, &schema.pattern, &metas, &mut conds, &mut nodes);
        conds.push(Formula::eq(e.clone(), root));
        let mut f = Formula::and_all(conds);
        for v in nodes.into_iter().rev() {
            f = Formula::bounded_exists(v, Term::succ(e.clone()), f);
        }
        f
    })
}

fn well_formed_code(dsl: &mut Dsl, bound: &Term, x: &Term) -> Formula {
    dsl.ex_le(bound, 1, |dsl, l| {
        let len = dsl.str_len(x, &l[0]);
        let wf = dsl.well_formed(x, &l[0]);
        Formula::and_all([Formula::lt(Term::Zero, l[0].clone()), len, wf])
    })
}

fn node(dsl: &mut Dsl, p: &Pat, metas: &Metas, conds: &mut Vec<Formula>, nodes: &mut Vec<Var>) -> Term {
    let parts: Vec<Part> = match p {
        Pat::M(i) => return metas.m[*i].clone(),
        Pat::T(i) => return metas.t[*i].clone(),
        Pat::VarT(i) => alloc::vec![Part::Tok(tag::VAR), Part::Payload(metas.v[*i].clone())],
        Pat::Bot => return lit(tag::BOTTOM.into()),
        Pat::Top => return lit(tag::TOP.into()),
        Pat::Not(a) => alloc::vec![Part::Tok(tag::NOT), Part::Sub(node(dsl, a, metas, conds, nodes))],
        Pat::And(a, c) | Pat::Or(a, c) | Pat::Imp(a, c) | Pat::Eq(a, c) | Pat::Lt(a, c) => {
            let t = match p {
                Pat::And(..) => tag::AND,
                Pat::Or(..) => tag::OR,
                Pat::Imp(..) => tag::IMPLIES,
                Pat::Eq(..) => tag::EQ,
                _ => tag::LT,
            };
            let x = node(dsl, a, metas, conds, nodes);
            let y = node(dsl, c, metas, conds, nodes);
            alloc::vec![Part::Tok(t), Part::Sub(x), Part::Sub(y)]
        }
        Pat::All(v, a) | Pat::Ex(v, a) => {
            let t = if matches!(p, Pat::All(..)) { tag::FORALL } else { tag::EXISTS };
            let x = node(dsl, a, metas, conds, nodes);
            alloc::vec![Part::Tok(t), Part::Payload(metas.v[*v].clone()), Part::Sub(x)]
        }
        Pat::BAll(v, bound, a) | Pat::BEx(v, bound, a) => {
            let t = if matches!(p, Pat::BAll(..)) { tag::BFORALL } else { tag::BEXISTS };
            let y = node(dsl, bound, metas, conds, nodes);
            let x = node(dsl, a, metas, conds, nodes);
            alloc::vec![Part::Tok(t), Part::Payload(metas.v[*v].clone()), Part::Sub(y), Part::Sub(x)]
        }
    };
    let c = dsl.fresh();
    nodes.push(c);
    let ct = Term::Var(c);
    conds.push(dsl.layout(&ct, &parts));
    ct
}

/// Code string of variable `v` with its length, as witnesses bounded by `bound`.
fn with_var_str(dsl: &mut Dsl, bound: &Term, v: &Term, body: impl FnOnce(&mut Dsl, &Term, &Term) -> Formula) -> Formula {
    let v = v.clone();
    dsl.ex_le(bound, 2, |dsl, w| {
        let def = dsl.var_str(&v, &w[0], &w[1]);
        let rest = body(dsl, &w[0], &w[1]);
        Formula::and(def, rest)
    })
}

fn with_len(dsl: &mut Dsl, bound: &Term, x: &Term, body: impl FnOnce(&mut Dsl, &Term) -> Formula) -> Formula {
    let x = x.clone();
    dsl.ex_le(bound, 1, |dsl, l| {
        let def = dsl.str_len(&x, &l[0]);
        let rest = body(dsl, &l[0]);
        Formula::and(def, rest)
    })
}

fn side(dsl: &mut Dsl, e: &Term, metas: &Metas, s: &Side) -> Formula {
    match *s {
        Side::Closed(t) => {
            let x = metas.t[t].clone();
            with_len(dsl, e, &x, |dsl, l| dsl.lacks_token(&x, l, tag::VAR))
        }
        Side::SubstTerm { src, v, by, dst } => {
            let (a, t, d) = (metas.m[src].clone(), metas.t[by].clone(), metas.m[dst].clone());
            with_var_str(dsl, e, &metas.v[v], |dsl, vs, _| dsl.subst_tok(&a, vs, &t, &d))
        }
        Side::SubstVar { src, v, w, dst } => {
            let (a, d) = (metas.m[src].clone(), metas.m[dst].clone());
            let wv = metas.v[w].clone();
            with_var_str(dsl, e, &metas.v[v], |dsl, vs, _| {
                with_var_str(dsl, e, &wv, |dsl, ws, _| dsl.subst_tok(&a, vs, ws, &d))
            })
        }
        Side::NoOcc { m, v } => {
            let a = metas.m[m].clone();
            with_var_str(dsl, e, &metas.v[v], |dsl, vs, lvs| {
                with_len(dsl, e, &a, |dsl, la| dsl.no_occ(&a, la, vs, lvs))
            })
        }
        Side::TermNoOcc { t, v } => {
            let a = metas.t[t].clone();
            with_var_str(dsl, e, &metas.v[v], |dsl, vs, lvs| {
                with_len(dsl, e, &a, |dsl, la| dsl.no_occ(&a, la, vs, lvs))
            })
        }
        Side::NoBinder { m, v } => no_binder(dsl, e, &metas.m[m], &metas.v[v]),
    }
}

/// No quantifier inside `a` binds the variable with index `v`.
pub fn no_binder(dsl: &mut Dsl, bound: &Term, a: &Term, v: &Term) -> Formula {
    let (a, v) = (a.clone(), v.clone());
    with_len(dsl, bound, &a, |dsl, la| {
        let mut conds = Vec::new();
        for t in [tag::FORALL, tag::EXISTS, tag::BFORALL, tag::BEXISTS] {
            let vv = v.clone();
            let aa = a.clone();
            conds.push(dsl.ex_le(bound, 2, |dsl, w| {
                let def = dsl.layout_len(&w[0], Some(&w[1]), &[Part::Tok(t), Part::Payload(vv)]);
                let none = dsl.no_occ(&aa, la, &w[0], &w[1]);
                Formula::and(def, none)
            }));
        }
        Formula::and_all(conds)
    })
}

impl fmt::Display for Pat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const M: [&str; 3] = ["A", "B", "C"];
        const V: [&str; 2] = ["v", "w"];
        match self {
            Pat::M(i) => write!(f, "{}", M[*i]),
            Pat::T(_) => write!(f, "t"),
            Pat::VarT(i) => write!(f, "{}", V[*i]),
            Pat::Bot => write!(f, "bot"),
            Pat::Top => write!(f, "top"),
            Pat::Not(a) => write!(f, "~{a}"),
            Pat::And(a, c) => write!(f, "({a} & {c})"),
            Pat::Or(a, c) => write!(f, "({a} | {c})"),
            Pat::Imp(a, c) => write!(f, "({a} -> {c})"),
            Pat::Eq(a, c) => write!(f, "{a}={c}"),
            Pat::Lt(a, c) => write!(f, "{a}<{c}"),
            Pat::All(v, a) => write!(f, "forall {} {a}", V[*v]),
            Pat::Ex(v, a) => write!(f, "exists {} {a}", V[*v]),
            Pat::BAll(v, t, a) => write!(f, "forall {} < {t} {a}", V[*v]),
            Pat::BEx(v, t, a) => write!(f, "exists {} < {t} {a}", V[*v]),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const M: [&str; 3] = ["A", "B", "C"];
        const V: [&str; 2] = ["v", "w"];
        match *self {
            Side::Closed(_) => write!(f, "t is closed"),
            Side::SubstTerm { src, v, dst, .. } => write!(f, "{} is {}[t/{}]", M[dst], M[src], V[v]),
            Side::SubstVar { src, v, w, dst } => write!(f, "{} is {}[{}/{}]", M[dst], M[src], V[w], V[v]),
            Side::NoOcc { m, v } => write!(f, "{} does not occur in {}", V[v], M[m]),
            Side::NoBinder { m, v } => write!(f, "{} is not bound in {}", V[v], M[m]),
            Side::TermNoOcc { v, .. } => write!(f, "{} does not occur in t", V[v]),
        }
    }
}

/// One line per schema: name, pattern, side conditions.
pub fn schema_table() -> alloc::string::String {
    use core::fmt::Write;
    let mut out = alloc::string::String::new();
    for s in logic_schemas() {
        let _ = write!(out, "{:<8} {}", s.name, s.pattern);
        if !s.sides.is_empty() {
            let _ = write!(out, "   [");
            for (i, side) in s.sides.iter().enumerate() {
                if i > 0 {
                    let _ = write!(out, "; ");
                }
                let _ = write!(out, "{side}");
            }
            let _ = write!(out, "]");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{classify, HierarchyLevel};

    #[test]
    fn recognizers_are_bounded() {
        for s in logic_schemas() {
            let mut d = Dsl::above(1);
            let f = recognize(&mut d, &Term::var(0), &s);
            assert_eq!(classify(&f), HierarchyLevel::Delta0, "{}", s.name);
            assert_eq!(f.free_variables().into_iter().collect::<Vec<_>>(), [Var(0)], "{}", s.name);
        }
    }

    #[test]
    fn table_lists_every_schema() {
        let t = schema_table();
        assert_eq!(t.lines().count(), logic_schemas().len());
        assert!(t.starts_with("K        (A -> (B -> A))\n"));
    }
}
