//! Partial truth predicates for prenex formulas.
//!
//! Bounded formulas are handled by an evaluation table: a finite set of
//! entries `(position, assignment, end, value)`, each consistent with the
//! token at its position and the entries of its immediate subterms. A
//! bounded sentence is true when some table assigns its root the value 1,
//! and false when some table assigns it 0. Unbounded quantifier blocks are
//! peeled one block per level: the `Pi_k` predicate reads `forall`-block
//! then a `Sigma_(k-1)` body, and so on down to the bounded case.
//!
//! Assignments are pairs `<width, sequence>`; index `j` of the sequence is
//! the value of variable `xj`, and absent entries read as 0.

use alloc::vec::Vec;
use core::fmt;

use super::toolkit::{lit, Dsl, Part};
use crate::coding::{tag, PAYLOAD_BASE, PAYLOAD_MORE};
use crate::formula::{Formula, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruthPredicateError {
    /// Level 0 truth is bounded evaluation, not a formula.
    LevelZero,
}

impl fmt::Display for TruthPredicateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "partial truth needs a level of at least 1")
    }
}

impl core::error::Error for TruthPredicateError {}

/// The free variable of every `True_Pi_k` built here.
pub const TRUTH_VAR: Var = Var(0);

fn eq(a: Term, b: Term) -> Formula {
    Formula::eq(a, b)
}

fn succ(a: &Term) -> Term {
    Term::succ(a.clone())
}

struct Table {
    wd: Term,
    tbl: Term,
}

impl Dsl {
    /// Value of variable `j` under assignment `a` is `val`.
    fn assign(&mut self, a: &Term, j: &Term, val: &Term) -> Formula {
        let (a, j, val) = (a.clone(), j.clone(), val.clone());
        self.ex_le(&a.clone(), 2, |d, w| {
            let p = d.pair(&w[0], &w[1], &a);
            let e = d.elem(&w[1], &w[0], &j, &val);
            Formula::and(p, e)
        })
    }

    /// `a2` agrees with `a` except that variable `x` has value `m`.
    fn update(&mut self, a: &Term, x: &Term, m: &Term, a2: &Term, vars: &Term) -> Formula {
        let here = self.assign(a2, x, m);
        let (a, x, a2) = (a.clone(), x.clone(), a2.clone());
        let rest = self.all_lt(vars, |d, j| {
            let same = d.ex_le(&Term::add(a.clone(), a2.clone()), 1, |d, v| {
                Formula::and(d.assign(&a, &j, &v[0]), d.assign(&a2, &j, &v[0]))
            });
            Formula::or(eq(j, x.clone()), same)
        });
        Formula::and(here, rest)
    }

    /// Tokens `i .. pe` of `y` (length `ly`) spell the payload of `n`.
    fn payload_at(&mut self, y: &Term, ly: &Term, i: &Term, n: &Term, pe: &Term) -> Formula {
        let (y, ly, i, n, pe) = (y.clone(), ly.clone(), i.clone(), n.clone(), pe.clone());
        self.ex_le(&y.clone(), 5, |d, w| {
            let (p, lp, hi, lo, r) = (&w[0], &w[1], &w[2], &w[3], &w[4]);
            Formula::and_all([
                d.payload(&n, p, lp),
                eq(pe.clone(), Term::add(i.clone(), lp.clone())),
                eq(ly.clone(), Term::add(pe.clone(), r.clone())),
                Formula::lt(lo.clone(), super::toolkit::pow64(r.clone())),
                eq(
                    y.clone(),
                    Term::add(
                        Term::mul(
                            Term::add(Term::mul(hi.clone(), super::toolkit::pow64(lp.clone())), p.clone()),
                            super::toolkit::pow64(r.clone()),
                        ),
                        lo.clone(),
                    ),
                ),
            ])
        })
    }

    fn quad(&mut self, ent: &Term, q: [&Term; 4]) -> Formula {
        let ent = ent.clone();
        let q: Vec<Term> = q.iter().map(|t| (*t).clone()).collect();
        self.ex_le(&ent.clone(), 2, |d, w| {
            Formula::and_all([d.pair(&q[0], &w[0], &ent), d.pair(&q[1], &w[1], &w[0]), d.pair(&q[2], &q[3], &w[1])])
        })
    }

    fn has_entry(&mut self, t: &Table, q: [&Term; 4]) -> Formula {
        let (wd, tbl) = (t.wd.clone(), t.tbl.clone());
        self.ex_lt(&tbl.clone(), |d, idx| {
            d.ex_le(&tbl, 1, |d, ent| Formula::and(d.elem(&tbl, &wd, &idx, &ent[0]), d.quad(&ent[0], q)))
        })
    }

    /// `w` is an evaluation table for `y` (length `ly`) giving value `bit`
    /// at the root under assignment `s`.
    fn eval_ok(&mut self, w: &Term, y: &Term, ly: &Term, s: &Term, bit: u64) -> Formula {
        let (w, y, ly, s) = (w.clone(), y.clone(), ly.clone(), s.clone());
        self.ex_le(&w.clone(), 2, |d, v| {
            let t = Table { wd: v[0].clone(), tbl: v[1].clone() };
            let pairing = d.pair(&t.wd, &t.tbl, &w);
            let root = d.has_entry(&t, [&Term::Zero, &s, &ly, &lit(bit)]);
            let local = d.all_lt(&t.tbl.clone(), |d, idx| {
                d.ex_le(&t.tbl.clone(), 1, |d, ent| {
                    let ent = ent[0].clone();
                    let el = d.elem(&t.tbl, &t.wd, &idx, &ent);
                    let ok = d.ex_le(&ent.clone(), 4, |d, q| {
                        let is = d.quad(&ent, [&q[0], &q[1], &q[2], &q[3]]);
                        let clause = clause(d, &t, &y, &ly, &q[0], &q[1], &q[2], &q[3]);
                        Formula::and(is, clause)
                    });
                    Formula::and(el, Formula::or(eq(ent, Term::Zero), ok))
                })
            });
            Formula::and_all([pairing, root, local])
        })
    }
}

fn bool_case(v: &Term, truth: Formula, falsity: Formula) -> Formula {
    Formula::or(Formula::and(eq(v.clone(), lit(1)), truth), Formula::and(eq(v.clone(), Term::Zero), falsity))
}

/// Local consistency of one table entry with the token at position `i`.
#[allow(clippy::too_many_arguments)]
fn clause(d: &mut Dsl, t: &Table, y: &Term, ly: &Term, i: &Term, a: &Term, e: &Term, v: &Term) -> Formula {
    let mut cases = Vec::new();
    let bound = t.tbl.clone();
    let tok = |d: &mut Dsl, tg: u8| d.tok_at(y, ly, i, &lit(tg.into()));
    let next = succ(i);

    for (tg, val) in [(tag::ZERO, 0u64), (tag::BOTTOM, 0), (tag::TOP, 1)] {
        let at = tok(d, tg);
        cases.push(Formula::and_all([at, eq(e.clone(), next.clone()), eq(v.clone(), lit(val))]));
    }

    // unary: S and ~
    for tg in [tag::SUCC, tag::NOT] {
        let at = tok(d, tg);
        let body = d.ex_le(&bound, 2, |d, c| {
            let child = d.has_entry(t, [&next, a, &c[0], &c[1]]);
            let rel = if tg == tag::SUCC {
                eq(v.clone(), succ(&c[1]))
            } else {
                eq(Term::add(v.clone(), c[1].clone()), lit(1))
            };
            Formula::and_all([child, eq(e.clone(), c[0].clone()), rel])
        });
        cases.push(Formula::and(at, body));
    }

    // binary nodes
    for tg in [tag::ADD, tag::MUL, tag::EXP, tag::EQ, tag::LT, tag::AND, tag::OR, tag::IMPLIES] {
        let at = tok(d, tg);
        let body = d.ex_le(&bound, 4, |d, c| {
            let (e1, v1, e2, v2) = (&c[0], &c[1], &c[2], &c[3]);
            let left = d.has_entry(t, [&next, a, e1, v1]);
            let right = d.has_entry(t, [e1, a, e2, v2]);
            let one = |x: &Term| eq(x.clone(), lit(1));
            let zero = |x: &Term| eq(x.clone(), Term::Zero);
            let rel = match tg {
                tag::ADD => eq(v.clone(), Term::add(v1.clone(), v2.clone())),
                tag::MUL => eq(v.clone(), Term::mul(v1.clone(), v2.clone())),
                tag::EXP => eq(v.clone(), Term::exp(v1.clone(), v2.clone())),
                tag::EQ => bool_case(v, eq(v1.clone(), v2.clone()), Formula::not(eq(v1.clone(), v2.clone()))),
                tag::LT => bool_case(
                    v,
                    Formula::lt(v1.clone(), v2.clone()),
                    Formula::not(Formula::lt(v1.clone(), v2.clone())),
                ),
                tag::AND => bool_case(v, Formula::and(one(v1), one(v2)), Formula::or(zero(v1), zero(v2))),
                tag::OR => bool_case(v, Formula::or(one(v1), one(v2)), Formula::and(zero(v1), zero(v2))),
                _ => bool_case(v, Formula::or(zero(v1), one(v2)), Formula::and(one(v1), zero(v2))),
            };
            Formula::and_all([left, right, eq(e.clone(), e2.clone()), rel])
        });
        cases.push(Formula::and(at, body));
    }

    // variables and numeral literals
    {
        let at = tok(d, tag::VAR);
        let body = d.ex_le(y, 1, |d, n| {
            let p = d.payload_at(y, ly, &next, &n[0], e);
            let val = d.assign(a, &n[0], v);
            Formula::and(p, val)
        });
        cases.push(Formula::and(at, body));
        let at = tok(d, tag::NUMERAL);
        let p = d.payload_at(y, ly, &next, v, e);
        cases.push(Formula::and(at, p));
    }

    // bounded quantifiers
    for tg in [tag::BFORALL, tag::BEXISTS] {
        let universal = tg == tag::BFORALL;
        let at = tok(d, tg);
        let body = d.ex_le(y, 2, |d, xp| {
            let (x, pe) = (&xp[0], &xp[1]);
            let p = d.payload_at(y, ly, &next, x, pe);
            let rest = d.ex_le(&bound, 2, |d, c| {
                let (e1, vt) = (&c[0], &c[1]);
                let term = d.has_entry(t, [pe, a, e1, vt]);
                let some_body = d.ex_le(&bound, 2, |d, w| d.has_entry(t, [e1, &w[0], e, &w[1]]));
                let step = |d: &mut Dsl, m: Term, want: u64| {
                    d.ex_le(&bound, 1, |d, a2| {
                        let up = d.update(a, x, &m, &a2[0], y);
                        let ent = d.has_entry(t, [e1, &a2[0], e, &lit(want)]);
                        Formula::and(up, ent)
                    })
                };
                let all_true = d.all_lt(vt, |d, m| step(d, m, 1));
                let some_false = d.ex_lt(vt, |d, m| step(d, m, 0));
                let some_true = d.ex_lt(vt, |d, m| step(d, m, 1));
                let all_false = d.all_lt(vt, |d, m| step(d, m, 0));
                let rel = if universal {
                    bool_case(v, all_true, some_false)
                } else {
                    bool_case(v, some_true, all_false)
                };
                Formula::and_all([term, some_body, rel])
            });
            Formula::and(p, rest)
        });
        cases.push(Formula::and(at, body));
    }

    Formula::or_all(cases)
}

impl Dsl {
    /// `P` (length `lp`) is a block of quantifier prefixes all with tag `q`.
    fn prefix_block(&mut self, p: &Term, lp: &Term, q: u8) -> Formula {
        let (p, lp) = (p.clone(), lp.clone());
        let first = Formula::or(eq(lp.clone(), Term::Zero), self.tok_at(&p, &lp, &Term::Zero, &lit(q.into())));
        let each = self.all_lt(&lp.clone(), |d, i| {
            d.ex_lt(&lit(64), |d, t| {
                let here = d.tok_at(&p, &lp, &i, &t);
                let after_is = |d: &mut Dsl, payload: bool| {
                    let (p, lp, i) = (p.clone(), lp.clone(), i.clone());
                    d.ex_lt(&lit(64), |d, n| {
                        let at = d.tok_at(&p, &lp, &succ(&i), &n);
                        let kind = if payload {
                            Formula::le(lit(PAYLOAD_BASE.into()), n)
                        } else {
                            eq(n, lit(q.into()))
                        };
                        Formula::and(at, kind)
                    })
                };
                let is_tag = Formula::and(eq(t.clone(), lit(q.into())), after_is(d, true));
                let more = Formula::and_all([
                    Formula::le(lit((PAYLOAD_BASE + PAYLOAD_MORE).into()), t.clone()),
                    after_is(d, true),
                ]);
                let stop = Formula::and_all([
                    Formula::le(lit(PAYLOAD_BASE.into()), t.clone()),
                    Formula::lt(t.clone(), lit((PAYLOAD_BASE + PAYLOAD_MORE).into())),
                    Formula::or(eq(succ(&i), lp.clone()), after_is(d, false)),
                ]);
                Formula::and(here, Formula::or_all([is_tag, more, stop]))
            })
        });
        Formula::and(first, each)
    }

    /// `s2` agrees with `s` on every variable index below `vars` not bound by
    /// the block `P` (length `lp`).
    fn agree_outside(&mut self, s: &Term, s2: &Term, p: &Term, lp: &Term, q: u8, vars: &Term) -> Formula {
        let (s, s2, p, lp) = (s.clone(), s2.clone(), p.clone(), lp.clone());
        let bound = Term::add(p.clone(), vars.clone());
        self.all_lt(vars, |d, j| {
            let bound_in_p = d.ex_le(&bound, 2, |d, w| {
                let def = d.layout_len(&w[0], Some(&w[1]), &[Part::Tok(q), Part::Payload(j.clone())]);
                let occ = Formula::not(d.no_occ(&p, &lp, &w[0], &w[1]));
                Formula::and(def, occ)
            });
            let same = d.ex_le(&s, 1, |d, v| Formula::and(d.assign(&s, &j, &v[0]), d.assign(&s2, &j, &v[0])));
            Formula::or(bound_in_p, same)
        })
    }

    /// Bounded formula `y` is true under `s`: some table gives the root 1
    /// (`bit = 1`, Sigma_1 form) or no table gives it 0 (`bit = 0`, Pi_1 form).
    fn sat0(&mut self, y: &Term, s: &Term, bit: u64) -> Formula {
        let (y, s) = (y.clone(), s.clone());
        self.ex_le(&y.clone(), 1, |d, l| {
            let ly = l[0].clone();
            let len = d.str_len(&y, &ly);
            let bounded = Formula::and(d.lacks_token(&y, &ly, tag::FORALL), d.lacks_token(&y, &ly, tag::EXISTS));
            let core = if bit == 1 {
                d.ex(|d, w| d.eval_ok(&w, &y, &ly, &s, 1))
            } else {
                d.all(|d, w| Formula::not(d.eval_ok(&w, &y, &ly, &s, 0)))
            };
            Formula::and_all([len, bounded, core])
        })
    }

    /// Truth of `y` under `s` for `Pi_k` (`universal`) or `Sigma_k` prenex formulas.
    fn level(&mut self, y: &Term, s: &Term, k: u32, universal: bool) -> Formula {
        if k == 0 {
            // A bounded body under a universal block needs its Pi_1 reading,
            // and under an existential block its Sigma_1 reading.
            return self.sat0(y, s, if universal { 1 } else { 0 });
        }
        let q = if universal { tag::FORALL } else { tag::EXISTS };
        let (y, s) = (y.clone(), s.clone());
        self.ex_le(&y.clone(), 4, |d, w| {
            let (p, lp, b, lb) = (&w[0], &w[1], &w[2], &w[3]);
            let mut shape = Vec::new();
            shape.push(d.str_len(p, lp));
            shape.push(Formula::lt(Term::Zero, lb.clone()));
            shape.push(d.str_len(b, lb));
            shape.push(eq(y.clone(), Term::add(Term::mul(p.clone(), super::toolkit::pow64(lb.clone())), b.clone())));
            shape.push(d.prefix_block(p, lp, q));
            shape.push(Formula::not(d.tok_at(b, lb, &Term::Zero, &lit(q.into()))));
            let shape = Formula::and_all(shape);
            let (p, lp, b) = (p.clone(), lp.clone(), b.clone());
            let inner = if universal {
                d.all(|d, s2| {
                    let agree = d.agree_outside(&s, &s2, &p, &lp, q, &y);
                    let body = d.level(&b, &s2, k - 1, false);
                    Formula::implies(agree, body)
                })
            } else {
                d.ex(|d, s2| {
                    let agree = d.agree_outside(&s, &s2, &p, &lp, q, &y);
                    let body = d.level(&b, &s2, k - 1, true);
                    Formula::and(agree, body)
                })
            };
            Formula::and(shape, inner)
        })
    }
}

/// `True_Pi_k(y)` with free variable [`TRUTH_VAR`], for `k >= 1`.
///
/// Only prenex codes whose leading block is universal are read; the
/// predicate is a structural construction and is never evaluated.
pub fn build_partial_truth(k: u32) -> Result<Formula, TruthPredicateError> {
    if k == 0 {
        return Err(TruthPredicateError::LevelZero);
    }
    let mut d = Dsl::above(TRUTH_VAR.0 + 1);
    Ok(d.level(&Term::Var(TRUTH_VAR), &Term::Zero, k, true))
}
