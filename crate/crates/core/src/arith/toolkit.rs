//! Bounded definitions over code strings.
//!
//! Codes are base-64 digit strings with no zero digit, so a string is a pair
//! (value, length) and concatenation is `u * 64^len(v) + v`. Every helper
//! here returns a formula with only bounded quantifiers, built over fresh
//! variables that never clash with the argument terms.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::coding::{tag, PAYLOAD_BASE, PAYLOAD_MORE};
use crate::formula::{Formula, Term, Var};

/// Allocator of fresh variables above a floor.
#[derive(Clone, Debug)]
pub struct Dsl {
    next: u32,
}

pub fn lit(n: u64) -> Term {
    Term::Numeral(BigUint::from(n))
}

pub fn pow64(l: Term) -> Term {
    Term::exp(lit(64), l)
}

pub fn pow2(l: Term) -> Term {
    Term::exp(lit(2), l)
}

pub fn pow16(l: Term) -> Term {
    Term::exp(lit(16), l)
}

fn add(a: Term, b: Term) -> Term {
    Term::add(a, b)
}

fn mul(a: Term, b: Term) -> Term {
    Term::mul(a, b)
}

fn eq(a: Term, b: Term) -> Formula {
    Formula::eq(a, b)
}

fn lt(a: Term, b: Term) -> Formula {
    Formula::lt(a, b)
}

fn le(a: Term, b: Term) -> Formula {
    Formula::le(a, b)
}

/// One piece of a code string layout.
#[derive(Clone, Debug)]
pub enum Part {
    /// A single literal token.
    Tok(u8),
    /// The payload spelling of the natural denoted by the term.
    Payload(Term),
    /// A non-empty substring given by its value.
    Sub(Term),
    /// A substring with known value and length.
    Sized(Term, Term),
}

impl Dsl {
    /// Variables handed out are all `>= floor`.
    pub fn above(floor: u32) -> Self {
        Dsl { next: floor }
    }

    /// Floor above every variable of the given formulas.
    pub fn above_all(fs: &[&Formula]) -> Self {
        let floor = fs.iter().filter_map(|f| f.max_var_index()).max().map_or(0, |m| m + 1);
        Dsl::above(floor)
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    pub fn floor(&self) -> u32 {
        self.next
    }

    pub fn raise(&mut self, floor: u32) {
        self.next = self.next.max(floor);
    }

    /// `exists v0..vn <= bound (body)`.
    pub fn ex_le(&mut self, bound: &Term, n: usize, body: impl FnOnce(&mut Self, &[Term]) -> Formula) -> Formula {
        let vars: Vec<Var> = (0..n).map(|_| self.fresh()).collect();
        let terms: Vec<Term> = vars.iter().map(|v| Term::Var(*v)).collect();
        let mut f = body(self, &terms);
        for v in vars.into_iter().rev() {
            f = Formula::bounded_exists(v, Term::succ(bound.clone()), f);
        }
        f
    }

    /// `exists v < bound (body)`.
    pub fn ex_lt(&mut self, bound: &Term, body: impl FnOnce(&mut Self, Term) -> Formula) -> Formula {
        let v = self.fresh();
        let f = body(self, Term::Var(v));
        Formula::bounded_exists(v, bound.clone(), f)
    }

    /// `forall v < bound (body)`.
    pub fn all_lt(&mut self, bound: &Term, body: impl FnOnce(&mut Self, Term) -> Formula) -> Formula {
        let v = self.fresh();
        let f = body(self, Term::Var(v));
        Formula::bounded_forall(v, bound.clone(), f)
    }

    /// `exists v (body)`, unbounded.
    pub fn ex(&mut self, body: impl FnOnce(&mut Self, Term) -> Formula) -> Formula {
        let v = self.fresh();
        let f = body(self, Term::Var(v));
        Formula::exists(v, f)
    }

    /// `forall v (body)`, unbounded.
    pub fn all(&mut self, body: impl FnOnce(&mut Self, Term) -> Formula) -> Formula {
        let v = self.fresh();
        let f = body(self, Term::Var(v));
        Formula::forall(v, f)
    }

    /// `c` is a string of exactly `l` digits (`l = 0` forces `c = 0`).
    pub fn str_len(&mut self, c: &Term, l: &Term) -> Formula {
        Formula::and(
            lt(c.clone(), pow64(l.clone())),
            Formula::or(eq(l.clone(), Term::Zero), le(pow64(l.clone()), mul(lit(64), c.clone()))),
        )
    }

    /// Base-64 digit `i` of `c` (counted from the least significant end) is `d`.
    pub fn digit(&mut self, c: &Term, i: &Term, d: &Term) -> Formula {
        let (c, i, d) = (c.clone(), i.clone(), d.clone());
        let head = lt(d.clone(), lit(64));
        let body = self.ex_le(&c, 2, |_, v| {
            Formula::and(
                lt(v[1].clone(), pow64(i.clone())),
                eq(c.clone(), add(mul(add(mul(v[0].clone(), lit(64)), d.clone()), pow64(i.clone())), v[1].clone())),
            )
        });
        Formula::and(head, body)
    }

    /// Digit at position `i` counted from the most significant end of a
    /// string of length `l`.
    pub fn tok_at(&mut self, c: &Term, l: &Term, i: &Term, d: &Term) -> Formula {
        let (c, l, i, d) = (c.clone(), l.clone(), i.clone(), d.clone());
        self.ex_lt(&l.clone(), |s, j| {
            let body = s.digit(&c, &j, &d);
            Formula::and(eq(l.clone(), Term::succ(add(j, i.clone()))), body)
        })
    }

    /// Hex digit `i` of `n` is `d`.
    pub fn nibble(&mut self, n: &Term, i: &Term, d: &Term) -> Formula {
        let (n, i, d) = (n.clone(), i.clone(), d.clone());
        let head = lt(d.clone(), lit(16));
        let body = self.ex_le(&n, 2, |_, v| {
            Formula::and(
                lt(v[1].clone(), pow16(i.clone())),
                eq(n.clone(), add(mul(add(mul(v[0].clone(), lit(16)), d.clone()), pow16(i.clone())), v[1].clone())),
            )
        });
        Formula::and(head, body)
    }

    /// `p` (of length `lp`) is the payload spelling of `n`.
    pub fn payload(&mut self, n: &Term, p: &Term, lp: &Term) -> Formula {
        let (n, p, lp) = (n.clone(), p.clone(), lp.clone());
        let minimal = Formula::or(
            eq(lp.clone(), lit(1)),
            self.ex_lt(&lp.clone(), |_, k| {
                Formula::and(eq(lp.clone(), Term::succ(k.clone())), le(pow16(k), n.clone()))
            }),
        );
        let digits = self.all_lt(&lp.clone(), |s, i| {
            s.ex_lt(&lit(64), |s, d| {
                s.ex_lt(&lit(16), |s, nb| {
                    let dig = s.digit(&p, &i, &d);
                    let nib = s.nibble(&n, &i, &nb);
                    let last = Formula::and(eq(i.clone(), Term::Zero), eq(d.clone(), add(lit(PAYLOAD_BASE.into()), nb.clone())));
                    let more = Formula::and(
                        lt(Term::Zero, i.clone()),
                        eq(d.clone(), add(lit((PAYLOAD_BASE + PAYLOAD_MORE).into()), nb.clone())),
                    );
                    Formula::and_all([dig, nib, Formula::or(last, more)])
                })
            })
        });
        let len = self.str_len(&p, &lp);
        Formula::and_all([lt(Term::Zero, lp.clone()), len, lt(n.clone(), pow16(lp.clone())), minimal, digits])
    }

    /// `c` has the given layout. Each `Sub` part is required to be non-empty.
    pub fn layout(&mut self, c: &Term, parts: &[Part]) -> Formula {
        self.layout_len(c, None, parts)
    }

    /// Like [`Dsl::layout`], and the total length is `len` when given.
    pub fn layout_len(&mut self, c: &Term, len: Option<&Term>, parts: &[Part]) -> Formula {
        let mut conds = Vec::new();
        let mut pieces: Vec<(Term, Term)> = Vec::new();
        let mut wrap: Vec<(Var, Term)> = Vec::new();
        for part in parts {
            match part {
                Part::Tok(t) => pieces.push((lit((*t).into()), lit(1))),
                Part::Sized(v, l) => pieces.push((v.clone(), l.clone())),
                Part::Payload(n) => {
                    let p = self.fresh();
                    let lp = self.fresh();
                    let (pt, lpt) = (Term::Var(p), Term::Var(lp));
                    conds.push(self.payload(n, &pt, &lpt));
                    wrap.push((p, c.clone()));
                    wrap.push((lp, c.clone()));
                    pieces.push((pt, lpt));
                }
                Part::Sub(x) => {
                    let lx = self.fresh();
                    let lxt = Term::Var(lx);
                    conds.push(lt(Term::Zero, lxt.clone()));
                    conds.push(self.str_len(x, &lxt));
                    wrap.push((lx, c.clone()));
                    pieces.push((x.clone(), lxt));
                }
            }
        }
        let mut value = pieces[0].0.clone();
        let mut total = pieces[0].1.clone();
        for (v, l) in &pieces[1..] {
            value = add(mul(value, pow64(l.clone())), v.clone());
            total = add(total, l.clone());
        }
        conds.push(eq(c.clone(), value));
        if let Some(len) = len {
            conds.push(eq(len.clone(), total));
        }
        let mut f = Formula::and_all(conds);
        for (v, bound) in wrap.into_iter().rev() {
            f = Formula::bounded_exists(v, Term::succ(bound), f);
        }
        f
    }

    pub fn imp_code(&mut self, a: &Term, b: &Term, c: &Term) -> Formula {
        self.layout(c, &[Part::Tok(tag::IMPLIES), Part::Sub(a.clone()), Part::Sub(b.clone())])
    }

    pub fn not_code(&mut self, a: &Term, c: &Term) -> Formula {
        self.layout(c, &[Part::Tok(tag::NOT), Part::Sub(a.clone())])
    }

    /// `d` codes `x -> bot`.
    pub fn imp_bot(&mut self, x: &Term, d: &Term) -> Formula {
        self.layout(d, &[Part::Tok(tag::IMPLIES), Part::Sub(x.clone()), Part::Tok(tag::BOTTOM)])
    }

    /// `s` (length `ls`) is the code string of the variable with index `n`.
    pub fn var_str(&mut self, n: &Term, s: &Term, ls: &Term) -> Formula {
        self.layout_len(s, Some(ls), &[Part::Tok(tag::VAR), Part::Payload(n.clone())])
    }

    /// `s` (length `ls`) is the code string of the numeral literal for `n`.
    pub fn numeral_str(&mut self, n: &Term, s: &Term, ls: &Term) -> Formula {
        self.layout_len(s, Some(ls), &[Part::Tok(tag::NUMERAL), Part::Payload(n.clone())])
    }

    /// `u` (length `lu`) occurs nowhere in `a` (length `la`).
    pub fn no_occ(&mut self, a: &Term, la: &Term, u: &Term, lu: &Term) -> Formula {
        let (a, u, lu) = (a.clone(), u.clone(), lu.clone());
        self.all_lt(&la.clone(), |s, i| {
            Formula::not(s.ex_le(&a, 2, |_, v| {
                Formula::and(
                    lt(v[1].clone(), pow64(i.clone())),
                    eq(
                        a.clone(),
                        add(mul(add(mul(v[0].clone(), pow64(lu.clone())), u.clone()), pow64(i.clone())), v[1].clone()),
                    ),
                )
            }))
        })
    }

    /// Element `i` of the sequence `s` with `wd`-bit entries is `e`.
    pub fn elem(&mut self, s: &Term, wd: &Term, i: &Term, e: &Term) -> Formula {
        let (s, wd, i, e) = (s.clone(), wd.clone(), i.clone(), e.clone());
        let head = lt(e.clone(), pow2(wd.clone()));
        let shift = pow2(mul(wd.clone(), i.clone()));
        let body = self.ex_le(&s, 2, |_, v| {
            Formula::and(
                lt(v[1].clone(), shift.clone()),
                eq(s.clone(), add(mul(add(mul(v[0].clone(), pow2(wd.clone())), e.clone()), shift.clone()), v[1].clone())),
            )
        });
        Formula::and(head, body)
    }

    /// Cantor pairing: `c = <a, b>`.
    pub fn pair(&mut self, a: &Term, b: &Term, c: &Term) -> Formula {
        let sum = add(a.clone(), b.clone());
        eq(mul(lit(2), c.clone()), add(mul(sum.clone(), Term::succ(sum)), mul(lit(2), b.clone())))
    }

    /// `b` is `a` with every occurrence of the non-empty string `u` replaced
    /// by `w`. The witness lists the pieces of `a` between occurrences
    /// together with the running prefixes of `a` and `b`.
    pub fn subst_tok(&mut self, a: &Term, u: &Term, w: &Term, b: &Term) -> Formula {
        let (a, u, w, b) = (a.clone(), u.clone(), w.clone(), b.clone());
        let big = add(add(a.clone(), b.clone()), lit(1));
        self.ex_le(&big, 3, |s, lens| {
            let (la, lu, lw) = (lens[0].clone(), lens[1].clone(), lens[2].clone());
            let mut conds = Vec::new();
            conds.push(s.str_len(&a, &la));
            conds.push(lt(Term::Zero, lu.clone()));
            conds.push(s.str_len(&u, &lu));
            conds.push(s.str_len(&w, &lw));
            let body = s.ex_le(&la, 1, |s, k| {
                let k = k[0].clone();
                s.ex_le(&big, 1, |s, wd| {
                    let wd = wd[0].clone();
                    let seq_bound = pow2(mul(wd.clone(), Term::succ(k.clone())));
                    s.ex_le(&seq_bound, 6, |s, q| {
                        subst_witness(s, &a, &u, &lu, &w, &lw, &b, &k, &wd, q)
                    })
                })
            });
            conds.push(body);
            Formula::and_all(conds)
        })
    }

    /// `a` (length `la`) is a balanced prefix expression: every tag has its
    /// arity's worth of arguments and payload tokens follow payload-taking
    /// tags. Sorts are not tracked.
    pub fn well_formed(&mut self, a: &Term, la: &Term) -> Formula {
        let (a, la) = (a.clone(), la.clone());
        let wd = add(la.clone(), lit(1));
        let seq_bound = pow2(mul(wd.clone(), add(la.clone(), lit(2))));
        self.ex_le(&seq_bound, 1, |s, dseq| {
            let dseq = dseq[0].clone();
            let start = s.elem(&dseq, &wd, &Term::Zero, &lit(1));
            let end = s.elem(&dseq, &wd, &la, &Term::Zero);
            let steps = s.all_lt(&la, |s, i| {
                s.ex_lt(&lit(64), |s, t| {
                    s.ex_le(&wd, 2, |s, dd| {
                        let (d0, d1) = (dd[0].clone(), dd[1].clone());
                        let here = s.tok_at(&a, &la, &i, &t);
                        let e0 = s.elem(&dseq, &wd, &i, &d0);
                        let e1 = s.elem(&dseq, &wd, &Term::succ(i.clone()), &d1);
                        let rule = token_rule(s, &a, &la, &i, &t, &d0, &d1);
                        Formula::and_all([here, e0, e1, rule])
                    })
                })
            });
            Formula::and_all([start, end, steps])
        })
    }

    /// No token of `a` (length `la`) equals `t`.
    pub fn lacks_token(&mut self, a: &Term, la: &Term, t: u8) -> Formula {
        let (a, la) = (a.clone(), la.clone());
        self.all_lt(&la, |s, i| Formula::not(s.digit(&a, &i, &lit(t.into()))))
    }
}

fn arity(t: u8) -> Option<u64> {
    Some(match t {
        tag::ZERO | tag::VAR | tag::NUMERAL | tag::BOTTOM | tag::TOP => 0,
        tag::SUCC | tag::NOT | tag::FORALL | tag::EXISTS => 1,
        tag::ADD | tag::MUL | tag::EXP | tag::EQ | tag::LT | tag::AND | tag::OR | tag::IMPLIES => 2,
        tag::BFORALL | tag::BEXISTS => 2,
        _ => return None,
    })
}

fn takes_payload(t: u8) -> bool {
    matches!(t, tag::VAR | tag::NUMERAL | tag::FORALL | tag::EXISTS | tag::BFORALL | tag::BEXISTS)
}

/// Local step of the balance check at top-based position `i` with token `t`.
fn token_rule(s: &mut Dsl, a: &Term, la: &Term, i: &Term, t: &Term, d0: &Term, d1: &Term) -> Formula {
    let mut cases = Vec::new();
    for tg in 1u8..32 {
        let Some(ar) = arity(tg) else { continue };
        let next_is_payload = if takes_payload(tg) {
            s.ex_lt(&lit(64), |s, n| {
                let at = s.tok_at(a, la, &Term::succ(i.clone()), &n);
                Formula::and(at, le(lit(PAYLOAD_BASE.into()), n))
            })
        } else {
            Formula::Top
        };
        // depth d0 >= 1 and d1 = d0 - 1 + arity
        cases.push(Formula::and_all([
            eq(t.clone(), lit(tg.into())),
            lt(Term::Zero, d0.clone()),
            eq(add(d1.clone(), lit(1)), add(d0.clone(), lit(ar))),
            next_is_payload,
        ]));
    }
    // A payload token keeps the depth; a continued one must be followed by another payload token.
    let follow = s.ex_lt(&lit(64), |s, n| {
        let at = s.tok_at(a, la, &Term::succ(i.clone()), &n);
        Formula::and(at, le(lit(PAYLOAD_BASE.into()), n))
    });
    cases.push(Formula::and_all([
        le(lit(PAYLOAD_BASE.into()), t.clone()),
        eq(d1.clone(), d0.clone()),
        Formula::or(lt(t.clone(), lit((PAYLOAD_BASE + PAYLOAD_MORE).into())), follow),
    ]));
    Formula::or_all(cases)
}

/// Body of [`Dsl::subst_tok`]; `q` holds the six witness sequences
/// (pieces, piece lengths, prefixes of `a` and `b` with their lengths).
#[allow(clippy::too_many_arguments)]
fn subst_witness(
    s: &mut Dsl,
    a: &Term,
    u: &Term,
    lu: &Term,
    w: &Term,
    lw: &Term,
    b: &Term,
    k: &Term,
    wd: &Term,
    q: &[Term],
) -> Formula {
    let (pieces, plens, pa, pla, pb, plb) = (&q[0], &q[1], &q[2], &q[3], &q[4], &q[5]);
    let mut conds = Vec::new();
    for seq in [pa, pla, pb, plb] {
        conds.push(s.elem(seq, wd, &Term::Zero, &Term::Zero));
    }
    let big = add(add(a.clone(), b.clone()), lit(1));
    let step = s.all_lt(k, |s, i| {
        s.ex_le(&big, 6, |s, x| {
            let (c, lc, ap, alp, bp, blp) = (&x[0], &x[1], &x[2], &x[3], &x[4], &x[5]);
            s.ex_le(&big, 4, |s, y| {
                let (an, aln, bn, bln) = (&y[0], &y[1], &y[2], &y[3]);
                let si = Term::succ(i.clone());
                Formula::and_all([
                    s.elem(pieces, wd, &i, c),
                    s.elem(plens, wd, &i, lc),
                    s.str_len(c, lc),
                    s.no_occ(c, lc, u, lu),
                    s.elem(pa, wd, &i, ap),
                    s.elem(pla, wd, &i, alp),
                    s.elem(pb, wd, &i, bp),
                    s.elem(plb, wd, &i, blp),
                    s.elem(pa, wd, &si, an),
                    s.elem(pla, wd, &si, aln),
                    s.elem(pb, wd, &si, bn),
                    s.elem(plb, wd, &si, bln),
                    eq(an.clone(), add(mul(add(mul(ap.clone(), pow64(lc.clone())), c.clone()), pow64(lu.clone())), u.clone())),
                    eq(aln.clone(), add(add(alp.clone(), lc.clone()), lu.clone())),
                    eq(bn.clone(), add(mul(add(mul(bp.clone(), pow64(lc.clone())), c.clone()), pow64(lw.clone())), w.clone())),
                    eq(bln.clone(), add(add(blp.clone(), lc.clone()), lw.clone())),
                ])
            })
        })
    });
    conds.push(step);
    let last = s.ex_le(&big, 4, |s, x| {
        let (c, lc, ap, bp) = (&x[0], &x[1], &x[2], &x[3]);
        Formula::and_all([
            s.elem(pieces, wd, k, c),
            s.elem(plens, wd, k, lc),
            s.str_len(c, lc),
            s.no_occ(c, lc, u, lu),
            s.elem(pa, wd, k, ap),
            s.elem(pb, wd, k, bp),
            eq(a.clone(), add(mul(ap.clone(), pow64(lc.clone())), c.clone())),
            eq(b.clone(), add(mul(bp.clone(), pow64(lc.clone())), c.clone())),
        ])
    });
    conds.push(last);
    Formula::and_all(conds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{payload_tokens, tokens_to_value};
    use crate::formula::Evaluator;

    fn num(n: u64) -> Term {
        lit(n)
    }

    fn holds(f: &Formula) -> bool {
        assert!(f.is_closed(), "{f}");
        Evaluator::new(50_000_000).formula(f).expect("evaluates")
    }

    #[test]
    fn small_values_evaluate() {
        let mut d = Dsl::above(0);
        assert!(holds(&d.str_len(&num(131), &num(2))));
        assert!(!holds(&d.str_len(&num(131), &num(3))));
        assert!(holds(&d.str_len(&num(0), &num(0))));
        assert!(holds(&d.digit(&num(5), &num(0), &num(5))));
        assert!(holds(&d.tok_at(&num(2 * 64 + 3), &num(2), &num(0), &num(2))));
        assert!(!holds(&d.tok_at(&num(2 * 64 + 3), &num(2), &num(1), &num(2))));
        // a single payload token 32 + 5 spells 5
        assert!(holds(&d.payload(&num(5), &num(37), &num(1))));
        assert!(!holds(&d.payload(&num(6), &num(37), &num(1))));
        assert!(holds(&d.pair(&num(1), &num(2), &num(8))));
        assert!(holds(&d.imp_code(&num(10), &num(11), &num(15 * 4096 + 10 * 64 + 11))));
    }

    #[test]
    fn templates_are_bounded_and_hygienic() {
        let mut d = Dsl::above(10);
        let args: Vec<Term> = (0..4).map(Term::var).collect();
        let fs = [
            d.subst_tok(&args[0], &args[1], &args[2], &args[3]),
            d.well_formed(&args[0], &args[1]),
            d.no_occ(&args[0], &args[1], &args[2], &args[3]),
            d.elem(&args[0], &args[1], &args[2], &args[3]),
            d.var_str(&args[0], &args[1], &args[2]),
            d.layout(&args[0], &[Part::Tok(tag::AND), Part::Sub(args[1].clone()), Part::Payload(args[2].clone())]),
        ];
        for f in &fs {
            assert_eq!(crate::formula::classify(f), crate::formula::HierarchyLevel::Delta0);
            assert!(f.free_variables().iter().all(|v| v.0 < 4));
        }
        assert_eq!(fs[0].free_variables().len(), 4);
    }

    #[test]
    fn payload_tokens_are_minimal_spelling() {
        for n in [0u64, 5, 16, 255] {
            let toks = payload_tokens(&BigUint::from(n));
            assert_eq!(toks.last().map(|t| t - PAYLOAD_BASE < PAYLOAD_MORE), Some(true));
            assert!(toks.iter().all(|&t| t >= PAYLOAD_BASE));
            let _ = tokens_to_value(&toks);
        }
    }
}

/// The substitution relation `subst(x0, x1, x2, x3)`: `x3` is `x0` with every
/// occurrence of the token string `x1` replaced by `x2`. Printed in full with
/// its level and size.
pub fn substitution_definition() -> alloc::string::String {
    let v = |i| Term::Var(Var(i));
    let f = Dsl::above(4).subst_tok(&v(0), &v(1), &v(2), &v(3));
    alloc::format!("level {}, size {}\n{f}\n", crate::formula::classify(&f), f.size())
}
