//! Gödel numbering.
//!
//! A formula is written in prefix (Polish) order as a string of tokens in
//! `1..64`, and the code is that string read as a big-endian base-64 number.
//! Tags occupy `1..32`; naturals (variable indices and numeral literals) are
//! spelled as payload tokens `32 + 16*more + nibble`, big-endian, minimal.
//! No token is zero, so the string length is recoverable from the value.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::formula::{Formula, Term, Var};

pub mod tag {
    pub const ZERO: u8 = 1;
    pub const SUCC: u8 = 2;
    pub const ADD: u8 = 3;
    pub const MUL: u8 = 4;
    pub const EXP: u8 = 5;
    pub const VAR: u8 = 6;
    pub const NUMERAL: u8 = 7;
    pub const EQ: u8 = 8;
    pub const LT: u8 = 9;
    pub const BOTTOM: u8 = 10;
    pub const TOP: u8 = 11;
    pub const NOT: u8 = 12;
    pub const AND: u8 = 13;
    pub const OR: u8 = 14;
    pub const IMPLIES: u8 = 15;
    pub const FORALL: u8 = 16;
    pub const EXISTS: u8 = 17;
    pub const BFORALL: u8 = 18;
    pub const BEXISTS: u8 = 19;
}

pub const RADIX: u32 = 64;
pub const PAYLOAD_BASE: u8 = 32;
pub const PAYLOAD_MORE: u8 = 16;

/// A Gödel code.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodelCode(BigUint);

impl GodelCode {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }
}

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodingError {
    NotACode(BigUint),
}

impl fmt::Display for CodingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodingError::NotACode(n) => write!(f, "{n} is not the code of a formula"),
        }
    }
}

impl core::error::Error for CodingError {}

/// Payload tokens spelling `n`.
pub fn payload_tokens(n: &BigUint) -> Vec<u8> {
    let mut nibbles = n.to_radix_be(16);
    if nibbles.is_empty() {
        nibbles.push(0);
    }
    let last = nibbles.len() - 1;
    nibbles
        .iter()
        .enumerate()
        .map(|(i, d)| PAYLOAD_BASE + if i < last { PAYLOAD_MORE } else { 0 } + d)
        .collect()
}

pub fn var_tokens(v: Var) -> Vec<u8> {
    let mut out = alloc::vec![tag::VAR];
    out.extend(payload_tokens(&BigUint::from(v.0)));
    out
}

fn push_term(t: &Term, out: &mut Vec<u8>) {
    match t {
        Term::Zero => out.push(tag::ZERO),
        Term::Succ(a) => {
            out.push(tag::SUCC);
            push_term(a, out);
        }
        Term::Add(a, b) | Term::Mul(a, b) | Term::Exp(a, b) => {
            out.push(match t {
                Term::Add(..) => tag::ADD,
                Term::Mul(..) => tag::MUL,
                _ => tag::EXP,
            });
            push_term(a, out);
            push_term(b, out);
        }
        Term::Var(v) => out.extend(var_tokens(*v)),
        Term::Numeral(n) => {
            out.push(tag::NUMERAL);
            out.extend(payload_tokens(n));
        }
    }
}

fn push_formula(f: &Formula, out: &mut Vec<u8>) {
    match f {
        Formula::Eq(a, b) | Formula::Lt(a, b) => {
            out.push(if matches!(f, Formula::Eq(..)) { tag::EQ } else { tag::LT });
            push_term(a, out);
            push_term(b, out);
        }
        Formula::Bottom => out.push(tag::BOTTOM),
        Formula::Top => out.push(tag::TOP),
        Formula::Not(a) => {
            out.push(tag::NOT);
            push_formula(a, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            out.push(match f {
                Formula::And(..) => tag::AND,
                Formula::Or(..) => tag::OR,
                _ => tag::IMPLIES,
            });
            push_formula(a, out);
            push_formula(b, out);
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            out.push(if matches!(f, Formula::ForAll(..)) { tag::FORALL } else { tag::EXISTS });
            out.extend(payload_tokens(&BigUint::from(v.0)));
            push_formula(body, out);
        }
        Formula::BoundedForAll(v, t, body) | Formula::BoundedExists(v, t, body) => {
            out.push(if matches!(f, Formula::BoundedForAll(..)) { tag::BFORALL } else { tag::BEXISTS });
            out.extend(payload_tokens(&BigUint::from(v.0)));
            push_term(t, out);
            push_formula(body, out);
        }
    }
}

pub fn formula_tokens(f: &Formula) -> Vec<u8> {
    let mut out = Vec::new();
    push_formula(f, &mut out);
    out
}

pub fn term_tokens(t: &Term) -> Vec<u8> {
    let mut out = Vec::new();
    push_term(t, &mut out);
    out
}

pub fn tokens_to_value(tokens: &[u8]) -> BigUint {
    if tokens.is_empty() {
        return BigUint::zero();
    }
    BigUint::from_radix_be(tokens, RADIX).expect("tokens are below the radix")
}

/// Token string of a value; empty for zero.
pub fn value_to_tokens(n: &BigUint) -> Vec<u8> {
    if n.is_zero() {
        return Vec::new();
    }
    n.to_radix_be(RADIX)
}

pub fn encode(f: &Formula) -> GodelCode {
    GodelCode(tokens_to_value(&formula_tokens(f)))
}

pub fn encode_term(t: &Term) -> GodelCode {
    GodelCode(tokens_to_value(&term_tokens(t)))
}

struct Reader<'a> {
    toks: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn next(&mut self) -> Option<u8> {
        let t = *self.toks.get(self.pos)?;
        self.pos += 1;
        Some(t)
    }

    fn payload(&mut self) -> Option<BigUint> {
        let mut nibbles = Vec::new();
        loop {
            let t = self.next()?;
            if t < PAYLOAD_BASE {
                return None;
            }
            let more = t - PAYLOAD_BASE >= PAYLOAD_MORE;
            nibbles.push((t - PAYLOAD_BASE) % PAYLOAD_MORE);
            if !more {
                break;
            }
        }
        if nibbles.len() > 1 && nibbles[0] == 0 {
            return None;
        }
        BigUint::from_radix_be(&nibbles, 16)
    }

    fn var(&mut self) -> Option<Var> {
        let n = self.payload()?;
        u32::try_from(n).ok().map(Var)
    }

    fn term(&mut self) -> Option<Term> {
        match self.next()? {
            tag::ZERO => Some(Term::Zero),
            tag::SUCC => Some(Term::succ(self.term()?)),
            tag::ADD => Some(Term::add(self.term()?, self.term()?)),
            tag::MUL => Some(Term::mul(self.term()?, self.term()?)),
            tag::EXP => Some(Term::exp(self.term()?, self.term()?)),
            tag::VAR => Some(Term::Var(self.var()?)),
            tag::NUMERAL => Some(Term::Numeral(self.payload()?)),
            _ => None,
        }
    }

    fn formula(&mut self) -> Option<Formula> {
        Some(match self.next()? {
            tag::EQ => Formula::eq(self.term()?, self.term()?),
            tag::LT => Formula::lt(self.term()?, self.term()?),
            tag::BOTTOM => Formula::Bottom,
            tag::TOP => Formula::Top,
            tag::NOT => Formula::not(self.formula()?),
            tag::AND => Formula::and(self.formula()?, self.formula()?),
            tag::OR => Formula::or(self.formula()?, self.formula()?),
            tag::IMPLIES => Formula::implies(self.formula()?, self.formula()?),
            tag::FORALL => {
                let v = self.var()?;
                Formula::ForAll(v, Box::new(self.formula()?))
            }
            tag::EXISTS => {
                let v = self.var()?;
                Formula::Exists(v, Box::new(self.formula()?))
            }
            t @ (tag::BFORALL | tag::BEXISTS) => {
                let v = self.var()?;
                let bound = self.term()?;
                if bound.contains_var(v) {
                    return None;
                }
                let body = Box::new(self.formula()?);
                if t == tag::BFORALL {
                    Formula::BoundedForAll(v, bound, body)
                } else {
                    Formula::BoundedExists(v, bound, body)
                }
            }
            _ => return None,
        })
    }
}

pub fn decode(code: &BigUint) -> Result<Formula, CodingError> {
    let toks = value_to_tokens(code);
    let mut r = Reader { toks: &toks, pos: 0 };
    match r.formula() {
        Some(f) if r.pos == toks.len() => Ok(f),
        _ => Err(CodingError::NotACode(code.clone())),
    }
}

pub fn decode_term(code: &BigUint) -> Result<Term, CodingError> {
    let toks = value_to_tokens(code);
    let mut r = Reader { toks: &toks, pos: 0 };
    match r.term() {
        Some(t) if r.pos == toks.len() => Ok(t),
        _ => Err(CodingError::NotACode(code.clone())),
    }
}

/// Numeral literal naming the code of `f`.
pub fn quote(f: &Formula) -> Term {
    Term::Numeral(encode(f).into_value())
}

/// The unary numeral `S(...S(0))` with `n` successors.
pub fn numeral(n: u64) -> Term {
    let mut t = Term::Zero;
    for _ in 0..n {
        t = Term::succ(t);
    }
    t
}


/// One line per constructor: tag, constructor, operands in token order.
pub fn tag_table() -> alloc::string::String {
    use core::fmt::Write;
    let rows: [(u8, &str, &str); 19] = [
        (tag::ZERO, "Zero", ""),
        (tag::SUCC, "Succ", "term"),
        (tag::ADD, "Add", "term term"),
        (tag::MUL, "Mul", "term term"),
        (tag::EXP, "Exp", "term term"),
        (tag::VAR, "Var", "payload"),
        (tag::NUMERAL, "Numeral", "payload"),
        (tag::EQ, "Eq", "term term"),
        (tag::LT, "Lt", "term term"),
        (tag::BOTTOM, "Bottom", ""),
        (tag::TOP, "Top", ""),
        (tag::NOT, "Not", "formula"),
        (tag::AND, "And", "formula formula"),
        (tag::OR, "Or", "formula formula"),
        (tag::IMPLIES, "Implies", "formula formula"),
        (tag::FORALL, "ForAll", "payload formula"),
        (tag::EXISTS, "Exists", "payload formula"),
        (tag::BFORALL, "BoundedForAll", "payload term formula"),
        (tag::BEXISTS, "BoundedExists", "payload term formula"),
    ];
    let mut out = alloc::string::String::new();
    for (t, name, operands) in rows {
        let line = alloc::format!("{t:>2}  {name:<14} {operands}");
        let _ = writeln!(out, "{}", line.trim_end());
    }
    let _ = writeln!(
        out,
        "{PAYLOAD_BASE}..{}  payload nibble d, last of its natural: {PAYLOAD_BASE} + d",
        PAYLOAD_BASE + 15
    );
    let _ = writeln!(
        out,
        "{}..{}  payload nibble d, more follow: {} + d",
        PAYLOAD_BASE + PAYLOAD_MORE,
        PAYLOAD_BASE + PAYLOAD_MORE + 15,
        PAYLOAD_BASE + PAYLOAD_MORE
    );
    out
}
