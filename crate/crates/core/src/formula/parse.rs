//! Parser for the canonical text form.
//!
//! Whitespace is insignificant between tokens. `(A)` groups a single formula.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::{Formula, Sentence, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
    Eq,
    Lt,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Zero,
    Succ,
    Exp,
    Bot,
    Top,
    Forall,
    Exists,
    Var(u32),
    Lit(BigUint),
}

fn err(position: usize, message: &str) -> ParseError {
    ParseError { position, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'*' => Some(Tok::Star),
            b'=' => Some(Tok::Eq),
            b'<' => Some(Tok::Lt),
            b'~' => Some(Tok::Tilde),
            b'&' => Some(Tok::Amp),
            b'|' => Some(Tok::Bar),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c == b'-' {
            if bytes.get(i + 1) == Some(&b'>') {
                out.push((Tok::Arrow, start));
                i += 2;
                continue;
            }
            return Err(err(start, "expected '->'"));
        }
        if c == b'#' {
            i += 1;
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if s == i {
                return Err(err(start, "expected digits after '#'"));
            }
            let n = BigUint::parse_bytes(&bytes[s..i], 10).ok_or_else(|| err(start, "bad numeral"))?;
            out.push((Tok::Lit(n), start));
            continue;
        }
        if c.is_ascii_digit() {
            if c == b'0' && !bytes.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                out.push((Tok::Zero, start));
                i += 1;
                continue;
            }
            return Err(err(start, "only 0 is a bare numeral; write #n"));
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &src[start..i];
            let tok = match word {
                "S" => Tok::Succ,
                "exp" => Tok::Exp,
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => {
                    let digits = word.strip_prefix('x').ok_or_else(|| err(start, "unknown word"))?;
                    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
                        return Err(err(start, "bad variable name"));
                    }
                    Tok::Var(digits.parse().map_err(|_| err(start, "bad variable index"))?)
                }
            };
            out.push((tok, start));
            continue;
        }
        return Err(err(start, "unexpected character"));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.here(), what))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Zero) => Ok(Term::Zero),
            Some(Tok::Var(i)) => Ok(Term::Var(Var(i))),
            Some(Tok::Lit(n)) => Ok(Term::Numeral(n)),
            Some(Tok::Succ) => {
                self.expect(Tok::LParen, "expected '(' after S")?;
                let t = self.term()?;
                self.expect(Tok::RParen, "expected ')'")?;
                Ok(Term::succ(t))
            }
            Some(Tok::Exp) => {
                self.expect(Tok::LParen, "expected '(' after exp")?;
                let a = self.term()?;
                self.expect(Tok::Comma, "expected ','")?;
                let b = self.term()?;
                self.expect(Tok::RParen, "expected ')'")?;
                Ok(Term::exp(a, b))
            }
            Some(Tok::LParen) => {
                let a = self.term()?;
                let op = self.bump();
                let b = self.term()?;
                self.expect(Tok::RParen, "expected ')'")?;
                match op {
                    Some(Tok::Plus) => Ok(Term::add(a, b)),
                    Some(Tok::Star) => Ok(Term::mul(a, b)),
                    _ => Err(err(at, "expected '+' or '*' inside term parentheses")),
                }
            }
            _ => Err(err(at, "expected a term")),
        }
    }

    fn atomic(&mut self) -> Result<Formula, ParseError> {
        let a = self.term()?;
        let at = self.here();
        match self.bump() {
            Some(Tok::Eq) => Ok(Formula::Eq(a, self.term()?)),
            Some(Tok::Lt) => Ok(Formula::Lt(a, self.term()?)),
            _ => Err(err(at, "expected '=' or '<'")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let at = self.here();
        match self.peek() {
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let universal = self.peek() == Some(&Tok::Forall);
                self.pos += 1;
                let v = match self.bump() {
                    Some(Tok::Var(i)) => Var(i),
                    _ => return Err(err(self.here(), "expected a variable after quantifier")),
                };
                if self.peek() == Some(&Tok::Lt) {
                    self.pos += 1;
                    let bound_at = self.here();
                    let t = self.term()?;
                    if t.contains_var(v) {
                        return Err(err(bound_at, "bound term mentions the bound variable"));
                    }
                    let body = self.formula()?;
                    Ok(if universal {
                        Formula::bounded_forall(v, t, body)
                    } else {
                        Formula::bounded_exists(v, t, body)
                    })
                } else {
                    let body = self.formula()?;
                    Ok(if universal { Formula::forall(v, body) } else { Formula::exists(v, body) })
                }
            }
            Some(Tok::LParen) => {
                let save = self.pos;
                if let Ok(f) = self.atomic() {
                    return Ok(f);
                }
                self.pos = save + 1;
                let a = self.formula()?;
                let op_at = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(a),
                    Some(op @ (Tok::Amp | Tok::Bar | Tok::Arrow)) => {
                        let b = self.formula()?;
                        self.expect(Tok::RParen, "expected ')'")?;
                        Ok(match op {
                            Tok::Amp => Formula::and(a, b),
                            Tok::Bar => Formula::or(a, b),
                            _ => Formula::implies(a, b),
                        })
                    }
                    _ => Err(err(op_at, "expected '&', '|', '->' or ')'")),
                }
            }
            Some(_) => self.atomic(),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

fn run<T>(src: &str, f: impl FnOnce(&mut Parser) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let out = f(&mut p)?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(out)
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    run(src, Parser::formula)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    run(src, Parser::term)
}

/// Parses and additionally requires the result to be closed.
pub fn parse_sentence(src: &str) -> Result<Sentence, ParseError> {
    let f = parse_formula(src)?;
    Sentence::new(f).map_err(|e| ParseError { position: 0, message: alloc::format!("{e}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn examples() {
        assert_eq!(parse_formula("0=0").unwrap(), Formula::eq(Term::Zero, Term::Zero));
        assert_eq!(
            parse_formula("forall x0 (x0 = x0)").unwrap(),
            Formula::forall(Var(0), Formula::eq(Term::var(0), Term::var(0)))
        );
        assert!(parse_formula("0=").is_err());
    }

    #[test]
    fn round_trips() {
        for src in [
            "((x0+0)=0 & bot)",
            "forall x0 < S(x1) exists x2 < (x0*x1) ~x2<exp(x0,#12)",
            "(forall x0 x0<x1 -> (top | bot))",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(f.to_string(), src);
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn rejects_self_bounded() {
        assert!(parse_formula("forall x0 < x0 top").is_err());
    }

    #[test]
    fn sentence_requires_closed() {
        assert!(parse_sentence("x0=0").is_err());
        assert!(parse_sentence("exists x0 x0=0").is_ok());
    }
}
