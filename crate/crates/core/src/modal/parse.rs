use alloc::string::String;
use core::fmt;

use super::ModalFormula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModalParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ModalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ModalParseError {}

struct P<'a> {
    s: &'a [u8],
    i: usize,
}

impl P<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, ModalParseError> {
        Err(ModalParseError { position: self.i, message: msg.into() })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn word(&mut self, w: &str) -> bool {
        self.ws();
        let end = self.i + w.len();
        if self.s[self.i..].starts_with(w.as_bytes()) && !self.s.get(end).is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.i = end;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<ModalFormula, ModalParseError> {
        self.ws();
        if self.word("bot") {
            return Ok(ModalFormula::Bottom);
        }
        if self.word("top") {
            return Ok(ModalFormula::Top);
        }
        if self.eat("~") {
            return Ok(ModalFormula::not(self.formula()?));
        }
        if self.eat("[]") {
            return Ok(ModalFormula::boxed(self.formula()?));
        }
        if self.eat("<>") {
            return Ok(ModalFormula::diamond(self.formula()?));
        }
        if self.eat("(") {
            let a = self.formula()?;
            if self.eat(")") {
                return Ok(a);
            }
            let ctor: fn(ModalFormula, ModalFormula) -> ModalFormula = if self.eat("&") {
                ModalFormula::and
            } else if self.eat("|") {
                ModalFormula::or
            } else if self.eat("->") {
                ModalFormula::implies
            } else {
                return self.err("expected '&', '|', '->' or ')'");
            };
            let b = self.formula()?;
            if !self.eat(")") {
                return self.err("expected ')'");
            }
            return Ok(ctor(a, b));
        }
        if self.i < self.s.len() && self.s[self.i] == b'p' {
            let start = self.i + 1;
            let mut j = start;
            while j < self.s.len() && self.s[j].is_ascii_digit() {
                j += 1;
            }
            let digits = &self.s[start..j];
            if digits.is_empty() || (digits.len() > 1 && digits[0] == b'0') {
                return self.err("bad atom name");
            }
            let n = core::str::from_utf8(digits).ok().and_then(|d| d.parse().ok());
            return match n {
                Some(n) => {
                    self.i = j;
                    Ok(ModalFormula::Atom(n))
                }
                None => self.err("atom index out of range"),
            };
        }
        self.err("expected a formula")
    }
}

pub fn parse_modal(src: &str) -> Result<ModalFormula, ModalParseError> {
    let mut p = P { s: src.as_bytes(), i: 0 };
    let f = p.formula()?;
    p.ws();
    if p.i != p.s.len() {
        return p.err("trailing input");
    }
    Ok(f)
}
