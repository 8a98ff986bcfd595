//! Derivation certificates and their checker.
//!
//! Every step claims a sentence in the base theory extended by the
//! registered facts. Text form, one step per line:
//!
//! ```text
//! <idx> | <sentence> | <justification>
//! ```
//!
//! with justifications `Logic(2,f1)`, `Instantiation(1;#5;#7)`, `Fact(f0)`,
//! `Monotonicity(3)` and `PriorStep(4)`. Premises are step numbers or fact
//! ids. Disjunctions print as `|` too, so a line is split at its first and
//! last separator.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::prop::tautologically_entails;
use super::{FactId, FactStore, Provenance};
use crate::arith::{build_con, TheoryDescriptor};
use crate::formula::{parse_sentence, parse_term, substitute, Formula, Sentence, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Premise {
    /// A prior step, numbered from 1.
    Step(usize),
    Fact(FactId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Propositional consequence of the premises.
    Logic(Vec<Premise>),
    /// Strip leading universal quantifiers of a prior step, substituting the terms in order.
    Instantiation { from: usize, terms: Vec<Term> },
    Fact(FactId),
    /// From a step `a -> b` derived without cone hypotheses, `Con(a) -> Con(b)`.
    Monotonicity(usize),
    /// Restates a prior step.
    PriorStep(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub claim: Sentence,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

/// The first step that is not licensed, numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

impl core::error::Error for CheckFailure {}

/// Checks every step in order.
pub fn check_certificate(c: &Certificate, facts: &FactStore, t: &TheoryDescriptor) -> Result<(), CheckFailure> {
    // whether each step rests on a cone hypothesis
    let mut hypothetical: Vec<bool> = Vec::with_capacity(c.steps.len());
    for (i, step) in c.steps.iter().enumerate() {
        let n = i + 1;
        let fail = |reason: String| CheckFailure { step: n, reason };
        let prior = |j: usize| -> Result<&Step, CheckFailure> {
            if j == 0 || j >= n {
                return Err(fail(format!("step {j} is not a prior step")));
            }
            Ok(&c.steps[j - 1])
        };
        let fact = |id: FactId| facts.get(id).ok_or_else(|| fail(format!("fact {id} is not registered")));
        let claim = step.claim.formula();
        let hyp = match &step.justification {
            Justification::Logic(premises) => {
                let mut ps: Vec<&Formula> = Vec::new();
                let mut hyp = false;
                for p in premises {
                    match *p {
                        Premise::Step(j) => {
                            ps.push(prior(j)?.claim.formula());
                            hyp |= hypothetical[j - 1];
                        }
                        Premise::Fact(id) => {
                            let f = fact(id)?;
                            ps.push(f.sentence.formula());
                            hyp |= f.provenance == Provenance::ConeMembership;
                        }
                    }
                }
                if !tautologically_entails(&ps, claim) {
                    return Err(fail("not a propositional consequence of its premises".into()));
                }
                hyp
            }
            Justification::Instantiation { from, terms } => {
                let mut f = prior(*from)?.claim.formula().clone();
                for term in terms {
                    if !term.is_closed() {
                        return Err(fail(format!("instantiation term {term} is open")));
                    }
                    let Formula::ForAll(v, body) = f else {
                        return Err(fail("too many instantiation terms".into()));
                    };
                    f = substitute(&body, v, term);
                }
                if f != *claim {
                    return Err(fail("claim differs from the instantiated formula".into()));
                }
                hypothetical[from - 1]
            }
            Justification::Fact(id) => {
                let f = fact(*id)?;
                if f.sentence != step.claim {
                    return Err(fail(format!("claim differs from fact {id}")));
                }
                f.provenance == Provenance::ConeMembership
            }
            Justification::Monotonicity(j) => {
                let base = prior(*j)?;
                if hypothetical[j - 1] {
                    return Err(fail(format!("step {j} rests on a cone hypothesis")));
                }
                let Formula::Implies(a, b) = base.claim.formula() else {
                    return Err(fail(format!("step {j} is not an implication")));
                };
                let (a, b) = (Sentence::new((**a).clone()), Sentence::new((**b).clone()));
                let (Ok(a), Ok(b)) = (a, b) else { return Err(fail("open implication".into())) };
                let expected = Formula::implies(build_con(t, &a).into_formula(), build_con(t, &b).into_formula());
                if expected != *claim {
                    return Err(fail("claim is not the consistency implication".into()));
                }
                false
            }
            Justification::PriorStep(j) => {
                let base = prior(*j)?;
                if base.claim != step.claim {
                    return Err(fail(format!("claim differs from step {j}")));
                }
                hypothetical[j - 1]
            }
        };
        hypothetical.push(hyp);
    }
    Ok(())
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Premise::Step(i) => write!(f, "{i}"),
            Premise::Fact(id) => write!(f, "{id}"),
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Logic(ps) => {
                let ps: Vec<String> = ps.iter().map(ToString::to_string).collect();
                write!(f, "Logic({})", ps.join(","))
            }
            Justification::Instantiation { from, terms } => {
                write!(f, "Instantiation({from}")?;
                for t in terms {
                    write!(f, ";{t}")?;
                }
                write!(f, ")")
            }
            Justification::Fact(id) => write!(f, "Fact({id})"),
            Justification::Monotonicity(i) => write!(f, "Monotonicity({i})"),
            Justification::PriorStep(i) => write!(f, "PriorStep({i})"),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{} | {} | {}", i + 1, s.claim, s.justification)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CertificateParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl core::error::Error for CertificateParseError {}

fn parse_premise(s: &str) -> Option<Premise> {
    match s.strip_prefix('f') {
        Some(id) => id.parse().ok().map(|n| Premise::Fact(FactId(n))),
        None => s.parse().ok().map(Premise::Step),
    }
}

fn parse_justification(s: &str) -> Option<Justification> {
    let (name, rest) = s.split_once('(')?;
    let args = rest.strip_suffix(')')?;
    let fact_id = |a: &str| a.strip_prefix('f')?.parse().ok().map(FactId);
    Some(match name {
        "Logic" if args.is_empty() => Justification::Logic(Vec::new()),
        "Logic" => Justification::Logic(args.split(',').map(|a| parse_premise(a.trim())).collect::<Option<_>>()?),
        "Instantiation" => {
            let mut parts = args.split(';');
            let from = parts.next()?.trim().parse().ok()?;
            let terms = parts.map(|p| parse_term(p.trim()).ok()).collect::<Option<_>>()?;
            Justification::Instantiation { from, terms }
        }
        "Fact" => Justification::Fact(fact_id(args.trim())?),
        "Monotonicity" => Justification::Monotonicity(args.trim().parse().ok()?),
        "PriorStep" => Justification::PriorStep(args.trim().parse().ok()?),
        _ => return None,
    })
}

impl core::str::FromStr for Certificate {
    type Err = CertificateParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let err = |message: String| CertificateParseError { line: i + 1, message };
            let (idx, rest) = line.split_once(" | ").ok_or_else(|| err("missing separator".into()))?;
            let (sentence, just) = rest.rsplit_once(" | ").ok_or_else(|| err("missing separator".into()))?;
            if idx.trim().parse::<usize>().ok() != Some(steps.len() + 1) {
                return Err(err(format!("expected step number {}", steps.len() + 1)));
            }
            let claim = parse_sentence(sentence.trim()).map_err(|e| err(format!("{e}")))?;
            let justification =
                parse_justification(just.trim()).ok_or_else(|| err(format!("bad justification `{}`", just.trim())))?;
            steps.push(Step { claim, justification });
        }
        Ok(Certificate { steps })
    }
}

