use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{Formula, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// The formula has an unbounded quantifier.
    NotDelta0,
    /// A variable had no value.
    Open(Var),
    /// The work budget ran out or a value grew past the size cap.
    LimitExceeded,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NotDelta0 => write!(f, "formula has an unbounded quantifier"),
            EvalError::Open(v) => write!(f, "variable {v} has no value"),
            EvalError::LimitExceeded => write!(f, "evaluation limit exceeded"),
        }
    }
}

impl core::error::Error for EvalError {}

/// Evaluator for closed bounded formulas with a step budget.
#[derive(Clone, Debug)]
pub struct Evaluator {
    budget: u64,
    max_bits: u64,
    env: BTreeMap<Var, BigUint>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(1_000_000)
    }
}

impl Evaluator {
    pub fn new(budget: u64) -> Self {
        Evaluator { budget, max_bits: 1 << 20, env: BTreeMap::new() }
    }

    /// Steps left in the budget.
    pub fn remaining(&self) -> u64 {
        self.budget
    }

    pub fn with_binding(mut self, v: Var, n: BigUint) -> Self {
        self.env.insert(v, n);
        self
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        if self.budget == 0 {
            return Err(EvalError::LimitExceeded);
        }
        self.budget -= 1;
        Ok(())
    }

    fn capped(&self, n: BigUint) -> Result<BigUint, EvalError> {
        if n.bits() > self.max_bits {
            Err(EvalError::LimitExceeded)
        } else {
            Ok(n)
        }
    }

    pub fn term(&mut self, t: &Term) -> Result<BigUint, EvalError> {
        self.tick()?;
        match t {
            Term::Zero => Ok(BigUint::zero()),
            Term::Numeral(n) => Ok(n.clone()),
            Term::Var(v) => self.env.get(v).cloned().ok_or(EvalError::Open(*v)),
            Term::Succ(a) => Ok(self.term(a)? + 1u32),
            Term::Add(a, b) => {
                let x = self.term(a)?;
                let y = self.term(b)?;
                self.capped(x + y)
            }
            Term::Mul(a, b) => {
                let x = self.term(a)?;
                let y = self.term(b)?;
                if x.bits() + y.bits() > self.max_bits + 1 {
                    return Err(EvalError::LimitExceeded);
                }
                self.capped(x * y)
            }
            Term::Exp(a, b) => {
                let x = self.term(a)?;
                let y = self.term(b)?;
                if y.is_zero() {
                    return Ok(BigUint::one());
                }
                if x.is_zero() || x.is_one() {
                    return Ok(x);
                }
                let e = y.to_u64().ok_or(EvalError::LimitExceeded)?;
                if (x.bits() - 1).saturating_mul(e) > self.max_bits {
                    return Err(EvalError::LimitExceeded);
                }
                let e32 = u32::try_from(e).map_err(|_| EvalError::LimitExceeded)?;
                self.capped(x.pow(e32))
            }
        }
    }

    pub fn formula(&mut self, f: &Formula) -> Result<bool, EvalError> {
        self.tick()?;
        match f {
            Formula::Eq(a, b) => Ok(self.term(a)? == self.term(b)?),
            Formula::Lt(a, b) => Ok(self.term(a)? < self.term(b)?),
            Formula::Bottom => Ok(false),
            Formula::Top => Ok(true),
            Formula::Not(a) => Ok(!self.formula(a)?),
            Formula::And(a, b) => Ok(self.formula(a)? && self.formula(b)?),
            Formula::Or(a, b) => Ok(self.formula(a)? || self.formula(b)?),
            Formula::Implies(a, b) => Ok(!self.formula(a)? || self.formula(b)?),
            Formula::ForAll(..) | Formula::Exists(..) => Err(EvalError::NotDelta0),
            Formula::BoundedForAll(v, t, body) | Formula::BoundedExists(v, t, body) => {
                let universal = matches!(f, Formula::BoundedForAll(..));
                let bound = self.term(t)?;
                let n = bound.to_u64().ok_or(EvalError::LimitExceeded)?;
                if n > self.budget {
                    return Err(EvalError::LimitExceeded);
                }
                let saved = self.env.get(v).cloned();
                let mut result = universal;
                for i in 0..n {
                    self.env.insert(*v, BigUint::from(i));
                    let r = self.formula(body);
                    let r = match r {
                        Ok(r) => r,
                        Err(e) => {
                            restore(&mut self.env, *v, saved);
                            return Err(e);
                        }
                    };
                    if r != universal {
                        result = r;
                        break;
                    }
                }
                restore(&mut self.env, *v, saved);
                Ok(result)
            }
        }
    }
}

fn restore(env: &mut BTreeMap<Var, BigUint>, v: Var, saved: Option<BigUint>) {
    match saved {
        Some(x) => {
            env.insert(v, x);
        }
        None => {
            env.remove(&v);
        }
    }
}

/// Truth value of a closed bounded formula under the default budget.
pub fn evaluate_bounded(f: &Formula) -> Result<bool, EvalError> {
    if !f.is_closed() {
        let v = *f.free_variables().iter().next().expect("non-empty");
        return Err(EvalError::Open(v));
    }
    Evaluator::default().formula(f)
}
