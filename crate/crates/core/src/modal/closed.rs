//! Letterless formulas and surrogate truth.
//!
//! A letterless formula is decided by the height of a world (length of the
//! longest chain above it), and `[]^n bot` holds exactly below height `n`.
//! A formula of modal depth `d` is constant from height `d` on, so it is
//! stored as a finite table plus a tail value. The tail is the truth value
//! at height omega, which is the surrogate for truth in the standard model.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::ModalFormula;

/// Truth table over heights: `finite[h]` for `h < finite.len()`, `tail` above.
/// Stored trimmed, so equal forms are exactly the GL-equivalent formulas.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedForm {
    pub finite: Vec<bool>,
    pub tail: bool,
}

impl ClosedForm {
    fn trimmed(mut finite: Vec<bool>, tail: bool) -> Self {
        while finite.last() == Some(&tail) {
            finite.pop();
        }
        ClosedForm { finite, tail }
    }

    pub fn at(&self, height: usize) -> bool {
        self.finite.get(height).copied().unwrap_or(self.tail)
    }

    /// Value in the standard reading, where every `[]^n bot` is false.
    pub fn standard_truth(&self) -> bool {
        self.tail
    }

    /// Boolean combination of `[]^n bot` equivalent to this form: a
    /// disjunction of height intervals.
    pub fn to_formula(&self) -> ModalFormula {
        let n = self.finite.len();
        let mut intervals = Vec::new();
        let mut h = 0;
        while h <= n {
            if self.at(h) {
                let start = h;
                while h < n && self.at(h) {
                    h += 1;
                }
                let end = if h == n && self.tail { None } else { Some(h) };
                intervals.push((start, end));
                if end.is_none() {
                    break;
                }
            }
            h += 1;
        }
        let parts = intervals.into_iter().map(|(a, b)| {
            let lower = (a > 0).then(|| ModalFormula::not(ModalFormula::box_bottom(a as u32)));
            let upper = b.map(|b| ModalFormula::box_bottom(b as u32));
            match (lower, upper) {
                (Some(l), Some(u)) => ModalFormula::and(l, u),
                (Some(l), None) => l,
                (None, Some(u)) => u,
                (None, None) => ModalFormula::Top,
            }
        });
        let mut parts: Vec<ModalFormula> = parts.collect();
        let Some(mut acc) = parts.pop() else {
            return ModalFormula::Bottom;
        };
        while let Some(p) = parts.pop() {
            acc = ModalFormula::or(p, acc);
        }
        acc
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruthError {
    /// The formula mentions an atom the valuation does not cover.
    MissingAtom(u32),
    /// A letterless formula was required.
    HasAtoms(u32),
}

impl fmt::Display for TruthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthError::MissingAtom(i) => write!(f, "valuation does not cover p{i}"),
            TruthError::HasAtoms(i) => write!(f, "formula mentions atom p{i}"),
        }
    }
}

impl core::error::Error for TruthError {}

/// Truth values for atoms, optionally with a value for all unlisted atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    pub values: BTreeMap<u32, bool>,
    pub default: Option<bool>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all(value: bool) -> Self {
        Valuation { values: BTreeMap::new(), default: Some(value) }
    }

    pub fn with(mut self, atom: u32, value: bool) -> Self {
        self.values.insert(atom, value);
        self
    }

    pub fn get(&self, atom: u32) -> Option<bool> {
        self.values.get(&atom).copied().or(self.default)
    }

    /// Replaces every atom by `top` or `bot`.
    pub fn apply(&self, f: &ModalFormula) -> Result<ModalFormula, TruthError> {
        for a in f.atoms() {
            if self.get(a).is_none() {
                return Err(TruthError::MissingAtom(a));
            }
        }
        Ok(f.map_atoms(&mut |i| {
            if self.get(i) == Some(true) {
                ModalFormula::Top
            } else {
                ModalFormula::Bottom
            }
        }))
    }
}

fn profile(f: &ModalFormula) -> ClosedForm {
    let combine = |a: ClosedForm, b: ClosedForm, op: fn(bool, bool) -> bool| {
        let n = a.finite.len().max(b.finite.len());
        let finite = (0..n).map(|h| op(a.at(h), b.at(h))).collect();
        ClosedForm::trimmed(finite, op(a.tail, b.tail))
    };
    match f {
        ModalFormula::Atom(_) => unreachable!("checked letterless"),
        ModalFormula::Bottom => ClosedForm { finite: Vec::new(), tail: false },
        ModalFormula::Top => ClosedForm { finite: Vec::new(), tail: true },
        ModalFormula::Not(a) => {
            let p = profile(a);
            ClosedForm { finite: p.finite.iter().map(|b| !b).collect(), tail: !p.tail }
        }
        ModalFormula::And(a, b) => combine(profile(a), profile(b), |x, y| x && y),
        ModalFormula::Or(a, b) => combine(profile(a), profile(b), |x, y| x || y),
        ModalFormula::Implies(a, b) => combine(profile(a), profile(b), |x, y| !x || y),
        ModalFormula::Box(a) | ModalFormula::Diamond(a) => {
            let p = profile(a);
            let diamond = matches!(f, ModalFormula::Diamond(_));
            // `[]A` at height h: A holds at every height below h.
            let n = p.finite.len() + 1;
            let mut finite = Vec::with_capacity(n);
            let mut all_below = true;
            let mut any_below = false;
            for h in 0..n {
                finite.push(if diamond { any_below } else { all_below });
                all_below &= p.at(h);
                any_below |= p.at(h);
            }
            let tail = if diamond { any_below } else { all_below };
            ClosedForm::trimmed(finite, tail)
        }
    }
}

/// Normal form of a letterless formula.
pub fn closed_normal_form(f: &ModalFormula) -> Result<ClosedForm, TruthError> {
    if let Some(&a) = f.atoms().iter().next() {
        return Err(TruthError::HasAtoms(a));
    }
    Ok(profile(f))
}

/// Surrogate truth: substitute the valuation, then read the value at height omega.
pub fn truth(f: &ModalFormula, v: &Valuation) -> Result<bool, TruthError> {
    Ok(profile(&v.apply(f)?).tail)
}
