use core::fmt;

use super::Formula;

/// Position in the arithmetical hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HierarchyLevel {
    Delta0,
    Sigma(u32),
    Pi(u32),
}

impl HierarchyLevel {
    /// Whether every formula of level `self` is also of level `other`.
    pub fn within(self, other: HierarchyLevel) -> bool {
        use HierarchyLevel::*;
        match (self, other) {
            (Delta0, _) => true,
            (_, Delta0) => false,
            (Sigma(a), Sigma(b)) | (Pi(a), Pi(b)) => a <= b,
            (Sigma(a), Pi(b)) | (Pi(a), Sigma(b)) => a < b,
        }
    }
}

impl fmt::Display for HierarchyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HierarchyLevel::Delta0 => write!(f, "Delta0"),
            HierarchyLevel::Sigma(k) => write!(f, "Sigma{k}"),
            HierarchyLevel::Pi(k) => write!(f, "Pi{k}"),
        }
    }
}

/// Least `k` with the formula provably in `Sigma_k`, and likewise for `Pi_k`,
/// computed by prenexing moves (bounded quantifiers are transparent).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelBounds {
    pub sigma: u32,
    pub pi: u32,
}

impl LevelBounds {
    pub fn is_sigma(self, k: u32) -> bool {
        self.sigma <= k
    }

    pub fn is_pi(self, k: u32) -> bool {
        self.pi <= k
    }

    pub fn within(self, level: HierarchyLevel) -> bool {
        match level {
            HierarchyLevel::Delta0 => self.sigma == 0 && self.pi == 0,
            HierarchyLevel::Sigma(k) => self.is_sigma(k),
            HierarchyLevel::Pi(k) => self.is_pi(k),
        }
    }
}

pub fn classify_bounds(f: &Formula) -> LevelBounds {
    match f {
        Formula::Eq(..) | Formula::Lt(..) | Formula::Bottom | Formula::Top => LevelBounds { sigma: 0, pi: 0 },
        Formula::Not(a) => {
            let b = classify_bounds(a);
            LevelBounds { sigma: b.pi, pi: b.sigma }
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (x, y) = (classify_bounds(a), classify_bounds(b));
            LevelBounds { sigma: x.sigma.max(y.sigma), pi: x.pi.max(y.pi) }
        }
        Formula::Implies(a, b) => {
            let (x, y) = (classify_bounds(a), classify_bounds(b));
            LevelBounds { sigma: x.pi.max(y.sigma), pi: x.sigma.max(y.pi) }
        }
        Formula::Exists(_, body) => {
            let b = classify_bounds(body);
            let sigma = b.sigma.min(b.pi + 1).max(1);
            LevelBounds { sigma, pi: sigma + 1 }
        }
        Formula::ForAll(_, body) => {
            let b = classify_bounds(body);
            let pi = b.pi.min(b.sigma + 1).max(1);
            LevelBounds { sigma: pi + 1, pi }
        }
        Formula::BoundedForAll(_, _, body) | Formula::BoundedExists(_, _, body) => classify_bounds(body),
    }
}

/// Polarity-adjusted kind of the first unbounded quantifier, left to right:
/// `Some(true)` for existential, `Some(false)` for universal.
fn first_quantifier(f: &Formula, positive: bool) -> Option<bool> {
    match f {
        Formula::Eq(..) | Formula::Lt(..) | Formula::Bottom | Formula::Top => None,
        Formula::Not(a) => first_quantifier(a, !positive),
        Formula::And(a, b) | Formula::Or(a, b) => {
            first_quantifier(a, positive).or_else(|| first_quantifier(b, positive))
        }
        Formula::Implies(a, b) => first_quantifier(a, !positive).or_else(|| first_quantifier(b, positive)),
        Formula::Exists(..) => Some(positive),
        Formula::ForAll(..) => Some(!positive),
        Formula::BoundedForAll(_, _, body) | Formula::BoundedExists(_, _, body) => first_quantifier(body, positive),
    }
}

/// Minimal hierarchy level. When the least Sigma and Pi levels coincide, the
/// kind of the leading quantifier of the prenexed form decides.
pub fn classify(f: &Formula) -> HierarchyLevel {
    let b = classify_bounds(f);
    if b.sigma == 0 && b.pi == 0 {
        return HierarchyLevel::Delta0;
    }
    if b.sigma < b.pi {
        return HierarchyLevel::Sigma(b.sigma);
    }
    if b.pi < b.sigma {
        return HierarchyLevel::Pi(b.pi);
    }
    match first_quantifier(f, true) {
        Some(true) => HierarchyLevel::Sigma(b.sigma),
        _ => HierarchyLevel::Pi(b.pi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use HierarchyLevel::*;

    fn c(s: &str) -> HierarchyLevel {
        classify(&parse_formula(s).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(c("forall x0 < #5 x0=x0"), Delta0);
        assert_eq!(c("forall x0 exists x1 x0<x1"), Pi(2));
        assert_eq!(c("exists x0 x0=0"), Sigma(1));
        assert_eq!(c("~exists x0 x0=0"), Pi(1));
        assert_eq!(c("(exists x0 x0=0 -> bot)"), Pi(1));
    }

    #[test]
    fn ties_follow_leading_quantifier() {
        assert_eq!(c("(exists x0 x0=0 & forall x1 x1=x1)"), Sigma(2));
        assert_eq!(c("(forall x1 x1=x1 & exists x0 x0=0)"), Pi(2));
    }

    #[test]
    fn within_order() {
        assert!(Delta0.within(Pi(1)));
        assert!(Sigma(1).within(Pi(2)));
        assert!(!Sigma(1).within(Pi(1)));
        assert!(Pi(1).within(Pi(3)));
    }
}
