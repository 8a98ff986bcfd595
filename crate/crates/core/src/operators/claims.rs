//! Instance checks of the vacillation argument along a true branch.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{class_equal, provable, thm13_g, QueryError, Thm13Error};
use crate::construction::{activated, true_branch, Language, SharpError, Trace};
use crate::entailment::Oracle;
use crate::modal::{ModalFormula, TruthError, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub instance: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimsReport {
    pub checks: Vec<ClaimCheck>,
    /// True-branch sentences failing the sharp condition.
    pub skipped: Vec<ModalFormula>,
}

impl ClaimsReport {
    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn count(&self, claim: &str) -> usize {
        self.checks.iter().filter(|c| c.claim == claim).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimsError {
    Truth(TruthError),
    Sharp(SharpError),
    Thm13(Thm13Error),
    Query(QueryError),
}

impl fmt::Display for ClaimsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimsError::Truth(e) => write!(f, "{e}"),
            ClaimsError::Sharp(e) => write!(f, "{e}"),
            ClaimsError::Thm13(e) => write!(f, "{e}"),
            ClaimsError::Query(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ClaimsError {}

impl From<QueryError> for ClaimsError {
    fn from(e: QueryError) -> Self {
        ClaimsError::Query(e)
    }
}

impl From<Thm13Error> for ClaimsError {
    fn from(e: Thm13Error) -> Self {
        ClaimsError::Thm13(e)
    }
}

/// For every true-branch `psi`:
///
/// - `member`: `[psi & g(psi)] = [psi & Con(psi)]`;
///
/// and, when `psi` is sharp, with `phi = psi & Con(psi)`:
///
/// - `conservative`: every member `phi` proves is proved by `psi`;
/// - `rewrite`: `[phi & g(phi)] = [phi & /\{Con(z) : psi |- z}]`;
/// - `identity`: `[phi & g(phi)] = [phi]`.
pub fn thm13_claims(
    tr: &Trace<ModalFormula>,
    v: &Valuation,
    o: &dyn Oracle<ModalFormula>,
) -> Result<ClaimsReport, ClaimsError> {
    let mut r = ClaimsReport::default();
    let branch = true_branch(tr, v).map_err(ClaimsError::Truth)?;
    for &i in &branch {
        let psi = &tr.entries[i].sentence;
        let con_psi = activated(tr, psi);
        let g_psi = thm13_g(psi, tr, o)?;
        r.checks.push(ClaimCheck {
            claim: "member",
            instance: format!("{psi}"),
            holds: class_equal(&psi.conj(&g_psi), &con_psi, o)?,
        });

        if !tr.check_sharp(psi, v, o).map_err(ClaimsError::Sharp)? {
            r.skipped.push(psi.clone());
            continue;
        }
        let phi = con_psi;
        let mut bad = Vec::new();
        let mut by_psi = Vec::new();
        for e in &tr.entries {
            let from_psi = provable(o, core::slice::from_ref(psi), &e.sentence)?;
            if from_psi {
                by_psi.push(tr.con(&e.sentence));
            }
            if provable(o, core::slice::from_ref(&phi), &e.sentence)? && !from_psi {
                bad.push(format!("{}", e.sentence));
            }
        }
        r.checks.push(ClaimCheck {
            claim: "conservative",
            instance: if bad.is_empty() { format!("{psi}") } else { format!("{psi}: {}", bad.join(", ")) },
            holds: bad.is_empty(),
        });
        let with_g = phi.conj(&thm13_g(&phi, tr, o)?);
        r.checks.push(ClaimCheck {
            claim: "rewrite",
            instance: format!("{phi}"),
            holds: class_equal(&with_g, &phi.conj(&ModalFormula::conjoin(&by_psi)), o)?,
        });
        r.checks.push(ClaimCheck { claim: "identity", instance: format!("{phi}"), holds: class_equal(&with_g, &phi, o)? });
    }
    Ok(r)
}
