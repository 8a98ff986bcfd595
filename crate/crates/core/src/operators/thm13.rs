//! The operator that agrees with `Con` on the construction's members and
//! with the identity on arbitrarily strong true inputs.
//!
//! `g(phi)` is `bot` for inconsistent `phi`, and otherwise the conjunction
//! of `Con(zeta)` over the members `zeta` numerated by stage `bound(phi)`
//! that `phi` proves (`top` when there are none).

use alloc::vec::Vec;
use core::fmt;

use super::{provable, QueryError};
use crate::construction::{tree::consistent, Language, Trace};
use crate::entailment::{EntailmentError, Oracle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Thm13Error {
    /// The provider could not answer; an oracle for the halting problem would.
    OracleRequired(QueryError),
    /// The input's members may have been numerated after the trace ends.
    TraceTooShallow { needed: usize, depth: usize },
    /// The enumeration cannot place the input.
    NotEnumerated,
}

impl fmt::Display for Thm13Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Thm13Error::OracleRequired(e) => write!(f, "oracle required: {e}"),
            Thm13Error::TraceTooShallow { needed, depth } => {
                write!(f, "trace runs to stage {depth} but stage {needed} is needed")
            }
            Thm13Error::NotEnumerated => write!(f, "input has no stage bound in this enumeration"),
        }
    }
}

impl core::error::Error for Thm13Error {}

impl From<QueryError> for Thm13Error {
    fn from(e: QueryError) -> Self {
        Thm13Error::OracleRequired(e)
    }
}

impl From<EntailmentError> for Thm13Error {
    fn from(e: EntailmentError) -> Self {
        Thm13Error::OracleRequired(QueryError::Oracle(e))
    }
}

/// `thm13_g_with` using the ancestry shortcut for members.
pub fn thm13_g<S: Language>(phi: &S, tr: &Trace<S>, o: &dyn Oracle<S>) -> Result<S, Thm13Error> {
    thm13_g_with(phi, tr, o, true)
}

/// With `fast_path`, a consistent member's provable members are read off
/// the tree: a consistent member proves exactly itself and its ancestors.
pub fn thm13_g_with<S: Language>(phi: &S, tr: &Trace<S>, o: &dyn Oracle<S>, fast_path: bool) -> Result<S, Thm13Error> {
    match consistent(o, phi)? {
        None => return Err(QueryError::Undecided(alloc::format!("consistency of {phi}")).into()),
        Some(false) => return Ok(S::bottom()),
        Some(true) => {}
    }
    let n = tr.enumeration().stage_bound(phi).ok_or(Thm13Error::NotEnumerated)?;
    if n > tr.depth() {
        return Err(Thm13Error::TraceTooShallow { needed: n, depth: tr.depth() });
    }
    let proved: Vec<usize> = match tr.entry_of(phi).filter(|_| fast_path) {
        Some(i) => {
            let mut a = tr.ancestry(i);
            a.reverse();
            a
        }
        None => {
            let mut out = Vec::new();
            for (i, e) in tr.numerated_by(n) {
                if provable(o, core::slice::from_ref(phi), &e.sentence)? {
                    out.push(i);
                }
            }
            out
        }
    };
    let cons: Vec<S> = proved.iter().map(|&i| tr.con(&tr.entries[i].sentence)).collect();
    Ok(S::conjoin(&cons))
}
