use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::Sentence;

/// Why a fact may be assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// An instance of the graph formula of a recursive operator, true and Sigma_1,
    /// hence provable in any sound Sigma_1-complete theory.
    GraphInstance { operator: String },
    /// The hypothesis that the base theory plus the generator proves the fact.
    ConeMembership,
    /// `psi -> True(#psi)` for a standard sentence `psi` of the truth predicate's class.
    TruthReflection,
    Other(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::GraphInstance { operator } => write!(f, "graph instance of {operator}"),
            Provenance::ConeMembership => write!(f, "cone membership hypothesis"),
            Provenance::TruthReflection => write!(f, "partial truth reflection"),
            Provenance::Other(s) => write!(f, "{s}"),
        }
    }
}

/// An assumption usable as an antecedent. Never a theorem of this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchematicFact {
    pub sentence: Sentence,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactId(pub usize);

impl fmt::Display for FactId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// Append-only store of facts.
#[derive(Clone, Debug, Default)]
pub struct FactStore {
    facts: Vec<SchematicFact>,
}

impl FactStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a fact, reusing the id of an identical one.
    pub fn add(&mut self, fact: SchematicFact) -> FactId {
        if let Some(i) = self.facts.iter().position(|f| *f == fact) {
            return FactId(i);
        }
        self.facts.push(fact);
        FactId(self.facts.len() - 1)
    }

    pub fn get(&self, id: FactId) -> Option<&SchematicFact> {
        self.facts.get(id.0)
    }

    pub fn find(&self, sentence: &Sentence, provenance: &Provenance) -> Option<FactId> {
        self.facts
            .iter()
            .position(|f| f.sentence == *sentence && f.provenance == *provenance)
            .map(FactId)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FactId, &SchematicFact)> {
        self.facts.iter().enumerate().map(|(i, f)| (FactId(i), f))
    }

    pub fn sentences(&self) -> Vec<Sentence> {
        self.facts.iter().map(|f| f.sentence.clone()).collect()
    }
}
