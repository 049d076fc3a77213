//! Three-valued verdicts returned by every search-backed procedure.

use serde::{Deserialize, Serialize};

/// Verdict of an existence question.
///
/// `Yes` always carries a witness that can be checked independently of the
/// search that produced it. `No` carries a human readable reason and is only
/// returned when the refutation is exhaustive. `Inconclusive` names the budget
/// that was exhausted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Decision<W> {
    Yes { witness: W },
    No { reason: String },
    Inconclusive { bound: String },
}

impl<W> Decision<W> {
    pub fn yes(witness: W) -> Self {
        Decision::Yes { witness }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        Decision::No { reason: reason.into() }
    }

    pub fn inconclusive(bound: impl Into<String>) -> Self {
        Decision::Inconclusive { bound: bound.into() }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Decision::Inconclusive { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Yes { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Decision::Yes { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Decision<V> {
        match self {
            Decision::Yes { witness } => Decision::Yes { witness: f(witness) },
            Decision::No { reason } => Decision::No { reason },
            Decision::Inconclusive { bound } => Decision::Inconclusive { bound },
        }
    }

    pub fn verdict_str(&self) -> &'static str {
        match self {
            Decision::Yes { .. } => "yes",
            Decision::No { .. } => "no",
            Decision::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Result of a query whose answer is a value rather than a yes/no.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Outcome<T> {
    Known { value: T },
    Inconclusive { bound: String },
}

impl<T> Outcome<T> {
    pub fn known(&self) -> Option<&T> {
        match self {
            Outcome::Known { value } => Some(value),
            Outcome::Inconclusive { .. } => None,
        }
    }
}

/// Explicit search limits. Defaults are sized so that every fixture in the
/// test corpus finishes well under a second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Extra room added to the exponent box of forward label exploration.
    pub exponent_slack: u32,
    /// Longest path tried when looking for a least witness by enumeration.
    pub max_path_len: usize,
    /// Cap on states visited by any single exploration.
    pub max_states: usize,
    /// Cap on basis elements kept by the coverability and completion engines.
    pub max_basis: usize,
    /// Cap on the size of the non-mobile slide closure.
    pub snm_cap: usize,
    /// Worker threads for branch exploration; 1 keeps everything sequential.
    pub threads: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exponent_slack: 8,
            max_path_len: 12,
            max_states: 200_000,
            max_basis: 20_000,
            snm_cap: 10_000,
            threads: 1,
        }
    }
}
