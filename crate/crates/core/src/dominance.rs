//! Set-dominance relations used to compare winning sets from one voter's
//! point of view.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::ranking::Ranking;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominanceKind {
    /// Every member of one set is weakly above every member of the other.
    Weak,
    /// Compare the best members.
    #[serde(rename = "opt")]
    Optimistic,
    /// Compare the worst members.
    #[serde(rename = "pes")]
    Pessimistic,
}

impl DominanceKind {
    pub const ALL: [DominanceKind; 3] = [
        DominanceKind::Weak,
        DominanceKind::Optimistic,
        DominanceKind::Pessimistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DominanceKind::Weak => "weak",
            DominanceKind::Optimistic => "opt",
            DominanceKind::Pessimistic => "pes",
        }
    }
}

impl fmt::Display for DominanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DominanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weak" => Ok(DominanceKind::Weak),
            "opt" | "optimistic" => Ok(DominanceKind::Optimistic),
            "pes" | "pessimistic" => Ok(DominanceKind::Pessimistic),
            _ => Err(Error::Unknown {
                what: "dominance kind",
                name: s.into(),
            }),
        }
    }
}

/// How a new winning set compares to the old one for a voter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Comparison {
    /// new `>` old
    pub better: bool,
    /// old `>` new
    pub worse: bool,
    /// new `>=` old
    pub at_least: bool,
}

#[inline]
fn extremes(set: CandidateSet, ranking: &Ranking) -> (usize, usize) {
    let best = ranking.max_of(set).expect("nonempty set");
    let worst = ranking.min_of(set).expect("nonempty set");
    (ranking.position(best), ranking.position(worst))
}

/// Positions (0 = top) of the best and worst members decide every relation.
#[inline]
fn nonstrict(kind: DominanceKind, x: (usize, usize), y: (usize, usize)) -> bool {
    match kind {
        DominanceKind::Weak => x.1 <= y.0,
        DominanceKind::Optimistic => x.0 <= y.0,
        DominanceKind::Pessimistic => x.1 <= y.1,
    }
}

#[inline]
fn strict(kind: DominanceKind, x: (usize, usize), y: (usize, usize)) -> bool {
    match kind {
        DominanceKind::Weak => x.1 <= y.0 && x.0 < y.1,
        DominanceKind::Optimistic => x.0 < y.0,
        DominanceKind::Pessimistic => x.1 < y.1,
    }
}

/// `X >=^kind Y` under `ranking`.
pub fn dominates_nonstrict(kind: DominanceKind, x: CandidateSet, y: CandidateSet, ranking: &Ranking) -> Result<bool> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(nonstrict(kind, extremes(x, ranking), extremes(y, ranking)))
}

/// `X >^kind Y` under `ranking`.
pub fn dominates_strict(kind: DominanceKind, x: CandidateSet, y: CandidateSet, ranking: &Ranking) -> Result<bool> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(strict(kind, extremes(x, ranking), extremes(y, ranking)))
}

/// Compares a post-move winning set against the sincere one.
#[inline]
pub fn compare(kind: DominanceKind, new: CandidateSet, old: CandidateSet, ranking: &Ranking) -> Comparison {
    let a = extremes(new, ranking);
    let b = extremes(old, ranking);
    Comparison {
        better: strict(kind, a, b),
        worse: strict(kind, b, a),
        at_least: nonstrict(kind, a, b),
    }
}
