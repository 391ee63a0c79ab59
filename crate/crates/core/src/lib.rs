//! Manipulability analysis for voters who are uncertain which voting method
//! will be used.
//!
//! The crate evaluates eleven classical (irresolute) voting methods, compares
//! winning sets under weak, optimistic and pessimistic dominance, detects
//! sure, safe, harmless and expected manipulation against a set of methods,
//! and counts manipulable profiles over whole profile spaces, either
//! exhaustively or by impartial-culture sampling. The [`pscf`] module relates
//! the set-based notions to stochastic-dominance manipulation of the lottery
//! induced by a uniform choice of method.
//!
//! With the default `parallel` feature the census runs on a rayon pool;
//! without it every census runs sequentially with identical results.

pub mod candidates;
pub mod census;
pub mod claims;
pub mod dominance;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod manipulation;
pub mod methods;
pub mod profile;
pub mod pscf;
pub mod ranking;

pub use candidates::{CandidateId, CandidateSet, Candidates, WinningSet};
pub use dominance::DominanceKind;
pub use error::{Error, Result};
pub use io::LabeledProfile;
pub use manipulation::{Notion, UncertaintySet, Witness};
pub use methods::MethodId;
pub use profile::{Ballots, GroupedBallots, PairwiseTally, PointedProfile, Profile};
pub use ranking::Ranking;

/// Largest supported number of candidates.
pub const MAX_CANDIDATES: usize = 16;

#[cfg(test)]
mod testutil;
