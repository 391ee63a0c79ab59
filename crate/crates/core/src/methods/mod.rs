//! The eleven voting methods, the tiebreak wrapper and the pairwise-dictator
//! rule. Every method maps a profile to a nonempty winning set.

mod elimination;
mod majority;
mod positional;

use std::fmt;

use crate::candidates::{CandidateId, CandidateSet, Candidates};
use crate::error::{Error, Result};
use crate::profile::{Ballots, PairwiseTally, Profile};
use crate::ranking::Ranking;

pub use positional::{borda_score, positional_winners, ScoringVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    Plurality,
    Borda,
    Condorcet,
    Copeland,
    MaxMin,
    PluralityWRunoff,
    Hare,
    Coombs,
    Baldwin,
    StrictNanson,
    WeakNanson,
    /// `max(inner(P), order)`: a resolute version of `inner`.
    Tiebroken { inner: Box<MethodId>, order: Ranking },
    /// Elects whichever of `x`, `y` voter `voter` ranks higher.
    PairwiseDictator { x: CandidateId, y: CandidateId, voter: usize },
}

impl MethodId {
    /// The eleven plain methods in their canonical order.
    pub const PLAIN: [MethodId; 11] = [
        MethodId::Plurality,
        MethodId::Borda,
        MethodId::Condorcet,
        MethodId::Copeland,
        MethodId::MaxMin,
        MethodId::PluralityWRunoff,
        MethodId::Hare,
        MethodId::Coombs,
        MethodId::Baldwin,
        MethodId::StrictNanson,
        MethodId::WeakNanson,
    ];

    pub fn tiebroken(inner: MethodId, order: Ranking) -> Self {
        MethodId::Tiebroken {
            inner: Box::new(inner),
            order,
        }
    }

    pub fn pairwise_dictator(x: CandidateId, y: CandidateId, voter: usize) -> Result<Self> {
        if x == y {
            return Err(Error::InvalidPair);
        }
        Ok(MethodId::PairwiseDictator { x, y, voter })
    }

    /// Whether the method ignores voter identities. Only the pairwise
    /// dictator (or a tiebroken version of it) looks at who cast a ballot.
    pub fn is_anonymous(&self) -> bool {
        match self {
            MethodId::PairwiseDictator { .. } => false,
            MethodId::Tiebroken { inner, .. } => inner.is_anonymous(),
            _ => true,
        }
    }

    /// Checks that the method makes sense for `n` candidates and `m` voters.
    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        match self {
            MethodId::Tiebroken { inner, order } => {
                if order.len() != n {
                    return Err(Error::RankingLength {
                        expected: n,
                        got: order.len(),
                    });
                }
                inner.validate(n, m)
            }
            MethodId::PairwiseDictator { x, y, voter } => {
                if x == y || x.index() >= n || y.index() >= n {
                    return Err(Error::InvalidPair);
                }
                if *voter >= m {
                    return Err(Error::VoterOutOfRange {
                        voter: *voter,
                        voters: m,
                    });
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The winning set of this method on `profile`.
    pub fn winners(&self, profile: &Profile) -> Result<CandidateSet> {
        self.validate(profile.num_candidates(), profile.num_voters())?;
        Ok(self.evaluate(profile, &|i| profile.rankings()[i]))
    }

    /// Evaluates on counted ballots. `voter_ranking` resolves voter identities
    /// for the non-anonymous methods; anonymous methods never call it.
    pub fn evaluate<B: Ballots, F: Fn(usize) -> Ranking>(
        &self,
        ballots: &B,
        voter_ranking: &F,
    ) -> CandidateSet {
        match self {
            MethodId::Plurality => positional::plurality(ballots),
            MethodId::Borda => positional::borda(ballots),
            MethodId::Condorcet => majority::condorcet(&PairwiseTally::from_ballots(ballots)),
            MethodId::Copeland => majority::copeland(&PairwiseTally::from_ballots(ballots)),
            MethodId::MaxMin => majority::maxmin(&PairwiseTally::from_ballots(ballots)),
            MethodId::PluralityWRunoff => elimination::plurality_with_runoff(ballots),
            MethodId::Hare => elimination::hare(ballots),
            MethodId::Coombs => elimination::coombs(ballots),
            MethodId::Baldwin => elimination::baldwin(ballots),
            MethodId::StrictNanson => elimination::nanson(ballots, true),
            MethodId::WeakNanson => elimination::nanson(ballots, false),
            MethodId::Tiebroken { inner, order } => {
                let set = inner.evaluate(ballots, voter_ranking);
                CandidateSet::singleton(order.max_of(set).expect("winning sets are nonempty"))
            }
            MethodId::PairwiseDictator { x, y, voter } => {
                let r = voter_ranking(*voter);
                CandidateSet::singleton(if r.prefers(*x, *y) { *x } else { *y })
            }
        }
    }

    /// Evaluates an anonymous method on counted ballots.
    ///
    /// # Panics
    /// If the method is not anonymous.
    pub fn evaluate_anonymous<B: Ballots>(&self, ballots: &B) -> CandidateSet {
        self.evaluate(ballots, &|_| panic!("{self:?} is not anonymous"))
    }

    /// Name in the CLI syntax: `borda`, `borda@acb`, `pdict:a,b,0`.
    pub fn name(&self, candidates: &Candidates) -> String {
        match self {
            MethodId::Tiebroken { inner, order } => {
                format!("{}@{}", inner.name(candidates), order.display(candidates))
            }
            MethodId::PairwiseDictator { x, y, voter } => format!(
                "pdict:{},{},{}",
                candidates.label(*x),
                candidates.label(*y),
                voter
            ),
            plain => plain.plain_name().to_string(),
        }
    }

    fn plain_name(&self) -> &'static str {
        match self {
            MethodId::Plurality => "plurality",
            MethodId::Borda => "borda",
            MethodId::Condorcet => "condorcet",
            MethodId::Copeland => "copeland",
            MethodId::MaxMin => "maxmin",
            MethodId::PluralityWRunoff => "plurality_runoff",
            MethodId::Hare => "hare",
            MethodId::Coombs => "coombs",
            MethodId::Baldwin => "baldwin",
            MethodId::StrictNanson => "strict_nanson",
            MethodId::WeakNanson => "weak_nanson",
            MethodId::Tiebroken { .. } => "tiebroken",
            MethodId::PairwiseDictator { .. } => "pdict",
        }
    }

    pub fn parse(text: &str, candidates: &Candidates) -> Result<Self> {
        let text = text.trim();
        if let Some((inner, order)) = text.rsplit_once('@') {
            let inner = MethodId::parse(inner, candidates)?;
            let order = Ranking::parse(order, candidates)?;
            return Ok(MethodId::tiebroken(inner, order));
        }
        if let Some(args) = text.strip_prefix("pdict:") {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            let [x, y, voter] = parts[..] else {
                return Err(Error::Unknown {
                    what: "method",
                    name: text.into(),
                });
            };
            let id = |label: &str| {
                candidates.id(label).ok_or_else(|| Error::Unknown {
                    what: "candidate",
                    name: label.into(),
                })
            };
            let voter = voter.parse().map_err(|_| Error::Unknown {
                what: "voter index",
                name: voter.into(),
            })?;
            return MethodId::pairwise_dictator(id(x)?, id(y)?, voter);
        }
        let lower = text.to_ascii_lowercase().replace('-', "_");
        MethodId::PLAIN
            .iter()
            .find(|m| m.plain_name() == lower)
            .cloned()
            .or(match lower.as_str() {
                "pluralitywrunoff" | "plurality_with_runoff" => Some(MethodId::PluralityWRunoff),
                "strictnanson" => Some(MethodId::StrictNanson),
                "weaknanson" => Some(MethodId::WeakNanson),
                _ => None,
            })
            .ok_or_else(|| Error::Unknown {
                what: "method",
                name: text.into(),
            })
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodId::Tiebroken { inner, order } => {
                let labels = Candidates::default_labels(order.len()).map_err(|_| fmt::Error)?;
                let order = order.display(&labels).to_string();
                write!(f, "{inner}@{order}")
            }
            MethodId::PairwiseDictator { x, y, voter } => {
                write!(f, "pdict:{},{},{}", (b'a' + x.0) as char, (b'a' + y.0) as char, voter)
            }
            plain => f.write_str(plain.plain_name()),
        }
    }
}

/// Winners of `method` on `profile`; shorthand for [`MethodId::winners`].
pub fn winners(method: &MethodId, profile: &Profile) -> Result<CandidateSet> {
    method.winners(profile)
}

/// `{x}` if `x` beats every other candidate head to head, otherwise everyone.
pub fn condorcet(profile: &Profile) -> CandidateSet {
    majority::condorcet(&profile.pairwise_tally())
}

pub fn copeland(profile: &Profile) -> CandidateSet {
    majority::copeland(&profile.pairwise_tally())
}

pub fn maxmin(profile: &Profile) -> CandidateSet {
    majority::maxmin(&profile.pairwise_tally())
}

pub fn plurality_with_runoff(profile: &Profile) -> CandidateSet {
    elimination::plurality_with_runoff(profile)
}

pub fn hare(profile: &Profile) -> CandidateSet {
    elimination::hare(profile)
}

pub fn coombs(profile: &Profile) -> CandidateSet {
    elimination::coombs(profile)
}

pub fn baldwin(profile: &Profile) -> CandidateSet {
    elimination::baldwin(profile)
}

pub fn strict_nanson(profile: &Profile) -> CandidateSet {
    elimination::nanson(profile, true)
}

pub fn weak_nanson(profile: &Profile) -> CandidateSet {
    elimination::nanson(profile, false)
}

/// The singleton `max(inner(P), order)`.
pub fn tiebroken_winners(inner: &MethodId, order: &Ranking, profile: &Profile) -> Result<CandidateSet> {
    MethodId::tiebroken(inner.clone(), *order).winners(profile)
}

pub fn pairwise_dictator(
    x: CandidateId,
    y: CandidateId,
    voter: usize,
    profile: &Profile,
) -> Result<CandidateSet> {
    MethodId::pairwise_dictator(x, y, voter)?.winners(profile)
}

#[cfg(test)]
mod tests;
