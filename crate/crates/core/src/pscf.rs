//! The lottery induced by a uniform choice of method from an uncertainty set
//! followed by a uniform tiebreak within its winning set, and
//! stochastic-dominance manipulation of that lottery.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::candidates::{CandidateId, Candidates};
use crate::dominance::DominanceKind;
use crate::error::{Error, Result};
use crate::manipulation::{classify_transition, MethodOutcome, Notion, UncertaintySet, Weights};
use crate::profile::Profile;
use crate::ranking::{all_rankings, Ranking};

pub type Probability = Ratio<i64>;

/// A probability distribution over candidates, indexed by candidate id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lottery {
    probs: Vec<Probability>,
}

impl Lottery {
    pub fn new(probs: Vec<Probability>) -> Result<Self> {
        if probs.iter().any(|p| *p < Probability::from_integer(0)) {
            return Err(Error::Lottery("negative probability".into()));
        }
        let total: Probability = probs.iter().sum();
        if total != Probability::from_integer(1) {
            return Err(Error::Lottery(format!("probabilities sum to {total}")));
        }
        Ok(Lottery { probs })
    }

    pub fn probs(&self) -> &[Probability] {
        &self.probs
    }

    pub fn prob(&self, c: CandidateId) -> Probability {
        self.probs[c.index()]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// `[a:1/2, b:1/2, c:0]`
    pub fn display<'a>(&'a self, candidates: &'a Candidates) -> impl fmt::Display + 'a {
        DisplayLottery {
            lottery: self,
            candidates,
        }
    }
}

struct DisplayLottery<'a> {
    lottery: &'a Lottery,
    candidates: &'a Candidates,
}

impl fmt::Display for DisplayLottery<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lottery
            .probs
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{}:{}", self.candidates.label(CandidateId::from(i)), p))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Serialises as exact fraction strings, e.g. `["2/3","1/3","0"]`.
impl Serialize for Lottery {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.probs.iter().map(ToString::to_string))
    }
}

/// `mu(a) = sum over f in S with a in f(P) of 1/|f(P)| * 1/|S|`.
pub fn induced_lottery(set: &UncertaintySet, profile: &Profile) -> Result<Lottery> {
    let n = profile.num_candidates();
    let share = Probability::new(1, set.len() as i64);
    let mut probs = vec![Probability::from_integer(0); n];
    for method in set.methods() {
        let winners = method.winners(profile)?;
        let each = share / winners.len() as i64;
        for c in winners.iter() {
            probs[c.index()] += each;
        }
    }
    Lottery::new(probs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SdComparison {
    pub nonstrict: bool,
    pub strict: bool,
}

fn upper_cumulative_ge(mu: &Lottery, nu: &Lottery, ranking: &Ranking) -> bool {
    let (mut a, mut b) = (Probability::from_integer(0), Probability::from_integer(0));
    ranking.order().all(|c| {
        a += mu.prob(c);
        b += nu.prob(c);
        a >= b
    })
}

/// Whether `mu` stochastically dominates `nu` for a voter with `ranking`:
/// every upper set of the ranking gets at least as much probability.
pub fn stochastically_dominates(mu: &Lottery, nu: &Lottery, ranking: &Ranking) -> Result<SdComparison> {
    for l in [mu, nu] {
        if l.len() != ranking.len() {
            return Err(Error::RankingLength {
                expected: l.len(),
                got: ranking.len(),
            });
        }
        Lottery::new(l.probs.clone())?;
    }
    let forward = upper_cumulative_ge(mu, nu, ranking);
    Ok(SdComparison {
        nonstrict: forward,
        strict: forward && !upper_cumulative_ge(nu, mu, ranking),
    })
}

/// A move after which the induced lottery strictly stochastically dominates
/// the sincere one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdWitness {
    pub voter: usize,
    pub new_ranking: Ranking,
    pub before: Lottery,
    pub after: Lottery,
    /// Per-method outcomes under weak dominance, for reporting.
    pub outcomes: Vec<MethodOutcome>,
}

fn sd_move(profile: &Profile, voter: usize, new: Ranking, set: &UncertaintySet, before: &Lottery) -> Result<Option<Lottery>> {
    let sincere = *profile.ranking(voter)?;
    let after = induced_lottery(set, &profile.replace_ranking(voter, new)?)?;
    Ok(stochastically_dominates(&after, before, &sincere)?.strict.then_some(after))
}

/// The first alternative ranking (lexicographic) whose induced lottery
/// strictly stochastically dominates the sincere one for `voter`.
pub fn find_sd_manipulation(profile: &Profile, voter: usize, set: &UncertaintySet) -> Result<Option<SdWitness>> {
    let sincere = *profile.ranking(voter)?;
    let before = induced_lottery(set, profile)?;
    for new in all_rankings(profile.num_candidates())? {
        if new == sincere {
            continue;
        }
        if let Some(after) = sd_move(profile, voter, new, set, &before)? {
            return Ok(Some(SdWitness {
                voter,
                new_ranking: new,
                outcomes: classify_transition(profile, voter, new, set, DominanceKind::Weak)?,
                before,
                after,
            }));
        }
    }
    Ok(None)
}

/// Decides a single move for the stochastic notions.
pub(crate) fn is_stochastic_witness(
    profile: &Profile,
    voter: usize,
    new: Ranking,
    set: &UncertaintySet,
    notion: &Notion,
    kind: DominanceKind,
) -> Result<bool> {
    if *profile.ranking(voter)? == new {
        return Err(Error::IdenticalRanking);
    }
    let before = induced_lottery(set, profile)?;
    let sd = sd_move(profile, voter, new, set, &before)?.is_some();
    Ok(match notion {
        Notion::StochasticNotExpected => {
            sd && !crate::manipulation::is_witness(profile, voter, new, set, &Notion::Expected(Weights::Uniform), kind)?
        }
        _ => sd,
    })
}
