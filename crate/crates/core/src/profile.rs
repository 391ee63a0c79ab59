//! Profiles, pointed profiles and pairwise tallies.

use crate::candidates::CandidateId;
use crate::error::{Error, Result};
use crate::ranking::Ranking;

/// Anything the anonymous voting methods can count: rankings with
/// multiplicities. A plain profile has multiplicity one per voter.
pub trait Ballots {
    fn num_candidates(&self) -> usize;
    fn num_voters(&self) -> u32;
    fn weighted(&self) -> impl Iterator<Item = (&Ranking, u32)>;
}

/// A voter-indexed collection of rankings over the same `n` candidates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    n: usize,
    rankings: Vec<Ranking>,
}

impl Profile {
    pub fn new(rankings: Vec<Ranking>) -> Result<Self> {
        let first = rankings.first().ok_or(Error::NoVoters)?;
        let n = first.len();
        if let Some(bad) = rankings.iter().find(|r| r.len() != n) {
            return Err(Error::RankingLength {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Profile { n, rankings })
    }

    pub fn num_candidates(&self) -> usize {
        self.n
    }

    pub fn num_voters(&self) -> usize {
        self.rankings.len()
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    pub fn ranking(&self, voter: usize) -> Result<&Ranking> {
        self.rankings.get(voter).ok_or(Error::VoterOutOfRange {
            voter,
            voters: self.rankings.len(),
        })
    }

    /// A copy of the profile in which only `voter`'s ranking differs.
    pub fn replace_ranking(&self, voter: usize, new: Ranking) -> Result<Profile> {
        self.ranking(voter)?;
        if new.len() != self.n {
            return Err(Error::RankingLength {
                expected: self.n,
                got: new.len(),
            });
        }
        let mut rankings = self.rankings.clone();
        rankings[voter] = new;
        Ok(Profile { n: self.n, rankings })
    }

    pub fn pairwise_tally(&self) -> PairwiseTally {
        PairwiseTally::from_ballots(self)
    }

    pub fn pointed(&self, voter: usize) -> Result<PointedProfile<'_>> {
        PointedProfile::new(self, voter)
    }

    /// Relabels candidates: candidate `c` becomes `sigma[c]` in every ballot.
    pub fn permute_candidates(&self, sigma: &[CandidateId]) -> Profile {
        Profile {
            n: self.n,
            rankings: self.rankings.iter().map(|r| r.permuted(sigma)).collect(),
        }
    }

    /// Reorders voters: voter `i` of the result is voter `order[i]` here.
    pub fn permute_voters(&self, order: &[usize]) -> Profile {
        Profile {
            n: self.n,
            rankings: order.iter().map(|&i| self.rankings[i]).collect(),
        }
    }

    pub(crate) fn push_ranking(&mut self, r: Ranking) {
        debug_assert_eq!(r.len(), self.n);
        self.rankings.push(r);
    }
}

impl Ballots for Profile {
    fn num_candidates(&self) -> usize {
        self.n
    }

    fn num_voters(&self) -> u32 {
        self.rankings.len() as u32
    }

    fn weighted(&self) -> impl Iterator<Item = (&Ranking, u32)> {
        self.rankings.iter().map(|r| (r, 1))
    }
}

/// A profile together with a distinguished voter.
#[derive(Debug, Clone, Copy)]
pub struct PointedProfile<'a> {
    pub profile: &'a Profile,
    pub voter: usize,
}

impl<'a> PointedProfile<'a> {
    pub fn new(profile: &'a Profile, voter: usize) -> Result<Self> {
        profile.ranking(voter)?;
        Ok(PointedProfile { profile, voter })
    }

    pub fn sincere(&self) -> &Ranking {
        &self.profile.rankings()[self.voter]
    }
}

/// Distinct rankings with multiplicities. Used by the census engine, where a
/// profile is evaluated many times under single-ballot changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedBallots {
    n: usize,
    voters: u32,
    entries: Vec<(Ranking, u32)>,
}

impl GroupedBallots {
    pub fn new(n: usize) -> Self {
        GroupedBallots {
            n,
            voters: 0,
            entries: Vec::new(),
        }
    }

    pub fn from_profile(profile: &Profile) -> Self {
        let mut g = GroupedBallots::new(profile.num_candidates());
        for r in profile.rankings() {
            g.add(*r, 1);
        }
        g
    }

    pub fn clear(&mut self) {
        self.voters = 0;
        self.entries.clear();
    }

    pub fn add(&mut self, r: Ranking, weight: u32) {
        self.voters += weight;
        match self.entries.iter_mut().find(|(x, _)| *x == r) {
            Some((_, w)) => *w += weight,
            None => self.entries.push((r, weight)),
        }
    }

    /// Removes one ballot `r`. Entries that drop to zero stay in place so a
    /// later `add` of the same ranking restores the original layout.
    pub fn remove_one(&mut self, r: &Ranking) {
        let (_, w) = self
            .entries
            .iter_mut()
            .find(|(x, _)| x == r)
            .expect("removing a ballot that is not present");
        debug_assert!(*w > 0);
        *w -= 1;
        self.voters -= 1;
    }

    /// Drops zero-weight entries at the end, undoing the growth caused by an
    /// `add` of a new ranking that was later removed again.
    pub fn drop_empty_tail(&mut self) {
        while matches!(self.entries.last(), Some((_, 0))) {
            self.entries.pop();
        }
    }

    pub fn entries(&self) -> &[(Ranking, u32)] {
        &self.entries
    }
}

impl Ballots for GroupedBallots {
    fn num_candidates(&self) -> usize {
        self.n
    }

    fn num_voters(&self) -> u32 {
        self.voters
    }

    fn weighted(&self) -> impl Iterator<Item = (&Ranking, u32)> {
        self.entries.iter().filter(|(_, w)| *w > 0).map(|(r, w)| (r, *w))
    }
}

/// `counts[x][y]`: number of voters ranking `x` above `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseTally {
    n: usize,
    voters: u32,
    counts: Vec<u32>,
}

impl PairwiseTally {
    pub fn from_ballots<B: Ballots>(ballots: &B) -> Self {
        let n = ballots.num_candidates();
        let mut counts = vec![0u32; n * n];
        for (r, w) in ballots.weighted() {
            for p in 0..n {
                let x = r.at(p).index();
                for q in p + 1..n {
                    counts[x * n + r.at(q).index()] += w;
                }
            }
        }
        PairwiseTally {
            n,
            voters: ballots.num_voters(),
            counts,
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.n
    }

    pub fn num_voters(&self) -> u32 {
        self.voters
    }

    #[inline]
    pub fn count(&self, x: CandidateId, y: CandidateId) -> u32 {
        self.counts[x.index() * self.n + y.index()]
    }

    /// `N(x,y) - N(y,x)`.
    pub fn net(&self, x: CandidateId, y: CandidateId) -> Result<i64> {
        if x == y {
            return Err(Error::InvalidPair);
        }
        Ok(self.net_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn net_unchecked(&self, x: CandidateId, y: CandidateId) -> i64 {
        self.count(x, y) as i64 - self.count(y, x) as i64
    }

    pub fn majority_prefers(&self, x: CandidateId, y: CandidateId) -> bool {
        x != y && self.net_unchecked(x, y) > 0
    }
}
