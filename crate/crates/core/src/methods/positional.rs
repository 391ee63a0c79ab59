use crate::candidates::{CandidateId, CandidateSet};
use crate::error::{Error, Result};
use crate::profile::Ballots;
use crate::MAX_CANDIDATES;

pub(crate) type Scores = [i64; MAX_CANDIDATES];

/// Weights `s_1 >= s_2 >= ... >= s_k` awarded by rank among the live candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringVector(Vec<i64>);

impl ScoringVector {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ScoringVectorOrder);
        }
        Ok(ScoringVector(weights))
    }

    /// `<k-1, k-2, ..., 1, 0>`
    pub fn borda(k: usize) -> Self {
        ScoringVector((0..k as i64).rev().collect())
    }

    /// `<1, 0, ..., 0>`
    pub fn plurality(k: usize) -> Self {
        let mut w = vec![0; k];
        if let Some(first) = w.first_mut() {
            *first = 1;
        }
        ScoringVector(w)
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }
}

/// Argmax of summed positional scores over rankings restricted to `alive`.
pub fn positional_winners<B: Ballots>(
    vector: &ScoringVector,
    ballots: &B,
    alive: CandidateSet,
) -> Result<CandidateSet> {
    let alive = alive.intersection(CandidateSet::full(ballots.num_candidates()));
    if alive.is_empty() {
        return Err(Error::EmptyRestriction);
    }
    if vector.0.len() != alive.len() {
        return Err(Error::ScoringVectorLength {
            expected: alive.len(),
            got: vector.0.len(),
        });
    }
    let mut scores = [0i64; MAX_CANDIDATES];
    for (r, w) in ballots.weighted() {
        for (c, s) in r.iter_within(alive).zip(&vector.0) {
            scores[c.index()] += s * w as i64;
        }
    }
    Ok(argmax(&scores, alive))
}

/// First-place counts among the live candidates.
#[inline]
pub(crate) fn restricted_firsts<B: Ballots>(ballots: &B, alive: CandidateSet) -> Scores {
    let mut firsts = [0i64; MAX_CANDIDATES];
    for (r, w) in ballots.weighted() {
        if let Some(c) = r.max_of(alive) {
            firsts[c.index()] += w as i64;
        }
    }
    firsts
}

/// Last-place counts among the live candidates.
#[inline]
pub(crate) fn restricted_lasts<B: Ballots>(ballots: &B, alive: CandidateSet) -> Scores {
    let mut lasts = [0i64; MAX_CANDIDATES];
    for (r, w) in ballots.weighted() {
        if let Some(c) = r.min_of(alive) {
            lasts[c.index()] += w as i64;
        }
    }
    lasts
}

/// Borda scores with `<k-1, ..., 0>` for the `k` live candidates.
#[inline]
pub(crate) fn restricted_borda<B: Ballots>(ballots: &B, alive: CandidateSet) -> Scores {
    let k = alive.len() as i64;
    let mut scores = [0i64; MAX_CANDIDATES];
    for (r, w) in ballots.weighted() {
        let mut points = k;
        for c in r.iter_within(alive) {
            points -= 1;
            scores[c.index()] += points * w as i64;
        }
    }
    scores
}

#[inline]
pub(crate) fn argmax(scores: &Scores, among: CandidateSet) -> CandidateSet {
    let best = among.iter().map(|c| scores[c.index()]).max();
    match best {
        Some(best) => among.iter().filter(|c| scores[c.index()] == best).collect(),
        None => CandidateSet::EMPTY,
    }
}

#[inline]
pub(crate) fn argmin(scores: &Scores, among: CandidateSet) -> CandidateSet {
    let worst = among.iter().map(|c| scores[c.index()]).min();
    match worst {
        Some(worst) => among.iter().filter(|c| scores[c.index()] == worst).collect(),
        None => CandidateSet::EMPTY,
    }
}

pub(crate) fn plurality<B: Ballots>(ballots: &B) -> CandidateSet {
    let all = CandidateSet::full(ballots.num_candidates());
    argmax(&restricted_firsts(ballots, all), all)
}

pub(crate) fn borda<B: Ballots>(ballots: &B) -> CandidateSet {
    let all = CandidateSet::full(ballots.num_candidates());
    argmax(&restricted_borda(ballots, all), all)
}

/// Borda score of `c` over the full candidate set.
pub fn borda_score<B: Ballots>(ballots: &B, c: CandidateId) -> i64 {
    restricted_borda(ballots, CandidateSet::full(ballots.num_candidates()))[c.index()]
}
