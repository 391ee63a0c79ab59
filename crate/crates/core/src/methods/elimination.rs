//! Methods that eliminate candidates in rounds. Every round rescores the
//! ballots restricted to the surviving candidates.

use crate::candidates::CandidateSet;
use crate::profile::Ballots;

use super::positional::{argmax, argmin, restricted_borda, restricted_firsts, restricted_lasts, Scores};

#[inline]
fn all_equal(scores: &Scores, alive: CandidateSet) -> bool {
    let mut it = alive.iter().map(|c| scores[c.index()]);
    let first = it.next();
    it.all(|s| Some(s) == first)
}

#[inline]
fn majority_winner(firsts: &Scores, alive: CandidateSet, voters: u32) -> Option<CandidateSet> {
    alive
        .iter()
        .find(|c| 2 * firsts[c.index()] > i64::from(voters))
        .map(CandidateSet::singleton)
}

pub(crate) fn plurality_with_runoff<B: Ballots>(ballots: &B) -> CandidateSet {
    let all = CandidateSet::full(ballots.num_candidates());
    let firsts = restricted_firsts(ballots, all);
    let top = argmax(&firsts, all);
    let finalists = if top.len() >= 2 {
        top
    } else {
        top.union(argmax(&firsts, all.difference(top)))
    };
    argmax(&restricted_firsts(ballots, finalists), finalists)
}

pub(crate) fn hare<B: Ballots>(ballots: &B) -> CandidateSet {
    let voters = ballots.num_voters();
    let mut alive = CandidateSet::full(ballots.num_candidates());
    loop {
        let firsts = restricted_firsts(ballots, alive);
        if let Some(w) = majority_winner(&firsts, alive, voters) {
            return w;
        }
        if all_equal(&firsts, alive) {
            return alive;
        }
        alive = alive.difference(argmin(&firsts, alive));
    }
}

pub(crate) fn coombs<B: Ballots>(ballots: &B) -> CandidateSet {
    let voters = ballots.num_voters();
    let mut alive = CandidateSet::full(ballots.num_candidates());
    loop {
        let firsts = restricted_firsts(ballots, alive);
        if let Some(w) = majority_winner(&firsts, alive, voters) {
            return w;
        }
        let lasts = restricted_lasts(ballots, alive);
        if all_equal(&lasts, alive) {
            return alive;
        }
        alive = alive.difference(argmax(&lasts, alive));
    }
}

pub(crate) fn baldwin<B: Ballots>(ballots: &B) -> CandidateSet {
    let mut alive = CandidateSet::full(ballots.num_candidates());
    while alive.len() > 1 {
        let scores = restricted_borda(ballots, alive);
        if all_equal(&scores, alive) {
            break;
        }
        alive = alive.difference(argmin(&scores, alive));
    }
    alive
}

/// Removes candidates whose restricted Borda score is below the live average
/// (`strict`) or at most the average. The average is compared exactly as
/// `k * score` against the score total.
pub(crate) fn nanson<B: Ballots>(ballots: &B, strict: bool) -> CandidateSet {
    let mut alive = CandidateSet::full(ballots.num_candidates());
    while alive.len() > 1 {
        let scores = restricted_borda(ballots, alive);
        let k = alive.len() as i64;
        let total: i64 = alive.iter().map(|c| scores[c.index()]).sum();
        let out: CandidateSet = alive
            .iter()
            .filter(|c| {
                let scaled = k * scores[c.index()];
                if strict {
                    scaled < total
                } else {
                    scaled <= total
                }
            })
            .collect();
        if out.is_empty() || out == alive {
            break;
        }
        alive = alive.difference(out);
    }
    alive
}
