//! Methods that only look at the pairwise majority tally.

use crate::candidates::{CandidateId, CandidateSet};
use crate::profile::PairwiseTally;
use crate::MAX_CANDIDATES;

use super::positional::argmax;

pub(crate) fn condorcet(tally: &PairwiseTally) -> CandidateSet {
    let n = tally.num_candidates();
    let all = CandidateSet::full(n);
    all.iter()
        .find(|&x| all.without(x).iter().all(|y| tally.net_unchecked(x, y) > 0))
        .map_or(all, CandidateSet::singleton)
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn copeland(tally: &PairwiseTally) -> CandidateSet {
    let n = tally.num_candidates();
    let mut record = [0i64; MAX_CANDIDATES];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                record[x] += tally.net_unchecked(CandidateId::from(x), CandidateId::from(y)).signum();
            }
        }
    }
    argmax(&record, CandidateSet::full(n))
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn maxmin(tally: &PairwiseTally) -> CandidateSet {
    let n = tally.num_candidates();
    let mut support = [i64::from(tally.num_voters()); MAX_CANDIDATES];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let c = i64::from(tally.count(CandidateId::from(x), CandidateId::from(y)));
                support[x] = support[x].min(c);
            }
        }
    }
    argmax(&support, CandidateSet::full(n))
}
