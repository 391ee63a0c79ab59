//! Strict linear orders over candidates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::candidates::{CandidateId, CandidateSet, Candidates};
use crate::error::{Error, Result};
use crate::MAX_CANDIDATES;

/// One voter's strict ranking, highest first.
///
/// Stores the permutation and its inverse so rank lookups are constant time.
#[derive(Clone, Copy)]
pub struct Ranking {
    len: u8,
    order: [u8; MAX_CANDIDATES],
    pos: [u8; MAX_CANDIDATES],
}

impl Ranking {
    pub fn new(order: &[CandidateId]) -> Result<Self> {
        let n = order.len();
        if n == 0 || n > MAX_CANDIDATES {
            return Err(Error::CandidateCount(n));
        }
        let mut r = Ranking {
            len: n as u8,
            order: [0; MAX_CANDIDATES],
            pos: [u8::MAX; MAX_CANDIDATES],
        };
        for (p, &c) in order.iter().enumerate() {
            if c.index() >= n {
                return Err(Error::NotAPermutation {
                    n,
                    detail: format!("candidate id {} out of range", c.0),
                });
            }
            if r.pos[c.index()] != u8::MAX {
                return Err(Error::NotAPermutation {
                    n,
                    detail: format!("candidate id {} repeated", c.0),
                });
            }
            r.order[p] = c.0;
            r.pos[c.index()] = p as u8;
        }
        Ok(r)
    }

    /// The ranking `0 1 2 ... n-1`.
    pub fn identity(n: usize) -> Result<Self> {
        let ids: Vec<CandidateId> = (0..n).map(CandidateId::from).collect();
        Self::new(&ids)
    }

    pub fn from_indices(order: &[usize]) -> Result<Self> {
        let ids: Vec<CandidateId> = order.iter().map(|&i| CandidateId::from(i)).collect();
        Self::new(&ids)
    }

    /// Parses `bac` or `b a c` against a label table.
    pub fn parse(text: &str, candidates: &Candidates) -> Result<Self> {
        let tokens = candidates.split_tokens(text);
        let n = candidates.len();
        if tokens.len() != n {
            return Err(Error::NotAPermutation {
                n,
                detail: format!("`{}` lists {} candidates", text.trim(), tokens.len()),
            });
        }
        let ids = tokens
            .iter()
            .map(|t| {
                candidates.id(t).ok_or_else(|| Error::NotAPermutation {
                    n,
                    detail: format!("unknown candidate `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ids)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn order(&self) -> impl ExactSizeIterator<Item = CandidateId> + '_ {
        self.order[..self.len()].iter().map(|&c| CandidateId(c))
    }

    pub fn at(&self, position: usize) -> CandidateId {
        CandidateId(self.order[position])
    }

    /// Zero-based position of `c`; the top candidate has position 0.
    #[inline]
    pub fn position(&self, c: CandidateId) -> usize {
        self.pos[c.index()] as usize
    }

    /// One-based rank of `c`.
    pub fn rank_of(&self, c: CandidateId) -> usize {
        self.position(c) + 1
    }

    /// `x P y`: strictly above.
    #[inline]
    pub fn prefers(&self, x: CandidateId, y: CandidateId) -> bool {
        self.pos[x.index()] < self.pos[y.index()]
    }

    /// `x R y`: above or equal.
    #[inline]
    pub fn weakly_prefers(&self, x: CandidateId, y: CandidateId) -> bool {
        self.pos[x.index()] <= self.pos[y.index()]
    }

    pub fn top(&self) -> CandidateId {
        CandidateId(self.order[0])
    }

    pub fn bottom(&self) -> CandidateId {
        CandidateId(self.order[self.len() - 1])
    }

    /// Highest-ranked member of `set`.
    #[inline]
    pub fn max_of(&self, set: CandidateSet) -> Option<CandidateId> {
        self.order[..self.len()]
            .iter()
            .find(|&&c| set.0 & (1 << c) != 0)
            .map(|&c| CandidateId(c))
    }

    /// Lowest-ranked member of `set`.
    #[inline]
    pub fn min_of(&self, set: CandidateSet) -> Option<CandidateId> {
        self.order[..self.len()]
            .iter()
            .rev()
            .find(|&&c| set.0 & (1 << c) != 0)
            .map(|&c| CandidateId(c))
    }

    /// Surviving candidates in their original relative order.
    pub fn restrict(&self, alive: CandidateSet) -> Result<Vec<CandidateId>> {
        if alive.intersection(CandidateSet::full(self.len())).is_empty() {
            return Err(Error::EmptyRestriction);
        }
        Ok(self.iter_within(alive).collect())
    }

    #[inline]
    pub fn iter_within(&self, alive: CandidateSet) -> impl Iterator<Item = CandidateId> + '_ {
        self.order[..self.len()]
            .iter()
            .filter(move |&&c| alive.0 & (1 << c) != 0)
            .map(|&c| CandidateId(c))
    }

    /// The ranking with every candidate `c` renamed to `sigma[c]`.
    pub fn permuted(&self, sigma: &[CandidateId]) -> Ranking {
        let ids: Vec<CandidateId> = self.order().map(|c| sigma[c.index()]).collect();
        Ranking::new(&ids).expect("relabeling by a permutation keeps a permutation")
    }

    /// The same order with one extra candidate appended at the bottom.
    pub fn with_bottom_candidate(&self) -> Result<Ranking> {
        let mut ids: Vec<CandidateId> = self.order().collect();
        ids.push(CandidateId::from(self.len()));
        Ranking::new(&ids)
    }

    /// Index in the lexicographic enumeration of all rankings of `len()` candidates.
    pub fn lex_index(&self) -> usize {
        let n = self.len();
        let mut used = 0u32;
        let mut index = 0usize;
        for p in 0..n {
            let c = self.order[p] as u32;
            let smaller_unused = (c - (used & ((1 << c) - 1)).count_ones()) as usize;
            index = index * (n - p) + smaller_unused;
            used |= 1 << c;
        }
        index
    }

    /// Inverse of [`Ranking::lex_index`].
    pub fn from_lex_index(n: usize, mut index: usize) -> Result<Ranking> {
        if n == 0 || n > MAX_CANDIDATES {
            return Err(Error::CandidateCount(n));
        }
        let mut digits = vec![0usize; n];
        for p in (0..n).rev() {
            let radix = n - p;
            digits[p] = index % radix;
            index /= radix;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let order: Vec<usize> = digits.into_iter().map(|d| pool.remove(d)).collect();
        Ranking::from_indices(&order)
    }

    pub fn display<'a>(&'a self, candidates: &'a Candidates) -> impl fmt::Display + 'a {
        DisplayRanking {
            ranking: self,
            candidates,
        }
    }
}

struct DisplayRanking<'a> {
    ranking: &'a Ranking,
    candidates: &'a Candidates,
}

impl fmt::Display for DisplayRanking<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.candidates.format_sequence(self.ranking.order()))
    }
}

impl PartialEq for Ranking {
    fn eq(&self, other: &Self) -> bool {
        self.order[..self.len()] == other.order[..other.len()]
    }
}

impl Eq for Ranking {}

impl Hash for Ranking {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order[..self.len()].hash(state);
    }
}

impl PartialOrd for Ranking {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranking {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order[..self.len()].cmp(&other.order[..other.len()])
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 26 {
            let s: String = self.order().map(|c| (b'a' + c.0) as char).collect();
            write!(f, "Ranking({s})")
        } else {
            write!(f, "Ranking({:?})", &self.order[..self.len()])
        }
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All `n!` rankings in lexicographic order.
pub fn all_rankings(n: usize) -> Result<Vec<Ranking>> {
    if n == 0 || n > MAX_CANDIDATES {
        return Err(Error::CandidateCount(n));
    }
    let mut out = Vec::with_capacity(factorial(n.min(10)));
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Ranking::from_indices(&current)?);
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    Ok(out)
}
