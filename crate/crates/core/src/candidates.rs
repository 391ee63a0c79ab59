//! Candidate ids, candidate sets and display labels.

use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_CANDIDATES;

/// Dense candidate index in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub u8);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for CandidateId {
    fn from(i: usize) -> Self {
        debug_assert!(i < MAX_CANDIDATES);
        CandidateId(i as u8)
    }
}

/// A set of candidates stored as a bitmask over candidate ids.
///
/// Winning sets are `CandidateSet`s that are never empty; the methods uphold
/// that, the type itself also represents the empty set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct CandidateSet(pub u32);

pub type WinningSet = CandidateSet;

impl CandidateSet {
    pub const EMPTY: CandidateSet = CandidateSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CANDIDATES);
        CandidateSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(c: CandidateId) -> Self {
        CandidateSet(1 << c.0)
    }

    pub fn from_ids<I: IntoIterator<Item = CandidateId>>(ids: I) -> Self {
        ids.into_iter().fold(Self::EMPTY, |s, c| s.with(c))
    }

    pub fn with(self, c: CandidateId) -> Self {
        CandidateSet(self.0 | (1 << c.0))
    }

    pub fn without(self, c: CandidateId) -> Self {
        CandidateSet(self.0 & !(1 << c.0))
    }

    pub fn contains(self, c: CandidateId) -> bool {
        self.0 & (1 << c.0) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        CandidateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        CandidateSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        CandidateSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending id order.
    pub fn iter(self) -> impl Iterator<Item = CandidateId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(CandidateId(i as u8))
        })
    }

    /// Relabels every member `c` as `sigma[c]`.
    pub fn permuted(self, sigma: &[CandidateId]) -> Self {
        Self::from_ids(self.iter().map(|c| sigma[c.index()]))
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.0)).finish()
    }
}

impl FromIterator<CandidateId> for CandidateSet {
    fn from_iter<T: IntoIterator<Item = CandidateId>>(iter: T) -> Self {
        Self::from_ids(iter)
    }
}

/// Display names for candidate ids. Labels only matter at the I/O boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidates {
    labels: Vec<String>,
}

impl Candidates {
    /// Labels `a`, `b`, `c`, ... for `n` candidates.
    pub fn default_labels(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_CANDIDATES {
            return Err(Error::CandidateCount(n));
        }
        let labels = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        Ok(Candidates { labels })
    }

    pub fn from_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() || labels.len() > MAX_CANDIDATES {
            return Err(Error::CandidateCount(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("invalid candidate label `{l}`"),
                });
            }
            if labels[..i].contains(l) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate candidate label `{l}`"),
                });
            }
        }
        Ok(Candidates { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, c: CandidateId) -> &str {
        &self.labels[c.index()]
    }

    pub fn id(&self, label: &str) -> Option<CandidateId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(CandidateId::from)
    }

    /// True when every label is one character, so sequences can be printed
    /// without separators (`bac`).
    pub fn compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// Splits a ranking or set written either compactly (`bac`) or with
    /// separators (`b a c`, `b,a,c`).
    pub fn split_tokens<'a>(&self, text: &'a str) -> Vec<&'a str> {
        let text = text.trim();
        if text.contains(|ch: char| ch.is_whitespace() || ch == ',') {
            text.split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|t| !t.is_empty())
                .collect()
        } else if self.compact() {
            text.char_indices()
                .map(|(i, ch)| &text[i..i + ch.len_utf8()])
                .collect()
        } else {
            vec![text]
        }
    }

    pub fn format_set(&self, set: CandidateSet) -> String {
        let names: Vec<&str> = set.iter().map(|c| self.label(c)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn format_sequence<I: IntoIterator<Item = CandidateId>>(&self, ids: I) -> String {
        let names: Vec<&str> = ids.into_iter().map(|c| self.label(c)).collect();
        if self.compact() {
            names.concat()
        } else {
            names.join(" ")
        }
    }
}
