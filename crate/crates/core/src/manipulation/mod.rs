//! Detecting when a voter who is unsure which method from a set will be used
//! still has a reason to misreport.
//!
//! Every detector reduces a candidate move (voter `i` switches to a new
//! ranking) to one [`Comparison`] per method, old winning set against new,
//! judged by the voter's sincere ranking. The notions then differ only in how
//! they aggregate those comparisons:
//!
//! | notion     | witness when                                        |
//! |------------|-----------------------------------------------------|
//! | `single`   | the only method gets strictly better                |
//! | `sure`     | every method gets strictly better                   |
//! | `safe`     | every method is at least as good, one is better     |
//! | `harmless` | no method gets worse, one is better                 |
//! | `expected` | weight of better methods exceeds weight of worse    |

mod constructions;
mod susceptibility;

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::candidates::{CandidateSet, Candidates};
use crate::dominance::{compare, Comparison, DominanceKind};
use crate::error::{Error, Result};
use crate::methods::MethodId;
use crate::profile::Profile;
use crate::ranking::{all_rankings, Ranking};

pub use constructions::{add_24_voters, add_bottom_candidate, add_two_voters};
pub use susceptibility::{eliminates, improves_on_all_subsets, less_susceptible, CountBasis, EliminationReport, SubsetCount};

pub type Weight = Ratio<i64>;

/// The methods a voter considers possible. Nonempty, no duplicates, kept in
/// the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UncertaintySet {
    methods: Vec<MethodId>,
}

impl UncertaintySet {
    pub fn new(methods: Vec<MethodId>) -> Result<Self> {
        if methods.is_empty() {
            return Err(Error::EmptyUncertaintySet);
        }
        for (i, m) in methods.iter().enumerate() {
            if methods[..i].contains(m) {
                return Err(Error::DuplicateMethod(m.to_string()));
            }
        }
        Ok(UncertaintySet { methods })
    }

    pub fn single(method: MethodId) -> Self {
        UncertaintySet {
            methods: vec![method],
        }
    }

    pub fn methods(&self) -> &[MethodId] {
        &self.methods
    }

    pub fn len(&self) -> usize {
        self.methods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.methods.is_empty()
    }

    pub fn contains(&self, m: &MethodId) -> bool {
        self.methods.contains(m)
    }

    /// Nonempty proper subsets, smallest first, preserving method order.
    pub fn proper_subsets(&self) -> Vec<UncertaintySet> {
        let k = self.methods.len();
        let mut masks: Vec<u64> = (1..(1u64 << k) - 1).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks
            .into_iter()
            .map(|mask| UncertaintySet {
                methods: (0..k)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| self.methods[b].clone())
                    .collect(),
            })
            .collect()
    }

    pub fn is_anonymous(&self) -> bool {
        self.methods.iter().all(MethodId::is_anonymous)
    }

    pub fn name(&self, candidates: &Candidates) -> String {
        let names: Vec<String> = self.methods.iter().map(|m| m.name(candidates)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn parse(text: &str, candidates: &Candidates) -> Result<Self> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        // pdict arguments contain commas, so split on `+` or `;` when present
        let parts: Vec<String> = if text.contains('+') || text.contains(';') {
            text.split(['+', ';']).map(String::from).collect()
        } else {
            join_dictator_args(text.split(','))
        };
        UncertaintySet::new(
            parts
                .into_iter()
                .map(|p| p.trim().to_string())
                .filter(|p| !p.is_empty())
                .map(|p| MethodId::parse(&p, candidates))
                .collect::<Result<_>>()?,
        )
    }
}

/// Rejoins `pdict:x`, `y`, `i` after a comma split.
fn join_dictator_args<'a>(tokens: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut pending = 0;
    for t in tokens {
        match out.last_mut() {
            Some(last) if pending > 0 => {
                last.push(',');
                last.push_str(t);
                pending -= 1;
            }
            _ => {
                pending = if t.trim_start().starts_with("pdict:") { 2 } else { 0 };
                out.push(t.to_string());
            }
        }
    }
    out
}

impl fmt::Display for UncertaintySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.methods.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Probability weights over the methods of an uncertainty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Weights {
    #[default]
    Uniform,
    /// Aligned with the set's method order.
    Explicit(Vec<Weight>),
}

impl Weights {
    pub fn explicit(weights: Vec<Weight>) -> Result<Self> {
        if weights.iter().any(|w| *w < Weight::from_integer(0)) {
            return Err(Error::Weights("negative weight".into()));
        }
        let total: Weight = weights.iter().sum();
        if total != Weight::from_integer(1) {
            return Err(Error::Weights(format!("weights sum to {total}, not 1")));
        }
        Ok(Weights::Explicit(weights))
    }

    /// Parses `1/3,1/3,1/3` or `0.25,0.75`; decimals are read exactly.
    pub fn parse(text: &str) -> Result<Self> {
        let weights = text
            .split(',')
            .map(|t| parse_exact(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Weights::explicit(weights)
    }

    pub(crate) fn check(&self, set_len: usize) -> Result<()> {
        match self {
            Weights::Explicit(w) if w.len() != set_len => Err(Error::Weights(format!(
                "{} weights for {set_len} methods",
                w.len()
            ))),
            _ => Ok(()),
        }
    }

    /// Whether every method has positive weight.
    pub fn full_support(&self) -> bool {
        match self {
            Weights::Uniform => true,
            Weights::Explicit(w) => w.iter().all(|x| *x > Weight::from_integer(0)),
        }
    }
}

fn parse_exact(t: &str) -> Result<Weight> {
    let bad = || Error::Weights(format!("cannot read `{t}` as a number"));
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Weight::new(num, den));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let scale = 10i64.pow(frac.len() as u32);
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    Ok(Weight::new(int * scale + frac, scale))
}

/// Which aggregate rule turns per-method comparisons into a manipulation
/// incentive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Notion {
    /// One method, strictly better.
    Single,
    Sure,
    Safe,
    Harmless,
    Expected(Weights),
    /// Strict stochastic dominance between the induced lotteries (the
    /// dominance kind is ignored). Census only.
    Stochastic,
    /// A move that is a stochastic-dominance witness but not a uniform
    /// expected witness under the chosen dominance kind. Census only.
    StochasticNotExpected,
}

impl Notion {
    pub fn name(&self) -> &'static str {
        match self {
            Notion::Single => "single",
            Notion::Sure => "sure",
            Notion::Safe => "safe",
            Notion::Harmless => "harmless",
            Notion::Expected(_) => "expected",
            Notion::Stochastic => "sd",
            Notion::StochasticNotExpected => "sd-not-expected",
        }
    }

    pub fn parse(text: &str, weights: Option<&str>) -> Result<Self> {
        let notion = match text.to_ascii_lowercase().as_str() {
            "single" => Notion::Single,
            "sure" => Notion::Sure,
            "safe" => Notion::Safe,
            "harmless" => Notion::Harmless,
            "expected" => Notion::Expected(match weights {
                Some(w) => Weights::parse(w)?,
                None => Weights::Uniform,
            }),
            "sd" | "stochastic" => Notion::Stochastic,
            "sd-not-expected" => Notion::StochasticNotExpected,
            _ => {
                return Err(Error::Unknown {
                    what: "notion",
                    name: text.into(),
                })
            }
        };
        if weights.is_some() && !matches!(notion, Notion::Expected(_)) {
            return Err(Error::Weights("weights only apply to the expected notion".into()));
        }
        Ok(notion)
    }

    /// Validates the notion against a set.
    pub fn check(&self, set: &UncertaintySet) -> Result<()> {
        match self {
            Notion::Single if set.len() != 1 => Err(Error::SingleNeedsOneMethod(set.len())),
            Notion::Expected(w) => w.check(set.len()),
            _ => Ok(()),
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, Notion::Stochastic | Notion::StochasticNotExpected)
    }

    /// Decides a move from per-method comparisons packed as bitmasks over
    /// method slots. `slots` are the set's members; `weights` is aligned
    /// with `slots` when explicit.
    #[inline]
    pub(crate) fn accepts_masks(&self, masks: &Masks, set: u64, weights: &[(usize, Weight)]) -> bool {
        let better = masks.better & set;
        let worse = masks.worse & set;
        match self {
            Notion::Single | Notion::Sure => better == set,
            Notion::Safe => masks.at_least & set == set && better != 0,
            Notion::Harmless => worse == 0 && better != 0,
            Notion::Expected(Weights::Uniform) => better.count_ones() > worse.count_ones(),
            Notion::Expected(Weights::Explicit(_)) => {
                let mass = |mask: u64| -> Weight {
                    weights
                        .iter()
                        .filter(|(slot, _)| mask & (1 << slot) != 0)
                        .map(|(_, w)| *w)
                        .sum()
                };
                mass(better) > mass(worse)
            }
            Notion::Stochastic | Notion::StochasticNotExpected => {
                unreachable!("stochastic notions are decided from lotteries")
            }
        }
    }

    /// Decides a move from per-method comparisons in set order.
    pub fn accepts(&self, comparisons: &[Comparison]) -> bool {
        assert!(comparisons.len() <= 64);
        let masks = Masks::from_comparisons(comparisons);
        let set = if comparisons.len() == 64 { u64::MAX } else { (1u64 << comparisons.len()) - 1 };
        let weights: Vec<(usize, Weight)> = match self {
            Notion::Expected(Weights::Explicit(w)) => w.iter().copied().enumerate().collect(),
            _ => Vec::new(),
        };
        self.accepts_masks(&masks, set, &weights)
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-method comparisons packed into bitmasks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Masks {
    pub better: u64,
    pub worse: u64,
    pub at_least: u64,
}

impl Masks {
    #[inline]
    pub fn record(&mut self, slot: usize, c: Comparison) {
        let bit = 1u64 << slot;
        if c.better {
            self.better |= bit;
        }
        if c.worse {
            self.worse |= bit;
        }
        if c.at_least {
            self.at_least |= bit;
        }
    }

    pub fn from_comparisons(cs: &[Comparison]) -> Self {
        let mut m = Masks::default();
        for (slot, c) in cs.iter().enumerate() {
            m.record(slot, *c);
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Better,
    Worse,
    /// Equal or incomparable.
    Neutral,
}

impl From<Comparison> for Verdict {
    fn from(c: Comparison) -> Self {
        if c.better {
            Verdict::Better
        } else if c.worse {
            Verdict::Worse
        } else {
            Verdict::Neutral
        }
    }
}

/// One method's reaction to a move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodOutcome {
    pub method: MethodId,
    pub before: CandidateSet,
    pub after: CandidateSet,
    pub comparison: Comparison,
}

impl MethodOutcome {
    pub fn verdict(&self) -> Verdict {
        self.comparison.into()
    }
}

/// A move that witnesses manipulability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub voter: usize,
    pub new_ranking: Ranking,
    pub outcomes: Vec<MethodOutcome>,
}

fn sincere_winners(profile: &Profile, set: &UncertaintySet) -> Result<Vec<CandidateSet>> {
    set.methods().iter().map(|m| m.winners(profile)).collect()
}

fn outcomes_for(
    profile: &Profile,
    voter: usize,
    new: Ranking,
    set: &UncertaintySet,
    before: &[CandidateSet],
    kind: DominanceKind,
) -> Result<Vec<MethodOutcome>> {
    let sincere = profile.rankings()[voter];
    let moved = profile.replace_ranking(voter, new)?;
    set.methods()
        .iter()
        .zip(before)
        .map(|(m, &before)| {
            let after = m.winners(&moved)?;
            Ok(MethodOutcome {
                method: m.clone(),
                before,
                after,
                comparison: compare(kind, after, before, &sincere),
            })
        })
        .collect()
}

/// Classifies, method by method, the move of `voter` to `new`.
pub fn classify_transition(
    profile: &Profile,
    voter: usize,
    new: Ranking,
    set: &UncertaintySet,
    kind: DominanceKind,
) -> Result<Vec<MethodOutcome>> {
    if *profile.ranking(voter)? == new {
        return Err(Error::IdenticalRanking);
    }
    let before = sincere_winners(profile, set)?;
    outcomes_for(profile, voter, new, set, &before, kind)
}

/// Whether a specific move witnesses `notion`.
pub fn is_witness(
    profile: &Profile,
    voter: usize,
    new: Ranking,
    set: &UncertaintySet,
    notion: &Notion,
    kind: DominanceKind,
) -> Result<bool> {
    notion.check(set)?;
    if notion.is_stochastic() {
        return crate::pscf::is_stochastic_witness(profile, voter, new, set, notion, kind);
    }
    let outcomes = classify_transition(profile, voter, new, set, kind)?;
    let cs: Vec<Comparison> = outcomes.iter().map(|o| o.comparison).collect();
    Ok(notion.accepts(&cs))
}

/// The first alternative ranking (lexicographic order) that witnesses
/// `notion` for `voter`, or `None`.
pub fn find_witness(
    profile: &Profile,
    voter: usize,
    set: &UncertaintySet,
    notion: &Notion,
    kind: DominanceKind,
) -> Result<Option<Witness>> {
    notion.check(set)?;
    for m in set.methods() {
        m.validate(profile.num_candidates(), profile.num_voters())?;
    }
    let sincere = *profile.ranking(voter)?;
    let before = sincere_winners(profile, set)?;
    for new in all_rankings(profile.num_candidates())? {
        if new == sincere {
            continue;
        }
        let hit = if notion.is_stochastic() {
            crate::pscf::is_stochastic_witness(profile, voter, new, set, notion, kind)?
        } else {
            let outcomes = outcomes_for(profile, voter, new, set, &before, kind)?;
            let cs: Vec<Comparison> = outcomes.iter().map(|o| o.comparison).collect();
            if notion.accepts(&cs) {
                return Ok(Some(Witness {
                    voter,
                    new_ranking: new,
                    outcomes,
                }));
            }
            false
        };
        if hit {
            return Ok(Some(Witness {
                voter,
                new_ranking: new,
                outcomes: outcomes_for(profile, voter, new, set, &before, kind)?,
            }));
        }
    }
    Ok(None)
}

pub fn find_sure(profile: &Profile, voter: usize, set: &UncertaintySet, kind: DominanceKind) -> Result<Option<Witness>> {
    find_witness(profile, voter, set, &Notion::Sure, kind)
}

pub fn find_safe(profile: &Profile, voter: usize, set: &UncertaintySet, kind: DominanceKind) -> Result<Option<Witness>> {
    find_witness(profile, voter, set, &Notion::Safe, kind)
}

pub fn find_harmless(profile: &Profile, voter: usize, set: &UncertaintySet, kind: DominanceKind) -> Result<Option<Witness>> {
    find_witness(profile, voter, set, &Notion::Harmless, kind)
}

pub fn find_expected(
    profile: &Profile,
    voter: usize,
    set: &UncertaintySet,
    weights: &Weights,
    kind: DominanceKind,
) -> Result<Option<Witness>> {
    find_witness(profile, voter, set, &Notion::Expected(weights.clone()), kind)
}

/// The first voter (ascending) with a witnessing move, and that move.
pub fn profile_witnesses(
    profile: &Profile,
    notion: &Notion,
    set: &UncertaintySet,
    kind: DominanceKind,
) -> Result<Option<(usize, Witness)>> {
    for voter in 0..profile.num_voters() {
        if let Some(w) = find_witness(profile, voter, set, notion, kind)? {
            return Ok(Some((voter, w)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests;
