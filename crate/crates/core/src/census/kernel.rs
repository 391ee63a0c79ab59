//! Per-profile evaluation shared by every census driver.
//!
//! For one profile the kernel computes each method's winners once, then for
//! every distinct voter class and every alternative ranking computes the
//! post-move winners of the methods that can still matter, packs the
//! comparisons into bitmasks and tests every uncertainty set at once.

use crate::candidates::CandidateSet;
use crate::dominance::{compare, DominanceKind};
use crate::error::{Error, Result};
use crate::manipulation::{Masks, Notion, UncertaintySet, Weight, Weights};
use crate::methods::MethodId;
use crate::profile::GroupedBallots;
use crate::ranking::{all_rankings, Ranking};

/// Everything fixed for a census run.
#[derive(Debug)]
pub(crate) struct Plan {
    pub n: usize,
    pub m: usize,
    pub rankings: Vec<Ranking>,
    pub methods: Vec<MethodId>,
    pub sets: Vec<SetPlan>,
    pub notion: Notion,
    pub kind: DominanceKind,
    pub anonymous: bool,
    /// `lcm(1..=n)`, so lottery masses scaled by it stay integral.
    lottery_scale: i64,
}

#[derive(Debug)]
pub(crate) struct SetPlan {
    pub mask: u64,
    pub slots: Vec<usize>,
    pub weights: Vec<(usize, Weight)>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Plan {
    pub fn new(n: usize, m: usize, sets: &[UncertaintySet], notion: &Notion, kind: DominanceKind) -> Result<Plan> {
        if sets.is_empty() {
            return Err(Error::EmptyUncertaintySet);
        }
        let mut methods: Vec<MethodId> = Vec::new();
        let mut plans = Vec::with_capacity(sets.len());
        for set in sets {
            notion.check(set)?;
            let mut slots = Vec::with_capacity(set.len());
            for method in set.methods() {
                method.validate(n, m)?;
                let slot = match methods.iter().position(|x| x == method) {
                    Some(slot) => slot,
                    None => {
                        methods.push(method.clone());
                        methods.len() - 1
                    }
                };
                slots.push(slot);
            }
            if methods.len() > 64 {
                return Err(Error::Unknown {
                    what: "census size",
                    name: "more than 64 distinct methods".into(),
                });
            }
            let weights = match notion {
                Notion::Expected(Weights::Explicit(w)) => slots.iter().copied().zip(w.iter().copied()).collect(),
                _ => Vec::new(),
            };
            plans.push(SetPlan {
                mask: slots.iter().fold(0, |acc, s| acc | (1u64 << s)),
                slots,
                weights,
            });
        }
        let lottery_scale = (1..=n as i64).fold(1, |acc, k| acc / gcd(acc, k) * k);
        Ok(Plan {
            n,
            m,
            rankings: all_rankings(n)?,
            anonymous: methods.iter().all(MethodId::is_anonymous),
            methods,
            sets: plans,
            notion: notion.clone(),
            kind,
            lottery_scale,
        })
    }

    fn accepts(&self, s: &SetPlan, masks: &Masks, before: &[CandidateSet], after: &[CandidateSet], sincere: &Ranking) -> bool {
        match &self.notion {
            Notion::Stochastic => self.stochastic(s, before, after, sincere),
            Notion::StochasticNotExpected => {
                self.stochastic(s, before, after, sincere)
                    && !Notion::Expected(Weights::Uniform).accepts_masks(masks, s.mask, &[])
            }
            notion => notion.accepts_masks(masks, s.mask, &s.weights),
        }
    }

    /// Strict stochastic dominance of the induced lottery after the move over
    /// the one before, in integers scaled by `|S| * lcm(1..=n)`.
    fn stochastic(&self, s: &SetPlan, before: &[CandidateSet], after: &[CandidateSet], sincere: &Ranking) -> bool {
        let mass = |winners: &[CandidateSet], c| -> i64 {
            s.slots
                .iter()
                .map(|&slot| winners[slot])
                .filter(|w| w.contains(c))
                .map(|w| self.lottery_scale / w.len() as i64)
                .sum()
        };
        let (mut cum_new, mut cum_old) = (0, 0);
        let mut strict = false;
        for c in sincere.order() {
            cum_new += mass(after, c);
            cum_old += mass(before, c);
            if cum_new < cum_old {
                return false;
            }
            strict |= cum_new > cum_old;
        }
        strict
    }
}

/// Exact counts, summed across workers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Tally {
    pub total: u64,
    pub profiles: Vec<u64>,
    pub pointed: Vec<u64>,
}

impl Tally {
    pub fn zero(sets: usize) -> Self {
        Tally {
            total: 0,
            profiles: vec![0; sets],
            pointed: vec![0; sets],
        }
    }

    #[cfg(feature = "parallel")]
    pub fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        for (a, b) in self.profiles.iter_mut().zip(other.profiles) {
            *a += b;
        }
        for (a, b) in self.pointed.iter_mut().zip(other.pointed) {
            *a += b;
        }
        self
    }
}

/// Voters sharing a sincere ranking; for non-anonymous plans every voter is
/// its own class.
#[derive(Debug, Clone, Copy)]
struct Class {
    ranking: usize,
    count: u32,
    representative: usize,
}

/// Per-worker scratch space, reused across profiles.
pub(crate) struct Workspace {
    ballots: GroupedBallots,
    classes: Vec<Class>,
    before: Vec<CandidateSet>,
    after: Vec<CandidateSet>,
    class_hit: Vec<bool>,
    profile_hit: Vec<bool>,
    pub tally: Tally,
}

impl Workspace {
    pub fn new(plan: &Plan) -> Self {
        Workspace {
            ballots: GroupedBallots::new(plan.n),
            classes: Vec::with_capacity(plan.m),
            before: vec![CandidateSet::EMPTY; plan.methods.len()],
            after: vec![CandidateSet::EMPTY; plan.methods.len()],
            class_hit: vec![false; plan.sets.len()],
            profile_hit: vec![false; plan.sets.len()],
            tally: Tally::zero(plan.sets.len()),
        }
    }

    pub fn take_tally(&mut self, sets: usize) -> Tally {
        std::mem::replace(&mut self.tally, Tally::zero(sets))
    }

    /// One labeled profile given as ranking indices per voter.
    pub fn labeled(&mut self, plan: &Plan, voters: &[usize]) {
        self.classes.clear();
        for (v, &r) in voters.iter().enumerate() {
            match self.classes.iter_mut().find(|c| plan.anonymous && c.ranking == r) {
                Some(c) => c.count += 1,
                None => self.classes.push(Class {
                    ranking: r,
                    count: 1,
                    representative: v,
                }),
            }
        }
        self.evaluate(plan, voters, 1);
    }

    /// A multiset of rankings (sorted indices) standing for `weight` labeled
    /// profiles. Only valid for anonymous plans.
    pub fn grouped(&mut self, plan: &Plan, sorted: &[usize], weight: u64) {
        debug_assert!(plan.anonymous);
        self.classes.clear();
        for (v, &r) in sorted.iter().enumerate() {
            match self.classes.last_mut() {
                Some(c) if c.ranking == r => c.count += 1,
                _ => self.classes.push(Class {
                    ranking: r,
                    count: 1,
                    representative: v,
                }),
            }
        }
        self.evaluate(plan, sorted, weight);
    }

    fn evaluate(&mut self, plan: &Plan, voters: &[usize], weight: u64) {
        let rankings = &plan.rankings;
        self.ballots.clear();
        for c in &self.classes {
            self.ballots.add(rankings[c.ranking], c.count);
        }
        for (slot, method) in plan.methods.iter().enumerate() {
            self.before[slot] = method.evaluate(&self.ballots, &|v| rankings[voters[v]]);
        }
        self.profile_hit.iter_mut().for_each(|h| *h = false);

        for ci in 0..self.classes.len() {
            let class = self.classes[ci];
            let sincere = rankings[class.ranking];
            self.class_hit.iter_mut().for_each(|h| *h = false);
            let mut open = plan.sets.len();
            for (alt, &moved) in rankings.iter().enumerate() {
                if alt == class.ranking {
                    continue;
                }
                let needed = plan
                    .sets
                    .iter()
                    .zip(&self.class_hit)
                    .filter(|(_, hit)| !**hit)
                    .fold(0u64, |acc, (s, _)| acc | s.mask);

                self.ballots.remove_one(&sincere);
                self.ballots.add(moved, 1);
                let mut masks = Masks::default();
                let mut bits = needed;
                while bits != 0 {
                    let slot = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let mover = class.representative;
                    let after = plan.methods[slot].evaluate(&self.ballots, &|v| {
                        if v == mover {
                            moved
                        } else {
                            rankings[voters[v]]
                        }
                    });
                    self.after[slot] = after;
                    masks.record(slot, compare(plan.kind, after, self.before[slot], &sincere));
                }
                self.ballots.remove_one(&moved);
                self.ballots.add(sincere, 1);
                self.ballots.drop_empty_tail();

                for (s, hit) in plan.sets.iter().zip(self.class_hit.iter_mut()) {
                    if !*hit && plan.accepts(s, &masks, &self.before, &self.after, &sincere) {
                        *hit = true;
                        open -= 1;
                    }
                }
                if open == 0 {
                    break;
                }
            }
            for (k, &hit) in self.class_hit.iter().enumerate() {
                if hit {
                    self.profile_hit[k] = true;
                    self.tally.pointed[k] += weight * u64::from(class.count);
                }
            }
        }
        for (k, &hit) in self.profile_hit.iter().enumerate() {
            if hit {
                self.tally.profiles[k] += weight;
            }
        }
        self.tally.total += weight;
    }
}
