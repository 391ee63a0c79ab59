//! Counting manipulable profiles over a whole (n, m) profile space, either
//! exhaustively or by impartial-culture sampling.
//!
//! Exhaustive runs split the labeled profile space into contiguous chunks
//! keyed by the leading voters' rankings; each worker counts its chunks
//! locally and the integer counts are summed, so totals never depend on the
//! worker count. When every method is anonymous the engine can instead walk
//! ranking multisets and weight each by the number of labeled profiles it
//! stands for, which gives the same counts with far fewer evaluations.
//!
//! Sampling draws profiles in fixed blocks of [`SAMPLE_BLOCK`]; block `b`
//! uses ChaCha8 seeded with the run seed on stream `b`, so a sampled run is
//! reproducible bit for bit regardless of how blocks are scheduled.

mod kernel;
mod output;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dominance::DominanceKind;
use crate::error::{Error, Result};
use crate::manipulation::{Notion, UncertaintySet};
use crate::methods::MethodId;
use crate::profile::Profile;
use crate::ranking::{factorial, Ranking};

use kernel::{Plan, Tally, Workspace};

pub use output::{write_csv, write_json, CsvRow, ReportEcho};

/// Profiles per sampling block.
pub const SAMPLE_BLOCK: u64 = 1024;

/// Default cap on the number of labeled profiles an exhaustive run may cover.
pub const DEFAULT_BUDGET: u64 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Source {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// How exhaustive runs walk the profile space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Enumeration {
    /// Multisets when every method is anonymous, labeled profiles otherwise.
    #[default]
    Auto,
    /// Every labeled profile in lexicographic order.
    Labeled,
    /// Ranking multisets weighted by their labeled multiplicity.
    Grouped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Execution {
    /// Worker threads; 1 runs on the calling thread.
    pub workers: usize,
    pub enumeration: Enumeration,
}

impl Default for Execution {
    fn default() -> Self {
        Execution {
            workers: std::thread::available_parallelism().map_or(1, usize::from),
            enumeration: Enumeration::Auto,
        }
    }
}

impl Execution {
    pub fn with_workers(workers: usize) -> Self {
        Execution {
            workers: workers.max(1),
            ..Execution::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSpec {
    pub n: usize,
    pub m: usize,
    pub source: Source,
    pub notion: Notion,
    pub kind: DominanceKind,
    pub sets: Vec<UncertaintySet>,
    pub budget: u64,
}

impl CensusSpec {
    pub fn exhaustive(n: usize, m: usize, notion: Notion, kind: DominanceKind, sets: Vec<UncertaintySet>) -> Self {
        CensusSpec {
            n,
            m,
            source: Source::Exhaustive,
            notion,
            kind,
            sets,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn sampled(
        n: usize,
        m: usize,
        count: u64,
        seed: u64,
        notion: Notion,
        kind: DominanceKind,
        sets: Vec<UncertaintySet>,
    ) -> Self {
        CensusSpec {
            source: Source::Sample { count, seed },
            ..CensusSpec::exhaustive(n, m, notion, kind, sets)
        }
    }
}

/// Exact counts for one uncertainty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub set: UncertaintySet,
    pub voters: usize,
    pub total_profiles: u64,
    pub witnessing_profiles: u64,
    /// Pointed profiles `(P, i)` where voter `i` has a witnessing move.
    pub witnessing_pointed: u64,
}

impl CensusResult {
    /// Share of profiles with at least one witnessing voter, in percent.
    pub fn percentage(&self) -> f64 {
        100.0 * self.witnessing_profiles as f64 / self.total_profiles as f64
    }

    pub fn pointed_percentage(&self) -> f64 {
        100.0 * self.witnessing_pointed as f64 / (self.total_profiles as f64 * self.voters as f64)
    }

    /// Binomial standard error of [`CensusResult::percentage`] read as a
    /// sample estimate, in percentage points.
    pub fn standard_error(&self) -> f64 {
        let p = self.witnessing_profiles as f64 / self.total_profiles as f64;
        100.0 * (p * (1.0 - p) / self.total_profiles as f64).sqrt()
    }
}

fn space_size(n: usize, m: usize, budget: u64) -> Result<u64> {
    let exceeded = Error::BudgetExceeded { n, m, budget };
    let base = u64::try_from(factorial(n)).map_err(|_| exceeded.clone())?;
    let size = u32::try_from(m)
        .ok()
        .and_then(|m| base.checked_pow(m))
        .ok_or(exceeded.clone())?;
    if size > budget {
        return Err(exceeded);
    }
    Ok(size)
}

fn check_shape(n: usize, m: usize) -> Result<()> {
    if n == 0 || n > crate::MAX_CANDIDATES {
        return Err(Error::CandidateCount(n));
    }
    if m == 0 {
        return Err(Error::NoVoters);
    }
    Ok(())
}

/// Every labeled (n, m)-profile, lexicographic by (voter 0, voter 1, ...).
pub fn enumerate_profiles(n: usize, m: usize, budget: u64) -> Result<impl Iterator<Item = Profile>> {
    check_shape(n, m)?;
    space_size(n, m, budget)?;
    let rankings = crate::ranking::all_rankings(n)?;
    let mut digits = Some(vec![0usize; m]);
    Ok(std::iter::from_fn(move || {
        let current = digits.take()?;
        let profile = Profile::new(current.iter().map(|&i| rankings[i]).collect()).expect("m >= 1");
        let mut next = current;
        if advance(&mut next, rankings.len(), 0) {
            digits = Some(next);
        }
        Some(profile)
    }))
}

/// Odometer step over `digits[from..]`; false once it wraps around.
fn advance(digits: &mut [usize], radix: usize, from: usize) -> bool {
    for k in (from..digits.len()).rev() {
        digits[k] += 1;
        if digits[k] < radix {
            return true;
        }
        digits[k] = 0;
    }
    false
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn sample_block(n_fact: usize, m: usize, seed: u64, block: u64, len: u64, mut f: impl FnMut(&[usize])) {
    let mut rng = block_rng(seed, block);
    let mut voters = vec![0usize; m];
    for _ in 0..len {
        for v in voters.iter_mut() {
            *v = rng.random_range(0..n_fact);
        }
        f(&voters);
    }
}

fn blocks(count: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..count.div_ceil(SAMPLE_BLOCK)).map(move |b| (b, SAMPLE_BLOCK.min(count - b * SAMPLE_BLOCK)))
}

/// Impartial-culture profiles: every voter's ranking independently uniform.
/// The same seed always yields the same sequence.
pub fn sample_profiles(n: usize, m: usize, count: u64, seed: u64) -> Result<impl Iterator<Item = Profile>> {
    check_shape(n, m)?;
    if count == 0 {
        return Err(Error::EmptySample);
    }
    let rankings = crate::ranking::all_rankings(n)?;
    let n_fact = rankings.len();
    Ok(blocks(count).flat_map(move |(b, len)| {
        let mut out = Vec::with_capacity(len as usize);
        sample_block(n_fact, m, seed, b, len, |voters| {
            out.push(Profile::new(voters.iter().map(|&i| rankings[i]).collect::<Vec<Ranking>>()).expect("m >= 1"));
        });
        out
    }))
}

/// Runs the census with the default execution settings.
pub fn run_census(spec: &CensusSpec) -> Result<Vec<CensusResult>> {
    run_census_with(spec, &Execution::default())
}

pub fn run_census_with(spec: &CensusSpec, exec: &Execution) -> Result<Vec<CensusResult>> {
    check_shape(spec.n, spec.m)?;
    let plan = Plan::new(spec.n, spec.m, &spec.sets, &spec.notion, spec.kind)?;
    let tally = match spec.source {
        Source::Exhaustive => {
            space_size(spec.n, spec.m, spec.budget)?;
            let grouped = match exec.enumeration {
                Enumeration::Auto => plan.anonymous,
                Enumeration::Labeled => false,
                Enumeration::Grouped if plan.anonymous => true,
                Enumeration::Grouped => {
                    return Err(Error::Unknown {
                        what: "enumeration for non-anonymous methods",
                        name: "grouped".into(),
                    })
                }
            };
            if grouped {
                run_grouped(&plan, exec.workers)
            } else {
                run_labeled(&plan, exec.workers)
            }
        }
        Source::Sample { count, seed } => {
            if count == 0 {
                return Err(Error::EmptySample);
            }
            run_sampled(&plan, count, seed, exec.workers)
        }
    };
    Ok(spec
        .sets
        .iter()
        .enumerate()
        .map(|(k, set)| CensusResult {
            set: set.clone(),
            voters: spec.m,
            total_profiles: tally.total,
            witnessing_profiles: tally.profiles[k],
            witnessing_pointed: tally.pointed[k],
        })
        .collect())
}

/// Maps `work` over `0..chunks` and sums the tallies. Integer sums make the
/// result independent of scheduling.
fn map_reduce(plan: &Plan, chunks: u64, workers: usize, work: impl Fn(&mut Workspace, u64) + Sync) -> Tally {
    let k = plan.sets.len();
    #[cfg(feature = "parallel")]
    if workers > 1 && chunks > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        return pool.install(|| {
            (0..chunks)
                .into_par_iter()
                .map_init(
                    || Workspace::new(plan),
                    |ws, c| {
                        work(ws, c);
                        ws.take_tally(k)
                    },
                )
                .reduce(|| Tally::zero(k), Tally::merge)
        });
    }
    let _ = workers;
    let mut ws = Workspace::new(plan);
    for c in 0..chunks {
        work(&mut ws, c);
    }
    ws.take_tally(k)
}

/// Leading voters fixed per chunk: enough chunks to spread over workers
/// without making each one trivially small.
fn prefix_len(radix: usize, m: usize) -> usize {
    let mut p = 0;
    let mut chunks = 1usize;
    while p < m && chunks < 256 {
        chunks *= radix;
        p += 1;
    }
    p
}

fn run_labeled(plan: &Plan, workers: usize) -> Tally {
    let radix = plan.rankings.len();
    let m = plan.m;
    let p = prefix_len(radix, m);
    let chunks = (radix as u64).pow(p as u32);
    map_reduce(plan, chunks, workers, |ws, chunk| {
        let mut voters = vec![0usize; m];
        let mut c = chunk as usize;
        for k in (0..p).rev() {
            voters[k] = c % radix;
            c /= radix;
        }
        loop {
            ws.labeled(plan, &voters);
            if !advance(&mut voters, radix, p) {
                break;
            }
        }
    })
}

/// Nondecreasing sequences of length `len` over `lo..radix`, as a list.
fn nondecreasing_prefixes(radix: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                let lo = prefix.last().copied().unwrap_or(0);
                (lo..radix).map(move |r| {
                    let mut next = prefix.clone();
                    next.push(r);
                    next
                })
            })
            .collect();
    }
    out
}

/// Next nondecreasing sequence in `seq[from..]`, keeping `seq[..from]`.
fn advance_nondecreasing(seq: &mut [usize], radix: usize, from: usize) -> bool {
    for k in (from..seq.len()).rev() {
        if seq[k] + 1 < radix {
            let v = seq[k] + 1;
            seq[k..].iter_mut().for_each(|x| *x = v);
            return true;
        }
    }
    false
}

/// Number of labeled profiles with the multiset of rankings in `sorted`:
/// `m! / prod(k_r!)`.
fn multiplicity(sorted: &[usize]) -> u64 {
    let mut result: u128 = 1;
    let mut run = 0u128;
    for (i, r) in sorted.iter().enumerate() {
        run = if i > 0 && sorted[i - 1] == *r { run + 1 } else { 1 };
        // multiply by (i + 1) / run step by step; each prefix value is an
        // integer multinomial coefficient
        result = result * (i as u128 + 1) / run;
    }
    u64::try_from(result).expect("multiplicity is bounded by the budget")
}

fn run_grouped(plan: &Plan, workers: usize) -> Tally {
    let radix = plan.rankings.len();
    let m = plan.m;
    let p = m.min(2);
    let prefixes = nondecreasing_prefixes(radix, p);
    map_reduce(plan, prefixes.len() as u64, workers, |ws, chunk| {
        let prefix = &prefixes[chunk as usize];
        let mut seq = vec![*prefix.last().expect("m >= 1"); m];
        seq[..p].copy_from_slice(prefix);
        loop {
            ws.grouped(plan, &seq, multiplicity(&seq));
            if !advance_nondecreasing(&mut seq, radix, p) {
                break;
            }
        }
    })
}

fn run_sampled(plan: &Plan, count: u64, seed: u64, workers: usize) -> Tally {
    let n_fact = plan.rankings.len();
    let all: Vec<(u64, u64)> = blocks(count).collect();
    map_reduce(plan, all.len() as u64, workers, |ws, chunk| {
        let (b, len) = all[chunk as usize];
        sample_block(n_fact, plan.m, seed, b, len, |voters| ws.labeled(plan, voters));
    })
}

/// Singletons on the diagonal, unordered pairs off it.
#[derive(Debug, Clone)]
pub struct PairTable {
    pub methods: Vec<MethodId>,
    cells: Vec<Vec<CensusResult>>,
}

impl PairTable {
    /// Cell `(i, j)`: the singleton when `i == j`, else the pair.
    pub fn cell(&self, i: usize, j: usize) -> &CensusResult {
        &self.cells[i][j]
    }

    /// Diagonal cells followed by the upper triangle, row by row.
    pub fn results(&self) -> Vec<&CensusResult> {
        let k = self.methods.len();
        (0..k).map(|i| &self.cells[i][i]).chain((0..k).flat_map(|i| (i + 1..k).map(move |j| &self.cells[i][j]))).collect()
    }

    /// Whether the pair is strictly less manipulable than both members.
    pub fn below_both(&self, i: usize, j: usize) -> bool {
        let pair = self.cells[i][j].witnessing_profiles;
        i != j && pair < self.cells[i][i].witnessing_profiles && pair < self.cells[j][j].witnessing_profiles
    }
}

/// Runs one census over every singleton and unordered pair of `methods`.
#[allow(clippy::needless_range_loop)]
pub fn pair_table(
    methods: &[MethodId],
    template: &CensusSpec,
    exec: &Execution,
) -> Result<PairTable> {
    let k = methods.len();
    let mut sets: Vec<UncertaintySet> = methods.iter().cloned().map(UncertaintySet::single).collect();
    for i in 0..k {
        for j in i + 1..k {
            sets.push(UncertaintySet::new(vec![methods[i].clone(), methods[j].clone()])?);
        }
    }
    let spec = CensusSpec {
        sets,
        ..template.clone()
    };
    let mut results = run_census_with(&spec, exec)?.into_iter();
    let mut cells: Vec<Vec<Option<CensusResult>>> = vec![vec![None; k]; k];
    for (i, row) in cells.iter_mut().enumerate() {
        row[i] = results.next();
    }
    for i in 0..k {
        for j in i + 1..k {
            let r = results.next();
            cells[i][j] = r.clone();
            cells[j][i] = r;
        }
    }
    Ok(PairTable {
        methods: methods.to_vec(),
        cells: cells
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.expect("every cell computed")).collect())
            .collect(),
    })
}

/// Every subset of `methods` with at most `max_size` members, with counts,
/// and the ones that eliminate manipulation: zero witnesses while every
/// nonempty proper subset has some.
#[derive(Debug, Clone)]
pub struct EliminationScan {
    pub results: Vec<CensusResult>,
    pub eliminating: Vec<UncertaintySet>,
}

pub fn elimination_scan(
    methods: &[MethodId],
    max_size: usize,
    template: &CensusSpec,
    exec: &Execution,
) -> Result<EliminationScan> {
    if template.source != Source::Exhaustive {
        return Err(Error::ExhaustiveRequired);
    }
    let k = methods.len();
    if k > 20 {
        return Err(Error::Unknown {
            what: "scan size",
            name: format!("{k} methods"),
        });
    }
    let mut masks: Vec<u32> = (1u32..1 << k).filter(|m| m.count_ones() as usize <= max_size).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let sets: Vec<UncertaintySet> = masks
        .iter()
        .map(|&mask| {
            UncertaintySet::new((0..k).filter(|b| mask & (1 << b) != 0).map(|b| methods[b].clone()).collect())
        })
        .collect::<Result<_>>()?;
    let spec = CensusSpec {
        sets,
        ..template.clone()
    };
    let results = run_census_with(&spec, exec)?;
    let count_of = |mask: u32| -> u64 {
        let idx = masks.iter().position(|&m| m == mask).expect("subsets are scanned first");
        results[idx].witnessing_profiles
    };
    let eliminating = masks
        .iter()
        .zip(&results)
        .filter(|(&mask, r)| {
            mask.count_ones() >= 2
                && r.witnessing_profiles == 0
                && proper_submasks(mask).all(|sub| count_of(sub) > 0)
        })
        .map(|(_, r)| r.set.clone())
        .collect();
    Ok(EliminationScan { results, eliminating })
}

fn proper_submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut sub = mask;
    std::iter::from_fn(move || {
        sub = (sub.wrapping_sub(1)) & mask;
        (sub != 0).then_some(sub)
    })
}
