//! Comparisons between uncertainty sets over a whole profile space, backed by
//! the census engine.

use crate::census::{run_census_with, CensusSpec, Execution, Source};
use crate::error::{Error, Result};

use super::UncertaintySet;

/// What a susceptibility comparison counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountBasis {
    /// Profiles with at least one witnessing voter.
    #[default]
    Profiles,
    /// Pointed profiles `(P, i)` whose voter `i` has a witnessing move.
    Pointed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCount {
    pub set: UncertaintySet,
    pub witnessing_profiles: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationReport {
    pub eliminates: bool,
    pub witnessing_profiles: u64,
    /// Counts for every nonempty proper subset; empty for a single method,
    /// which has nothing to be compared against and never eliminates.
    pub subsets: Vec<SubsetCount>,
}

fn exhaustive_with(template: &CensusSpec, sets: Vec<UncertaintySet>) -> Result<CensusSpec> {
    if template.source != Source::Exhaustive {
        return Err(Error::ExhaustiveRequired);
    }
    Ok(CensusSpec {
        sets,
        ..template.clone()
    })
}

/// Whether `set` has no witnessing profile while every nonempty proper subset
/// has one. `template` supplies the space, notion and kind; its sets are
/// ignored.
pub fn eliminates(set: &UncertaintySet, template: &CensusSpec, exec: &Execution) -> Result<EliminationReport> {
    let subsets = set.proper_subsets();
    let mut sets = vec![set.clone()];
    sets.extend(subsets.iter().cloned());
    let results = run_census_with(&exhaustive_with(template, sets)?, exec)?;
    let own = results[0].witnessing_profiles;
    let subsets: Vec<SubsetCount> = results[1..]
        .iter()
        .map(|r| SubsetCount {
            set: r.set.clone(),
            witnessing_profiles: r.witnessing_profiles,
        })
        .collect();
    Ok(EliminationReport {
        eliminates: set.len() >= 2 && own == 0 && subsets.iter().all(|s| s.witnessing_profiles > 0),
        witnessing_profiles: own,
        subsets,
    })
}

/// Whether `a` has strictly fewer witnesses than `b` on the template's space.
pub fn less_susceptible(
    a: &UncertaintySet,
    b: &UncertaintySet,
    template: &CensusSpec,
    basis: CountBasis,
    exec: &Execution,
) -> Result<bool> {
    let spec = CensusSpec {
        sets: vec![a.clone(), b.clone()],
        ..template.clone()
    };
    let r = run_census_with(&spec, exec)?;
    Ok(match basis {
        CountBasis::Profiles => r[0].witnessing_profiles < r[1].witnessing_profiles,
        CountBasis::Pointed => r[0].witnessing_pointed < r[1].witnessing_pointed,
    })
}

/// Whether `set` is strictly less susceptible than each nonempty proper
/// subset. True for a single method, which has no such subsets.
pub fn improves_on_all_subsets(set: &UncertaintySet, template: &CensusSpec, exec: &Execution) -> Result<bool> {
    let report = eliminates(set, template, exec)?;
    Ok(report
        .subsets
        .iter()
        .all(|s| report.witnessing_profiles < s.witnessing_profiles))
}
