//! Named, exhaustively checkable claims about elimination and the worked
//! example profiles. Each target expands to a list of components that either
//! hold or do not.

use std::fmt;
use std::str::FromStr;

use crate::candidates::Candidates;
use crate::census::{run_census_with, CensusSpec, Execution};
use crate::dominance::{compare, DominanceKind};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::manipulation::{classify_transition, find_witness, is_witness, Notion, UncertaintySet, Weights};
use crate::methods::MethodId::{self, *};
use crate::profile::Profile;
use crate::pscf::{induced_lottery, stochastically_dominates, Lottery, Probability};
use crate::ranking::{all_rankings, Ranking};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimTarget {
    /// {Borda, Baldwin} and {Borda, StrictNanson} admit no sure weak
    /// manipulation at (3, 4..=8), each member alone does.
    BordaPairs,
    /// The same for {WeakNanson, Baldwin} and {WeakNanson, StrictNanson}.
    WeakNansonPairs,
    /// The six tiebroken Borda variants together admit no sure weak
    /// manipulation at (3, 4..=6).
    BordaTiebreakFamily,
    /// {Borda, Coombs, Baldwin} eliminates sure weak manipulation at (4,3).
    ThreeMethodsFourCandidates,
    /// Five Condorcet pairs admit no sure optimistic or pessimistic
    /// manipulation at (3,6), each member alone does.
    CondorcetPairs,
    /// One (4,4) profile whose first voter can surely improve every nonempty
    /// subset of the ten methods other than Condorcet.
    TenMethodProfile,
    /// Winning sets, witnesses and lotteries of the shipped fixtures.
    Examples,
}

impl ClaimTarget {
    pub const ALL: [ClaimTarget; 7] = [
        ClaimTarget::BordaPairs,
        ClaimTarget::WeakNansonPairs,
        ClaimTarget::BordaTiebreakFamily,
        ClaimTarget::ThreeMethodsFourCandidates,
        ClaimTarget::CondorcetPairs,
        ClaimTarget::TenMethodProfile,
        ClaimTarget::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimTarget::BordaPairs => "borda-pairs",
            ClaimTarget::WeakNansonPairs => "weak-nanson-pairs",
            ClaimTarget::BordaTiebreakFamily => "borda-tiebreak-family",
            ClaimTarget::ThreeMethodsFourCandidates => "borda-coombs-baldwin",
            ClaimTarget::CondorcetPairs => "condorcet-pairs",
            ClaimTarget::TenMethodProfile => "ten-method-profile",
            ClaimTarget::Examples => "examples",
        }
    }
}

impl fmt::Display for ClaimTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimTarget::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Unknown {
                what: "claim",
                name: s.into(),
            })
    }
}

/// One checked component of a claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub component: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub target: ClaimTarget,
    pub checks: Vec<ClaimCheck>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn verify(target: ClaimTarget, exec: &Execution) -> Result<ClaimReport> {
    let mut checks = Vec::new();
    match target {
        ClaimTarget::BordaPairs => elimination_range(&mut checks, Borda, exec)?,
        ClaimTarget::WeakNansonPairs => elimination_range(&mut checks, WeakNanson, exec)?,
        ClaimTarget::BordaTiebreakFamily => {
            let family = UncertaintySet::new(
                all_rankings(3)?
                    .into_iter()
                    .map(|order| MethodId::tiebroken(Borda, order))
                    .collect(),
            )?;
            for m in 4..=6 {
                zero_and_positive(&mut checks, 3, m, DominanceKind::Weak, std::slice::from_ref(&family), &[], exec)?;
            }
        }
        ClaimTarget::ThreeMethodsFourCandidates => {
            let triple = set(&[Borda, Coombs, Baldwin]);
            zero_and_positive(&mut checks, 4, 3, DominanceKind::Weak, std::slice::from_ref(&triple), &triple.proper_subsets()[3..], exec)?;
        }
        ClaimTarget::CondorcetPairs => {
            let pairs: Vec<UncertaintySet> = [Baldwin, Copeland, MaxMin, StrictNanson, WeakNanson]
                .into_iter()
                .map(|other| set(&[Condorcet, other]))
                .collect();
            let singles: Vec<UncertaintySet> = [Condorcet, Baldwin, Copeland, MaxMin, StrictNanson, WeakNanson]
                .into_iter()
                .map(UncertaintySet::single)
                .collect();
            for kind in [DominanceKind::Optimistic, DominanceKind::Pessimistic] {
                zero_and_positive(&mut checks, 3, 6, kind, &pairs, &singles, exec)?;
            }
        }
        ClaimTarget::TenMethodProfile => ten_method_profile(&mut checks)?,
        ClaimTarget::Examples => examples(&mut checks)?,
    }
    Ok(ClaimReport { target, checks })
}

fn set(methods: &[MethodId]) -> UncertaintySet {
    UncertaintySet::new(methods.to_vec()).expect("distinct methods")
}

fn elimination_range(checks: &mut Vec<ClaimCheck>, anchor: MethodId, exec: &Execution) -> Result<()> {
    let pairs = [set(&[anchor.clone(), Baldwin]), set(&[anchor.clone(), StrictNanson])];
    let singles = [anchor, Baldwin, StrictNanson].map(UncertaintySet::single);
    for m in 4..=8 {
        zero_and_positive(checks, 3, m, DominanceKind::Weak, &pairs, &singles, exec)?;
    }
    Ok(())
}

/// Runs one sure census and checks that every set in `zero` has no
/// witnessing profile and every set in `positive` has one.
fn zero_and_positive(
    checks: &mut Vec<ClaimCheck>,
    n: usize,
    m: usize,
    kind: DominanceKind,
    zero: &[UncertaintySet],
    positive: &[UncertaintySet],
    exec: &Execution,
) -> Result<()> {
    let mut sets = zero.to_vec();
    sets.extend(positive.iter().cloned());
    let spec = CensusSpec::exhaustive(n, m, Notion::Sure, kind, sets);
    let results = run_census_with(&spec, exec)?;
    let labels = Candidates::default_labels(n)?;
    for (k, r) in results.iter().enumerate() {
        let want_zero = k < zero.len();
        checks.push(ClaimCheck {
            component: format!("sure/{kind} ({n},{m}) {}", r.set.name(&labels)),
            expected: if want_zero { "0".into() } else { ">0".into() },
            observed: format!("{} of {}", r.witnessing_profiles, r.total_profiles),
            passed: (r.witnessing_profiles == 0) == want_zero,
        });
    }
    Ok(())
}

fn ten_method_profile(checks: &mut Vec<ClaimCheck>) -> Result<()> {
    let fixture = fixtures::ten_method_profile();
    let p = &fixture.profile;
    let moved = Ranking::parse("bdca", &fixture.candidates)?;
    let ten: Vec<MethodId> = MethodId::PLAIN.into_iter().filter(|m| *m != Condorcet).collect();
    let outcomes = classify_transition(p, 0, moved, &set(&ten), DominanceKind::Weak)?;
    let sincere = p.rankings()[0];
    let better_mask: u32 = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| compare(DominanceKind::Weak, o.after, o.before, &sincere).better)
        .fold(0, |acc, (k, _)| acc | (1 << k));
    // sure needs every member better, so a subset witnesses iff it lies
    // inside the better mask
    let witnessed = (1u32..1 << ten.len()).filter(|s| s & better_mask == *s).count();
    checks.push(ClaimCheck {
        component: "(4,4) voter 0 -> bdca, every nonempty subset of ten methods".into(),
        expected: "1023 of 1023 subsets sure-weak witnessed".into(),
        observed: format!("{witnessed} of 1023"),
        passed: witnessed == 1023,
    });
    Ok(())
}

struct Examples<'a> {
    checks: &'a mut Vec<ClaimCheck>,
}

impl Examples<'_> {
    fn check(&mut self, component: String, expected: String, observed: String) {
        let passed = expected == observed;
        self.checks.push(ClaimCheck {
            component,
            expected,
            observed,
            passed,
        });
    }

    fn winners(&mut self, name: &str, p: &Profile, labels: &Candidates, methods: &[MethodId], expected: &str) -> Result<()> {
        for m in methods {
            let w = m.winners(p)?;
            self.check(format!("{name}: {m} winners"), expected.into(), labels.format_set(w));
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn witness(
        &mut self,
        name: &str,
        p: &Profile,
        labels: &Candidates,
        methods: &[MethodId],
        notion: Notion,
        kind: DominanceKind,
        new: &str,
        expected: bool,
    ) -> Result<()> {
        let s = set(methods);
        let got = is_witness(p, 0, Ranking::parse(new, labels)?, &s, &notion, kind)?;
        self.check(
            format!("{name}: voter 0 -> {new} {notion}/{kind} for {}", s.name(labels)),
            expected.to_string(),
            got.to_string(),
        );
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn first_witness(
        &mut self,
        name: &str,
        p: &Profile,
        labels: &Candidates,
        methods: &[MethodId],
        notion: Notion,
        kind: DominanceKind,
        expected: Option<&str>,
    ) -> Result<()> {
        let s = set(methods);
        let got = find_witness(p, 0, &s, &notion, kind)?;
        self.check(
            format!("{name}: first {notion}/{kind} move of voter 0 for {}", s.name(labels)),
            expected.unwrap_or("none").into(),
            got.map_or("none".into(), |w| w.new_ranking.display(labels).to_string()),
        );
        Ok(())
    }

    fn lottery(&mut self, name: &str, p: &Profile, labels: &Candidates, methods: &[MethodId], expected: &[(i64, i64)]) -> Result<Lottery> {
        let l = induced_lottery(&set(methods), p)?;
        let want = Lottery::new(expected.iter().map(|&(a, b)| Probability::new(a, b)).collect())?;
        self.check(
            format!("{name}: lottery for {}", set(methods).name(labels)),
            want.display(labels).to_string(),
            l.display(labels).to_string(),
        );
        Ok(l)
    }
}

const SIX: [MethodId; 6] = [Borda, Copeland, Hare, WeakNanson, Plurality, PluralityWRunoff];
const FOUR: [MethodId; 4] = [Baldwin, Coombs, MaxMin, StrictNanson];
const BORDA_FAMILY: [MethodId; 4] = [Baldwin, Borda, StrictNanson, WeakNanson];

fn examples(checks: &mut Vec<ClaimCheck>) -> Result<()> {
    use DominanceKind::*;
    let mut ex = Examples { checks };

    let f = fixtures::mixed_winners();
    let (p, l) = (&f.profile, &f.candidates);
    let name = "mixed-winners";
    ex.winners(name, p, l, &SIX, "{c}")?;
    ex.winners(name, p, l, &FOUR, "{b,c}")?;
    let moved = p.replace_ranking(0, Ranking::parse("bac", l)?)?;
    let ten: Vec<MethodId> = MethodId::PLAIN.into_iter().filter(|m| *m != Condorcet).collect();
    ex.winners("mixed-winners after bac", &moved, l, &ten, "{b,c}")?;
    for kind in [Weak, Optimistic] {
        ex.witness(name, p, l, &SIX, Notion::Sure, kind, "bac", true)?;
        for m in FOUR {
            ex.witness(name, p, l, &[Borda, m], Notion::Sure, kind, "bac", false)?;
        }
    }
    ex.first_witness(name, p, l, &[Borda, Copeland], Notion::Sure, Weak, Some("bac"))?;
    ex.first_witness(name, p, l, &[Borda, Baldwin], Notion::Sure, Weak, None)?;
    // a sure witness for a set is one for each member, so singletons suffice
    let pessimistic_moves = MethodId::PLAIN
        .into_iter()
        .filter(|m| {
            find_witness(p, 0, &UncertaintySet::single(m.clone()), &Notion::Sure, Pessimistic)
                .ok()
                .flatten()
                .is_some()
        })
        .count();
    ex.check(
        format!("{name}: methods with a sure pessimistic move for voter 0"),
        "0".into(),
        pessimistic_moves.to_string(),
    );

    let f = fixtures::mixed_winners_pessimistic();
    let (p, l) = (&f.profile, &f.candidates);
    let name = "mixed-winners-pessimistic";
    ex.winners(name, p, l, &SIX, "{a}")?;
    ex.winners(name, p, l, &FOUR, "{a,b}")?;
    ex.winners(
        "mixed-winners-pessimistic after acb",
        &p.replace_ranking(0, Ranking::parse("acb", l)?)?,
        l,
        &ten,
        "{a}",
    )?;
    ex.witness(name, p, l, &FOUR, Notion::Sure, Pessimistic, "acb", true)?;
    for m in SIX {
        ex.witness(name, p, l, &[Baldwin, m], Notion::Sure, Pessimistic, "acb", false)?;
    }

    let f = fixtures::optimistic_borda_family();
    let (p, l) = (&f.profile, &f.candidates);
    let name = "optimistic-borda-family";
    ex.winners(name, p, l, &BORDA_FAMILY, "{b}")?;
    ex.winners("optimistic-borda-family after acb", &p.replace_ranking(0, Ranking::parse("acb", l)?)?, l, &BORDA_FAMILY, "{a,b,c}")?;
    ex.witness(name, p, l, &BORDA_FAMILY, Notion::Sure, Optimistic, "acb", true)?;
    ex.first_witness(name, p, l, &BORDA_FAMILY, Notion::Sure, Optimistic, Some("acb"))?;

    let f = fixtures::four_candidate_sure();
    let (p, l) = (&f.profile, &f.candidates);
    let name = "four-candidate-sure";
    ex.winners(name, p, l, &[Borda], "{b}")?;
    ex.winners(name, p, l, &[Baldwin, StrictNanson, WeakNanson], "{a,b,c}")?;
    let moved = p.replace_ranking(0, Ranking::parse("adbc", l)?)?;
    ex.winners("four-candidate-sure after adbc", &moved, l, &[Borda], "{a,b}")?;
    ex.winners("four-candidate-sure after adbc", &moved, l, &[Baldwin, StrictNanson, WeakNanson], "{a}")?;
    ex.witness(name, p, l, &BORDA_FAMILY, Notion::Sure, Weak, "adbc", true)?;

    let f = fixtures::not_safe();
    let (p, l) = (&f.profile, &f.candidates);
    let name = "not-safe";
    ex.winners(name, p, l, &[Hare, Baldwin], "{a}")?;
    ex.winners(name, p, l, &[Borda], "{c}")?;
    ex.winners(name, p, l, &[MaxMin], "{a,c}")?;
    let moved = p.replace_ranking(0, Ranking::parse("bac", l)?)?;
    ex.winners("not-safe after bac", &moved, l, &[Hare, Baldwin], "{b}")?;
    ex.winners("not-safe after bac", &moved, l, &[Borda], "{a}")?;
    ex.winners("not-safe after bac", &moved, l, &[MaxMin], "{a,b}")?;
    let outcomes = classify_transition(p, 0, Ranking::parse("bac", l)?, &set(&[Borda, Hare, MaxMin]), Weak)?;
    let verdicts: Vec<String> = outcomes
        .iter()
        .map(|o| format!("{}:{:?}", o.method, o.verdict()))
        .collect();
    ex.check(
        format!("{name}: voter 0 -> bac verdicts"),
        "borda:Worse hare:Better maxmin:Neutral".into(),
        verdicts.join(" "),
    );
    for others in [vec![Hare], vec![MaxMin], vec![Hare, MaxMin]] {
        let mut s = vec![Borda];
        s.extend(others);
        ex.witness(name, p, l, &s, Notion::Safe, Weak, "bac", false)?;
    }
    ex.witness(name, p, l, &[Hare, MaxMin], Notion::Harmless, Weak, "bac", true)?;
    ex.witness(name, p, l, &[Borda, Hare], Notion::Expected(Weights::Uniform), Weak, "bac", false)?;
    ex.witness(name, p, l, &[Baldwin, Borda, Hare], Notion::Expected(Weights::Uniform), Weak, "bac", true)?;
    let before = ex.lottery(name, p, l, &[Baldwin, Borda, Hare], &[(2, 3), (0, 1), (1, 3)])?;
    let after = ex.lottery("not-safe after bac", &moved, l, &[Baldwin, Borda, Hare], &[(1, 3), (2, 3), (0, 1)])?;
    ex.check(
        format!("{name}: lottery after bac dominates sincere lottery"),
        "false".into(),
        stochastically_dominates(&after, &before, &p.rankings()[0])?.nonstrict.to_string(),
    );

    let f = fixtures::expected_reduction();
    let (p, l) = (&f.profile, &f.candidates);
    let name = "expected-reduction";
    ex.winners(name, p, l, &[Borda, Coombs], "{a}")?;
    let moved = p.replace_ranking(0, Ranking::parse("cba", l)?)?;
    ex.winners("expected-reduction after cba", &moved, l, &[Borda], "{a,c}")?;
    ex.winners("expected-reduction after cba", &moved, l, &[Coombs], "{a}")?;
    for voter in [0, 1] {
        let sincere = p.rankings()[voter];
        let borda_before = Borda.winners(p)?;
        let moves: Vec<String> = all_rankings(3)?
            .into_iter()
            .filter(|r| *r != sincere)
            .filter(|r| {
                let after = p.replace_ranking(voter, *r).and_then(|q| Borda.winners(&q));
                after.is_ok_and(|a| compare(Weak, a, borda_before, &sincere).better)
            })
            .map(|r| r.display(l).to_string())
            .collect();
        ex.check(
            format!("{name}: voter {voter} weak-improving Borda moves"),
            "cba".into(),
            moves.join(" "),
        );
    }

    let f = fixtures::sd_not_safe();
    let (p, l) = (&f.profile, &f.candidates);
    let name = "sd-not-safe";
    let three = [Coombs, Copeland, Hare];
    ex.winners(name, p, l, &three, "{a,b}")?;
    let moved = p.replace_ranking(0, Ranking::parse("cab", l)?)?;
    ex.winners("sd-not-safe after cab", &moved, l, &[Coombs, Copeland], "{a}")?;
    ex.winners("sd-not-safe after cab", &moved, l, &[Hare], "{b}")?;
    ex.witness(name, p, l, &three, Notion::Safe, Weak, "cab", false)?;
    let before = ex.lottery(name, p, l, &three, &[(1, 2), (1, 2), (0, 1)])?;
    let after = ex.lottery("sd-not-safe after cab", &moved, l, &three, &[(2, 3), (1, 3), (0, 1)])?;
    ex.check(
        format!("{name}: lottery after cab strictly dominates"),
        "true".into(),
        stochastically_dominates(&after, &before, &p.rankings()[0])?.strict.to_string(),
    );
    ex.witness(name, p, l, &three, Notion::Stochastic, Weak, "cab", true)?;

    let f = fixtures::ten_method_profile();
    let (p, l) = (&f.profile, &f.candidates);
    ex.winners("ten-method-profile", p, l, &ten, "{c}")?;
    ex.winners("ten-method-profile after bdca", &p.replace_ranking(0, Ranking::parse("bdca", l)?)?, l, &ten, "{b,c}")?;
    Ok(())
}
