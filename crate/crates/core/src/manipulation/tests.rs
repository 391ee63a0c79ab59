use super::*;
use crate::candidates::CandidateId;
use crate::census::{CensusSpec, Execution};
use crate::fixtures;
use crate::methods::{borda_score, MethodId::*};
use crate::testutil::{for_each_profile, profile, ranking, set};
use DominanceKind::*;

fn s(methods: &[MethodId]) -> UncertaintySet {
    UncertaintySet::new(methods.to_vec()).unwrap()
}

fn pdict(x: u8, y: u8, voter: usize) -> MethodId {
    MethodId::pairwise_dictator(CandidateId(x), CandidateId(y), voter).unwrap()
}

/// Direct reading of the notion definitions over per-method comparisons.
fn notion_oracle(notion: &Notion, cs: &[Comparison]) -> bool {
    let any_better = cs.iter().any(|c| c.better);
    match notion {
        Notion::Single | Notion::Sure => cs.iter().all(|c| c.better),
        Notion::Safe => cs.iter().all(|c| c.at_least) && any_better,
        Notion::Harmless => !cs.iter().any(|c| c.worse) && any_better,
        Notion::Expected(Weights::Uniform) => {
            cs.iter().filter(|c| c.better).count() > cs.iter().filter(|c| c.worse).count()
        }
        Notion::Expected(Weights::Explicit(w)) => {
            let better: Weight = cs.iter().zip(w).filter(|(c, _)| c.better).map(|(_, w)| *w).sum();
            let worse: Weight = cs.iter().zip(w).filter(|(c, _)| c.worse).map(|(_, w)| *w).sum();
            better > worse
        }
        _ => unreachable!(),
    }
}

#[test]
fn mask_aggregation_matches_definitions() {
    let flags: Vec<Comparison> = (0..8u8)
        .map(|b| Comparison {
            better: b & 1 != 0,
            worse: b & 2 != 0,
            at_least: b & 4 != 0,
        })
        .collect();
    let notions = [
        Notion::Sure,
        Notion::Safe,
        Notion::Harmless,
        Notion::Expected(Weights::Uniform),
        Notion::Expected(Weights::parse("1/2,1/3,1/6").unwrap()),
    ];
    for a in &flags {
        for b in &flags {
            for c in &flags {
                let cs = [*a, *b, *c];
                for notion in &notions {
                    assert_eq!(notion.accepts(&cs), notion_oracle(notion, &cs), "{notion:?} {cs:?}");
                }
            }
        }
    }
}

#[test]
fn uncertainty_set_contract() {
    assert_eq!(UncertaintySet::new(vec![]), Err(Error::EmptyUncertaintySet));
    assert!(matches!(UncertaintySet::new(vec![Borda, Borda]), Err(Error::DuplicateMethod(_))));
    let set3 = s(&[Borda, Coombs, Baldwin]);
    let subsets = set3.proper_subsets();
    assert_eq!(subsets.len(), 6);
    assert_eq!(subsets[0], UncertaintySet::single(Borda));
    assert_eq!(subsets[3], s(&[Borda, Coombs]));
    let labels = Candidates::default_labels(3).unwrap();
    assert_eq!(set3.name(&labels), "{borda,coombs,baldwin}");
    assert_eq!(UncertaintySet::parse("{borda,coombs,baldwin}", &labels).unwrap(), set3);
    assert_eq!(
        UncertaintySet::parse("borda+pdict:a,b,0", &labels).unwrap(),
        s(&[Borda, pdict(0, 1, 0)])
    );
    let mixed = s(&[pdict(0, 1, 0), Borda, pdict(1, 2, 2)]);
    assert_eq!(mixed.name(&labels), "{pdict:a,b,0,borda,pdict:b,c,2}");
    assert_eq!(UncertaintySet::parse(&mixed.name(&labels), &labels).unwrap(), mixed);
}

#[test]
fn weights_parsing() {
    assert_eq!(
        Weights::parse("0.25, 0.75").unwrap(),
        Weights::Explicit(vec![Weight::new(1, 4), Weight::new(3, 4)])
    );
    assert!(Weights::parse("1/3,1/3,1/3").is_ok());
    assert!(matches!(Weights::parse("0.5,0.4"), Err(Error::Weights(_))));
    assert!(matches!(Weights::parse("1.5,-0.5"), Err(Error::Weights(_))));
    assert!(matches!(Weights::parse("x"), Err(Error::Weights(_))));
    let notion = Notion::parse("expected", Some("1/2,1/2")).unwrap();
    assert_eq!(notion.check(&s(&[Borda])), Err(Error::Weights("2 weights for 1 methods".into())));
    assert!(Notion::parse("sure", Some("1")).is_err());
    assert!(Notion::parse("kelly", None).is_err());
}

#[test]
fn classify_transition_worked_examples() {
    let p = fixtures::not_safe().profile;
    let out = classify_transition(&p, 0, ranking("bac"), &s(&[Borda, Hare, MaxMin]), Weak).unwrap();
    let verdicts: Vec<Verdict> = out.iter().map(MethodOutcome::verdict).collect();
    assert_eq!(verdicts, [Verdict::Worse, Verdict::Better, Verdict::Neutral]);
    assert_eq!(out[2].before, set("ac"));
    assert_eq!(out[2].after, set("ab"));

    let q = fixtures::sd_not_safe().profile;
    let out = classify_transition(&q, 0, ranking("cab"), &s(&[Coombs, Copeland, Hare]), Weak).unwrap();
    let verdicts: Vec<Verdict> = out.iter().map(MethodOutcome::verdict).collect();
    assert_eq!(verdicts, [Verdict::Better, Verdict::Better, Verdict::Worse]);

    assert_eq!(
        classify_transition(&p, 0, ranking("cba"), &s(&[Borda]), Weak),
        Err(Error::IdenticalRanking)
    );
    // a move that leaves the winners alone is neutral
    let unchanged = classify_transition(&p, 1, ranking("abc"), &s(&[Condorcet]), Weak).unwrap();
    assert_eq!(unchanged[0].before, unchanged[0].after);
    assert_eq!(unchanged[0].verdict(), Verdict::Neutral);
}

#[test]
fn sure_witnesses_of_worked_examples() {
    let p = fixtures::mixed_winners().profile;
    let w = find_sure(&p, 0, &s(&[Borda, Copeland]), Weak).unwrap().unwrap();
    assert_eq!(w.new_ranking, ranking("bac"));
    assert!(w.outcomes.iter().all(|o| o.before == set("c") && o.after == set("bc")));
    assert_eq!(find_sure(&p, 0, &s(&[Borda, Baldwin]), Weak).unwrap(), None);

    let q = fixtures::four_candidate_sure().profile;
    let w = find_sure(&q, 0, &s(&[Baldwin, Borda, StrictNanson, WeakNanson]), Weak)
        .unwrap()
        .unwrap();
    assert_eq!(w.new_ranking, ranking("adbc"));

    let r = fixtures::optimistic_borda_family().profile;
    let w = find_sure(&r, 0, &s(&[Baldwin, Borda, StrictNanson, WeakNanson]), Optimistic)
        .unwrap()
        .unwrap();
    assert_eq!(w.new_ranking, ranking("acb"));
}

#[test]
fn safe_harmless_expected_worked_examples() {
    let p = fixtures::not_safe().profile;
    let bac = ranking("bac");
    let check = |set: &[MethodId], notion: Notion| is_witness(&p, 0, bac, &s(set), &notion, Weak).unwrap();
    assert!(!check(&[Borda, Hare], Notion::Safe));
    assert!(!check(&[Borda, Hare, MaxMin], Notion::Safe));
    assert!(check(&[Hare, MaxMin], Notion::Harmless));
    assert!(!check(&[Hare, MaxMin], Notion::Safe));
    assert!(check(&[Baldwin, Borda, Hare], Notion::Expected(Weights::Uniform)));
    assert!(!check(&[Borda, Hare], Notion::Expected(Weights::Uniform)));
    // putting most of the weight on Borda flips the expected verdict
    let heavy = Weights::parse("1/2,1/4,1/4").unwrap();
    assert!(!check(&[Borda, Baldwin, Hare], Notion::Expected(heavy)));

    let w = find_expected(&p, 0, &s(&[Baldwin, Borda, Hare]), &Weights::Uniform, Weak).unwrap();
    assert!(w.is_some());
}

#[test]
fn notion_preconditions() {
    let p = fixtures::mixed_winners().profile;
    assert_eq!(
        find_witness(&p, 0, &s(&[Borda, Hare]), &Notion::Single, Weak),
        Err(Error::SingleNeedsOneMethod(2))
    );
    assert!(find_witness(&p, 7, &s(&[Borda]), &Notion::Sure, Weak).is_err());
    assert!(find_witness(&p, 0, &s(&[pdict(0, 1, 9)]), &Notion::Sure, Weak).is_err());
}

#[test]
fn voter_scan_returns_first_witnessing_voter() {
    let p = fixtures::mixed_winners().profile;
    let (voter, w) = profile_witnesses(&p, &Notion::Sure, &s(&[Plurality]), Weak).unwrap().unwrap();
    assert_eq!(voter, 0);
    assert_eq!(w.outcomes[0].before, set("c"));
    assert_eq!(w.outcomes[0].after, set("bc"));
}

#[test]
fn unanimous_profile_has_no_witness() {
    let p = profile(&["abc", "abc", "abc", "abc"]);
    let notions = [Notion::Sure, Notion::Safe, Notion::Harmless, Notion::Expected(Weights::Uniform)];
    for a in 0..MethodId::PLAIN.len() {
        for b in a..MethodId::PLAIN.len() {
            let set = if a == b {
                UncertaintySet::single(MethodId::PLAIN[a].clone())
            } else {
                s(&[MethodId::PLAIN[a].clone(), MethodId::PLAIN[b].clone()])
            };
            for notion in &notions {
                for kind in DominanceKind::ALL {
                    assert!(profile_witnesses(&p, notion, &set, kind).unwrap().is_none());
                }
            }
        }
    }
}

#[test]
fn full_pairwise_dictator_family_blocks_safe_manipulation() {
    let dictators = [pdict(0, 1, 0), pdict(0, 2, 0), pdict(1, 2, 0)];
    for base in [Borda, Hare, Copeland] {
        let mut methods = vec![base];
        methods.extend(dictators.iter().cloned());
        let set = s(&methods);
        for_each_profile(3, 3, |p| {
            assert!(find_safe(p, 0, &set, Weak).unwrap().is_none(), "{p:?}");
        });
    }
}

/// Per-transition relations between the notions, over every pointed (3,3)
/// profile, every move and every pair of plain methods.
#[test]
fn notion_relations_per_transition() {
    let all = all_rankings(3).unwrap();
    let plain = MethodId::PLAIN;
    for_each_profile(3, 3, |p| {
        let winners: Vec<CandidateSet> = plain.iter().map(|m| m.winners(p).unwrap()).collect();
        for voter in 0..3 {
            let sincere = p.rankings()[voter];
            for new in all.iter().filter(|r| **r != sincere) {
                let moved = p.replace_ranking(voter, *new).unwrap();
                let after: Vec<CandidateSet> = plain.iter().map(|m| m.winners(&moved).unwrap()).collect();
                for kind in DominanceKind::ALL {
                    let cmp: Vec<Comparison> = (0..plain.len())
                        .map(|k| compare(kind, after[k], winners[k], &sincere))
                        .collect();
                    for a in 0..plain.len() {
                        for b in a + 1..plain.len() {
                            let cs = [cmp[a], cmp[b]];
                            let sure = Notion::Sure.accepts(&cs);
                            let safe = Notion::Safe.accepts(&cs);
                            let harmless = Notion::Harmless.accepts(&cs);
                            let expected = Notion::Expected(Weights::Uniform).accepts(&cs);
                            assert!(!sure || safe);
                            assert!(!safe || harmless);
                            assert!(!safe || expected);
                            // antitone: a sure move for the pair is sure for each member
                            assert!(!sure || (Notion::Sure.accepts(&cs[..1]) && Notion::Sure.accepts(&cs[1..])));
                            if kind == Weak {
                                assert_eq!(expected, harmless);
                            } else {
                                assert_eq!(harmless, safe);
                            }
                        }
                        // one method: every notion agrees
                        let one = [cmp[a]];
                        let sure = Notion::Sure.accepts(&one);
                        for notion in [Notion::Single, Notion::Safe, Notion::Harmless, Notion::Expected(Weights::Uniform)] {
                            assert_eq!(notion.accepts(&one), sure);
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn borda_never_moves_between_singletons_upwards_with_three_candidates() {
    let all = all_rankings(3).unwrap();
    for m in 1..=6 {
        for_each_profile(3, m, |p| {
            let before = Borda.winners(p).unwrap();
            if before.len() != 1 {
                return;
            }
            for voter in 0..m {
                let sincere = p.rankings()[voter];
                for new in all.iter().filter(|r| **r != sincere) {
                    let after = Borda.winners(&p.replace_ranking(voter, *new).unwrap()).unwrap();
                    if after.len() == 1 {
                        let (x, y) = (after.iter().next().unwrap(), before.iter().next().unwrap());
                        assert!(!sincere.prefers(x, y), "{p:?} voter {voter} -> {new:?}");
                    }
                }
            }
        });
    }
}

const BORDA_FAMILY: [MethodId; 4] = [Borda, Baldwin, StrictNanson, WeakNanson];

#[test]
fn mirror_pair_preserves_borda_family_and_tally() {
    for_each_profile(3, 4, |p| {
        let once = add_two_voters(p).unwrap();
        let twice = add_two_voters(&once).unwrap();
        assert_eq!(once.num_voters(), 6);
        assert_eq!(twice.num_voters(), 8);
        for m in &BORDA_FAMILY {
            let w = m.winners(p).unwrap();
            assert_eq!(m.winners(&once).unwrap(), w);
            assert_eq!(m.winners(&twice).unwrap(), w);
        }
        let (t, u) = (p.pairwise_tally(), once.pairwise_tally());
        for x in 0..3u8 {
            for y in 0..3u8 {
                if x != y {
                    let (x, y) = (CandidateId(x), CandidateId(y));
                    assert_eq!(t.net(x, y).unwrap(), u.net(x, y).unwrap());
                }
            }
        }
    });
    let four = fixtures::ten_method_profile().profile;
    assert_eq!(
        add_two_voters(&four),
        Err(Error::ConstructionArity { expected: 3, got: 4 })
    );
}

#[test]
fn full_ballot_set_preserves_all_winners() {
    let p = fixtures::ten_method_profile().profile;
    let big = add_24_voters(&p).unwrap();
    assert_eq!(big.num_voters(), 28);
    for m in &MethodId::PLAIN {
        assert_eq!(m.winners(&big).unwrap(), m.winners(&p).unwrap(), "{m}");
    }
    for c in 0..4u8 {
        let firsts = |q: &Profile| q.rankings().iter().filter(|r| r.top() == CandidateId(c)).count();
        assert_eq!(firsts(&big), firsts(&p) + 6);
    }
    let (t, u) = (p.pairwise_tally(), big.pairwise_tally());
    for x in 0..4u8 {
        for y in 0..4u8 {
            if x != y {
                assert_eq!(t.net(CandidateId(x), CandidateId(y)), u.net(CandidateId(x), CandidateId(y)));
            }
        }
    }
    assert!(add_24_voters(&fixtures::mixed_winners().profile).is_err());
}

#[test]
fn bottom_candidate_never_wins_and_preserves_borda_scores_winners() {
    let fresh = CandidateId(3);
    for_each_profile(3, 4, |p| {
        let plus = add_bottom_candidate(p).unwrap();
        assert_eq!(plus.num_candidates(), 4);
        assert_eq!(borda_score(&plus, fresh), 0);
        for m in &BORDA_FAMILY {
            assert!(!m.winners(&plus).unwrap().contains(fresh), "{m} on {p:?}");
        }
        for m in &[Borda, Baldwin, StrictNanson] {
            assert_eq!(m.winners(&plus).unwrap(), m.winners(p).unwrap(), "{m} on {p:?}");
        }
    });
}

// Adding a zero-score candidate lowers the average Borda score, so a
// candidate sitting exactly on the old average survives the first round.
#[test]
fn bottom_candidate_can_change_weak_nanson_winners() {
    let p = profile(&["abc", "abc", "bca", "bca"]);
    let plus = add_bottom_candidate(&p).unwrap();
    assert_eq!(WeakNanson.winners(&p).unwrap(), set("b"));
    assert_eq!(WeakNanson.winners(&plus).unwrap(), set("ab"));
}

// A majority winner among the original voters need not keep a majority once
// 24 balanced ballots are added, and Coombs may then eliminate it.
#[test]
fn full_ballot_set_can_change_coombs_winners() {
    let p = profile(&["abcd", "abdc", "bcda"]);
    let big = add_24_voters(&p).unwrap();
    assert_eq!(Coombs.winners(&p).unwrap(), set("a"));
    assert_eq!(Coombs.winners(&big).unwrap(), set("b"));
    assert_eq!(Hare.winners(&big).unwrap(), Hare.winners(&p).unwrap());
}

fn exhaustive(n: usize, m: usize, notion: Notion, kind: DominanceKind) -> CensusSpec {
    CensusSpec::exhaustive(n, m, notion, kind, Vec::new())
}

#[test]
fn elimination_and_susceptibility_queries() {
    let exec = Execution::with_workers(1);
    let template = exhaustive(3, 4, Notion::Sure, Weak);
    let pair = s(&[Borda, StrictNanson]);
    let report = eliminates(&pair, &template, &exec).unwrap();
    assert!(report.eliminates);
    assert_eq!(report.witnessing_profiles, 0);
    assert_eq!(report.subsets.len(), 2);
    assert!(improves_on_all_subsets(&pair, &template, &exec).unwrap());

    let single = UncertaintySet::single(Borda);
    let report = eliminates(&single, &template, &exec).unwrap();
    assert!(!report.eliminates && report.subsets.is_empty());
    assert!(improves_on_all_subsets(&single, &template, &exec).unwrap());

    assert!(!less_susceptible(&pair, &pair, &template, CountBasis::Profiles, &exec).unwrap());
    assert!(less_susceptible(&pair, &single, &template, CountBasis::Pointed, &exec).unwrap());

    let sampled = CensusSpec::sampled(3, 4, 100, 1, Notion::Sure, Weak, Vec::new());
    assert_eq!(eliminates(&pair, &sampled, &exec), Err(Error::ExhaustiveRequired));
}

#[test]
fn plurality_runoff_pair_is_less_susceptible_than_plurality_with_seven_voters() {
    let exec = Execution::default();
    let template = exhaustive(3, 7, Notion::Sure, Weak);
    assert!(less_susceptible(
        &s(&[Plurality, Hare]),
        &UncertaintySet::single(Plurality),
        &template,
        CountBasis::Profiles,
        &exec
    )
    .unwrap());
}

/// Adding a pairwise dictator to {Borda, Coombs} reduces the pointed
/// profiles that witness expected weak manipulation.
#[test]
fn dictator_reduces_expected_manipulation() {
    let exec = Execution::default();
    let template = exhaustive(3, 5, Notion::Expected(Weights::Uniform), Weak);
    let base = s(&[Borda, Coombs]);
    let extended = s(&[Borda, Coombs, pdict(0, 1, 0)]);
    assert!(less_susceptible(&extended, &base, &template, CountBasis::Pointed, &exec).unwrap());
}
