use super::*;
use crate::fixtures;
use crate::testutil::{profile, ranking, set};
use proptest::prelude::*;

use MethodId::*;

fn check(p: &Profile, methods: &[MethodId], expected: &str) {
    for m in methods {
        assert_eq!(m.winners(p).unwrap(), set(expected), "{m} on {p:?}");
    }
}

#[test]
fn mixed_winners_winning_sets() {
    let p = fixtures::mixed_winners().profile;
    check(&p, &[Borda, Copeland, Hare, WeakNanson, Plurality, PluralityWRunoff], "c");
    check(&p, &[Baldwin, Coombs, MaxMin, StrictNanson], "bc");
    // c ties b 2-2 head to head, so nobody beats everyone
    check(&p, &[Condorcet], "abc");

    let moved = p.replace_ranking(0, ranking("bac")).unwrap();
    let ten: Vec<MethodId> = MethodId::PLAIN.into_iter().filter(|m| *m != Condorcet).collect();
    check(&moved, &ten, "bc");
}

#[test]
fn mixed_winners_pessimistic_winning_sets() {
    let p = fixtures::mixed_winners_pessimistic().profile;
    check(&p, &[Borda, Copeland, Hare, WeakNanson, Plurality, PluralityWRunoff], "a");
    check(&p, &[Baldwin, Coombs, MaxMin, StrictNanson], "ab");
    let moved = p.replace_ranking(0, ranking("acb")).unwrap();
    let ten: Vec<MethodId> = MethodId::PLAIN.into_iter().filter(|m| *m != Condorcet).collect();
    check(&moved, &ten, "a");
}

#[test]
fn optimistic_borda_family_borda_family() {
    let p = fixtures::optimistic_borda_family().profile;
    let family = [Baldwin, Borda, StrictNanson, WeakNanson];
    check(&p, &family, "b");
    check(&p.replace_ranking(0, ranking("acb")).unwrap(), &family, "abc");
}

#[test]
fn four_candidate_sure_four_candidates() {
    let p = fixtures::four_candidate_sure().profile;
    check(&p, &[Borda], "b");
    check(&p, &[Baldwin, StrictNanson, WeakNanson], "abc");
    let moved = p.replace_ranking(0, ranking("adbc")).unwrap();
    check(&moved, &[Borda], "ab");
    check(&moved, &[Baldwin, StrictNanson, WeakNanson], "a");
}

#[test]
fn not_safe_profile_winning_sets() {
    let p = fixtures::not_safe().profile;
    check(&p, &[Hare, Baldwin], "a");
    check(&p, &[Borda], "c");
    check(&p, &[MaxMin], "ac");
    let moved = p.replace_ranking(0, ranking("bac")).unwrap();
    check(&moved, &[Hare, Baldwin], "b");
    check(&moved, &[Borda], "a");
    check(&moved, &[MaxMin], "ab");
}

#[test]
fn expected_reduction_profile() {
    let p = fixtures::expected_reduction().profile;
    check(&p, &[Borda, Coombs], "a");
    let moved = p.replace_ranking(0, ranking("cba")).unwrap();
    check(&moved, &[Borda], "ac");
    check(&moved, &[Coombs], "a");
}

#[test]
fn sd_example_profile() {
    let p = fixtures::sd_not_safe().profile;
    check(&p, &[Coombs, Copeland, Hare], "ab");
    let moved = p.replace_ranking(0, ranking("cab")).unwrap();
    check(&moved, &[Coombs, Copeland], "a");
    check(&moved, &[Hare], "b");
}

#[test]
fn ten_method_profile_profile() {
    let p = fixtures::ten_method_profile().profile;
    let ten: Vec<MethodId> = MethodId::PLAIN.into_iter().filter(|m| *m != Condorcet).collect();
    check(&p, &ten, "c");
    check(&p.replace_ranking(0, ranking("bdca")).unwrap(), &ten, "bc");
}

#[test]
fn unanimity_and_degenerate_profiles() {
    let unanimous = profile(&["abc", "abc", "abc"]);
    check(&unanimous, &MethodId::PLAIN, "a");
    let single = Profile::new(vec![Ranking::identity(1).unwrap(); 3]).unwrap();
    for m in &MethodId::PLAIN {
        assert_eq!(m.winners(&single).unwrap(), CandidateSet(1));
    }
    let mirror = profile(&["abc", "cba"]);
    check(&mirror, &[Condorcet, Copeland, WeakNanson, Borda], "abc");
}

#[test]
fn condorcet_winner_found() {
    // Net(a,b) = 1, Net(a,c) = 3
    check(&profile(&["abc", "abc", "bca"]), &[Condorcet], "a");
}

#[test]
fn tiebroken_and_dictator() {
    let p = fixtures::mixed_winners().profile;
    assert_eq!(tiebroken_winners(&Borda, &ranking("bca"), &p).unwrap(), set("c"));
    assert_eq!(tiebroken_winners(&Baldwin, &ranking("abc"), &p).unwrap(), set("b"));
    assert_eq!(tiebroken_winners(&Baldwin, &ranking("cba"), &p).unwrap(), set("c"));

    let a = CandidateId(0);
    let b = CandidateId(1);
    assert_eq!(pairwise_dictator(a, b, 0, &p).unwrap(), set("a"));
    let flipped = p.replace_ranking(0, ranking("bac")).unwrap();
    assert_eq!(pairwise_dictator(a, b, 0, &flipped).unwrap(), set("b"));
    assert_eq!(pairwise_dictator(a, a, 0, &p), Err(Error::InvalidPair));
    assert!(pairwise_dictator(a, b, 9, &p).is_err());
}

#[test]
fn names_round_trip() {
    let labels = Candidates::default_labels(3).unwrap();
    for m in MethodId::PLAIN {
        assert_eq!(MethodId::parse(&m.name(&labels), &labels).unwrap(), m);
    }
    let t = MethodId::parse("borda@acb", &labels).unwrap();
    assert_eq!(t, MethodId::tiebroken(Borda, ranking("acb")));
    assert_eq!(t.name(&labels), "borda@acb");
    let d = MethodId::parse("pdict:a,b,0", &labels).unwrap();
    assert_eq!(d.to_string(), "pdict:a,b,0");
    assert!(!d.is_anonymous());
    assert!(MethodId::parse("kemeny", &labels).is_err());
    assert!(MethodId::parse("pdict:a,a,0", &labels).is_err());
}

/// Independent reading of the n = 3 characterisation: drop the strictly
/// lowest (Baldwin) or below-average (StrictNanson) Borda candidates once,
/// then keep the survivors no other survivor beats by majority. Nobody is
/// dropped only when all three scores tie, and then everyone wins.
fn three_candidate_oracle(p: &Profile, below_average: bool) -> CandidateSet {
    let all = CandidateSet::full(3);
    let scores: Vec<i64> = (0..3).map(|c| borda_score(p, CandidateId(c))).collect();
    let total: i64 = scores.iter().sum();
    let low = *scores.iter().min().unwrap();
    let survivors: CandidateSet = all
        .iter()
        .filter(|c| {
            let s = scores[c.index()];
            if below_average {
                3 * s >= total
            } else {
                s > low || scores.iter().all(|&t| t == low)
            }
        })
        .collect();
    if survivors == all {
        return all;
    }
    let t = p.pairwise_tally();
    survivors
        .iter()
        .filter(|&x| !survivors.iter().any(|y| t.majority_prefers(y, x)))
        .collect()
}

#[test]
fn three_candidate_characterisation_holds_exhaustively() {
    for m in 1..=5 {
        crate::testutil::for_each_profile(3, m, |p| {
            assert_eq!(baldwin(p), three_candidate_oracle(p, false), "{p:?}");
            assert_eq!(strict_nanson(p), three_candidate_oracle(p, true), "{p:?}");
        });
    }
}

#[test]
fn hare_equals_runoff_for_three_candidates() {
    for m in 1..=5 {
        crate::testutil::for_each_profile(3, m, |p| assert_eq!(hare(p), plurality_with_runoff(p)));
    }
}

#[test]
fn winners_always_nonempty_small_spaces() {
    for (n, m) in [(3, 4), (4, 2), (2, 5)] {
        crate::testutil::for_each_profile(n, m, |p| {
            for method in &MethodId::PLAIN {
                let w = method.winners(p).unwrap();
                assert!(!w.is_empty() && w.is_subset(CandidateSet::full(n)));
            }
        });
    }
}

fn arb_profile(n: usize, m: usize) -> impl Strategy<Value = Profile> {
    let count = crate::ranking::factorial(n);
    proptest::collection::vec(0..count, m).prop_map(move |idx| {
        Profile::new(idx.iter().map(|&i| Ranking::from_lex_index(n, i).unwrap()).collect()).unwrap()
    })
}

fn arb_case(n: usize, m: usize) -> impl Strategy<Value = (Profile, Vec<usize>, Vec<usize>)> {
    (
        arb_profile(n, m),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn neutral_and_anonymous_3x5((p, sigma, order) in arb_case(3, 5)) {
        neutral_and_anonymous(&p, &sigma, &order)?;
    }

    #[test]
    fn neutral_and_anonymous_4x4((p, sigma, order) in arb_case(4, 4)) {
        neutral_and_anonymous(&p, &sigma, &order)?;
    }
}

fn neutral_and_anonymous(p: &Profile, sigma: &[usize], order: &[usize]) -> std::result::Result<(), TestCaseError> {
    let sigma: Vec<CandidateId> = sigma.iter().map(|&i| CandidateId::from(i)).collect();
    let relabeled = p.permute_candidates(&sigma);
    let shuffled = p.permute_voters(order);
    for m in &MethodId::PLAIN {
        let w = m.winners(p).unwrap();
        prop_assert_eq!(m.winners(&relabeled).unwrap(), w.permuted(&sigma), "{} neutrality", m);
        prop_assert_eq!(m.winners(&shuffled).unwrap(), w, "{} anonymity", m);
    }
    Ok(())
}
