// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use num_rational::Ratio;
use num_traits::One;
use proptest::prelude::*;
use safevote_core::geometry::{embed, region_of, trajectory};
use safevote_core::rules::{check_predicates, subrule_minus, two_voter_reduction, ScoringRule, TableRule};
use safevote_core::strategy::{
    classify_safety, classify_safety_with, construct_safe_from_endup, construct_safe_from_inferior, find_l_inferior,
    find_l_inferior_with, has_incentive, has_incentive_with, SafetyVerdict, SearchMode, UnsafeKind,
};
use safevote_core::{group_prefers, Alternative, GroupPreference, LinearOrder, Profile, Rule, VoterSet};

fn lex(m: usize, i: usize) -> LinearOrder {
    LinearOrder::from_lex_index(m, i as u64).unwrap()
}

fn profile_of(digits: &[usize]) -> Profile {
    Profile::new(domain(3), digits.iter().map(|&d| lex(3, d)).collect()).unwrap()
}

fn arb_profile(max_n: usize) -> impl Strategy<Value = Profile> {
    prop::collection::vec(0usize..6, 1..=max_n).prop_map(|d| profile_of(&d))
}

fn arb_weights() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..6, 3).prop_map(|mut w| {
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    })
}

fn arb_scoring() -> impl Strategy<Value = ScoringRule> {
    (arb_weights(), 0usize..6).prop_map(|(w, t)| ScoringRule::from_integers(domain(3), &w, lex(3, t)).unwrap())
}

fn arb_table(n: usize) -> impl Strategy<Value = TableRule> {
    let len = 6usize.pow(n as u32);
    prop::collection::vec(0usize..3, len)
        .prop_map(move |e| TableRule::new(domain(3), n, e.into_iter().map(Alternative::new).collect()).unwrap())
}

fn members(profile: &Profile, voter: usize, mask: u32) -> VoterSet {
    profile.class_of(voter).iter().enumerate().filter(|(q, _)| mask & (1 << q) != 0).map(|(_, v)| v).collect()
}

/// Every coalition of `voter`'s class with its outcome, computed by direct
/// evaluation.
fn all_switches(rule: &Rule, profile: &Profile, voter: usize, l: &LinearOrder) -> Vec<(VoterSet, Alternative)> {
    let c = profile.class_of(voter).len();
    (0..1u32 << c)
        .map(|mask| {
            let set = members(profile, voter, mask);
            let w = rule.evaluate(&profile.switch_votes(&set, l).unwrap()).unwrap();
            (set, w)
        })
        .collect()
}

fn brute_incentive(rule: &Rule, profile: &Profile, voter: usize, l: &LinearOrder) -> bool {
    let base = rule.evaluate(profile).unwrap();
    let t = profile.order(voter);
    all_switches(rule, profile, voter, l).iter().any(|(s, w)| s.contains(voter) && t.prefers(*w, base))
}

fn brute_unsafe(rule: &Rule, profile: &Profile, voter: usize, l: &LinearOrder) -> bool {
    let base = rule.evaluate(profile).unwrap();
    let t = profile.order(voter);
    all_switches(rule, profile, voter, l).iter().any(|(s, w)| {
        s.contains(voter) && t.prefers(base, *w) && s.iter().all(|q| brute_incentive(rule, profile, q, l))
    })
}

fn replay(rule: &Rule, profile: &Profile, set: &VoterSet, l: &LinearOrder) -> Alternative {
    rule.evaluate(&profile.switch_votes(set, l).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn scoring_rules_are_anonymous(rule in arb_scoring(), (p, perm) in arb_profile(8).prop_flat_map(|p| {
        let idx: Vec<usize> = (0..p.len()).collect();
        (Just(p), Just(idx).prop_shuffle())
    })) {
        let rule = Rule::Scoring(rule);
        prop_assert_eq!(rule.evaluate(&p).unwrap(), rule.evaluate(&p.permuted(&perm).unwrap()).unwrap());
    }

    #[test]
    fn tiebreak_only_breaks_ties(w in arb_weights(), p in arb_profile(8)) {
        let first = ScoringRule::from_integers(domain(3), &w, lex(3, 0)).unwrap();
        let scores = first.scores(&p).unwrap();
        let best = scores.as_slice().iter().max().unwrap();
        if scores.as_slice().iter().filter(|s| *s == best).count() == 1 {
            for t in 1..6 {
                let other = ScoringRule::from_integers(domain(3), &w, lex(3, t)).unwrap();
                prop_assert_eq!(Rule::Scoring(other).evaluate(&p), Rule::Scoring(first.clone()).evaluate(&p));
            }
        }
    }

    #[test]
    fn switches_are_ceteris_paribus(p in arb_profile(8), voter in 0usize..8, mask in any::<u32>(), l in 0usize..6) {
        let voter = voter % p.len();
        let l = lex(3, l);
        prop_assume!(*p.order(voter) != l);
        let set = members(&p, voter, mask);
        let q = p.switch_votes(&set, &l).unwrap();
        for i in 0..p.len() {
            let expected = if set.contains(i) { &l } else { p.order(i) };
            prop_assert_eq!(q.order(i), expected);
        }
        prop_assert!(q.groups_consistent());
        prop_assert_eq!(q.replace_votes(&set, &l).unwrap(), q.clone());
        prop_assert_eq!(q.groups().map(|g| g.1.len()).sum::<usize>(), p.len());
    }

    #[test]
    fn group_preference_is_strict_total(t in 0usize..6, x in 0usize..3, y in 0usize..3) {
        let t = lex(3, t);
        let (x, y) = (Alternative::new(x), Alternative::new(y));
        let forward = group_prefers(&t, x, y) == GroupPreference::Strict;
        let backward = group_prefers(&t, y, x) == GroupPreference::Strict;
        prop_assert_eq!([forward, backward, x == y].iter().filter(|&&b| b).count(), 1);
        prop_assert!(group_prefers(&t, x, x).is_weak());
    }

    #[test]
    fn size_and_subset_searches_agree(rule in arb_scoring(), p in arb_profile(6)) {
        let rule = Rule::Scoring(rule);
        for (t, class) in p.groups() {
            let voter = class.iter().next().unwrap();
            for l in domain(3).orders().into_iter().filter(|l| l != t) {
                let a = has_incentive_with(&rule, &p, voter, &l, SearchMode::Sizes).unwrap();
                let b = has_incentive_with(&rule, &p, voter, &l, SearchMode::Subsets).unwrap();
                prop_assert_eq!(a.as_ref().map(|w| w.coalition.len()), b.as_ref().map(|w| w.coalition.len()));
                if a.is_none() {
                    continue;
                }
                let a = classify_safety_with(&rule, &p, voter, &l, SearchMode::Sizes).unwrap();
                let b = classify_safety_with(&rule, &p, voter, &l, SearchMode::Subsets).unwrap();
                prop_assert_eq!(shape(&a), shape(&b));
                let inf_a = find_l_inferior_with(&rule, &p, t, &l, SearchMode::Sizes).unwrap();
                let inf_b = find_l_inferior_with(&rule, &p, t, &l, SearchMode::Subsets).unwrap();
                let mut sizes_b: Vec<usize> = inf_b.iter().map(VoterSet::len).collect();
                sizes_b.dedup();
                prop_assert_eq!(inf_a.iter().map(VoterSet::len).collect::<Vec<_>>(), sizes_b);
            }
        }
    }

    #[test]
    fn scoring_witnesses_replay(rule in arb_scoring(), p in arb_profile(6)) {
        check_witnesses(&Rule::Scoring(rule), &p)?;
    }

    #[test]
    fn table_witnesses_replay(rule in arb_table(3), digits in prop::collection::vec(0usize..6, 3)) {
        check_witnesses(&Rule::Table(rule), &profile_of(&digits))?;
    }

    #[test]
    fn constructions_verify(rule in arb_table(3), digits in prop::collection::vec(0usize..6, 3)) {
        let rule = Rule::Table(rule);
        let p = profile_of(&digits);
        for (t, class) in p.groups() {
            let voter = class.iter().next().unwrap();
            for l in domain(3).orders().into_iter().filter(|l| l != t) {
                let inferior = find_l_inferior(&rule, &p, t, &l).unwrap();
                let full = replay(&rule, &p, class, &l);
                for v1 in &inferior {
                    prop_assert!(v1.is_proper_subset(class));
                    prop_assert!(t.prefers(full, replay(&rule, &p, v1, &l)));
                }
                let built = construct_safe_from_inferior(&rule, &p, t, &l).unwrap();
                prop_assert_eq!(built.is_some(), !inferior.is_empty());
                if let Some(c) = built {
                    prop_assert!(c.verified);
                    prop_assert_eq!(replay(&rule, &c.profile, &c.coalition, &l), full);
                }
                if has_incentive(&rule, &p, voter, &l).unwrap().is_some() {
                    let c = construct_safe_from_endup(&rule, &p, voter, &l).unwrap();
                    let base = rule.evaluate(&p).unwrap();
                    prop_assert_eq!(c.is_some(), !t.prefers(base, full));
                    if let Some(c) = c {
                        prop_assert!(c.verified);
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_matches_blow_up(rule in arb_scoring(), split in 1usize..4, a in 0usize..6, b in 0usize..6) {
        let rule = Rule::Scoring(rule);
        let (p1, p2) = (VoterSet::new(0..split), VoterSet::new(split..4));
        let reduced = Rule::Table(two_voter_reduction(&rule, 4, &p1, &p2).unwrap());
        let pair = profile_of(&[a, b]);
        let blown: Vec<usize> = (0..4).map(|i| if i < split { a } else { b }).collect();
        prop_assert_eq!(reduced.evaluate(&pair).unwrap(), rule.evaluate(&profile_of(&blown)).unwrap());
    }

    #[test]
    fn subrules_avoid_removed_alternative(rule in arb_scoring(), x in 0usize..3) {
        prop_assume!(!rule.is_constant());
        let x = Alternative::new(x);
        let sub = subrule_minus(&Rule::Scoring(rule), 2, x).unwrap();
        prop_assert_eq!(sub.domain().len(), 2);
    }

    #[test]
    fn weakly_unanimous_tables_are_onto(rule in arb_table(2)) {
        let report = check_predicates(&Rule::Table(rule.clone()), 2, 36).unwrap();
        if report.weakly_unanimous {
            prop_assert!(report.onto);
        }
        if let Some(d) = report.dictator {
            for i in 0..36u64 {
                let p = rule.space().profile_at(i);
                prop_assert_eq!(rule.lookup(i as usize), p.order(d).top());
            }
        }
    }

    #[test]
    fn embedding_sums_to_one(rule in arb_scoring(), p in arb_profile(12)) {
        prop_assume!(!rule.weights().iter().all(|w| *w == Ratio::from_integer(0)));
        let point = embed(&rule.scores(&p).unwrap()).unwrap();
        let sum: Ratio<i64> = point.coords().iter().sum();
        prop_assert_eq!(sum, Ratio::one());
        prop_assert!(point.coords().iter().all(|x| *x >= Ratio::from_integer(0)));
    }

    #[test]
    fn trajectories_are_straight(rule in arb_scoring(), p in arb_profile(12), l in 0usize..6) {
        prop_assume!(!rule.weights().iter().all(|w| *w == Ratio::from_integer(0)));
        let t = *p.order(0);
        let l = lex(3, l);
        prop_assume!(t != l);
        let k = p.class_of(0).len();
        let pts = trajectory(&rule, &p, &t, &l, k).unwrap();
        for w in pts.windows(3) {
            let d1 = [w[1].coords()[0] - w[0].coords()[0], w[1].coords()[1] - w[0].coords()[1]];
            let d2 = [w[2].coords()[0] - w[1].coords()[0], w[2].coords()[1] - w[1].coords()[1]];
            prop_assert_eq!(d1[0] * d2[1] - d1[1] * d2[0], Ratio::from_integer(0));
        }
        // The alternative whose rank the switch preserves never moves.
        for a in 0..3 {
            let a = Alternative::new(a);
            if rule.weights()[t.position(a)] == rule.weights()[l.position(a)] {
                let s0 = rule.scores(&p).unwrap().get(a);
                let total = rule.scores(&p).unwrap().total();
                prop_assert!(pts.iter().all(|q| q.get(a) == s0 / total));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn geometry_matches_evaluation(rule in arb_scoring(), p in arb_profile(20)) {
        prop_assume!(!rule.weights().iter().all(|w| *w == Ratio::from_integer(0)));
        let point = embed(&rule.scores(&p).unwrap()).unwrap();
        let winner = Rule::Scoring(rule.clone()).evaluate(&p).unwrap();
        prop_assert_eq!(region_of(&point, rule.tiebreak()), winner);
    }
}

fn shape(v: &SafetyVerdict) -> (bool, usize, u8, usize, usize) {
    match v {
        SafetyVerdict::Safe => (true, 0, 0, 0, 0),
        SafetyVerdict::Unsafe { bad, kind } => match kind {
            UnsafeKind::Overshoot { good, bad: b } => (false, bad.len(), 1, good.len(), b.len()),
            UnsafeKind::Undershoot { good, bad: b } => (false, bad.len(), 2, good.len(), b.len()),
            UnsafeKind::Other => (false, bad.len(), 3, 0, 0),
        },
    }
}

fn check_witnesses(rule: &Rule, p: &Profile) -> Result<(), TestCaseError> {
    let base = rule.evaluate(p).unwrap();
    for voter in 0..p.len() {
        let t = *p.order(voter);
        for l in domain(3).orders().into_iter().filter(|&l| l != t) {
            let w = has_incentive(rule, p, voter, &l).unwrap();
            prop_assert_eq!(w.is_some(), brute_incentive(rule, p, voter, &l));
            let Some(w) = w else {
                prop_assert!(classify_safety(rule, p, voter, &l).is_err());
                continue;
            };
            prop_assert!(w.coalition.contains(voter));
            prop_assert!(w.coalition.is_subset(p.class_of(voter)));
            prop_assert_eq!(w.outcome_before, base);
            prop_assert_eq!(replay(rule, p, &w.coalition, &l), w.outcome_after);
            prop_assert!(t.prefers(w.outcome_after, base));
            // Minimality: no smaller coalition containing the voter improves.
            let smaller = all_switches(rule, p, voter, &l)
                .into_iter()
                .any(|(s, o)| s.contains(voter) && s.len() < w.coalition.len() && t.prefers(o, base));
            prop_assert!(!smaller);

            let verdict = classify_safety(rule, p, voter, &l).unwrap();
            prop_assert_eq!(verdict.is_safe(), !brute_unsafe(rule, p, voter, &l));
            if let SafetyVerdict::Unsafe { bad, kind } = verdict {
                prop_assert!(bad.contains(voter));
                prop_assert!(t.prefers(base, replay(rule, p, &bad, &l)));
                for q in bad.iter() {
                    prop_assert!(has_incentive(rule, p, q, &l).unwrap().is_some());
                }
                let pair = match kind {
                    UnsafeKind::Overshoot { good, bad } => Some((good.is_proper_subset(&bad), good, bad)),
                    UnsafeKind::Undershoot { good, bad } => Some((bad.is_proper_subset(&good), good, bad)),
                    UnsafeKind::Other => None,
                };
                if let Some((nested, good, bad)) = pair {
                    prop_assert!(nested);
                    prop_assert!(good.contains(voter) && bad.contains(voter));
                    prop_assert!(t.prefers(replay(rule, p, &good, &l), base));
                    prop_assert!(t.prefers(base, replay(rule, p, &bad, &l)));
                }
            }
        }
    }
    Ok(())
}
