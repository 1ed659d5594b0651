// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use num_rational::Ratio;
use safevote_core::geometry::{embed, region_of, trajectory};
use safevote_core::rules::ScoringRule;
use safevote_core::strategy::{
    classify_safety, construct_safe_from_endup, find_escapes, find_l_inferior, has_incentive, threshold_scan,
    verify_gs, verify_safely_manipulable, Claim, SafetyVerdict, Search, UnsafeKind,
};
use safevote_core::{group_prefers, Alternative, GroupPreference, Rule, VoterSet};

fn alt(m: usize, label: char) -> Alternative {
    domain(m).alternative(label).unwrap()
}

fn labels(m: usize, winners: &[Alternative]) -> String {
    winners.iter().map(|&a| domain(m).label(a)).collect()
}

fn scoring_rule(rule: &Rule) -> &ScoringRule {
    match rule {
        Rule::Scoring(s) => s,
        Rule::Table(_) => unreachable!(),
    }
}

#[test]
fn plurality_four_voters() {
    let (rule, r) = example1();
    assert_eq!(rule.evaluate(&r).unwrap(), alt(3, 'C'));
    let bac = order(3, "BAC");
    let w = has_incentive(&rule, &r, 0, &bac).unwrap().unwrap();
    assert_eq!(w.coalition, VoterSet::single(0));
    assert_eq!((w.outcome_before, w.outcome_after), (alt(3, 'C'), alt(3, 'B')));
    let v2 = r.replace_votes(&VoterSet::single(1), &order(3, "ABC")).unwrap();
    assert_eq!(rule.evaluate(&v2).unwrap(), alt(3, 'A'));
    let both = v2.replace_votes(&VoterSet::single(0), &bac).unwrap();
    assert_eq!(rule.evaluate(&both).unwrap(), alt(3, 'C'));
    assert_eq!(r.voters_of_type(&order(3, "ABC")).unwrap(), VoterSet::single(0));

    match verify_gs(&rule, 4, u64::MAX).unwrap() {
        Search::Found(c) => assert!(c.verified && c.claim == Claim::GsManipulable),
        other => panic!("{other:?}"),
    }
}

#[test]
fn borda_four_voters_coordination() {
    let (rule, r) = example2();
    assert_eq!(rule.evaluate(&r).unwrap(), alt(3, 'B'));
    let acb = order(3, "ACB");
    let one = r.switch_votes(&VoterSet::single(0), &acb).unwrap();
    assert_eq!(rule.evaluate(&one).unwrap(), alt(3, 'A'));
    let two = r.switch_votes(&VoterSet::new([0, 1]), &acb).unwrap();
    assert_eq!(rule.evaluate(&two).unwrap(), alt(3, 'C'));
    assert_eq!(r.voters_of_type(&order(3, "ABC")).unwrap(), VoterSet::new([0, 1]));

    match classify_safety(&rule, &r, 0, &acb).unwrap() {
        SafetyVerdict::Unsafe { bad, kind } => {
            assert_eq!(bad, VoterSet::new([0, 1]));
            assert_eq!(kind, UnsafeKind::Overshoot { good: VoterSet::single(0), bad: VoterSet::new([0, 1]) });
        }
        SafetyVerdict::Safe => panic!("both switching elects their worst alternative"),
    }

    // Once both voted ACB, a single one of them switching back alone elects A.
    let abc = order(3, "ABC");
    assert!(find_l_inferior(&rule, &two, &acb, &abc).unwrap().is_empty());
    let back = two.switch_votes(&VoterSet::single(0), &abc).unwrap();
    assert_eq!(rule.evaluate(&back).unwrap(), alt(3, 'A'));

    let found = verify_safely_manipulable(&rule, 4, u64::MAX).unwrap();
    assert!(found.found().is_some_and(|c| c.verified));
}

#[test]
fn borda_ninety_four_voters() {
    let (rule, r) = example3();
    let scores = scoring_rule(&rule).scores(&r).unwrap();
    let s: Vec<i64> = scores.as_slice().iter().map(|x| x.to_integer()).collect();
    assert_eq!(s, [96, 99, 87]);
    assert_eq!(rule.evaluate(&r).unwrap(), alt(3, 'B'));

    let (abc, acb, cab) = (order(3, "ABC"), order(3, "ACB"), order(3, "CAB"));
    let scan = labels(3, &threshold_scan(&rule, &r, &abc, &acb).unwrap());
    let rows = [("ABC", 17), ("ACB", 15), ("BAC", 18), ("BCA", 16), ("CAB", 14), ("CBA", 14)];
    assert_eq!(scan, naive_thresholds(&[2, 1, 0], "BAC", &rows, "ABC", "ACB"));
    assert_eq!(scan, "BBBBAAAAAACCCCCCCC");

    let abc_voter = r.voters_of_type(&abc).unwrap().iter().next().unwrap();
    let w = has_incentive(&rule, &r, abc_voter, &acb).unwrap().unwrap();
    assert_eq!(w.coalition.len(), 4);
    assert_eq!(w.outcome_after, alt(3, 'A'));
    match classify_safety(&rule, &r, abc_voter, &acb).unwrap() {
        SafetyVerdict::Unsafe { bad, kind: UnsafeKind::Overshoot { good, bad: pair_bad } } => {
            assert_eq!(bad.len(), 10);
            assert!((4..=8).contains(&good.len()));
            assert!(pair_bad.len() >= 10);
            assert!(good.is_proper_subset(&pair_bad));
        }
        other => panic!("{other:?}"),
    }

    let acb_voter = r.voters_of_type(&acb).unwrap().iter().next().unwrap();
    assert_eq!(classify_safety(&rule, &r, acb_voter, &cab).unwrap(), SafetyVerdict::Safe);
    let scan = labels(3, &threshold_scan(&rule, &r, &acb, &cab).unwrap());
    assert_eq!(scan, naive_thresholds(&[2, 1, 0], "BAC", &rows, "ACB", "CAB"));
    assert_eq!(&scan[13..], "CCC");
    assert!(!scan[..13].contains('C'));

    let cert = construct_safe_from_endup(&rule, &r, acb_voter, &cab).unwrap().unwrap();
    assert!(cert.verified);
    assert_eq!(cert.profile, r);
    assert_eq!(cert.coalition.len(), 13);
}

#[test]
fn borda_forty_one_voters_undershoot() {
    let (rule, r) = example4();
    let s: Vec<i64> = scoring_rule(&rule).scores(&r).unwrap().as_slice().iter().map(|x| x.to_integer()).collect();
    assert_eq!(s, [59, 102, 110, 30, 109]);
    assert_eq!(rule.evaluate(&r).unwrap(), alt(5, 'C'));

    let swapped = [("ABCDE", 10), ("CEBAD", 15), ("EBCAD", 14), ("EDACB", 2)];
    let swapped_scores: Vec<i64> = naive_scores(&[4, 3, 2, 1, 0], &owned(&swapped)).iter().map(|s| s.1).collect();
    assert_eq!(swapped_scores, [73, 102, 110, 16, 109]);

    let (abcde, badce) = (order(5, "ABCDE"), order(5, "BADCE"));
    let scan = labels(5, &threshold_scan(&rule, &r, &abcde, &badce).unwrap());
    let rows = [("ABCDE", 10), ("CEBAD", 15), ("EBCDA", 14), ("EDACB", 2)];
    assert_eq!(scan, naive_thresholds(&[4, 3, 2, 1, 0], "CEBAD", &rows, "ABCDE", "BADCE"));
    assert_eq!(&scan[2..7], "EEEEE");
    assert_eq!(&scan[8..], "BBB");

    match classify_safety(&rule, &r, 0, &badce).unwrap() {
        SafetyVerdict::Unsafe { kind: UnsafeKind::Undershoot { good, bad }, .. } => {
            assert!(good.len() >= 8);
            assert!((2..=7).contains(&bad.len()));
            assert!(bad.is_proper_subset(&good));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(group_prefers(&abcde, alt(5, 'B'), alt(5, 'E')), GroupPreference::Strict);
}

fn owned(rows: &[(&str, usize)]) -> Vec<(String, usize)> {
    rows.iter().map(|&(b, c)| (b.to_string(), c)).collect()
}

#[test]
fn two_approval_unsafely_not_safely_manipulable() {
    let (rule, r) = example5();
    let s: Vec<i64> = scoring_rule(&rule).scores(&r).unwrap().as_slice().iter().map(|x| x.to_integer()).collect();
    assert_eq!(s, [23, 25, 18]);
    assert_eq!(rule.evaluate(&r).unwrap(), alt(3, 'B'));
    let scan = labels(3, &threshold_scan(&rule, &r, &order(3, "ABC"), &order(3, "ACB")).unwrap());
    assert_eq!(&scan[3..5], "AA");
    assert_eq!(&scan[6..], "CCC");

    let mut incentives = Vec::new();
    for (t, class) in r.groups() {
        let voter = class.iter().next().unwrap();
        for l in domain(3).orders().into_iter().filter(|l| l != t) {
            if has_incentive(&rule, &r, voter, &l).unwrap().is_some() {
                assert!(!classify_safety(&rule, &r, voter, &l).unwrap().is_safe());
                incentives.push((domain(3).compact_order(t), domain(3).compact_order(&l)));
            }
        }
    }
    let types: Vec<&str> = incentives.iter().map(|(t, _)| t.as_str()).collect();
    assert!(!types.is_empty());
    assert!(types.iter().all(|&t| t == "ABC"));
    assert!(find_escapes(&rule, &r).unwrap().is_empty());
}

#[test]
fn trajectories_keep_untouched_score() {
    let (rule, r) = example3();
    let s = scoring_rule(&rule);
    let tb = s.tiebreak();
    let ab = trajectory(s, &r, &order(3, "ABC"), &order(3, "ACB"), 17).unwrap();
    assert_eq!(ab.len(), 18);
    for p in &ab {
        assert_eq!(p.coords()[0], Ratio::new(96, 282));
    }
    assert_eq!(ab[0], embed(&s.scores(&r).unwrap()).unwrap());
    assert_eq!(region_of(&ab[0], tb), alt(3, 'B'));
    assert_eq!(region_of(&ab[10], tb), alt(3, 'C'));
    let ac = trajectory(s, &r, &order(3, "ACB"), &order(3, "CAB"), 15).unwrap();
    for p in &ac {
        assert_eq!(p.coords()[1], Ratio::new(99, 282));
    }
    assert!(trajectory(s, &r, &order(3, "ABC"), &order(3, "ACB"), 18).is_err());
}
