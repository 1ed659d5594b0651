// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profile::{Alternative, LinearOrder, Profile};
use crate::rules::{ProfileSpace, Rule, ScoringRule};

/// Structural facts about a rule for a fixed number of voters.
///
/// Positive findings carry a witness profile. Negative findings are
/// exhaustive over the profile space unless `exhaustive` is false, in which
/// case they rest on the scoring-rule arguments documented on
/// [`check_predicates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RulePredicateReport {
    pub voters: usize,
    pub exhaustive: bool,
    pub onto: bool,
    /// First profile (canonical order) electing each reachable alternative.
    pub reached: Vec<(Alternative, Profile)>,
    /// 0-based dictator, if any.
    pub dictator: Option<usize>,
    pub anonymous: bool,
    /// A profile whose value changes once its voters are sorted.
    pub anonymity_violation: Option<Profile>,
    pub weakly_unanimous: bool,
    /// A profile where every voter ranks the winner last.
    pub antagonistic: Option<Profile>,
    /// Values taken on completely agreed profiles, ascending.
    pub agreed_image: Vec<Alternative>,
}

/// Computes [`RulePredicateReport`] by scanning every profile when `(m!)^n`
/// is within `budget`.
///
/// Larger scoring-rule domains fall back on these facts:
/// - with two or more voters no one dictates: let voter `i` rank the
///   tie-break's last alternative `X` first while everyone else ranks it
///   last; the alternative `i` ranks second then scores at least as much as
///   `X` and wins any tie against it;
/// - a non-constant vector is never antagonistic, because the alternative
///   ranked last by everyone scores strictly below the average of the rest;
/// - with a strict top weight every alternative wins its own agreed profile.
///
/// A scoring rule whose two top weights are equal has no shortcut for
/// ontoness and returns [`Error::BudgetExceeded`].
pub fn check_predicates(rule: &Rule, voters: usize, budget: u64) -> Result<RulePredicateReport> {
    if voters == 0 {
        return Err(Error::EmptyProfile);
    }
    rule.check_voters(voters)?;
    let size = rule.domain().order_count().filter(|&r| r <= 40320).and_then(|r| r.checked_pow(voters as u32));
    match (size, rule) {
        (Some(size), _) if size <= budget => Ok(exhaustive(rule, voters, size)),
        (_, Rule::Scoring(scoring)) => analytic(scoring, voters, size.unwrap_or(u64::MAX), budget),
        (size, Rule::Table(_)) => Err(Error::BudgetExceeded { needed: size.unwrap_or(u64::MAX), budget }),
    }
}

fn exhaustive(rule: &Rule, voters: usize, size: u64) -> RulePredicateReport {
    let space = ProfileSpace::new(*rule.domain(), voters).expect("space fits");
    let orders = space.orders();
    let m = rule.domain().len();

    let mut digits = alloc::vec![0usize; voters];
    let mut sorted = alloc::vec![0usize; voters];
    let mut reached: Vec<Option<u64>> = alloc::vec![None; m];
    let mut dictator_candidates = alloc::vec![true; voters];
    let mut anonymity_violation = None;
    let mut antagonistic = None;
    let mut agreed = alloc::vec![false; m];
    let mut weakly_unanimous = true;

    let value = |digits: &[usize]| -> Alternative {
        match rule {
            Rule::Table(t) => t.lookup(digits.iter().fold(0usize, |acc, &d| acc * space.radix() + d)),
            Rule::Scoring(s) => {
                let mut totals = alloc::vec![0i64; m];
                for &d in digits {
                    s.add_ballots(&mut totals, &orders[d], 1);
                }
                s.winner_of_totals(&totals)
            }
        }
    };

    for index in 0..size {
        space.digits_of(index, &mut digits);
        let w = value(&digits);

        reached[w.index()].get_or_insert(index);
        for (cand, &d) in dictator_candidates.iter_mut().zip(&digits) {
            *cand &= orders[d].top() == w;
        }
        if antagonistic.is_none() && digits.iter().all(|&d| orders[d].bottom() == w) {
            antagonistic = Some(index);
        }
        if digits.iter().all(|&d| d == digits[0]) {
            agreed[w.index()] = true;
            weakly_unanimous &= orders[digits[0]].top() == w;
        }
        if anonymity_violation.is_none() {
            sorted.copy_from_slice(&digits);
            sorted.sort_unstable();
            if sorted != digits && value(&sorted) != w {
                anonymity_violation = Some(index);
            }
        }
    }

    let reached: Vec<(Alternative, Profile)> = reached
        .iter()
        .enumerate()
        .filter_map(|(a, idx)| idx.map(|i| (Alternative::new(a), space.profile_at(i))))
        .collect();
    RulePredicateReport {
        voters,
        exhaustive: true,
        onto: reached.len() == m,
        reached,
        dictator: dictator_candidates.iter().position(|&c| c),
        anonymous: anonymity_violation.is_none(),
        anonymity_violation: anonymity_violation.map(|i| space.profile_at(i)),
        weakly_unanimous,
        antagonistic: antagonistic.map(|i| space.profile_at(i)),
        agreed_image: agreed.iter().enumerate().filter(|(_, &hit)| hit).map(|(a, _)| Alternative::new(a)).collect(),
    }
}

fn analytic(rule: &ScoringRule, voters: usize, needed: u64, budget: u64) -> Result<RulePredicateReport> {
    let domain = *rule.domain();
    let m = domain.len();
    let weights = rule.weights();
    let strict_top = m == 1 || weights[0] > weights[1];

    // Agreed profiles have the same winner as a single ballot.
    let agreed_winner = |order: &LinearOrder| {
        let mut totals = alloc::vec![0i64; m];
        rule.add_ballots(&mut totals, order, 1);
        rule.winner_of_totals(&totals)
    };
    let mut agreed = alloc::vec![false; m];
    let mut weakly_unanimous = true;
    let orders = domain.orders();
    for order in &orders {
        let w = agreed_winner(order);
        agreed[w.index()] = true;
        weakly_unanimous &= w == order.top();
    }

    let head = rule.tiebreak().top();
    let reached = if rule.is_constant() {
        let any = orders[0];
        alloc::vec![(head, Profile::completely_agreed(domain, any, voters)?)]
    } else if strict_top {
        let mut reached = Vec::with_capacity(m);
        for a in domain.alternatives() {
            let order = orders.iter().find(|o| o.top() == a).expect("some order puts a first");
            reached.push((a, Profile::completely_agreed(domain, *order, voters)?));
        }
        reached
    } else {
        return Err(Error::BudgetExceeded { needed, budget });
    };

    let dictator = (voters == 1 && strict_top && !rule.is_constant()).then_some(0);
    let antagonistic = if rule.is_constant() {
        let reversed: Vec<Alternative> = rule.tiebreak().iter().collect::<Vec<_>>().into_iter().rev().collect();
        Some(Profile::completely_agreed(domain, LinearOrder::new(&reversed)?, voters)?)
    } else {
        None
    };

    Ok(RulePredicateReport {
        voters,
        exhaustive: false,
        onto: reached.len() == m,
        reached,
        dictator,
        anonymous: true,
        anonymity_violation: None,
        weakly_unanimous,
        antagonistic,
        agreed_image: agreed.iter().enumerate().filter(|(_, &hit)| hit).map(|(a, _)| Alternative::new(a)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Domain;
    use crate::rules::TableRule;

    fn abc() -> Domain {
        Domain::standard(3).unwrap()
    }

    #[test]
    fn constant_table_is_not_onto() {
        let rule = Rule::Table(TableRule::new(abc(), 2, alloc::vec![Alternative::new(0); 36]).unwrap());
        let report = check_predicates(&rule, 2, 1000).unwrap();
        assert!(!report.onto);
        assert_eq!(report.reached.len(), 1);
        assert!(report.anonymous);
        assert!(report.antagonistic.is_some());
        assert_eq!(report.agreed_image, alloc::vec![Alternative::new(0)]);
    }

    #[test]
    fn projection_is_dictatorial() {
        let rule = Rule::Table(TableRule::from_fn(abc(), 2, |p| Ok(p.order(0).top())).unwrap());
        let report = check_predicates(&rule, 2, 1000).unwrap();
        assert_eq!(report.dictator, Some(0));
        assert!(report.onto);
        assert!(!report.anonymous);
        assert!(report.weakly_unanimous);
    }

    #[test]
    fn borda_two_voters() {
        let tb = LinearOrder::identity(3).unwrap();
        let rule = Rule::Scoring(ScoringRule::borda(abc(), tb).unwrap());
        let report = check_predicates(&rule, 2, 1000).unwrap();
        assert!(report.exhaustive);
        assert!(report.onto);
        assert_eq!(report.dictator, None);
        assert!(report.anonymous);
        assert!(report.weakly_unanimous);
        assert_eq!(report.antagonistic, None);
        assert_eq!(report.agreed_image.len(), 3);
    }

    #[test]
    fn tied_top_weights_need_not_be_onto() {
        // Two last places cannot pull all three rivals of D below it.
        let d4 = Domain::standard(4).unwrap();
        let rule = Rule::Scoring(ScoringRule::anti_plurality(d4, LinearOrder::identity(4).unwrap()).unwrap());
        let report = check_predicates(&rule, 2, 1000).unwrap();
        assert!(report.exhaustive);
        assert!(!report.onto);
        assert!(report.reached.iter().all(|(a, _)| *a != Alternative::new(3)));
        assert!(matches!(check_predicates(&rule, 2, 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn budget_without_shortcut() {
        let tb = LinearOrder::identity(3).unwrap();
        let two_approval = Rule::Scoring(ScoringRule::anti_plurality(abc(), tb).unwrap());
        assert!(matches!(check_predicates(&two_approval, 9, 100), Err(Error::BudgetExceeded { .. })));
        let table = Rule::Table(TableRule::new(abc(), 2, alloc::vec![Alternative::new(0); 36]).unwrap());
        assert!(matches!(check_predicates(&table, 2, 10), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(check_predicates(&table, 3, 1000), Err(Error::VoterCountMismatch { .. })));
    }

    #[test]
    fn two_approval_is_not_weakly_unanimous() {
        let tb = LinearOrder::identity(3).unwrap();
        let rule = Rule::Scoring(ScoringRule::anti_plurality(abc(), tb).unwrap());
        let report = check_predicates(&rule, 2, 1000).unwrap();
        assert!(!report.weakly_unanimous);
        assert!(report.onto);
        // A single 2-approval voter can never elect the tie-break's last alternative.
        let single = check_predicates(&rule, 1, 1000).unwrap();
        assert!(!single.onto);
        assert_eq!(single.dictator, None);
    }
}
