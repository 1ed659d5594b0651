// SPDX-License-Identifier: Apache-2.0

//! Rules induced by other rules.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profile::{Alternative, Domain, LinearOrder, Profile, VoterSet};
use crate::rules::{check_predicates, ProfileSpace, Rule, TableRule, DEFAULT_TABLE_LIMIT};

/// The two-voter rule whose value at `(P, Q)` is the parent's value when
/// everyone in `part1` reports `P` and everyone in `part2` reports `Q`.
pub fn two_voter_reduction(rule: &Rule, voters: usize, part1: &VoterSet, part2: &VoterSet) -> Result<TableRule> {
    rule.check_voters(voters)?;
    if part1.is_empty() || part2.is_empty() {
        return Err(Error::InvalidPartition("both parts must be non-empty"));
    }
    if part1.iter().any(|v| part2.contains(v)) {
        return Err(Error::InvalidPartition("parts overlap"));
    }
    if part1.len() + part2.len() != voters || part1.iter().chain(part2.iter()).any(|v| v >= voters) {
        return Err(Error::InvalidPartition("parts must cover every voter"));
    }
    let domain = *rule.domain();
    TableRule::from_fn(domain, 2, |pair| {
        let mut orders = alloc::vec![*pair.order(0); voters];
        for v in part2.iter() {
            orders[v] = *pair.order(1);
        }
        Ok(rule.winner(&Profile::new(domain, orders)?))
    })
}

/// The rule on the domain without `x` obtained by appending `x` to the
/// bottom of every ballot. Fails if the parent elects `x` at any such
/// profile, i.e. if it is antagonistic there.
pub fn subrule_minus(rule: &Rule, voters: usize, x: Alternative) -> Result<TableRule> {
    rule.check_voters(voters)?;
    let parent = *rule.domain();
    let reduced = parent.without(x)?;
    let len = TableRule::table_len(reduced, voters, DEFAULT_TABLE_LIMIT)?;
    let space = ProfileSpace::new(reduced, voters)?;
    let lifted: Vec<LinearOrder> =
        space.orders().iter().map(|o| append_bottom(&reduced, o, &parent, x)).collect::<Result<_>>()?;

    let mut digits = alloc::vec![0usize; voters];
    let mut entries = Vec::with_capacity(len);
    for index in 0..len as u64 {
        space.digits_of(index, &mut digits);
        let orders = digits.iter().map(|&d| lifted[d]).collect();
        let w = rule.winner(&Profile::new(parent, orders)?);
        if w == x {
            return Err(Error::Antagonism { profile_index: index as usize });
        }
        let label = parent.label(w);
        entries.push(reduced.alternative(label).expect("label survives removal"));
    }
    TableRule::new(reduced, voters, entries)
}

fn append_bottom(from: &Domain, order: &LinearOrder, to: &Domain, x: Alternative) -> Result<LinearOrder> {
    let mut ranking: Vec<Alternative> =
        order.iter().map(|a| to.alternative(from.label(a)).expect("shared label")).collect();
    ranking.push(x);
    LinearOrder::new(&ranking)
}

/// A subrule is proper when it is non-dictatorial and reaches every
/// alternative of its domain.
pub fn is_proper(subrule: &TableRule, budget: u64) -> Result<bool> {
    let report = check_predicates(&Rule::Table(subrule.clone()), subrule.voters(), budget)?;
    Ok(report.onto && report.dictator.is_none())
}
