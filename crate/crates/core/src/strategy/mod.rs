// SPDX-License-Identifier: Apache-2.0

//! Strategic voting by like-minded coalitions.
//!
//! A voter's *type* is their sincere order; the voters sharing it form the
//! type class `V`. Switching a coalition `V1 ⊆ V` to a strategic order `L`
//! gives the profile `R_{-V1}(L)`. The voter has an incentive to vote `L`
//! when some coalition containing them improves the winner in their order
//! this way. The vote is unsafe when some coalition containing them, all of
//! whose members have that incentive, makes the winner strictly worse.
//!
//! Queries are answered from a per-(type, order) outcome table built either
//! from coalition sizes (anonymous rules) or from every subset of the type
//! class. [`SearchMode`] forces one or the other.

mod certificate;
mod search;
mod situation;

pub use certificate::{Certificate, Claim, Derivation};
pub use search::{lift_to_pivotal, verify_gs, verify_safe_pivotal, verify_safely_manipulable, Search};
pub use situation::{SearchMode, SUBSET_LIMIT};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profile::{Alternative, LinearOrder, Profile, VoterSet};
use crate::rules::Rule;
use situation::{Coalition, Pair, Situation, Verdict};

/// A coalition of the voter's type whose switch to `strategic_order` improves
/// the winner for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncentiveWitness {
    pub voter: usize,
    pub strategic_order: LinearOrder,
    pub coalition: VoterSet,
    pub outcome_before: Alternative,
    pub outcome_after: Alternative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnsafeKind {
    /// `good ⊊ bad`: too many voters switched.
    Overshoot {
        good: VoterSet,
        bad: VoterSet,
    },
    /// `bad ⊊ good`: too few voters switched.
    Undershoot {
        good: VoterSet,
        bad: VoterSet,
    },
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SafetyVerdict {
    Safe,
    /// `bad` is the smallest coalition containing the voter, all of whose
    /// members have an incentive, that makes the winner worse.
    Unsafe {
        bad: VoterSet,
        kind: UnsafeKind,
    },
}

impl SafetyVerdict {
    pub fn is_safe(&self) -> bool {
        matches!(self, SafetyVerdict::Safe)
    }
}

fn situation_for_voter(
    rule: &Rule,
    profile: &Profile,
    voter: usize,
    l: &LinearOrder,
    mode: SearchMode,
) -> Result<(Situation, usize)> {
    rule.check_profile(profile)?;
    if voter >= profile.len() {
        return Err(Error::VoterOutOfRange(voter));
    }
    let sit = Situation::build(rule, profile, profile.order(voter), l, mode)?;
    let pos = sit.position(voter).expect("voter belongs to its class");
    Ok((sit, pos))
}

fn witness_of(sit: &Situation, pos: usize, c: Coalition) -> IncentiveWitness {
    IncentiveWitness {
        voter: sit.members[pos],
        strategic_order: sit.strategic,
        coalition: sit.to_set(c, Some(pos)),
        outcome_before: sit.base,
        outcome_after: sit.outcome(c),
    }
}

/// The smallest (then lexicographically first) coalition containing `voter`
/// that improves the winner for them by switching to `l`.
pub fn has_incentive(
    rule: &Rule,
    profile: &Profile,
    voter: usize,
    l: &LinearOrder,
) -> Result<Option<IncentiveWitness>> {
    has_incentive_with(rule, profile, voter, l, SearchMode::Auto)
}

pub fn has_incentive_with(
    rule: &Rule,
    profile: &Profile,
    voter: usize,
    l: &LinearOrder,
    mode: SearchMode,
) -> Result<Option<IncentiveWitness>> {
    let (sit, pos) = situation_for_voter(rule, profile, voter, l, mode)?;
    Ok(sit.incentive(pos).map(|c| witness_of(&sit, pos, c)))
}

/// Classifies `voter`'s strategic vote `l`. Fails with
/// [`Error::NoIncentive`] when the voter has no incentive to cast it.
///
/// The witnesses are the first in canonical order (size, then members). An
/// overshooting pair is reported in preference to an undershooting one.
pub fn classify_safety(rule: &Rule, profile: &Profile, voter: usize, l: &LinearOrder) -> Result<SafetyVerdict> {
    classify_safety_with(rule, profile, voter, l, SearchMode::Auto)
}

pub fn classify_safety_with(
    rule: &Rule,
    profile: &Profile,
    voter: usize,
    l: &LinearOrder,
    mode: SearchMode,
) -> Result<SafetyVerdict> {
    let (sit, pos) = situation_for_voter(rule, profile, voter, l, mode)?;
    Ok(verdict_of(&sit, pos, sit.classify(pos)?))
}

fn verdict_of(sit: &Situation, pos: usize, v: Verdict) -> SafetyVerdict {
    let set = |c| sit.to_set(c, Some(pos));
    match v {
        Verdict::Safe => SafetyVerdict::Safe,
        Verdict::Unsafe { bad, pair } => SafetyVerdict::Unsafe {
            bad: set(bad),
            kind: match pair {
                Some(Pair::Overshoot { good, bad }) => UnsafeKind::Overshoot { good: set(good), bad: set(bad) },
                Some(Pair::Undershoot { good, bad }) => UnsafeKind::Undershoot { good: set(good), bad: set(bad) },
                None => UnsafeKind::Other,
            },
        },
    }
}

/// Escape certificates, one per type whose bottom alternative is the winner
/// and which has an incentive towards some strategic order. Types are taken
/// in lexicographic order, and within a type the first voter and first
/// strategic order that work.
pub fn find_escapes(rule: &Rule, profile: &Profile) -> Result<Vec<Certificate>> {
    rule.check_profile(profile)?;
    let winner = rule.winner(profile);
    let mut out = Vec::new();
    for (t, class) in profile.groups() {
        if t.bottom() != winner {
            continue;
        }
        'type_search: for l in profile.domain().orders() {
            if l == *t {
                continue;
            }
            let sit = Situation::build(rule, profile, t, &l, SearchMode::Auto)?;
            for (pos, _) in class.iter().enumerate() {
                if let Some(c) = sit.incentive(pos) {
                    let w = witness_of(&sit, pos, c);
                    out.push(Certificate::issue(rule, Claim::Escape, profile.clone(), w.voter, l, w.coalition, None)?);
                    break 'type_search;
                }
            }
        }
    }
    Ok(out)
}

/// Proper subsets `V1` of the type class (the empty set included) such that
/// the type prefers everyone switching to `l` over only `V1` switching.
/// For anonymous rules one canonical subset stands for each qualifying size.
pub fn find_l_inferior(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    l: &LinearOrder,
) -> Result<Vec<VoterSet>> {
    find_l_inferior_with(rule, profile, type_order, l, SearchMode::Auto)
}

pub fn find_l_inferior_with(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    l: &LinearOrder,
    mode: SearchMode,
) -> Result<Vec<VoterSet>> {
    rule.check_profile(profile)?;
    let sit = Situation::build(rule, profile, type_order, l, mode)?;
    Ok(sit.inferior().into_iter().map(|c| sit.to_set(c, None)).collect())
}

/// An [`Claim::LInferior`] certificate for `subset` of the type class.
pub fn certify_inferior(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    l: &LinearOrder,
    subset: &VoterSet,
) -> Result<Certificate> {
    rule.check_profile(profile)?;
    let class = profile.voters_of_type(type_order)?;
    let first = class.iter().next().ok_or(Error::TypeAbsent)?;
    Certificate::issue(rule, Claim::LInferior, profile.clone(), first, *l, subset.clone(), None)
}

/// Takes a largest `l`-inferior subset `V1` and certifies that at
/// `R_{-V1}(l)` the remaining voters of the type have a safe strategic vote
/// `l`. `None` when no subset is inferior.
pub fn construct_safe_from_inferior(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    l: &LinearOrder,
) -> Result<Option<Certificate>> {
    rule.check_profile(profile)?;
    let sit = Situation::build(rule, profile, type_order, l, SearchMode::Auto)?;
    safe_from_inferior(rule, profile, &sit)
}

fn safe_from_inferior(rule: &Rule, profile: &Profile, sit: &Situation) -> Result<Option<Certificate>> {
    let inferior = sit.inferior();
    // Canonical order puts the largest sets last; take the first of those.
    let Some(largest) = inferior.iter().map(|&c| situation::coalition_len(c)).max() else {
        return Ok(None);
    };
    let v1 = inferior.into_iter().find(|&c| situation::coalition_len(c) == largest).expect("a largest set exists");
    let v1 = sit.to_set(v1, None);
    let class: VoterSet = sit.members.iter().copied().collect();
    let rest = class.difference(&v1);
    let shifted = profile.switch_votes(&v1, &sit.strategic)?;
    let voter = rest.iter().next().expect("inferior sets are proper");
    let derivation = Derivation { profile: profile.clone(), switched: v1 };
    Certificate::issue(rule, Claim::SafelyManipulable, shifted, voter, sit.strategic, rest, Some(derivation)).map(Some)
}

/// When `voter` has an incentive to vote `l` and the whole type switching
/// is no worse for them than voting sincerely, a safe strategic vote exists:
/// either `l` itself at `profile`, or one built from an inferior subset.
///
/// `Ok(None)` when the full switch is strictly worse. Fails with
/// [`Error::NoIncentive`] when the voter has no incentive.
pub fn construct_safe_from_endup(
    rule: &Rule,
    profile: &Profile,
    voter: usize,
    l: &LinearOrder,
) -> Result<Option<Certificate>> {
    let (sit, pos) = situation_for_voter(rule, profile, voter, l, SearchMode::Auto)?;
    let Some(incentive) = sit.incentive(pos) else {
        return Err(Error::NoIncentive);
    };
    if sit.worsens(sit.outcome(sit.everyone())) {
        return Ok(None);
    }
    match sit.classify(pos)? {
        Verdict::Safe => {
            let coalition = sit.to_set(incentive, Some(pos));
            Certificate::issue(rule, Claim::SafelyManipulable, profile.clone(), voter, *l, coalition, None).map(Some)
        }
        Verdict::Unsafe { .. } => safe_from_inferior(rule, profile, &sit),
    }
}

/// Winners when exactly `k` voters of the type switch to `l`, for
/// `k = 0..=count`. Anonymous rules only.
pub fn threshold_scan(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    l: &LinearOrder,
) -> Result<Vec<Alternative>> {
    rule.check_profile(profile)?;
    let sit = Situation::build(rule, profile, type_order, l, SearchMode::Sizes)?;
    Ok(sit.size_outcomes().expect("size mode").to_vec())
}
