// SPDX-License-Identifier: Apache-2.0

//! Exhaustive scans of a rule's profile space.
//!
//! Profiles are visited in their table index order, then voters ascending,
//! then strategic orders lexicographically. The first hit is returned, so a
//! scan's result depends only on the rule.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profile::{LinearOrder, Profile, VoterSet};
use crate::rules::{ProfileSpace, Rule};
use crate::strategy::certificate::{Certificate, Claim, Derivation};
use crate::strategy::situation::{SearchMode, Situation, Verdict};

/// Outcome of a budgeted scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// Every profile was visited without a hit.
    Exhausted {
        profiles: u64,
    },
    /// The budget ran out first; nothing is known about the rest.
    Inconclusive {
        scanned: u64,
        total: Option<u64>,
    },
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Search::Inconclusive { .. })
    }
}

fn scan<F>(rule: &Rule, voters: usize, budget: u64, mut visit: F) -> Result<Search<Certificate>>
where
    F: FnMut(&Profile, &[LinearOrder]) -> Result<Option<Certificate>>,
{
    rule.check_voters(voters)?;
    let space = ProfileSpace::new(*rule.domain(), voters)?;
    let total = space.size();
    let orders = space.orders().to_vec();
    let mut index = 0u64;
    loop {
        if Some(index) == total {
            return Ok(Search::Exhausted { profiles: index });
        }
        if index >= budget {
            return Ok(Search::Inconclusive { scanned: index, total });
        }
        if let Some(cert) = visit(&space.profile_at(index), &orders)? {
            return Ok(Search::Found(cert));
        }
        index += 1;
    }
}

/// Situations of one profile, built on first use.
struct Situations<'a> {
    rule: &'a Rule,
    profile: &'a Profile,
    built: BTreeMap<(LinearOrder, LinearOrder), Situation>,
}

impl<'a> Situations<'a> {
    fn new(rule: &'a Rule, profile: &'a Profile) -> Self {
        Situations { rule, profile, built: BTreeMap::new() }
    }

    fn get(&mut self, t: &LinearOrder, l: &LinearOrder) -> Result<&Situation> {
        if !self.built.contains_key(&(*t, *l)) {
            let sit = Situation::build(self.rule, self.profile, t, l, SearchMode::Auto)?;
            self.built.insert((*t, *l), sit);
        }
        Ok(&self.built[&(*t, *l)])
    }
}

/// The first profile at which one voter improves the winner for themself
/// by switching alone.
pub fn verify_gs(rule: &Rule, voters: usize, budget: u64) -> Result<Search<Certificate>> {
    scan(rule, voters, budget, |profile, orders| {
        let base = rule.winner(profile);
        for voter in 0..profile.len() {
            let t = *profile.order(voter);
            for l in orders.iter().filter(|&&l| l != t) {
                let after = rule.winner(&profile.replace_votes(&VoterSet::single(voter), l)?);
                if t.prefers(after, base) {
                    let cert = Certificate::issue(
                        rule,
                        Claim::GsManipulable,
                        profile.clone(),
                        voter,
                        *l,
                        VoterSet::single(voter),
                        None,
                    )?;
                    return Ok(Some(cert));
                }
            }
        }
        Ok(None)
    })
}

/// The first voter with an incentive to cast a safe strategic vote.
pub fn verify_safely_manipulable(rule: &Rule, voters: usize, budget: u64) -> Result<Search<Certificate>> {
    scan(rule, voters, budget, |profile, orders| {
        let mut situations = Situations::new(rule, profile);
        for voter in 0..profile.len() {
            let t = *profile.order(voter);
            for l in orders.iter().filter(|&&l| l != t) {
                let sit = situations.get(&t, l)?;
                let pos = sit.position(voter).expect("voter belongs to its class");
                let Some(incentive) = sit.incentive(pos) else {
                    continue;
                };
                if sit.classify(pos)? == Verdict::Safe {
                    let coalition = sit.to_set(incentive, Some(pos));
                    let cert = Certificate::issue(
                        rule,
                        Claim::SafelyManipulable,
                        profile.clone(),
                        voter,
                        *l,
                        coalition,
                        None,
                    )?;
                    return Ok(Some(cert));
                }
            }
        }
        Ok(None)
    })
}

/// The first voter who is pivotal on their own and whose strategic vote is
/// also safe.
pub fn verify_safe_pivotal(rule: &Rule, voters: usize, budget: u64) -> Result<Search<Certificate>> {
    scan(rule, voters, budget, |profile, orders| {
        let mut situations = Situations::new(rule, profile);
        for voter in 0..profile.len() {
            let t = *profile.order(voter);
            for l in orders.iter().filter(|&&l| l != t) {
                let sit = situations.get(&t, l)?;
                let pos = sit.position(voter).expect("voter belongs to its class");
                if sit.improves(sit.outcome(sit.singleton(pos))) && sit.classify(pos)? == Verdict::Safe {
                    let cert = Certificate::issue(
                        rule,
                        Claim::SafePivotal,
                        profile.clone(),
                        voter,
                        *l,
                        VoterSet::single(voter),
                        None,
                    )?;
                    return Ok(Some(cert));
                }
            }
        }
        Ok(None)
    })
}

/// Turns a safe strategic vote into one whose caster is singly pivotal.
///
/// Let `U` be the certificate's coalition with its voter first. Switching
/// growing prefixes of `U` to the strategic order, the first prefix that
/// changes the winner must improve it, since the vote is safe. The profile
/// where the previous prefix has already switched makes the newly added
/// voter pivotal, and the vote stays safe there: any coalition of the
/// remaining voters, added to that prefix, is a coalition of the original
/// type class whose switch was no worse than sincere voting.
///
/// Fails with [`Error::NoIncentive`] when no prefix changes the winner,
/// which cannot happen for a verified certificate.
pub fn lift_to_pivotal(rule: &Rule, cert: &Certificate) -> Result<Certificate> {
    let profile = &cert.profile;
    let l = cert.strategic_order;
    let before = rule.evaluate(profile)?;
    let order: Vec<usize> =
        core::iter::once(cert.voter).chain(cert.coalition.iter().filter(|&v| v != cert.voter)).collect();
    for t in 1..=order.len() {
        let prefix: VoterSet = order[..t].iter().copied().collect();
        if rule.evaluate(&profile.switch_votes(&prefix, &l)?)? == before {
            continue;
        }
        let switched: VoterSet = order[..t - 1].iter().copied().collect();
        let pivot = order[t - 1];
        let (shifted, derived_from) = if switched.is_empty() {
            (profile.clone(), cert.derived_from.clone())
        } else {
            (profile.switch_votes(&switched, &l)?, Some(Derivation { profile: profile.clone(), switched }))
        };
        return Certificate::issue(rule, Claim::SafePivotal, shifted, pivot, l, VoterSet::single(pivot), derived_from);
    }
    Err(Error::NoIncentive)
}
