// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::profile::{Alternative, LinearOrder, Profile, VoterSet};
use crate::rules::Rule;
use crate::strategy::situation::SUBSET_LIMIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// A single voter improves the outcome by switching alone.
    GsManipulable,
    /// The voter has an incentive to cast a safe strategic vote.
    SafelyManipulable,
    /// A safe strategic vote whose caster is also pivotal on their own.
    SafePivotal,
    /// A type whose worst alternative wins can improve on it.
    Escape,
    /// A proper subset of a type that does worse than the whole type.
    LInferior,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::GsManipulable => "gs-manipulable",
            Claim::SafelyManipulable => "safely-manipulable",
            Claim::SafePivotal => "safe-pivotal",
            Claim::Escape => "escape",
            Claim::LInferior => "l-inferior",
        }
    }
}

/// The profile a certificate was derived from and the voters who already
/// switched to the strategic order to reach the certificate's profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub profile: Profile,
    pub switched: VoterSet,
}

/// A replayable record of a strategic claim.
///
/// For every claim except [`Claim::LInferior`], `coalition` contains
/// `voter`, all its members share `voter`'s type, and switching them to
/// `strategic_order` moves the winner from `outcome_before` to the strictly
/// preferred `outcome_after`.
///
/// For [`Claim::LInferior`], `voter` is the type's first voter, `coalition`
/// is the inferior proper subset, `outcome_before` is the winner when it
/// switches and `outcome_after` the winner when the whole type switches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Claim,
    pub profile: Profile,
    pub voter: usize,
    pub strategic_order: LinearOrder,
    pub coalition: VoterSet,
    pub outcome_before: Alternative,
    pub outcome_after: Alternative,
    pub derived_from: Option<Derivation>,
    pub verified: bool,
}

impl Certificate {
    pub(crate) fn issue(
        rule: &Rule,
        claim: Claim,
        profile: Profile,
        voter: usize,
        strategic_order: LinearOrder,
        coalition: VoterSet,
        derived_from: Option<Derivation>,
    ) -> Result<Certificate> {
        let before_profile = match claim {
            Claim::LInferior => profile.switch_votes(&coalition, &strategic_order)?,
            _ => profile.clone(),
        };
        let after_set = match claim {
            Claim::LInferior => profile.class_of(voter).clone(),
            _ => coalition.clone(),
        };
        let mut cert = Certificate {
            claim,
            outcome_before: rule.evaluate(&before_profile)?,
            outcome_after: rule.evaluate(&profile.switch_votes(&after_set, &strategic_order)?)?,
            profile,
            voter,
            strategic_order,
            coalition,
            derived_from,
            verified: false,
        };
        cert.verified = cert.recheck(rule)?;
        Ok(cert)
    }

    /// The sincere order of the certificate's voter.
    pub fn type_order(&self) -> &LinearOrder {
        self.profile.order(self.voter)
    }

    /// Replays the certificate from scratch through [`Rule::evaluate`] and
    /// [`Profile::switch_votes`], without the search engine's tables.
    ///
    /// Errors only when the certificate cannot be replayed at all (wrong
    /// domain or voter count, an oversized non-anonymous class).
    pub fn recheck(&self, rule: &Rule) -> Result<bool> {
        rule.check_profile(&self.profile)?;
        if self.voter >= self.profile.len() {
            return Ok(false);
        }
        let t = *self.type_order();
        let l = self.strategic_order;
        if t == l || l.len() != t.len() {
            return Ok(false);
        }
        let class = self.profile.class_of(self.voter);
        if !self.coalition.is_subset(class) {
            return Ok(false);
        }
        if let Some(d) = &self.derived_from {
            match d.profile.switch_votes(&d.switched, &l) {
                Ok(p) if p == self.profile => {}
                _ => return Ok(false),
            }
        }
        let evaluate_switch = |set: &VoterSet| rule.evaluate(&self.profile.switch_votes(set, &l)?);

        if self.claim == Claim::LInferior {
            let partial = evaluate_switch(&self.coalition)?;
            let full = evaluate_switch(class)?;
            return Ok(self.coalition.is_proper_subset(class)
                && class.iter().next() == Some(self.voter)
                && partial == self.outcome_before
                && full == self.outcome_after
                && t.prefers(full, partial));
        }

        let before = rule.evaluate(&self.profile)?;
        let after = evaluate_switch(&self.coalition)?;
        let improving = self.coalition.contains(self.voter)
            && before == self.outcome_before
            && after == self.outcome_after
            && t.prefers(after, before);
        if !improving {
            return Ok(false);
        }
        let single = self.coalition == VoterSet::single(self.voter);
        Ok(match self.claim {
            Claim::GsManipulable => single,
            Claim::Escape => before == t.bottom(),
            Claim::SafelyManipulable => replay_is_safe(rule, &self.profile, self.voter, &l)?,
            Claim::SafePivotal => single && replay_is_safe(rule, &self.profile, self.voter, &l)?,
            Claim::LInferior => unreachable!(),
        })
    }
}

/// Brute-force safety check: no coalition containing `voter`, all of whose
/// members have an incentive to vote `l`, makes the type strictly worse off.
pub(crate) fn replay_is_safe(rule: &Rule, profile: &Profile, voter: usize, l: &LinearOrder) -> Result<bool> {
    let t = *profile.order(voter);
    let base = rule.evaluate(profile)?;
    let members: Vec<usize> = profile.class_of(voter).iter().collect();
    let c = members.len();
    let pos = members.iter().position(|&v| v == voter).expect("voter is in its class");

    if rule.is_anonymous() {
        // Outcomes depend on the coalition size only.
        let mut outcomes = Vec::with_capacity(c + 1);
        for k in 0..=c {
            let set: VoterSet = members.iter().copied().take(k).collect();
            outcomes.push(rule.evaluate(&profile.switch_votes(&set, l)?)?);
        }
        let incentive = outcomes[1..].iter().any(|&o| t.prefers(o, base));
        let bad = outcomes[1..].iter().any(|&o| t.prefers(base, o));
        return Ok(incentive && !bad);
    }

    if c > SUBSET_LIMIT {
        return Err(Error::CoalitionTooLarge { size: c, limit: SUBSET_LIMIT });
    }
    let outcomes: Vec<Alternative> = (0..1u32 << c)
        .map(|mask| {
            let set: VoterSet = (0..c).filter(|q| mask & (1 << q) != 0).map(|q| members[q]).collect();
            rule.evaluate(&profile.switch_votes(&set, l)?)
        })
        .collect::<Result<_>>()?;
    let incentivized: Vec<bool> = (0..c)
        .map(|q| outcomes.iter().enumerate().any(|(mask, &o)| mask & (1 << q) != 0 && t.prefers(o, base)))
        .collect();
    if !incentivized[pos] {
        return Ok(false);
    }
    let unsafe_vote = outcomes.iter().enumerate().any(|(mask, &o)| {
        mask & (1 << pos) != 0 && (0..c).all(|q| mask & (1 << q) == 0 || incentivized[q]) && t.prefers(base, o)
    });
    Ok(!unsafe_vote)
}
