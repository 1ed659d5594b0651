// SPDX-License-Identifier: Apache-2.0

//! Outcome tables for one like-minded type considering one strategic order.
//!
//! A [`Situation`] evaluates the rule once for every coalition of the type
//! that could switch: one entry per coalition size for anonymous rules, one
//! per subset otherwise. Every strategic question about that (type, order)
//! pair is then answered from the table.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::profile::{Alternative, LinearOrder, Profile, VoterSet};
use crate::rules::Rule;

/// Largest type class the subset enumeration accepts.
pub const SUBSET_LIMIT: usize = 16;

/// How coalitions are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Sizes for anonymous rules, subsets otherwise.
    #[default]
    Auto,
    /// One canonical coalition per size; needs an anonymous rule.
    Sizes,
    /// Every subset of the type class.
    Subsets,
}

/// A coalition of the type class, either a canonical set of that size or an
/// explicit bit mask over class positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Coalition {
    Size(usize),
    Mask(u32),
}

#[derive(Clone, Debug)]
enum Outcomes {
    Sizes(Vec<Alternative>),
    Masks(Vec<Alternative>),
}

#[derive(Clone, Debug)]
pub(crate) struct Situation {
    pub type_order: LinearOrder,
    pub strategic: LinearOrder,
    /// The type class, ascending.
    pub members: Vec<usize>,
    pub base: Alternative,
    outcomes: Outcomes,
    incentivized: Vec<bool>,
}

/// Internal verdict, in class positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Verdict {
    Safe,
    Unsafe { bad: Coalition, pair: Option<Pair> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Pair {
    Overshoot { good: Coalition, bad: Coalition },
    Undershoot { good: Coalition, bad: Coalition },
}

impl Situation {
    /// Callers have validated the profile against the rule.
    pub fn build(
        rule: &Rule,
        profile: &Profile,
        type_order: &LinearOrder,
        strategic: &LinearOrder,
        mode: SearchMode,
    ) -> Result<Situation> {
        if profile.domain().len() < 3 {
            return Err(Error::TooFewAlternatives(profile.domain().len()));
        }
        if strategic.len() != profile.domain().len() {
            return Err(Error::DomainMismatch { expected: profile.domain().len(), got: strategic.len() });
        }
        if type_order == strategic {
            return Err(Error::SameOrder);
        }
        let class = profile.voters_of_type(type_order)?;
        if class.is_empty() {
            return Err(Error::TypeAbsent);
        }
        let members: Vec<usize> = class.iter().collect();
        let base = rule.winner(profile);
        let sizes = match mode {
            SearchMode::Auto => rule.is_anonymous(),
            SearchMode::Sizes if !rule.is_anonymous() => return Err(Error::NonAnonymous),
            SearchMode::Sizes => true,
            SearchMode::Subsets => false,
        };
        let outcomes = if sizes {
            Outcomes::Sizes(size_outcomes(rule, profile, type_order, strategic, &members))
        } else {
            if members.len() > SUBSET_LIMIT {
                return Err(Error::CoalitionTooLarge { size: members.len(), limit: SUBSET_LIMIT });
            }
            Outcomes::Masks(mask_outcomes(rule, profile, strategic, &members))
        };
        let mut sit = Situation {
            type_order: *type_order,
            strategic: *strategic,
            members,
            base,
            outcomes,
            incentivized: Vec::new(),
        };
        sit.incentivized = sit.compute_incentivized();
        Ok(sit)
    }

    pub fn class_size(&self) -> usize {
        self.members.len()
    }

    pub fn position(&self, voter: usize) -> Option<usize> {
        self.members.binary_search(&voter).ok()
    }

    pub fn outcome(&self, c: Coalition) -> Alternative {
        match (&self.outcomes, c) {
            (Outcomes::Sizes(o), Coalition::Size(k)) => o[k],
            (Outcomes::Masks(o), Coalition::Mask(mask)) => o[mask as usize],
            _ => unreachable!("coalition kind matches the table"),
        }
    }

    /// The full class switching.
    pub fn everyone(&self) -> Coalition {
        match self.outcomes {
            Outcomes::Sizes(_) => Coalition::Size(self.class_size()),
            Outcomes::Masks(_) => Coalition::Mask(full_mask(self.class_size())),
        }
    }

    /// `{pos}` alone.
    pub fn singleton(&self, pos: usize) -> Coalition {
        match self.outcomes {
            Outcomes::Sizes(_) => Coalition::Size(1),
            Outcomes::Masks(_) => Coalition::Mask(1 << pos),
        }
    }

    pub fn size_outcomes(&self) -> Option<&[Alternative]> {
        match &self.outcomes {
            Outcomes::Sizes(o) => Some(o),
            Outcomes::Masks(_) => None,
        }
    }

    pub fn improves(&self, a: Alternative) -> bool {
        self.type_order.prefers(a, self.base)
    }

    pub fn worsens(&self, a: Alternative) -> bool {
        self.type_order.prefers(self.base, a)
    }

    /// Non-empty coalitions containing class position `pos`, ascending by
    /// size and then lexicographically by members.
    pub fn coalitions_with(&self, pos: usize) -> Vec<Coalition> {
        match self.outcomes {
            Outcomes::Sizes(_) => (1..=self.class_size()).map(Coalition::Size).collect(),
            Outcomes::Masks(_) => canonical_masks(self.class_size())
                .into_iter()
                .filter(|m| m & (1 << pos) != 0)
                .map(Coalition::Mask)
                .collect(),
        }
    }

    /// Proper subsets of the class, the empty one included, canonical order.
    pub fn proper_subsets(&self) -> Vec<Coalition> {
        let c = self.class_size();
        match self.outcomes {
            Outcomes::Sizes(_) => (0..c).map(Coalition::Size).collect(),
            Outcomes::Masks(_) => {
                let mut all = alloc::vec![0u32];
                all.extend(canonical_masks(c).into_iter().filter(|&m| m != full_mask(c)));
                all.into_iter().map(Coalition::Mask).collect()
            }
        }
    }

    /// Smallest coalition containing `pos` whose switch improves the outcome.
    pub fn incentive(&self, pos: usize) -> Option<Coalition> {
        self.coalitions_with(pos).into_iter().find(|&c| self.improves(self.outcome(c)))
    }

    fn all_incentivized(&self, c: Coalition) -> bool {
        match c {
            // Anonymity makes incentive identical across the class.
            Coalition::Size(_) => self.incentivized.iter().all(|&b| b),
            Coalition::Mask(mask) => (0..self.class_size()).all(|q| mask & (1 << q) == 0 || self.incentivized[q]),
        }
    }

    fn is_bad(&self, c: Coalition) -> bool {
        self.worsens(self.outcome(c)) && self.all_incentivized(c)
    }

    pub fn classify(&self, pos: usize) -> Result<Verdict> {
        if !self.incentivized[pos] {
            return Err(Error::NoIncentive);
        }
        let with = self.coalitions_with(pos);
        let bads: Vec<Coalition> = with.iter().copied().filter(|&c| self.is_bad(c)).collect();
        let Some(&first_bad) = bads.first() else {
            return Ok(Verdict::Safe);
        };
        let goods: Vec<Coalition> = with.iter().copied().filter(|&c| self.improves(self.outcome(c))).collect();
        let nested = |inner: Coalition, outer: Coalition| proper_subset(inner, outer);
        let overshoot = bads
            .iter()
            .find_map(|&bad| goods.iter().find(|&&good| nested(good, bad)).map(|&good| Pair::Overshoot { good, bad }));
        let pair = overshoot.or_else(|| {
            bads.iter().find_map(|&bad| {
                goods.iter().find(|&&good| nested(bad, good)).map(|&good| Pair::Undershoot { good, bad })
            })
        });
        Ok(Verdict::Unsafe { bad: first_bad, pair })
    }

    /// Proper subsets whose switch leaves the type strictly worse off than
    /// the whole class switching.
    pub fn inferior(&self) -> Vec<Coalition> {
        let full = self.outcome(self.everyone());
        self.proper_subsets().into_iter().filter(|&c| self.type_order.prefers(full, self.outcome(c))).collect()
    }

    /// Voter indices of `c`. Size coalitions are the canonical set: `forced`
    /// (if given) plus the lowest-indexed other members.
    pub fn to_set(&self, c: Coalition, forced: Option<usize>) -> VoterSet {
        match c {
            Coalition::Mask(mask) => {
                self.members.iter().enumerate().filter(|(q, _)| mask & (1 << q) != 0).map(|(_, &v)| v).collect()
            }
            Coalition::Size(k) => match forced {
                Some(pos) if k > 0 => {
                    let forced_voter = self.members[pos];
                    let others = self.members.iter().copied().filter(|&v| v != forced_voter).take(k - 1);
                    core::iter::once(forced_voter).chain(others).collect()
                }
                _ => self.members.iter().copied().take(k).collect(),
            },
        }
    }

    fn compute_incentivized(&self) -> Vec<bool> {
        let c = self.class_size();
        match &self.outcomes {
            Outcomes::Sizes(o) => {
                let any = o[1..].iter().any(|&a| self.improves(a));
                alloc::vec![any; c]
            }
            Outcomes::Masks(o) => {
                let mut flags = alloc::vec![false; c];
                for (mask, &a) in o.iter().enumerate() {
                    if self.improves(a) {
                        for (q, flag) in flags.iter_mut().enumerate() {
                            *flag |= mask & (1 << q) != 0;
                        }
                    }
                }
                flags
            }
        }
    }
}

pub(crate) fn coalition_len(c: Coalition) -> usize {
    match c {
        Coalition::Size(k) => k,
        Coalition::Mask(m) => m.count_ones() as usize,
    }
}

fn proper_subset(inner: Coalition, outer: Coalition) -> bool {
    match (inner, outer) {
        // Canonical sets sharing a forced member are nested by size.
        (Coalition::Size(a), Coalition::Size(b)) => a < b,
        (Coalition::Mask(a), Coalition::Mask(b)) => a & !b == 0 && a != b,
        _ => false,
    }
}

fn full_mask(c: usize) -> u32 {
    if c == 32 {
        u32::MAX
    } else {
        (1u32 << c) - 1
    }
}

/// Non-empty masks over `c` positions, by size and then lexicographically by
/// the sorted positions they contain.
pub(crate) fn canonical_masks(c: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..=full_mask(c)).collect();
    masks.sort_by(|&a, &b| canonical_mask_cmp(a, b));
    masks
}

pub(crate) fn canonical_mask_cmp(a: u32, b: u32) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        if a == b {
            return Ordering::Equal;
        }
        // The mask holding the lowest differing position sorts first.
        let low = (a ^ b).trailing_zeros();
        if a & (1 << low) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

fn size_outcomes(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    strategic: &LinearOrder,
    members: &[usize],
) -> Vec<Alternative> {
    match rule {
        Rule::Scoring(s) => {
            let mut totals = s.totals(profile);
            let mut out = Vec::with_capacity(members.len() + 1);
            out.push(s.winner_of_totals(&totals));
            for _ in members {
                s.add_ballots(&mut totals, type_order, -1);
                s.add_ballots(&mut totals, strategic, 1);
                out.push(s.winner_of_totals(&totals));
            }
            out
        }
        Rule::Table(_) => (0..=members.len())
            .map(|k| {
                let set: VoterSet = members.iter().copied().take(k).collect();
                rule.winner(&profile.replace_votes(&set, strategic).expect("members are voters"))
            })
            .collect(),
    }
}

fn mask_outcomes(rule: &Rule, profile: &Profile, strategic: &LinearOrder, members: &[usize]) -> Vec<Alternative> {
    let count = 1usize << members.len();
    match rule {
        Rule::Table(t) => {
            let space = t.space();
            let base = space.index_of(profile) as i64;
            let target = strategic.lex_index() as i64;
            let deltas: Vec<i64> = members
                .iter()
                .map(|&v| (target - profile.order(v).lex_index() as i64) * space.place(v) as i64)
                .collect();
            let mut index = alloc::vec![0i64; count];
            index[0] = base;
            let mut out = Vec::with_capacity(count);
            out.push(t.lookup(base as usize));
            for mask in 1..count {
                let low = mask.trailing_zeros() as usize;
                index[mask] = index[mask & (mask - 1)] + deltas[low];
                out.push(t.lookup(index[mask] as usize));
            }
            out
        }
        Rule::Scoring(_) => (0..count)
            .map(|mask| {
                let set: VoterSet =
                    members.iter().enumerate().filter(|(q, _)| mask & (1 << q) != 0).map(|(_, &v)| v).collect();
                rule.winner(&profile.replace_votes(&set, strategic).expect("members are voters"))
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_mask_order() {
        let masks = canonical_masks(3);
        // {0} {1} {2} {0,1} {0,2} {1,2} {0,1,2}
        assert_eq!(masks, alloc::vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]);
        // {0,3} sorts before {1,2} even though 9 > 6.
        assert_eq!(canonical_mask_cmp(0b1001, 0b0110), Ordering::Less);
    }
}
