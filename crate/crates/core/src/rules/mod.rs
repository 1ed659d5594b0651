// SPDX-License-Identifier: Apache-2.0

//! Social choice rules: positional scoring rules with a fixed tie-break
//! order, explicit tables over small domains, rule predicates, and rules
//! derived from other rules.

mod derive;
mod predicates;
mod sample;
mod scoring;
mod table;

pub use derive::{is_proper, subrule_minus, two_voter_reduction};
pub use predicates::{check_predicates, RulePredicateReport};
pub use sample::{random_table_rule, SampledRule, TableConstraints};
pub use scoring::{Score, Scores, ScoringRule};
pub use table::{ProfileSpace, TableRule, DEFAULT_TABLE_LIMIT};

use crate::error::{Error, Result};
use crate::profile::{Alternative, Domain, Profile};

/// A social choice rule: a total map from profiles to alternatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Scoring(ScoringRule),
    Table(TableRule),
}

impl Rule {
    pub fn domain(&self) -> &Domain {
        match self {
            Rule::Scoring(r) => r.domain(),
            Rule::Table(r) => r.domain(),
        }
    }

    /// Number of voters the rule is defined for; scoring rules accept any.
    pub fn fixed_voters(&self) -> Option<usize> {
        match self {
            Rule::Scoring(_) => None,
            Rule::Table(r) => Some(r.voters()),
        }
    }

    /// Anonymous by construction. Tables report `false` here even when their
    /// entries happen to be symmetric; [`check_predicates`] tells the truth.
    pub fn is_anonymous(&self) -> bool {
        matches!(self, Rule::Scoring(_))
    }

    pub fn evaluate(&self, profile: &Profile) -> Result<Alternative> {
        self.check_profile(profile)?;
        Ok(self.winner(profile))
    }

    pub(crate) fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.domain() != self.domain() {
            return Err(Error::DomainMismatch { expected: self.domain().len(), got: profile.domain().len() });
        }
        self.check_voters(profile.len())
    }

    pub(crate) fn check_voters(&self, voters: usize) -> Result<()> {
        match self.fixed_voters() {
            Some(n) if n != voters => Err(Error::VoterCountMismatch { expected: n, got: voters }),
            _ => Ok(()),
        }
    }

    /// Evaluation without the domain checks; callers validated the profile.
    pub(crate) fn winner(&self, profile: &Profile) -> Alternative {
        match self {
            Rule::Scoring(r) => r.winner_of_totals(&r.totals(profile)),
            Rule::Table(r) => r.lookup(r.space().index_of(profile)),
        }
    }
}

impl From<ScoringRule> for Rule {
    fn from(r: ScoringRule) -> Self {
        Rule::Scoring(r)
    }
}

impl From<TableRule> for Rule {
    fn from(r: TableRule) -> Self {
        Rule::Table(r)
    }
}
