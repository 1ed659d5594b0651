// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::profile::{Alternative, Domain};
use crate::rules::{check_predicates, Rule, TableRule};

/// Constraints a sampled table must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableConstraints {
    pub onto: bool,
    pub non_dictatorial: bool,
}

impl Default for TableConstraints {
    fn default() -> Self {
        TableConstraints { onto: true, non_dictatorial: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledRule {
    pub rule: TableRule,
    /// Tables drawn, the accepted one included.
    pub attempts: u32,
}

/// Draws table entries uniformly at random until the table meets
/// `constraints`. The same seed always yields the same table.
pub fn random_table_rule(
    voters: usize,
    m: usize,
    seed: u64,
    constraints: TableConstraints,
    max_attempts: u32,
) -> Result<SampledRule> {
    let domain = Domain::standard(m)?;
    let len = TableRule::table_len(domain, voters, crate::rules::DEFAULT_TABLE_LIMIT)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let entries: Vec<Alternative> = (0..len).map(|_| Alternative::new(rng.gen_range(0..m))).collect();
        let rule = TableRule::new(domain, voters, entries)?;
        let report = check_predicates(&Rule::Table(rule.clone()), voters, len as u64)?;
        if (!constraints.onto || report.onto) && (!constraints.non_dictatorial || report.dictator.is_none()) {
            return Ok(SampledRule { rule, attempts: attempt });
        }
    }
    Err(Error::RejectionExhausted { attempts: max_attempts })
}
