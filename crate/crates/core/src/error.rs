// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Everything that can go wrong while building or analysing profiles and rules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain must have between 1 and 26 alternatives, got {0}")]
    DomainSize(usize),
    #[error("invalid alternative label {0:?}")]
    InvalidLabel(char),
    #[error("duplicate alternative label {0:?}")]
    DuplicateLabel(char),
    #[error("not a linear order: {0}")]
    InvalidOrder(&'static str),
    #[error("domain mismatch: expected {expected} alternatives, got {got}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("voter count mismatch: rule is defined for {expected} voters, profile has {got}")]
    VoterCountMismatch { expected: usize, got: usize },
    #[error("a profile needs at least one voter")]
    EmptyProfile,
    #[error("duplicate type {0} in profile")]
    DuplicateType(alloc::string::String),
    #[error("voter {0} out of range")]
    VoterOutOfRange(usize),
    #[error("voter set mixes several types")]
    MixedTypes,
    #[error("strategic order equals the voters' sincere order")]
    SameOrder,
    #[error("strategic analysis needs at least 3 alternatives, got {0}")]
    TooFewAlternatives(usize),
    #[error("invalid score vector: {0}")]
    InvalidScores(&'static str),
    #[error("table must hold {expected} entries, got {got}")]
    TableSize { expected: usize, got: usize },
    #[error("table would need more than {limit} entries")]
    TableTooLarge { limit: usize },
    #[error("invalid voter partition: {0}")]
    InvalidPartition(&'static str),
    #[error("rule is antagonistic: it elects the removed alternative at profile index {profile_index}")]
    Antagonism { profile_index: usize },
    #[error("no table met the constraints after {attempts} attempts")]
    RejectionExhausted { attempts: u32 },
    #[error("search space of {needed} profiles exceeds budget {budget} and no analytic shortcut applies")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("voter has no incentive to cast this strategic vote")]
    NoIncentive,
    #[error("size-based search needs an anonymous rule")]
    NonAnonymous,
    #[error("type class of {size} voters is too large for subset enumeration (limit {limit})")]
    CoalitionTooLarge { size: usize, limit: usize },
    #[error("type is not present in the profile")]
    TypeAbsent,
    #[error("requested {requested} switches but only {available} voters hold the type")]
    TooManySwitches { requested: usize, available: usize },
    #[error("scores sum to zero")]
    ZeroTotal,
    #[error("barycentric embedding needs non-negative scores for exactly 3 alternatives")]
    NotEmbeddable,
}

pub type Result<T> = core::result::Result<T, Error>;
