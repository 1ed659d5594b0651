// SPDX-License-Identifier: Apache-2.0

//! Safe and unsafe strategic voting by like-minded coalitions.
//!
//! Profiles of strict linear orders, positional scoring rules and explicit
//! rule tables, incentive and safety analysis for groups of voters sharing
//! a sincere order, exhaustive searches yielding re-checkable certificates,
//! and the barycentric picture of three-alternative score vectors.
//!
//! Voter indices are 0-based throughout this crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod profile;
pub mod rules;
pub mod strategy;

pub use error::{Error, Result};
pub use profile::{group_prefers, Alternative, Domain, GroupPreference, LinearOrder, Profile, VoterSet};
pub use rules::{Rule, ScoringRule, TableRule};
