// SPDX-License-Identifier: Apache-2.0

//! Verification campaigns over randomly sampled table rules.
//!
//! Each sampled rule is onto and non-dictatorial, so it must admit a
//! single-voter manipulation, a safe strategic vote, and a safe strategic
//! vote cast by a singly pivotal voter. A campaign searches for all three,
//! also lifts the safe vote to a pivotal one, and re-checks every
//! certificate.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use safevote_core::rules::{random_table_rule, TableConstraints};
use safevote_core::strategy::{
    lift_to_pivotal, verify_gs, verify_safe_pivotal, verify_safely_manipulable, Certificate, Claim, Search,
};
use safevote_core::Rule;

use crate::format::fingerprint;
use crate::report::CertificateJson;

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const DEFAULT_MAX_ATTEMPTS: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub n: usize,
    pub m: usize,
    pub samples: u64,
    pub seed: u64,
    /// Profile cap per search.
    pub budget: u64,
    /// Tables drawn per sample before giving up.
    pub max_attempts: u32,
}

impl CampaignConfig {
    /// Default budget and attempt cap.
    pub fn new(n: usize, m: usize, samples: u64, seed: u64) -> Self {
        CampaignConfig { n, m, samples, seed, budget: DEFAULT_BUDGET, max_attempts: DEFAULT_MAX_ATTEMPTS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Found,
    Failure,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub status: Status,
    pub note: Option<String>,
    pub certificate: Option<CertificateJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleResult {
    pub index: u64,
    /// Seed that regenerates this rule with the same `n`, `m` and attempts.
    pub seed: u64,
    pub attempts: Option<u32>,
    pub rule_fingerprint: Option<String>,
    pub gs: CheckResult,
    pub safely_manipulable: CheckResult,
    pub safe_pivotal: CheckResult,
    pub lifted: CheckResult,
}

impl RuleResult {
    fn checks(&self) -> [(&'static str, &CheckResult); 4] {
        [
            ("gs", &self.gs),
            ("safely_manipulable", &self.safely_manipulable),
            ("safe_pivotal", &self.safe_pivotal),
            ("lifted", &self.lifted),
        ]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub found: u64,
    pub failures: u64,
    pub inconclusive: u64,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Found => self.found += 1,
            Status::Failure => self.failures += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub gs: Tally,
    pub safely_manipulable: Tally,
    pub safe_pivotal: Tally,
    pub lifted: Tally,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub n: usize,
    pub m: usize,
    pub samples: u64,
    pub seed: u64,
    pub budget: u64,
    pub summary: Summary,
    pub rules: Vec<RuleResult>,
}

impl CampaignReport {
    pub fn failures(&self) -> u64 {
        let s = &self.summary;
        s.gs.failures + s.safely_manipulable.failures + s.safe_pivotal.failures + s.lifted.failures
    }

    pub fn inconclusive(&self) -> u64 {
        let s = &self.summary;
        s.gs.inconclusive + s.safely_manipulable.inconclusive + s.safe_pivotal.inconclusive + s.lifted.inconclusive
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} sampled rules, n={}, m={}, seed {}, budget {}\n",
            self.samples, self.n, self.m, self.seed, self.budget
        );
        let s = &self.summary;
        for (name, t) in [
            ("gs-manipulable", s.gs),
            ("safely-manipulable", s.safely_manipulable),
            ("safe-pivotal", s.safe_pivotal),
            ("lifted safe-pivotal", s.lifted),
        ] {
            out += &format!(
                "{name:<20} {:>6} found {:>4} failures {:>4} inconclusive\n",
                t.found, t.failures, t.inconclusive
            );
        }
        for r in &self.rules {
            for (name, c) in r.checks() {
                if c.status != Status::Found {
                    out += &format!(
                        "rule {} (seed {}): {name} {:?}: {}\n",
                        r.index,
                        r.seed,
                        c.status,
                        c.note.as_deref().unwrap_or("")
                    );
                }
            }
        }
        out
    }
}

/// Seeds for each sample, drawn in order from one stream seeded by
/// `master`.
pub fn rule_seeds(master: u64, samples: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..samples).map(|_| rng.next_u64()).collect()
}

pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    let seeds = rule_seeds(config.seed, config.samples);
    let rules: Vec<RuleResult> =
        seeds.par_iter().enumerate().map(|(i, &seed)| check_rule(config, i as u64, seed)).collect();
    let mut summary = Summary::default();
    for r in &rules {
        summary.gs.add(r.gs.status);
        summary.safely_manipulable.add(r.safely_manipulable.status);
        summary.safe_pivotal.add(r.safe_pivotal.status);
        summary.lifted.add(r.lifted.status);
    }
    CampaignReport {
        n: config.n,
        m: config.m,
        samples: config.samples,
        seed: config.seed,
        budget: config.budget,
        summary,
        rules,
    }
}

fn check(status: Status, note: impl Into<String>) -> CheckResult {
    CheckResult { status, note: Some(note.into()), certificate: None }
}

fn certified(c: &Certificate, rule: &Rule, fp: &str, claim: Claim) -> CheckResult {
    let json = Some(CertificateJson::new(c, rule, fp));
    if c.verified && c.claim == claim {
        CheckResult { status: Status::Found, note: None, certificate: json }
    } else {
        CheckResult { status: Status::Failure, note: Some("certificate does not re-check".into()), certificate: json }
    }
}

fn from_search(
    search: Result<Search<Certificate>, safevote_core::Error>,
    rule: &Rule,
    fp: &str,
    claim: Claim,
) -> (CheckResult, Option<Certificate>) {
    match search {
        Ok(Search::Found(c)) => (certified(&c, rule, fp, claim), Some(c)),
        Ok(Search::Exhausted { profiles }) => {
            (check(Status::Failure, format!("no certificate in all {profiles} profiles")), None)
        }
        Ok(Search::Inconclusive { scanned, .. }) => {
            (check(Status::Inconclusive, format!("budget exhausted after {scanned} profiles")), None)
        }
        Err(e) => (check(Status::Failure, e.to_string()), None),
    }
}

/// Samples one rule and runs every search on it.
pub fn check_rule(config: &CampaignConfig, index: u64, seed: u64) -> RuleResult {
    let constraints = TableConstraints::default();
    let sampled = match random_table_rule(config.n, config.m, seed, constraints, config.max_attempts) {
        Ok(s) => s,
        Err(e) => {
            let c = check(Status::Inconclusive, format!("sampling: {e}"));
            return RuleResult {
                index,
                seed,
                attempts: None,
                rule_fingerprint: None,
                gs: c.clone(),
                safely_manipulable: c.clone(),
                safe_pivotal: c.clone(),
                lifted: c,
            };
        }
    };
    let rule = Rule::Table(sampled.rule);
    let fp = fingerprint(&rule);
    let (n, budget) = (config.n, config.budget);

    let (gs, _) = from_search(verify_gs(&rule, n, budget), &rule, &fp, Claim::GsManipulable);
    let (safe, safe_cert) =
        from_search(verify_safely_manipulable(&rule, n, budget), &rule, &fp, Claim::SafelyManipulable);
    let (pivotal, _) = from_search(verify_safe_pivotal(&rule, n, budget), &rule, &fp, Claim::SafePivotal);
    let lifted = match &safe_cert {
        Some(c) => match lift_to_pivotal(&rule, c) {
            Ok(l) => certified(&l, &rule, &fp, Claim::SafePivotal),
            Err(e) => check(Status::Failure, format!("lift: {e}")),
        },
        None => check(safe.status, "no safe certificate to lift"),
    };
    RuleResult {
        index,
        seed,
        attempts: Some(sampled.attempts),
        rule_fingerprint: Some(fp),
        gs,
        safely_manipulable: safe,
        safe_pivotal: pivotal,
        lifted,
    }
}
