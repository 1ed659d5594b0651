// SPDX-License-Identifier: Apache-2.0

//! Machine-readable report records.
//!
//! Field order is declaration order, so serializing the same record twice
//! yields the same bytes. Voter numbers are 1-based.

use serde::Serialize;

use safevote_core::strategy::{Certificate, SafetyVerdict, UnsafeKind};
use safevote_core::Rule;

use crate::format::{format_profile, label};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationJson {
    pub profile: String,
    pub switched: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub claim: &'static str,
    pub rule_fingerprint: String,
    pub profile: String,
    pub voter: usize,
    #[serde(rename = "type")]
    pub type_order: String,
    pub strategic_order: String,
    pub coalition: Vec<usize>,
    pub outcome_before: String,
    pub outcome_after: String,
    pub derived_from: Option<DerivationJson>,
    pub verified: bool,
}

impl CertificateJson {
    pub fn new(cert: &Certificate, rule: &Rule, fingerprint: &str) -> Self {
        let d = rule.domain();
        CertificateJson {
            claim: cert.claim.name(),
            rule_fingerprint: fingerprint.to_string(),
            profile: format_profile(&cert.profile),
            voter: cert.voter + 1,
            type_order: d.format_order(cert.type_order()),
            strategic_order: d.format_order(&cert.strategic_order),
            coalition: cert.coalition.one_based(),
            outcome_before: label(d, cert.outcome_before),
            outcome_after: label(d, cert.outcome_after),
            derived_from: cert
                .derived_from
                .as_ref()
                .map(|x| DerivationJson { profile: format_profile(&x.profile), switched: x.switched.one_based() }),
            verified: cert.verified,
        }
    }
}

/// `overshoot`, `undershoot`, `other` or `safe`.
pub fn verdict_kind(v: &SafetyVerdict) -> &'static str {
    match v {
        SafetyVerdict::Safe => "safe",
        SafetyVerdict::Unsafe { kind: UnsafeKind::Overshoot { .. }, .. } => "overshoot",
        SafetyVerdict::Unsafe { kind: UnsafeKind::Undershoot { .. }, .. } => "undershoot",
        SafetyVerdict::Unsafe { kind: UnsafeKind::Other, .. } => "other",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScoreJson {
    pub alternative: String,
    pub score: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategicJson {
    pub strategic_order: String,
    /// Size of the smallest improving coalition.
    pub coalition_size: usize,
    pub outcome_after: String,
    pub safety: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeJson {
    #[serde(rename = "type")]
    pub type_order: String,
    pub voters: Vec<usize>,
    pub incentives: Vec<StrategicJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub rule_fingerprint: String,
    pub voters: usize,
    pub winner: String,
    pub scores: Option<Vec<ScoreJson>>,
    pub gs_manipulators: Vec<usize>,
    pub types: Vec<TypeJson>,
    pub escapes: Vec<CertificateJson>,
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("winner: {}\n", self.winner);
        if let Some(scores) = &self.scores {
            let s: Vec<String> = scores.iter().map(|s| format!("{}={}", s.alternative, s.score)).collect();
            out += &format!("scores: {}\n", s.join(" "));
        }
        out += &format!("gs manipulators: {}\n", list(&self.gs_manipulators));
        for t in &self.types {
            out += &format!("type {} ({} voters)\n", t.type_order, t.voters.len());
            if t.incentives.is_empty() {
                out += "  no incentive\n";
            }
            for i in &t.incentives {
                out += &format!(
                    "  -> {}: {} switching elect {}, {}\n",
                    i.strategic_order, i.coalition_size, i.outcome_after, i.safety
                );
            }
        }
        out += &format!("escapes: {}\n", self.escapes.len());
        for e in &self.escapes {
            out += &format!("  type {} via {} (coalition {})\n", e.type_order, e.strategic_order, list(&e.coalition));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdJson {
    pub switched: usize,
    pub winner: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SafetyReport {
    pub rule_fingerprint: String,
    #[serde(rename = "type")]
    pub type_order: String,
    pub strategic_order: String,
    pub voter: usize,
    pub class: Vec<usize>,
    pub sincere_winner: String,
    /// `safe`, `unsafe` or `no-incentive`.
    pub status: &'static str,
    /// `overshoot`, `undershoot` or `other` when unsafe.
    pub kind: Option<&'static str>,
    pub incentive: Option<Vec<usize>>,
    pub bad: Option<Vec<usize>>,
    pub pair_good: Option<Vec<usize>>,
    pub pair_bad: Option<Vec<usize>>,
    pub thresholds: Option<Vec<ThresholdJson>>,
}

impl SafetyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "type {} voting {} (voter {}, {} voters of the type)\nsincere winner: {}\nstatus: {}",
            self.type_order,
            self.strategic_order,
            self.voter,
            self.class.len(),
            self.sincere_winner,
            self.status
        );
        if let Some(k) = self.kind {
            out += &format!(" ({k})");
        }
        out.push('\n');
        if let Some(i) = &self.incentive {
            out += &format!("smallest improving coalition: {}\n", list(i));
        }
        if let Some(b) = &self.bad {
            out += &format!("smallest harmful coalition: {}\n", list(b));
        }
        if let (Some(g), Some(b)) = (&self.pair_good, &self.pair_bad) {
            out += &format!("nested pair: improving {} / harmful {}\n", list(g), list(b));
        }
        if let Some(rows) = &self.thresholds {
            out += "switched  winner\n";
            for r in rows {
                out += &format!("{:>8}  {}\n", r.switched, r.winner);
            }
        }
        out
    }
}

pub(crate) fn list(v: &[usize]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}
