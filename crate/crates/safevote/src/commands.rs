// SPDX-License-Identifier: Apache-2.0

//! Subcommand bodies. Each returns the rendered output and an exit status;
//! the binary only parses arguments and writes the result.

use std::path::Path;
use std::time::Instant;

use safevote_core::geometry::FigureSpec;
use safevote_core::rules::{ProfileSpace, DEFAULT_TABLE_LIMIT};
use safevote_core::strategy::{
    classify_safety, find_escapes, has_incentive, threshold_scan, SafetyVerdict, UnsafeKind,
};
use safevote_core::{Error as CoreError, LinearOrder, Profile, Rule, VoterSet};

use crate::campaign::{run_campaign, CampaignConfig};
use crate::error::Result;
use crate::fixtures::{self, Fixture};
use crate::format::{fingerprint, label, usage, RuleConfig};
use crate::report::{
    verdict_kind, AnalyzeReport, CertificateJson, SafetyReport, ScoreJson, StrategicJson, ThresholdJson, TypeJson,
};
use crate::svg::render_svg;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub status: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, status: EXIT_OK }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn text_or_json(format: Format, allowed: &str) -> Result<bool> {
    match format {
        Format::Text => Ok(false),
        Format::Json => Ok(true),
        Format::Svg => Err(usage(format!("--format svg is not available here; use {allowed}"))),
    }
}

pub fn analyze_report(rule: &Rule, profile: &Profile) -> Result<AnalyzeReport> {
    let d = rule.domain();
    let winner = rule.evaluate(profile)?;
    let scores = match rule {
        Rule::Scoring(s) => {
            let sc = s.scores(profile)?;
            Some(
                d.alternatives()
                    .map(|a| ScoreJson { alternative: label(d, a), score: sc.get(a).to_string() })
                    .collect(),
            )
        }
        Rule::Table(_) => None,
    };
    let mut gs_manipulators = Vec::new();
    for voter in 0..profile.len() {
        let own = profile.order(voter);
        for l in d.orders().into_iter().filter(|l| l != own) {
            let after = rule.evaluate(&profile.switch_votes(&VoterSet::single(voter), &l)?)?;
            if own.prefers(after, winner) {
                gs_manipulators.push(voter + 1);
                break;
            }
        }
    }
    let mut types = Vec::new();
    for (t, class) in profile.groups() {
        let voter = class.iter().next().expect("classes are non-empty");
        let mut incentives = Vec::new();
        for l in d.orders().into_iter().filter(|l| l != t) {
            if let Some(w) = has_incentive(rule, profile, voter, &l)? {
                let v = classify_safety(rule, profile, voter, &l)?;
                incentives.push(StrategicJson {
                    strategic_order: d.format_order(&l),
                    coalition_size: w.coalition.len(),
                    outcome_after: label(d, w.outcome_after),
                    safety: verdict_kind(&v),
                });
            }
        }
        types.push(TypeJson { type_order: d.format_order(t), voters: class.one_based(), incentives });
    }
    let fp = fingerprint(rule);
    let escapes = find_escapes(rule, profile)?.iter().map(|c| CertificateJson::new(c, rule, &fp)).collect();
    Ok(AnalyzeReport {
        rule_fingerprint: fp,
        voters: profile.len(),
        winner: label(d, winner),
        scores,
        gs_manipulators,
        types,
        escapes,
    })
}

pub fn analyze(rule: &Rule, profile: &Profile, format: Format) -> Result<Output> {
    let as_json = text_or_json(format, "text or json")?;
    let report = analyze_report(rule, profile)?;
    Ok(Output::ok(if as_json { json(&report) } else { report.to_text() }))
}

/// Safety of `strategic` for the type `type_order`, judged from the first
/// voter of the type.
pub fn safety_report(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    strategic: &LinearOrder,
) -> Result<SafetyReport> {
    let d = rule.domain();
    let class = profile.voters_of_type(type_order)?;
    let voter = class.iter().next().ok_or(CoreError::TypeAbsent)?;
    let sincere = rule.evaluate(profile)?;
    let incentive = has_incentive(rule, profile, voter, strategic)?;
    let thresholds = if rule.is_anonymous() {
        Some(
            threshold_scan(rule, profile, type_order, strategic)?
                .into_iter()
                .enumerate()
                .map(|(k, w)| ThresholdJson { switched: k, winner: label(d, w) })
                .collect(),
        )
    } else {
        None
    };
    let mut report = SafetyReport {
        rule_fingerprint: fingerprint(rule),
        type_order: d.format_order(type_order),
        strategic_order: d.format_order(strategic),
        voter: voter + 1,
        class: class.one_based(),
        sincere_winner: label(d, sincere),
        status: "no-incentive",
        kind: None,
        incentive: incentive.as_ref().map(|w| w.coalition.one_based()),
        bad: None,
        pair_good: None,
        pair_bad: None,
        thresholds,
    };
    if incentive.is_some() {
        let v = classify_safety(rule, profile, voter, strategic)?;
        match &v {
            SafetyVerdict::Safe => report.status = "safe",
            SafetyVerdict::Unsafe { bad, kind } => {
                report.status = "unsafe";
                report.kind = Some(verdict_kind(&v));
                report.bad = Some(bad.one_based());
                if let UnsafeKind::Overshoot { good, bad } | UnsafeKind::Undershoot { good, bad } = kind {
                    report.pair_good = Some(good.one_based());
                    report.pair_bad = Some(bad.one_based());
                }
            }
        }
    }
    Ok(report)
}

pub fn safety(
    rule: &Rule,
    profile: &Profile,
    type_order: &LinearOrder,
    strategic: &LinearOrder,
    format: Format,
) -> Result<Output> {
    let as_json = text_or_json(format, "text or json")?;
    if type_order == strategic {
        return Err(usage("the strategic order must differ from the type"));
    }
    let report = safety_report(rule, profile, type_order, strategic)?;
    Ok(Output::ok(if as_json { json(&report) } else { report.to_text() }))
}

/// Runs a campaign. Exit status 1 if any check failed, otherwise 3 if any
/// was inconclusive. Only the text form carries the wall time.
pub fn verify(config: &CampaignConfig, format: Format) -> Result<Output> {
    let as_json = text_or_json(format, "text or json")?;
    if config.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if config.m < 3 {
        return Err(usage("--m must be at least 3"));
    }
    if config.budget == 0 {
        return Err(usage("--budget must be positive"));
    }
    // Rejects tables too large to build before any work starts.
    let space = ProfileSpace::new(safevote_core::Domain::standard(config.m)?, config.n)?;
    if space.size().is_none_or(|s| s > DEFAULT_TABLE_LIMIT as u64) {
        return Err(CoreError::TableTooLarge { limit: DEFAULT_TABLE_LIMIT }.into());
    }
    let start = Instant::now();
    let report = run_campaign(config);
    let status = if report.failures() > 0 {
        EXIT_FAILURE
    } else if report.inconclusive() > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    let body = if as_json {
        json(&report)
    } else {
        format!("{}wall time: {:.2} s\n", report.to_text(), start.elapsed().as_secs_f64())
    };
    Ok(Output { body, status })
}

pub fn figure_spec(config: &RuleConfig, profile: &Profile) -> Result<FigureSpec> {
    let Rule::Scoring(rule) = &config.rule else {
        return Err(usage("figures need a scoring rule"));
    };
    let fig = config.figure.clone().unwrap_or_default();
    Ok(FigureSpec::new(rule.clone(), profile, &fig.arrows, fig.width, fig.height)?)
}

pub fn figure(config: &RuleConfig, profile: &Profile, format: Format) -> Result<Output> {
    if format != Format::Svg {
        return Err(usage("figure only writes svg"));
    }
    Ok(Output::ok(render_svg(&figure_spec(config, profile)?)?))
}

/// Checks the bundled fixtures, or those under `dir`.
pub fn examples(dir: Option<&Path>, format: Format) -> Result<Output> {
    let as_json = text_or_json(format, "text or json")?;
    let set: Vec<Fixture> = match dir {
        Some(d) => fixtures::load_dir(d)?,
        None => fixtures::bundled(),
    };
    let checks = fixtures::run(&set);
    let status = if checks.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_FAILURE };
    Ok(Output { body: if as_json { json(&checks) } else { fixtures::to_text(&checks) }, status })
}
