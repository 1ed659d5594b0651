// SPDX-License-Identifier: Apache-2.0

//! Text formats: profiles, rule configs and table entry files.
//!
//! All three are line based. `#` starts a comment, blank lines are ignored
//! and whitespace around `:` and `>` does not matter.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::Ratio;
use safevote_core::rules::{Score, ScoringRule, TableRule};
use safevote_core::{Alternative, Domain, LinearOrder, Profile, Rule};
use sha2::{Digest, Sha256};

use crate::error::{parse_error, read, Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn key_value(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    Some((k.trim(), v.trim()))
}

fn parse_labels(value: &str) -> std::result::Result<Domain, String> {
    let mut labels = Vec::new();
    for token in value.split_whitespace() {
        let mut chars = token.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => labels.push(c),
            _ => return Err(format!("alternative labels are single letters, got {token:?}")),
        }
    }
    Domain::from_labels(&labels).map_err(|e| e.to_string())
}

/// Parses a profile:
///
/// ```text
/// alternatives: A B C
/// 17: A > B > C
/// 15: A > C > B
/// ```
///
/// or, voter by voter, `voter 3: C > A > B` lines numbering voters `1..=n`.
/// Count lines expand into voters in the order given.
pub fn parse_profile(text: &str, source: &str) -> Result<Profile> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| parse_error(source, 1, "empty profile"))?;
    let domain = match key_value(header) {
        Some(("alternatives", v)) => parse_labels(v).map_err(|e| parse_error(source, first, e))?,
        _ => return Err(parse_error(source, first, "expected `alternatives: ...` first")),
    };

    let mut counts: Vec<(LinearOrder, usize)> = Vec::new();
    let mut voters: Vec<(usize, LinearOrder, usize)> = Vec::new();
    for (no, line) in lines {
        let (lhs, rhs) = key_value(line).ok_or_else(|| parse_error(source, no, "expected `<count>: <order>`"))?;
        let order = domain.parse_order(rhs).map_err(|e| parse_error(source, no, e.to_string()))?;
        if let Some(index) = lhs.strip_prefix("voter") {
            let index: usize = index
                .trim()
                .parse()
                .ok()
                .filter(|&i| i > 0)
                .ok_or_else(|| parse_error(source, no, format!("bad voter number {:?}", index.trim())))?;
            if !counts.is_empty() {
                return Err(parse_error(source, no, "count lines and voter lines cannot be mixed"));
            }
            if voters.iter().any(|v| v.0 == index) {
                return Err(parse_error(source, no, format!("voter {index} listed twice")));
            }
            voters.push((index, order, no));
        } else {
            let count: usize = lhs.parse().map_err(|_| parse_error(source, no, format!("bad count {lhs:?}")))?;
            if !voters.is_empty() {
                return Err(parse_error(source, no, "count lines and voter lines cannot be mixed"));
            }
            if counts.iter().any(|c| c.0 == order) {
                return Err(parse_error(source, no, format!("duplicate type {}", domain.compact_order(&order))));
            }
            counts.push((order, count));
        }
    }

    let end = text.lines().count().max(1);
    if !voters.is_empty() {
        voters.sort_by_key(|v| v.0);
        if let Some((i, v)) = voters.iter().enumerate().find(|(i, v)| v.0 != i + 1) {
            return Err(parse_error(source, v.2, format!("voter {} is missing", i + 1)));
        }
        let orders = voters.into_iter().map(|v| v.1).collect();
        return Profile::new(domain, orders).map_err(|e| parse_error(source, end, e.to_string()));
    }
    Profile::from_counts(domain, &counts).map_err(|e| parse_error(source, end, e.to_string()))
}

pub fn load_profile(path: &Path) -> Result<Profile> {
    parse_profile(&read(path)?, &path.display().to_string())
}

/// The text form of `profile`; [`parse_profile`] reads it back unchanged.
/// Count lines are used when every type occupies one contiguous run of
/// voters, voter lines otherwise.
pub fn format_profile(profile: &Profile) -> String {
    let domain = profile.domain();
    let mut out = String::from("alternatives:");
    for l in domain.labels() {
        let _ = write!(out, " {l}");
    }
    out.push('\n');
    let mut runs: Vec<(LinearOrder, usize)> = Vec::new();
    for o in profile.orders() {
        match runs.last_mut() {
            Some((last, c)) if last == o => *c += 1,
            _ => runs.push((*o, 1)),
        }
    }
    let distinct: BTreeSet<_> = runs.iter().map(|r| r.0).collect();
    if distinct.len() == runs.len() {
        for (o, c) in runs {
            let _ = writeln!(out, "{c}: {}", domain.format_order(&o));
        }
    } else {
        for (i, o) in profile.orders().iter().enumerate() {
            let _ = writeln!(out, "voter {}: {}", i + 1, domain.format_order(o));
        }
    }
    out
}

/// Figure settings carried by a rule config.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureConfig {
    /// `(type, strategic order, k_max)`
    pub arrows: Vec<(LinearOrder, LinearOrder, usize)>,
    pub width: u32,
    pub height: u32,
}

impl Default for FigureConfig {
    fn default() -> Self {
        FigureConfig { arrows: Vec::new(), width: 600, height: 540 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleConfig {
    pub rule: Rule,
    pub figure: Option<FigureConfig>,
}

/// Parses a rule config:
///
/// ```text
/// rule: scoring
/// scores: 2 1 0
/// tiebreak: B > A > C
/// ```
///
/// or `rule: table` with `n`, `m` and `entries: <path>`, the path relative
/// to `base_dir`. Scoring configs may add `alternatives: ...` to use labels
/// other than `A, B, C, ...`. `figure.trajectory: ABC -> ACB : 17` (one
/// line per arrow), `figure.width` and `figure.height` configure figures.
pub fn parse_rule_config(text: &str, source: &str, base_dir: &Path) -> Result<RuleConfig> {
    let mut fields: Vec<(&str, &str, usize)> = Vec::new();
    let mut arrows: Vec<(&str, usize)> = Vec::new();
    for (no, line) in content_lines(text) {
        let (k, v) = key_value(line).ok_or_else(|| parse_error(source, no, "expected `key: value`"))?;
        match k {
            "figure.trajectory" => arrows.push((v, no)),
            "rule" | "scores" | "tiebreak" | "alternatives" | "n" | "m" | "entries" | "figure.width"
            | "figure.height" => {
                if fields.iter().any(|f| f.0 == k) {
                    return Err(parse_error(source, no, format!("duplicate key {k:?}")));
                }
                fields.push((k, v, no));
            }
            _ => return Err(parse_error(source, no, format!("unknown key {k:?}"))),
        }
    }
    let end = text.lines().count().max(1);
    let get = |k: &str| fields.iter().find(|f| f.0 == k).map(|f| (f.1, f.2));
    let need = |k: &str| get(k).ok_or_else(|| parse_error(source, end, format!("missing key {k:?}")));
    let number = |k: &str| -> Result<Option<usize>> {
        get(k)
            .map(|(v, no)| v.parse::<usize>().map_err(|_| parse_error(source, no, format!("{k} must be a number"))))
            .transpose()
    };

    let (kind, kind_line) = need("rule")?;
    let rule = match kind {
        "scoring" => {
            let (scores, line) = need("scores")?;
            let weights = scores
                .split_whitespace()
                .map(|t| Ratio::<i64>::from_str(t).map_err(|_| parse_error(source, line, format!("bad score {t:?}"))))
                .collect::<Result<Vec<Score>>>()?;
            let domain = match get("alternatives") {
                Some((v, no)) => parse_labels(v).map_err(|e| parse_error(source, no, e))?,
                None => Domain::standard(weights.len()).map_err(|e| parse_error(source, line, e.to_string()))?,
            };
            let (tb, tb_line) = need("tiebreak")?;
            let tiebreak = domain.parse_order(tb).map_err(|e| parse_error(source, tb_line, e.to_string()))?;
            let rule =
                ScoringRule::new(domain, weights, tiebreak).map_err(|e| parse_error(source, line, e.to_string()))?;
            for k in ["n", "m", "entries"] {
                if let Some((_, no)) = get(k) {
                    return Err(parse_error(source, no, format!("{k:?} only applies to table rules")));
                }
            }
            Rule::Scoring(rule)
        }
        "table" => {
            let n = number("n")?.ok_or_else(|| parse_error(source, end, "missing key \"n\""))?;
            let (_, m_line) = need("m")?;
            let m = number("m")?.expect("present");
            let domain = Domain::standard(m).map_err(|e| parse_error(source, m_line, e.to_string()))?;
            let (entries, _) = need("entries")?;
            let path: PathBuf = base_dir.join(entries);
            let text = read(&path)?;
            let table = parse_table_entries(&text, &path.display().to_string(), domain, n)?;
            for k in ["scores", "tiebreak", "alternatives"] {
                if let Some((_, no)) = get(k) {
                    return Err(parse_error(source, no, format!("{k:?} only applies to scoring rules")));
                }
            }
            Rule::Table(table)
        }
        other => return Err(parse_error(source, kind_line, format!("unknown rule kind {other:?}"))),
    };

    let has_figure = !arrows.is_empty() || get("figure.width").is_some() || get("figure.height").is_some();
    let figure = if has_figure {
        let mut fig = FigureConfig::default();
        if let Some(w) = number("figure.width")? {
            fig.width = w as u32;
        }
        if let Some(h) = number("figure.height")? {
            fig.height = h as u32;
        }
        for (v, no) in arrows {
            fig.arrows.push(parse_arrow(rule.domain(), v).map_err(|e| parse_error(source, no, e))?);
        }
        Some(fig)
    } else {
        None
    };
    Ok(RuleConfig { rule, figure })
}

fn parse_arrow(domain: &Domain, value: &str) -> std::result::Result<(LinearOrder, LinearOrder, usize), String> {
    let (orders, k) = value.rsplit_once(':').ok_or("expected `<type> -> <order> : <k>`")?;
    let (from, to) = orders.split_once("->").ok_or("expected `<type> -> <order> : <k>`")?;
    let k = k.trim().parse().map_err(|_| format!("bad switch count {:?}", k.trim()))?;
    let from = domain.parse_order(from.trim()).map_err(|e| e.to_string())?;
    let to = domain.parse_order(to.trim()).map_err(|e| e.to_string())?;
    Ok((from, to, k))
}

pub fn load_rule(path: &Path) -> Result<RuleConfig> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_rule_config(&read(path)?, &path.display().to_string(), base)
}

/// Reads `<index>: <label>` lines; indices must run `0, 1, 2, ...` without
/// gaps up to `(m!)^n - 1`.
pub fn parse_table_entries(text: &str, source: &str, domain: Domain, n: usize) -> Result<TableRule> {
    let mut entries = Vec::new();
    for (no, line) in content_lines(text) {
        let (idx, label) = key_value(line).ok_or_else(|| parse_error(source, no, "expected `<index>: <label>`"))?;
        let idx: usize = idx.parse().map_err(|_| parse_error(source, no, format!("bad index {idx:?}")))?;
        if idx != entries.len() {
            return Err(parse_error(source, no, format!("expected index {}, got {idx}", entries.len())));
        }
        let mut chars = label.chars();
        let a = match (chars.next(), chars.next()) {
            (Some(c), None) => domain.alternative(c),
            _ => None,
        }
        .ok_or_else(|| parse_error(source, no, format!("bad label {label:?}")))?;
        entries.push(a);
    }
    let end = text.lines().count().max(1);
    TableRule::new(domain, n, entries).map_err(|e| parse_error(source, end, e.to_string()))
}

pub fn format_table_entries(table: &TableRule) -> String {
    let mut out = String::new();
    for (i, a) in table.entries().iter().enumerate() {
        let _ = writeln!(out, "{i}: {}", table.domain().label(*a));
    }
    out
}

/// A self-contained text form of the rule; tables are written inline.
pub fn canonical_rule_text(rule: &Rule) -> String {
    match rule {
        Rule::Scoring(s) => {
            let d = s.domain();
            let mut out = String::from("rule: scoring\nalternatives:");
            for l in d.labels() {
                let _ = write!(out, " {l}");
            }
            out.push_str("\nscores:");
            for w in s.weights() {
                let _ = write!(out, " {w}");
            }
            let _ = writeln!(out, "\ntiebreak: {}", d.format_order(s.tiebreak()));
            out
        }
        Rule::Table(t) => {
            format!("rule: table\nn: {}\nm: {}\nentries:\n{}", t.voters(), t.domain().len(), format_table_entries(t))
        }
    }
}

/// SHA-256 of [`canonical_rule_text`], hex encoded.
pub fn fingerprint(rule: &Rule) -> String {
    hex::encode(Sha256::digest(canonical_rule_text(rule).as_bytes()))
}

pub(crate) fn label(domain: &Domain, a: Alternative) -> String {
    domain.label(a).to_string()
}

pub(crate) fn usage(message: impl Into<String>) -> Error {
    Error::Usage(message.into())
}
