// SPDX-License-Identifier: Apache-2.0

//! The five worked examples, bundled as profile and rule files, and the
//! assertions each must satisfy.
//!
//! A fixture directory holds `example1` to `example5`, each with
//! `profile.txt` and `rule.txt`. The bundled copies are compiled in; a
//! directory given at run time replaces them, which is how a tampered
//! fixture is shown to fail.

use std::path::Path;

use safevote_core::strategy::{
    classify_safety, find_escapes, has_incentive, threshold_scan, SafetyVerdict, UnsafeKind,
};
use safevote_core::{Domain, LinearOrder, Profile, Rule, VoterSet};

use crate::error::{read, Result};
use crate::format::{parse_profile, parse_rule_config};
use crate::report::{list, verdict_kind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub profile_text: String,
    pub rule_text: String,
}

pub const NAMES: [&str; 5] = ["example1", "example2", "example3", "example4", "example5"];

macro_rules! bundled {
    ($name:literal) => {
        Fixture {
            name: $name.to_string(),
            profile_text: include_str!(concat!("../fixtures/", $name, "/profile.txt")).to_string(),
            rule_text: include_str!(concat!("../fixtures/", $name, "/rule.txt")).to_string(),
        }
    };
}

pub fn bundled() -> Vec<Fixture> {
    vec![bundled!("example1"), bundled!("example2"), bundled!("example3"), bundled!("example4"), bundled!("example5")]
}

/// Reads `dir/<name>/profile.txt` and `dir/<name>/rule.txt` for every
/// example.
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    NAMES
        .iter()
        .map(|name| {
            let sub = dir.join(name);
            Ok(Fixture {
                name: name.to_string(),
                profile_text: read(&sub.join("profile.txt"))?,
                rule_text: read(&sub.join("rule.txt"))?,
            })
        })
        .collect()
}

/// One assertion: `expected` and `actual` are rendered as text and compared.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub example: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

struct Ctx<'a> {
    name: &'a str,
    rule: Rule,
    profile: Profile,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn d(&self) -> &Domain {
        self.profile.domain()
    }

    fn order(&self, s: &str) -> Result<LinearOrder> {
        Ok(self.d().parse_order(s)?)
    }

    fn check(&mut self, description: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) {
        let (expected, actual) = (expected.into(), actual.into());
        self.checks.push(Check {
            example: self.name.to_string(),
            description: description.into(),
            passed: expected == actual,
            expected,
            actual,
        });
    }

    fn winner_of(&self, p: &Profile) -> Result<String> {
        Ok(self.d().label(self.rule.evaluate(p)?).to_string())
    }

    fn winner(&self) -> Result<String> {
        self.winner_of(&self.profile)
    }

    fn scores(&self) -> Result<String> {
        let Rule::Scoring(s) = &self.rule else { return Ok("not a scoring rule".into()) };
        let scores = s.scores(&self.profile)?;
        let d = self.d();
        Ok(d.alternatives().map(|a| format!("{}={}", d.label(a), scores.get(a))).collect::<Vec<_>>().join(" "))
    }

    fn switch(&self, voters: &[usize], order: &str) -> Result<String> {
        let p = self.profile.switch_votes(&VoterSet::new(voters.iter().copied()), &self.order(order)?)?;
        self.winner_of(&p)
    }

    /// Winners for `k` in `range` voters of `from` switching to `to`.
    fn thresholds(&self, from: &str, to: &str, range: std::ops::RangeInclusive<usize>) -> Result<String> {
        let scan = threshold_scan(&self.rule, &self.profile, &self.order(from)?, &self.order(to)?)?;
        let end = (*range.end()).min(scan.len().saturating_sub(1));
        Ok(scan.get(*range.start()..=end).unwrap_or(&[]).iter().map(|&a| self.d().label(a)).collect())
    }

    fn first_of(&self, type_order: &str) -> Result<usize> {
        let set = self.profile.voters_of_type(&self.order(type_order)?)?;
        let first = set.iter().next().unwrap_or(0);
        Ok(first)
    }

    fn verdict(&self, voter: usize, l: &str) -> Result<String> {
        Ok(match classify_safety(&self.rule, &self.profile, voter, &self.order(l)?) {
            Ok(v) => verdict_kind(&v).to_string(),
            Err(e) => e.to_string(),
        })
    }

    fn pair(&self, voter: usize, l: &str) -> Result<String> {
        Ok(match classify_safety(&self.rule, &self.profile, voter, &self.order(l)?) {
            Ok(SafetyVerdict::Unsafe { kind: UnsafeKind::Overshoot { good, bad }, .. })
            | Ok(SafetyVerdict::Unsafe { kind: UnsafeKind::Undershoot { good, bad }, .. }) => {
                format!("improving {} / harmful {}", good.len(), bad.len())
            }
            Ok(v) => verdict_kind(&v).to_string(),
            Err(e) => e.to_string(),
        })
    }

    /// `type -> order` pairs with an incentive, each followed by its verdict.
    fn incentives(&self) -> Result<String> {
        let mut out = Vec::new();
        for (t, class) in self.profile.groups() {
            let voter = class.iter().next().unwrap_or(0);
            for l in self.d().orders().into_iter().filter(|l| l != t) {
                if has_incentive(&self.rule, &self.profile, voter, &l)?.is_some() {
                    let v = classify_safety(&self.rule, &self.profile, voter, &l)?;
                    out.push(format!(
                        "{}->{} {}",
                        self.d().compact_order(t),
                        self.d().compact_order(&l),
                        if v.is_safe() { "safe" } else { "unsafe" }
                    ));
                }
            }
        }
        Ok(out.join(", "))
    }

    fn incentive_types(&self) -> Result<String> {
        let all = self.incentives()?;
        let mut types: Vec<&str> = all.split(", ").filter_map(|s| s.split("->").next()).collect();
        types.dedup();
        Ok(types.join(" "))
    }

    fn gs_manipulators(&self) -> Result<String> {
        let mut found = Vec::new();
        for voter in 0..self.profile.len() {
            let before = self.rule.evaluate(&self.profile)?;
            let own = self.profile.order(voter);
            let manipulates = self.d().orders().iter().filter(|l| *l != own).any(|l| {
                self.profile
                    .switch_votes(&VoterSet::single(voter), l)
                    .and_then(|p| self.rule.evaluate(&p))
                    .is_ok_and(|after| own.prefers(after, before))
            });
            if manipulates {
                found.push(voter + 1);
            }
        }
        Ok(list(&found))
    }
}

fn example1(c: &mut Ctx) -> Result<()> {
    c.check("sincere winner", "C", c.winner()?);
    c.check("voter 1 votes B > A > C", "B", c.switch(&[0], "BAC")?);
    c.check("voter 2 votes A > B > C", "A", c.switch(&[1], "ABC")?);
    let both = c.profile.switch_votes(&VoterSet::single(0), &c.order("BAC")?)?;
    let both = both.switch_votes(&VoterSet::single(1), &c.order("ABC")?)?;
    c.check("voters 1 and 2 both switch", "C", c.winner_of(&both)?);
    c.check("single-voter manipulators", "1, 2", c.gs_manipulators()?);
    let escapes: Vec<usize> = find_escapes(&c.rule, &c.profile)?.iter().map(|e| e.voter + 1).collect();
    c.check("voters with an escape", "1, 2", list(&escapes));
    Ok(())
}

fn example2(c: &mut Ctx) -> Result<()> {
    c.check("sincere winner", "B", c.winner()?);
    c.check("voter 1 votes A > C > B", "A", c.switch(&[0], "ACB")?);
    c.check("voters 1 and 2 vote A > C > B", "C", c.switch(&[0, 1], "ACB")?);
    c.check("verdict for voter 1 voting A > C > B", "overshoot", c.verdict(0, "ACB")?);
    c.check("nested pair sizes", "improving 1 / harmful 2", c.pair(0, "ACB")?);
    Ok(())
}

fn example3(c: &mut Ctx) -> Result<()> {
    c.check("scores", "A=96 B=99 C=87", c.scores()?);
    c.check("sincere winner", "B", c.winner()?);
    c.check("A > B > C to A > C > B, 4 to 8 switched", "AAAAA", c.thresholds("ABC", "ACB", 4..=8)?);
    c.check("A > B > C to A > C > B, 10 to 17 switched", "CCCCCCCC", c.thresholds("ABC", "ACB", 10..=17)?);
    let abc = c.first_of("ABC")?;
    c.check("verdict for A > B > C voting A > C > B", "overshoot", c.verdict(abc, "ACB")?);
    let acb = c.first_of("ACB")?;
    c.check("verdict for A > C > B voting C > A > B", "safe", c.verdict(acb, "CAB")?);
    c.check("A > C > B to C > A > B, 13 to 15 switched", "CCC", c.thresholds("ACB", "CAB", 13..=15)?);
    let below = c.thresholds("ACB", "CAB", 0..=12)?;
    c.check("A > C > B to C > A > B, C elected below 13", "false", below.contains('C').to_string());
    Ok(())
}

fn example4(c: &mut Ctx) -> Result<()> {
    c.check("scores", "A=59 B=102 C=110 D=30 E=109", c.scores()?);
    c.check("sincere winner", "C", c.winner()?);
    c.check("A > B > C > D > E to B > A > D > C > E, 2 to 6 switched", "EEEEE", c.thresholds("ABCDE", "BADCE", 2..=6)?);
    c.check("A > B > C > D > E to B > A > D > C > E, 8 to 10 switched", "BBB", c.thresholds("ABCDE", "BADCE", 8..=10)?);
    c.check("verdict for A > B > C > D > E voting B > A > D > C > E", "undershoot", c.verdict(0, "BADCE")?);
    Ok(())
}

fn example5(c: &mut Ctx) -> Result<()> {
    c.check("scores", "A=23 B=25 C=18", c.scores()?);
    c.check("sincere winner", "B", c.winner()?);
    c.check("A > B > C to A > C > B, 3 and 4 switched", "AA", c.thresholds("ABC", "ACB", 3..=4)?);
    c.check("A > B > C to A > C > B, 6 to 8 switched", "CCC", c.thresholds("ABC", "ACB", 6..=8)?);
    c.check("types with an incentive", "ABC", c.incentive_types()?);
    let safe = c.incentives()?.split(", ").filter(|s| s.ends_with(" safe")).count();
    c.check("safe strategic votes", "0", safe.to_string());
    c.check(
        "voters with an escape",
        "none",
        list(&find_escapes(&c.rule, &c.profile)?.iter().map(|e| e.voter + 1).collect::<Vec<_>>()),
    );
    Ok(())
}

/// Runs the assertions of every fixture. A fixture that fails to parse or
/// evaluate yields a single failed check carrying the error.
pub fn run(fixtures: &[Fixture]) -> Vec<Check> {
    let mut out = Vec::new();
    for f in fixtures {
        match run_one(f) {
            Ok(checks) => out.extend(checks),
            Err(e) => out.push(Check {
                example: f.name.clone(),
                description: "fixture loads".into(),
                expected: "ok".into(),
                actual: e.to_string(),
                passed: false,
            }),
        }
    }
    out
}

fn run_one(f: &Fixture) -> Result<Vec<Check>> {
    let profile = parse_profile(&f.profile_text, &format!("{}/profile.txt", f.name))?;
    let config = parse_rule_config(&f.rule_text, &format!("{}/rule.txt", f.name), Path::new("."))?;
    let mut ctx = Ctx { name: &f.name, rule: config.rule, profile, checks: Vec::new() };
    ctx.rule.evaluate(&ctx.profile)?;
    match f.name.as_str() {
        "example1" => example1(&mut ctx)?,
        "example2" => example2(&mut ctx)?,
        "example3" => example3(&mut ctx)?,
        "example4" => example4(&mut ctx)?,
        "example5" => example5(&mut ctx)?,
        _ => {}
    }
    Ok(ctx.checks)
}

/// Pass/fail table with a diff line under each failure.
pub fn to_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out += &format!("{} {:<9} {}\n", if c.passed { "pass" } else { "FAIL" }, c.example, c.description);
        if !c.passed {
            out += &format!("     - expected: {}\n     + actual:   {}\n", c.expected, c.actual);
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out += &format!("{} checks, {} failed\n", checks.len(), failed);
    out
}
