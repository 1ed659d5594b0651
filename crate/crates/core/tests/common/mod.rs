// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use safevote_core::{Domain, LinearOrder, Profile, Rule, ScoringRule};

pub fn domain(m: usize) -> Domain {
    Domain::standard(m).unwrap()
}

pub fn order(m: usize, s: &str) -> LinearOrder {
    domain(m).parse_order(s).unwrap()
}

pub fn counts(m: usize, rows: &[(&str, usize)]) -> Profile {
    let rows: Vec<(LinearOrder, usize)> = rows.iter().map(|&(s, c)| (order(m, s), c)).collect();
    Profile::from_counts(domain(m), &rows).unwrap()
}

pub fn voters(m: usize, ballots: &[&str]) -> Profile {
    Profile::new(domain(m), ballots.iter().map(|s| order(m, s)).collect()).unwrap()
}

pub fn scoring(weights: &[i64], tiebreak: &str) -> Rule {
    let m = weights.len();
    Rule::Scoring(ScoringRule::from_integers(domain(m), weights, order(m, tiebreak)).unwrap())
}

pub fn example1() -> (Rule, Profile) {
    (scoring(&[1, 0, 0], "ABC"), voters(3, &["ABC", "BAC", "CAB", "CBA"]))
}

pub fn example2() -> (Rule, Profile) {
    (scoring(&[2, 1, 0], "ABC"), voters(3, &["ABC", "ABC", "BCA", "CBA"]))
}

pub fn example3() -> (Rule, Profile) {
    let rows = [("ABC", 17), ("ACB", 15), ("BAC", 18), ("BCA", 16), ("CAB", 14), ("CBA", 14)];
    (scoring(&[2, 1, 0], "BAC"), counts(3, &rows))
}

/// Third type E>B>C>D>A, which gives A=59 and D=30.
pub fn example4() -> (Rule, Profile) {
    let rows = [("ABCDE", 10), ("CEBAD", 15), ("EBCDA", 14), ("EDACB", 2)];
    (scoring(&[4, 3, 2, 1, 0], "CEBAD"), counts(5, &rows))
}

pub fn example5() -> (Rule, Profile) {
    let rows = [("ABC", 8), ("ACB", 4), ("BAC", 7), ("BCA", 5), ("CAB", 4), ("CBA", 5)];
    (scoring(&[1, 1, 0], "ABC"), counts(3, &rows))
}

/// Scores computed from ballot strings alone: position `p` of a ballot earns
/// `weights[p]`.
pub fn naive_scores(weights: &[i64], ballots: &[(String, usize)]) -> Vec<(char, i64)> {
    let mut labels: Vec<char> = ballots[0].0.chars().collect();
    labels.sort_unstable();
    labels
        .iter()
        .map(|&x| {
            let s = ballots.iter().map(|(b, c)| weights[b.chars().position(|y| y == x).unwrap()] * *c as i64).sum();
            (x, s)
        })
        .collect()
}

pub fn naive_winner(weights: &[i64], tiebreak: &str, ballots: &[(String, usize)]) -> char {
    let scores = naive_scores(weights, ballots);
    let best = scores.iter().map(|s| s.1).max().unwrap();
    tiebreak.chars().find(|x| scores.iter().any(|s| s.0 == *x && s.1 == best)).unwrap()
}

/// Winners for `k = 0..=count` where `k` ballots of `from` become `to`.
pub fn naive_thresholds(weights: &[i64], tiebreak: &str, rows: &[(&str, usize)], from: &str, to: &str) -> String {
    let count = rows.iter().find(|r| r.0 == from).unwrap().1;
    (0..=count)
        .map(|k| {
            let mut ballots: Vec<(String, usize)> =
                rows.iter().map(|&(b, c)| (b.to_string(), if b == from { c - k } else { c })).collect();
            ballots.push((to.to_string(), k));
            naive_winner(weights, tiebreak, &ballots)
        })
        .collect()
}
