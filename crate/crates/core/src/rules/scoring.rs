// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::profile::{Alternative, Domain, LinearOrder, Profile};

/// Exact score type.
pub type Score = Ratio<i64>;

/// Total positional scores, indexed by alternative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scores(Vec<Score>);

impl Scores {
    pub fn new(scores: Vec<Score>) -> Self {
        Scores(scores)
    }

    pub fn get(&self, a: Alternative) -> Score {
        self.0[a.index()]
    }

    pub fn as_slice(&self) -> &[Score] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Score {
        self.0.iter().fold(Score::zero(), |acc, s| acc + s)
    }
}

/// A positional scoring rule: a voter's ballot gives `weights[k]` to the
/// alternative it ranks in position `k`; the highest total wins and ties go
/// to whichever tied alternative comes first in `tiebreak`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoringRule {
    domain: Domain,
    weights: Vec<Score>,
    // weights times the lcm of their denominators
    scaled: Vec<i64>,
    tiebreak: LinearOrder,
}

impl ScoringRule {
    pub fn new(domain: Domain, weights: Vec<Score>, tiebreak: LinearOrder) -> Result<Self> {
        if weights.len() != domain.len() {
            return Err(Error::InvalidScores("one weight per alternative is required"));
        }
        if tiebreak.len() != domain.len() {
            return Err(Error::DomainMismatch { expected: domain.len(), got: tiebreak.len() });
        }
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidScores("weights must be non-increasing"));
        }
        let lcm = weights
            .iter()
            .try_fold(1i64, |acc, w| {
                let d = *w.denom();
                let g = gcd(acc, d);
                (acc / g).checked_mul(d)
            })
            .ok_or(Error::InvalidScores("denominators too large"))?;
        let scaled = weights
            .iter()
            .map(|w| w.numer().checked_mul(lcm / w.denom()))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::InvalidScores("weights too large"))?;
        Ok(ScoringRule { domain, weights, scaled, tiebreak })
    }

    pub fn from_integers(domain: Domain, weights: &[i64], tiebreak: LinearOrder) -> Result<Self> {
        ScoringRule::new(domain, weights.iter().map(|&w| Score::from_integer(w)).collect(), tiebreak)
    }

    /// `(1, 0, ..., 0)`
    pub fn plurality(domain: Domain, tiebreak: LinearOrder) -> Result<Self> {
        let mut w = alloc::vec![0; domain.len()];
        w[0] = 1;
        ScoringRule::from_integers(domain, &w, tiebreak)
    }

    /// `(m-1, m-2, ..., 0)`
    pub fn borda(domain: Domain, tiebreak: LinearOrder) -> Result<Self> {
        let m = domain.len() as i64;
        let w: Vec<i64> = (0..m).rev().collect();
        ScoringRule::from_integers(domain, &w, tiebreak)
    }

    /// `(1, ..., 1, 0)`; for three alternatives this is 2-approval.
    pub fn anti_plurality(domain: Domain, tiebreak: LinearOrder) -> Result<Self> {
        let mut w = alloc::vec![1; domain.len()];
        w[domain.len() - 1] = 0;
        ScoringRule::from_integers(domain, &w, tiebreak)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn weights(&self) -> &[Score] {
        &self.weights
    }

    pub fn tiebreak(&self) -> &LinearOrder {
        &self.tiebreak
    }

    /// All weights equal: the winner is always the head of the tie-break.
    pub fn is_constant(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    pub fn has_negative_weights(&self) -> bool {
        self.weights.iter().any(Signed::is_negative)
    }

    pub fn scores(&self, profile: &Profile) -> Result<Scores> {
        if profile.domain() != &self.domain {
            return Err(Error::DomainMismatch { expected: self.domain.len(), got: profile.domain().len() });
        }
        let mut scores = alloc::vec![Score::zero(); self.domain.len()];
        for (order, voters) in profile.groups() {
            let count = Score::from_integer(voters.len() as i64);
            for (pos, a) in order.iter().enumerate() {
                scores[a.index()] += self.weights[pos] * count;
            }
        }
        Ok(Scores(scores))
    }

    /// Scaled integer totals (same argmax as the exact scores).
    pub(crate) fn totals(&self, profile: &Profile) -> Vec<i64> {
        let mut totals = alloc::vec![0i64; self.domain.len()];
        for (order, voters) in profile.groups() {
            self.add_ballots(&mut totals, order, voters.len() as i64);
        }
        totals
    }

    pub(crate) fn add_ballots(&self, totals: &mut [i64], order: &LinearOrder, times: i64) {
        for (pos, a) in order.iter().enumerate() {
            totals[a.index()] += self.scaled[pos] * times;
        }
    }

    pub(crate) fn winner_of_totals(&self, totals: &[i64]) -> Alternative {
        let best = *totals.iter().max().expect("non-empty domain");
        self.tiebreak.iter().find(|a| totals[a.index()] == best).expect("maximum is attained")
    }

    /// Winner for arbitrary exact scores: maximum, ties to the tie-break.
    pub fn winner_of_scores(&self, scores: &Scores) -> Alternative {
        let best = scores.0.iter().max().expect("non-empty domain");
        self.tiebreak.iter().find(|a| scores.get(*a) == *best).expect("maximum is attained")
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Profile;
    use alloc::vec;

    fn abc() -> Domain {
        Domain::standard(3).unwrap()
    }

    fn o(s: &str) -> LinearOrder {
        abc().parse_order(s).unwrap()
    }

    fn ints(scores: &Scores) -> Vec<i64> {
        scores.as_slice().iter().map(|s| s.to_integer()).collect()
    }

    #[test]
    fn example1_plurality_elects_c() {
        let rule = ScoringRule::plurality(abc(), o("ABC")).unwrap();
        let p = Profile::new(abc(), vec![o("ABC"), o("BAC"), o("CAB"), o("CBA")]).unwrap();
        assert_eq!(rule.winner_of_totals(&rule.totals(&p)), Alternative::new(2));
    }

    #[test]
    fn example2_borda_elects_b() {
        let rule = ScoringRule::borda(abc(), o("ABC")).unwrap();
        let p = Profile::new(abc(), vec![o("ABC"), o("ABC"), o("BCA"), o("CBA")]).unwrap();
        assert_eq!(ints(&rule.scores(&p).unwrap()), vec![4, 5, 3]);
        assert_eq!(rule.winner_of_totals(&rule.totals(&p)), Alternative::new(1));
    }

    #[test]
    fn example3_sincere_scores() {
        let rule = ScoringRule::borda(abc(), o("BAC")).unwrap();
        let p = Profile::from_counts(
            abc(),
            &[(o("ABC"), 17), (o("ACB"), 15), (o("BAC"), 18), (o("BCA"), 16), (o("CAB"), 14), (o("CBA"), 14)],
        )
        .unwrap();
        assert_eq!(ints(&rule.scores(&p).unwrap()), vec![96, 99, 87]);
    }

    #[test]
    fn example5_two_approval_scores() {
        let rule = ScoringRule::anti_plurality(abc(), o("ABC")).unwrap();
        let p = Profile::from_counts(
            abc(),
            &[(o("ABC"), 8), (o("ACB"), 4), (o("BAC"), 7), (o("BCA"), 5), (o("CAB"), 4), (o("CBA"), 5)],
        )
        .unwrap();
        assert_eq!(ints(&rule.scores(&p).unwrap()), vec![23, 25, 18]);
        assert_eq!(rule.winner_of_scores(&rule.scores(&p).unwrap()), Alternative::new(1));
    }

    #[test]
    fn agreed_borda_profile() {
        let rule = ScoringRule::borda(abc(), o("ABC")).unwrap();
        let p = Profile::completely_agreed(abc(), o("CAB"), 7).unwrap();
        assert_eq!(ints(&rule.scores(&p).unwrap()), vec![7, 0, 14]);
    }

    #[test]
    fn fractional_weights_are_exact() {
        let w = vec![Score::new(1, 2), Score::new(1, 3), Score::zero()];
        let rule = ScoringRule::new(abc(), w, o("ABC")).unwrap();
        // A: 1/2 + 1/3 = 5/6, B: 1/3 + 1/2 = 5/6 -> tie to A.
        let p = Profile::new(abc(), vec![o("ABC"), o("BAC")]).unwrap();
        let s = rule.scores(&p).unwrap();
        assert_eq!(s.get(Alternative::new(0)), Score::new(5, 6));
        assert_eq!(rule.winner_of_totals(&rule.totals(&p)), Alternative::new(0));
    }

    #[test]
    fn invalid_vectors() {
        assert!(ScoringRule::from_integers(abc(), &[0, 1, 2], o("ABC")).is_err());
        assert!(ScoringRule::from_integers(abc(), &[2, 1], o("ABC")).is_err());
        assert!(ScoringRule::from_integers(abc(), &[1, 1, 1], o("ABC")).unwrap().is_constant());
    }
}
