// SPDX-License-Identifier: Apache-2.0

//! Three-alternative score vectors as points of the probability simplex.
//!
//! Dividing each alternative's total score by the sum of all scores gives a
//! point `(x1, x2, x3)` with `x1 + x2 + x3 = 1`. The winner is the largest
//! coordinate (tie-break among equals), so the simplex splits into one
//! winning region per alternative, bounded by the loci `xa = xb ≥ xc`.
//!
//! # Realizable region
//!
//! For weights `w1 ≥ w2 ≥ w3 ≥ 0` with sum `S`, a single ballot contributes
//! a permutation of `(w1, w2, w3) / S`, and a profile's point is the average
//! of its ballots' points. The reachable points are therefore (the rational
//! points of) the convex hull of the six permutations. With three
//! coordinates summing to one this hull is cut out by the per-alternative
//! bounds `w3/S ≤ xi ≤ w1/S`: the pair-sum bounds of the permutohedron,
//! `xi + xj ≤ (w1 + w2)/S`, say the same as `xk ≥ w3/S`. The hull is a
//! hexagon when the weights are distinct, a triangle when two are equal and
//! the centroid when all are.
//!
//! Inside it the boundary `xa = xb` between the regions of `a` and `b` runs
//! from the centroid, where all three scores tie, to the point where the
//! third alternative has its least possible share, `xc = w3/S`.

use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::profile::{Alternative, LinearOrder, Profile, VoterSet};
use crate::rules::{Score, Scores, ScoringRule};

/// Normalized scores of three alternatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BarycentricPoint([Score; 3]);

impl BarycentricPoint {
    pub fn new(x1: Score, x2: Score, x3: Score) -> Result<Self> {
        let p = BarycentricPoint([x1, x2, x3]);
        if p.0.iter().any(|x| *x < Score::zero()) || x1 + x2 + x3 != Score::one() {
            return Err(Error::InvalidScores("barycentric coordinates must be non-negative and sum to 1"));
        }
        Ok(p)
    }

    pub fn centroid() -> Self {
        let third = Ratio::new(1, 3);
        BarycentricPoint([third; 3])
    }

    pub fn coords(&self) -> &[Score; 3] {
        &self.0
    }

    pub fn get(&self, a: Alternative) -> Score {
        self.0[a.index()]
    }
}

/// Divides each score by the total.
pub fn embed(scores: &Scores) -> Result<BarycentricPoint> {
    if scores.len() != 3 {
        return Err(Error::DomainMismatch { expected: 3, got: scores.len() });
    }
    let s = scores.as_slice();
    if s.iter().any(|x| *x < Score::zero()) {
        return Err(Error::InvalidScores("scores must be non-negative"));
    }
    let total = scores.total();
    if total.is_zero() {
        return Err(Error::ZeroTotal);
    }
    BarycentricPoint::new(s[0] / total, s[1] / total, s[2] / total)
}

/// The alternative whose region contains `point`: the largest coordinate,
/// ties going to the one ranked first by `tiebreak`.
pub fn region_of(point: &BarycentricPoint, tiebreak: &LinearOrder) -> Alternative {
    let max = *point.0.iter().max().expect("three coordinates");
    tiebreak.iter().find(|&a| point.get(a) == max).expect("the maximum is attained")
}

fn check_three(rule: &ScoringRule) -> Result<()> {
    if rule.domain().len() != 3 {
        return Err(Error::DomainMismatch { expected: 3, got: rule.domain().len() });
    }
    if rule.has_negative_weights() {
        return Err(Error::NotEmbeddable);
    }
    Ok(())
}

/// Points for `k = 0..=k_max` voters of `type_order` switching to `l`. The
/// switchers are the lowest-indexed voters of the type.
pub fn trajectory(
    rule: &ScoringRule,
    profile: &Profile,
    type_order: &LinearOrder,
    l: &LinearOrder,
    k_max: usize,
) -> Result<Vec<BarycentricPoint>> {
    check_three(rule)?;
    let class = profile.voters_of_type(type_order)?;
    if class.is_empty() {
        return Err(Error::TypeAbsent);
    }
    if k_max > class.len() {
        return Err(Error::TooManySwitches { requested: k_max, available: class.len() });
    }
    (0..=k_max)
        .map(|k| {
            let set: VoterSet = class.iter().take(k).collect();
            embed(&rule.scores(&profile.switch_votes(&set, l)?)?)
        })
        .collect()
}

/// Vertices of the realizable region in cyclic order, repeated vertices
/// merged.
pub fn realizable_region(rule: &ScoringRule) -> Result<Vec<BarycentricPoint>> {
    check_three(rule)?;
    let w = rule.weights();
    let total = w[0] + w[1] + w[2];
    if total.is_zero() {
        return Err(Error::ZeroTotal);
    }
    let (a, b, c) = (w[0] / total, w[1] / total, w[2] / total);
    // Consecutive permutations differ by swapping two adjacent weights,
    // which is an edge of the hull.
    let cycle = [[a, b, c], [a, c, b], [b, c, a], [c, b, a], [c, a, b], [b, a, c]];
    let mut out: Vec<BarycentricPoint> = Vec::with_capacity(6);
    for [x1, x2, x3] in cycle {
        let p = BarycentricPoint::new(x1, x2, x3)?;
        if out.last() != Some(&p) && out.first() != Some(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// One segment of the locus where two alternatives tie for the lead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionBoundary {
    pub between: (Alternative, Alternative),
    pub from: BarycentricPoint,
    pub to: BarycentricPoint,
}

/// The three tie loci `xa = xb ≥ xc`, clipped to the realizable region.
pub fn region_boundaries(rule: &ScoringRule) -> Result<Vec<RegionBoundary>> {
    check_three(rule)?;
    let w = rule.weights();
    let least = w[2] / (w[0] + w[1] + w[2]);
    let tied = (Score::one() - least) / Score::from_integer(2);
    let mut out = Vec::with_capacity(3);
    for (x, y, z) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let mut end = [tied; 3];
        end[z] = least;
        out.push(RegionBoundary {
            between: (Alternative::new(x), Alternative::new(y)),
            from: BarycentricPoint::centroid(),
            to: BarycentricPoint::new(end[0], end[1], end[2])?,
        });
    }
    Ok(out)
}

/// One arrow of a figure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectorySpec {
    pub type_order: LinearOrder,
    pub strategic_order: LinearOrder,
    pub k_max: usize,
    pub points: Vec<BarycentricPoint>,
}

/// Everything a simplex figure shows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    pub rule: ScoringRule,
    pub base_point: BarycentricPoint,
    pub trajectories: Vec<TrajectorySpec>,
    pub width: u32,
    pub height: u32,
}

impl FigureSpec {
    /// `arrows` lists `(type, strategic order, k_max)`.
    pub fn new(
        rule: ScoringRule,
        profile: &Profile,
        arrows: &[(LinearOrder, LinearOrder, usize)],
        width: u32,
        height: u32,
    ) -> Result<Self> {
        check_three(&rule)?;
        let base_point = embed(&rule.scores(profile)?)?;
        let trajectories = arrows
            .iter()
            .map(|&(t, l, k_max)| {
                Ok(TrajectorySpec {
                    type_order: t,
                    strategic_order: l,
                    k_max,
                    points: trajectory(&rule, profile, &t, &l, k_max)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FigureSpec { rule, base_point, trajectories, width, height })
    }
}
