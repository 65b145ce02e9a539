//! Counting Tverberg partitions against the conjectured lower bound `[(r - 1)!]^d`.
//!
//! Nothing here asserts the bound; a sample below it is reported, not raised.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::Rng;

use crate::construction::{partition_count_bound, tverberg_number, PointSet};
use crate::error::{Error, Result};
use crate::hull::Point;
use crate::par::Execution;
use crate::rational::{int, Rational};
use crate::tverberg::brute_force_tverberg_partitions_with;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SierksmaReport {
    pub count: usize,
    pub bound: BigUint,
    /// `count / bound`.
    pub ratio: Rational,
}

impl SierksmaReport {
    pub fn meets_bound(&self) -> bool {
        BigUint::from(self.count) >= self.bound
    }
}

/// Brute-force count of Tverberg partitions of `x` into `r` blocks, next to `[(r - 1)!]^d`.
pub fn sierksma_report(x: &PointSet, r: usize, cap: usize) -> Result<SierksmaReport> {
    sierksma_report_with(x, r, cap, Execution::default())
}

pub fn sierksma_report_with(x: &PointSet, r: usize, cap: usize, execution: Execution) -> Result<SierksmaReport> {
    if r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    let n = tverberg_number(x.dim(), r);
    if x.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected T(d,r) = {n} points for d = {}, r = {r}, got {}",
            x.dim(),
            x.len()
        )));
    }
    let count = brute_force_tverberg_partitions_with(x, r, cap, execution)?.len();
    let bound = partition_count_bound(x.dim(), r);
    let ratio = Rational::new(BigInt::from(count), BigInt::from(bound.clone()));
    Ok(SierksmaReport { count, bound, ratio })
}

/// Rank of the vectors `p - points[0]`.
fn affine_rank(points: &[&Point]) -> usize {
    let Some((base, rest)) = points.split_first() else {
        return 0;
    };
    let mut rows: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.coords().iter().zip(base.coords()).map(|(a, b)| a - b).collect())
        .collect();
    let cols = base.dim();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (v, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *v -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// No `d + 1` of the points lie on a common hyperplane (and no two coincide).
pub fn is_general_position(x: &PointSet) -> bool {
    let d = x.dim();
    let pts: Vec<&Point> = x.points().iter().collect();
    let k = (d + 1).min(pts.len());
    pts.iter()
        .copied()
        .combinations(k)
        .all(|subset| affine_rank(&subset) == k - 1)
}

/// `n` points with integer coordinates in `[-range, range]^d`, resampled
/// until in general position.
pub fn random_general_position<R: Rng>(d: usize, n: usize, range: i64, rng: &mut R) -> PointSet {
    loop {
        let points = (0..n)
            .map(|_| Point::new((0..d).map(|_| int(rng.gen_range(-range..=range))).collect()))
            .collect();
        let x = PointSet::new(d, points).expect("uniform dimension");
        if is_general_position(&x) {
            return x;
        }
    }
}
