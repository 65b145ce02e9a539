//! Independent oracles. Nothing here calls the simplex solver: feasibility is
//! decided by enumerating candidate supports and solving them by Gaussian
//! elimination, set partitions by canonicalizing all `r^n` labelings.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use tverberg_core::{Point, Rational};

/// Unique solution of `sum_k lambda_k * cols[k] = rhs` when the columns are
/// linearly independent and the system is consistent.
pub fn solve_unique(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let m = rhs.len();
    let k = cols.len();
    let mut a: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..k {
        let pr = (rank..m).find(|&i| !a[i][c].is_zero())?;
        a.swap(rank, pr);
        let inv = Rational::one() / &a[rank][c];
        for v in a[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        rank += 1;
    }
    // Remaining rows must read 0 = 0.
    if a[rank..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| a[c][k].clone()).collect())
}

/// Decides `{ x >= 0 : sum_k x_k cols[k] = rhs }` by trying every support of
/// size at most `rhs.len()`. Returns a full-length solution when feasible.
pub fn feasible_by_supports(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = cols.len();
    if rhs.iter().all(Zero::is_zero) {
        return Some(vec![Rational::zero(); n]);
    }
    for size in 1..=rhs.len().min(n) {
        for support in (0..n).combinations(size) {
            let sub: Vec<Vec<Rational>> = support.iter().map(|&j| cols[j].clone()).collect();
            if let Some(sol) = solve_unique(&sub, rhs) {
                if sol.iter().all(|v| !v.is_negative()) {
                    let mut x = vec![Rational::zero(); n];
                    for (&j, v) in support.iter().zip(sol) {
                        x[j] = v;
                    }
                    return Some(x);
                }
            }
        }
    }
    None
}

/// Columns of the matrix given row-wise.
pub fn columns(rows: &[Vec<Rational>], vars: usize) -> Vec<Vec<Rational>> {
    (0..vars).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `p ∈ conv(points)` via affinely independent sub-simplices of at most `d + 1` points.
pub fn in_hull_by_subsimplices(p: &Point, points: &[Point]) -> bool {
    let lifted: Vec<Vec<Rational>> = points
        .iter()
        .map(|x| std::iter::once(Rational::one()).chain(x.coords().iter().cloned()).collect())
        .collect();
    let target: Vec<Rational> = std::iter::once(Rational::one()).chain(p.coords().iter().cloned()).collect();
    feasible_by_supports(&lifted, &target).is_some()
}

/// `conv(B_1) ∩ .. ∩ conv(B_r) != ∅`, encoded from scratch and decided by support enumeration.
pub fn hulls_intersect_by_supports(blocks: &[Vec<Point>]) -> bool {
    let r = blocks.len();
    let d = blocks[0][0].dim();
    let rows = r + d * (r - 1);
    let mut cols = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        for x in block {
            let mut col = vec![Rational::zero(); rows];
            col[i] = Rational::one();
            for other in 1..r {
                for j in 0..d {
                    let at = r + (other - 1) * d + j;
                    if i == 0 {
                        col[at] = x[j].clone();
                    } else if i == other {
                        col[at] = -x[j].clone();
                    }
                }
            }
            cols.push(col);
        }
    }
    let mut rhs = vec![Rational::zero(); rows];
    for v in rhs.iter_mut().take(r) {
        *v = Rational::one();
    }
    feasible_by_supports(&cols, &rhs).is_some()
}

/// Determinant by Leibniz expansion.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut total = Rational::zero();
    for perm in (0..n).permutations(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = Rational::one();
        for (row, &col) in perm.iter().enumerate() {
            term *= &m[row][col];
        }
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Barycentric test for `d + 1` affinely independent points: Cramer's rule on
/// the lifted system, then sign check. `None` when the simplex is degenerate.
pub fn in_simplex_by_determinants(p: &Point, simplex: &[Point]) -> Option<bool> {
    let d = p.dim();
    assert_eq!(simplex.len(), d + 1);
    let lifted = |x: &Point| -> Vec<Rational> { std::iter::once(Rational::one()).chain(x.coords().iter().cloned()).collect() };
    let matrix_with = |replace: Option<usize>| -> Vec<Vec<Rational>> {
        // Column k holds the lifted simplex vertex k (or p when replaced).
        let cols: Vec<Vec<Rational>> = simplex
            .iter()
            .enumerate()
            .map(|(k, x)| if Some(k) == replace { lifted(p) } else { lifted(x) })
            .collect();
        (0..=d).map(|row| cols.iter().map(|c| c[row].clone()).collect()).collect()
    };
    let base = det(&matrix_with(None));
    if base.is_zero() {
        return None;
    }
    Some((0..=d).all(|k| !(det(&matrix_with(Some(k))) / &base).is_negative()))
}

/// Stirling numbers of the second kind from `S(n, r) = r S(n - 1, r) + S(n - 1, r - 1)`.
pub fn stirling2(n: usize, r: usize) -> u64 {
    let mut s = vec![vec![0u64; r + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for k in 1..=r.min(i) {
            s[i][k] = k as u64 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    s[n][r]
}

/// Every partition of `0..n` into exactly `r` nonempty blocks, found by
/// canonicalizing all `r^n` block labelings.
pub fn partitions_by_labelings(n: usize, r: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let mut out = BTreeSet::new();
    for labeling in (0..n).map(|_| 0..r).multi_cartesian_product() {
        let mut blocks = vec![Vec::new(); r];
        for (i, &b) in labeling.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().any(Vec::is_empty) {
            continue;
        }
        blocks.sort();
        out.insert(blocks);
    }
    out
}

/// Tverberg partitions by enumerating labelings and testing each with the
/// support oracle. Only for tiny inputs.
pub fn tverberg_partitions_by_supports(points: &[Point], r: usize) -> BTreeSet<Vec<Vec<usize>>> {
    partitions_by_labelings(points.len(), r)
        .into_iter()
        .filter(|blocks| {
            let pts: Vec<Vec<Point>> = blocks.iter().map(|b| b.iter().map(|&k| points[k].clone()).collect()).collect();
            hulls_intersect_by_supports(&pts)
        })
        .collect()
}
