//! Convex-hull queries expressed as exact feasibility problems.

use std::borrow::Borrow;
use std::fmt;
use std::ops::Index;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{optimize_linear, solve_feasibility, Direction, Feasibility, FeasibilitySystem, LinearOptimum};
use crate::rational::{is_nonnegative, Rational};

/// A point of `Q^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [Rational] {
        &mut self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Index<usize> for Point {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for Point {
    fn from(coords: Vec<Rational>) -> Self {
        Point(coords)
    }
}

/// Comma-separated coordinates, e.g. `0,-1/2`.
impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Convex coefficients, one per input point.
    Member(Vec<Rational>),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonPoint {
    Witness { point: Point, coefficients: Vec<Vec<Rational>> },
    Empty,
}

/// `sum_k coeffs[k] * points[k]`.
pub fn combination<P: Borrow<Point>>(points: &[P], coeffs: &[Rational]) -> Point {
    let dim = points.first().map_or(0, |p| p.borrow().dim());
    let mut acc = vec![Rational::zero(); dim];
    for (p, c) in points.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(p.borrow().coords()) {
            *a += c * x;
        }
    }
    Point(acc)
}

/// Exact check that `coeffs` are convex weights reproducing `target`.
pub fn is_convex_combination<P: Borrow<Point>>(target: &Point, points: &[P], coeffs: &[Rational]) -> bool {
    coeffs.len() == points.len()
        && !points.is_empty()
        && coeffs.iter().all(is_nonnegative)
        && coeffs.iter().sum::<Rational>().is_one()
        && combination(points, coeffs) == *target
}

fn check_dims<P: Borrow<Point>>(dim: usize, points: &[P]) -> Result<()> {
    match points.iter().position(|p| p.borrow().dim() != dim) {
        Some(k) => Err(Error::DimensionMismatch(format!(
            "point {k} has dimension {}, expected {dim}",
            points[k].borrow().dim()
        ))),
        None => Ok(()),
    }
}

/// Decides `p in conv(points)`.
pub fn hull_membership<P: Borrow<Point>>(p: &Point, points: &[P]) -> Result<Membership> {
    if points.is_empty() {
        return Err(Error::EmptyPointList);
    }
    let d = p.dim();
    check_dims(d, points)?;
    let k = points.len();

    let mut system = FeasibilitySystem::with_vars(k);
    system.push_row(vec![Rational::one(); k], Rational::one())?;
    for j in 0..d {
        let row = points.iter().map(|x| x.borrow()[j].clone()).collect();
        system.push_row(row, p[j].clone())?;
    }
    Ok(match solve_feasibility(&system) {
        Feasibility::Feasible(lambda) => Membership::Member(lambda),
        Feasibility::Infeasible => Membership::NotMember,
    })
}

/// Variable layout of [`common_point_system`]: block `i` owns the columns
/// `offsets[i]..offsets[i + 1]`.
#[derive(Debug, Clone)]
pub struct BlockLayout {
    offsets: Vec<usize>,
    dim: usize,
}

impl BlockLayout {
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn blocks(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn split(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.blocks()).map(|i| x[self.block_range(i)].to_vec()).collect()
    }
}

/// Encodes `conv(B_1) ∩ ... ∩ conv(B_r) != ∅` over weights `lambda_{i,k} >= 0`:
/// one row `sum_k lambda_{i,k} = 1` per block, then for every `i >= 2` the `d`
/// rows `sum_k lambda_{1,k} x_{1,k} - sum_k lambda_{i,k} x_{i,k} = 0`.
pub fn common_point_system<P: Borrow<Point>>(blocks: &[Vec<P>]) -> Result<(FeasibilitySystem, BlockLayout)> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one block is required".into()))?;
    if let Some(i) = blocks.iter().position(Vec::is_empty) {
        return Err(Error::EmptyBlock(i));
    }
    let dim = first[0].borrow().dim();
    for b in blocks {
        check_dims(dim, b)?;
    }

    let mut offsets = vec![0];
    for b in blocks {
        offsets.push(offsets.last().unwrap() + b.len());
    }
    let vars = *offsets.last().unwrap();
    let layout = BlockLayout { offsets, dim };

    let mut system = FeasibilitySystem::with_vars(vars);
    for i in 0..blocks.len() {
        let mut row = vec![Rational::zero(); vars];
        for v in &mut row[layout.block_range(i)] {
            *v = Rational::one();
        }
        system.push_row(row, Rational::one())?;
    }
    for i in 1..blocks.len() {
        for j in 0..dim {
            let mut row = vec![Rational::zero(); vars];
            for (v, x) in row[layout.block_range(0)].iter_mut().zip(&blocks[0]) {
                *v = x.borrow()[j].clone();
            }
            for (v, x) in row[layout.block_range(i)].iter_mut().zip(&blocks[i]) {
                *v = -&x.borrow()[j];
            }
            system.push_row(row, Rational::zero())?;
        }
    }
    Ok((system, layout))
}

/// Finds a point common to all block hulls, with per-block convex weights.
pub fn hulls_common_point<P: Borrow<Point>>(blocks: &[Vec<P>]) -> Result<CommonPoint> {
    let (system, layout) = common_point_system(blocks)?;
    Ok(match solve_feasibility(&system) {
        Feasibility::Feasible(x) => {
            let coefficients = layout.split(&x);
            let point = combination(&blocks[0], &coefficients[0]);
            CommonPoint::Witness { point, coefficients }
        }
        Feasibility::Infeasible => CommonPoint::Empty,
    })
}

/// Exact coordinate-wise `[min, max]` of `conv(B_1) ∩ ... ∩ conv(B_r)`, from
/// `2d` linear programs over the [`common_point_system`]. `None` when the
/// intersection is empty.
pub fn intersection_bounds<P: Borrow<Point>>(blocks: &[Vec<P>]) -> Result<Option<Vec<(Rational, Rational)>>> {
    let (system, layout) = common_point_system(blocks)?;
    let mut bounds = Vec::with_capacity(layout.dim());
    for j in 0..layout.dim() {
        // Coordinate j of the witness, written through block 1's weights.
        let mut objective = vec![Rational::zero(); system.vars()];
        for (c, x) in objective[layout.block_range(0)].iter_mut().zip(&blocks[0]) {
            *c = x.borrow()[j].clone();
        }
        let lo = optimize_linear(&system, &objective, Direction::Minimize)?;
        let hi = optimize_linear(&system, &objective, Direction::Maximize)?;
        match (lo, hi) {
            (LinearOptimum::Optimum { value: lo, .. }, LinearOptimum::Optimum { value: hi, .. }) => {
                bounds.push((lo, hi))
            }
            (LinearOptimum::Infeasible, _) | (_, LinearOptimum::Infeasible) => return Ok(None),
            // Convex weights keep the region bounded.
            _ => unreachable!("intersection of convex hulls is bounded"),
        }
    }
    Ok(Some(bounds))
}
