//! The extremal point sets: given `(d, r, a_1..a_r)` with every `a_i <= d + 1`,
//! a set `X` of `T(d, r)` points in `Q^d` whose Tverberg partitions all have
//! block sizes `a_1..a_r`.
//!
//! `X` is the union of
//! * `A = {x^1, .., x^r}` with `x^i_j = 0` when `i = i(j)` and `-i` otherwise, and
//! * `A_j = {e^j, 2 e^j, .., (r - 1) e^j}` for `j = 1..d`,
//!
//! where the color map `i(j)` hits each `i` exactly `d + 1 - a_i` times.
//! Points are stored in a fixed order: `A` by `i`, then `A_1..A_d` by multiplier.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::hull::Point;
use crate::rational::{int, Rational};

/// Default denominator for perturbation offsets.
pub const DEFAULT_PERTURBATION_RESOLUTION: u64 = 1_000_000;

/// `T(d, r) = (d + 1)(r - 1) + 1`.
pub fn tverberg_number(d: usize, r: usize) -> usize {
    (d + 1) * (r - 1) + 1
}

/// `[(r - 1)!]^d`.
pub fn partition_count_bound(d: usize, r: usize) -> BigUint {
    let fact: BigUint = (1..r).map(BigUint::from).product();
    num_traits::pow(fact, d)
}

/// Why a `(d, r, parts)` triple or a color map is not admissible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("d must be at least 1")]
    DimensionTooSmall,
    #[error("r must be at least 2")]
    TooFewParts,
    #[error("expected r = {expected} parts, got {got}")]
    PartCount { expected: usize, got: usize },
    #[error("a_{index} < 1")]
    PartTooSmall { index: usize },
    #[error("a_{index} > d+1")]
    PartTooLarge { index: usize },
    #[error("sum of parts is {sum}, expected T(d,r) = {expected}")]
    WrongSum { sum: usize, expected: usize },
    #[error("color map has {got} entries, expected d = {expected}")]
    ColorMapLength { expected: usize, got: usize },
    #[error("i({j}) = {value} is outside 1..={r}")]
    ColorOutOfRange { j: usize, value: usize, r: usize },
    #[error("color {i} is used {got} times, expected d+1-a_{i} = {expected}")]
    ColorMultiplicity { i: usize, got: usize, expected: usize },
}

/// Checks `1 <= a_i <= d + 1` for every part (in order), then `sum a_i = T(d, r)`.
pub fn validate_parts(d: usize, r: usize, parts: &[usize]) -> std::result::Result<(), Violation> {
    if d < 1 {
        return Err(Violation::DimensionTooSmall);
    }
    if r < 2 {
        return Err(Violation::TooFewParts);
    }
    if parts.len() != r {
        return Err(Violation::PartCount { expected: r, got: parts.len() });
    }
    for (i, &a) in parts.iter().enumerate() {
        if a < 1 {
            return Err(Violation::PartTooSmall { index: i + 1 });
        }
        if a > d + 1 {
            return Err(Violation::PartTooLarge { index: i + 1 });
        }
    }
    let sum: usize = parts.iter().sum();
    let expected = tverberg_number(d, r);
    if sum != expected {
        return Err(Violation::WrongSum { sum, expected });
    }
    Ok(())
}

/// Canonical color map: for `i = 1..r` in order, the next `d + 1 - a_i` values
/// of `j` get `i(j) = i`. Entry `j - 1` holds `i(j)`, 1-based.
///
/// Assumes [`validate_parts`] passed.
pub fn assign_color_map(d: usize, parts: &[usize]) -> Vec<usize> {
    let colors: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat_n(i + 1, d + 1 - a))
        .collect();
    debug_assert_eq!(colors.len(), d);
    colors
}

/// `(d, r, parts, i(j))`, validated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstructionSpec {
    d: usize,
    r: usize,
    parts: Vec<usize>,
    colors: Vec<usize>,
}

impl ConstructionSpec {
    pub fn new(d: usize, r: usize, parts: Vec<usize>) -> std::result::Result<Self, Violation> {
        validate_parts(d, r, &parts)?;
        let colors = assign_color_map(d, &parts);
        Ok(Self { d, r, parts, colors })
    }

    /// Uses an explicit color map (1-based values, one per `j`) instead of the canonical one.
    pub fn with_color_map(
        d: usize,
        r: usize,
        parts: Vec<usize>,
        colors: Vec<usize>,
    ) -> std::result::Result<Self, Violation> {
        validate_parts(d, r, &parts)?;
        if colors.len() != d {
            return Err(Violation::ColorMapLength { expected: d, got: colors.len() });
        }
        if let Some((j, &value)) = colors.iter().enumerate().find(|(_, &c)| c < 1 || c > r) {
            return Err(Violation::ColorOutOfRange { j: j + 1, value, r });
        }
        for (i, &a) in parts.iter().enumerate() {
            let got = colors.iter().filter(|&&c| c == i + 1).count();
            if got != d + 1 - a {
                return Err(Violation::ColorMultiplicity { i: i + 1, got, expected: d + 1 - a });
            }
        }
        Ok(Self { d, r, parts, colors })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `i(j)` for `j = 1..d`, stored at index `j - 1`.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, j: usize) -> usize {
        self.colors[j - 1]
    }

    pub fn n(&self) -> usize {
        tverberg_number(self.d, self.r)
    }

    /// Parts sorted descending: the induced integer partition every Tverberg
    /// partition of the constructed set must have.
    pub fn sorted_parts(&self) -> Vec<usize> {
        let mut p = self.parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn expected_partition_count(&self) -> BigUint {
        partition_count_bound(self.d, self.r)
    }
}

/// Which sub-family a point of a constructed set came from. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    /// `x^i`.
    A { i: usize },
    /// `k e^j` (or the `k`-th copy of `e^j` in a multiset build).
    Axis { j: usize, k: usize },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A { i } => write!(f, "A i={i}"),
            Label::Axis { j, k } => write!(f, "A_j j={j} k={k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub epsilon: Rational,
    pub seed: u64,
}

/// How a [`PointSet`] was produced from a [`ConstructionSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub spec: ConstructionSpec,
    pub multiset: bool,
    pub perturbation: Option<Perturbation>,
}

/// An indexed list of points of a common dimension. Duplicates are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    labels: Vec<Option<Label>>,
    construction: Option<Construction>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        let labels = vec![None; points.len()];
        Self::with_labels(dim, points, labels, None)
    }

    pub fn with_labels(
        dim: usize,
        points: Vec<Point>,
        labels: Vec<Option<Label>>,
        construction: Option<Construction>,
    ) -> Result<Self> {
        if let Some(k) = points.iter().position(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point {k} has dimension {}, expected {dim}",
                points[k].dim()
            )));
        }
        if labels.len() != points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} points",
                labels.len(),
                points.len()
            )));
        }
        if let Some(c) = &construction {
            if c.spec.d() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "construction has d = {}, point set has dimension {dim}",
                    c.spec.d()
                )));
            }
        }
        Ok(Self { dim, points, labels, construction })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub fn labels(&self) -> &[Option<Label>] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<Label> {
        self.labels[index]
    }

    pub fn construction(&self) -> Option<&Construction> {
        self.construction.as_ref()
    }

    pub fn spec(&self) -> Option<&ConstructionSpec> {
        self.construction.as_ref().map(|c| &c.spec)
    }

    pub fn is_fully_labeled(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Index of the point carrying `label`, if any.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|l| *l == Some(label))
    }

    /// Replaces a point, keeping its label. Used to hand-edit sets in tests.
    pub fn set_point(&mut self, index: usize, point: Point) -> Result<()> {
        if point.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point has dimension {}, expected {}",
                point.dim(),
                self.dim
            )));
        }
        self.points[index] = point;
        Ok(())
    }
}

fn build(spec: &ConstructionSpec, multiset: bool) -> PointSet {
    let (d, r) = (spec.d(), spec.r());
    let mut points = Vec::with_capacity(spec.n());
    let mut labels = Vec::with_capacity(spec.n());

    for i in 1..=r {
        let coords = (1..=d)
            .map(|j| if spec.color(j) == i { int(0) } else { -int(i as i64) })
            .collect();
        points.push(Point::new(coords));
        labels.push(Some(Label::A { i }));
    }
    for j in 1..=d {
        for k in 1..r {
            let scale = if multiset { 1 } else { k as i64 };
            let coords = (1..=d).map(|jj| if jj == j { int(scale) } else { int(0) }).collect();
            points.push(Point::new(coords));
            labels.push(Some(Label::Axis { j, k }));
        }
    }

    PointSet {
        dim: d,
        points,
        labels,
        construction: Some(Construction { spec: spec.clone(), multiset, perturbation: None }),
    }
}

/// Builds `X = A ∪ A_1 ∪ .. ∪ A_d`.
pub fn build_point_set(spec: &ConstructionSpec) -> PointSet {
    build(spec, false)
}

/// Same as [`build_point_set`] but with `A_j` made of `r - 1` copies of `e^j`.
pub fn build_multiset_point_set(spec: &ConstructionSpec) -> PointSet {
    build(spec, true)
}

/// Shifts every coordinate by an independent offset in `[-epsilon, epsilon]`
/// with denominator dividing `den(epsilon) * DEFAULT_PERTURBATION_RESOLUTION`.
pub fn perturb(x: &PointSet, epsilon: &Rational, seed: u64) -> Result<PointSet> {
    perturb_with_resolution(x, epsilon, seed, DEFAULT_PERTURBATION_RESOLUTION)
}

pub fn perturb_with_resolution(x: &PointSet, epsilon: &Rational, seed: u64, resolution: u64) -> Result<PointSet> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let res = resolution as i64;
    let mut out = x.clone();
    for p in out.points.iter_mut() {
        for c in p.coords_mut() {
            // (2u - R) / R covers [-1, 1] in steps of 2/R.
            let u: i64 = rng.gen_range(0..=res);
            let unit = Rational::new(BigInt::from(2 * u - res), BigInt::from(res));
            *c += epsilon * unit;
        }
    }
    if let Some(c) = out.construction.as_mut() {
        c.perturbation = Some(Perturbation { epsilon: epsilon.clone(), seed });
    }
    Ok(out)
}

/// `sum_i (d + 1 - a_i)`, which equals `d` for every admissible spec.
pub fn total_color_deficit(spec: &ConstructionSpec) -> usize {
    spec.parts().iter().map(|a| spec.d() + 1 - a).sum()
}

/// Number of points with `j`-th coordinate (0-based) strictly positive and strictly negative.
pub fn half_space_counts(x: &PointSet, j: usize) -> (usize, usize) {
    let pos = x.points().iter().filter(|p| p[j].is_positive()).count();
    let neg = x.points().iter().filter(|p| p[j].is_negative()).count();
    (pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn coords(x: &PointSet) -> Vec<Vec<i64>> {
        x.points()
            .iter()
            .map(|p| p.coords().iter().map(|c| c.to_integer().try_into().unwrap()).collect())
            .collect()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_parts(2, 3, &[3, 3, 1]), Ok(()));
        assert_eq!(validate_parts(2, 3, &[4, 2, 1]), Err(Violation::PartTooLarge { index: 1 }));
        assert_eq!(validate_parts(2, 3, &[4, 2, 1]).unwrap_err().to_string(), "a_1 > d+1");
        assert_eq!(validate_parts(1, 2, &[1, 1]), Err(Violation::WrongSum { sum: 2, expected: 3 }));
        assert_eq!(validate_parts(1, 2, &[0, 3]), Err(Violation::PartTooSmall { index: 1 }));
        assert_eq!(validate_parts(0, 2, &[1, 1]), Err(Violation::DimensionTooSmall));
        assert_eq!(validate_parts(1, 1, &[1]), Err(Violation::TooFewParts));
        assert_eq!(validate_parts(1, 2, &[2]), Err(Violation::PartCount { expected: 2, got: 1 }));
    }

    #[test]
    fn canonical_color_maps() {
        assert_eq!(assign_color_map(1, &[2, 1]), vec![2]);
        assert_eq!(assign_color_map(2, &[2, 2]), vec![1, 2]);
        assert_eq!(assign_color_map(1, &[2, 2, 1]), vec![3]);
        assert_eq!(assign_color_map(3, &[1, 4, 4]), vec![1, 1, 1]);
    }

    #[test]
    fn explicit_color_map_is_validated() {
        assert!(ConstructionSpec::with_color_map(2, 2, vec![2, 2], vec![2, 1]).is_ok());
        assert_eq!(
            ConstructionSpec::with_color_map(2, 2, vec![2, 2], vec![1, 1]),
            Err(Violation::ColorMultiplicity { i: 1, got: 2, expected: 1 })
        );
        assert!(ConstructionSpec::with_color_map(2, 2, vec![2, 2], vec![1, 3]).is_err());
        assert!(ConstructionSpec::with_color_map(2, 2, vec![2, 2], vec![1]).is_err());
    }

    #[test]
    fn small_constructions_by_hand() {
        let x = build_point_set(&ConstructionSpec::new(1, 2, vec![2, 1]).unwrap());
        assert_eq!(coords(&x), vec![vec![-1], vec![0], vec![1]]);

        let x = build_point_set(&ConstructionSpec::new(2, 2, vec![2, 2]).unwrap());
        assert_eq!(coords(&x), vec![vec![0, -1], vec![-2, 0], vec![1, 0], vec![0, 1]]);

        let x = build_point_set(&ConstructionSpec::new(1, 3, vec![2, 2, 1]).unwrap());
        assert_eq!(coords(&x), vec![vec![-1], vec![-2], vec![0], vec![1], vec![2]]);
        assert_eq!(x.labels()[2], Some(Label::A { i: 3 }));
        assert_eq!(x.labels()[4], Some(Label::Axis { j: 1, k: 2 }));
    }

    #[test]
    fn multiset_build_repeats_unit_vectors() {
        let x = build_multiset_point_set(&ConstructionSpec::new(1, 3, vec![2, 2, 1]).unwrap());
        assert_eq!(coords(&x), vec![vec![-1], vec![-2], vec![0], vec![1], vec![1]]);
        assert!(x.construction().unwrap().multiset);
    }

    #[test]
    fn perturbation_contract() {
        let x = build_point_set(&ConstructionSpec::new(1, 2, vec![2, 1]).unwrap());
        assert!(perturb(&x, &ratio(0, 1), 1).is_err());
        assert!(perturb(&x, &ratio(-1, 10), 1).is_err());
        let eps = ratio(1, 1000);
        let a = perturb(&x, &eps, 7).unwrap();
        let b = perturb(&x, &eps, 7).unwrap();
        let c = perturb(&x, &eps, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.points(), c.points());
        assert_eq!(a.labels(), x.labels());
        for (p, q) in a.points().iter().zip(x.points()) {
            let off = &p[0] - &q[0];
            assert!(off.abs() <= eps);
        }
        assert_eq!(a.construction().unwrap().perturbation, Some(Perturbation { epsilon: eps, seed: 7 }));
    }
}
