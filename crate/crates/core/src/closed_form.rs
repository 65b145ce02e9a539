//! Closed-form description of the Tverberg partitions of a constructed set.
//!
//! After renumbering so that `x^i` sits in block `i`, a Tverberg partition is
//! fixed by choosing, for every axis `j`, a bijection `sigma_j` from the `r - 1`
//! points of `A_j` onto the colors `{1..r} \ {i(j)}`. Block `i` is then
//! `{x^i} ∪ { sigma_j^{-1}(i) : i != i(j) }`.

use itertools::Itertools;

use crate::construction::{ConstructionSpec, Label, PointSet};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// `sigma_1 .. sigma_d`. `maps[j - 1][k - 1]` is the (1-based) block receiving
/// the `k`-th point of `A_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BijectionTuple {
    maps: Vec<Vec<usize>>,
}

impl BijectionTuple {
    pub fn new(spec: &ConstructionSpec, maps: Vec<Vec<usize>>) -> Result<Self> {
        if maps.len() != spec.d() {
            return Err(Error::InvalidArgument(format!("expected {} bijections, got {}", spec.d(), maps.len())));
        }
        for (j0, sigma) in maps.iter().enumerate() {
            let mut image = sigma.clone();
            image.sort_unstable();
            let expected: Vec<usize> = (1..=spec.r()).filter(|&i| i != spec.color(j0 + 1)).collect();
            if image != expected {
                return Err(Error::InvalidArgument(format!(
                    "sigma_{} is not a bijection onto {{1..r}} minus i({})",
                    j0 + 1,
                    j0 + 1
                )));
            }
        }
        Ok(Self { maps })
    }

    pub fn sigma(&self, j: usize, k: usize) -> usize {
        self.maps[j - 1][k - 1]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }
}

/// All `[(r - 1)!]^d` bijection tuples, in lexicographic order.
pub fn bijection_tuples(spec: &ConstructionSpec) -> impl Iterator<Item = BijectionTuple> + Clone {
    let r = spec.r();
    spec.colors()
        .iter()
        .map(|&c| {
            let targets: Vec<usize> = (1..=r).filter(|&i| i != c).collect();
            targets.into_iter().permutations(r - 1)
        })
        .multi_cartesian_product()
        .map(|maps| BijectionTuple { maps })
}

/// Point indices of a labeled construction: `a[i - 1]` is `x^i`,
/// `axis[j - 1][k - 1]` is the `k`-th point of `A_j`.
#[derive(Debug, Clone)]
pub(crate) struct LabelIndex {
    pub a: Vec<usize>,
    pub axis: Vec<Vec<usize>>,
}

impl LabelIndex {
    pub fn new(x: &PointSet) -> Result<(LabelIndex, &ConstructionSpec)> {
        let spec = x.spec().ok_or(Error::MissingConstruction)?;
        let find = |label: Label| {
            x.index_of(label)
                .ok_or_else(|| Error::InvalidArgument(format!("no point labeled `{label}`")))
        };
        let a = (1..=spec.r()).map(|i| find(Label::A { i })).collect::<Result<_>>()?;
        let axis = (1..=spec.d())
            .map(|j| (1..spec.r()).map(|k| find(Label::Axis { j, k })).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        if x.len() != spec.n() {
            return Err(Error::InvalidArgument(format!("{} points, expected n = {}", x.len(), spec.n())));
        }
        Ok((LabelIndex { a, axis }, spec))
    }
}

fn induced(index: &LabelIndex, spec: &ConstructionSpec, tuple: &BijectionTuple) -> Partition {
    let mut blocks: Vec<Vec<usize>> = index.a.iter().map(|&p| vec![p]).collect();
    for j in 1..=spec.d() {
        for k in 1..spec.r() {
            blocks[tuple.sigma(j, k) - 1].push(index.axis[j - 1][k - 1]);
        }
    }
    Partition::new(blocks).expect("label indices are distinct")
}

/// The partition of `x` determined by `tuple`.
pub fn partition_from_bijections(x: &PointSet, tuple: &BijectionTuple) -> Result<Partition> {
    let (index, spec) = LabelIndex::new(x)?;
    Ok(induced(&index, spec, tuple))
}

/// Streams the partition induced by every bijection tuple.
pub fn closed_form_partitions(x: &PointSet) -> Result<impl Iterator<Item = Partition> + '_> {
    let (index, spec) = LabelIndex::new(x)?;
    Ok(bijection_tuples(spec).map(move |t| induced(&index, spec, &t)))
}

/// Counts for the block holding `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceRow {
    /// Position of the block in the canonical partition.
    pub block: usize,
    /// `|X_i ∩ A|`.
    pub a_count: usize,
    /// `|X_i ∩ A_j|` at index `j - 1`.
    pub axis_counts: Vec<usize>,
}

/// `rows[i - 1]` describes the block containing `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceProfile {
    pub rows: Vec<IncidenceRow>,
}

impl IncidenceProfile {
    /// `|X_i ∩ A| = 1` and `|X_i ∩ A_j| = [i != i(j)]` for all `i, j`.
    pub fn matches_formula(&self, spec: &ConstructionSpec) -> bool {
        self.rows.len() == spec.r()
            && self.rows.iter().enumerate().all(|(i0, row)| {
                row.a_count == 1
                    && row
                        .axis_counts
                        .iter()
                        .enumerate()
                        .all(|(j0, &c)| c == usize::from(spec.color(j0 + 1) != i0 + 1))
            })
    }

    /// `|X_i| = |X_i ∩ A| + sum_j |X_i ∩ A_j|`.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.a_count + r.axis_counts.iter().sum::<usize>()).collect()
    }
}

/// Tabulates `|X_i ∩ A|` and `|X_i ∩ A_j|` after renumbering blocks so that
/// `x^i` lies in block `i`. A block without any point of `A` is reported as
/// [`Error::TheoremViolation`].
pub fn incidence_profile(x: &PointSet, partition: &Partition) -> Result<IncidenceProfile> {
    partition.check_covers(x.len())?;
    let (index, spec) = LabelIndex::new(x)?;
    if partition.num_blocks() != spec.r() {
        return Err(Error::InvalidArgument(format!(
            "partition has {} blocks, expected r = {}",
            partition.num_blocks(),
            spec.r()
        )));
    }
    if let Some(b) = partition
        .blocks()
        .iter()
        .position(|block| block.iter().all(|&p| !matches!(x.label(p), Some(Label::A { .. }))))
    {
        return Err(Error::TheoremViolation(format!(
            "block {} ({}) contains no point of A",
            b,
            partition.block(b).iter().map(ToString::to_string).join(",")
        )));
    }

    let rows = index
        .a
        .iter()
        .map(|&xi| {
            let block = partition.block_of(xi).expect("partition covers every index");
            let mut row = IncidenceRow { block, a_count: 0, axis_counts: vec![0; spec.d()] };
            for &p in partition.block(block) {
                match x.label(p) {
                    Some(Label::A { .. }) => row.a_count += 1,
                    Some(Label::Axis { j, .. }) => row.axis_counts[j - 1] += 1,
                    None => {}
                }
            }
            row
        })
        .collect();
    Ok(IncidenceProfile { rows })
}
