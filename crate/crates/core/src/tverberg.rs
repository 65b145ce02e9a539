//! Tverberg certificates and the brute-force oracle.

use crate::construction::PointSet;
use crate::error::{Error, Result};
use crate::hull::{hulls_common_point, intersection_bounds, is_convex_combination, CommonPoint, Point};
use crate::par::{filter_map_unordered, Execution};
use crate::partition::{enumerate_set_partitions, Partition};
use crate::rational::Rational;

/// A partition together with a common point of its block hulls and, for every
/// block, convex weights (one per point, in block order) reproducing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TverbergCertificate {
    pub partition: Partition,
    pub witness: Point,
    pub coefficients: Vec<Vec<Rational>>,
}

impl TverbergCertificate {
    /// Re-checks the certificate by exact substitution. Does not touch the LP solver.
    pub fn validate(&self, x: &PointSet) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidCertificate(msg));
        self.partition.check_covers(x.len())?;
        if self.witness.dim() != x.dim() {
            return fail(format!("witness has dimension {}, expected {}", self.witness.dim(), x.dim()));
        }
        if self.coefficients.len() != self.partition.num_blocks() {
            return fail(format!(
                "{} coefficient lists for {} blocks",
                self.coefficients.len(),
                self.partition.num_blocks()
            ));
        }
        for (i, (block, coeffs)) in self.partition.blocks().iter().zip(&self.coefficients).enumerate() {
            let points: Vec<&Point> = block.iter().map(|&k| x.point(k)).collect();
            if !is_convex_combination(&self.witness, &points, coeffs) {
                return fail(format!("block {i} does not reproduce the witness"));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, x: &PointSet) -> bool {
        self.validate(x).is_ok()
    }
}

pub fn block_points<'a>(x: &'a PointSet, partition: &Partition) -> Vec<Vec<&'a Point>> {
    partition
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&k| x.point(k)).collect())
        .collect()
}

/// Solves for a certificate on a partition already known to cover `x`.
pub(crate) fn certify(x: &PointSet, partition: &Partition) -> Option<TverbergCertificate> {
    let blocks = block_points(x, partition);
    match hulls_common_point(&blocks).expect("validated partition yields a well-formed system") {
        CommonPoint::Witness { point, coefficients } => Some(TverbergCertificate {
            partition: partition.clone(),
            witness: point,
            coefficients,
        }),
        CommonPoint::Empty => None,
    }
}

/// `Some(certificate)` iff the block hulls of `partition` share a point.
pub fn is_tverberg(x: &PointSet, partition: &Partition) -> Result<Option<TverbergCertificate>> {
    partition.check_covers(x.len())?;
    Ok(certify(x, partition))
}

/// Every Tverberg partition of `x` into `r` blocks, sorted by partition.
pub fn brute_force_tverberg_partitions(x: &PointSet, r: usize, cap: usize) -> Result<Vec<TverbergCertificate>> {
    brute_force_tverberg_partitions_with(x, r, cap, Execution::default())
}

pub fn brute_force_tverberg_partitions_with(
    x: &PointSet,
    r: usize,
    cap: usize,
    execution: Execution,
) -> Result<Vec<TverbergCertificate>> {
    let stream = enumerate_set_partitions(x.len(), r, cap)?;
    let mut found = filter_map_unordered(execution, stream, |p| certify(x, &p));
    found.sort_unstable_by(|a, b| a.partition.cmp(&b.partition));
    Ok(found)
}

/// Coordinate-wise extent of `conv(X_1) ∩ ... ∩ conv(X_r)`; `None` when empty.
pub fn tverberg_point_set_bounds(x: &PointSet, partition: &Partition) -> Result<Option<Vec<(Rational, Rational)>>> {
    partition.check_covers(x.len())?;
    intersection_bounds(&block_points(x, partition))
}

/// True when every interval is a single value, i.e. the Tverberg point is unique.
pub fn is_single_point(bounds: &[(Rational, Rational)]) -> bool {
    bounds.iter().all(|(lo, hi)| lo == hi)
}
