//! Moving a redundant point out of an oversized block.
//!
//! If a block of a Tverberg partition has more than `d + 1` points, some point
//! of it can be dropped while the witness stays in the block's hull. Moving that
//! point into the smallest other block keeps the witness common to every hull,
//! so the result is again a Tverberg partition with a different size profile.

use num_traits::Zero;

use crate::construction::PointSet;
use crate::error::{Error, Result};
use crate::hull::{hull_membership, Membership, Point};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::tverberg::TverbergCertificate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftOutcome {
    Shifted {
        certificate: TverbergCertificate,
        /// Index of the point that changed blocks.
        moved: usize,
    },
    /// Every block already has at most `d + 1` points.
    NotApplicable,
}

/// Shifts one point out of the largest block (lowest block index on ties),
/// choosing the smallest removable point index and the smallest other block
/// (lowest block index on ties) as destination. The witness is kept.
pub fn caratheodory_shift(x: &PointSet, cert: &TverbergCertificate) -> Result<ShiftOutcome> {
    cert.validate(x)?;
    let partition = &cert.partition;
    let d = x.dim();

    let (source, largest) = partition
        .blocks()
        .iter()
        .enumerate()
        .fold((0, 0), |best, (i, b)| if b.len() > best.1 { (i, b.len()) } else { best });
    if largest <= d + 1 || partition.num_blocks() < 2 {
        return Ok(ShiftOutcome::NotApplicable);
    }

    let block = partition.block(source);
    let mut removal = None;
    for (pos, &candidate) in block.iter().enumerate() {
        let rest: Vec<&Point> = block.iter().filter(|&&k| k != candidate).map(|&k| x.point(k)).collect();
        if let Membership::Member(coeffs) = hull_membership(&cert.witness, &rest)? {
            removal = Some((pos, candidate, coeffs));
            break;
        }
    }
    let (_, moved, source_coeffs) = removal.ok_or_else(|| {
        Error::InvalidCertificate(format!("no removable point in block {source} of size {largest} > d+1"))
    })?;

    let target = partition
        .blocks()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != source)
        .min_by_key(|(i, b)| (b.len(), *i))
        .map(|(i, _)| i)
        .expect("at least two blocks");

    // Build the new blocks alongside their weights, then re-canonicalize.
    let mut entries: Vec<Vec<(usize, Rational)>> = partition
        .blocks()
        .iter()
        .zip(&cert.coefficients)
        .map(|(b, c)| b.iter().copied().zip(c.iter().cloned()).collect())
        .collect();
    entries[source] = block
        .iter()
        .copied()
        .filter(|&k| k != moved)
        .zip(source_coeffs)
        .collect();
    entries[target].push((moved, Rational::zero()));

    let new_partition = Partition::new(
        entries.iter().map(|e| e.iter().map(|(k, _)| *k).collect()).collect(),
    )?;
    let coefficients = new_partition
        .blocks()
        .iter()
        .map(|b| {
            let src = entries.iter().find(|e| e.iter().any(|(k, _)| *k == b[0])).expect("same indices");
            b.iter()
                .map(|k| src.iter().find(|(kk, _)| kk == k).expect("same indices").1.clone())
                .collect()
        })
        .collect();

    let certificate = TverbergCertificate { partition: new_partition, witness: cert.witness.clone(), coefficients };
    certificate.validate(x)?;
    Ok(ShiftOutcome::Shifted { certificate, moved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_point_set, ConstructionSpec};
    use crate::partition::DEFAULT_CAP;
    use crate::tverberg::{brute_force_tverberg_partitions, is_tverberg};

    fn line(xs: &[i64]) -> PointSet {
        PointSet::new(1, xs.iter().map(|&v| Point::from_integers(&[v])).collect()).unwrap()
    }

    #[test]
    fn moves_smallest_removable_index() {
        let x = line(&[-2, -1, 2, 0]);
        let cert = is_tverberg(&x, &"0,1,2|3".parse().unwrap()).unwrap().unwrap();
        assert!(cert.witness.is_origin());
        match caratheodory_shift(&x, &cert).unwrap() {
            ShiftOutcome::Shifted { certificate, moved } => {
                // Both -2 (index 0) and -1 (index 1) are removable; index 0 wins.
                assert_eq!(moved, 0);
                assert_eq!(certificate.partition.to_string(), "0,3|1,2");
                assert_eq!(certificate.witness, cert.witness);
                assert!(certificate.is_valid(&x));
                assert_eq!(certificate.partition.induced_integer_partition(), vec![2, 2]);
            }
            ShiftOutcome::NotApplicable => panic!("block of size 3 > d+1"),
        }
    }

    #[test]
    fn planar_block_of_four() {
        // Witness 0 strictly inside a quadrilateral; singleton block {0}.
        let pts = [[-1, -1], [1, -1], [1, 1], [-1, 1], [0, 0]];
        let x = PointSet::new(2, pts.iter().map(|p| Point::from_integers(p)).collect()).unwrap();
        let cert = is_tverberg(&x, &"0,1,2,3|4".parse().unwrap()).unwrap().unwrap();
        match caratheodory_shift(&x, &cert).unwrap() {
            ShiftOutcome::Shifted { certificate, moved } => {
                assert_eq!(moved, 0);
                assert_eq!(certificate.partition.to_string(), "0,4|1,2,3");
                assert!(certificate.is_valid(&x));
            }
            ShiftOutcome::NotApplicable => panic!("block of size 4 > d+1"),
        }
    }

    #[test]
    fn constructed_sets_are_never_shiftable() {
        let x = build_point_set(&ConstructionSpec::new(2, 3, vec![3, 3, 1]).unwrap());
        for cert in brute_force_tverberg_partitions(&x, 3, DEFAULT_CAP).unwrap() {
            assert_eq!(caratheodory_shift(&x, &cert).unwrap(), ShiftOutcome::NotApplicable);
        }
    }

    #[test]
    fn invalid_certificate_is_rejected() {
        let x = line(&[-2, -1, 2, 0]);
        let mut cert = is_tverberg(&x, &"0,1,2|3".parse().unwrap()).unwrap().unwrap();
        cert.witness = Point::from_integers(&[1]);
        assert!(caratheodory_shift(&x, &cert).is_err());
    }
}
