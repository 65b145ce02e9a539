//! End-to-end check of a constructed set against the brute-force oracle.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::closed_form::closed_form_partitions;
use crate::construction::{build_point_set, ConstructionSpec, PointSet};
use crate::error::{Error, Result};
use crate::hull::intersection_bounds;
use crate::par::{map_slice, Execution};
use crate::partition::Partition;
use crate::tverberg::{block_points, brute_force_tverberg_partitions_with, is_single_point, TverbergCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// Every Tverberg partition induces the sorted parts.
    InducedParts,
    /// The Tverberg point is unique (and the origin for unperturbed sets).
    UniquePoint,
    /// Brute force and closed form find the same partitions.
    OracleEquivalence,
    /// The number of Tverberg partitions is `[(r - 1)!]^d`.
    Count,
}

impl Clause {
    pub const ALL: [Clause; 4] = [Clause::InducedParts, Clause::UniquePoint, Clause::OracleEquivalence, Clause::Count];

    pub fn name(self) -> &'static str {
        match self {
            Clause::InducedParts => "induced-parts",
            Clause::UniquePoint => "unique-point",
            Clause::OracleEquivalence => "oracle-equivalence",
            Clause::Count => "count",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseResult {
    pub clause: Clause,
    pub passed: bool,
    /// Counterexample or summary.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub spec: ConstructionSpec,
    pub count: usize,
    pub expected: BigUint,
    pub clauses: Vec<ClauseResult>,
    pub certificates: Vec<TverbergCertificate>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, clause: Clause) -> &ClauseResult {
        self.clauses.iter().find(|c| c.clause == clause).expect("every clause is reported")
    }
}

/// Builds the set for `spec` and verifies it.
pub fn verify_theorem1(spec: &ConstructionSpec, cap: usize) -> Result<Report> {
    verify_point_set(&build_point_set(spec), cap, Execution::default())
}

/// Verifies a labeled, possibly perturbed or multiset, constructed set.
///
/// For unperturbed sets the unique-point clause demands the witness be the
/// origin and the intersection bounds be `[0, 0]` in every coordinate; for
/// perturbed sets it only demands degenerate intervals `[c, c]`.
pub fn verify_point_set(x: &PointSet, cap: usize, execution: Execution) -> Result<Report> {
    let construction = x.construction().ok_or(Error::MissingConstruction)?;
    let spec = construction.spec.clone();
    let exact = construction.perturbation.is_none();
    if x.len() > cap {
        return Err(Error::CapExceeded { n: x.len(), cap });
    }

    let certificates = brute_force_tverberg_partitions_with(x, spec.r(), cap, execution)?;
    let expected = spec.expected_partition_count();
    let mut clauses = Vec::with_capacity(4);

    let sorted = spec.sorted_parts();
    let bad_sizes = certificates
        .iter()
        .find(|c| c.partition.induced_integer_partition() != sorted);
    clauses.push(match bad_sizes {
        Some(c) => fail(
            Clause::InducedParts,
            format!("{} induces {:?}, expected {:?}", c.partition, c.partition.induced_integer_partition(), sorted),
        ),
        None if certificates.is_empty() => fail(Clause::InducedParts, "no Tverberg partition found".into()),
        None => pass(Clause::InducedParts, format!("all {} partitions induce {:?}", certificates.len(), sorted)),
    });

    let bounds = map_slice(execution, &certificates, |c| intersection_bounds(&block_points(x, &c.partition)));
    let mut unique_failure = None;
    for (c, b) in certificates.iter().zip(bounds) {
        let b = b?.expect("certified partitions have a nonempty intersection");
        let at_origin = c.witness.is_origin() && b.iter().all(|(lo, _)| lo.is_zero());
        let ok = is_single_point(&b) && (!exact || at_origin);
        if !ok && unique_failure.is_none() {
            let shown: Vec<String> = b.iter().map(|(lo, hi)| format!("[{lo},{hi}]")).collect();
            unique_failure = Some(format!("{} has witness ({}) and bounds {}", c.partition, c.witness, shown.join("x")));
        }
    }
    clauses.push(match unique_failure {
        Some(msg) => fail(Clause::UniquePoint, msg),
        None if exact => pass(Clause::UniquePoint, "every intersection is exactly the origin".into()),
        None => {
            let moved = certificates.iter().filter(|c| !c.witness.is_origin()).count();
            pass(Clause::UniquePoint, format!("every intersection is a single point ({moved} off the origin)"))
        }
    });

    let brute: BTreeSet<Partition> = certificates.iter().map(|c| c.partition.clone()).collect();
    let closed: BTreeSet<Partition> = closed_form_partitions(x)?.collect();
    clauses.push(oracle_clause(&brute, &closed));

    let count = certificates.len();
    clauses.push(if BigUint::from(count) == expected {
        pass(Clause::Count, format!("count={count} expected={expected}"))
    } else {
        fail(Clause::Count, format!("count={count} expected={expected}"))
    });

    Ok(Report { spec, count, expected, clauses, certificates })
}

fn oracle_clause(brute: &BTreeSet<Partition>, closed: &BTreeSet<Partition>) -> ClauseResult {
    if let Some(p) = brute.difference(closed).next() {
        fail(Clause::OracleEquivalence, format!("{p} is Tverberg but not produced by any bijection tuple"))
    } else if let Some(p) = closed.difference(brute).next() {
        fail(Clause::OracleEquivalence, format!("{p} is produced by a bijection tuple but is not Tverberg"))
    } else {
        pass(Clause::OracleEquivalence, format!("{} partitions agree", brute.len()))
    }
}

fn pass(clause: Clause, detail: String) -> ClauseResult {
    ClauseResult { clause, passed: true, detail }
}

fn fail(clause: Clause, detail: String) -> ClauseResult {
    ClauseResult { clause, passed: false, detail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::Point;
    use crate::partition::DEFAULT_CAP;

    #[test]
    fn small_specs_pass() {
        for (d, r, parts, count) in [(1, 2, vec![2, 1], 1), (2, 2, vec![2, 2], 1), (1, 3, vec![2, 2, 1], 2)] {
            let report = verify_theorem1(&ConstructionSpec::new(d, r, parts).unwrap(), DEFAULT_CAP).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.count, count);
        }
    }

    #[test]
    fn tampering_is_detected() {
        let spec = ConstructionSpec::new(1, 3, vec![2, 2, 1]).unwrap();
        let mut x = build_point_set(&spec);
        x.set_point(0, Point::from_integers(&[1])).unwrap();
        let report = verify_point_set(&x, DEFAULT_CAP, Execution::Sequential).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn cap_is_enforced() {
        let spec = ConstructionSpec::new(3, 3, vec![3, 3, 3]).unwrap();
        assert_eq!(verify_theorem1(&spec, 8).unwrap_err(), Error::CapExceeded { n: 9, cap: 8 });
    }
}
