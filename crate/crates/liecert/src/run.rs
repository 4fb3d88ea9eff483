//! Catalog orchestration: build each algebra once, fan per-orbit
//! verification out to a worker pool, and diff computed invariants against
//! the catalog's expected blocks.

use crate::catalog::{ExpectedInvariants, OrbitRecord};
use crate::liealg::{build_algebra, LieAlgebra};
use crate::propp::{verify_orbit, MatrixVerdict, OrbitOutcome, PropPError, VerifyOptions};
use crate::rootsystem::{build_root_system, SimpleType};
use crate::sl2::Characteristic;
use std::collections::BTreeMap;
use std::time::Instant;

/// Options for a catalog run.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Which successful search candidate to use for e (0 = first).
    pub e_candidate: usize,
    /// Worker count; defaults to the number of selected orbits.
    pub jobs: Option<usize>,
    /// Skip the diff against the catalog's expected block.
    pub skip_expected_diff: bool,
}

/// Result of one orbit: the computed outcome plus the expected-block diff
/// (empty when everything matches), or the pipeline error.
#[derive(Debug)]
pub struct OrbitRun {
    pub record: OrbitRecord,
    pub result: Result<VerifiedOrbit, PropPError>,
}

#[derive(Debug)]
pub struct VerifiedOrbit {
    pub outcome: OrbitOutcome,
    pub expected_diff: Vec<String>,
    pub elapsed_ms: u64,
}

impl OrbitRun {
    /// Verified, matches expectations (or the diff was skipped).
    pub fn is_clean(&self) -> bool {
        match &self.result {
            Ok(v) => v.outcome.property_holds && v.expected_diff.is_empty(),
            Err(_) => false,
        }
    }
}

/// Build each required algebra once; orbits share them read-only.
pub fn build_algebras(records: &[OrbitRecord]) -> BTreeMap<SimpleType, LieAlgebra> {
    let mut out = BTreeMap::new();
    for r in records {
        out.entry(r.algebra)
            .or_insert_with(|| build_algebra(build_root_system(r.algebra)));
    }
    out
}

/// Compare a computed outcome against the catalog's expected block.
/// Returns one line per mismatch.
pub fn diff_outcome(outcome: &OrbitOutcome, expected: &ExpectedInvariants) -> Vec<String> {
    let mut diffs = Vec::new();
    let mut check = |name: &str, got: String, want: String| {
        if got != want {
            diffs.push(format!("{name}: computed {got}, expected {want}"));
        }
    };
    check(
        "dim_centralizer",
        outcome.dim_centralizer.to_string(),
        expected.dim_centralizer.to_string(),
    );
    check(
        "dim_centre",
        outcome.dim_centre.to_string(),
        expected.dim_centre.to_string(),
    );
    check(
        "centre_weights",
        format!("{:?}", outcome.centre_weights),
        format!("{:?}", expected.centre_weights),
    );
    check("m_r", outcome.m_r.to_string(), expected.m_r.to_string());
    check(
        "verdict",
        if outcome.property_holds {
            "P_holds".into()
        } else {
            "not_certified".into()
        },
        expected.verdict.clone(),
    );
    let nontrivial: Vec<_> = outcome.nontrivial_checks().collect();
    check(
        "matrix_check_count",
        nontrivial.len().to_string(),
        expected.matrix_checks.len().to_string(),
    );
    for (got, want) in nontrivial.iter().zip(&expected.matrix_checks) {
        let tag = format!("check m_i={}", want.m_i);
        check(&format!("{tag} m_i"), got.m_i.to_string(), want.m_i.to_string());
        if let Some(want_mk) = want.m_k {
            check(
                &format!("{tag} m_k"),
                format!("{:?}", got.m_k),
                format!("{:?}", Some(want_mk)),
            );
        }
        check(&format!("{tag} rows"), got.rows.to_string(), want.rows.to_string());
        if let Some(want_cols) = want.cols {
            check(
                &format!("{tag} cols"),
                got.cols.to_string(),
                want_cols.to_string(),
            );
        }
        check(
            &format!("{tag} num_params"),
            got.num_params.to_string(),
            want.num_params.to_string(),
        );
        check(
            &format!("{tag} verdict"),
            format!("{:?}", got.verdict),
            format!("{:?}", MatrixVerdict::SurjectiveAll),
        );
    }
    diffs
}

fn run_one(
    algebras: &BTreeMap<SimpleType, LieAlgebra>,
    record: &OrbitRecord,
    opts: &RunOptions,
) -> OrbitRun {
    let lie = &algebras[&record.algebra];
    let start = Instant::now();
    let result = verify_orbit(
        lie,
        &Characteristic {
            labels: record.characteristic.clone(),
        },
        VerifyOptions {
            e_candidate: opts.e_candidate,
        },
    )
    .map(|outcome| {
        let expected_diff = if opts.skip_expected_diff {
            Vec::new()
        } else {
            diff_outcome(&outcome, &record.expected)
        };
        VerifiedOrbit {
            outcome,
            expected_diff,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    });
    OrbitRun {
        record: record.clone(),
        result,
    }
}

/// Sequential driver; also the baseline the benchmarks compare against.
pub fn verify_records_sequential(records: &[OrbitRecord], opts: &RunOptions) -> Vec<OrbitRun> {
    let algebras = build_algebras(records);
    records.iter().map(|r| run_one(&algebras, r, opts)).collect()
}

/// Parallel driver: one task per orbit on a dedicated pool sized by
/// `opts.jobs` (default: number of selected orbits).
#[cfg(feature = "parallel")]
pub fn verify_records(records: &[OrbitRecord], opts: &RunOptions) -> Vec<OrbitRun> {
    use rayon::prelude::*;
    if records.is_empty() {
        return Vec::new();
    }
    let jobs = opts.jobs.unwrap_or(records.len()).max(1);
    if jobs == 1 {
        return verify_records_sequential(records, opts);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.min(records.len()))
        .build()
        .expect("worker pool construction");
    let algebras = build_algebras(records);
    pool.install(|| {
        records
            .par_iter()
            .map(|r| run_one(&algebras, r, opts))
            .collect()
    })
}

/// Without the `parallel` feature the driver is the sequential one.
#[cfg(not(feature = "parallel"))]
pub fn verify_records(records: &[OrbitRecord], opts: &RunOptions) -> Vec<OrbitRun> {
    verify_records_sequential(records, opts)
}

/// Filter catalog records by optional algebra / ordinal.
pub fn select_records(
    records: &[OrbitRecord],
    algebra: Option<SimpleType>,
    ordinal: Option<u32>,
) -> Vec<OrbitRecord> {
    records
        .iter()
        .filter(|r| algebra.is_none_or(|a| r.algebra == a))
        .filter(|r| ordinal.is_none_or(|o| r.ordinal == o))
        .cloned()
        .collect()
}
