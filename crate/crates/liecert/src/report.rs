//! Report assembly: a machine-readable JSON document and a human-readable
//! markdown narration of a verification run.
//!
//! Two runs with the same configuration produce byte-identical diffable
//! bodies; wall-clock timings live in the dedicated `elapsed_ms` fields,
//! which [`Report::diffable_body_json`] strips.

use crate::propp::{CheckMethod, MatrixVerdict};
use crate::run::OrbitRun;
use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine_version: String,
    pub orbits: Vec<OrbitReport>,
    pub summary: Summary,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub certified: usize,
}

#[derive(Debug, Serialize)]
pub struct OrbitReport {
    pub algebra: String,
    pub ordinal: u32,
    pub characteristic: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<ComputedBlock>,
    pub matrices: Vec<MatrixReport>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected_diff: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct ComputedBlock {
    pub dim_centralizer: usize,
    pub dim_centre: usize,
    pub centre_weights: Vec<i64>,
    pub m_r: i64,
}

#[derive(Debug, Serialize)]
pub struct MatrixReport {
    pub l: usize,
    pub m_i: i64,
    pub m_k: Option<i64>,
    pub rows: usize,
    pub cols: usize,
    pub num_params: usize,
    pub method: CheckMethod,
    pub verdict: String,
    pub redundant: bool,
}

fn verdict_str(v: MatrixVerdict) -> String {
    match v {
        MatrixVerdict::SurjectiveAll => "surjective_all".into(),
        MatrixVerdict::NotSurjective => "not_surjective".into(),
    }
}

/// Assemble the report. Redundant top checks are included only when
/// `include_redundant` is set, so the default matrix list matches the
/// nontrivial census.
pub fn build_report(runs: &[OrbitRun], include_redundant: bool) -> Report {
    let mut orbits = Vec::with_capacity(runs.len());
    let mut certified = 0usize;
    for run in runs {
        let algebra = run.record.algebra.to_string();
        match &run.result {
            Ok(v) => {
                if v.outcome.property_holds {
                    certified += 1;
                }
                let matrices = v
                    .outcome
                    .checks
                    .iter()
                    .filter(|c| include_redundant || !c.redundant)
                    .map(|c| MatrixReport {
                        l: c.l,
                        m_i: c.m_i,
                        m_k: c.m_k,
                        rows: c.rows,
                        cols: c.cols,
                        num_params: c.num_params,
                        method: c.method,
                        verdict: verdict_str(c.verdict),
                        redundant: c.redundant,
                    })
                    .collect();
                orbits.push(OrbitReport {
                    algebra,
                    ordinal: run.record.ordinal,
                    characteristic: run.record.characteristic.clone(),
                    computed: Some(ComputedBlock {
                        dim_centralizer: v.outcome.dim_centralizer,
                        dim_centre: v.outcome.dim_centre,
                        centre_weights: v.outcome.centre_weights.clone(),
                        m_r: v.outcome.m_r,
                    }),
                    matrices,
                    verdict: if v.outcome.property_holds {
                        "P_holds".into()
                    } else {
                        "not_certified".into()
                    },
                    error: None,
                    expected_diff: v.expected_diff.clone(),
                    elapsed_ms: v.elapsed_ms,
                });
            }
            Err(e) => orbits.push(OrbitReport {
                algebra,
                ordinal: run.record.ordinal,
                characteristic: run.record.characteristic.clone(),
                computed: None,
                matrices: Vec::new(),
                verdict: "error".into(),
                error: Some(e.to_string()),
                expected_diff: Vec::new(),
                elapsed_ms: 0,
            }),
        }
    }
    Report {
        schema_version: REPORT_SCHEMA_VERSION,
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        orbits,
        summary: Summary {
            total: runs.len(),
            certified,
        },
    }
}

impl Report {
    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// The report with every `elapsed_ms` field removed: the part that two
    /// identically configured runs reproduce byte for byte.
    pub fn diffable_body_json(&self) -> String {
        let mut value: serde_json::Value =
            serde_json::to_value(self).expect("report serialization");
        strip_key(&mut value, "elapsed_ms");
        let mut s = serde_json::to_string_pretty(&value).expect("report serialization");
        s.push('\n');
        s
    }

    /// Per-orbit narration: dimensions, weights, matrix verdicts, and the
    /// conclusion line for each orbit.
    pub fn to_markdown(&self) -> String {
        use std::fmt::Write;
        let mut md = String::new();
        writeln!(md, "# Property (P) verification report\n").unwrap();
        writeln!(
            md,
            "Engine {} / report schema {}.\n",
            self.engine_version, self.schema_version
        )
        .unwrap();
        for o in &self.orbits {
            writeln!(md, "## {} orbit {}\n", o.algebra, o.ordinal).unwrap();
            writeln!(md, "- characteristic: {:?}", o.characteristic).unwrap();
            if let Some(c) = &o.computed {
                writeln!(md, "- dim of the centralizer: {}", c.dim_centralizer).unwrap();
                writeln!(
                    md,
                    "- dim of its centre: {} with weights {:?}",
                    c.dim_centre, c.centre_weights
                )
                .unwrap();
                writeln!(md, "- top weight m_r = {}", c.m_r).unwrap();
                if o.matrices.is_empty() {
                    writeln!(md, "- no matrices to study").unwrap();
                } else {
                    writeln!(md, "- matrices studied:").unwrap();
                    for m in &o.matrices {
                        let mk = m
                            .m_k
                            .map_or("absent".to_string(), |v| v.to_string());
                        writeln!(
                            md,
                            "  - l = {}: m_i = {}, m_k = {}, shape {}x{}, {} parameter{}, {} -> {}{}",
                            m.l,
                            m.m_i,
                            mk,
                            m.rows,
                            m.cols,
                            m.num_params,
                            if m.num_params == 1 { "" } else { "s" },
                            match m.method {
                                CheckMethod::Rank => "exact rank",
                                CheckMethod::Groebner => "minor ideal",
                                CheckMethod::ZeroCase => "zero case",
                            },
                            m.verdict,
                            if m.redundant { " (redundant)" } else { "" },
                        )
                        .unwrap();
                    }
                }
            }
            if let Some(e) = &o.error {
                writeln!(md, "- pipeline error: {e}").unwrap();
            }
            if !o.expected_diff.is_empty() {
                writeln!(md, "- expected-value mismatches:").unwrap();
                for d in &o.expected_diff {
                    writeln!(md, "  - {d}").unwrap();
                }
            }
            let conclusion = match o.verdict.as_str() {
                "P_holds" => "the orbit satisfies property (P).",
                "not_certified" => "property (P) is NOT certified for this orbit.",
                _ => "the pipeline failed before a verdict.",
            };
            writeln!(md, "\nConclusion: {conclusion}\n").unwrap();
        }
        writeln!(
            md,
            "Summary: {}/{} orbits certified.",
            self.summary.certified, self.summary.total
        )
        .unwrap();
        md
    }
}

fn strip_key(value: &mut serde_json::Value, key: &str) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove(key);
            for v in map.values_mut() {
                strip_key(v, key);
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                strip_key(v, key);
            }
        }
        _ => {}
    }
}
