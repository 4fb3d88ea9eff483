//! The orbit catalog: the twenty distinguished non-regular nilpotent
//! orbits of E6, E7, E8 and F4 with their expected invariants, as
//! versioned machine-readable data. A default catalog is bundled into the
//! binary; a path override can point at an alternate transcription.

use crate::rootsystem::SimpleType;
use serde::Deserialize;

pub const CATALOG_SCHEMA_VERSION: u32 = 1;

/// Bundled catalog document.
pub fn bundled_catalog() -> &'static str {
    include_str!("../data/catalog.toml")
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unsupported schema version {0} (expected {CATALOG_SCHEMA_VERSION})")]
    SchemaVersion(u32),
    #[error("orbit {algebra} #{ordinal}: {message}")]
    Invalid {
        algebra: String,
        ordinal: u32,
        message: String,
    },
    #[error("expected {expected} orbits for {algebra}, found {found}")]
    CountMismatch {
        algebra: String,
        expected: usize,
        found: usize,
    },
    #[error("no orbit {1} in {0}")]
    NotFound(String, u32),
}

/// One expected matrix check: the weights, the shape and the parameter
/// count; `cols` only where the source data pins it.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ExpectedCheck {
    pub m_i: i64,
    pub m_k: Option<i64>,
    pub rows: usize,
    pub cols: Option<usize>,
    pub num_params: usize,
}

/// Expected invariants of one orbit.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ExpectedInvariants {
    pub dim_centralizer: usize,
    pub dim_centre: usize,
    pub centre_weights: Vec<i64>,
    pub m_r: i64,
    #[serde(default)]
    pub matrix_checks: Vec<ExpectedCheck>,
    pub verdict: String,
}

/// A catalog entry: the characteristic is the only input the engine
/// consumes; everything in `expected` is recomputed and diffed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub algebra: SimpleType,
    pub ordinal: u32,
    pub characteristic: Vec<i64>,
    pub expected: ExpectedInvariants,
}

#[derive(Debug, Deserialize)]
struct RawCatalog {
    schema_version: u32,
    #[serde(rename = "orbit")]
    orbits: Vec<RawOrbit>,
}

#[derive(Debug, Deserialize)]
struct RawOrbit {
    algebra: String,
    ordinal: u32,
    characteristic: Vec<i64>,
    expected: ExpectedInvariants,
}

/// Parse and validate a catalog document.
pub fn load_catalog(text: &str) -> Result<Vec<OrbitRecord>, CatalogError> {
    let raw: RawCatalog = toml::from_str(text)?;
    if raw.schema_version != CATALOG_SCHEMA_VERSION {
        return Err(CatalogError::SchemaVersion(raw.schema_version));
    }
    let mut records = Vec::with_capacity(raw.orbits.len());
    for o in raw.orbits {
        let invalid = |message: String| CatalogError::Invalid {
            algebra: o.algebra.clone(),
            ordinal: o.ordinal,
            message,
        };
        let algebra = SimpleType::parse(&o.algebra)
            .map_err(|e| invalid(e.to_string()))?;
        if o.characteristic.len() != algebra.rank {
            return Err(invalid(format!(
                "characteristic length {} != rank {}",
                o.characteristic.len(),
                algebra.rank
            )));
        }
        if o.characteristic.iter().any(|&v| v != 0 && v != 2) {
            return Err(invalid("characteristic labels must be 0 or 2".into()));
        }
        if o.characteristic.iter().all(|&v| v == 2) {
            return Err(invalid("regular orbit (all labels 2) is out of scope".into()));
        }
        let weights = &o.expected.centre_weights;
        if weights.iter().filter(|&&w| w == 2).count() != 1 {
            return Err(invalid("centre weights must contain 2 exactly once".into()));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(invalid("centre weights must be ascending".into()));
        }
        if weights.last() != Some(&o.expected.m_r) {
            return Err(invalid("m_r must equal the largest centre weight".into()));
        }
        if o.expected.verdict != "P_holds" {
            return Err(invalid(format!(
                "unsupported expected verdict {:?}",
                o.expected.verdict
            )));
        }
        records.push(OrbitRecord {
            algebra,
            ordinal: o.ordinal,
            characteristic: o.characteristic,
            expected: o.expected,
        });
    }
    for (name, expected) in [("E6", 2usize), ("E7", 5), ("E8", 10), ("F4", 3)] {
        let t = SimpleType::parse(name).unwrap();
        let found = records.iter().filter(|r| r.algebra == t).count();
        if found != expected {
            return Err(CatalogError::CountMismatch {
                algebra: name.into(),
                expected,
                found,
            });
        }
    }
    if records.len() != 20 {
        return Err(CatalogError::CountMismatch {
            algebra: "total".into(),
            expected: 20,
            found: records.len(),
        });
    }
    for r in &records {
        let dup = records
            .iter()
            .filter(|x| x.algebra == r.algebra && x.ordinal == r.ordinal)
            .count();
        if dup != 1 {
            return Err(CatalogError::Invalid {
                algebra: r.algebra.to_string(),
                ordinal: r.ordinal,
                message: "duplicate ordinal".into(),
            });
        }
    }
    Ok(records)
}

/// The bundled catalog, parsed. Panics only if the bundled data is broken,
/// which the test suite rules out.
pub fn load_default() -> Vec<OrbitRecord> {
    load_catalog(bundled_catalog()).expect("bundled catalog is valid")
}

/// Lookup by algebra and 1-based ordinal.
pub fn expected_for(
    records: &[OrbitRecord],
    algebra: SimpleType,
    ordinal: u32,
) -> Result<&OrbitRecord, CatalogError> {
    records
        .iter()
        .find(|r| r.algebra == algebra && r.ordinal == ordinal)
        .ok_or_else(|| CatalogError::NotFound(algebra.to_string(), ordinal))
}
