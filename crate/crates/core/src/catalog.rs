//! Machine-readable catalog of the standard triples and the compact duals
//! they generate, with a disposition for each row.
//!
//! The rows are a faithful transcript of the source classification tables,
//! including their apparent typos: anything that looks inconsistent carries
//! an `anomaly_note` instead of a silent correction. Rows whose disposition
//! is `computed_here` point at a chain this crate can build and certify;
//! the rest record why no computation is needed (isotropy irreducible,
//! standard sphere, or settled in the literature) or why no construction is
//! shipped (exceptional embeddings).
//!
//! The catalog ships as a versioned JSON file embedded in the crate (see
//! `data/catalog.json`); [`save`] and [`load`] round-trip it bit-exactly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Schema version of the shipped catalog file.
pub const CATALOG_VERSION: &str = "v1";

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// One row of the standard-triple table, verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub g: String,
    pub h: String,
    pub l: String,
    pub h_cap_l: String,
    pub anomaly_note: Option<String>,
}

/// How a catalog row is settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disposition {
    IsotropyIrreducible,
    HMaximal,
    StandardSphere,
    Literature,
    ComputedHere,
    NotRealized,
}

impl std::fmt::Display for Disposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Disposition::IsotropyIrreducible => "isotropy_irreducible",
            Disposition::HMaximal => "h_maximal",
            Disposition::StandardSphere => "standard_sphere",
            Disposition::Literature => "literature",
            Disposition::ComputedHere => "computed_here",
            Disposition::NotRealized => "not_realized",
        };
        f.write_str(s)
    }
}

/// One row of the compact-dual table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoSpaceRecord {
    pub row_index: u8,
    pub ko_space: String,
    /// The quotient by the subgroup with compact factors removed.
    pub reduced_space: String,
    pub compact_dual: String,
    pub reduced_compact_dual: String,
    pub disposition: Disposition,
    /// Short justification for the disposition.
    pub reason: String,
    /// Label of a buildable chain, when one is shipped.
    pub chain_ref: Option<String>,
    pub n_constraint: Option<String>,
    pub anomaly_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: String,
    pub standard_triples: Vec<TripleRecord>,
    pub ko_spaces: Vec<KoSpaceRecord>,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn shipped() -> Catalog {
        serde_json::from_str(CATALOG_JSON).expect("embedded catalog must parse")
    }

    /// Validates the structural invariants: versioned, 10 triple rows, 12
    /// dual rows with unique indices, and a chain reference on every row
    /// that claims to be computed here.
    pub fn validate(&self) -> Result<()> {
        if self.version != CATALOG_VERSION {
            return Err(Error::InvalidParameter(format!(
                "catalog version {} unsupported, expected {CATALOG_VERSION}",
                self.version
            )));
        }
        if self.standard_triples.len() != 10 {
            return Err(Error::InvalidParameter(format!(
                "expected 10 standard-triple rows, found {}",
                self.standard_triples.len()
            )));
        }
        if self.ko_spaces.len() != 12 {
            return Err(Error::InvalidParameter(format!(
                "expected 12 dual-space rows, found {}",
                self.ko_spaces.len()
            )));
        }
        for (i, row) in self.ko_spaces.iter().enumerate() {
            if row.row_index as usize != i + 1 {
                return Err(Error::InvalidParameter(format!(
                    "row index {} out of order at position {i}",
                    row.row_index
                )));
            }
            if row.disposition == Disposition::ComputedHere && row.chain_ref.is_none() {
                return Err(Error::InvalidParameter(format!(
                    "row {} is computed_here but has no chain_ref",
                    row.row_index
                )));
            }
        }
        for row in &self.standard_triples {
            if row.g.is_empty() || row.h.is_empty() || row.l.is_empty() || row.h_cap_l.is_empty() {
                return Err(Error::InvalidParameter(
                    "standard-triple row with an empty label".into(),
                ));
            }
        }
        Ok(())
    }
}

/// The verbatim standard-triple table.
pub fn list_standard_triples() -> Vec<TripleRecord> {
    Catalog::shipped().standard_triples
}

/// The compact-dual table with dispositions.
pub fn list_ko_spaces() -> Vec<KoSpaceRecord> {
    Catalog::shipped().ko_spaces
}

/// Disposition and its recorded justification for a row.
pub fn classify_case(record: &KoSpaceRecord) -> (Disposition, &str) {
    (record.disposition, record.reason.as_str())
}

/// Serializes a catalog to pretty JSON (exactly the shipped format).
pub fn to_json(catalog: &Catalog) -> Result<String> {
    let mut s = serde_json::to_string_pretty(catalog)?;
    s.push('\n');
    Ok(s)
}

pub fn save(catalog: &Catalog, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(catalog)?)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
