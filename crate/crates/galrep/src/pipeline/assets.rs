//! Golden table assets: loading, schema validation, and checksums.
//!
//! The asset directory holds `table1.json` .. `table5.json`,
//! `quintics.json`, `sextics.json`, `curve.json`, and a required
//! `manifest.json` with the schema version and a sha256 per file. All
//! integers in polynomial coefficient arrays are decimal strings, constant
//! term first.

use crate::algebra::IntPoly;
use crate::elliptic::CurveQ;
use crate::gl2::F5;
use crate::hecke::EigenSystem;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use thiserror::Error;

pub const ASSET_SCHEMA: &str = "galrep-assets/1";

#[derive(Debug, Error)]
pub enum AssetError {
    #[error("io error reading {0}: {1}")]
    Io(String, String),
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error("checksum mismatch for {0}")]
    Checksum(String),
    #[error("schema error in {0}: {1}")]
    Schema(String, String),
}

#[derive(Debug, Deserialize)]
struct Manifest {
    schema: String,
    checksums: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1 {
    pub p: u64,
    pub level: u64,
    pub systems: Vec<EigenSystem>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceRow {
    pub name: String,
    pub entries: BTreeMap<u64, F5>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2 {
    pub p: u64,
    pub level: u64,
    pub rows: Vec<TraceRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderRow {
    pub name: String,
    pub entries: BTreeMap<u64, BTreeSet<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table3 {
    pub rows: Vec<OrderRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedPoly {
    pub name: String,
    pub coeffs: IntPoly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedPolys {
    pub polys: Vec<NamedPoly>,
}

/// Everything the pipeline consumes, schema-validated.
#[derive(Clone, Debug)]
pub struct AssetBundle {
    pub table1: Table1,
    pub table2: Table2,
    pub table3: Table3,
    pub table4: NamedPolys,
    pub table5: NamedPoly,
    pub quintics: NamedPolys,
    pub sextics: NamedPolys,
    pub curve: CurveQ,
}

const ASSET_FILES: [&str; 8] = [
    "table1.json",
    "table2.json",
    "table3.json",
    "table4.json",
    "table5.json",
    "quintics.json",
    "sextics.json",
    "curve.json",
];

impl AssetBundle {
    /// Loads and validates an asset directory (manifest checksums first,
    /// then per-file schema checks).
    pub fn load_dir(dir: &Path) -> Result<AssetBundle, AssetError> {
        let read = |name: &str| -> Result<Vec<u8>, AssetError> {
            std::fs::read(dir.join(name)).map_err(|e| AssetError::Io(name.into(), e.to_string()))
        };
        let manifest: Manifest = serde_json::from_slice(&read("manifest.json")?)
            .map_err(|e| AssetError::Manifest(e.to_string()))?;
        if manifest.schema != ASSET_SCHEMA {
            return Err(AssetError::Manifest(format!(
                "unsupported schema {:?}, expected {ASSET_SCHEMA:?}",
                manifest.schema
            )));
        }
        let mut raw: BTreeMap<&str, Vec<u8>> = BTreeMap::new();
        for name in ASSET_FILES {
            let expected = manifest
                .checksums
                .get(name)
                .ok_or_else(|| AssetError::Manifest(format!("{name} missing from manifest")))?;
            let data = read(name)?;
            let got = hex::encode(Sha256::digest(&data));
            if &got != expected {
                return Err(AssetError::Checksum(name.into()));
            }
            raw.insert(name, data);
        }
        let parse = |name: &str| -> Result<serde_json::Value, AssetError> {
            serde_json::from_slice(&raw[name])
                .map_err(|e| AssetError::Schema(name.into(), e.to_string()))
        };
        let table1: Table1 = from_value("table1.json", parse("table1.json")?)?;
        let table2: Table2 = from_value("table2.json", parse("table2.json")?)?;
        let table3: Table3 = from_value("table3.json", parse("table3.json")?)?;
        let table4: NamedPolys = from_value("table4.json", parse("table4.json")?)?;
        let table5: NamedPoly = from_value("table5.json", parse("table5.json")?)?;
        let quintics: NamedPolys = from_value("quintics.json", parse("quintics.json")?)?;
        let sextics: NamedPolys = from_value("sextics.json", parse("sextics.json")?)?;
        let curve: CurveQ = from_value("curve.json", parse("curve.json")?)?;
        let bundle = AssetBundle {
            table1,
            table2,
            table3,
            table4,
            table5,
            quintics,
            sextics,
            curve,
        };
        bundle.validate()?;
        Ok(bundle)
    }

    fn validate(&self) -> Result<(), AssetError> {
        let schema_err = |file: &str, msg: String| Err(AssetError::Schema(file.into(), msg));
        if self.table1.p != 5 || self.table1.level != 163 {
            return schema_err("table1.json", "expected p = 5, level = 163".into());
        }
        if self.table1.systems.len() != 6 {
            return schema_err(
                "table1.json",
                format!("expected 6 systems, got {}", self.table1.systems.len()),
            );
        }
        let primes: BTreeSet<u64> = self.table1.systems[0].entries.keys().copied().collect();
        for l in &primes {
            if !crate::algebra::is_prime_u64(*l) || *l == 5 {
                return schema_err("table1.json", format!("bad prime {l}"));
            }
        }
        for s in &self.table1.systems {
            if s.entries.keys().copied().collect::<BTreeSet<_>>() != primes {
                return schema_err("table1.json", format!("system {} prime mismatch", s.name));
            }
        }
        if self.table2.rows.len() != 3 || self.table3.rows.len() != 3 {
            return schema_err("table2.json/table3.json", "expected 3 rows each".into());
        }
        for (np, file, deg) in [
            (&self.quintics, "quintics.json", 5usize),
            (&self.sextics, "sextics.json", 6),
        ] {
            if np.polys.len() != 3 {
                return schema_err(file, "expected 3 polynomials".into());
            }
            for p in &np.polys {
                if p.coeffs.degree() != Some(deg) || !p.coeffs.is_monic() {
                    return schema_err(file, format!("{} must be monic of degree {deg}", p.name));
                }
            }
        }
        if self.table4.polys.len() != 2 {
            return schema_err("table4.json", "expected 2 polynomials".into());
        }
        for p in self.table4.polys.iter().chain(std::iter::once(&self.table5)) {
            if p.coeffs.degree() != Some(24) || !p.coeffs.is_monic() {
                return schema_err(
                    "table4.json/table5.json",
                    format!("{} must be monic of degree 24", p.name),
                );
            }
        }
        Ok(())
    }

    /// Primes shared by the eigenvalue systems, below the given bound.
    pub fn table_primes(&self, bound: u64) -> Vec<u64> {
        self.table1.systems[0]
            .entries
            .keys()
            .copied()
            .filter(|&l| l < bound)
            .collect()
    }
}

fn from_value<T: serde::de::DeserializeOwned>(
    file: &str,
    v: serde_json::Value,
) -> Result<T, AssetError> {
    serde_json::from_value(v).map_err(|e| AssetError::Schema(file.into(), e.to_string()))
}
