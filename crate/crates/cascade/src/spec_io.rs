//! Game spec documents (TOML) and report files.

use std::fs;
use std::path::{Path, PathBuf};

use cascade_core::{CostMatrix, GameSpec};
use serde::{Deserialize, Serialize};

/// The shipped reference document.
pub const BINARY_EXAMPLE: &str = include_str!("../data/binary_example.toml");

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("spec document: {0}")]
    Parse(String),

    #[error("spec document: {0}")]
    Invalid(#[from] cascade_core::Error),

    #[error("serialization: {0}")]
    Serialize(String),
}

/// On-disk layout. Costs are row-major with one row per source symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    u_size: usize,
    v_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w1_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w2_size: Option<usize>,
    prior: Vec<f64>,
    cost1: Vec<Vec<f64>>,
    cost2: Vec<Vec<f64>>,
    cost3: Vec<Vec<f64>>,
    r1: f64,
    r2: f64,
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> IoError {
    IoError::Invalid(cascade_core::Error::Validation { field: field.into(), reason: reason.into() })
}

fn matrix(name: &str, rows: &[Vec<f64>], u: usize, v: usize) -> Result<CostMatrix, IoError> {
    if rows.len() != u {
        return Err(invalid(name, format!("has {} rows, u_size is {u}", rows.len())));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != v {
            return Err(invalid(format!("{name}[{i}]"), format!("has {} entries, v_size is {v}", r.len())));
        }
    }
    Ok(CostMatrix::from_rows(rows)?)
}

/// Parses and validates a spec document. Validation errors name the
/// offending field, e.g. `cost3[1]` or `r2`.
pub fn load_spec(text: &str) -> Result<GameSpec, IoError> {
    let doc: SpecDoc = toml::from_str(text).map_err(|e| IoError::Parse(e.message().to_string() + &span_hint(&e)))?;
    let (u, v) = (doc.u_size, doc.v_size);
    let spec = GameSpec {
        u_size: u,
        v_size: v,
        w1_size: doc.w1_size.unwrap_or(u),
        w2_size: doc.w2_size.unwrap_or(u),
        prior: doc.prior,
        cost1: matrix("cost1", &doc.cost1, u, v)?,
        cost2: matrix("cost2", &doc.cost2, u, v)?,
        cost3: matrix("cost3", &doc.cost3, u, v)?,
        r1: doc.r1,
        r2: doc.r2,
    };
    spec.validate()?;
    Ok(spec)
}

fn span_hint(e: &toml::de::Error) -> String {
    e.span().map(|s| format!(" (at byte {})", s.start)).unwrap_or_default()
}

pub fn save_spec(spec: &GameSpec) -> String {
    let doc = SpecDoc {
        u_size: spec.u_size,
        v_size: spec.v_size,
        w1_size: Some(spec.w1_size),
        w2_size: Some(spec.w2_size),
        prior: spec.prior.clone(),
        cost1: spec.cost1.to_rows(),
        cost2: spec.cost2.to_rows(),
        cost3: spec.cost3.to_rows(),
        r1: spec.r1,
        r2: spec.r2,
    };
    toml::to_string(&doc).expect("spec documents always serialize")
}

pub fn load_spec_file(path: &Path) -> Result<GameSpec, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })?;
    load_spec(&text)
}

pub fn write_file(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Write { path: path.into(), source })
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, IoError> {
    serde_json::to_string_pretty(value).map_err(|e| IoError::Serialize(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_is_the_reference_game() {
        assert_eq!(load_spec(BINARY_EXAMPLE).unwrap(), GameSpec::binary_example());
    }

    #[test]
    fn round_trip() {
        let s = GameSpec::binary_example();
        assert_eq!(load_spec(&save_spec(&s)).unwrap(), s);
    }

    #[test]
    fn field_paths() {
        let bad = BINARY_EXAMPLE.replace("cost3 = [[9.0, 0.0], [4.0, 10.0]]", "cost3 = [[9.0, 0.0], [4.0]]");
        let e = load_spec(&bad).unwrap_err().to_string();
        assert!(e.contains("cost3[1]"), "{e}");
        let bad = BINARY_EXAMPLE.replace("r2 = 1.0", "r2 = -1.0");
        assert!(load_spec(&bad).unwrap_err().to_string().contains("r2"));
        let bad = BINARY_EXAMPLE.replace("prior = [0.6, 0.4]", "prior = [0.6, 0.5]");
        assert!(load_spec(&bad).unwrap_err().to_string().contains("prior"));
    }

    #[test]
    fn optional_sizes_default_to_source() {
        let text = BINARY_EXAMPLE.replace("w1_size = 2\n", "").replace("w2_size = 2\n", "");
        assert_eq!(load_spec(&text).unwrap(), GameSpec::binary_example());
    }
}
