//! The on-disk pair document: dimensions, optional scalar context, and the
//! two involution matrices as scalar strings.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use revmap_core::{ExactMatrix, InvolutionPair, Scalar};

use crate::CliError;

/// Input schema. Scalar strings are `p/q` or `p/q+r/s*sqrt(d)`; any `d`
/// appearing in entries must match `scalar_context`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_context: Option<u64>,
    pub phi1: Vec<Vec<String>>,
    pub phi2: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<String>,
}

/// A loaded document together with its parsed matrices and content digest.
pub struct LoadedPair {
    pub document: PairDocument,
    pub phi1: ExactMatrix,
    pub phi2: ExactMatrix,
    pub file: String,
    pub sha256: String,
}

impl LoadedPair {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let document: PairDocument = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::Input(format!("{}: invalid pair document: {e}", path.display())))?;
        let sha256 = hex::encode(Sha256::digest(&bytes));
        let parse_matrix = |name: &str, rows: &[Vec<String>]| -> Result<ExactMatrix, CliError> {
            if rows.len() != document.dim || rows.iter().any(|r| r.len() != document.dim) {
                return Err(CliError::Input(format!(
                    "{name} must be a {0}x{0} matrix",
                    document.dim
                )));
            }
            let mut parsed: Vec<Vec<Scalar>> = Vec::with_capacity(rows.len());
            for row in rows {
                let mut out = Vec::with_capacity(row.len());
                for entry in row {
                    let s: Scalar = entry
                        .parse()
                        .map_err(|e| CliError::Input(format!("{name} entry `{entry}`: {e}")))?;
                    if s.context() != 0 && Some(s.context()) != document.scalar_context {
                        return Err(CliError::Input(format!(
                            "{name} entry `{entry}` uses sqrt({}) but scalar_context is {:?}",
                            s.context(),
                            document.scalar_context
                        )));
                    }
                    out.push(s);
                }
                parsed.push(out);
            }
            Ok(ExactMatrix::from_rows(parsed))
        };
        let phi1 = parse_matrix("phi1", &document.phi1)?;
        let phi2 = parse_matrix("phi2", &document.phi2)?;
        Ok(LoadedPair {
            document,
            phi1,
            phi2,
            file: path.display().to_string(),
            sha256,
        })
    }

    /// Validated involution pair; failing the involution law is a
    /// mathematical error, not an input error.
    pub fn to_pair(&self) -> Result<InvolutionPair, CliError> {
        InvolutionPair::new(self.phi1.clone(), self.phi2.clone()).map_err(CliError::Math)
    }
}

pub fn matrix_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|s| s.to_string()).collect())
        .collect()
}

pub fn vector_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn parse_point(text: &str, dim: usize) -> Result<Vec<Scalar>, CliError> {
    let coords: Result<Vec<Scalar>, _> = text.split(',').map(|c| c.trim().parse()).collect();
    let coords = coords.map_err(|e| CliError::Input(format!("invalid point `{text}`: {e}")))?;
    if coords.len() != dim {
        return Err(CliError::Input(format!(
            "point `{text}` has {} coordinates, expected {dim}",
            coords.len()
        )));
    }
    Ok(coords)
}
