//! The `ips-dm/1` JSON document format.
//!
//! ```json
//! {"format":"ips-dm/1","n":4,"entries":[[0,1,2,2],[1,0,2,2],[2,2,0,2],[2,2,2,0]]}
//! ```
//!
//! Validation enforces symmetry and the zero diagonal bit-exactly.

use serde::{Deserialize, Serialize};

use super::{DistanceMatrix, MatrixError};
use crate::provenance::Provenance;

pub const DM_FORMAT: &str = "ips-dm/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DmDocRaw {
    format: String,
    n: usize,
    entries: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    provenance: Option<Provenance>,
}

/// A parsed distance-matrix document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmDocument {
    pub matrix: DistanceMatrix,
    pub provenance: Option<Provenance>,
}

impl DmDocument {
    pub fn new(matrix: DistanceMatrix) -> Self {
        DmDocument {
            matrix,
            provenance: None,
        }
    }

    pub fn with_provenance(matrix: DistanceMatrix, provenance: Provenance) -> Self {
        DmDocument {
            matrix,
            provenance: Some(provenance),
        }
    }

    fn to_raw(&self) -> DmDocRaw {
        DmDocRaw {
            format: DM_FORMAT.to_string(),
            n: self.matrix.n(),
            entries: self.matrix.rows(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("dm document serializes")
    }

    /// Canonical pretty rendering with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("dm document serializes");
        s.push('\n');
        s
    }
}

/// Parses and validates an `ips-dm/1` document.
pub fn parse_dm_document(input: &str) -> Result<DmDocument, MatrixError> {
    let raw: DmDocRaw =
        serde_json::from_str(input).map_err(|e| MatrixError::Parse(e.to_string()))?;
    if raw.format != DM_FORMAT {
        return Err(MatrixError::Parse(format!(
            "unsupported format {:?}, expected {:?}",
            raw.format, DM_FORMAT
        )));
    }
    if raw.entries.len() != raw.n || raw.entries.iter().any(|r| r.len() != raw.n) {
        return Err(MatrixError::NotSquare(raw.n));
    }
    let flat: Vec<u64> = raw.entries.into_iter().flatten().collect();
    let matrix = DistanceMatrix::new(raw.n, flat)?;
    Ok(DmDocument {
        matrix,
        provenance: raw.provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let dm = DistanceMatrix::from_upper(3, &[1, 2, 2]).unwrap();
        let doc = DmDocument::new(dm);
        let text = doc.to_json_string();
        let reparsed = parse_dm_document(&text).unwrap();
        assert_eq!(reparsed, doc);
        assert_eq!(reparsed.to_json_string(), text);
    }

    #[test]
    fn rejects_asymmetry_and_diagonal() {
        let bad = r#"{"format":"ips-dm/1","n":2,"entries":[[0,1],[2,0]]}"#;
        assert!(matches!(
            parse_dm_document(bad),
            Err(MatrixError::NotSymmetric(0, 1))
        ));
        let diag = r#"{"format":"ips-dm/1","n":2,"entries":[[1,1],[1,0]]}"#;
        assert!(matches!(
            parse_dm_document(diag),
            Err(MatrixError::NonzeroDiagonal(0))
        ));
        let shape = r#"{"format":"ips-dm/1","n":2,"entries":[[0,1]]}"#;
        assert!(matches!(
            parse_dm_document(shape),
            Err(MatrixError::NotSquare(2))
        ));
    }
}
