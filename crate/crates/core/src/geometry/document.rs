//! The `ips-planar/1` JSON document format.
//!
//! ```json
//! {"format":"ips-planar/1","q":15,"points":[{"x":"-7/2","y":"0"},...]}
//! ```
//!
//! `y` is the coefficient of `sqrt(q)`. Parsing rejects unknown formats,
//! duplicate points and non-squarefree `q`; emission is canonical, so
//! emitted documents round-trip byte-identically.

use serde::{Deserialize, Serialize};

use super::{GeometryError, PlanarPoint, PlanarPointSet};
use crate::provenance::Provenance;

pub const PLANAR_FORMAT: &str = "ips-planar/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanarDocRaw {
    format: String,
    q: u64,
    points: Vec<PlanarPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    provenance: Option<Provenance>,
}

/// A parsed planar point-set document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDocument {
    pub set: PlanarPointSet,
    pub provenance: Option<Provenance>,
}

impl PlanarDocument {
    pub fn new(set: PlanarPointSet) -> Self {
        PlanarDocument {
            set,
            provenance: None,
        }
    }

    pub fn with_provenance(set: PlanarPointSet, provenance: Provenance) -> Self {
        PlanarDocument {
            set,
            provenance: Some(provenance),
        }
    }

    fn to_raw(&self) -> PlanarDocRaw {
        PlanarDocRaw {
            format: PLANAR_FORMAT.to_string(),
            q: self.set.radicand(),
            points: self.set.points().to_vec(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("planar document serializes")
    }

    /// Canonical pretty rendering with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_raw()).expect("planar document serializes");
        s.push('\n');
        s
    }
}

/// Parses and validates an `ips-planar/1` document.
pub fn parse_planar_document(input: &str) -> Result<PlanarDocument, GeometryError> {
    let raw: PlanarDocRaw =
        serde_json::from_str(input).map_err(|e| GeometryError::Parse(e.to_string()))?;
    if raw.format != PLANAR_FORMAT {
        return Err(GeometryError::Parse(format!(
            "unsupported format {:?}, expected {:?}",
            raw.format, PLANAR_FORMAT
        )));
    }
    let set = PlanarPointSet::new(raw.q, raw.points)?;
    Ok(PlanarDocument {
        set,
        provenance: raw.provenance,
    })
}
