//! Provenance block attached to emitted documents: which construction
//! produced an artifact and with what parameters.

use serde::{Deserialize, Serialize};

/// Construction parameters recorded alongside emitted point sets and
/// distance matrices. All fields optional; only those relevant to the
/// producing operation are set.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Provenance {
    /// Fan-construction parameter `k`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub construction_k: Option<u32>,
    /// Point labels kept after trimming (`"M+{..}"`, `"M-{..}"`, `"N"`).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kept_points: Option<Vec<String>>,
    /// Uniform dilation factor applied to all distances.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dilation: Option<u64>,
    /// Ambient dimension targeted by a blow-up.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target_dim: Option<u32>,
    /// Side length of the simplex used in a blow-up.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub simplex_side: Option<u64>,
    /// Whether the requested distance ended up minimal and unique.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unique_min_achieved: Option<bool>,
}

impl Provenance {
    pub fn for_construction(k: u32) -> Self {
        Provenance {
            construction_k: Some(k),
            ..Default::default()
        }
    }
}
