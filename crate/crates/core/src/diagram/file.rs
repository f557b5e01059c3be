use serde::{Deserialize, Serialize};

use super::VertexKind;

/// On-disk diagram format. All references are string ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub regions: Vec<String>,
    pub semiarcs: Vec<SemiArcEntry>,
    /// Semi-arcs that are circle components.
    #[serde(default)]
    pub closed: Vec<String>,
    #[serde(default)]
    pub crossings: Vec<CrossingEntry>,
    #[serde(default)]
    pub vertices: Vec<VertexEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiArcEntry {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingEntry {
    pub id: String,
    pub sign: i8,
    pub under_in: String,
    pub under_out: String,
    pub over_in: String,
    pub over_out: String,
    pub weight_region: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub kind: VertexKind,
    pub a: String,
    pub b: String,
    pub c: String,
    pub weight_region: String,
}
