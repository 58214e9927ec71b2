//! JSON formats for quivers and decomposition specs.
//!
//! A quiver file looks like
//!
//! ```json
//! {
//!   "vertices": [{"id": "s", "class": "orthogonal"}, {"id": "u", "class": "gl"}, {"id": "u*", "class": "gl"}],
//!   "pairs": [["u", "u*"]],
//!   "arrows": [{"id": "a", "src": "s", "dst": "u"}],
//!   "dims": {"s": 2, "u": 1, "u*": 1}
//! }
//! ```
//!
//! `class` is one of `orthogonal`, `symplectic`, `gl`; every `gl` vertex occurs
//! in exactly one pair. `pairs` and `dims` may be omitted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_model::DecompositionSpec;
use crate::quiver::{validate_dimension, DimVector, SymQuiver, VertexClass, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub class: VertexKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
    #[serde(default)]
    pub arrows: Vec<ArrowEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<BTreeMap<String, usize>>,
}

impl QuiverFile {
    pub fn to_quiver(&self) -> Result<SymQuiver> {
        let mut b = SymQuiver::builder();
        for v in &self.vertices {
            b = b.vertex(&v.id, v.class);
        }
        for (u, us) in &self.pairs {
            b = b.pair(u, us);
        }
        for a in &self.arrows {
            b = b.arrow(&a.id, &a.src, &a.dst);
        }
        b.build()
    }

    /// The quiver and, when `dims` is present, its validated dimension vector.
    pub fn resolve(&self) -> Result<(SymQuiver, Option<DimVector>)> {
        let q = self.to_quiver()?;
        let alpha = self.dims.as_ref().map(|d| validate_dimension(&q, d)).transpose()?;
        Ok((q, alpha))
    }

    pub fn from_quiver(q: &SymQuiver, alpha: Option<&DimVector>) -> Self {
        let pairs = q
            .vertices()
            .iter()
            .filter_map(|v| match v.class {
                VertexClass::GlPair { partner, starred: false } => {
                    Some((v.id.clone(), q.vertices()[partner].id.clone()))
                }
                _ => None,
            })
            .collect();
        QuiverFile {
            vertices: q
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    class: v.class.kind(),
                })
                .collect(),
            pairs,
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowEntry {
                    id: a.id.clone(),
                    src: q.vertices()[a.src].id.clone(),
                    dst: q.vertices()[a.dst].id.clone(),
                })
                .collect(),
            dims: alpha.map(|a| a.to_map(q)),
        }
    }
}

pub fn parse_quiver_file(text: &str) -> Result<QuiverFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates a quiver file.
pub fn parse_quiver(text: &str) -> Result<(SymQuiver, Option<DimVector>)> {
    parse_quiver_file(text)?.resolve()
}

/// Parses and validates a decomposition spec.
pub fn parse_spec(text: &str) -> Result<DecompositionSpec> {
    let spec: DecompositionSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}
