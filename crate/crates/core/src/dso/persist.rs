//! On-disk form of a [`Dso`]: a one-line JSON header, then the JSON body.
//!
//! The header records the format version, `(n, L, f)`, the weight type, the
//! checksum of the input graph and the checksum of the body bytes.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::Graph;
use crate::weight::Weight;

use super::Dso;

pub const FORMAT_VERSION: u32 = 1;
const FORMAT_NAME: &str = "ftpaths-dso";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsoHeader {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub l: usize,
    pub f: usize,
    pub weight_type: String,
    pub graph_sha256: String,
    pub body_sha256: String,
}

#[derive(Debug, Error)]
pub enum PersistError {
    #[error("not a DSO file: {0}")]
    BadHeader(String),
    #[error("unsupported DSO format version {0}")]
    Version(u32),
    #[error("DSO stores {found} weights, expected {expected}")]
    WeightType { expected: String, found: String },
    #[error("{what} checksum mismatch")]
    ChecksumMismatch { what: &'static str },
    #[error("malformed DSO body: {0}")]
    Json(#[from] serde_json::Error),
}

fn hex_sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of a canonical listing of `g`: `n m` then one `u v w` line per
/// edge in adjacency order.
pub fn graph_checksum<W: Weight>(g: &Graph<W>) -> String {
    let mut text = format!("{} {}\n", g.n(), g.m());
    for (u, v, w) in g.edges() {
        text.push_str(&format!("{u} {v} {w}\n"));
    }
    hex_sha256(text.as_bytes())
}

fn weight_type<W>() -> String {
    std::any::type_name::<W>().to_string()
}

/// Serializes `dso`; the output ends with a newline.
pub fn save_dso<W: Weight + Serialize>(dso: &Dso<W>) -> Result<String, PersistError> {
    let body = serde_json::to_string(dso)?;
    let header = DsoHeader {
        format: FORMAT_NAME.to_string(),
        version: FORMAT_VERSION,
        n: dso.n,
        l: dso.l,
        f: dso.f,
        weight_type: weight_type::<W>(),
        graph_sha256: dso.graph_sha256.clone(),
        body_sha256: hex_sha256(body.as_bytes()),
    };
    Ok(format!("{}\n{}\n", serde_json::to_string(&header)?, body))
}

/// Parses a file written by [`save_dso`]. With `graph_sha256` set, the
/// stored graph checksum must match it.
pub fn load_dso<W: Weight + DeserializeOwned>(
    text: &str,
    graph_sha256: Option<&str>,
) -> Result<(DsoHeader, Dso<W>), PersistError> {
    let (head, body) = text
        .split_once('\n')
        .ok_or_else(|| PersistError::BadHeader("missing header line".into()))?;
    let header: DsoHeader = serde_json::from_str(head).map_err(|e| PersistError::BadHeader(e.to_string()))?;
    if header.format != FORMAT_NAME {
        return Err(PersistError::BadHeader(format!("format {:?}", header.format)));
    }
    if header.version != FORMAT_VERSION {
        return Err(PersistError::Version(header.version));
    }
    if header.weight_type != weight_type::<W>() {
        return Err(PersistError::WeightType {
            expected: weight_type::<W>(),
            found: header.weight_type,
        });
    }
    let body = body.strip_suffix('\n').unwrap_or(body);
    if hex_sha256(body.as_bytes()) != header.body_sha256 {
        return Err(PersistError::ChecksumMismatch { what: "body" });
    }
    if graph_sha256.is_some_and(|g| g != header.graph_sha256) {
        return Err(PersistError::ChecksumMismatch { what: "graph" });
    }
    let mut dso: Dso<W> = serde_json::from_str(body)?;
    if (dso.n, dso.l, dso.f) != (header.n, header.l, header.f) || dso.graph_sha256 != header.graph_sha256 {
        return Err(PersistError::BadHeader("header disagrees with body".into()));
    }
    dso.trees.reindex();
    Ok((header, dso))
}
