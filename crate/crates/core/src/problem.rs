//! JSON problem files.
//!
//! ```json
//! {
//!   "p": 5,
//!   "precision": 1000,
//!   "generators": [[["5", "0"], ["0", "1"]]],
//!   "generators_b": [[["25", "0"], ["0", "1"]]],
//!   "query": [["25", "0"], ["0", "1"]],
//!   "vertex": {"level": 2, "offset": "5"}
//! }
//! ```
//!
//! Entries are rational strings; `precision` defaults to 1000 digits.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::bttree::{BruhatTitsTree, Vertex};
use crate::error::{Error, Result};
use crate::padic::PadicContext;
use crate::projlinear::ProjMatrix;

pub const DEFAULT_PRECISION: u32 = 1000;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    p: u64,
    precision: Option<u32>,
    #[serde(default)]
    generators: Vec<Value>,
    generators_b: Option<Vec<Value>>,
    query: Option<Value>,
    vertex: Option<RawVertex>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    level: i64,
    offset: Value,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub tree: BruhatTitsTree,
    pub generators: Vec<ProjMatrix>,
    pub generators_b: Option<Vec<ProjMatrix>>,
    pub query: Option<ProjMatrix>,
    pub vertex: Option<Vertex>,
}

impl Problem {
    /// `precision` overrides the file's value when given.
    pub fn from_json(text: &str, precision: Option<u32>) -> Result<Self> {
        let raw: RawProblem =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("problem file: {e}")))?;
        let precision = precision.or(raw.precision).unwrap_or(DEFAULT_PRECISION);
        let ctx = PadicContext::new(raw.p, precision)?;
        let tree = BruhatTitsTree::new(ctx.clone());
        let matrices = |vals: &[Value]| -> Result<Vec<ProjMatrix>> {
            vals.iter()
                .enumerate()
                .map(|(i, v)| {
                    ProjMatrix::from_json(&ctx, v)
                        .map_err(|e| Error::Parse(format!("generator {}: {e}", i + 1)))
                })
                .collect()
        };
        let generators = matrices(&raw.generators)?;
        let generators_b = raw.generators_b.as_deref().map(matrices).transpose()?;
        let query = raw
            .query
            .as_ref()
            .map(|q| {
                ProjMatrix::from_json(&ctx, q).map_err(|e| Error::Parse(format!("query: {e}")))
            })
            .transpose()?;
        let vertex = raw
            .vertex
            .map(|v| {
                let offset = match &v.offset {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    other => return Err(Error::Parse(format!("vertex offset {other}"))),
                };
                tree.parse_vertex(v.level, &offset)
            })
            .transpose()?;
        Ok(Problem {
            tree,
            generators,
            generators_b,
            query,
            vertex,
        })
    }

    pub fn from_path(path: &Path, precision: Option<u32>) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, precision)
    }
}

/// Parses `"n,u"`, e.g. `"2,5"` or `"-1,3/5"`.
pub fn parse_vertex_spec(tree: &BruhatTitsTree, spec: &str) -> Result<Vertex> {
    let (n, u) = spec
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("vertex {spec:?}: expected \"level,offset\"")))?;
    let level = n
        .trim()
        .parse::<i64>()
        .map_err(|e| Error::Parse(format!("vertex level {n:?}: {e}")))?;
    tree.parse_vertex(level, u.trim())
}
