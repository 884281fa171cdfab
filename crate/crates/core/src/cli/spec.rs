//! Problem descriptions: `{"diagram": "E7", "retained": ["B2", "D"], "options": {...}}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinDiagram, DynkinType, Vertex};
use crate::error::{Error, Result};
use crate::knitting::Configuration;

pub const E_JSON: &str = "E_JSON";
pub const E_SHAPE: &str = "E_SHAPE";
pub const E_FIELD: &str = "E_FIELD";
pub const E_DIAGRAM: &str = "E_DIAGRAM";
pub const E_EMPTY: &str = "E_EMPTY";
pub const E_VERTEX: &str = "E_VERTEX";
pub const E_DUPLICATE: &str = "E_DUPLICATE";
pub const E_EXTENDED: &str = "E_EXTENDED";

static ALIAS_SOURCE: &str = include_str!("../../fixtures/aliases.json");

type AliasTable = BTreeMap<String, BTreeMap<String, Vertex>>;

/// Named vertices used in worked examples, keyed by diagram.
pub fn aliases() -> &'static AliasTable {
    static TABLE: OnceLock<AliasTable> = OnceLock::new();
    TABLE.get_or_init(|| serde_json::from_str(ALIAS_SOURCE).expect("alias fixture is valid JSON"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub oracle: bool,
    pub svg: bool,
    pub dot: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            oracle: true,
            svg: false,
            dot: false,
            seed: 0,
        }
    }
}

/// A vertex as written in the spec: index or label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(u64),
    Label(String),
}

impl std::fmt::Display for VertexRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexRef::Index(i) => write!(f, "{i}"),
            VertexRef::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    diagram: String,
    retained: Vec<VertexRef>,
    #[serde(default)]
    options: Options,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub diagram: DynkinType,
    /// Retained vertices as written.
    pub retained_input: Vec<VertexRef>,
    pub retained: Vec<Vertex>,
    pub options: Options,
}

impl ProblemSpec {
    pub fn configuration(&self) -> Configuration {
        Configuration::of_type(self.diagram, self.retained.clone()).expect("validated at parse time")
    }
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        let code = match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => E_JSON,
            Category::Data if e.to_string().starts_with("unknown field") => E_FIELD,
            Category::Data => E_SHAPE,
        };
        Error::spec(code, e.to_string())
    })?;
    let diagram: DynkinType = raw
        .diagram
        .parse()
        .map_err(|e| Error::spec(E_DIAGRAM, format!("field `diagram`: {e}")))?;
    if raw.retained.is_empty() {
        return Err(Error::spec(E_EMPTY, "field `retained`: at least one vertex is required"));
    }
    let d = DynkinDiagram::build(diagram);
    let table = aliases().get(&diagram.to_string());
    let mut retained = Vec::with_capacity(raw.retained.len());
    for (k, r) in raw.retained.iter().enumerate() {
        let v = resolve(&d, table, r)
            .ok_or_else(|| Error::spec(E_VERTEX, format!("retained[{k}]: {r} is not a vertex of affine {diagram}")))?;
        if v == 0 {
            return Err(Error::spec(
                E_EXTENDED,
                format!("retained[{k}]: {r} is the extending vertex"),
            ));
        }
        if let Some(j) = retained.iter().position(|&w| w == v) {
            return Err(Error::spec(
                E_DUPLICATE,
                format!("retained[{k}]: {r} repeats retained[{j}]"),
            ));
        }
        retained.push(v);
    }
    Ok(ProblemSpec {
        diagram,
        retained_input: raw.retained,
        retained,
        options: raw.options,
    })
}

fn resolve(d: &DynkinDiagram, table: Option<&BTreeMap<String, Vertex>>, r: &VertexRef) -> Option<Vertex> {
    match r {
        VertexRef::Index(i) => usize::try_from(*i).ok().filter(|&v| v < d.vertex_count()),
        VertexRef::Label(s) => d
            .vertex_by_label(s)
            .or_else(|| table.and_then(|t| t.get(s).copied())),
    }
}
