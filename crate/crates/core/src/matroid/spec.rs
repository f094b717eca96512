//! JSON matroid files and plain-text graph ingestion.
//!
//! ```json
//! {"v":1,"type":"uniform","n":3,"rank":2}
//! {"v":1,"type":"graphic","vertices":4,"edges":[[0,1],[1,2]]}
//! {"v":1,"type":"transversal","n":3,"family":[[0,1],[1,2]]}
//! {"v":1,"type":"explicit","n":2,"independent":[[],[0],[1]]}
//! {"v":1,"type":"explicit","n":2,"bases":[[0],[1]]}
//! ```
//!
//! Every type accepts optional `labels` (one per element) and `partition`
//! (a list of element index lists, e.g. a canonical coloring).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ExplicitMatroid, GraphicMatroid, GroundSet, Matroid, MatroidError, TransversalMatroid, UniformMatroid};
use crate::set::ElementSet;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("explicit matroid needs exactly one of `independent` or `bases`")]
    ExplicitFamily,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidSpec {
    Uniform {
        n: usize,
        rank: usize,
    },
    Graphic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<usize>,
        edges: Vec<[usize; 2]>,
    },
    Transversal {
        n: usize,
        family: Vec<Vec<usize>>,
    },
    Explicit {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        independent: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bases: Option<Vec<Vec<usize>>>,
    },
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    #[serde(default = "default_version")]
    pub v: u32,
    #[serde(flatten)]
    pub spec: MatroidSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
}

/// A built matroid with its ground-set labels and source description.
#[derive(Debug, Clone)]
pub struct LoadedMatroid {
    pub ground: GroundSet,
    pub matroid: Arc<dyn Matroid>,
    pub file: MatroidFile,
}

impl LoadedMatroid {
    /// The underlying graph, when the matroid is graphic.
    pub fn graph(&self) -> Option<GraphicMatroid> {
        self.file.spec.graph()
    }
}

impl MatroidSpec {
    pub fn ground_size(&self) -> usize {
        match self {
            Self::Uniform { n, .. } | Self::Transversal { n, .. } | Self::Explicit { n, .. } => *n,
            Self::Graphic { edges, .. } => edges.len(),
        }
    }

    pub fn graph(&self) -> Option<GraphicMatroid> {
        match self {
            Self::Graphic { vertices, edges } => {
                let vertices = vertices.unwrap_or_else(|| edges.iter().flatten().max().map_or(0, |v| v + 1));
                GraphicMatroid::new(vertices, edges.iter().map(|&[u, v]| (u, v)).collect()).ok()
            }
            _ => None,
        }
    }

    pub fn build(&self) -> Result<Arc<dyn Matroid>, SpecError> {
        let sets = |v: &[Vec<usize>]| v.iter().map(|s| ElementSet::from(s.as_slice())).collect::<Vec<_>>();
        Ok(match self {
            Self::Uniform { n, rank } => Arc::new(UniformMatroid::new(*n, *rank)?),
            Self::Graphic { vertices, edges } => {
                let vertices = vertices.unwrap_or_else(|| edges.iter().flatten().max().map_or(0, |v| v + 1));
                Arc::new(GraphicMatroid::new(
                    vertices,
                    edges.iter().map(|&[u, v]| (u, v)).collect(),
                )?)
            }
            Self::Transversal { n, family } => Arc::new(TransversalMatroid::new(*n, family.clone())?),
            Self::Explicit { n, independent, bases } => match (independent, bases) {
                (Some(ind), None) => Arc::new(ExplicitMatroid::from_independent(*n, sets(ind))?),
                (None, Some(b)) => Arc::new(ExplicitMatroid::from_bases(*n, sets(b))?),
                _ => return Err(SpecError::ExplicitFamily),
            },
        })
    }
}

impl From<&GraphicMatroid> for MatroidSpec {
    fn from(g: &GraphicMatroid) -> Self {
        Self::Graphic {
            vertices: Some(g.vertex_count()),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl MatroidFile {
    pub fn new(spec: MatroidSpec) -> Self {
        Self {
            v: FORMAT_VERSION,
            spec,
            labels: None,
            partition: None,
        }
    }

    pub fn load(&self) -> Result<LoadedMatroid, SpecError> {
        if self.v != FORMAT_VERSION {
            return Err(SpecError::Version(self.v));
        }
        let matroid = self.spec.build()?;
        let ground = GroundSet::new(matroid.ground_size()).with_labels(self.labels.clone())?;
        if let Some(parts) = &self.partition {
            for e in parts.iter().flatten() {
                if *e >= ground.len() {
                    return Err(MatroidError::OutOfRange {
                        element: *e,
                        size: ground.len(),
                    }
                    .into());
                }
            }
        }
        Ok(LoadedMatroid {
            ground,
            matroid,
            file: self.clone(),
        })
    }
}

/// Reads a matroid from JSON, a DIMACS graph (`p edge n m` / `e u v`, one
/// based), or a whitespace edge list (`u v` per line, zero based, `#`
/// comments).
pub fn load_matroid_text(text: &str) -> Result<LoadedMatroid, SpecError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let file: MatroidFile = serde_json::from_str(text)?;
        return file.load();
    }
    let graph = if text.lines().any(|l| l.trim_start().starts_with("p ")) {
        parse_dimacs(text)?
    } else {
        parse_edge_list(text)?
    };
    MatroidFile::new(MatroidSpec::from(&graph)).load()
}

fn parse_number(tok: Option<&str>, line: usize) -> Result<usize, SpecError> {
    tok.ok_or_else(|| SpecError::Parse {
        line,
        message: "missing field".into(),
    })?
    .parse()
    .map_err(|e| SpecError::Parse {
        line,
        message: format!("{e}"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<GraphicMatroid, SpecError> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let u = parse_number(toks.next(), i + 1)?;
        let v = parse_number(toks.next(), i + 1)?;
        edges.push((u, v));
    }
    let vertices = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Ok(GraphicMatroid::new(vertices, edges)?)
}

pub fn parse_dimacs(text: &str) -> Result<GraphicMatroid, SpecError> {
    let mut vertices = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                toks.next();
                vertices = Some(parse_number(toks.next(), line_no)?);
            }
            Some("e") | Some("a") => {
                let u = parse_number(toks.next(), line_no)?;
                let v = parse_number(toks.next(), line_no)?;
                if u == 0 || v == 0 {
                    return Err(SpecError::Parse {
                        line: line_no,
                        message: "DIMACS vertices are numbered from 1".into(),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(SpecError::Parse {
                    line: line_no,
                    message: format!("unknown line type {other:?}"),
                })
            }
        }
    }
    let vertices = vertices.ok_or(SpecError::Parse {
        line: 0,
        message: "missing problem line".into(),
    })?;
    Ok(GraphicMatroid::new(vertices, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::MatroidExt;

    #[test]
    fn json_round_trip() {
        for text in [
            r#"{"v":1,"type":"uniform","n":3,"rank":2}"#,
            r#"{"v":1,"type":"graphic","vertices":3,"edges":[[0,1],[1,2],[0,2]],"labels":["a","b","c"]}"#,
            r#"{"v":1,"type":"transversal","n":3,"family":[[0,1],[1,2]]}"#,
            r#"{"v":1,"type":"explicit","n":2,"independent":[[],[0],[1]]}"#,
        ] {
            let file: MatroidFile = serde_json::from_str(text).unwrap();
            let again: MatroidFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
            assert_eq!(file, again);
            file.load().unwrap();
        }
    }

    #[test]
    fn graph_formats_agree() {
        let a = load_matroid_text("# triangle\n0 1\n1 2\n0 2\n").unwrap();
        let b = load_matroid_text("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(a.file, b.file);
        assert_eq!(a.matroid.full_rank(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            load_matroid_text("0 0\n"),
            Err(SpecError::Matroid(MatroidError::SelfLoop { .. }))
        ));
        assert!(matches!(
            load_matroid_text("0 x\n"),
            Err(SpecError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_matroid_text(r#"{"v":2,"type":"uniform","n":1,"rank":1}"#),
            Err(SpecError::Version(2))
        ));
        assert!(matches!(
            load_matroid_text(r#"{"type":"transversal","n":2,"family":[[0]]}"#),
            Err(SpecError::Matroid(MatroidError::Loop(1)))
        ));
        assert!(matches!(
            load_matroid_text(r#"{"type":"explicit","n":2,"independent":[[],[0],[1]],"bases":[[0]]}"#),
            Err(SpecError::ExplicitFamily)
        ));
    }
}
