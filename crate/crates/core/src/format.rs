//! Plain-text instance files.
//!
//! ```text
//! n m
//! edge_id u v            (m lines, ascending edge id)
//! EMBEDDING              (optional section)
//! v: e.end e.end ...     (one line per vertex; end is 0 or 1)
//! REALIZED               (optional section)
//! id id id ...           (single line, possibly empty)
//! ```
//!
//! Vertices are implicitly `0..n-1`; writing a graph with other ids is
//! rejected. Output is byte-stable: fixed ordering, single spaces, `\n`
//! line endings.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::embedding::{EdgeEnd, PlanarEmbedding};
use crate::error::GraphError;
use crate::graph::{EdgeId, MoldGraph, VertexId};
use crate::instances::Instance;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("graph is invalid: {0}")]
    Graph(#[from] GraphError),
    #[error("vertex ids must be exactly 0..n-1 to serialize")]
    NonContiguousVertices,
}

/// A parsed instance file; sections that were absent stay `None`.
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub graph: MoldGraph,
    pub embedding: Option<PlanarEmbedding>,
    pub realized: Option<BTreeSet<EdgeId>>,
}

/// Serializes a graph with optional embedding and realized sections.
pub fn write_instance(
    graph: &MoldGraph,
    embedding: Option<&PlanarEmbedding>,
    realized: Option<&BTreeSet<EdgeId>>,
) -> Result<String, FormatError> {
    let n = graph.vertex_count();
    if graph.vertices().zip(0u32..).any(|(v, i)| v.0 != i) {
        return Err(FormatError::NonContiguousVertices);
    }
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", n, graph.edge_count()));
    for (e, u, v) in graph.edges() {
        out.push_str(&format!("{e} {u} {v}\n"));
    }
    if let Some(emb) = embedding {
        out.push_str("EMBEDDING\n");
        for v in graph.vertices() {
            let ends = emb.rotation(v).unwrap_or(&[]);
            let row: Vec<String> = ends
                .iter()
                .map(|ee| format!("{}.{}", ee.edge, ee.end))
                .collect();
            if row.is_empty() {
                out.push_str(&format!("{v}:\n"));
            } else {
                out.push_str(&format!("{v}: {}\n", row.join(" ")));
            }
        }
    }
    if let Some(realized) = realized {
        out.push_str("REALIZED\n");
        let row: Vec<String> = realized.iter().map(|e| e.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

impl Instance {
    /// Text form including the embedding (when present) and realized set.
    pub fn to_text(&self) -> Result<String, FormatError> {
        write_instance(&self.graph, self.embedding.as_ref(), Some(&self.realized))
    }
}

/// Parses the text format back into its parts.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, FormatError> {
    let syntax = |line: usize, reason: String| FormatError::Syntax { line, reason };
    let mut lines = text.lines().enumerate();

    let (lno, header) = lines.next().ok_or_else(|| syntax(0, "empty file".into()))?;
    let mut it = header.split_whitespace();
    let n: u32 = parse_field(it.next(), lno, "vertex count")?;
    let m: usize = parse_field(it.next(), lno, "edge count")?;
    if it.next().is_some() {
        return Err(syntax(lno + 1, "header must be exactly `n m`".into()));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| syntax(0, format!("expected {m} edge lines")))?;
        let mut it = line.split_whitespace();
        let e: u32 = parse_field(it.next(), lno, "edge id")?;
        let u: u32 = parse_field(it.next(), lno, "endpoint")?;
        let v: u32 = parse_field(it.next(), lno, "endpoint")?;
        if it.next().is_some() {
            return Err(syntax(lno + 1, "edge line must be `id u v`".into()));
        }
        edges.push((EdgeId(e), VertexId(u), VertexId(v)));
    }
    let graph = MoldGraph::from_parts((0..n).map(VertexId), edges)?;

    let mut embedding = None;
    let mut realized = None;
    while let Some((lno, line)) = lines.next() {
        match line.trim() {
            "" => continue,
            "EMBEDDING" => {
                let mut rotation: BTreeMap<VertexId, Vec<EdgeEnd>> = BTreeMap::new();
                for _ in 0..n {
                    let (lno, line) = lines.next().ok_or_else(|| {
                        syntax(lno + 1, "embedding needs one line per vertex".into())
                    })?;
                    let (vtx, rest) = line.split_once(':').ok_or_else(|| {
                        syntax(lno + 1, "rotation line must be `v: e.end ...`".into())
                    })?;
                    let v = VertexId(parse_field(Some(vtx.trim()), lno, "vertex id")?);
                    let mut ends = Vec::new();
                    for tok in rest.split_whitespace() {
                        let (e, end) = tok.split_once('.').ok_or_else(|| {
                            syntax(lno + 1, format!("edge-end `{tok}` must be `edge.end`"))
                        })?;
                        let e: u32 = parse_field(Some(e), lno, "edge id")?;
                        let end: u8 = parse_field(Some(end), lno, "end marker")?;
                        if end > 1 {
                            return Err(syntax(
                                lno + 1,
                                format!("end marker {end} must be 0 or 1"),
                            ));
                        }
                        ends.push(EdgeEnd::new(EdgeId(e), end));
                    }
                    if rotation.insert(v, ends).is_some() {
                        return Err(syntax(lno + 1, format!("vertex {v} rotation listed twice")));
                    }
                }
                embedding = Some(PlanarEmbedding::new(&graph, rotation)?);
            }
            "REALIZED" => {
                let (lno, line) = lines
                    .next()
                    .ok_or_else(|| syntax(lno + 1, "REALIZED needs a payload line".into()))?;
                let mut set = BTreeSet::new();
                for tok in line.split_whitespace() {
                    let e: u32 = parse_field(Some(tok), lno, "edge id")?;
                    if !graph.contains_edge(EdgeId(e)) {
                        return Err(syntax(
                            lno + 1,
                            format!("realized edge {e} is not in the graph"),
                        ));
                    }
                    set.insert(EdgeId(e));
                }
                realized = Some(set);
            }
            other => {
                return Err(syntax(lno + 1, format!("unexpected line `{other}`")));
            }
        }
    }

    Ok(ParsedInstance {
        graph,
        embedding,
        realized,
    })
}

fn parse_field<T: std::str::FromStr>(
    tok: Option<&str>,
    lno: usize,
    what: &str,
) -> Result<T, FormatError> {
    let tok = tok.ok_or_else(|| FormatError::Syntax {
        line: lno + 1,
        reason: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| FormatError::Syntax {
        line: lno + 1,
        reason: format!("bad {what} `{tok}`"),
    })
}
