//! Combinatorial planar embeddings: rotation systems, face tracing, and
//! dual-graph construction.
//!
//! An embedding stores, for each vertex, the clockwise cyclic order of its
//! incident *edge-ends*. End `0` of an edge sits at the first endpoint in
//! stored orientation, end `1` at the second. A *dart* is an edge traversed
//! away from one of its ends; walking `next` from dart to dart (enter a
//! vertex, leave through the rotation successor of the entering end) traces
//! the face boundaries. For a connected graph a consistent planar rotation
//! system yields face orbits satisfying `V - E + F = 2`; anything else is
//! rejected.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::GraphError;
use crate::graph::{EdgeId, MoldGraph, VertexId};

/// One end of a simple edge: `end` is 0 at the stored first endpoint,
/// 1 at the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: u8,
}

impl EdgeEnd {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        debug_assert!(end <= 1);
        EdgeEnd { edge, end }
    }

    fn opposite(self) -> EdgeEnd {
        EdgeEnd {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// An edge traversed away from `leave_end` toward the opposite end.
pub type Dart = EdgeEnd;

/// Rotation system: the clockwise cyclic order of incident edge-ends at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: BTreeMap<VertexId, Vec<EdgeEnd>>,
}

impl PlanarEmbedding {
    /// Validates that `rotation` lists every edge-end of `g` exactly once,
    /// at the vertex the end is actually incident to.
    pub fn new(
        g: &MoldGraph,
        rotation: BTreeMap<VertexId, Vec<EdgeEnd>>,
    ) -> Result<Self, GraphError> {
        let mut seen: BTreeSet<EdgeEnd> = BTreeSet::new();
        for (&v, ends) in &rotation {
            if !g.contains_vertex(v) {
                return Err(GraphError::UnknownVertex { vertex: v });
            }
            for &ee in ends {
                let Some((u0, u1)) = g.endpoints_of(ee.edge) else {
                    return Err(GraphError::UnknownEdge { edge: ee.edge });
                };
                if ee.end > 1 {
                    return Err(GraphError::BadEmbedding {
                        reason: format!("edge {} has no end {}", ee.edge, ee.end),
                    });
                }
                let home = if ee.end == 0 { u0 } else { u1 };
                if home != v {
                    return Err(GraphError::BadEmbedding {
                        reason: format!(
                            "end {}.{} listed at vertex {v}, lives at {home}",
                            ee.edge, ee.end
                        ),
                    });
                }
                if !seen.insert(ee) {
                    return Err(GraphError::BadEmbedding {
                        reason: format!("end {}.{} listed twice", ee.edge, ee.end),
                    });
                }
            }
        }
        if seen.len() != 2 * g.edge_count() {
            return Err(GraphError::BadEmbedding {
                reason: format!(
                    "{} edge-ends listed, graph has {}",
                    seen.len(),
                    2 * g.edge_count()
                ),
            });
        }
        for v in g.vertices() {
            if !rotation.contains_key(&v) {
                return Err(GraphError::BadEmbedding {
                    reason: format!("vertex {v} has no rotation line"),
                });
            }
        }
        Ok(PlanarEmbedding { rotation })
    }

    pub fn rotation(&self, v: VertexId) -> Option<&[EdgeEnd]> {
        self.rotation.get(&v).map(Vec::as_slice)
    }

    pub fn rotations(&self) -> impl Iterator<Item = (VertexId, &[EdgeEnd])> + '_ {
        self.rotation.iter().map(|(&v, ends)| (v, ends.as_slice()))
    }
}

/// A face boundary: the cyclic sequence of darts walked along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// Traces all faces of `(g, emb)`. `g` must be connected and the face count
/// must satisfy Euler's formula, otherwise the rotation system is reported
/// as inconsistent.
///
/// A graph with no edges has the single outer face.
pub fn trace_faces(g: &MoldGraph, emb: &PlanarEmbedding) -> Result<Vec<Face>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if g.edge_count() == 0 {
        return Ok(vec![Face { darts: Vec::new() }]);
    }

    // slot lookup: where does each edge-end sit in its vertex rotation?
    let mut slot: BTreeMap<EdgeEnd, (VertexId, usize)> = BTreeMap::new();
    for (v, ends) in emb.rotations() {
        for (i, &ee) in ends.iter().enumerate() {
            slot.insert(ee, (v, i));
        }
    }
    let next_dart = |d: Dart| -> Result<Dart, GraphError> {
        let entering = d.opposite();
        let &(v, i) = slot
            .get(&entering)
            .ok_or_else(|| GraphError::BadEmbedding {
                reason: format!(
                    "end {}.{} missing from rotations",
                    entering.edge, entering.end
                ),
            })?;
        let ends = emb.rotation(v).expect("slot vertices have rotations");
        Ok(ends[(i + 1) % ends.len()])
    };

    let mut unvisited: BTreeSet<Dart> = g
        .edge_ids()
        .flat_map(|e| [EdgeEnd::new(e, 0), EdgeEnd::new(e, 1)])
        .collect();
    let mut faces = Vec::new();
    while let Some(&start) = unvisited.iter().next() {
        let mut darts = Vec::new();
        let mut d = start;
        loop {
            if !unvisited.remove(&d) {
                return Err(GraphError::BadEmbedding {
                    reason: "face walk revisited a dart".into(),
                });
            }
            darts.push(d);
            d = next_dart(d)?;
            if d == start {
                break;
            }
        }
        faces.push(Face { darts });
    }

    let (v, e, f) = (
        g.vertex_count() as i64,
        g.edge_count() as i64,
        faces.len() as i64,
    );
    if v - e + f != 2 {
        return Err(GraphError::BadEmbedding {
            reason: format!("Euler violated: V={v} E={e} F={f}"),
        });
    }
    Ok(faces)
}

/// Dual of an embedded planar graph: one vertex per face, one edge per
/// non-bridge primal edge, joining the two faces that edge borders.
///
/// A bridge borders the same face on both sides; its dual edge would be a
/// self-loop and is omitted, so the bijection covers exactly the non-bridge
/// primal edges. Dual edges reuse the id of the primal edge they cross.
#[derive(Debug, Clone)]
pub struct DualGraph {
    pub dual: MoldGraph,
    primal_to_dual: BTreeMap<EdgeId, EdgeId>,
    dual_to_primal: BTreeMap<EdgeId, EdgeId>,
    face_count: usize,
}

impl DualGraph {
    pub fn to_dual_edge(&self, primal: EdgeId) -> Option<EdgeId> {
        self.primal_to_dual.get(&primal).copied()
    }

    pub fn to_primal_edge(&self, dual: EdgeId) -> Option<EdgeId> {
        self.dual_to_primal.get(&dual).copied()
    }

    pub fn bijection(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.primal_to_dual
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }
}

/// Builds the dual graph over the faces of `(g, emb)`.
pub fn build_dual(g: &MoldGraph, emb: &PlanarEmbedding) -> Result<DualGraph, GraphError> {
    let faces = trace_faces(g, emb)?;

    // face index per dart; faces come out of trace_faces in deterministic order
    let mut face_of: BTreeMap<Dart, u32> = BTreeMap::new();
    for (i, face) in faces.iter().enumerate() {
        for &d in &face.darts {
            face_of.insert(d, i as u32);
        }
    }

    let mut dual_edges = Vec::new();
    let mut primal_to_dual = BTreeMap::new();
    let mut dual_to_primal = BTreeMap::new();
    for e in g.edge_ids() {
        let f0 = face_of[&EdgeEnd::new(e, 0)];
        let f1 = face_of[&EdgeEnd::new(e, 1)];
        if f0 == f1 {
            continue; // bridge
        }
        dual_edges.push((e, VertexId(f0), VertexId(f1)));
        primal_to_dual.insert(e, e);
        dual_to_primal.insert(e, e);
    }
    let dual = MoldGraph::from_parts((0..faces.len() as u32).map(VertexId), dual_edges)?;
    Ok(DualGraph {
        dual,
        primal_to_dual,
        dual_to_primal,
        face_count: faces.len(),
    })
}
