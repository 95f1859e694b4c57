//! Multigraph with super-edges and contraction.
//!
//! A [`MoldGraph`] is the known ground graph: vertices plus *simple edges*
//! identified by stable [`EdgeId`]s. All parallel simple edges between one
//! unordered vertex pair form a *super-edge*, and the set of super-edges is
//! maintained eagerly as a partition keyed by that pair. Contraction merges
//! the two endpoints of a super-edge, deletes its parallel edges, merges any
//! newly parallel super-edges, and never leaves self-loops. Simple-edge ids
//! survive contractions unchanged; ids only disappear.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::GraphError;
use crate::union_find::UnionFind;

/// Vertex identifier. Stable except that contraction melts two vertices
/// into the smaller of the two ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Simple-edge identifier. Never changes meaning across contractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Handle of a super-edge: the unordered pair of its endpoints, normalized
/// so that `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperEdgeId {
    a: VertexId,
    b: VertexId,
}

impl SuperEdgeId {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            SuperEdgeId { a: u, b: v }
        } else {
            SuperEdgeId { a: v, b: u }
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    fn touches(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    fn other(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for SuperEdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Simple-edge count and super-edge count divided by the vertex count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sparsity {
    pub rho_simple: f64,
    pub rho_super: f64,
}

/// Multigraph of vertices and super-edges. See the module docs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoldGraph {
    vertices: BTreeSet<VertexId>,
    endpoints: BTreeMap<EdgeId, (VertexId, VertexId)>,
    super_edges: BTreeMap<SuperEdgeId, BTreeSet<EdgeId>>,
}

impl MoldGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from explicit vertex and edge lists.
    ///
    /// Rejects self-loops, duplicate edge ids, and edges with unknown
    /// endpoints.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    {
        let mut g = MoldGraph::new();
        for v in vertices {
            g.vertices.insert(v);
        }
        for (id, u, v) in edges {
            g.insert_edge(id, u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop { edge: id });
        }
        if !self.vertices.contains(&u) {
            return Err(GraphError::UnknownVertex { vertex: u });
        }
        if !self.vertices.contains(&v) {
            return Err(GraphError::UnknownVertex { vertex: v });
        }
        if self.endpoints.contains_key(&id) {
            return Err(GraphError::DuplicateEdge { edge: id });
        }
        self.endpoints.insert(id, (u, v));
        self.super_edges
            .entry(SuperEdgeId::new(u, v))
            .or_default()
            .insert(id);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn super_edge_count(&self) -> usize {
        self.super_edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    /// Edges as `(id, u, v)` with `u`, `v` in stored orientation, ascending id.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.endpoints.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.endpoints.keys().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.endpoints.contains_key(&e)
    }

    pub fn endpoints_of(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.endpoints.get(&e).copied()
    }

    /// Super-edges as `(id, member simple edges)`, keyed order.
    pub fn super_edges(&self) -> impl Iterator<Item = (SuperEdgeId, &BTreeSet<EdgeId>)> + '_ {
        self.super_edges.iter().map(|(&s, members)| (s, members))
    }

    pub fn super_edge_members(&self, s: SuperEdgeId) -> Option<&BTreeSet<EdgeId>> {
        self.super_edges.get(&s)
    }

    /// The super-edge a simple edge currently belongs to.
    pub fn super_edge_of(&self, e: EdgeId) -> Option<SuperEdgeId> {
        let (u, v) = self.endpoints_of(e)?;
        Some(SuperEdgeId::new(u, v))
    }

    /// Number of incident super-edges.
    pub fn degree(&self, v: VertexId) -> usize {
        self.super_edges.keys().filter(|s| s.touches(v)).count()
    }

    /// All super-edges incident to `v`, ordered by their smallest member
    /// edge id; each member list ascending by edge id.
    pub fn neighborhood(&self, v: VertexId) -> Result<Vec<(SuperEdgeId, Vec<EdgeId>)>, GraphError> {
        if !self.vertices.contains(&v) {
            return Err(GraphError::UnknownVertex { vertex: v });
        }
        let mut out: Vec<(SuperEdgeId, Vec<EdgeId>)> = self
            .super_edges
            .iter()
            .filter(|(s, _)| s.touches(v))
            .map(|(&s, members)| (s, members.iter().copied().collect()))
            .collect();
        out.sort_by_key(|(_, members)| members[0]);
        Ok(out)
    }

    /// A vertex of minimal degree; ties broken by smallest vertex id.
    pub fn min_degree_vertex(&self) -> Result<VertexId, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut deg: BTreeMap<VertexId, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for s in self.super_edges.keys() {
            let (a, b) = s.endpoints();
            *deg.get_mut(&a).expect("endpoint is a vertex") += 1;
            *deg.get_mut(&b).expect("endpoint is a vertex") += 1;
        }
        // BTreeMap iterates ascending vertex id, so the first strict minimum wins.
        let (&v, _) = deg
            .iter()
            .min_by_key(|(_, &d)| d)
            .expect("nonempty vertex set");
        Ok(v)
    }

    /// Contracts the super-edge `s`: its two endpoints merge into the smaller
    /// vertex id, every parallel edge of `s` is deleted, and super-edges that
    /// become parallel are unioned. The result has exactly one vertex fewer
    /// and no self-loops.
    pub fn contract(mut self, s: SuperEdgeId) -> Result<MoldGraph, GraphError> {
        let removed = self
            .super_edges
            .remove(&s)
            .ok_or(GraphError::UnknownSuperEdge { super_edge: s })?;
        for e in &removed {
            self.endpoints.remove(e);
        }
        let (keep, gone) = s.endpoints(); // keep < gone by normalization
        self.vertices.remove(&gone);

        let rekeyed: Vec<SuperEdgeId> = self
            .super_edges
            .keys()
            .filter(|k| k.touches(gone))
            .copied()
            .collect();
        for old in rekeyed {
            let members = self.super_edges.remove(&old).expect("key just listed");
            let other = old.other(gone);
            debug_assert_ne!(other, keep, "parallels of s were already removed");
            for &e in &members {
                self.endpoints.insert(e, order_pair(keep, other));
            }
            self.super_edges
                .entry(SuperEdgeId::new(keep, other))
                .or_default()
                .extend(members);
        }
        Ok(self)
    }

    /// `(m/n, m_s/n)` over simple edges and super-edges.
    pub fn sparsity(&self) -> Result<Sparsity, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let n = self.vertices.len() as f64;
        Ok(Sparsity {
            rho_simple: self.endpoints.len() as f64 / n,
            rho_super: self.super_edges.len() as f64 / n,
        })
    }

    /// True iff `edges` is acyclic, connected, and touches every vertex,
    /// i.e. `|edges| = |V| - 1` and the edges join everything together.
    /// Unknown edge ids make the answer `false`.
    pub fn is_spanning_tree(&self, edges: &BTreeSet<EdgeId>) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        if edges.len() != self.vertices.len() - 1 {
            return false;
        }
        let mut uf = UnionFind::from_keys(self.vertices.iter().copied());
        for &e in edges {
            let Some((u, v)) = self.endpoints_of(e) else {
                return false;
            };
            if !uf.union(u, v) {
                return false; // cycle
            }
        }
        uf.component_count() == 1
    }

    /// True iff the whole graph is connected (single vertices count).
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut uf = UnionFind::from_keys(self.vertices.iter().copied());
        for (_, u, v) in self.edges() {
            uf.union(u, v);
        }
        uf.component_count() == 1
    }

    /// True iff the given edge subset connects every vertex of the graph.
    pub fn edges_span(&self, edges: &BTreeSet<EdgeId>) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut uf = UnionFind::from_keys(self.vertices.iter().copied());
        for &e in edges {
            let Some((u, v)) = self.endpoints_of(e) else {
                return false;
            };
            uf.union(u, v);
        }
        uf.component_count() == 1
    }

    /// Extends `forest` (assumed acyclic) to a spanning tree of the graph
    /// using the remaining edges in ascending id order. Returns `None` if the
    /// graph itself is disconnected.
    pub fn complete_spanning_tree(&self, forest: &BTreeSet<EdgeId>) -> Option<BTreeSet<EdgeId>> {
        let mut uf = UnionFind::from_keys(self.vertices.iter().copied());
        let mut tree = BTreeSet::new();
        for &e in forest {
            let (u, v) = self.endpoints_of(e)?;
            if uf.union(u, v) {
                tree.insert(e);
            }
        }
        for (e, u, v) in self.edges() {
            if uf.component_count() == 1 {
                break;
            }
            if uf.union(u, v) {
                tree.insert(e);
            }
        }
        (uf.component_count() == 1).then_some(tree)
    }
}

fn order_pair(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// The adversary-chosen connected spanning subgraph: the set of simple-edge
/// ids that actually exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    realized: BTreeSet<EdgeId>,
}

impl Realization {
    /// Checked constructor: every id must exist in `g` and the realized
    /// subgraph must be connected and span all vertices of `g`.
    pub fn new(g: &MoldGraph, realized: BTreeSet<EdgeId>) -> Result<Self, GraphError> {
        for &e in &realized {
            if !g.contains_edge(e) {
                return Err(GraphError::UnknownEdge { edge: e });
            }
        }
        if !g.edges_span(&realized) {
            return Err(GraphError::RealizationNotSpanning);
        }
        Ok(Realization { realized })
    }

    /// Unchecked constructor for adversaries that are allowed to disconnect
    /// the graph, e.g. the broken trees fed to connectivity verification.
    pub fn new_unchecked(realized: BTreeSet<EdgeId>) -> Self {
        Realization { realized }
    }

    pub fn is_realized(&self, e: EdgeId) -> bool {
        self.realized.contains(&e)
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.realized
    }

    pub fn len(&self) -> usize {
        self.realized.len()
    }

    pub fn is_empty(&self) -> bool {
        self.realized.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vid(v: u32) -> VertexId {
        VertexId(v)
    }

    fn eid(e: u32) -> EdgeId {
        EdgeId(e)
    }

    /// Path a(0)-b(1)-c(2) with 2 parallel edges per consecutive pair.
    fn double_path() -> MoldGraph {
        MoldGraph::from_parts(
            (0..3).map(VertexId),
            vec![
                (eid(0), vid(0), vid(1)),
                (eid(1), vid(0), vid(1)),
                (eid(2), vid(1), vid(2)),
                (eid(3), vid(1), vid(2)),
            ],
        )
        .unwrap()
    }

    fn triangle() -> MoldGraph {
        MoldGraph::from_parts(
            (0..3).map(VertexId),
            vec![
                (eid(0), vid(0), vid(1)),
                (eid(1), vid(1), vid(2)),
                (eid(2), vid(0), vid(2)),
            ],
        )
        .unwrap()
    }

    pub(crate) fn grid_3x3() -> MoldGraph {
        crate::instances::gen_grid(3, 3, crate::instances::GridRealization::SnakePath, 0).graph
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        let err = MoldGraph::from_parts([vid(0)], vec![(eid(0), vid(0), vid(0))]);
        assert!(matches!(err, Err(GraphError::SelfLoop { .. })));
        let err = MoldGraph::from_parts(
            [vid(0), vid(1)],
            vec![(eid(0), vid(0), vid(1)), (eid(0), vid(1), vid(0))],
        );
        assert!(matches!(err, Err(GraphError::DuplicateEdge { .. })));
    }

    #[test]
    fn super_edges_partition_parallel_edges() {
        let g = double_path();
        assert_eq!(g.super_edge_count(), 2);
        let s = g.super_edge_of(eid(0)).unwrap();
        assert_eq!(s, g.super_edge_of(eid(1)).unwrap());
        assert_eq!(g.super_edge_members(s).unwrap().len(), 2);
    }

    #[test]
    fn contract_double_path() {
        let g = double_path();
        let s = SuperEdgeId::new(vid(0), vid(1));
        let g = g.contract(s).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.super_edge_count(), 1);
        // the surviving super-edge is the old {b,c} pair, now {ab,c}
        let members = g
            .super_edge_members(SuperEdgeId::new(vid(0), vid(2)))
            .unwrap();
        assert_eq!(
            members.iter().copied().collect::<Vec<_>>(),
            [eid(2), eid(3)]
        );
    }

    #[test]
    fn contract_triangle_merges_new_parallels() {
        let g = triangle();
        let g = g.contract(SuperEdgeId::new(vid(0), vid(1))).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.super_edge_count(), 1);
        let members = g
            .super_edge_members(SuperEdgeId::new(vid(0), vid(2)))
            .unwrap();
        // former a-c and b-c edges became parallel and merged
        assert_eq!(
            members.iter().copied().collect::<Vec<_>>(),
            [eid(1), eid(2)]
        );
        // edge ids kept their meaning: both still touch vertex 2
        assert_eq!(g.endpoints_of(eid(1)).unwrap(), (vid(0), vid(2)));
    }

    #[test]
    fn contract_any_grid_edge() {
        // 3x3 grid: contracting any super-edge leaves 8 vertices, 11 simple
        // edges, and no self-loops.
        let grid = grid_3x3();
        assert_eq!(grid.vertex_count(), 9);
        assert_eq!(grid.edge_count(), 12);
        let supers: Vec<SuperEdgeId> = grid.super_edges().map(|(s, _)| s).collect();
        for s in supers {
            let g = grid.clone().contract(s).unwrap();
            assert_eq!(g.vertex_count(), 8);
            assert_eq!(g.edge_count(), 11);
            for (_, u, v) in g.edges() {
                assert_ne!(u, v);
            }
        }
    }

    #[test]
    fn contract_unknown_super_edge_errors() {
        let g = triangle();
        let bogus = SuperEdgeId::new(vid(0), vid(7));
        assert!(matches!(
            g.clone().contract(bogus),
            Err(GraphError::UnknownSuperEdge { .. })
        ));
        // contracting the same super-edge twice: the second call sees an
        // unknown id because the pair no longer exists
        let s = SuperEdgeId::new(vid(0), vid(1));
        let g2 = g.contract(s).unwrap();
        assert!(matches!(
            g2.contract(s),
            Err(GraphError::UnknownSuperEdge { .. })
        ));
    }

    #[test]
    fn min_degree_picks_endpoint_and_breaks_ties_low() {
        let path = MoldGraph::from_parts(
            (0..3).map(VertexId),
            vec![(eid(0), vid(0), vid(1)), (eid(1), vid(1), vid(2))],
        )
        .unwrap();
        assert_eq!(path.min_degree_vertex().unwrap(), vid(0));

        let grid = grid_3x3();
        // corners have degree 2; vertex 0 is the smallest-id corner
        assert_eq!(grid.min_degree_vertex().unwrap(), vid(0));
        assert_eq!(grid.degree(vid(0)), 2);

        assert!(matches!(
            MoldGraph::new().min_degree_vertex(),
            Err(GraphError::EmptyGraph)
        ));
    }

    #[test]
    fn neighborhood_order_and_errors() {
        let mut g = double_path();
        // isolated vertex
        g.vertices.insert(vid(9));
        assert!(g.neighborhood(vid(9)).unwrap().is_empty());
        assert!(g.neighborhood(vid(42)).is_err());

        let nb = g.neighborhood(vid(1)).unwrap();
        assert_eq!(nb.len(), 2);
        // ordered by smallest member edge id
        assert_eq!(nb[0].1, vec![eid(0), eid(1)]);
        assert_eq!(nb[1].1, vec![eid(2), eid(3)]);

        let grid = grid_3x3();
        assert_eq!(grid.neighborhood(vid(0)).unwrap().len(), 2);
    }

    #[test]
    fn ladder_interior_neighborhood() {
        // Interior vertex of a 2-parallel ladder sees 2 super-edges of size 2.
        let inst = crate::instances::gen_ladder(3, crate::instances::LadderMode::TwoSidedLb, 1);
        let nb = inst.graph.neighborhood(vid(1)).unwrap();
        assert_eq!(nb.len(), 2);
        assert!(nb.iter().all(|(_, members)| members.len() == 2));
        // end vertex has a single super-edge
        assert_eq!(inst.graph.degree(vid(0)), 1);
        assert_eq!(inst.graph.min_degree_vertex().unwrap(), vid(0));
    }

    #[test]
    fn sparsity_counts() {
        let grid = grid_3x3();
        let s = grid.sparsity().unwrap();
        assert!((s.rho_simple - 12.0 / 9.0).abs() < 1e-12);
        assert!((s.rho_super - 12.0 / 9.0).abs() < 1e-12);

        // ladder with n pairs: n+1 vertices, 2n simple edges, n super-edges
        let n = 5;
        let inst = crate::instances::gen_ladder(n, crate::instances::LadderMode::TwoSidedLb, 7);
        let s = inst.graph.sparsity().unwrap();
        assert!((s.rho_simple - 2.0 * n as f64 / (n as f64 + 1.0)).abs() < 1e-12);
        assert!((s.rho_super - n as f64 / (n as f64 + 1.0)).abs() < 1e-12);

        let single = MoldGraph::from_parts([vid(0)], Vec::new()).unwrap();
        let s = single.sparsity().unwrap();
        assert_eq!((s.rho_simple, s.rho_super), (0.0, 0.0));
    }

    #[test]
    fn spanning_tree_checks() {
        let path = MoldGraph::from_parts(
            (0..4).map(VertexId),
            vec![
                (eid(0), vid(0), vid(1)),
                (eid(1), vid(1), vid(2)),
                (eid(2), vid(2), vid(3)),
            ],
        )
        .unwrap();
        let all: BTreeSet<EdgeId> = path.edge_ids().collect();
        assert!(path.is_spanning_tree(&all));

        // n-1 edges containing a cycle
        let mut g = triangle();
        g.vertices.insert(vid(3));
        g.insert_edge(eid(3), vid(2), vid(3)).unwrap();
        let cyclic: BTreeSet<EdgeId> = [eid(0), eid(1), eid(2)].into();
        assert!(!g.is_spanning_tree(&cyclic));

        // snake path through the 3x3 grid
        let inst =
            crate::instances::gen_grid(3, 3, crate::instances::GridRealization::SnakePath, 0);
        assert_eq!(inst.realized.len(), 8);
        assert!(inst.graph.is_spanning_tree(&inst.realized));

        // unknown ids are never a spanning tree
        let bogus: BTreeSet<EdgeId> = [eid(99)].into();
        assert!(!path.is_spanning_tree(&bogus));
    }

    #[test]
    fn realization_must_span() {
        let g = triangle();
        let ok = Realization::new(&g, [eid(0), eid(1)].into()).unwrap();
        assert!(ok.is_realized(eid(0)));
        assert!(!ok.is_realized(eid(2)));

        assert!(matches!(
            Realization::new(&g, [eid(0)].into()),
            Err(GraphError::RealizationNotSpanning)
        ));
        assert!(matches!(
            Realization::new(&g, [eid(9)].into()),
            Err(GraphError::UnknownEdge { .. })
        ));
    }
}
