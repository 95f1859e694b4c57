//! Spanning-tree search under false-negative noise, where a Yes answer is
//! certain evidence that an edge is realized.
//!
//! * [`DiscoverMachine`] round-robins over a collection of edge sets, one
//!   query per set per round, each set consuming its edges in fixed cyclic
//!   order, and returns the first Yes-certified edge.
//! * [`SparseFnMachine`] repeatedly discovers a realized edge in the
//!   neighborhood of a minimum-degree vertex (a cut, so some set holds a
//!   realized edge), contracts the containing super-edge, and recurses until
//!   a single vertex remains. On rho-sparse minor-closed inputs this costs
//!   at most `4 * rho * m` queries in expectation and always succeeds.
//! * [`NaiveFnMachine`] queries all `m` edges round after round until the
//!   Yes-certified edges contain a spanning tree, stopping mid-round at the
//!   exact query that completes it.
//! * [`combined_fn`] interleaves the two, inheriting whichever bound is
//!   better without knowing the graph family.

use std::collections::BTreeSet;

use crate::algorithms::{
    check_protocol, interleave, run_machine, CombinedOutcome, Step, StepMachine, TreeOutcome,
};
use crate::error::AlgoError;
use crate::graph::{EdgeId, MoldGraph, Realization, VertexId};
use crate::oracle::{derive_seed, Answer, EdgeOracle, ErrorModel, NoisyOracle};
use crate::union_find::UnionFind;

/// Round-robin edge discovery over an ordered collection of edge sets.
///
/// Each round asks one query per set; within a set, queries walk the given
/// order cyclically across rounds. Finishes at the first Yes. Termination
/// requires some set to contain an edge the oracle eventually certifies.
#[derive(Debug, Clone)]
pub struct DiscoverMachine {
    sets: Vec<Vec<EdgeId>>,
    cursors: Vec<usize>,
    current: usize,
    pending: Option<EdgeId>,
    finished: bool,
}

impl DiscoverMachine {
    /// Empty sets are skipped; an entirely empty collection is rejected.
    pub fn new(sets: Vec<Vec<EdgeId>>) -> Result<Self, AlgoError> {
        let sets: Vec<Vec<EdgeId>> = sets.into_iter().filter(|s| !s.is_empty()).collect();
        if sets.is_empty() {
            return Err(AlgoError::EmptyDiscovery);
        }
        let cursors = vec![0; sets.len()];
        Ok(DiscoverMachine {
            sets,
            cursors,
            current: 0,
            pending: None,
            finished: false,
        })
    }
}

impl StepMachine for DiscoverMachine {
    type Output = EdgeId;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<EdgeId>, AlgoError> {
        check_protocol(self.finished, self.pending.is_some(), answer.is_some())?;
        if let Some(ans) = answer {
            let asked = self.pending.take().expect("protocol checked");
            if ans.is_yes() {
                self.finished = true;
                return Ok(Step::Done(asked));
            }
            // advance this set's cyclic cursor, then hand the turn over
            self.cursors[self.current] =
                (self.cursors[self.current] + 1) % self.sets[self.current].len();
            self.current = (self.current + 1) % self.sets.len();
        }
        let edge = self.sets[self.current][self.cursors[self.current]];
        self.pending = Some(edge);
        Ok(Step::NeedQuery(edge))
    }
}

/// One-shot discovery; returns the certified edge and the queries spent.
pub fn discover<O: EdgeOracle>(
    sets: Vec<Vec<EdgeId>>,
    oracle: &mut O,
) -> Result<(EdgeId, u64), AlgoError> {
    run_machine(DiscoverMachine::new(sets)?, oracle)
}

/// Min-degree contraction solver. Always returns realized edges only, and
/// exactly `V - 1` of them.
#[derive(Debug, Clone)]
pub struct SparseFnMachine {
    graph: MoldGraph,
    found: BTreeSet<EdgeId>,
    discover: Option<DiscoverMachine>,
    pending: bool,
    finished: bool,
}

impl SparseFnMachine {
    pub fn new(graph: MoldGraph) -> Result<Self, AlgoError> {
        if !graph.is_connected() {
            return Err(crate::error::GraphError::Disconnected.into());
        }
        Ok(SparseFnMachine {
            graph,
            found: BTreeSet::new(),
            discover: None,
            pending: false,
            finished: false,
        })
    }
}

impl StepMachine for SparseFnMachine {
    type Output = BTreeSet<EdgeId>;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<BTreeSet<EdgeId>>, AlgoError> {
        check_protocol(self.finished, self.pending, answer.is_some())?;
        self.pending = false;
        let mut answer = answer;
        loop {
            if self.graph.vertex_count() <= 1 {
                self.finished = true;
                return Ok(Step::Done(std::mem::take(&mut self.found)));
            }
            if self.discover.is_none() {
                let u = self.graph.min_degree_vertex()?;
                let sets = self
                    .graph
                    .neighborhood(u)?
                    .into_iter()
                    .map(|(_, members)| members)
                    .collect();
                self.discover = Some(DiscoverMachine::new(sets)?);
            }
            let disc = self.discover.as_mut().expect("just installed");
            match disc.step(answer.take())? {
                Step::NeedQuery(e) => {
                    self.pending = true;
                    return Ok(Step::NeedQuery(e));
                }
                Step::Done(edge) => {
                    self.found.insert(edge);
                    let s = self
                        .graph
                        .super_edge_of(edge)
                        .expect("discovered edge lives in the current graph");
                    self.graph = std::mem::take(&mut self.graph).contract(s)?;
                    self.discover = None;
                }
            }
        }
    }
}

/// One-shot min-degree contraction run over an oracle view with
/// false-negative semantics.
pub fn solve_sparse_fn<O: EdgeOracle>(
    graph: &MoldGraph,
    oracle: &mut O,
) -> Result<TreeOutcome, AlgoError> {
    let (edges, queries_used) = run_machine(SparseFnMachine::new(graph.clone())?, oracle)?;
    Ok(TreeOutcome {
        edges,
        queries_used,
    })
}

/// Round-robin over all edges until the certified subgraph spans.
#[derive(Debug, Clone)]
pub struct NaiveFnMachine {
    edges: Vec<(EdgeId, VertexId, VertexId)>,
    idx: usize,
    components: UnionFind<VertexId>,
    tree: BTreeSet<EdgeId>,
    pending: bool,
    finished: bool,
}

impl NaiveFnMachine {
    pub fn new(graph: &MoldGraph) -> Result<Self, AlgoError> {
        if !graph.is_connected() {
            return Err(crate::error::GraphError::Disconnected.into());
        }
        Ok(NaiveFnMachine {
            edges: graph.edges().collect(),
            idx: 0,
            components: UnionFind::from_keys(graph.vertices()),
            tree: BTreeSet::new(),
            pending: false,
            finished: false,
        })
    }
}

impl StepMachine for NaiveFnMachine {
    type Output = BTreeSet<EdgeId>;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<BTreeSet<EdgeId>>, AlgoError> {
        check_protocol(self.finished, self.pending, answer.is_some())?;
        self.pending = false;

        if let Some(ans) = answer {
            let (e, u, v) = self.edges[self.idx];
            if ans.is_yes() && self.components.union(u, v) {
                self.tree.insert(e);
            }
            self.idx = (self.idx + 1) % self.edges.len();
        }
        if self.components.component_count() == 1 {
            self.finished = true;
            return Ok(Step::Done(std::mem::take(&mut self.tree)));
        }
        self.pending = true;
        Ok(Step::NeedQuery(self.edges[self.idx].0))
    }
}

/// One-shot round-robin run over an oracle view with false-negative
/// semantics.
pub fn naive_fn<O: EdgeOracle>(
    graph: &MoldGraph,
    oracle: &mut O,
) -> Result<TreeOutcome, AlgoError> {
    let (edges, queries_used) = run_machine(NaiveFnMachine::new(graph)?, oracle)?;
    Ok(TreeOutcome {
        edges,
        queries_used,
    })
}

/// Interleaves the min-degree contraction solver (first) with the naive
/// round-robin (second), each over its own oracle view of the same
/// realization. Returns the first finisher's tree; the total bill is at most
/// twice the winner's solo bill plus one.
pub fn combined_fn<OA, OB>(
    graph: &MoldGraph,
    sparse_oracle: &mut OA,
    naive_oracle: &mut OB,
) -> Result<CombinedOutcome, AlgoError>
where
    OA: EdgeOracle,
    OB: EdgeOracle,
{
    let sparse = SparseFnMachine::new(graph.clone())?;
    let naive = NaiveFnMachine::new(graph)?;
    let r = interleave(sparse, naive, sparse_oracle, naive_oracle)?;
    Ok(CombinedOutcome::from_interleave(r))
}

/// [`combined_fn`] with both false-negative oracles built internally:
/// the sparse machine draws from stream 0 of `base_seed`, the naive machine
/// from stream 1.
pub fn combined_fn_seeded(
    graph: &MoldGraph,
    realization: &Realization,
    p: f64,
    base_seed: u64,
) -> Result<CombinedOutcome, AlgoError> {
    let model = ErrorModel::false_negative(p)?;
    let mut sparse_oracle = NoisyOracle::new(model, graph, realization, derive_seed(base_seed, 0));
    let mut naive_oracle = NoisyOracle::new(model, graph, realization, derive_seed(base_seed, 1));
    combined_fn(graph, &mut sparse_oracle, &mut naive_oracle)
}
