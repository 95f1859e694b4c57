//! Spanning-tree search under false-positive noise, where a No answer is
//! certain evidence that an edge is not realized.
//!
//! * [`NaiveFpMachine`] spends exactly `ceil(log2(m^2))` queries on every
//!   edge (base-2 log; the error bound halves per query) and keeps the edges
//!   that never answered No.
//! * [`PlanarFpMachine`] handles planar moldgraphs whose realized subgraph
//!   is a tree. Every moldgraph cycle then contains a non-realized edge, and
//!   cycles are cuts of the dual graph, so the machine runs the min-degree
//!   contraction solver on the dual with every answer negated: a negated No
//!   is a certain Yes for "this edge is absent". The non-realized edges form
//!   a spanning tree of the dual, and the complement in the primal edge set
//!   is exactly the realized tree.
//! * [`combined_fp`] interleaves the two so the naive budget bounds the run
//!   even when the acyclic precondition fails and the dual search stalls.

use std::collections::BTreeSet;

use crate::algorithms::{
    ceil_tolerant, check_protocol, interleave, run_machine, CombinedOutcome, Contender, Step,
    StepMachine, TreeOutcome,
};
use crate::embedding::{build_dual, DualGraph, PlanarEmbedding};
use crate::error::AlgoError;
use crate::graph::{EdgeId, MoldGraph, Realization};
use crate::oracle::{derive_seed, Answer, EdgeOracle, ErrorModel, NoisyOracle, Variant};
use crate::union_find::UnionFind;

/// `k = ceil(log2(m^2))` queries per edge for a moldgraph of `m` edges.
pub fn naive_fp_queries_per_edge(m: usize) -> u64 {
    if m == 0 {
        return 0;
    }
    ceil_tolerant(((m * m) as f64).log2())
}

/// Fixed-budget machine: `m * k` queries, an edge is ruled out by its first
/// No, and the never-No subgraph yields the tree (extended with arbitrary
/// moldgraph edges if disconnected).
#[derive(Debug, Clone)]
pub struct NaiveFpMachine {
    graph: MoldGraph,
    edges: Vec<EdgeId>,
    per_edge: u64,
    idx: usize,
    asked: u64,
    never_no: BTreeSet<EdgeId>,
    pending: bool,
    finished: bool,
}

impl NaiveFpMachine {
    pub fn new(graph: &MoldGraph) -> Result<Self, AlgoError> {
        if !graph.is_connected() {
            return Err(crate::error::GraphError::Disconnected.into());
        }
        Ok(NaiveFpMachine {
            edges: graph.edge_ids().collect(),
            never_no: graph.edge_ids().collect(),
            per_edge: naive_fp_queries_per_edge(graph.edge_count()),
            graph: graph.clone(),
            idx: 0,
            asked: 0,
            pending: false,
            finished: false,
        })
    }

    pub fn queries_per_edge(&self) -> u64 {
        self.per_edge
    }
}

impl StepMachine for NaiveFpMachine {
    type Output = BTreeSet<EdgeId>;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<BTreeSet<EdgeId>>, AlgoError> {
        check_protocol(self.finished, self.pending, answer.is_some())?;
        self.pending = false;

        if let Some(ans) = answer {
            if !ans.is_yes() {
                self.never_no.remove(&self.edges[self.idx]);
            }
            self.asked += 1;
            if self.asked == self.per_edge {
                self.idx += 1;
                self.asked = 0;
            }
        }
        if self.idx == self.edges.len() || self.per_edge == 0 {
            self.finished = true;
            let tree = self
                .graph
                .complete_spanning_tree(&self.never_no)
                .expect("machine graph is connected");
            return Ok(Step::Done(tree));
        }
        self.pending = true;
        Ok(Step::NeedQuery(self.edges[self.idx]))
    }
}

/// One-shot fixed-budget run over an oracle view with false-positive
/// semantics.
pub fn naive_fp<O: EdgeOracle>(
    graph: &MoldGraph,
    oracle: &mut O,
) -> Result<TreeOutcome, AlgoError> {
    let (edges, queries_used) = run_machine(NaiveFpMachine::new(graph)?, oracle)?;
    Ok(TreeOutcome {
        edges,
        queries_used,
    })
}

/// Dual-reduction machine for planar moldgraphs with acyclic realizations.
///
/// Internally runs [`super::SparseFnMachine`] on the dual graph; outward
/// queries are translated to primal edge ids through the face bijection and
/// incoming answers are negated before they reach the inner solver. When the
/// inner solver finishes, the returned dual tree names exactly the
/// non-realized primal edges; the machine answers with their complement.
///
/// If the realized subgraph contains a cycle, some dual cut consists
/// entirely of realized edges whose negated answers are never Yes, so the
/// machine keeps querying forever; pair it with [`NaiveFpMachine`] through
/// [`combined_fp`] to stay bounded. A finished run whose complement fails
/// spanning-tree validation is reported as an error instead of a tree.
#[derive(Debug, Clone)]
pub struct PlanarFpMachine {
    graph: MoldGraph,
    dual: DualGraph,
    inner: super::SparseFnMachine,
    pending: bool,
    finished: bool,
}

impl PlanarFpMachine {
    pub fn new(graph: &MoldGraph, embedding: &PlanarEmbedding) -> Result<Self, AlgoError> {
        let dual = build_dual(graph, embedding)?;
        let inner = super::SparseFnMachine::new(dual.dual.clone())?;
        Ok(PlanarFpMachine {
            graph: graph.clone(),
            dual,
            inner,
            pending: false,
            finished: false,
        })
    }
}

impl StepMachine for PlanarFpMachine {
    type Output = BTreeSet<EdgeId>;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<BTreeSet<EdgeId>>, AlgoError> {
        check_protocol(self.finished, self.pending, answer.is_some())?;
        self.pending = false;

        match self.inner.step(answer.map(Answer::negate))? {
            Step::NeedQuery(dual_edge) => {
                let primal = self
                    .dual
                    .to_primal_edge(dual_edge)
                    .expect("inner machine only asks about dual edges");
                self.pending = true;
                Ok(Step::NeedQuery(primal))
            }
            Step::Done(dual_tree) => {
                self.finished = true;
                let absent: BTreeSet<EdgeId> = dual_tree
                    .iter()
                    .map(|&d| {
                        self.dual
                            .to_primal_edge(d)
                            .expect("dual tree edges map back")
                    })
                    .collect();
                let tree: BTreeSet<EdgeId> = self
                    .graph
                    .edge_ids()
                    .filter(|e| !absent.contains(e))
                    .collect();
                if !self.graph.is_spanning_tree(&tree) {
                    return Err(AlgoError::InvalidResult {
                        reason: format!(
                            "complement of {} ruled-out edges is not a spanning tree; \
                             the realized subgraph was not acyclic",
                            absent.len()
                        ),
                    });
                }
                Ok(Step::Done(tree))
            }
        }
    }
}

/// One-shot dual-reduction run. The oracle must be false-positive and the
/// realized subgraph a tree; with a cyclic realization this may not return.
pub fn solve_planar_fp(
    graph: &MoldGraph,
    embedding: &PlanarEmbedding,
    oracle: &mut NoisyOracle,
) -> Result<TreeOutcome, AlgoError> {
    if oracle.model().variant() != Variant::FalsePositive {
        return Err(AlgoError::WrongOracleModel {
            expected: "false-positive",
        });
    }
    let (edges, queries_used) = run_machine(PlanarFpMachine::new(graph, embedding)?, oracle)?;
    Ok(TreeOutcome {
        edges,
        queries_used,
    })
}

/// Interleaves the dual-reduction machine (first, when an embedding is
/// supplied) with the fixed-budget naive machine (second), each over its own
/// oracle view. Without an embedding this degrades to the naive machine
/// alone.
pub fn combined_fp<OA, OB>(
    graph: &MoldGraph,
    embedding: Option<&PlanarEmbedding>,
    planar_oracle: &mut OA,
    naive_oracle: &mut OB,
) -> Result<CombinedOutcome, AlgoError>
where
    OA: EdgeOracle,
    OB: EdgeOracle,
{
    let naive = NaiveFpMachine::new(graph)?;
    match embedding {
        Some(emb) => {
            let planar = PlanarFpMachine::new(graph, emb)?;
            let r = interleave(planar, naive, planar_oracle, naive_oracle)?;
            Ok(CombinedOutcome::from_interleave(r))
        }
        None => {
            let (edges, queries) = run_machine(naive, naive_oracle)?;
            Ok(CombinedOutcome {
                edges,
                winner: Contender::Second,
                queries_total: queries,
                queries_first: 0,
                queries_second: queries,
            })
        }
    }
}

/// [`combined_fp`] with both false-positive oracles built internally: the
/// dual-reduction machine draws from stream 0 of `base_seed`, the naive
/// machine from stream 1 (also when it runs alone).
pub fn combined_fp_seeded(
    graph: &MoldGraph,
    embedding: Option<&PlanarEmbedding>,
    realization: &Realization,
    p: f64,
    base_seed: u64,
) -> Result<CombinedOutcome, AlgoError> {
    let model = ErrorModel::false_positive(p)?;
    let mut planar_oracle = NoisyOracle::new(model, graph, realization, derive_seed(base_seed, 0));
    let mut naive_oracle = NoisyOracle::new(model, graph, realization, derive_seed(base_seed, 1));
    combined_fp(graph, embedding, &mut planar_oracle, &mut naive_oracle)
}

/// True iff `edges` is acyclic in `g`; used to sanity-check realizations
/// before handing them to the dual-reduction path.
pub fn is_acyclic(g: &MoldGraph, edges: &BTreeSet<EdgeId>) -> bool {
    let mut uf = UnionFind::from_keys(g.vertices());
    for &e in edges {
        let Some((u, v)) = g.endpoints_of(e) else {
            return false;
        };
        if !uf.union(u, v) {
            return false;
        }
    }
    true
}
