//! Majority-vote spanning-tree search for the two-sided error regime.
//!
//! Every edge of the moldgraph is queried the same fixed number of times,
//! `k = ceil(ln(m^2) / (1 - 2p))` (natural log; the exponential tail bound
//! behind the success guarantee is stated base e). Edges with strictly more
//! Yes than No answers are treated as realized; the result is a spanning
//! tree of that subgraph, extended with arbitrary moldgraph edges when the
//! majority subgraph is disconnected.

use std::collections::BTreeSet;

use crate::algorithms::{ceil_tolerant, check_protocol, Step, StepMachine, TreeOutcome};
use crate::error::AlgoError;
use crate::graph::{EdgeId, MoldGraph};
use crate::oracle::{Answer, NoisyOracle, Variant};

/// `k = ceil(ln(m^2) / (1 - 2p))` queries per edge for a moldgraph of `m`
/// edges.
pub fn naive_two_sided_queries_per_edge(m: usize, p: f64) -> u64 {
    debug_assert!((0.0..0.5).contains(&p));
    ceil_tolerant(((m * m) as f64).ln() / (1.0 - 2.0 * p))
}

/// Fixed-budget majority-vote machine: `m * k` queries, then tree
/// extraction.
#[derive(Debug, Clone)]
pub struct NaiveTwoSidedMachine {
    graph: MoldGraph,
    edges: Vec<EdgeId>,
    per_edge: u64,
    idx: usize,
    asked: u64,
    yes: u64,
    majority: BTreeSet<EdgeId>,
    pending: bool,
    finished: bool,
}

impl NaiveTwoSidedMachine {
    pub fn new(graph: &MoldGraph, p: f64) -> Result<Self, AlgoError> {
        let per_edge = naive_two_sided_queries_per_edge(graph.edge_count(), p);
        Self::with_queries_per_edge(graph, per_edge)
    }

    /// Same machine with an explicit per-edge budget, for studying how the
    /// success rate responds to the repetition count.
    pub fn with_queries_per_edge(graph: &MoldGraph, per_edge: u64) -> Result<Self, AlgoError> {
        if !graph.is_connected() {
            return Err(crate::error::GraphError::Disconnected.into());
        }
        Ok(NaiveTwoSidedMachine {
            edges: graph.edge_ids().collect(),
            graph: graph.clone(),
            per_edge,
            idx: 0,
            asked: 0,
            yes: 0,
            majority: BTreeSet::new(),
            pending: false,
            finished: false,
        })
    }

    pub fn queries_per_edge(&self) -> u64 {
        self.per_edge
    }

    fn extract(&mut self) -> Result<Step<BTreeSet<EdgeId>>, AlgoError> {
        self.finished = true;
        let tree = self
            .graph
            .complete_spanning_tree(&self.majority)
            .expect("machine graph is connected");
        Ok(Step::Done(tree))
    }
}

impl StepMachine for NaiveTwoSidedMachine {
    type Output = BTreeSet<EdgeId>;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<BTreeSet<EdgeId>>, AlgoError> {
        check_protocol(self.finished, self.pending, answer.is_some())?;
        self.pending = false;

        if let Some(ans) = answer {
            self.asked += 1;
            if ans.is_yes() {
                self.yes += 1;
            }
            if self.asked == self.per_edge {
                if 2 * self.yes > self.per_edge {
                    self.majority.insert(self.edges[self.idx]);
                }
                self.idx += 1;
                self.asked = 0;
                self.yes = 0;
            }
        }
        if self.idx == self.edges.len() || self.per_edge == 0 {
            return self.extract();
        }
        self.pending = true;
        Ok(Step::NeedQuery(self.edges[self.idx]))
    }
}

/// One-shot majority-vote run; the oracle must be two-sided.
pub fn naive_two_sided(
    graph: &MoldGraph,
    oracle: &mut NoisyOracle,
) -> Result<TreeOutcome, AlgoError> {
    if oracle.model().variant() != Variant::TwoSided {
        return Err(AlgoError::WrongOracleModel {
            expected: "two-sided",
        });
    }
    let machine = NaiveTwoSidedMachine::new(graph, oracle.model().p())?;
    let (edges, queries_used) = super::run_machine(machine, oracle)?;
    Ok(TreeOutcome {
        edges,
        queries_used,
    })
}
