//! Tree-connectivity verification with a two-sided oracle.
//!
//! For each edge in a fixed order, queries are repeated until the running
//! count of Yes-minus-No answers reaches a threshold `c`, drawing from one
//! global query budget. A realized edge behaves as a random walk biased
//! upward and reaches `c` quickly; a missing edge walks downward and almost
//! never reaches it, so the budget drains and the tree is declared
//! disconnected.
//!
//! With `c = ceil(log_{(1-p)/p}(1/delta))` and budget
//! `B = ceil((1/epsilon) * 1/(1-2p)) * c * n`, connected trees are accepted
//! with probability at least `1 - epsilon` and broken trees rejected with
//! probability at least `1 - delta`.

use crate::algorithms::{ceil_tolerant, check_protocol, Step, StepMachine};
use crate::error::AlgoError;
use crate::graph::{EdgeId, MoldGraph};
use crate::oracle::{Answer, NoisyOracle, Variant};

/// Requested failure probabilities and the assumed oracle error rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyParams {
    epsilon: f64,
    delta: f64,
    p: f64,
}

impl VerifyParams {
    /// `epsilon` bounds the chance of rejecting a connected tree, `delta`
    /// the chance of accepting a broken one. All of `epsilon`, `delta` must
    /// lie in `(0, 1)` and `p` in `(0, 1/2)`; the degenerate `delta = 1`
    /// (threshold zero) is rejected here.
    pub fn new(epsilon: f64, delta: f64, p: f64) -> Result<Self, AlgoError> {
        let check = |name: &'static str, value: f64, lo: f64, hi: f64, range: &'static str| {
            if value.is_finite() && value > lo && value < hi {
                Ok(())
            } else {
                Err(AlgoError::InvalidParameter { name, value, range })
            }
        };
        check("epsilon", epsilon, 0.0, 1.0, "(0, 1)")?;
        check("delta", delta, 0.0, 1.0, "(0, 1)")?;
        check("p", p, 0.0, 0.5, "(0, 1/2)")?;
        Ok(VerifyParams { epsilon, delta, p })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Per-edge counter target `c = ceil(log_{(1-p)/p}(1/delta))` and global
/// budget `B = ceil((1/epsilon) * 1/(1-2p)) * c * n` for a tree of `n` edges.
///
/// The threshold is computed as the smallest integer power of `(1-p)/p`
/// reaching `1/delta`, which sidesteps logarithm rounding.
pub fn threshold_and_budget(params: &VerifyParams, n_edges: usize) -> (u64, u64) {
    let ratio = (1.0 - params.p) / params.p;
    let target = 1.0 / params.delta;
    let mut c = 0u64;
    let mut pow = 1.0f64;
    while pow < target * (1.0 - 1e-12) {
        pow *= ratio;
        c += 1;
        if c > 1_000_000 {
            // unreachable for sane parameters; fall back to the closed form
            c = ceil_tolerant(target.ln() / ratio.ln());
            break;
        }
    }
    let slack = ceil_tolerant((1.0 / params.epsilon) * (1.0 / (1.0 - 2.0 * params.p)));
    let budget = slack * c * n_edges as u64;
    (c, budget)
}

/// Probability that the counter walk of a *non-realized* edge (up with
/// probability `p`, down with `1 - p`) ever hits threshold `c` when started
/// at `x`: `((1-p)/p)^(x-c)` for `x` in `[0, c]`.
pub fn hitting_probability(p: f64, c: u64, x: u64) -> Result<f64, AlgoError> {
    if !(p > 0.0 && p < 0.5) || !p.is_finite() {
        return Err(AlgoError::InvalidParameter {
            name: "p",
            value: p,
            range: "(0, 1/2)",
        });
    }
    if x > c {
        return Err(AlgoError::InvalidParameter {
            name: "x",
            value: x as f64,
            range: "[0, c]",
        });
    }
    let ratio = (1.0 - p) / p;
    Ok(ratio.powi(-((c - x) as i32)))
}

/// Upper bound `c / (1 - 2p)` on the expected number of queries a realized
/// edge needs to push its counter from 0 to `c`.
pub fn expected_hitting_time_bound(p: f64, c: u64) -> f64 {
    c as f64 / (1.0 - 2.0 * p)
}

/// Verdict plus accounting for one verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub connected: bool,
    pub queries_used: u64,
    pub threshold: u64,
    pub budget: u64,
}

/// Resumable verification run over a tree's edges in ascending id order.
#[derive(Debug, Clone)]
pub struct VerifyMachine {
    edges: Vec<EdgeId>,
    idx: usize,
    counter: i64,
    threshold: u64,
    initial_budget: u64,
    remaining: u64,
    pending: bool,
    finished: bool,
}

impl VerifyMachine {
    /// `tree` must be a tree: connected with exactly `V - 1` edges.
    pub fn new(tree: &MoldGraph, params: &VerifyParams) -> Result<Self, AlgoError> {
        if tree.vertex_count() == 0
            || tree.edge_count() != tree.vertex_count() - 1
            || !tree.is_connected()
        {
            return Err(AlgoError::NotATree);
        }
        let (threshold, budget) = threshold_and_budget(params, tree.edge_count());
        Ok(VerifyMachine {
            edges: tree.edge_ids().collect(),
            idx: 0,
            counter: 0,
            threshold,
            initial_budget: budget,
            remaining: budget,
            pending: false,
            finished: false,
        })
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn budget(&self) -> u64 {
        self.initial_budget
    }

    /// Yes-minus-No balance of the edge currently being examined.
    pub fn counter(&self) -> i64 {
        self.counter
    }

    pub fn remaining_budget(&self) -> u64 {
        self.remaining
    }

    fn finish(&mut self, connected: bool) -> Step<bool> {
        self.finished = true;
        Step::Done(connected)
    }
}

impl StepMachine for VerifyMachine {
    type Output = bool;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<bool>, AlgoError> {
        check_protocol(self.finished, self.pending, answer.is_some())?;
        self.pending = false;

        if let Some(ans) = answer {
            self.remaining -= 1;
            self.counter += if ans.is_yes() { 1 } else { -1 };
            if self.counter >= self.threshold as i64 {
                // edge accepted; the budget check still applies on loop exit
                if self.remaining == 0 {
                    return Ok(self.finish(false));
                }
                self.idx += 1;
                self.counter = 0;
                if self.idx == self.edges.len() {
                    return Ok(self.finish(true));
                }
            } else if self.remaining == 0 {
                return Ok(self.finish(false));
            }
        } else if self.edges.is_empty() {
            // a single-vertex tree is vacuously connected
            return Ok(self.finish(true));
        }

        self.pending = true;
        Ok(Step::NeedQuery(self.edges[self.idx]))
    }
}

/// One-shot verification of `tree` against a two-sided oracle.
pub fn verify_tree(
    tree: &MoldGraph,
    oracle: &mut NoisyOracle,
    params: &VerifyParams,
) -> Result<VerifyOutcome, AlgoError> {
    if oracle.model().variant() != Variant::TwoSided {
        return Err(AlgoError::WrongOracleModel {
            expected: "two-sided",
        });
    }
    let machine = VerifyMachine::new(tree, params)?;
    let (threshold, budget) = (machine.threshold(), machine.budget());
    let (connected, queries_used) = super::run_machine(machine, oracle)?;
    Ok(VerifyOutcome {
        connected,
        queries_used,
        threshold,
        budget,
    })
}
