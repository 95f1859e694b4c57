//! Query-efficient spanning-tree algorithms over noisy oracles.
//!
//! Every algorithm is written as a resumable [`StepMachine`] that consumes
//! one oracle answer at a time and emits either the next edge to query or a
//! final result. One-shot entry points drive a machine against an oracle to
//! completion; [`interleave`] runs two machines in strict alternation over
//! independent oracle views and returns whichever finishes first, which costs
//! at most twice the winner's own queries plus one.

mod false_negative;
mod false_positive;
mod two_sided;
mod verify;

pub use false_negative::{
    combined_fn, combined_fn_seeded, discover, naive_fn, solve_sparse_fn, DiscoverMachine,
    NaiveFnMachine, SparseFnMachine,
};
pub use false_positive::{
    combined_fp, combined_fp_seeded, is_acyclic, naive_fp, naive_fp_queries_per_edge,
    solve_planar_fp, NaiveFpMachine, PlanarFpMachine,
};
pub use two_sided::{naive_two_sided, naive_two_sided_queries_per_edge, NaiveTwoSidedMachine};
pub use verify::{
    expected_hitting_time_bound, hitting_probability, threshold_and_budget, verify_tree,
    VerifyMachine, VerifyOutcome, VerifyParams,
};

use std::collections::BTreeSet;

use crate::error::AlgoError;
use crate::graph::EdgeId;
use crate::oracle::{Answer, EdgeOracle};

/// What a machine wants next: an oracle answer for `NeedQuery(e)`, or
/// nothing because it finished with `Done`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step<T> {
    NeedQuery(EdgeId),
    Done(T),
}

/// Resumable algorithm state.
///
/// The first `step` takes `None`; every later call must carry exactly the
/// answer to the previously emitted `NeedQuery`. Stepping a finished machine
/// is an error. A machine never asks about an edge outside its input graph.
pub trait StepMachine {
    type Output;

    fn step(&mut self, answer: Option<Answer>) -> Result<Step<Self::Output>, AlgoError>;
}

/// Ceiling that forgives floating-point overshoot just above an integer,
/// so closed-form query budgets evaluate exactly (e.g. 1/0.1 = 10 + 2e-16
/// must round to 10, not 11).
pub(crate) fn ceil_tolerant(x: f64) -> u64 {
    let nudged = (x - 1e-9).ceil();
    if nudged <= 0.0 {
        0
    } else {
        nudged as u64
    }
}

/// Shared protocol bookkeeping: answers must match pending queries.
pub(crate) fn check_protocol(
    finished: bool,
    pending: bool,
    has_answer: bool,
) -> Result<(), AlgoError> {
    if finished {
        return Err(AlgoError::MachineFinished);
    }
    match (pending, has_answer) {
        (true, false) => Err(AlgoError::MissingAnswer),
        (false, true) => Err(AlgoError::UnexpectedAnswer),
        _ => Ok(()),
    }
}

/// Drives `machine` against `oracle` until it finishes; returns the output
/// and the number of queries spent.
pub fn run_machine<M, O>(mut machine: M, oracle: &mut O) -> Result<(M::Output, u64), AlgoError>
where
    M: StepMachine,
    O: EdgeOracle,
{
    let mut answer = None;
    let mut queries = 0u64;
    loop {
        match machine.step(answer.take())? {
            Step::NeedQuery(e) => {
                answer = Some(oracle.query(e)?);
                queries += 1;
            }
            Step::Done(out) => return Ok((out, queries)),
        }
    }
}

/// A spanning-tree search result plus its query bill.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeOutcome {
    pub edges: BTreeSet<EdgeId>,
    pub queries_used: u64,
}

/// Which of two interleaved machines finished first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contender {
    First,
    Second,
}

/// Result of [`interleave`]: the winner's output and both machines' bills.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleaveOutcome<T> {
    pub output: T,
    pub winner: Contender,
    pub queries_first: u64,
    pub queries_second: u64,
}

impl<T> InterleaveOutcome<T> {
    pub fn total_queries(&self) -> u64 {
        self.queries_first + self.queries_second
    }

    pub fn winner_queries(&self) -> u64 {
        match self.winner {
            Contender::First => self.queries_first,
            Contender::Second => self.queries_second,
        }
    }
}

/// Runs `a` and `b` in strict alternation (`a` first), routing each
/// machine's queries to its own oracle view, and returns the first result.
///
/// A turn executes one query and feeds the answer straight back, so a win
/// is noticed before the other machine moves again: if the first machine
/// finishes at its own query `t` the total bill is at most `2t - 1`, and if
/// the second one does it is at most `2t`; either way no more than twice
/// the winner's solo bill plus one.
pub fn interleave<A, B, OA, OB>(
    mut a: A,
    mut b: B,
    oracle_a: &mut OA,
    oracle_b: &mut OB,
) -> Result<InterleaveOutcome<A::Output>, AlgoError>
where
    A: StepMachine,
    B: StepMachine<Output = A::Output>,
    OA: EdgeOracle,
    OB: EdgeOracle,
{
    let mut queries_a = 0u64;
    let mut queries_b = 0u64;
    let outcome = |output, winner, queries_a, queries_b| InterleaveOutcome {
        output,
        winner,
        queries_first: queries_a,
        queries_second: queries_b,
    };

    let mut pending_a = match a.step(None)? {
        Step::Done(output) => return Ok(outcome(output, Contender::First, 0, 0)),
        Step::NeedQuery(e) => e,
    };
    let mut pending_b = match b.step(None)? {
        Step::Done(output) => return Ok(outcome(output, Contender::Second, 0, 0)),
        Step::NeedQuery(e) => e,
    };
    loop {
        let answer = oracle_a.query(pending_a)?;
        queries_a += 1;
        match a.step(Some(answer))? {
            Step::Done(output) => {
                return Ok(outcome(output, Contender::First, queries_a, queries_b));
            }
            Step::NeedQuery(e) => pending_a = e,
        }
        let answer = oracle_b.query(pending_b)?;
        queries_b += 1;
        match b.step(Some(answer))? {
            Step::Done(output) => {
                return Ok(outcome(output, Contender::Second, queries_a, queries_b));
            }
            Step::NeedQuery(e) => pending_b = e,
        }
    }
}

/// Outcome of a combined (alternating) run, with the winning side recorded
/// so callers can compare against solo executions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedOutcome {
    pub edges: BTreeSet<EdgeId>,
    pub winner: Contender,
    pub queries_total: u64,
    pub queries_first: u64,
    pub queries_second: u64,
}

impl CombinedOutcome {
    pub(crate) fn from_interleave(r: InterleaveOutcome<BTreeSet<EdgeId>>) -> Self {
        CombinedOutcome {
            queries_total: r.total_queries(),
            edges: r.output,
            winner: r.winner,
            queries_first: r.queries_first,
            queries_second: r.queries_second,
        }
    }

    pub fn winner_queries(&self) -> u64 {
        match self.winner {
            Contender::First => self.queries_first,
            Contender::Second => self.queries_second,
        }
    }
}
