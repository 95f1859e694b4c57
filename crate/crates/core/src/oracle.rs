//! Simulated noisy edge-existence oracles.
//!
//! An oracle answers "is edge `e` realized?" with per-query independent
//! noise. Three error regimes are supported, all with error probability
//! `p < 1/2`:
//!
//! * two-sided: any answer may be wrong with probability `p`;
//! * false-negative: a non-realized edge always answers No, a realized edge
//!   answers No with probability `p` (so Yes is certain evidence);
//! * false-positive: a realized edge always answers Yes, a non-realized edge
//!   answers Yes with probability `p` (so No is certain evidence).
//!
//! Each oracle owns one seeded RNG stream, advanced exactly once per query
//! regardless of the model, so runs across models with the same seed consume
//! randomness identically. Queries cost one unit each; counts are tracked
//! globally and per edge.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::OracleError;
use crate::graph::{EdgeId, MoldGraph, Realization};

/// Oracle reply to an existence query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn negate(self) -> Answer {
        match self {
            Answer::Yes => Answer::No,
            Answer::No => Answer::Yes,
        }
    }

    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        matches!(self, Answer::Yes)
    }
}

/// Which answers can be wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    TwoSided,
    FalseNegative,
    FalsePositive,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::TwoSided => "two-sided",
            Variant::FalseNegative => "fn",
            Variant::FalsePositive => "fp",
        }
    }
}

/// Error regime plus error probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    variant: Variant,
    p: f64,
}

impl ErrorModel {
    /// `p` must lie in `[0, 1/2)`. Zero is allowed for noiseless runs.
    pub fn new(variant: Variant, p: f64) -> Result<Self, OracleError> {
        if !(0.0..0.5).contains(&p) || !p.is_finite() {
            return Err(OracleError::InvalidProbability { p });
        }
        Ok(ErrorModel { variant, p })
    }

    pub fn two_sided(p: f64) -> Result<Self, OracleError> {
        Self::new(Variant::TwoSided, p)
    }

    pub fn false_negative(p: f64) -> Result<Self, OracleError> {
        Self::new(Variant::FalseNegative, p)
    }

    pub fn false_positive(p: f64) -> Result<Self, OracleError> {
        Self::new(Variant::FalsePositive, p)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Read-only snapshot of query accounting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryStats {
    pub total: u64,
    pub per_edge: BTreeMap<EdgeId, u64>,
}

/// Anything that can be asked "is edge `e` realized?". Implemented by
/// [`NoisyOracle`] and by wrappers that reinterpret its answers.
pub trait EdgeOracle {
    fn query(&mut self, e: EdgeId) -> Result<Answer, OracleError>;
}

impl<O: EdgeOracle + ?Sized> EdgeOracle for &mut O {
    fn query(&mut self, e: EdgeId) -> Result<Answer, OracleError> {
        (**self).query(e)
    }
}

/// Seeded noisy oracle over one realization. Single-owner mutable state;
/// parallel experiments should give each trial its own oracle with an
/// independently derived seed.
#[derive(Debug, Clone)]
pub struct NoisyOracle {
    model: ErrorModel,
    known_edges: BTreeSet<EdgeId>,
    realized: BTreeSet<EdgeId>,
    rng: ChaCha8Rng,
    query_count: u64,
    per_edge: HashMap<EdgeId, u64>,
}

impl NoisyOracle {
    pub fn new(model: ErrorModel, g: &MoldGraph, realization: &Realization, seed: u64) -> Self {
        NoisyOracle {
            model,
            known_edges: g.edge_ids().collect(),
            realized: realization.edges().clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            query_count: 0,
            per_edge: HashMap::new(),
        }
    }

    pub fn model(&self) -> ErrorModel {
        self.model
    }

    /// Ground truth, for validation code only; algorithms must not call this.
    pub fn truly_realized(&self, e: EdgeId) -> bool {
        self.realized.contains(&e)
    }

    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    pub fn stats(&self) -> QueryStats {
        QueryStats {
            total: self.query_count,
            per_edge: self.per_edge.iter().map(|(&e, &c)| (e, c)).collect(),
        }
    }

    /// View with every answer negated. Queries through the view advance and
    /// count against this oracle.
    pub fn inverted(&mut self) -> Inverted<&mut NoisyOracle> {
        Inverted::new(self)
    }
}

impl EdgeOracle for NoisyOracle {
    fn query(&mut self, e: EdgeId) -> Result<Answer, OracleError> {
        if !self.known_edges.contains(&e) {
            return Err(OracleError::UnknownEdge { edge: e });
        }
        self.query_count += 1;
        *self.per_edge.entry(e).or_insert(0) += 1;
        // exactly one draw per query, in every model
        let u: f64 = self.rng.random();
        let realized = self.realized.contains(&e);
        let flip = u < self.model.p;
        let ans = match self.model.variant {
            Variant::TwoSided => Answer::from_bool(realized != flip),
            Variant::FalseNegative => Answer::from_bool(realized && !flip),
            Variant::FalsePositive => Answer::from_bool(realized || flip),
        };
        Ok(ans)
    }
}

/// Answer-negating wrapper. Wrapping twice restores the original
/// distribution; counters always live in the innermost oracle.
#[derive(Debug)]
pub struct Inverted<O> {
    inner: O,
}

impl<O: EdgeOracle> Inverted<O> {
    pub fn new(inner: O) -> Self {
        Inverted { inner }
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: EdgeOracle> EdgeOracle for Inverted<O> {
    fn query(&mut self, e: EdgeId) -> Result<Answer, OracleError> {
        Ok(self.inner.query(e)?.negate())
    }
}

/// Derives an independent seed for a numbered stream of one experiment.
/// SplitMix64 over `base + stream * golden-gamma`; stable across platforms
/// and part of the reproducibility contract.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
