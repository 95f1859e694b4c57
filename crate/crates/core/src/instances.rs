//! Instance generators: grids with embeddings, parallel-edge ladders,
//! complete graphs, stars, and random trees, each with a seeded realization.
//!
//! Adversarial realizations are modeled as seeded deterministic choices: the
//! algorithms' guarantees hold for any fixed realization, so the caller picks
//! the seed and gets reproducible worst cases.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{EdgeEnd, PlanarEmbedding};
use crate::error::GraphError;
use crate::graph::{EdgeId, MoldGraph, Realization, VertexId};
use crate::union_find::UnionFind;

/// A generated moldgraph plus its secret realized edge set and, for planar
/// families, a rotation system.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: MoldGraph,
    pub embedding: Option<PlanarEmbedding>,
    pub realized: BTreeSet<EdgeId>,
}

impl Instance {
    /// The realized set as a checked connected spanning [`Realization`].
    /// Fails for deliberately broken instances (`RandomTree` with a dropped
    /// edge).
    pub fn realization(&self) -> Result<Realization, GraphError> {
        Realization::new(&self.graph, self.realized.clone())
    }
}

/// How grid realizations are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridRealization {
    /// Seeded random spanning tree (randomized edge order + union-find).
    RandomSpanningTree,
    /// Deterministic serpentine Hamiltonian path.
    SnakePath,
}

/// Which lower-bound ladder family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderMode {
    /// One realized edge per parallel pair.
    TwoSidedLb,
    /// Half the pairs keep one realized edge, the other half keep both.
    FpLb,
}

/// Everything the harness needs to rebuild an instance from scratch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Grid {
        rows: usize,
        cols: usize,
        realize: GridRealization,
    },
    Ladder {
        rungs: usize,
        mode: LadderMode,
    },
    Complete {
        n: usize,
    },
    Star {
        n: usize,
    },
    RandomTree {
        n: usize,
        drop_one: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub family: Family,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn generate(&self) -> Instance {
        match self.family {
            Family::Grid {
                rows,
                cols,
                realize,
            } => gen_grid(rows, cols, realize, self.seed),
            Family::Ladder { rungs, mode } => gen_ladder(rungs, mode, self.seed),
            Family::Complete { n } => gen_complete(n, self.seed),
            Family::Star { n } => gen_star(n, self.seed),
            Family::RandomTree { n, drop_one } => gen_random_tree(n, drop_one, self.seed),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Grid { .. } => "grid",
            Family::Ladder { .. } => "ladder",
            Family::Complete { .. } => "complete",
            Family::Star { .. } => "star",
            Family::RandomTree { .. } => "tree",
        }
    }
}

/// `rows x cols` grid with row-major vertex ids, a clockwise rotation system
/// (up, right, down, left at every vertex), and a realization per `mode`.
pub fn gen_grid(rows: usize, cols: usize, mode: GridRealization, seed: u64) -> Instance {
    assert!(rows >= 1 && cols >= 1, "grid needs at least one cell");
    let vid = |r: usize, c: usize| VertexId((r * cols + c) as u32);

    let mut edges = Vec::new();
    let mut right = BTreeMap::new(); // (r,c) -> edge to (r,c+1)
    let mut down = BTreeMap::new(); // (r,c) -> edge to (r+1,c)
    let mut next_id = 0u32;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                let e = EdgeId(next_id);
                next_id += 1;
                edges.push((e, vid(r, c), vid(r, c + 1)));
                right.insert((r, c), e);
            }
            if r + 1 < rows {
                let e = EdgeId(next_id);
                next_id += 1;
                edges.push((e, vid(r, c), vid(r + 1, c)));
                down.insert((r, c), e);
            }
        }
    }
    let graph = MoldGraph::from_parts((0..(rows * cols) as u32).map(VertexId), edges)
        .expect("grid construction is well formed");

    // clockwise rotation with rows growing downward: up, right, down, left
    let mut rotation = BTreeMap::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut ends = Vec::new();
            if r > 0 {
                ends.push(EdgeEnd::new(down[&(r - 1, c)], 1));
            }
            if c + 1 < cols {
                ends.push(EdgeEnd::new(right[&(r, c)], 0));
            }
            if r + 1 < rows {
                ends.push(EdgeEnd::new(down[&(r, c)], 0));
            }
            if c > 0 {
                ends.push(EdgeEnd::new(right[&(r, c - 1)], 1));
            }
            rotation.insert(vid(r, c), ends);
        }
    }
    let embedding =
        PlanarEmbedding::new(&graph, rotation).expect("grid rotation system is consistent");

    let realized = match mode {
        GridRealization::SnakePath => {
            let mut path = BTreeSet::new();
            for r in 0..rows {
                for c in 0..cols.saturating_sub(1) {
                    path.insert(right[&(r, c)]);
                }
                if r + 1 < rows {
                    let turn_col = if r % 2 == 0 { cols - 1 } else { 0 };
                    path.insert(down[&(r, turn_col)]);
                }
            }
            path
        }
        GridRealization::RandomSpanningTree => random_spanning_tree(&graph, seed),
    };

    Instance {
        graph,
        embedding: Some(embedding),
        realized,
    }
}

/// Path of `rungs + 1` vertices where consecutive vertices are joined by a
/// parallel pair of simple edges (`2i`, `2i + 1` between `i` and `i + 1`).
///
/// `TwoSidedLb` realizes exactly one seeded edge per pair. `FpLb` picks a
/// seeded half of the pairs to keep a single realized edge and realizes both
/// edges of the remaining pairs. Either way every pair keeps at least one
/// realized edge, so the realization stays connected and spanning.
pub fn gen_ladder(rungs: usize, mode: LadderMode, seed: u64) -> Instance {
    assert!(rungs >= 1, "ladder needs at least one pair");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..rungs {
        let (u, v) = (VertexId(i as u32), VertexId(i as u32 + 1));
        edges.push((EdgeId(2 * i as u32), u, v));
        edges.push((EdgeId(2 * i as u32 + 1), u, v));
    }
    let graph = MoldGraph::from_parts((0..=rungs as u32).map(VertexId), edges)
        .expect("ladder construction is well formed");

    let mut realized = BTreeSet::new();
    match mode {
        LadderMode::TwoSidedLb => {
            for i in 0..rungs {
                let pick = 2 * i as u32 + u32::from(rng.random::<bool>());
                realized.insert(EdgeId(pick));
            }
        }
        LadderMode::FpLb => {
            let mut pair_ids: Vec<usize> = (0..rungs).collect();
            pair_ids.shuffle(&mut rng);
            let single: BTreeSet<usize> = pair_ids[..rungs / 2].iter().copied().collect();
            for i in 0..rungs {
                if single.contains(&i) {
                    let pick = 2 * i as u32 + u32::from(rng.random::<bool>());
                    realized.insert(EdgeId(pick));
                } else {
                    realized.insert(EdgeId(2 * i as u32));
                    realized.insert(EdgeId(2 * i as u32 + 1));
                }
            }
        }
    }

    Instance {
        graph,
        embedding: None,
        realized,
    }
}

/// Complete graph on `n` vertices with a seeded random spanning-tree
/// realization.
pub fn gen_complete(n: usize, seed: u64) -> Instance {
    assert!(n >= 1);
    let mut edges = Vec::new();
    let mut next_id = 0u32;
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((EdgeId(next_id), VertexId(u as u32), VertexId(v as u32)));
            next_id += 1;
        }
    }
    let graph = MoldGraph::from_parts((0..n as u32).map(VertexId), edges)
        .expect("complete graph construction is well formed");
    let realized = random_spanning_tree(&graph, seed);
    Instance {
        graph,
        embedding: None,
        realized,
    }
}

/// Star with center 0 and `n - 1` leaves, fully realized (its only spanning
/// subgraph). The seed is accepted for interface symmetry but unused.
pub fn gen_star(n: usize, _seed: u64) -> Instance {
    assert!(n >= 1);
    let edges: Vec<_> = (1..n)
        .map(|v| (EdgeId(v as u32 - 1), VertexId(0), VertexId(v as u32)))
        .collect();
    let graph = MoldGraph::from_parts((0..n as u32).map(VertexId), edges)
        .expect("star construction is well formed");
    let realized = graph.edge_ids().collect();
    Instance {
        graph,
        embedding: None,
        realized,
    }
}

/// Random tree on `n` vertices (each vertex attaches to a random earlier
/// one), fully realized. With `drop_one` a seeded edge is removed from the
/// realized set, leaving a deliberately disconnected "broken tree" for
/// verification experiments.
pub fn gen_random_tree(n: usize, drop_one: bool, seed: u64) -> Instance {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.random_range(0..v);
        edges.push((
            EdgeId(v as u32 - 1),
            VertexId(parent as u32),
            VertexId(v as u32),
        ));
    }
    let graph = MoldGraph::from_parts((0..n as u32).map(VertexId), edges)
        .expect("tree construction is well formed");
    let mut realized: BTreeSet<EdgeId> = graph.edge_ids().collect();
    if drop_one && !realized.is_empty() {
        let victim = rng.random_range(0..realized.len());
        let victim = *realized.iter().nth(victim).expect("index in range");
        realized.remove(&victim);
    }
    Instance {
        graph,
        embedding: None,
        realized,
    }
}

/// Spanning tree sampled by shuffling the edge ids and keeping every edge
/// that merges two union-find components.
fn random_spanning_tree(g: &MoldGraph, seed: u64) -> BTreeSet<EdgeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<EdgeId> = g.edge_ids().collect();
    ids.shuffle(&mut rng);
    let mut uf = UnionFind::from_keys(g.vertices());
    let mut tree = BTreeSet::new();
    for e in ids {
        let (u, v) = g.endpoints_of(e).expect("edge listed by graph");
        if uf.union(u, v) {
            tree.insert(e);
        }
    }
    tree
}
