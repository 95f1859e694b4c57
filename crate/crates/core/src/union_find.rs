//! Disjoint-set forest over arbitrary ordered keys.

use std::collections::BTreeMap;

/// Union-find with path halving and union by rank, keyed by any ordered
/// copyable id type. Built once from the full key set; unknown keys panic.
#[derive(Debug, Clone)]
pub struct UnionFind<K: Ord + Copy> {
    parent: BTreeMap<K, K>,
    rank: BTreeMap<K, u32>,
    components: usize,
}

impl<K: Ord + Copy> UnionFind<K> {
    pub fn from_keys(keys: impl IntoIterator<Item = K>) -> Self {
        let parent: BTreeMap<K, K> = keys.into_iter().map(|k| (k, k)).collect();
        let rank = parent.keys().map(|&k| (k, 0)).collect();
        let components = parent.len();
        UnionFind {
            parent,
            rank,
            components,
        }
    }

    pub fn find(&mut self, mut k: K) -> K {
        loop {
            let p = self.parent[&k];
            if p == k {
                return k;
            }
            let gp = self.parent[&p];
            self.parent.insert(k, gp);
            k = gp;
        }
    }

    /// Merges the sets of `a` and `b`. Returns `true` if they were distinct.
    pub fn union(&mut self, a: K, b: K) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[&ra] >= self.rank[&rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent.insert(lo, hi);
        if self.rank[&ra] == self.rank[&rb] {
            *self.rank.get_mut(&hi).expect("known root") += 1;
        }
        self.components -= 1;
        true
    }

    pub fn connected(&mut self, a: K, b: K) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}
