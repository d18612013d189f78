//! Disjoint sets over the vertices `1..=n`, with path compression and union by rank.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::Vertex;

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<Vertex>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: Vertex) -> Self {
        Self { parent: (0..=n).collect(), rank: alloc::vec![0; n as usize + 1] }
    }

    pub fn len(&self) -> Vertex {
        (self.parent.len() - 1) as Vertex
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn find(&mut self, v: Vertex) -> Vertex {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = v;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Returns false when `u` and `v` were already in the same set.
    pub fn unite(&mut self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = (self.find(u), self.find(v));
        if a == b {
            return false;
        }
        let (ra, rb) = (self.rank[a as usize], self.rank[b as usize]);
        if ra < rb {
            self.parent[a as usize] = b;
        } else {
            self.parent[b as usize] = a;
            if ra == rb {
                self.rank[a as usize] += 1;
            }
        }
        true
    }

    pub fn same(&mut self, u: Vertex, v: Vertex) -> bool {
        self.find(u) == self.find(v)
    }

    /// Current sets, each sorted, ordered by smallest member.
    pub fn partition(&mut self) -> Vec<Vec<Vertex>> {
        let mut sets: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for v in 1..=self.len() {
            let r = self.find(v);
            sets.entry(r).or_default().push(v);
        }
        let mut out: Vec<_> = sets.into_values().collect();
        out.sort_unstable_by_key(|s| s[0]);
        out
    }
}
