//! Explicit graphs: the decompressed form of a compression.
//!
//! Vertices are the dense integers `1..=n`. Edge sets are kept sorted and
//! duplicate free; undirected edges are stored with the smaller endpoint
//! first. Self-loops are allowed in both kinds of graph.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

pub type Vertex = u32;
pub type Weight = u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("endpoint {vertex} out of range 1..={n}")]
    EndpointOutOfRange { vertex: Vertex, n: Vertex },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("{weights} weights given for {edges} edges")]
    WeightCount { weights: usize, edges: usize },
    #[error("weighted graphs must be undirected")]
    DirectedWeighted,
    #[error("shore vertex {0} out of range or repeated")]
    BadShore(Vertex),
}

#[inline]
pub(crate) fn canonical_pair(directed: bool, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if directed || u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    directed: bool,
    n: Vertex,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn empty(directed: bool, n: Vertex) -> Self {
        Self { directed, n, edges: Vec::new() }
    }

    /// Builds a graph, silently merging repeated edges.
    pub fn from_edges<I>(directed: bool, n: Vertex, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Self::collect_checked(directed, n, edges)?;
        list.sort_unstable();
        list.dedup();
        Ok(Self { directed, n, edges: list })
    }

    /// Builds a graph and rejects repeated edges (`(2,1)` repeats `(1,2)` when
    /// undirected).
    pub fn from_edges_strict<I>(directed: bool, n: Vertex, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Self::collect_checked(directed, n, edges)?;
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { directed, n, edges: list })
    }

    /// Builds a graph from an already sorted, duplicate-free, canonical list.
    pub(crate) fn from_sorted_unchecked(directed: bool, n: Vertex, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { directed, n, edges }
    }

    fn collect_checked<I>(directed: bool, n: Vertex, edges: I) -> Result<Vec<(Vertex, Vertex)>, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        edges
            .into_iter()
            .map(|(u, v)| {
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(GraphError::EndpointOutOfRange { vertex: x, n });
                    }
                }
                Ok(canonical_pair(directed, u, v))
            })
            .collect()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> Vertex {
        self.n
    }

    pub fn vertices(&self) -> core::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&canonical_pair(self.directed, u, v)).is_ok()
    }

    /// Out-neighbour lists indexed by vertex (index 0 unused). For undirected
    /// graphs this is the neighbourhood.
    pub fn out_neighbors(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            out[u as usize].push(v);
            if !self.directed && u != v {
                out[v as usize].push(u);
            }
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    /// In-neighbour lists indexed by vertex. Equal to [`Graph::out_neighbors`]
    /// for undirected graphs.
    pub fn in_neighbors(&self) -> Vec<Vec<Vertex>> {
        if !self.directed {
            return self.out_neighbors();
        }
        let mut inn = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            inn[v as usize].push(u);
        }
        for list in &mut inn {
            list.sort_unstable();
        }
        inn
    }

    /// True iff the edge relation is symmetric (always for undirected graphs).
    pub fn is_symmetric(&self) -> bool {
        !self.directed || self.edges.iter().all(|&(u, v)| self.contains(v, u))
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        let mut seen = vec![false; self.n as usize + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    /// Classes of pairwise twins with at least two members, each sorted, in
    /// order of their smallest vertex.
    pub fn twin_classes(&self) -> Vec<Vec<Vertex>> {
        let out = self.out_neighbors();
        let inn = if self.directed { self.in_neighbors() } else { Vec::new() };
        let mut classes: BTreeMap<(&[Vertex], &[Vertex]), Vec<Vertex>> = BTreeMap::new();
        for v in self.vertices() {
            let in_key: &[Vertex] = if self.directed { &inn[v as usize] } else { &[] };
            classes.entry((&out[v as usize], in_key)).or_default().push(v);
        }
        let mut result: Vec<Vec<Vertex>> = classes.into_values().filter(|c| c.len() > 1).collect();
        result.sort_unstable_by_key(|c| c[0]);
        result
    }

    /// All unordered twin pairs `(t1, t2)` with `t1 < t2`, sorted.
    ///
    /// Twins have identical in- and out-neighbourhoods (identical
    /// neighbourhoods when undirected), compared literally as sets.
    pub fn twins(&self) -> Vec<(Vertex, Vertex)> {
        let mut pairs = Vec::new();
        for class in self.twin_classes() {
            for (i, &a) in class.iter().enumerate() {
                for &b in &class[i + 1..] {
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }
}

/// Undirected graph with a non-negative weight on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    base: Graph,
    weights: Vec<Weight>,
}

impl WeightedGraph {
    /// `weights[i]` belongs to `base.edges()[i]`.
    pub fn new(base: Graph, weights: Vec<Weight>) -> Result<Self, GraphError> {
        if base.directed {
            return Err(GraphError::DirectedWeighted);
        }
        if weights.len() != base.edge_count() {
            return Err(GraphError::WeightCount { weights: weights.len(), edges: base.edge_count() });
        }
        Ok(Self { base, weights })
    }

    /// Builds from `(u, v, w)` triples. Repeated edges are rejected.
    pub fn from_weighted_edges<I>(n: Vertex, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Weight)>,
    {
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(GraphError::EndpointOutOfRange { vertex: x, n });
                }
            }
            list.push((canonical_pair(false, u, v), w));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(GraphError::DuplicateEdge(w[0].0 .0, w[0].0 .1));
        }
        let (edges, weights) = list.into_iter().unzip();
        Ok(Self { base: Graph::from_sorted_unchecked(false, n, edges), weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn vertex_count(&self) -> Vertex {
        self.base.n
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count()
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        let key = canonical_pair(false, u, v);
        self.base.edges.binary_search(&key).ok().map(|i| self.weights[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex, Weight)> + '_ {
        self.base.edges.iter().zip(&self.weights).map(|(&(u, v), &w)| (u, v, w))
    }

    /// Loops are ignored.
    pub fn is_connected(&self) -> bool {
        self.base.is_connected()
    }
}

/// Split of `1..=n` into two shores. In an associated directed bipartite graph
/// every edge runs from `shore1` to `shore2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorePartition {
    in_first: Vec<bool>,
    shore1: Vec<Vertex>,
    shore2: Vec<Vertex>,
}

impl ShorePartition {
    /// `shore2` is the complement of `shore1` within `1..=n`.
    pub fn new<I>(n: Vertex, shore1: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut in_first = vec![false; n as usize + 1];
        for v in shore1 {
            if v == 0 || v > n || in_first[v as usize] {
                return Err(GraphError::BadShore(v));
            }
            in_first[v as usize] = true;
        }
        let shore1 = (1..=n).filter(|&v| in_first[v as usize]).collect();
        let shore2 = (1..=n).filter(|&v| !in_first[v as usize]).collect();
        Ok(Self { in_first, shore1, shore2 })
    }

    pub fn vertex_count(&self) -> Vertex {
        (self.in_first.len() - 1) as Vertex
    }

    pub fn shore1(&self) -> &[Vertex] {
        &self.shore1
    }

    pub fn shore2(&self) -> &[Vertex] {
        &self.shore2
    }

    pub fn in_shore1(&self, v: Vertex) -> bool {
        self.in_first.get(v as usize).copied().unwrap_or(false)
    }

    pub fn in_shore2(&self, v: Vertex) -> bool {
        v != 0 && (v as usize) < self.in_first.len() && !self.in_first[v as usize]
    }

    /// True iff `g` is directed, on the same vertex set, and every edge goes
    /// from shore 1 to shore 2.
    pub fn separates(&self, g: &Graph) -> bool {
        g.is_directed()
            && g.vertex_count() == self.vertex_count()
            && g.edges().iter().all(|&(u, v)| self.in_shore1(u) && self.in_shore2(v))
    }
}
