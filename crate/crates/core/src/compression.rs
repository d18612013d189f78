//! The DAG compression `(V, A, E)` and the operations that only need its
//! structure: validation, clusters, representatives, decompression and size.
//!
//! Sinks are `1..=n_sinks`; cluster vertices follow as
//! `n_sinks + 1 ..= n_sinks + n_clusters`. Arcs are stored sorted, so the
//! children of a vertex form one contiguous, ascending run.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{canonical_pair, Graph, Vertex, Weight, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompressionError {
    #[error("vertex {vertex} out of range 1..={total}")]
    VertexOutOfRange { vertex: Vertex, total: Vertex },
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("duplicate compression edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("{weights} weights given for {edges} compression edges")]
    WeightCount { weights: usize, edges: usize },
    #[error("weighted compressions must be undirected")]
    DirectedWeighted,
    #[error("operation needs an undirected compression")]
    NeedsUndirected,
    #[error("operation needs a weighted compression")]
    NeedsWeights,
    #[error("compressions differ in direction or sink count")]
    Incompatible,
    #[error("arcs contain a cycle")]
    Cyclic,
    #[error("invalid compression: {}", list_violations(.0))]
    Invalid(Vec<Violation>),
}

fn list_violations(v: &[Violation]) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "{x}");
    }
    s
}

/// A broken structural invariant, as reported by [`DagCompression::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SinkHasOutgoingArc { sink: Vertex, target: Vertex },
    ClusterWithoutChildren(Vertex),
    /// The smallest vertex that lies on or below a cycle.
    Cycle(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SinkHasOutgoingArc { sink, target } => {
                write!(f, "original vertex has outgoing arc ({sink}, {target})")
            }
            Violation::ClusterWithoutChildren(v) => write!(f, "cluster vertex {v} has no outgoing arc"),
            Violation::Cycle(v) => write!(f, "cycle through or below vertex {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DagCompression {
    directed: bool,
    n_sinks: Vertex,
    n_clusters: Vertex,
    arcs: Vec<(Vertex, Vertex)>,
    /// `arc_start[v]..arc_start[v + 1]` indexes the arcs leaving `v`.
    arc_start: Vec<u32>,
    edges: Vec<(Vertex, Vertex)>,
    weights: Option<Vec<Weight>>,
}

impl DagCompression {
    /// Assembles a compression. Ids are range checked and repeated arcs or
    /// edges are rejected; acyclicity and the sink condition are left to
    /// [`DagCompression::validate`]. `weights[i]` belongs to `edges[i]`.
    pub fn from_parts(
        directed: bool,
        n_sinks: Vertex,
        n_clusters: Vertex,
        arcs: Vec<(Vertex, Vertex)>,
        edges: Vec<(Vertex, Vertex)>,
        weights: Option<Vec<Weight>>,
    ) -> Result<Self, CompressionError> {
        let total = n_sinks + n_clusters;
        let check = |x: Vertex| {
            if x == 0 || x > total {
                Err(CompressionError::VertexOutOfRange { vertex: x, total })
            } else {
                Ok(())
            }
        };
        let mut arcs = arcs;
        for &(u, v) in &arcs {
            check(u)?;
            check(v)?;
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(CompressionError::DuplicateArc(w[0].0, w[0].1));
        }
        if directed && weights.is_some() {
            return Err(CompressionError::DirectedWeighted);
        }
        for &(u, v) in &edges {
            check(u)?;
            check(v)?;
        }
        let (edges, weights) = match weights {
            None => {
                let mut e: Vec<_> = edges.into_iter().map(|(u, v)| canonical_pair(directed, u, v)).collect();
                e.sort_unstable();
                if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                    return Err(CompressionError::DuplicateEdge(w[0].0, w[0].1));
                }
                (e, None)
            }
            Some(ws) => {
                if ws.len() != edges.len() {
                    return Err(CompressionError::WeightCount { weights: ws.len(), edges: edges.len() });
                }
                let mut e: Vec<_> =
                    edges.into_iter().map(|(u, v)| canonical_pair(false, u, v)).zip(ws).collect();
                e.sort_unstable();
                if let Some(w) = e.windows(2).find(|w| w[0].0 == w[1].0) {
                    return Err(CompressionError::DuplicateEdge(w[0].0 .0, w[0].0 .1));
                }
                let (e, w): (Vec<_>, Vec<_>) = e.into_iter().unzip();
                (e, Some(w))
            }
        };
        let arc_start = offsets(total, &arcs);
        Ok(Self { directed, n_sinks, n_clusters, arcs, arc_start, edges, weights })
    }

    /// The trivial compression: no clusters, one compression edge per edge.
    pub fn direct(g: &Graph) -> Self {
        Self::from_parts(g.is_directed(), g.vertex_count(), 0, Vec::new(), g.edges().to_vec(), None)
            .expect("graph edges are canonical and distinct")
    }

    pub fn direct_weighted(g: &WeightedGraph) -> Self {
        Self::from_parts(
            false,
            g.vertex_count(),
            0,
            Vec::new(),
            g.graph().edges().to_vec(),
            Some(g.weights().to_vec()),
        )
        .expect("graph edges are canonical and distinct")
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn n_sinks(&self) -> Vertex {
        self.n_sinks
    }

    pub fn n_clusters(&self) -> Vertex {
        self.n_clusters
    }

    pub fn vertex_count(&self) -> Vertex {
        self.n_sinks + self.n_clusters
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        (1..=self.n_sinks).contains(&v)
    }

    pub fn cluster_vertices(&self) -> core::ops::RangeInclusive<Vertex> {
        self.n_sinks + 1..=self.vertex_count()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[Weight]> {
        self.weights.as_deref()
    }

    /// `(u, v, w)` triples, or `None` for unweighted compressions.
    pub fn weighted_edges(&self) -> Option<impl Iterator<Item = (Vertex, Vertex, Weight)> + '_> {
        let w = self.weights.as_ref()?;
        Some(self.edges.iter().zip(w).map(|(&(u, v), &w)| (u, v, w)))
    }

    /// `|A| + |E|`.
    pub fn size(&self) -> usize {
        self.arcs.len() + self.edges.len()
    }

    /// Children of `v` in ascending order.
    pub fn children(&self, v: Vertex) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        let (a, b) = (self.arc_start[v as usize] as usize, self.arc_start[v as usize + 1] as usize);
        self.arcs[a..b].iter().map(|&(_, c)| c)
    }

    /// The `i`-th child of `v` in ascending order.
    pub fn child(&self, v: Vertex, i: usize) -> Vertex {
        self.arcs[self.arc_start[v as usize] as usize + i].1
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        (self.arc_start[v as usize + 1] - self.arc_start[v as usize]) as usize
    }

    pub fn contains_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&canonical_pair(self.directed, u, v)).is_ok()
    }

    pub fn edge_weight(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        let i = self.edges.binary_search(&canonical_pair(self.directed, u, v)).ok()?;
        self.weights.as_ref().map(|w| w[i])
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &(u, v) in &self.arcs {
            if self.is_sink(u) {
                out.push(Violation::SinkHasOutgoingArc { sink: u, target: v });
            }
        }
        for c in self.cluster_vertices() {
            if self.out_degree(c) == 0 {
                out.push(Violation::ClusterWithoutChildren(c));
            }
        }
        if let Err(v) = self.kahn() {
            out.push(Violation::Cycle(v));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn ensure_valid(&self) -> Result<(), CompressionError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(CompressionError::Invalid(v))
        }
    }

    /// Parents before children; `Err` carries the smallest vertex left over
    /// when the arcs are cyclic.
    fn kahn(&self) -> Result<Vec<Vertex>, Vertex> {
        let total = self.vertex_count() as usize;
        let mut indeg = vec![0u32; total + 1];
        for &(_, v) in &self.arcs {
            indeg[v as usize] += 1;
        }
        let mut queue: VecDeque<Vertex> = (1..=total as Vertex).filter(|&v| indeg[v as usize] == 0).collect();
        let mut order = Vec::with_capacity(total);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for c in self.children(u) {
                indeg[c as usize] -= 1;
                if indeg[c as usize] == 0 {
                    queue.push_back(c);
                }
            }
        }
        if order.len() == total {
            Ok(order)
        } else {
            Err((1..=total as Vertex).find(|&v| indeg[v as usize] > 0).unwrap_or(0))
        }
    }

    /// A topological order of `(V, A)`: every arc points from an earlier to a
    /// later vertex.
    pub fn topological_order(&self) -> Result<Vec<Vertex>, CompressionError> {
        self.kahn().map_err(|_| CompressionError::Cyclic)
    }

    /// The representative sink `c̄(v)` of every vertex, indexed by vertex
    /// (index 0 unused). A cluster copies the representative of its first
    /// child.
    pub fn representatives(&self) -> Result<Vec<Vertex>, CompressionError> {
        self.ensure_valid()?;
        let order = self.topological_order()?;
        let mut rep = vec![0; self.vertex_count() as usize + 1];
        for &v in order.iter().rev() {
            rep[v as usize] = match self.children(v).next() {
                Some(c) => rep[c as usize],
                None => v,
            };
        }
        Ok(rep)
    }

    pub fn clusters(&self) -> Result<ClusterTable, CompressionError> {
        self.ensure_valid()?;
        Ok(self.cluster_table_unchecked())
    }

    /// Cluster sets without validating first. Childless clusters come out
    /// empty; the arcs must still be acyclic.
    pub(crate) fn cluster_table_unchecked(&self) -> ClusterTable {
        let order = self.topological_order().expect("acyclic arcs");
        let total = self.vertex_count() as usize;
        let mut sets: Vec<Vec<Vertex>> = vec![Vec::new(); total + 1];
        let mut rep = vec![0; total + 1];
        for &v in order.iter().rev() {
            if self.is_sink(v) {
                sets[v as usize] = vec![v];
                rep[v as usize] = v;
                continue;
            }
            let mut acc = Vec::new();
            for c in self.children(v) {
                acc.extend_from_slice(&sets[c as usize]);
            }
            acc.sort_unstable();
            acc.dedup();
            rep[v as usize] = self.children(v).next().map_or(0, |c| rep[c as usize]);
            sets[v as usize] = acc;
        }
        ClusterTable { sets, rep }
    }

    /// The represented graph on `1..=n_sinks`.
    pub fn decompress(&self) -> Result<Graph, CompressionError> {
        self.ensure_valid()?;
        let table = self.cluster_table_unchecked();
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            push_product(self.directed, table.cluster(u), table.cluster(v), &mut out);
        }
        out.sort_unstable();
        out.dedup();
        Ok(Graph::from_sorted_unchecked(self.directed, self.n_sinks, out))
    }

    /// The represented weighted graph: each original edge takes the minimum
    /// weight over the compression edges covering it.
    pub fn decompress_weighted(&self) -> Result<WeightedGraph, CompressionError> {
        let weights = self.weights.as_ref().ok_or(CompressionError::NeedsWeights)?;
        self.ensure_valid()?;
        let table = self.cluster_table_unchecked();
        let mut pairs = Vec::new();
        let mut out: Vec<((Vertex, Vertex), Weight)> = Vec::new();
        for (&(u, v), &w) in self.edges.iter().zip(weights) {
            pairs.clear();
            push_product(false, table.cluster(u), table.cluster(v), &mut pairs);
            out.extend(pairs.iter().map(|&p| (p, w)));
        }
        out.sort_unstable();
        out.dedup_by_key(|x| x.0);
        let (edges, w): (Vec<_>, Vec<_>) = out.into_iter().unzip();
        WeightedGraph::new(Graph::from_sorted_unchecked(false, self.n_sinks, edges), w)
            .map_err(|_| CompressionError::NeedsUndirected)
    }

    /// The same structure read as an undirected compression. Edges that
    /// become equal, such as `(u, v)` and `(v, u)`, are merged.
    pub fn to_undirected(&self) -> Self {
        let mut e: Vec<_> = self.edges.iter().map(|&(u, v)| canonical_pair(false, u, v)).collect();
        e.sort_unstable();
        e.dedup();
        Self { directed: false, edges: e, weights: None, ..self.clone() }
    }

    pub fn without_weights(&self) -> Self {
        Self { weights: None, ..self.clone() }
    }

    /// Attaches `weights[i]` to `edges()[i]`.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Self, CompressionError> {
        if self.directed {
            return Err(CompressionError::DirectedWeighted);
        }
        if weights.len() != self.edges.len() {
            return Err(CompressionError::WeightCount { weights: weights.len(), edges: self.edges.len() });
        }
        Ok(Self { weights: Some(weights), ..self.clone() })
    }

    /// Componentwise union. The clusters of `other` are renumbered to follow
    /// those of `self`, so the two cluster sets are disjoint. A sink-to-sink
    /// edge present in both keeps the smaller weight.
    pub fn union(&self, other: &Self) -> Result<Self, CompressionError> {
        if self.directed != other.directed
            || self.n_sinks != other.n_sinks
            || self.is_weighted() != other.is_weighted()
        {
            return Err(CompressionError::Incompatible);
        }
        let shift = |v: Vertex| if v > other.n_sinks { v + self.n_clusters } else { v };
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|&(u, v)| (shift(u), shift(v))));
        let mut merged: Vec<((Vertex, Vertex), Weight)> = Vec::new();
        let zero = |len| vec![0; len];
        let w1 = self.weights.clone().unwrap_or_else(|| zero(self.edges.len()));
        let w2 = other.weights.clone().unwrap_or_else(|| zero(other.edges.len()));
        merged.extend(self.edges.iter().copied().zip(w1));
        merged.extend(
            other.edges.iter().map(|&(u, v)| canonical_pair(self.directed, shift(u), shift(v))).zip(w2),
        );
        merged.sort_unstable();
        merged.dedup_by_key(|x| x.0);
        let (edges, w): (Vec<_>, Vec<_>) = merged.into_iter().unzip();
        Self::from_parts(
            self.directed,
            self.n_sinks,
            self.n_clusters + other.n_clusters,
            arcs,
            edges,
            self.weights.as_ref().map(|_| w),
        )
    }

    /// Keeps the sinks and the clusters for which `keep` holds, renumbering
    /// the survivors in their current order. Arcs and edges touching a
    /// dropped cluster go with it.
    pub fn retain_clusters(&self, mut keep: impl FnMut(Vertex) -> bool) -> Self {
        let total = self.vertex_count();
        let mut new_id = vec![0; total as usize + 1];
        let mut next = self.n_sinks;
        for v in 1..=total {
            if self.is_sink(v) || keep(v) {
                if self.is_sink(v) {
                    new_id[v as usize] = v;
                } else {
                    next += 1;
                    new_id[v as usize] = next;
                }
            }
        }
        let map = |(u, v): (Vertex, Vertex)| {
            let (a, b) = (new_id[u as usize], new_id[v as usize]);
            (a != 0 && b != 0).then_some((a, b))
        };
        let arcs: Vec<_> = self.arcs.iter().filter_map(|&p| map(p)).collect();
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (i, &p) in self.edges.iter().enumerate() {
            if let Some(q) = map(p) {
                edges.push(q);
                if let Some(w) = &self.weights {
                    weights.push(w[i]);
                }
            }
        }
        Self::from_parts(
            self.directed,
            self.n_sinks,
            next - self.n_sinks,
            arcs,
            edges,
            self.weights.as_ref().map(|_| weights),
        )
        .expect("renumbering keeps ids in range and distinct")
    }
}

fn offsets(total: Vertex, arcs: &[(Vertex, Vertex)]) -> Vec<u32> {
    let mut start = vec![0u32; total as usize + 2];
    for &(u, _) in arcs {
        start[u as usize + 1] += 1;
    }
    for i in 1..start.len() {
        start[i] += start[i - 1];
    }
    start
}

fn push_product(directed: bool, a: &[Vertex], b: &[Vertex], out: &mut Vec<(Vertex, Vertex)>) {
    for &x in a {
        for &y in b {
            out.push(canonical_pair(directed, x, y));
        }
    }
}

/// Reachable sink sets `C̄(v)` and representatives `c̄(v)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterTable {
    sets: Vec<Vec<Vertex>>,
    rep: Vec<Vertex>,
}

impl ClusterTable {
    /// Sorted sinks reachable from `v`.
    pub fn cluster(&self, v: Vertex) -> &[Vertex] {
        &self.sets[v as usize]
    }

    pub fn representative(&self, v: Vertex) -> Vertex {
        self.rep[v as usize]
    }

    pub fn vertex_count(&self) -> Vertex {
        (self.sets.len() - 1) as Vertex
    }
}

/// Incremental construction with cluster ids handed out in order.
#[derive(Debug, Clone)]
pub struct CompressionBuilder {
    directed: bool,
    n_sinks: Vertex,
    n_clusters: Vertex,
    arcs: Vec<(Vertex, Vertex)>,
    edges: Vec<(Vertex, Vertex)>,
    weights: Vec<Weight>,
    weighted: bool,
}

impl CompressionBuilder {
    pub fn new(directed: bool, n_sinks: Vertex) -> Self {
        Self {
            directed,
            n_sinks,
            n_clusters: 0,
            arcs: Vec::new(),
            edges: Vec::new(),
            weights: Vec::new(),
            weighted: false,
        }
    }

    /// Reserves the next cluster id.
    pub fn cluster(&mut self) -> Vertex {
        self.n_clusters += 1;
        self.n_sinks + self.n_clusters
    }

    /// A new cluster with arcs to `children`.
    pub fn cluster_over(&mut self, children: &[Vertex]) -> Vertex {
        let c = self.cluster();
        for &x in children {
            self.arc(c, x);
        }
        c
    }

    pub fn arc(&mut self, u: Vertex, v: Vertex) -> &mut Self {
        self.arcs.push((u, v));
        self
    }

    pub fn edge(&mut self, u: Vertex, v: Vertex) -> &mut Self {
        self.edges.push((u, v));
        self.weights.push(0);
        self
    }

    pub fn weighted_edge(&mut self, u: Vertex, v: Vertex, w: Weight) -> &mut Self {
        self.weighted = true;
        self.edges.push((u, v));
        self.weights.push(w);
        self
    }

    pub fn build(self) -> Result<DagCompression, CompressionError> {
        let w = self.weighted.then_some(self.weights);
        DagCompression::from_parts(self.directed, self.n_sinks, self.n_clusters, self.arcs, self.edges, w)
    }
}
