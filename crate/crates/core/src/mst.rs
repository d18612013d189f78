//! Minimum spanning forests: plain Kruskal on an explicit weighted graph, and
//! Kruskal run directly on a weighted undirected compression.
//!
//! The compressed run keeps a union-find over the sinks only. Before the
//! representatives of a compression edge `{u, v}` are joined, both endpoints
//! are made *clean* (their whole cluster inside one union-find set) by
//! walking down the arcs of not yet clean vertices. Each arc is walked at
//! most once per run, so the work is `O((|A| + |E|) α(n))` plus the sort.

use alloc::vec;
use alloc::vec::Vec;

use crate::compression::{ClusterTable, CompressionError, DagCompression};
use crate::graph::{canonical_pair, Graph, Vertex, Weight, WeightedGraph};
use crate::union_find::UnionFind;

/// A spanning forest with edges in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    pub n: Vertex,
    pub edges: Vec<(Vertex, Vertex, Weight)>,
    pub total_weight: u128,
}

impl SpanningForest {
    fn from_edges(n: Vertex, mut edges: Vec<(Vertex, Vertex, Weight)>) -> Self {
        edges.sort_unstable();
        let total_weight = edges.iter().map(|e| e.2 as u128).sum();
        Self { n, edges, total_weight }
    }

    /// A spanning tree needs `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n as usize || self.n == 0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MstStats {
    pub add_edge_calls: u64,
    pub arcs_traversed: u64,
    pub compression_edges: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortStrategy {
    #[default]
    Comparison,
    /// Counting sort, used when every weight is at most `max_weight`;
    /// otherwise the comparison sort runs instead.
    Bucket { max_weight: Weight },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CleanOrder {
    /// Clean `u` against `c̄(v)`, then `v` against `c̄(u)`.
    #[default]
    UThenV,
    VThenU,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MstOptions {
    pub sort: SortStrategy,
    pub clean_order: CleanOrder,
}

/// Kruskal on the explicit graph. Ties are taken in edge order.
pub fn kruskal_baseline(g: &WeightedGraph) -> SpanningForest {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    let w = g.weights();
    order.sort_by_key(|&i| w[i]);
    let edges = g.graph().edges();
    let mut uf = UnionFind::new(g.vertex_count());
    let mut out = Vec::new();
    for i in order {
        let (u, v) = edges[i];
        if uf.unite(u, v) {
            out.push((u, v, w[i]));
        }
    }
    SpanningForest::from_edges(g.vertex_count(), out)
}

pub fn kruskal_compressed(d: &DagCompression) -> Result<(SpanningForest, MstStats), CompressionError> {
    kruskal_compressed_with(d, &MstOptions::default())
}

pub fn kruskal_compressed_with(
    d: &DagCompression,
    opts: &MstOptions,
) -> Result<(SpanningForest, MstStats), CompressionError> {
    let mut run = MstRun::with_options(d, opts)?;
    while run.step() {}
    Ok(run.finish())
}

/// Compression-edge indices sorted by `(weight, index)`.
fn sorted_edge_order(weights: &[Weight], sort: SortStrategy) -> Vec<usize> {
    let max = weights.iter().copied().max().unwrap_or(0);
    match sort {
        SortStrategy::Bucket { max_weight } if max <= max_weight => {
            let mut count = vec![0usize; max as usize + 2];
            for &w in weights {
                count[w as usize + 1] += 1;
            }
            for i in 1..count.len() {
                count[i] += count[i - 1];
            }
            let mut out = vec![0; weights.len()];
            for (i, &w) in weights.iter().enumerate() {
                out[count[w as usize]] = i;
                count[w as usize] += 1;
            }
            out
        }
        _ => {
            let mut order: Vec<usize> = (0..weights.len()).collect();
            order.sort_by_key(|&i| weights[i]);
            order
        }
    }
}

/// State of one compressed Kruskal run. Exposed so that the cleaning steps
/// can be driven and inspected one at a time.
pub struct MstRun<'a> {
    d: &'a DagCompression,
    weights: &'a [Weight],
    rep: Vec<Vertex>,
    clean: Vec<bool>,
    uf: UnionFind,
    forest: Vec<(Vertex, Vertex, Weight)>,
    stats: MstStats,
    order: Vec<usize>,
    next: usize,
    clean_order: CleanOrder,
    stack: Vec<(Vertex, u32)>,
    /// Decompression used to check the cleaning precondition on small
    /// inputs in debug builds.
    check: Option<(Graph, ClusterTable)>,
}

impl<'a> MstRun<'a> {
    pub fn new(d: &'a DagCompression) -> Result<Self, CompressionError> {
        Self::with_options(d, &MstOptions::default())
    }

    pub fn with_options(d: &'a DagCompression, opts: &MstOptions) -> Result<Self, CompressionError> {
        if d.is_directed() {
            return Err(CompressionError::NeedsUndirected);
        }
        let weights = d.weights().ok_or(CompressionError::NeedsWeights)?;
        let rep = d.representatives()?;
        let total = d.vertex_count() as usize;
        let mut clean = vec![false; total + 1];
        for v in 1..=d.n_sinks() {
            clean[v as usize] = true;
        }
        let check = (cfg!(debug_assertions) && d.n_sinks() <= 12)
            .then(|| (d.decompress().expect("validated"), d.clusters().expect("validated")));
        Ok(Self {
            d,
            weights,
            rep,
            clean,
            uf: UnionFind::new(d.n_sinks()),
            forest: Vec::new(),
            stats: MstStats::default(),
            order: sorted_edge_order(weights, opts.sort),
            next: 0,
            clean_order: opts.clean_order,
            stack: Vec::new(),
            check,
        })
    }

    /// Weight of the compression edge being processed, or of the next one.
    fn current_weight(&self) -> Weight {
        self.order.get(self.next).map_or(0, |&i| self.weights[i])
    }

    /// Joins the sets of sinks `u` and `v` and records `{u, v}` with weight
    /// `w` when they were apart.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, w: Weight) {
        self.stats.add_edge_calls += 1;
        if self.uf.unite(u, v) {
            let (a, b) = canonical_pair(false, u, v);
            self.forest.push((a, b, w));
        }
    }

    /// Makes `v` clean, connecting every child's representative to the sink
    /// `r` along the way. Needs `C̄(v) ⊗ {r}` to be part of the decompressed
    /// edge set; debug builds check this on small inputs.
    pub fn make_clean(&mut self, v: Vertex, r: Vertex) {
        if self.clean[v as usize] {
            return;
        }
        if let Some((g, t)) = &self.check {
            debug_assert!(
                t.cluster(v).iter().all(|&x| g.contains(x, r)),
                "cleaning {v} against {r} outside the edge set"
            );
        }
        let w = self.current_weight();
        let mut stack = core::mem::take(&mut self.stack);
        stack.push((v, 0));
        while let Some(&(x, cursor)) = stack.last() {
            if (cursor as usize) < self.d.out_degree(x) {
                let child = self.d.child(x, cursor as usize);
                stack.last_mut().expect("non-empty").1 += 1;
                self.stats.arcs_traversed += 1;
                if self.clean[child as usize] {
                    self.add_edge(self.rep[child as usize], r, w);
                } else {
                    stack.push((child, 0));
                }
            } else {
                stack.pop();
                self.clean[x as usize] = true;
                if !stack.is_empty() {
                    self.add_edge(self.rep[x as usize], r, w);
                }
            }
        }
        self.stack = stack;
    }

    /// Processes the next compression edge. Returns false when all are done.
    pub fn step(&mut self) -> bool {
        let Some(&i) = self.order.get(self.next) else {
            return false;
        };
        let (u, v) = self.d.edges()[i];
        let (ru, rv) = (self.rep[u as usize], self.rep[v as usize]);
        match self.clean_order {
            CleanOrder::UThenV => {
                self.make_clean(u, rv);
                self.make_clean(v, ru);
            }
            CleanOrder::VThenU => {
                self.make_clean(v, ru);
                self.make_clean(u, rv);
            }
        }
        self.add_edge(ru, rv, self.weights[i]);
        self.stats.compression_edges += 1;
        self.next += 1;
        true
    }

    /// Compression-edge indices already processed, in processing order.
    pub fn processed(&self) -> &[usize] {
        &self.order[..self.next]
    }

    pub fn is_clean(&self, v: Vertex) -> bool {
        self.clean[v as usize]
    }

    pub fn representative(&self, v: Vertex) -> Vertex {
        self.rep[v as usize]
    }

    /// Forest edges in the order they were added.
    pub fn forest(&self) -> &[(Vertex, Vertex, Weight)] {
        &self.forest
    }

    pub fn stats(&self) -> MstStats {
        self.stats
    }

    pub fn partition(&mut self) -> Vec<Vec<Vertex>> {
        self.uf.partition()
    }

    pub fn finish(self) -> (SpanningForest, MstStats) {
        (SpanningForest::from_edges(self.d.n_sinks(), self.forest), self.stats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compression::CompressionBuilder;
    use crate::generators::{random_compression, RandomCompressionParams};
    use proptest::prelude::*;

    /// Sinks 1..7, a = {1,2,3}, b = {4,5,6}, c = {7} ∪ b; edges {a,b}:1, {a,c}:2.
    pub(crate) fn weighted_example() -> DagCompression {
        let mut b = CompressionBuilder::new(false, 7);
        let a = b.cluster_over(&[1, 2, 3]);
        let bb = b.cluster_over(&[4, 5, 6]);
        let c = b.cluster_over(&[7, bb]);
        b.weighted_edge(a, bb, 1).weighted_edge(a, c, 2);
        b.build().unwrap()
    }

    #[test]
    fn triangle_and_single_vertex() {
        let g = WeightedGraph::from_weighted_edges(3, [(1, 2, 1), (2, 3, 2), (1, 3, 3)]).unwrap();
        assert_eq!(kruskal_baseline(&g).total_weight, 3);
        let one = WeightedGraph::from_weighted_edges(1, []).unwrap();
        let f = kruskal_baseline(&one);
        assert!(f.edges.is_empty() && f.total_weight == 0);
    }

    #[test]
    fn weighted_example_forest() {
        let d = weighted_example();
        let (f, stats) = kruskal_compressed(&d).unwrap();
        assert_eq!(f.edges, vec![(1, 4, 1), (1, 5, 1), (1, 6, 1), (1, 7, 2), (2, 4, 1), (3, 4, 1)]);
        assert_eq!(f.total_weight, 7);
        assert!(stats.add_edge_calls <= d.size() as u64);
        assert!(stats.arcs_traversed <= d.arcs().len() as u64);
        let g = d.decompress_weighted().unwrap();
        assert!(g.is_connected());
        assert_eq!(g.weight(1, 4), Some(1));
        assert_eq!(kruskal_baseline(&g).total_weight, 7);
    }

    #[test]
    fn weighted_example_trace() {
        let d = weighted_example();
        let mut run = MstRun::new(&d).unwrap();
        assert_eq!(run.representative(8), 1);
        assert_eq!(run.representative(9), 4);
        assert_eq!(run.representative(10), 7);
        // first edge {a, b}: cleaning a hangs 1, 2, 3 on c̄(b) = 4
        run.make_clean(8, 4);
        assert!(run.is_clean(8));
        assert_eq!(run.forest(), &[(1, 4, 1), (2, 4, 1), (3, 4, 1)]);
        assert_eq!(run.partition(), vec![vec![1, 2, 3, 4], vec![5], vec![6], vec![7]]);
        let before = run.stats().arcs_traversed;
        run.make_clean(8, 4);
        assert_eq!(run.stats().arcs_traversed, before);
        let mut run = MstRun::new(&d).unwrap();
        run.step();
        assert_eq!(run.partition(), vec![vec![1, 2, 3, 4, 5, 6], vec![7]]);
        run.step();
        assert_eq!(run.partition(), vec![vec![1, 2, 3, 4, 5, 6, 7]]);
        assert!(!run.step());
    }

    #[test]
    fn add_edge_basics() {
        let mut b = CompressionBuilder::new(false, 2);
        b.weighted_edge(1, 2, 5);
        let d = b.build().unwrap();
        let mut run = MstRun::new(&d).unwrap();
        run.add_edge(1, 2, 5);
        assert_eq!(run.forest(), &[(1, 2, 5)]);
        run.add_edge(2, 1, 5);
        assert_eq!(run.forest().len(), 1);
        let (f, _) = kruskal_compressed(&d).unwrap();
        assert_eq!(f.edges, vec![(1, 2, 5)]);
        assert_eq!(f.total_weight, 5);
    }

    #[test]
    fn bucket_sort_is_stable() {
        let w = [3, 1, 3, 0, 1];
        let a = sorted_edge_order(&w, SortStrategy::Comparison);
        let b = sorted_edge_order(&w, SortStrategy::Bucket { max_weight: 3 });
        assert_eq!(a, vec![3, 1, 4, 0, 2]);
        assert_eq!(a, b);
        assert_eq!(sorted_edge_order(&w, SortStrategy::Bucket { max_weight: 2 }), a);
    }

    fn arb_compression() -> impl Strategy<Value = DagCompression> {
        (1u32..=12, 0u32..=8, 0.1f64..0.6, 1usize..25, any::<u64>()).prop_map(|(n, c, p, m, seed)| {
            random_compression(&RandomCompressionParams {
                n_sinks: n,
                n_clusters: c,
                arc_density: p,
                edge_count: m,
                max_weight: 6,
                seed,
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn weight_matches_baseline(d in arb_compression()) {
            let base = kruskal_baseline(&d.decompress_weighted().unwrap());
            for opts in [
                MstOptions::default(),
                MstOptions { clean_order: CleanOrder::VThenU, ..Default::default() },
                MstOptions { sort: SortStrategy::Bucket { max_weight: 6 }, ..Default::default() },
            ] {
                let (f, s) = kruskal_compressed_with(&d, &opts).unwrap();
                prop_assert_eq!(f.total_weight, base.total_weight);
                prop_assert_eq!(f.edges.len(), base.edges.len());
                prop_assert!(s.add_edge_calls <= d.size() as u64);
                prop_assert!(s.arcs_traversed <= d.arcs().len() as u64);
            }
        }

        #[test]
        fn clean_flags_never_revert(d in arb_compression()) {
            let mut run = MstRun::new(&d).unwrap();
            let mut seen = vec![false; d.vertex_count() as usize + 1];
            loop {
                for v in 1..=d.vertex_count() {
                    if seen[v as usize] {
                        prop_assert!(run.is_clean(v));
                    }
                    seen[v as usize] = run.is_clean(v);
                }
                if !run.step() {
                    break;
                }
            }
        }
    }
}
