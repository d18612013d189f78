//! Rook graphs with their canonical compressions, and seeded random graphs
//! and compressions.
//!
//! A rook vertex `(i_1, ..., i_d)` with `1 <= i_k <= g` has index
//! `1 + Σ (i_k - 1) g^(k-1)`, so the first coordinate varies fastest.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compression::{CompressionBuilder, DagCompression};
use crate::graph::{canonical_pair, Graph, Vertex, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("g^d does not fit in a vertex id")]
    Overflow,
    #[error("rook graphs need g >= 1 and d >= 2")]
    BadShape,
    #[error("the canonical compression always produces loops; it is not offered without them")]
    NeedsLoops,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RookSpec {
    pub g: u32,
    pub d: u32,
    pub include_loops: bool,
}

impl RookSpec {
    pub fn square(g: u32) -> Self {
        Self { g, d: 2, include_loops: true }
    }

    /// `g^d`, bounded so that cluster ids still fit.
    pub fn vertex_count(&self) -> Result<Vertex, GeneratorError> {
        if self.g == 0 || self.d < 2 {
            return Err(GeneratorError::BadShape);
        }
        let mut n: u64 = 1;
        for _ in 0..self.d {
            n = n.checked_mul(self.g as u64).ok_or(GeneratorError::Overflow)?;
            if n > (u32::MAX / 4) as u64 {
                return Err(GeneratorError::Overflow);
            }
        }
        Ok(n as Vertex)
    }

    /// 1-based coordinates of vertex `v`.
    pub fn coordinates(&self, v: Vertex) -> Vec<u32> {
        let mut rest = v - 1;
        (0..self.d)
            .map(|_| {
                let c = rest % self.g + 1;
                rest /= self.g;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[u32]) -> Vertex {
        coords.iter().rev().fold(0, |acc, &c| acc * self.g + (c - 1)) + 1
    }

    /// Members of the hyperplane where coordinate `k` (0-based) equals `x`.
    fn hyperplane(&self, n: Vertex, k: u32, x: u32) -> impl Iterator<Item = Vertex> + '_ {
        let stride = self.g.pow(k);
        (0..n).filter(move |&i| (i / stride) % self.g == x - 1).map(|i| i + 1)
    }
}

/// Directed rook graph: `(u, v)` is an edge iff the two agree in at least one
/// coordinate. Self-pairs are edges exactly when loops are included.
pub fn rook_graph(spec: &RookSpec) -> Result<Graph, GeneratorError> {
    let n = spec.vertex_count()?;
    let g = spec.g;
    let mut edges = Vec::new();
    let mut row = Vec::new();
    for u in 1..=n {
        row.clear();
        let cu = spec.coordinates(u);
        for k in 0..spec.d {
            // every vertex with digit k fixed: split j into the digits below and above k
            let stride = g.pow(k);
            let fixed = (cu[k as usize] - 1) * stride;
            for j in 0..n / g {
                row.push((j / stride) * stride * g + fixed + j % stride + 1);
            }
        }
        row.sort_unstable();
        row.dedup();
        for &v in &row {
            if v != u || spec.include_loops {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_sorted_unchecked(true, n, edges))
}

/// One cluster per axis-parallel hyperplane, with arcs to its members and a
/// compression loop. For `d = 2` the size is `2g² + 2g`; in general it has
/// `d·g^d` arcs and `d·g` loops.
pub fn rook_canonical_compression(spec: &RookSpec) -> Result<DagCompression, GeneratorError> {
    if !spec.include_loops {
        return Err(GeneratorError::NeedsLoops);
    }
    let n = spec.vertex_count()?;
    let mut b = CompressionBuilder::new(true, n);
    for k in 0..spec.d {
        for x in 1..=spec.g {
            let c = b.cluster();
            for v in spec.hyperplane(n, k, x) {
                b.arc(c, v);
            }
            b.edge(c, c);
        }
    }
    Ok(b.build().expect("hyperplane clusters are well formed"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Indices in `0..count` kept independently with probability `p`, drawn by
/// geometric skipping so the cost follows the number kept.
fn bernoulli_indices(rng: &mut ChaCha8Rng, count: u64, p: f64) -> Vec<u64> {
    if p <= 0.0 || count == 0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..count).collect();
    }
    let log_q = libm::log(1.0 - p);
    let mut out = Vec::new();
    let mut i: u64 = 0;
    loop {
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let skip = libm::floor(libm::log(u) / log_q);
        if skip >= (count - i) as f64 {
            break;
        }
        i += skip as u64;
        out.push(i);
        i += 1;
        if i >= count {
            break;
        }
    }
    out
}

/// Each candidate pair is an edge with probability `p`. Candidates are all
/// ordered pairs (directed) or unordered pairs (undirected), self-pairs
/// included iff `loops`.
pub fn random_graph(n: Vertex, p: f64, seed: u64, directed: bool, loops: bool) -> Graph {
    let mut r = rng(seed);
    let nn = n as u64;
    let mut edges = Vec::new();
    if directed {
        for i in bernoulli_indices(&mut r, nn * nn, p) {
            let (u, v) = ((i / nn) as Vertex + 1, (i % nn) as Vertex + 1);
            if loops || u != v {
                edges.push((u, v));
            }
        }
    } else {
        // row u holds the pairs (u, v) with v >= u
        let total = nn * (nn + 1) / 2;
        let picks = bernoulli_indices(&mut r, total, p);
        let mut u: u64 = 0;
        let mut row_start: u64 = 0;
        for i in picks {
            while i >= row_start + (nn - u) {
                row_start += nn - u;
                u += 1;
            }
            let v = u + (i - row_start);
            if loops || u != v {
                edges.push(((u + 1) as Vertex, (v + 1) as Vertex));
            }
        }
    }
    Graph::from_sorted_unchecked(directed, n, edges)
}

/// Weights drawn uniformly from `1..=max_weight`.
pub fn random_weights(count: usize, max_weight: Weight, seed: u64) -> Vec<Weight> {
    let mut r = rng(seed);
    (0..count).map(|_| r.gen_range(1..=max_weight.max(1))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomCompressionParams {
    pub n_sinks: Vertex,
    pub n_clusters: Vertex,
    /// Probability of an arc from a cluster to each earlier vertex.
    pub arc_density: f64,
    pub edge_count: usize,
    pub max_weight: Weight,
    pub seed: u64,
}

/// A random weighted undirected compression. Cluster `c` only gets arcs to
/// vertices with smaller ids, and at least one, so the result always
/// validates. Compression edges are distinct pairs over all vertices,
/// capped at the number of such pairs.
pub fn random_compression(p: &RandomCompressionParams) -> DagCompression {
    let mut r = rng(p.seed);
    let n = p.n_sinks.max(1);
    let mut arcs = Vec::new();
    for i in 0..p.n_clusters {
        let c = n + 1 + i;
        let lower = (c - 1) as u64;
        let mut kids = bernoulli_indices(&mut r, lower, p.arc_density);
        if kids.is_empty() {
            kids.push(r.gen_range(0..lower));
        }
        arcs.extend(kids.into_iter().map(|k| (c, k as Vertex + 1)));
    }
    let total = (n + p.n_clusters) as u64;
    let cap = (total * (total + 1) / 2).min(usize::MAX as u64) as usize;
    let want = p.edge_count.min(cap);
    let mut set = BTreeSet::new();
    if want * 2 > cap {
        // dense request: shuffle all pairs instead of rejection sampling
        let mut all: Vec<(Vertex, Vertex)> =
            (1..=total as Vertex).flat_map(|u| (u..=total as Vertex).map(move |v| (u, v))).collect();
        for i in 0..want {
            let j = r.gen_range(i..all.len());
            all.swap(i, j);
        }
        set.extend(all.into_iter().take(want));
    } else {
        while set.len() < want {
            let u = r.gen_range(1..=total as Vertex);
            let v = r.gen_range(1..=total as Vertex);
            set.insert(canonical_pair(false, u, v));
        }
    }
    let edges: Vec<_> = set.into_iter().collect();
    let weights = (0..edges.len()).map(|_| r.gen_range(1..=p.max_weight.max(1))).collect();
    DagCompression::from_parts(false, n, p.n_clusters, arcs, edges, Some(weights))
        .expect("layered construction is well formed")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomCoverParams {
    pub n_clusters: Vertex,
    pub max_children: usize,
    /// Probability of keeping each admissible product as a compression edge.
    pub keep: f64,
    pub seed: u64,
}

/// A random compression that decompresses exactly to `g`: random layered
/// clusters, a random selection of admissible products, and direct edges
/// for whatever those miss.
pub fn random_compression_of(g: &Graph, p: &RandomCoverParams) -> DagCompression {
    let mut r = rng(p.seed);
    let n = g.vertex_count();
    let mut sets: Vec<Vec<Vertex>> = vec![Vec::new()];
    for v in 1..=n {
        sets.push(vec![v]);
    }
    let mut arcs = Vec::new();
    if n > 0 {
        for i in 0..p.n_clusters {
            let c = n + 1 + i;
            let k = r.gen_range(1..=p.max_children.max(1)).min((c - 1) as usize);
            let mut kids = BTreeSet::new();
            while kids.len() < k {
                // lean toward sinks so clusters stay small
                let x = if r.gen_bool(0.7) { r.gen_range(1..=n) } else { r.gen_range(1..c) };
                kids.insert(x);
            }
            let mut s: Vec<Vertex> = kids.iter().flat_map(|&x| sets[x as usize].clone()).collect();
            s.sort_unstable();
            s.dedup();
            sets.push(s);
            arcs.extend(kids.into_iter().map(|x| (c, x)));
        }
    }
    let total = n + if n > 0 { p.n_clusters } else { 0 };
    let admissible =
        |a: &[Vertex], b: &[Vertex]| a.iter().all(|&x| b.iter().all(|&y| g.contains(x, y)));
    let mut edges = BTreeSet::new();
    let mut covered = BTreeSet::new();
    for u in 1..=total {
        for v in 1..=total {
            if !g.is_directed() && v < u {
                continue;
            }
            let (a, b) = (&sets[u as usize], &sets[v as usize]);
            if (a.len() > 1 || b.len() > 1) && admissible(a, b) && r.gen_bool(p.keep) {
                edges.insert((u, v));
                for &x in a {
                    for &y in b {
                        covered.insert(canonical_pair(g.is_directed(), x, y));
                    }
                }
            }
        }
    }
    for &e in g.edges() {
        if !covered.contains(&e) {
            edges.insert(e);
        }
    }
    DagCompression::from_parts(g.is_directed(), n, total - n, arcs, edges.into_iter().collect(), None)
        .expect("layered construction is well formed")
}
