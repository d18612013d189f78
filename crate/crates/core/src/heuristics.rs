//! Practical compressors: a binary tree compressor and a greedy DAG
//! compressor built from twin contraction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::compression::{CompressionBuilder, DagCompression};
use crate::generators::{rook_canonical_compression, rook_graph, GeneratorError, RookSpec};
use crate::graph::{canonical_pair, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergePolicy {
    /// Each round, every unmatched node in id order takes the unmatched
    /// node with the largest neighbourhood overlap (smallest id on ties).
    #[default]
    Similarity,
    /// Each round pairs nodes by position: first with second, third with
    /// fourth, and so on.
    Balanced,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("cluster {0} does not have exactly two children")]
    NotBinary(Vertex),
    #[error("vertex {0} has more than one parent")]
    SharedChild(Vertex),
    #[error("cluster DAG has {0} roots")]
    Roots(usize),
    #[error("cluster DAG is invalid")]
    Invalid,
}

/// A compression whose cluster DAG is a rooted binary tree with the sinks
/// as leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCompression {
    inner: DagCompression,
    root: Vertex,
}

impl TreeCompression {
    /// Checks the tree shape.
    pub fn new(d: DagCompression) -> Result<Self, TreeError> {
        if !d.is_valid() {
            return Err(TreeError::Invalid);
        }
        let mut parents = vec![0u32; d.vertex_count() as usize + 1];
        for &(_, v) in d.arcs() {
            parents[v as usize] += 1;
            if parents[v as usize] > 1 {
                return Err(TreeError::SharedChild(v));
            }
        }
        if let Some(v) = d.cluster_vertices().find(|&v| d.out_degree(v) != 2) {
            return Err(TreeError::NotBinary(v));
        }
        let roots: Vec<Vertex> = (1..=d.vertex_count()).filter(|&v| parents[v as usize] == 0).collect();
        if d.n_sinks() > 0 && roots.len() != 1 {
            return Err(TreeError::Roots(roots.len()));
        }
        let root = roots.first().copied().unwrap_or(0);
        Ok(Self { inner: d, root })
    }

    pub fn compression(&self) -> &DagCompression {
        &self.inner
    }

    pub fn into_compression(self) -> DagCompression {
        self.inner
    }

    /// The vertex reaching every sink; `0` for the empty graph.
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn size(&self) -> usize {
        self.inner.size()
    }
}

/// Neighbourhood signature: out-neighbours, then in-neighbours shifted by
/// `n` for directed graphs.
fn signatures(g: &Graph) -> Vec<BitSet> {
    let n = g.vertex_count() as usize;
    let width = if g.is_directed() { 2 * n } else { n };
    let mut sig: Vec<BitSet> = (0..n).map(|_| BitSet::new(width)).collect();
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize - 1, v as usize - 1);
        sig[u].insert(v);
        if g.is_directed() {
            sig[v].insert(n + u);
        } else {
            sig[v].insert(u);
        }
    }
    sig
}

/// Merge tree as `(left, right)` children of clusters `n + 1, n + 2, ...`.
fn merge_tree(g: &Graph, policy: MergePolicy) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut merges = Vec::new();
    let mut active: Vec<Vertex> = (1..=n).collect();
    let mut sig = match policy {
        MergePolicy::Similarity => signatures(g),
        MergePolicy::Balanced => Vec::new(),
    };
    while active.len() > 1 {
        let mut next = Vec::with_capacity(active.len() / 2 + 1);
        match policy {
            MergePolicy::Balanced => {
                for pair in active.chunks(2) {
                    if let [a, b] = *pair {
                        merges.push((a, b));
                        next.push(n + merges.len() as Vertex);
                    } else {
                        next.push(pair[0]);
                    }
                }
            }
            MergePolicy::Similarity => {
                let mut taken = vec![false; active.len()];
                for i in 0..active.len() {
                    if taken[i] {
                        continue;
                    }
                    taken[i] = true;
                    let a = &sig[active[i] as usize - 1];
                    let best = (i + 1..active.len())
                        .filter(|&j| !taken[j])
                        .max_by_key(|&j| (a.intersection_count(&sig[active[j] as usize - 1]), core::cmp::Reverse(j)));
                    let Some(j) = best else {
                        next.push(active[i]);
                        continue;
                    };
                    taken[j] = true;
                    let (x, y) = (active[i], active[j]);
                    let mut s = sig[x as usize - 1].clone();
                    s.union_with(&sig[y as usize - 1]);
                    sig.push(s);
                    merges.push((x, y));
                    next.push(n + merges.len() as Vertex);
                }
            }
        }
        active = next;
    }
    merges
}

/// Binary tree compression with every maximal admissible product of the
/// tree as a compression edge.
///
/// A product `C̄(u) × C̄(v)` is admissible when it lies inside `Ē`;
/// for a cluster `u` with children `u₁, u₂` that holds exactly when it holds
/// for both `(u₁, v)` and `(u₂, v)`, so whole rows of the admissibility
/// matrix are ANDs of child rows. A product is maximal when neither `u` nor
/// `v` can be replaced by its parent.
pub fn tree_compress(g: &Graph, policy: MergePolicy) -> TreeCompression {
    let n = g.vertex_count();
    let merges = merge_tree(g, policy);
    let total = n as usize + merges.len();
    let mut parent = vec![0 as Vertex; total + 1];
    for (i, &(a, b)) in merges.iter().enumerate() {
        let c = n + 1 + i as Vertex;
        parent[a as usize] = c;
        parent[b as usize] = c;
    }
    let out = g.out_neighbors();
    // row[u - 1] holds adm(u, v) at bit v - 1
    let mut rows: Vec<BitSet> = Vec::with_capacity(total);
    for x in 1..=n {
        let mut row = BitSet::new(total);
        for &y in &out[x as usize] {
            row.insert(y as usize - 1);
        }
        for (i, &(a, b)) in merges.iter().enumerate() {
            if row.contains(a as usize - 1) && row.contains(b as usize - 1) {
                row.insert(n as usize + i);
            }
        }
        rows.push(row);
    }
    for &(a, b) in &merges {
        let row = BitSet::and(&rows[a as usize - 1], &rows[b as usize - 1]);
        rows.push(row);
    }
    let mut b = CompressionBuilder::new(g.is_directed(), n);
    for &(x, y) in &merges {
        b.cluster_over(&[x, y]);
    }
    for u in 1..=total as Vertex {
        let pu = parent[u as usize];
        for v in rows[u as usize - 1].ones() {
            let v = v as Vertex + 1;
            if !g.is_directed() && v < u {
                continue;
            }
            let pv = parent[v as usize];
            let up = pu != 0 && rows[pu as usize - 1].contains(v as usize - 1);
            let vp = pv != 0 && rows[u as usize - 1].contains(pv as usize - 1);
            if !up && !vp {
                let (s, t) = canonical_pair(g.is_directed(), u, v);
                b.edge(s, t);
            }
        }
    }
    let d = b.build().expect("merge tree is well formed");
    TreeCompression::new(d).expect("merge tree is binary")
}

/// Contracts twin classes into clusters, one class at a time, always the
/// class that saves the most (smallest member on ties), while that saving
/// is positive. Remaining edges are emitted directly, so the result is
/// never larger than `|Ē|`.
pub fn dag_compress_greedy(g: &Graph) -> DagCompression {
    let directed = g.is_directed();
    let n = g.vertex_count();
    let mut nodes: BTreeSet<Vertex> = g.vertices().collect();
    let mut edges: BTreeSet<(Vertex, Vertex)> = g.edges().iter().copied().collect();
    let mut b = CompressionBuilder::new(directed, n);
    let mut next = n;
    loop {
        let mut out: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        let mut inn: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &(u, v) in &edges {
            out.entry(u).or_default().push(v);
            if directed {
                inn.entry(v).or_default().push(u);
            } else if u != v {
                out.entry(v).or_default().push(u);
            }
        }
        for list in out.values_mut().chain(inn.values_mut()) {
            list.sort_unstable();
        }
        let empty = Vec::new();
        let mut classes: BTreeMap<(&[Vertex], &[Vertex]), Vec<Vertex>> = BTreeMap::new();
        for &v in &nodes {
            let o = out.get(&v).unwrap_or(&empty);
            let i = inn.get(&v).unwrap_or(&empty);
            if !o.is_empty() || !i.is_empty() {
                classes.entry((o, i)).or_default().push(v);
            }
        }
        let mut classes: Vec<Vec<Vertex>> = classes.into_values().filter(|c| c.len() > 1).collect();
        classes.sort_unstable_by_key(|c| c[0]);
        type Pairs = Vec<(Vertex, Vertex)>;
        let mut best: Option<(usize, Vec<Vertex>, Pairs, Pairs)> = None;
        for class in classes {
            let c = next + 1;
            let map = |x: Vertex| if class.binary_search(&x).is_ok() { c } else { x };
            let mut incident = Vec::new();
            for &x in &class {
                for &y in out.get(&x).unwrap_or(&empty) {
                    incident.push(canonical_pair(directed, x, y));
                }
                for &y in inn.get(&x).unwrap_or(&empty) {
                    incident.push((y, x));
                }
            }
            incident.sort_unstable();
            incident.dedup();
            let mut replaced: Vec<_> = incident.iter().map(|&(x, y)| canonical_pair(directed, map(x), map(y))).collect();
            replaced.sort_unstable();
            replaced.dedup();
            let cost = replaced.len() + class.len();
            if cost >= incident.len() {
                continue;
            }
            let saving = incident.len() - cost;
            if best.as_ref().is_none_or(|b| saving > b.0) {
                best = Some((saving, class, incident, replaced));
            }
        }
        let Some((_, class, incident, replaced)) = best else { break };
        next = b.cluster_over(&class);
        for e in incident {
            edges.remove(&e);
        }
        edges.extend(replaced);
        for x in &class {
            nodes.remove(x);
        }
        nodes.insert(next);
    }
    for (u, v) in edges {
        b.edge(u, v);
    }
    b.build().expect("contraction keeps ids in range")
}

/// One line of the tree-versus-DAG comparison on the square rook graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub g: u32,
    pub n: u32,
    pub dag_size: usize,
    pub tree_size: usize,
    pub tree_cedges: usize,
    /// `tree_size / dag_size`.
    pub ratio: f64,
}

pub fn gap_row(g: u32, policy: MergePolicy) -> Result<GapRow, GeneratorError> {
    let spec = RookSpec::square(g);
    let graph = rook_graph(&spec)?;
    let dag = rook_canonical_compression(&spec)?;
    let tree = tree_compress(&graph, policy);
    let tree_size = tree.size();
    Ok(GapRow {
        g,
        n: graph.vertex_count(),
        dag_size: dag.size(),
        tree_size,
        tree_cedges: tree.compression().edges().len(),
        ratio: tree_size as f64 / dag.size() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique_with_loops(n: Vertex) -> Graph {
        let e = (1..=n).flat_map(|u| (1..=n).map(move |v| (u, v)));
        Graph::from_edges(true, n, e).unwrap()
    }

    #[test]
    fn single_directed_edge() {
        let g = Graph::from_edges(true, 2, [(1, 2)]).unwrap();
        for p in [MergePolicy::Similarity, MergePolicy::Balanced] {
            let t = tree_compress(&g, p);
            assert_eq!(t.root(), 3);
            assert_eq!(t.compression().edges(), &[(1, 2)]);
            assert_eq!(t.size(), 3);
        }
    }

    #[test]
    fn clique_collapses_to_root_loop() {
        let g = clique_with_loops(4);
        for p in [MergePolicy::Similarity, MergePolicy::Balanced] {
            let t = tree_compress(&g, p);
            assert_eq!(t.compression().edges(), &[(t.root(), t.root())]);
            assert_eq!(t.size(), 7);
            assert_eq!(t.compression().decompress().unwrap(), g);
        }
    }

    #[test]
    fn tiny_graphs() {
        let t = tree_compress(&Graph::empty(true, 0), MergePolicy::Similarity);
        assert_eq!((t.root(), t.size()), (0, 0));
        let g = Graph::from_edges(false, 1, [(1, 1)]).unwrap();
        let t = tree_compress(&g, MergePolicy::Similarity);
        assert_eq!((t.root(), t.size()), (1, 1));
    }

    #[test]
    fn tree_shape_checks() {
        let mut b = CompressionBuilder::new(true, 3);
        b.cluster_over(&[1, 2, 3]);
        assert_eq!(TreeCompression::new(b.build().unwrap()), Err(TreeError::NotBinary(4)));
        let mut b = CompressionBuilder::new(true, 3);
        b.cluster_over(&[1, 2]);
        b.cluster_over(&[2, 3]);
        assert_eq!(TreeCompression::new(b.build().unwrap()), Err(TreeError::SharedChild(2)));
        let mut b = CompressionBuilder::new(true, 3);
        b.cluster_over(&[1, 2]);
        assert_eq!(TreeCompression::new(b.build().unwrap()), Err(TreeError::Roots(2)));
    }

    #[test]
    fn greedy_replaces_biclique() {
        // three twins each pointing at the same four vertices
        let mut e = Vec::new();
        for u in 1..=3 {
            for v in 4..=7 {
                e.push((u, v));
            }
        }
        let g = Graph::from_edges(true, 7, e).unwrap();
        let d = dag_compress_greedy(&g);
        assert_eq!(d.decompress().unwrap(), g);
        assert!(d.size() <= 3 + 4 + 1, "{}", d.size());
    }

    #[test]
    fn greedy_without_twins_is_direct() {
        let g = rook_graph(&RookSpec::square(3)).unwrap();
        assert!(g.twins().is_empty());
        assert_eq!(dag_compress_greedy(&g), DagCompression::direct(&g));
    }

    #[test]
    fn gap_rows() {
        let r = gap_row(4, MergePolicy::Similarity).unwrap();
        assert_eq!(r.dag_size, 2 * 16 + 8);
        assert!(r.tree_size >= r.tree_cedges);
        let r = gap_row(1, MergePolicy::Similarity).unwrap();
        assert_eq!((r.n, r.tree_size), (1, 1));
    }
}
