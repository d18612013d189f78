//! Rewrite passes that put a compression of a directed bipartite graph into
//! a normal form without changing what it decompresses to.
//!
//! - [`twin_normalize`]: twins of the decompressed graph get identical
//!   arcs and compression edges, copied from the twin of least degree.
//! - [`shore_normalize`]: every cluster ends up inside shore 2 and every
//!   compression edge leaves a shore-1 sink.
//! - [`twin_single_edge`]: listed twins end with at most one compression
//!   edge each.
//!
//! All passes work on unweighted compressions and return a fresh value.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::compression::{CompressionError, DagCompression};
use crate::graph::{canonical_pair, ShorePartition, Vertex};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("vertex {0} is not a sink")]
    NotSink(Vertex),
    #[error("normalization passes take unweighted compressions")]
    Weighted,
    #[error("twins {0} and {1} share a compression edge or carry a loop")]
    TwinsAdjacent(Vertex, Vertex),
    #[error("{0} and {1} are not twins in the compression")]
    NotTwins(Vertex, Vertex),
    #[error("decompressed graph is not directed bipartite for these shores")]
    NotBipartite,
    #[error("cluster {0} reaches a shore-1 vertex")]
    NotShoreNormal(Vertex),
    #[error(transparent)]
    Compression(#[from] CompressionError),
}

/// Mutable edit buffer; clusters are removed by marking them dead and
/// renumbered on [`Work::finish`].
struct Work {
    directed: bool,
    n_sinks: Vertex,
    total: Vertex,
    arcs: BTreeSet<(Vertex, Vertex)>,
    edges: BTreeSet<(Vertex, Vertex)>,
    dead: BTreeSet<Vertex>,
}

/// Parents, then edge partners, of one sink. For directed compressions the
/// partners are `(true, y)` for `(t, y)` and `(false, x)` for `(x, t)`.
type Incidence = (Vec<Vertex>, Vec<(bool, Vertex)>);

impl Work {
    fn new(d: &DagCompression) -> Result<Self, NormalizeError> {
        if d.is_weighted() {
            return Err(NormalizeError::Weighted);
        }
        Ok(Self {
            directed: d.is_directed(),
            n_sinks: d.n_sinks(),
            total: d.vertex_count(),
            arcs: d.arcs().iter().copied().collect(),
            edges: d.edges().iter().copied().collect(),
            dead: BTreeSet::new(),
        })
    }

    fn incidence(&self, t: Vertex) -> Incidence {
        let parents = self.arcs.iter().filter(|a| a.1 == t).map(|a| a.0).collect();
        let mut partners = Vec::new();
        for &(x, y) in &self.edges {
            if x == t {
                partners.push((true, y));
            }
            if y == t && x != t {
                partners.push((!self.directed, x));
            }
        }
        partners.sort_unstable();
        (parents, partners)
    }

    fn clear(&mut self, t: Vertex) {
        self.arcs.retain(|a| a.1 != t && a.0 != t);
        self.edges.retain(|e| e.0 != t && e.1 != t);
    }

    fn attach(&mut self, t: Vertex, inc: &Incidence) {
        for &p in &inc.0 {
            self.arcs.insert((p, t));
        }
        for &(out, x) in &inc.1 {
            let e = if out { (t, x) } else { (x, t) };
            self.edges.insert(canonical_pair(self.directed, e.0, e.1));
        }
    }

    fn kill(&mut self, v: Vertex) {
        self.clear(v);
        self.dead.insert(v);
    }

    fn add_cluster(&mut self) -> Vertex {
        self.total += 1;
        self.total
    }

    fn children(&self, v: Vertex) -> Vec<Vertex> {
        self.arcs.range((v, 0)..=(v, Vertex::MAX)).map(|a| a.1).collect()
    }

    /// Removes clusters left without children, repeatedly.
    fn drop_childless(&mut self) {
        loop {
            let empty: Vec<Vertex> = (self.n_sinks + 1..=self.total)
                .filter(|v| !self.dead.contains(v) && self.children(*v).is_empty())
                .collect();
            if empty.is_empty() {
                return;
            }
            for v in empty {
                self.kill(v);
            }
        }
    }

    fn finish(self) -> DagCompression {
        let mut id = vec![0; self.total as usize + 1];
        let mut next = self.n_sinks;
        for v in 1..=self.total {
            if v <= self.n_sinks {
                id[v as usize] = v;
            } else if !self.dead.contains(&v) {
                next += 1;
                id[v as usize] = next;
            }
        }
        let arcs = self.arcs.iter().map(|&(u, v)| (id[u as usize], id[v as usize])).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| canonical_pair(self.directed, id[u as usize], id[v as usize]))
            .collect();
        DagCompression::from_parts(self.directed, self.n_sinks, next - self.n_sinks, arcs, edges, None)
            .expect("renumbered edit buffer is well formed")
    }
}

/// Groups pairs into twin classes, each sorted, ordered by smallest member.
fn twin_classes(d: &DagCompression, pairs: &[(Vertex, Vertex)]) -> Result<Vec<Vec<Vertex>>, NormalizeError> {
    let mut uf = UnionFind::new(d.n_sinks());
    let mut touched = BTreeSet::new();
    for &(a, b) in pairs {
        for v in [a, b] {
            if !d.is_sink(v) {
                return Err(NormalizeError::NotSink(v));
            }
        }
        uf.unite(a, b);
        touched.insert(a);
        touched.insert(b);
    }
    let mut classes: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &v in &touched {
        classes.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<_> = classes.into_values().filter(|c| c.len() > 1).collect();
    out.sort();
    Ok(out)
}

fn check_not_adjacent(w: &Work, class: &[Vertex]) -> Result<(), NormalizeError> {
    for &(x, y) in &w.edges {
        if class.binary_search(&x).is_ok() && class.binary_search(&y).is_ok() {
            return Err(NormalizeError::TwinsAdjacent(x, y));
        }
    }
    Ok(())
}

/// Gives every twin class identical incidences in `(V, A)` and `(V, E)`,
/// copied from its member of least total degree (smallest id on ties).
/// Clusters left without children are removed.
pub fn twin_normalize(d: &DagCompression, twin_pairs: &[(Vertex, Vertex)]) -> Result<DagCompression, NormalizeError> {
    let classes = twin_classes(d, twin_pairs)?;
    #[cfg(debug_assertions)]
    if d.n_sinks() <= 64 {
        let g = d.decompress()?;
        let (out, inn) = (g.out_neighbors(), g.in_neighbors());
        for &(a, b) in twin_pairs {
            let (a, b) = (a as usize, b as usize);
            debug_assert!(
                out[a] == out[b] && inn[a] == inn[b],
                "{a} and {b} are not twins"
            );
        }
    }
    let mut w = Work::new(d)?;
    for class in &classes {
        check_not_adjacent(&w, class)?;
        let incs: Vec<Incidence> = class.iter().map(|&t| w.incidence(t)).collect();
        if incs.iter().all(|i| *i == incs[0]) {
            continue;
        }
        let src = (0..class.len()).min_by_key(|&i| (incs[i].0.len() + incs[i].1.len(), i)).unwrap();
        for (i, &t) in class.iter().enumerate() {
            if i != src {
                w.clear(t);
                w.attach(t, &incs[src]);
            }
        }
    }
    w.drop_childless();
    Ok(w.finish())
}

fn check_bipartite(d: &DagCompression, shores: &ShorePartition) -> Result<(), NormalizeError> {
    if d.is_weighted() {
        return Err(NormalizeError::Weighted);
    }
    if shores.vertex_count() != d.n_sinks() || !shores.separates(&d.decompress()?) {
        return Err(NormalizeError::NotBipartite);
    }
    Ok(())
}

/// Removes clusters that reach both shores, then repeatedly takes the
/// smallest-id cluster inside shore 1 that has no parent and switches it:
/// its compression edges become arcs and its arcs become reversed
/// compression edges. Afterwards every cluster lies inside shore 2.
/// Clusters inside shore 1 without compression edges are removed instead.
pub fn shore_normalize(d: &DagCompression, shores: &ShorePartition) -> Result<DagCompression, NormalizeError> {
    check_bipartite(d, shores)?;
    let table = d.clusters()?;
    let mut w = Work::new(d)?;
    let mut in_shore1 = vec![false; d.vertex_count() as usize + 1];
    for v in d.cluster_vertices() {
        let set = table.cluster(v);
        let one = set.iter().any(|&x| shores.in_shore1(x));
        let two = set.iter().any(|&x| shores.in_shore2(x));
        if one && two {
            w.kill(v);
        } else {
            in_shore1[v as usize] = one;
        }
    }
    loop {
        let next = d.cluster_vertices().find(|&u| {
            in_shore1[u as usize] && !w.dead.contains(&u) && !w.arcs.iter().any(|a| a.1 == u)
        });
        let Some(u) = next else { break };
        in_shore1[u as usize] = false;
        let kids = w.children(u);
        let targets: Vec<Vertex> = w.edges.iter().filter(|e| e.0 == u).map(|e| e.1).collect();
        debug_assert!(w.edges.iter().all(|e| e.1 != u));
        if targets.is_empty() {
            w.kill(u);
            continue;
        }
        w.clear(u);
        for v in targets {
            w.arcs.insert((u, v));
        }
        for x in kids {
            w.edges.insert((x, u));
        }
    }
    w.drop_childless();
    Ok(w.finish())
}

/// For each twin class whose members share two or more compression edges
/// `(t, u), (t, v)` with `u < v` the two smallest targets, adds a cluster
/// `c` with arcs to `u` and `v` and replaces those edges by `(t, c)`,
/// until one edge per member remains. Needs twin- and shore-normal input;
/// size is unchanged for classes of two and drops for larger ones.
pub fn twin_single_edge(
    d: &DagCompression,
    shores: &ShorePartition,
    twin_pairs: &[(Vertex, Vertex)],
) -> Result<DagCompression, NormalizeError> {
    check_bipartite(d, shores)?;
    let table = d.clusters()?;
    if let Some(v) = d.cluster_vertices().find(|&v| table.cluster(v).iter().any(|&x| shores.in_shore1(x))) {
        return Err(NormalizeError::NotShoreNormal(v));
    }
    let classes = twin_classes(d, twin_pairs)?;
    let mut w = Work::new(d)?;
    for class in &classes {
        let first = w.incidence(class[0]);
        for &t in &class[1..] {
            if w.incidence(t) != first {
                return Err(NormalizeError::NotTwins(class[0], t));
            }
        }
        loop {
            let targets: Vec<Vertex> = w.edges.iter().filter(|e| e.0 == class[0]).map(|e| e.1).take(2).collect();
            let [u, v] = targets[..] else { break };
            let c = w.add_cluster();
            w.arcs.insert((c, u));
            w.arcs.insert((c, v));
            for &t in class {
                w.edges.remove(&(t, u));
                w.edges.remove(&(t, v));
                w.edges.insert((t, c));
            }
        }
    }
    Ok(w.finish())
}
