//! Set-cover closures, twinned incidence graphs and the hardness constructions
//! for the minimum-compression problems.
//!
//! Vertex layout of a twinned incidence graph over the universe `1..=u`
//! with sets `S_1..S_m`: elements keep their ids, `a_{S_i} = u + 2i - 1` and
//! `b_{S_i} = u + 2i`. Extra shore-1 vertices (the `s̄` of the add
//! construction) come after.
//!
//! Every closed family in standard order has an optimal compression with
//! `2` compression edges per singleton and `2` arcs plus `2` edges per larger
//! set, that is `4m - 2n` items for `m` sets over `n` elements. The derived
//! thresholds below are built on that count.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::compression::{CompressionBuilder, DagCompression};
use crate::graph::{Graph, ShorePartition, Vertex};
use crate::oracle::{self, OracleBudget, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("element {element} outside the universe 1..={n}")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("set {0} is empty")]
    EmptySet(usize),
    #[error("sets {0} and {1} are equal")]
    DuplicateSet(usize, usize),
    #[error("the sets do not cover the universe")]
    NotCovering,
    #[error("the universe itself is one of the sets")]
    UniverseInFamily,
    #[error("family is not closed: {0}")]
    NotClosed(&'static str),
    #[error("exhaustive set cover is limited to {max} sets, got {got}")]
    TooManySets { max: usize, got: usize },
    #[error("the new set is contained in an existing set")]
    NewSetNotNew,
    #[error("the new set cannot be covered by the family")]
    NewSetNotCoverable,
    #[error("cover index {0} is out of range or the sets do not cover the universe")]
    BadCover(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Universe `1..=n`, a list of distinct non-empty subsets, and a budget `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    n: u32,
    sets: Vec<Vec<u32>>,
    k: usize,
}

impl SetCoverInstance {
    /// Sets are sorted and deduplicated internally; their order is kept.
    pub fn new(n: u32, sets: Vec<Vec<u32>>, k: usize) -> Result<Self, ReductionError> {
        let sets = normalize_sets(n, sets)?;
        Ok(Self { n, sets, k })
    }

    pub fn universe_size(&self) -> u32 {
        self.n
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(&self, k: usize) -> Self {
        Self { k, ..self.clone() }
    }

    fn check_reducible(&self) -> Result<(), ReductionError> {
        let mut seen = vec![false; self.n as usize + 1];
        for s in &self.sets {
            for &e in s {
                seen[e as usize] = true;
            }
            if s.len() == self.n as usize {
                return Err(ReductionError::UniverseInFamily);
            }
        }
        if seen[1..].iter().any(|x| !x) {
            return Err(ReductionError::NotCovering);
        }
        Ok(())
    }
}

fn normalize_sets(n: u32, sets: Vec<Vec<u32>>) -> Result<Vec<Vec<u32>>, ReductionError> {
    let mut out = Vec::with_capacity(sets.len());
    for (i, mut s) in sets.into_iter().enumerate() {
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(ReductionError::EmptySet(i));
        }
        if let Some(&e) = s.iter().find(|&&e| e == 0 || e > n) {
            return Err(ReductionError::ElementOutOfRange { element: e, n });
        }
        if let Some(j) = out.iter().position(|t: &Vec<u32>| *t == s) {
            return Err(ReductionError::DuplicateSet(j, i));
        }
        out.push(s);
    }
    Ok(out)
}

/// A family closed under singletons and initial segments, listed by
/// non-decreasing size with ties in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFamily {
    n: u32,
    sets: Vec<Vec<u32>>,
    from_input: Vec<bool>,
}

impl ClosedFamily {
    pub fn universe_size(&self) -> u32 {
        self.n
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Whether set `i` was one of the input sets (as opposed to added by
    /// the closure).
    pub fn from_input(&self, i: usize) -> bool {
        self.from_input[i]
    }

    pub fn position(&self, set: &[u32]) -> Option<usize> {
        self.sets.iter().position(|s| s.as_slice() == set)
    }

    /// Vertex ids `(a_S, b_S)` of set `i` in the twinned incidence graph.
    pub fn twin_ids(&self, i: usize) -> (Vertex, Vertex) {
        twin_ids(self.n, i)
    }

    /// Checks closure and standard order.
    pub fn check(&self) -> Result<(), ReductionError> {
        let present: BTreeSet<&[u32]> = self.sets.iter().map(|s| s.as_slice()).collect();
        if present.len() != self.sets.len() {
            return Err(ReductionError::NotClosed("repeated set"));
        }
        for j in 1..=self.n {
            if !present.contains(&[j][..]) {
                return Err(ReductionError::NotClosed("missing singleton"));
            }
        }
        for s in &self.sets {
            if s.len() >= 2 && !present.contains(&s[..s.len() - 1]) {
                return Err(ReductionError::NotClosed("missing initial segment"));
            }
        }
        if self.sets.windows(2).any(|w| w[0].len() > w[1].len()) {
            return Err(ReductionError::NotClosed("not in standard order"));
        }
        Ok(())
    }
}

fn twin_ids(n: u32, i: usize) -> (Vertex, Vertex) {
    let a = n + 2 * i as u32 + 1;
    (a, a + 1)
}

/// Closure of `sets` over `1..=n`: all singletons and all non-empty initial
/// segments. `origin` sets are flagged as input sets.
fn close(n: u32, sets: &[Vec<u32>]) -> ClosedFamily {
    let mut all: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    for j in 1..=n {
        all.insert((1, vec![j]));
    }
    for s in sets {
        for i in 1..=s.len() {
            all.insert((i, s[..i].to_vec()));
        }
    }
    let input: BTreeSet<&Vec<u32>> = sets.iter().collect();
    let sets: Vec<Vec<u32>> = all.into_iter().map(|(_, s)| s).collect();
    let from_input = sets.iter().map(|s| input.contains(s)).collect();
    ClosedFamily { n, sets, from_input }
}

/// Requires every element to be covered and the universe not to be a set.
pub fn close_standard_order(inst: &SetCoverInstance) -> Result<ClosedFamily, ReductionError> {
    inst.check_reducible()?;
    Ok(close(inst.n, &inst.sets))
}

/// Twinned incidence graph of arbitrary distinct sets over `1..=n`, with
/// `extra` additional isolated shore-1 vertices at the end.
fn twinned_with_extra(n: u32, sets: &[Vec<u32>], extra: u32) -> (Graph, ShorePartition) {
    let total = n + 2 * sets.len() as u32 + extra;
    let mut edges = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let (a, b) = twin_ids(n, i);
        for &e in s {
            edges.push((a, e));
            edges.push((b, e));
        }
    }
    let g = Graph::from_edges_strict(true, total, edges).expect("distinct incidences");
    let shores = ShorePartition::new(total, n + 1..=total).expect("disjoint range");
    (g, shores)
}

/// Twinned incidence graph of any list of distinct sets over `1..=n`.
pub fn twinned_incidence_of(n: u32, sets: &[Vec<u32>]) -> Result<(Graph, ShorePartition), ReductionError> {
    let sets = normalize_sets(n, sets.to_vec())?;
    Ok(twinned_with_extra(n, &sets, 0))
}

pub fn twinned_incidence(family: &ClosedFamily) -> (Graph, ShorePartition) {
    twinned_with_extra(family.n, &family.sets, 0)
}

/// Twin pairs `(a_S, b_S)` known by construction.
pub fn twin_pairs(n: u32, set_count: usize) -> Vec<(Vertex, Vertex)> {
    (0..set_count).map(|i| twin_ids(n, i)).collect()
}

/// The vertex standing for set `i` in the canonical compression: the sink
/// for singletons, otherwise its cluster.
fn set_vertices(family: &ClosedFamily, b: &mut CompressionBuilder) -> Vec<Vertex> {
    let mut vertex = vec![0; family.sets.len()];
    for (i, s) in family.sets.iter().enumerate() {
        vertex[i] = if s.len() == 1 {
            s[0]
        } else {
            let prefix = family.position(&s[..s.len() - 1]).expect("closed family");
            b.cluster_over(&[vertex[prefix], *s.last().expect("non-empty")])
        };
    }
    vertex
}

fn canonical_into(family: &ClosedFamily, b: &mut CompressionBuilder) -> Vec<Vertex> {
    let vertex = set_vertices(family, b);
    for (i, &v) in vertex.iter().enumerate() {
        let (a, bb) = family.twin_ids(i);
        b.edge(a, v).edge(bb, v);
    }
    vertex
}

/// The optimal compression of the twinned incidence graph of a closed
/// family (size `4m - 2n`). Also returns the vertex standing for each set.
pub fn canonical_closure_compression_with_vertices(
    family: &ClosedFamily,
) -> Result<(DagCompression, Vec<Vertex>), ReductionError> {
    family.check()?;
    let total = family.n + 2 * family.sets.len() as u32;
    let mut b = CompressionBuilder::new(true, total);
    let vertex = canonical_into(family, &mut b);
    Ok((b.build().expect("canonical construction"), vertex))
}

pub fn canonical_closure_compression(family: &ClosedFamily) -> Result<DagCompression, ReductionError> {
    canonical_closure_compression_with_vertices(family).map(|x| x.0)
}

/// Size of the canonical compression of a closed family of `m` sets over `n`
/// elements.
pub fn closure_compression_size(m: usize, n: usize) -> usize {
    4 * m - 2 * n
}

/// The closed forms with a `-4` term. They undercount the constructions
/// above (by four, and by two for deletion) and are kept only so both values
/// can be reported side by side.
pub mod stated {
    pub fn closure_compression_size(m: usize, n: usize) -> i64 {
        4 * m as i64 - 2 * n as i64 - 4
    }

    pub fn mindag_threshold(m: usize, n: usize, k: usize) -> i64 {
        4 * m as i64 - 2 * n as i64 - 2 + k as i64
    }

    /// `n` is the size of the shifted universe without the extra element.
    pub fn add_compression_size(m: usize, n: usize) -> i64 {
        4 * m as i64 - 2 * (n as i64 + 1) - 4 + n as i64
    }

    pub fn add_threshold(m: usize, n: usize, k: usize) -> i64 {
        k as i64 + 4 * m as i64 - 2 * (n as i64 + 1) - 4
    }

    pub fn delete_threshold(m: usize, n: usize, k: usize) -> i64 {
        k as i64 + 4 * m as i64 - 2 * (n as i64 + 1) - 4
    }
}

/// Minimum compression instance: the twinned incidence graph of the closure
/// with the universe appended.
#[derive(Debug, Clone)]
pub struct MindagReduction {
    pub family: Vec<Vec<u32>>,
    pub graph: Graph,
    pub shores: ShorePartition,
    /// Closure size without the universe.
    pub m: usize,
    pub n: u32,
    pub k: usize,
    /// `4m - 2n + 2 + k`.
    pub threshold: usize,
}

pub fn reduce_mindag(inst: &SetCoverInstance) -> Result<MindagReduction, ReductionError> {
    let closed = close_standard_order(inst)?;
    let m = closed.len();
    let mut family = closed.sets;
    family.push((1..=inst.n).collect());
    let (graph, shores) = twinned_with_extra(inst.n, &family, 0);
    let threshold = closure_compression_size(m, inst.n as usize) + 2 + inst.k;
    Ok(MindagReduction { family, graph, shores, m, n: inst.n, k: inst.k, threshold })
}

/// The shifted and infected input sets: `S ↦ {1} ∪ (S + 1)`.
fn infect(inst: &SetCoverInstance) -> Vec<Vec<u32>> {
    inst.sets.iter().map(|s| core::iter::once(1).chain(s.iter().map(|&e| e + 1)).collect()).collect()
}

fn shift(inst: &SetCoverInstance) -> Vec<Vec<u32>> {
    inst.sets.iter().map(|s| s.iter().map(|&e| e + 1).collect()).collect()
}

/// Edge addition instance.
#[derive(Debug, Clone)]
pub struct AddReduction {
    /// Closure of the infected sets over `1..=n+1`.
    pub family: ClosedFamily,
    pub graph: Graph,
    pub shores: ShorePartition,
    pub compression: DagCompression,
    pub s_bar: Vertex,
    pub new_edge: (Vertex, Vertex),
    pub m: usize,
    pub n: u32,
    pub k: usize,
    /// `k + 4m - 2(n+1)`.
    pub threshold: usize,
    set_vertex: Vec<Vertex>,
    infected: Vec<Vec<u32>>,
}

pub fn reduce_add(inst: &SetCoverInstance) -> Result<AddReduction, ReductionError> {
    inst.check_reducible()?;
    let infected = infect(inst);
    let u = inst.n + 1;
    let family = close(u, &infected);
    let m = family.len();
    let (graph0, _) = twinned_with_extra(u, &family.sets, 1);
    let s_bar = graph0.vertex_count();
    let mut edges = graph0.edges().to_vec();
    edges.extend((2..=u).map(|x| (s_bar, x)));
    let graph = Graph::from_edges_strict(true, s_bar, edges).expect("new vertex edges are fresh");
    let shores = ShorePartition::new(s_bar, u + 1..=s_bar).expect("disjoint range");
    let mut b = CompressionBuilder::new(true, s_bar);
    let set_vertex = canonical_into(&family, &mut b);
    for x in 2..=u {
        b.edge(s_bar, x);
    }
    let compression = b.build().expect("canonical construction");
    let threshold = inst.k + closure_compression_size(m, u as usize);
    Ok(AddReduction {
        family,
        graph,
        shores,
        compression,
        s_bar,
        new_edge: (s_bar, 1),
        m,
        n: inst.n,
        k: inst.k,
        threshold,
        set_vertex,
        infected,
    })
}

impl AddReduction {
    /// The graph after adding the new edge.
    pub fn graph_with_new_edge(&self) -> Graph {
        let mut e = self.graph.edges().to_vec();
        e.push(self.new_edge);
        Graph::from_edges_strict(true, self.graph.vertex_count(), e).expect("edge is new")
    }

    /// Compression of the grown graph in which `s̄` points at the clusters
    /// of the input sets listed in `cover` (indices into the instance).
    pub fn yes_witness(&self, cover: &[usize]) -> Result<DagCompression, ReductionError> {
        let mut covered = BTreeSet::new();
        let mut targets = Vec::new();
        for &i in cover {
            let s = self.infected.get(i).ok_or(ReductionError::BadCover(i))?;
            covered.extend(s.iter().copied());
            targets.push(self.set_vertex[self.family.position(s).expect("input sets are in the closure")]);
        }
        if covered.len() != self.n as usize + 1 {
            return Err(ReductionError::BadCover(cover.len()));
        }
        let d = &self.compression;
        let edges: Vec<_> = d
            .edges()
            .iter()
            .copied()
            .filter(|&(u, _)| u != self.s_bar)
            .chain(targets.into_iter().map(|t| (self.s_bar, t)))
            .collect();
        Ok(DagCompression::from_parts(true, d.n_sinks(), d.n_clusters(), d.arcs().to_vec(), edges, None)
            .expect("set vertices are distinct"))
    }
}

/// Edge deletion instance.
#[derive(Debug, Clone)]
pub struct DeleteReduction {
    /// Closure of the shifted sets plus `X = {1..n+1}`.
    pub family: ClosedFamily,
    pub graph: Graph,
    pub shores: ShorePartition,
    pub compression: DagCompression,
    /// `(a_X, 1)`.
    pub removed_edge: (Vertex, Vertex),
    pub m: usize,
    pub n: u32,
    pub k: usize,
    /// `k + 4m - 2(n+1) - 2`. Once `(a_X, 1)` is gone the cluster of `X`
    /// stops paying for itself: `b_X` can point at its two children
    /// directly, which frees two arcs for `a_X`.
    pub threshold: usize,
    set_vertex: Vec<Vertex>,
    shifted: Vec<Vec<u32>>,
    x_index: usize,
}

pub fn reduce_delete(inst: &SetCoverInstance) -> Result<DeleteReduction, ReductionError> {
    inst.check_reducible()?;
    let u = inst.n + 1;
    let shifted = shift(inst);
    let mut with_x = shifted.clone();
    with_x.push((1..=u).collect());
    let family = close(u, &with_x);
    let m = family.len();
    let x_index = family.position(&with_x[with_x.len() - 1]).expect("X is in its closure");
    let (graph, shores) = twinned_incidence(&family);
    let (compression, set_vertex) = canonical_closure_compression_with_vertices(&family)?;
    let removed_edge = (family.twin_ids(x_index).0, 1);
    let threshold = inst.k + closure_compression_size(m, u as usize) - 2;
    Ok(DeleteReduction {
        family,
        graph,
        shores,
        compression,
        removed_edge,
        m,
        n: inst.n,
        k: inst.k,
        threshold,
        set_vertex,
        shifted,
        x_index,
    })
}

impl DeleteReduction {
    pub fn graph_without_edge(&self) -> Graph {
        let (a, b) = self.removed_edge;
        let e = self.graph.edges().iter().copied().filter(|&p| p != (a, b));
        Graph::from_edges_strict(true, self.graph.vertex_count(), e).expect("subset of edges")
    }

    /// Dissolves the cluster `c_X`, pointing `b_X` at its children and `a_X`
    /// at the vertices of the input sets listed in `cover`. Size
    /// `4m - 2(n+1) - 2 + |cover|`.
    pub fn yes_witness(&self, cover: &[usize]) -> Result<DagCompression, ReductionError> {
        let mut covered = BTreeSet::new();
        let mut targets = Vec::new();
        for &i in cover {
            let s = self.shifted.get(i).ok_or(ReductionError::BadCover(i))?;
            covered.extend(s.iter().copied());
            targets.push(self.set_vertex[self.family.position(s).expect("input sets are in the closure")]);
        }
        if covered.len() != self.n as usize {
            return Err(ReductionError::BadCover(cover.len()));
        }
        let (a_x, b_x) = self.family.twin_ids(self.x_index);
        let c_x = self.set_vertex[self.x_index];
        let d = &self.compression;
        let edges: Vec<_> = d
            .edges()
            .iter()
            .copied()
            .filter(|&(_, v)| v != c_x)
            .chain(d.children(c_x).map(|c| (b_x, c)))
            .chain(targets.into_iter().map(|t| (a_x, t)))
            .collect();
        let d = DagCompression::from_parts(true, d.n_sinks(), d.n_clusters(), d.arcs().to_vec(), edges, None)
            .expect("set vertices are distinct");
        Ok(d.retain_clusters(|v| v != c_x))
    }
}

fn mask_of(s: &[u32]) -> u64 {
    s.iter().fold(0u64, |m, &e| m | 1 << (e - 1))
}

/// Smallest number of `sets` whose union is exactly `target` (when `exact`)
/// or contains it, with the chosen indices.
fn min_cover(sets: &[u64], target: u64, exact: bool) -> Option<(usize, Vec<usize>)> {
    let usable: Vec<usize> = (0..sets.len()).filter(|&i| !exact || sets[i] & !target == 0).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    // sets are small in every caller; branch on the lowest uncovered element
    fn go(
        sets: &[u64],
        usable: &[usize],
        target: u64,
        have: u64,
        chosen: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>)>,
    ) {
        if have & target == target {
            if best.as_ref().is_none_or(|b| chosen.len() < b.0) {
                *best = Some((chosen.len(), chosen.clone()));
            }
            return;
        }
        if best.as_ref().is_some_and(|b| chosen.len() + 1 >= b.0) {
            return;
        }
        let low = (target & !have).trailing_zeros();
        for &i in usable {
            if sets[i] >> low & 1 == 1 {
                chosen.push(i);
                go(sets, usable, target, have | sets[i], chosen, best);
                chosen.pop();
            }
        }
    }
    go(sets, &usable, target, 0, &mut Vec::new(), &mut best);
    best.map(|(k, mut w)| {
        w.sort_unstable();
        (k, w)
    })
}

pub const SETCOVER_MAX_SETS: usize = 20;

/// Exact minimum set cover by enumerating subsets of the sets. Returns
/// `None` when the universe cannot be covered.
pub fn setcover_exhaustive(inst: &SetCoverInstance) -> Result<Option<(usize, Vec<usize>)>, ReductionError> {
    let t = inst.sets.len();
    if t > SETCOVER_MAX_SETS {
        return Err(ReductionError::TooManySets { max: SETCOVER_MAX_SETS, got: t });
    }
    let masks: Vec<u64> = inst.sets.iter().map(|s| mask_of(s)).collect();
    let full = if inst.n == 0 { 0 } else { u64::MAX >> (64 - inst.n) };
    let mut best: Option<u32> = None;
    let mut best_sel = 0u32;
    for sel in 0u32..1 << t {
        let c = sel.count_ones();
        if best.is_some_and(|b| c >= b) {
            continue;
        }
        let u = (0..t).filter(|&i| sel >> i & 1 == 1).fold(0, |m, i| m | masks[i]);
        if u & full == full {
            best = Some(c);
            best_sel = sel;
        }
    }
    Ok(best.map(|c| (c as usize, (0..t).filter(|&i| best_sel >> i & 1 == 1).collect())))
}

/// `k_=`: fewest sets with union exactly `r`; `None` stands for infinity.
pub fn exact_cover_number(sets: &[Vec<u32>], r: &[u32]) -> Option<usize> {
    let masks: Vec<u64> = sets.iter().map(|s| mask_of(s)).collect();
    min_cover(&masks, mask_of(r), true).map(|x| x.0)
}

/// `k_⊇`: fewest sets with union containing `r`.
pub fn superset_cover_number(sets: &[Vec<u32>], r: &[u32]) -> Option<usize> {
    let masks: Vec<u64> = sets.iter().map(|s| mask_of(s)).collect();
    min_cover(&masks, mask_of(r), false).map(|x| x.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub k_eq: Option<usize>,
    pub k_sup: usize,
    /// Optimal size for the family.
    pub s: usize,
    /// Optimal size for the family plus the new set.
    pub s_prime: usize,
    pub lower_holds: bool,
    /// True when `k_eq` is infinite.
    pub upper_holds: bool,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Compares the optimal compression sizes of the twinned incidence graphs of
/// `sets` and `sets + [r]` with the cover numbers of `r`:
/// `s + k_⊇ + 2 <= s' <= s + k_= + 2`.
pub fn check_sandwich(
    n: u32,
    sets: &[Vec<u32>],
    r: &[u32],
    budget: &OracleBudget,
) -> Result<SandwichReport, ReductionError> {
    let sets = normalize_sets(n, sets.to_vec())?;
    let mut r = normalize_sets(n, vec![r.to_vec()])?.remove(0);
    r.dedup();
    if sets.iter().any(|s| r.iter().all(|e| s.binary_search(e).is_ok())) {
        return Err(ReductionError::NewSetNotNew);
    }
    let k_sup = superset_cover_number(&sets, &r).ok_or(ReductionError::NewSetNotCoverable)?;
    let k_eq = exact_cover_number(&sets, &r);
    let (g, sh) = twinned_with_extra(n, &sets, 0);
    let s = oracle::min_dag_size_shores(&g, &sh, budget)?.size;
    let mut with_r = sets.clone();
    with_r.push(r);
    let (g2, sh2) = twinned_with_extra(n, &with_r, 0);
    let s_prime = oracle::min_dag_size_shores(&g2, &sh2, budget)?.size;
    Ok(SandwichReport {
        k_eq,
        k_sup,
        s,
        s_prime,
        lower_holds: s + k_sup + 2 <= s_prime,
        upper_holds: k_eq.is_none_or(|k| s_prime <= s + k + 2),
    })
}
