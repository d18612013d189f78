//! Exact minimum compression size for tiny graphs.
//!
//! The search runs over families `F` of distinct sink sets with at least two
//! elements, one cluster vertex per set. Given `F`, the cheapest compression
//! is found in two independent parts:
//!
//! - arcs: each cluster `X` points at the fewest members of `F` or
//!   singletons, all proper subsets of `X`, whose union is `X`;
//! - edges: the fewest admissible products `C(u) × C(v) ⊆ Ē` covering `Ē`.
//!
//! [`UnrestrictedOracle`] is a brute force over arbitrary cluster
//! DAGs that agrees with this on the smallest graphs.
//!
//! For directed bipartite graphs there is an optimal compression whose
//! clusters all lie inside shore 2 and whose compression edges all leave a
//! shore-1 sink. [`min_dag_size_shores`] searches only those, so the
//! enumeration runs over subsets of shore 2 and shore 1 may be large. The
//! cost then splits per shore-1 vertex `t`: the fewest available sets with
//! union exactly `N(t)`.
//!
//! Family enumeration can be split into shards that share a best-so-far
//! bound; see [`OracleSearch::run_shard`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::compression::DagCompression;
use crate::graph::{canonical_pair, Graph, ShorePartition, Vertex};

/// No search accepts more sinks (or shore-2 vertices) than this.
pub const HARD_MAX_SINKS: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_sinks: u32,
    pub max_nonsingleton_clusters: usize,
    /// Stop at the first compression of at most this size.
    pub size_cap: Option<usize>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_sinks: 4, max_nonsingleton_clusters: 6, size_cap: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} vertices to search over, budget allows {max}")]
    TooManySinks { n: u32, max: u32 },
    #[error("budget max_sinks {0} exceeds the hard limit of 5")]
    BudgetTooLarge(u32),
    #[error("graph has an edge that does not go from shore 1 to shore 2")]
    NotBipartite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub witness: DagCompression,
    /// False when the search stopped at the size cap, or when families
    /// beyond the cluster budget could still have been smaller.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub yes: bool,
    pub witness: Option<DagCompression>,
    /// False when a "no" could be overturned by families beyond the budget.
    pub conclusive: bool,
}

/// Best family found by one shard, keyed by its sorted index list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShardResult {
    best: Option<(usize, Vec<u16>)>,
}

enum Mode {
    /// Arbitrary graph on at most five sinks: cover the edge bitmask.
    Generic { n: usize, directed: bool, edges: u32, prod: Vec<u32> },
    /// Directed bipartite: neighbourhoods of shore-1 vertices as masks over
    /// shore 2, with multiplicities.
    Shores { shore2: Vec<Vertex>, needs: Vec<(u32, Vec<Vertex>)> },
}

/// A prepared search over cluster families.
pub struct OracleSearch<'g> {
    g: &'g Graph,
    budget: OracleBudget,
    mode: Mode,
    /// Non-singleton subsets by `(size, mask)`.
    subsets: Vec<u32>,
    /// Lower bound on the edge part whenever any edge exists.
    base: usize,
}

fn check_budget(budget: &OracleBudget, n: u32) -> Result<(), OracleError> {
    if budget.max_sinks > HARD_MAX_SINKS {
        return Err(OracleError::BudgetTooLarge(budget.max_sinks));
    }
    if n > budget.max_sinks {
        return Err(OracleError::TooManySinks { n, max: budget.max_sinks });
    }
    Ok(())
}

fn nonsingleton_subsets(bits: usize) -> Vec<u32> {
    let mut s: Vec<u32> = (0u32..1 << bits).filter(|m| m.count_ones() >= 2).collect();
    s.sort_by_key(|&m| (m.count_ones(), m));
    s
}

fn edge_bit(n: usize, directed: bool, x: usize, y: usize) -> u32 {
    let (a, b) = if directed || x <= y { (x, y) } else { (y, x) };
    1 << (a * n + b)
}

fn product_table(n: usize, directed: bool) -> Vec<u32> {
    let size = 1usize << n;
    let mut prod = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            let mut m = 0;
            for x in (0..n).filter(|x| a >> x & 1 == 1) {
                for y in (0..n).filter(|y| b >> y & 1 == 1) {
                    m |= edge_bit(n, directed, x, y);
                }
            }
            prod[a * size + b] = m;
        }
    }
    prod
}

/// Fewest `cands` whose union is exactly `target`, all being subsets of it,
/// as indices. Breadth-first over partial unions; `target` has at most five
/// bits.
fn exact_union_cover(target: u32, cands: &[u32], skip: Option<u32>) -> Option<Vec<usize>> {
    if target == 0 {
        return Some(Vec::new());
    }
    let usable: Vec<usize> =
        (0..cands.len()).filter(|&i| cands[i] & !target == 0 && cands[i] != 0 && Some(cands[i]) != skip).collect();
    let mut prev: [Option<(u32, usize)>; 32] = [None; 32];
    let mut frontier = vec![0u32];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &state in &frontier {
            for &i in &usable {
                let s = state | cands[i];
                if s == state || prev[s as usize].is_some() {
                    continue;
                }
                prev[s as usize] = Some((state, i));
                if s == target {
                    let mut out = Vec::new();
                    let mut cur = s;
                    while cur != 0 {
                        let (p, i) = prev[cur as usize].unwrap();
                        out.push(i);
                        cur = p;
                    }
                    out.reverse();
                    return Some(out);
                }
                next.push(s);
            }
        }
        frontier = next;
    }
    None
}

/// Fewest candidates covering `target` with count at most `limit`.
fn min_set_cover(target: u32, cands: &[u32], limit: usize) -> Option<Vec<usize>> {
    if target == 0 {
        return Some(Vec::new());
    }
    let max_size = cands.iter().map(|c| c.count_ones()).max().unwrap_or(0);
    if max_size == 0 {
        return None;
    }
    let mut by_bit: Vec<Vec<usize>> = vec![Vec::new(); 32];
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(cands[i].count_ones()));
    for &i in &order {
        let mut m = cands[i];
        while m != 0 {
            by_bit[m.trailing_zeros() as usize].push(i);
            m &= m - 1;
        }
    }
    struct Ctx<'a> {
        cands: &'a [u32],
        by_bit: &'a [Vec<usize>],
        target: u32,
        max_size: u32,
        best: Option<Vec<usize>>,
        limit: usize,
    }
    fn go(cx: &mut Ctx<'_>, have: u32, chosen: &mut Vec<usize>) {
        let left = cx.target & !have;
        if left == 0 {
            cx.limit = chosen.len().saturating_sub(1);
            cx.best = Some(chosen.clone());
            return;
        }
        let need = left.count_ones().div_ceil(cx.max_size) as usize;
        if chosen.len() + need > cx.limit {
            return;
        }
        let bit = left.trailing_zeros() as usize;
        for j in 0..cx.by_bit[bit].len() {
            let i = cx.by_bit[bit][j];
            chosen.push(i);
            go(cx, have | cx.cands[i], chosen);
            chosen.pop();
            if chosen.len() + need > cx.limit {
                return;
            }
        }
    }
    let mut cx = Ctx { cands, by_bit: &by_bit, target, max_size, best: None, limit };
    go(&mut cx, 0, &mut Vec::new());
    cx.best
}

/// Drops candidates strictly contained in (or equal to an earlier) other.
fn maximal_only(cands: &mut Vec<(u32, (usize, usize))>) {
    cands.sort_by_key(|c| (core::cmp::Reverse(c.0.count_ones()), c.0, c.1));
    let mut keep: Vec<(u32, (usize, usize))> = Vec::new();
    for &c in cands.iter() {
        if !keep.iter().any(|k| c.0 & !k.0 == 0) {
            keep.push(c);
        }
    }
    *cands = keep;
}

impl<'g> OracleSearch<'g> {
    /// Search over all compressions of a graph with at most
    /// `budget.max_sinks` vertices.
    pub fn new(g: &'g Graph, budget: &OracleBudget) -> Result<Self, OracleError> {
        let n = g.vertex_count();
        check_budget(budget, n)?;
        let n = n as usize;
        let mut edges = 0u32;
        for &(u, v) in g.edges() {
            edges |= edge_bit(n, g.is_directed(), u as usize - 1, v as usize - 1);
        }
        let base = usize::from(edges != 0);
        Ok(Self {
            g,
            budget: *budget,
            mode: Mode::Generic { n, directed: g.is_directed(), edges, prod: product_table(n, g.is_directed()) },
            subsets: nonsingleton_subsets(n),
            base,
        })
    }

    /// Search over shore-normal compressions of a directed bipartite graph;
    /// the budget bounds the size of shore 2.
    pub fn with_shores(g: &'g Graph, shores: &ShorePartition, budget: &OracleBudget) -> Result<Self, OracleError> {
        if !shores.separates(g) {
            return Err(OracleError::NotBipartite);
        }
        let shore2 = shores.shore2().to_vec();
        check_budget(budget, shore2.len() as u32)?;
        let index = |v: Vertex| shore2.binary_search(&v).expect("edge target in shore 2");
        let mut masks = vec![0u32; g.vertex_count() as usize + 1];
        for &(u, v) in g.edges() {
            masks[u as usize] |= 1 << index(v);
        }
        let mut needs: BTreeMap<u32, Vec<Vertex>> = BTreeMap::new();
        for &t in shores.shore1() {
            if masks[t as usize] != 0 {
                needs.entry(masks[t as usize]).or_default().push(t);
            }
        }
        let needs: Vec<_> = needs.into_iter().collect();
        let base = needs.iter().map(|x| x.1.len()).sum();
        let bits = shore2.len();
        Ok(Self { g, budget: *budget, mode: Mode::Shores { shore2, needs }, subsets: nonsingleton_subsets(bits), base })
    }

    fn bits(&self) -> usize {
        match &self.mode {
            Mode::Generic { n, .. } => *n,
            Mode::Shores { shore2, .. } => shore2.len(),
        }
    }

    /// Starting value for a bound shared between shards: the size of the
    /// direct encoding.
    pub fn initial_bound(&self) -> usize {
        self.g.edge_count()
    }

    /// Sets available to a family: singletons first, then the members.
    fn available(&self, family: &[u16]) -> Vec<u32> {
        let mut a: Vec<u32> = (0..self.bits()).map(|i| 1 << i).collect();
        a.extend(family.iter().map(|&i| self.subsets[i as usize]));
        a
    }

    fn arc_cost(&self, avail: &[u32], singles: usize) -> usize {
        avail[singles..]
            .iter()
            .map(|&x| exact_union_cover(x, avail, Some(x)).expect("singletons cover").len())
            .sum()
    }

    /// Cheapest edge part with at most `limit` items.
    fn edge_cost(&self, avail: &[u32], limit: usize) -> Option<usize> {
        match &self.mode {
            Mode::Generic { edges, .. } => {
                let cands = self.generic_candidates(avail);
                let masks: Vec<u32> = cands.iter().map(|c| c.0).collect();
                min_set_cover(*edges, &masks, limit).map(|c| c.len())
            }
            Mode::Shores { needs, .. } => {
                let mut total = 0;
                for (mask, ts) in needs {
                    total += exact_union_cover(*mask, avail, None).expect("singletons cover").len() * ts.len();
                    if total > limit {
                        return None;
                    }
                }
                Some(total)
            }
        }
    }

    fn generic_candidates(&self, avail: &[u32]) -> Vec<(u32, (usize, usize))> {
        let Mode::Generic { n, directed, edges, prod } = &self.mode else { unreachable!() };
        let size = 1usize << n;
        let mut cands = Vec::new();
        for (i, &a) in avail.iter().enumerate() {
            for (j, &b) in avail.iter().enumerate() {
                if !directed && j < i {
                    continue;
                }
                let p = prod[a as usize * size + b as usize];
                if p != 0 && p & !edges == 0 {
                    cands.push((p, (i, j)));
                }
            }
        }
        maximal_only(&mut cands);
        cands
    }

    fn shard_of(&self, family: &[u16], shards: usize) -> usize {
        match family {
            [] => 0,
            [a] => (*a as usize * (self.subsets.len() + 1) + self.subsets.len()) % shards,
            [a, b, ..] => (*a as usize * (self.subsets.len() + 1) + *b as usize) % shards,
        }
    }

    /// Explores the families assigned to `shard` out of `shards`. `shared`
    /// holds the best size any shard has reached; start it at
    /// [`OracleSearch::initial_bound`]. Results are independent of thread
    /// timing: each shard reports its first family (in lexicographic order)
    /// of minimum size, and [`OracleSearch::combine`] takes the smallest.
    pub fn run_shard(&self, shard: usize, shards: usize, shared: &AtomicUsize) -> ShardResult {
        let mut st = ShardState { shard, shards, shared, best: None, done: false };
        let mut prefix = Vec::new();
        self.visit(&mut prefix, 0, &mut st);
        ShardResult { best: st.best }
    }

    fn allowed(&self, st: &ShardState<'_>) -> usize {
        match self.budget.size_cap {
            Some(cap) => cap,
            None => {
                let local = st.best.as_ref().map_or(usize::MAX, |b| b.0 - 1);
                local.min(st.shared.load(Ordering::Relaxed))
            }
        }
    }

    fn visit(&self, prefix: &mut Vec<u16>, start: usize, st: &mut ShardState<'_>) {
        if st.done {
            return;
        }
        let lb = 2 * prefix.len() + self.base;
        if lb > self.allowed(st) {
            return;
        }
        let mine = self.shard_of(prefix, st.shards) == st.shard;
        if mine {
            self.evaluate(prefix, st);
            if st.done {
                return;
            }
        } else if prefix.len() >= 2 {
            return;
        }
        if prefix.len() >= self.budget.max_nonsingleton_clusters {
            return;
        }
        for i in start..self.subsets.len() {
            if 2 * (prefix.len() + 1) + self.base > self.allowed(st) {
                return;
            }
            prefix.push(i as u16);
            self.visit(prefix, i + 1, st);
            prefix.pop();
            if st.done {
                return;
            }
        }
    }

    fn evaluate(&self, family: &[u16], st: &mut ShardState<'_>) {
        let allowed = self.allowed(st);
        let avail = self.available(family);
        let arcs = self.arc_cost(&avail, self.bits());
        if arcs + self.base > allowed {
            return;
        }
        if let Some(e) = self.edge_cost(&avail, allowed - arcs) {
            let total = arcs + e;
            st.best = Some((total, family.to_vec()));
            st.shared.fetch_min(total, Ordering::Relaxed);
            if self.budget.size_cap.is_some() || total == 0 {
                st.done = true;
            }
        }
    }

    /// Merges shard results into the final answer with a witness.
    pub fn combine(&self, results: &[ShardResult]) -> OracleResult {
        let best = results.iter().filter_map(|r| r.best.as_ref()).min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let Some((size, family)) = best else {
            return OracleResult { size: self.g.edge_count(), witness: DagCompression::direct(self.g), exhaustive: false };
        };
        let witness = self.witness(family);
        debug_assert_eq!(witness.size(), *size);
        let beyond = 2 * (self.budget.max_nonsingleton_clusters + 1) + self.base;
        let exhaustive = self.budget.size_cap.is_none()
            && (self.subsets.len() <= self.budget.max_nonsingleton_clusters || beyond >= *size);
        OracleResult { size: *size, witness, exhaustive }
    }

    /// Whether a "no compression of size at most `cap`" is certain.
    fn cap_conclusive(&self, cap: usize) -> bool {
        self.subsets.len() <= self.budget.max_nonsingleton_clusters
            || 2 * (self.budget.max_nonsingleton_clusters + 1) + self.base > cap
    }

    fn witness(&self, family: &[u16]) -> DagCompression {
        let avail = self.available(family);
        let singles = self.bits();
        let (first_cluster, sink_of): (Vertex, Vec<Vertex>) = match &self.mode {
            Mode::Generic { n, .. } => (*n as Vertex + 1, (1..=*n as Vertex).collect()),
            Mode::Shores { shore2, .. } => (self.g.vertex_count() + 1, shore2.clone()),
        };
        let sinks = self.g.vertex_count();
        let vid = |i: usize| if i < singles { sink_of[i] } else { first_cluster + (i - singles) as Vertex };
        let mut arcs = Vec::new();
        for (i, &x) in avail.iter().enumerate().skip(singles) {
            for c in exact_union_cover(x, &avail, Some(x)).expect("singletons cover") {
                arcs.push((vid(i), vid(c)));
            }
        }
        let mut edges = Vec::new();
        match &self.mode {
            Mode::Generic { edges: target, .. } => {
                let cands = self.generic_candidates(&avail);
                let masks: Vec<u32> = cands.iter().map(|c| c.0).collect();
                for c in min_set_cover(*target, &masks, usize::MAX).expect("singleton products cover") {
                    let (i, j) = cands[c].1;
                    edges.push((vid(i), vid(j)));
                }
            }
            Mode::Shores { needs, .. } => {
                for (mask, ts) in needs {
                    let cover = exact_union_cover(*mask, &avail, None).expect("singletons cover");
                    for &t in ts {
                        edges.extend(cover.iter().map(|&c| (t, vid(c))));
                    }
                }
            }
        }
        let directed = self.g.is_directed();
        let edges = edges.into_iter().map(|(u, v)| canonical_pair(directed, u, v)).collect();
        DagCompression::from_parts(directed, sinks, family.len() as Vertex, arcs, edges, None)
            .expect("family witness is well formed")
    }

    fn run(&self) -> OracleResult {
        let shared = AtomicUsize::new(self.initial_bound());
        let r = self.run_shard(0, 1, &shared);
        self.combine(&[r])
    }
}

struct ShardState<'a> {
    shard: usize,
    shards: usize,
    shared: &'a AtomicUsize,
    best: Option<(usize, Vec<u16>)>,
    done: bool,
}

/// Minimum `|A| + |E|` over all compressions of `g` (up to the cluster
/// budget), with a witness.
pub fn min_dag_size(g: &Graph, budget: &OracleBudget) -> Result<OracleResult, OracleError> {
    Ok(OracleSearch::new(g, budget)?.run())
}

/// Minimum over shore-normal compressions of a directed bipartite graph,
/// which is the true minimum.
pub fn min_dag_size_shores(g: &Graph, shores: &ShorePartition, budget: &OracleBudget) -> Result<OracleResult, OracleError> {
    Ok(OracleSearch::with_shores(g, shores, budget)?.run())
}

fn decide(search: OracleSearch<'_>, k: usize) -> Decision {
    let r = search.run();
    let yes = r.size <= k;
    Decision { yes, conclusive: yes || search.cap_conclusive(k), witness: yes.then_some(r.witness) }
}

/// Is there a compression of size at most `k`?
pub fn decide_mindag(g: &Graph, k: usize, budget: &OracleBudget) -> Result<Decision, OracleError> {
    let b = OracleBudget { size_cap: Some(k), ..*budget };
    Ok(decide(OracleSearch::new(g, &b)?, k))
}

pub fn decide_mindag_shores(
    g: &Graph,
    shores: &ShorePartition,
    k: usize,
    budget: &OracleBudget,
) -> Result<Decision, OracleError> {
    let b = OracleBudget { size_cap: Some(k), ..*budget };
    Ok(decide(OracleSearch::with_shores(g, shores, &b)?, k))
}

/// Brute force over every cluster DAG with up to `max_clusters` cluster
/// vertices, each with any non-empty set of children among the sinks and
/// earlier clusters. Duplicate clusters, one-child clusters and children
/// equal to the parent are all allowed. Only for `n <= 3`.
pub struct UnrestrictedOracle {
    n: usize,
    /// Cheapest arc count per set of distinct cluster sets, written as a
    /// bitmask over the `2^n` sink subsets.
    arcs_for: BTreeMap<u32, usize>,
}

impl UnrestrictedOracle {
    pub fn new(n: usize, max_clusters: usize) -> Result<Self, OracleError> {
        if n > 3 {
            return Err(OracleError::TooManySinks { n: n as u32, max: 3 });
        }
        fn grow(n: usize, max: usize, sets: &mut Vec<u32>, arcs: usize, out: &mut BTreeMap<u32, usize>) {
            let sig = sets[n..].iter().fold(0u32, |s, &m| s | 1 << m);
            let e = out.entry(sig).or_insert(usize::MAX);
            *e = (*e).min(arcs);
            if sets.len() - n == max {
                return;
            }
            let lower = sets.len();
            for kids in 1u32..1 << lower {
                let set = (0..lower).filter(|i| kids >> i & 1 == 1).fold(0, |m, i| m | sets[i]);
                sets.push(set);
                grow(n, max, sets, arcs + kids.count_ones() as usize, out);
                sets.pop();
            }
        }
        let mut arcs_for = BTreeMap::new();
        let mut sets: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        grow(n, max_clusters, &mut sets, 0, &mut arcs_for);
        Ok(Self { n, arcs_for })
    }

    pub fn min_size(&self, g: &Graph) -> Result<usize, OracleError> {
        let n = self.n;
        if g.vertex_count() as usize != n {
            return Err(OracleError::TooManySinks { n: g.vertex_count(), max: n as u32 });
        }
        let directed = g.is_directed();
        let mut target = 0u32;
        for &(u, v) in g.edges() {
            target |= edge_bit(n, directed, u as usize - 1, v as usize - 1);
        }
        let prod = product_table(n, directed);
        let size = 1usize << n;
        let mut best = usize::MAX;
        for (&sig, &arcs) in &self.arcs_for {
            let mut avail: Vec<u32> = (0..n).map(|i| 1 << i).collect();
            avail.extend((0..size as u32).filter(|m| sig >> m & 1 == 1));
            let mut cands = Vec::new();
            for &a in &avail {
                for &b in &avail {
                    let p = prod[a as usize * size + b as usize];
                    if p != 0 && p & !target == 0 {
                        cands.push(p);
                    }
                }
            }
            if let Some(c) = min_set_cover(target, &cands, usize::MAX) {
                best = best.min(arcs + c.len());
            }
        }
        Ok(best)
    }
}

pub fn min_dag_size_unrestricted(g: &Graph, max_clusters: usize) -> Result<usize, OracleError> {
    UnrestrictedOracle::new(g.vertex_count() as usize, max_clusters)?.min_size(g)
}
