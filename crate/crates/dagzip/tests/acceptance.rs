//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dagzip::format::read_compression;
use dagzip_core::generators::{
    random_compression, random_compression_of, random_weights, rook_canonical_compression, rook_graph,
    RandomCompressionParams, RandomCoverParams, RookSpec,
};
use dagzip_core::heuristics::{tree_compress, MergePolicy, TreeCompression};
use dagzip_core::mst::{kruskal_compressed_with, CleanOrder, MstOptions, SortStrategy};
use dagzip_core::normalize::{shore_normalize, twin_normalize, twin_single_edge};
use dagzip_core::oracle::{decide_mindag_shores, min_dag_size, OracleBudget, UnrestrictedOracle};
use dagzip_core::reductions::{
    canonical_closure_compression, check_sandwich, close_standard_order, reduce_add, reduce_delete, reduce_mindag,
    setcover_exhaustive, stated, twin_pairs, twinned_incidence, twinned_incidence_of, SetCoverInstance,
};
use dagzip_core::{kruskal_baseline, kruskal_compressed, DagCompression, Graph, MstStats, ShorePartition, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WEIGHTED_EXAMPLE: &str = include_str!("fixtures/weighted_mst_example.dagc");

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Report {
    failed: usize,
}

impl Report {
    fn run(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(d) => (false, d),
        };
        if !pass {
            self.failed += 1;
        }
        println!(
            "{} {id}. {name}: {detail} [{:.2} s, limit {} s]",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
}

fn fuzz_compressions() -> Vec<DagCompression> {
    (0..300u64)
        .map(|seed| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            random_compression(&RandomCompressionParams {
                n_sinks: r.gen_range(1..=12),
                n_clusters: r.gen_range(0..=6),
                arc_density: r.gen_range(0.1..0.6),
                edge_count: r.gen_range(0..=24),
                max_weight: if seed % 2 == 0 { 4 } else { 1000 },
                seed,
            })
        })
        .collect()
}

fn all_options() -> [MstOptions; 4] {
    let sorts = [SortStrategy::Comparison, SortStrategy::Bucket { max_weight: 1 << 12 }];
    let orders = [CleanOrder::UThenV, CleanOrder::VThenU];
    [
        MstOptions { sort: sorts[0], clean_order: orders[0] },
        MstOptions { sort: sorts[0], clean_order: orders[1] },
        MstOptions { sort: sorts[1], clean_order: orders[0] },
        MstOptions { sort: sorts[1], clean_order: orders[1] },
    ]
}

fn work_ok(d: &DagCompression, s: &MstStats) -> bool {
    s.arcs_traversed <= d.arcs().len() as u64 && s.add_edge_calls <= d.size() as u64
}

fn mst_correctness() -> Check {
    let mut runs = 0;
    for (i, d) in fuzz_compressions().iter().enumerate() {
        let base = kruskal_baseline(&d.decompress_weighted().map_err(|e| e.to_string())?);
        for opts in all_options() {
            let (f, _) = kruskal_compressed_with(d, &opts).map_err(|e| e.to_string())?;
            ensure(f.total_weight == base.total_weight, || {
                format!("instance {i} {opts:?}: compressed {} vs baseline {}", f.total_weight, base.total_weight)
            })?;
            runs += 1;
        }
    }
    let d = read_compression(WEIGHTED_EXAMPLE).map_err(|e| e.to_string())?;
    let (f, _) = kruskal_compressed(&d).map_err(|e| e.to_string())?;
    let b = kruskal_baseline(&d.decompress_weighted().map_err(|e| e.to_string())?);
    ensure(f.total_weight == 7 && b.total_weight == 7, || {
        format!("worked example weights {} / {}, expected 7", f.total_weight, b.total_weight)
    })?;
    Ok(format!("{runs} fuzz runs agree exactly; worked example weight 7 on both pipelines"))
}

fn work_bound() -> Check {
    let mut runs = 0;
    for (i, d) in fuzz_compressions().iter().enumerate() {
        for opts in all_options() {
            let (_, s) = kruskal_compressed_with(d, &opts).map_err(|e| e.to_string())?;
            ensure(work_ok(d, &s), || format!("instance {i}: {s:?} with |A| = {}, |E| = {}", d.arcs().len(), d.edges().len()))?;
            runs += 1;
        }
    }
    let rook = rook_canonical_compression(&RookSpec::square(100)).map_err(|e| e.to_string())?.to_undirected();
    let w = random_weights(rook.edges().len(), 1000, 1);
    let d = rook.with_weights(w).map_err(|e| e.to_string())?;
    ensure(d.n_sinks() == 10_000 && d.size() == 20_200, || format!("rook g=100 has {} sinks, size {}", d.n_sinks(), d.size()))?;
    let t = Instant::now();
    let (f, s) = kruskal_compressed(&d).map_err(|e| e.to_string())?;
    let compressed = t.elapsed();
    ensure(work_ok(&d, &s), || format!("rook g=100: {s:?}"))?;
    let explicit = d.decompress_weighted().map_err(|e| e.to_string())?;
    let t = Instant::now();
    let b = kruskal_baseline(&explicit);
    let baseline = t.elapsed();
    ensure(b.total_weight == f.total_weight, || "rook g=100 weights differ".into())?;
    ensure(compressed < Duration::from_secs(1), || format!("compressed rook run took {compressed:?}"))?;
    Ok(format!(
        "{runs} fuzz runs within bounds; rook g=100: {} arcs traversed, {} add_edge calls <= 20200, compressed {:.1} ms, baseline {:.1} ms over {} edges",
        s.arcs_traversed,
        s.add_edge_calls,
        compressed.as_secs_f64() * 1e3,
        baseline.as_secs_f64() * 1e3,
        explicit.edge_count()
    ))
}

fn rook_construction() -> Check {
    for g in 1..=10u32 {
        let spec = RookSpec::square(g);
        let d = rook_canonical_compression(&spec).map_err(|e| e.to_string())?;
        let want = (2 * g * g + 2 * g) as usize;
        ensure(d.is_valid() && d.size() == want, || format!("g={g}: size {} expected {want}", d.size()))?;
        let expect = rook_graph(&spec).map_err(|e| e.to_string())?;
        ensure(d.decompress().map_err(|e| e.to_string())? == expect, || format!("g={g}: decompression differs"))?;
    }
    Ok("size 2g^2 + 2g and exact decompression for g = 1..10".into())
}

fn tree_gap() -> Check {
    let spec = RookSpec::square(64);
    let dag = rook_canonical_compression(&spec).map_err(|e| e.to_string())?;
    ensure(dag.size() == 8320, || format!("canonical size {}", dag.size()))?;
    let g = rook_graph(&spec).map_err(|e| e.to_string())?;
    let tree = tree_compress(&g, MergePolicy::Similarity);
    let d = tree.into_compression();
    let checked = TreeCompression::new(d.clone()).map_err(|e| format!("not a tree compression: {e}"))?;
    ensure(d.decompress().map_err(|e| e.to_string())? == g, || "tree compression does not decompress to R_64".into())?;
    let bound = 64 * 64 * 64 / 32 - 64 * 64;
    let e = d.edges().len();
    ensure(e >= bound, || format!("tree has {e} compression edges, below {bound}"))?;
    Ok(format!(
        "tree size {} with {e} compression edges >= {bound}; DAG size 8320; ratio {:.1}",
        checked.size(),
        checked.size() as f64 / 8320.0
    ))
}

fn worked_instance() -> SetCoverInstance {
    SetCoverInstance::new(7, vec![vec![1, 4, 5, 6], vec![2, 3, 5, 7]], 2).expect("valid instance")
}

fn closure_checks() -> Check {
    let family = close_standard_order(&worked_instance()).map_err(|e| e.to_string())?;
    let expect: Vec<Vec<u32>> = vec![
        vec![1],
        vec![2],
        vec![3],
        vec![4],
        vec![5],
        vec![6],
        vec![7],
        vec![1, 4],
        vec![2, 3],
        vec![1, 4, 5],
        vec![2, 3, 5],
        vec![1, 4, 5, 6],
        vec![2, 3, 5, 7],
    ];
    ensure(family.sets() == expect.as_slice(), || format!("closure {:?}", family.sets()))?;
    let d = canonical_closure_compression(&family).map_err(|e| e.to_string())?;
    ensure(d.is_valid(), || "canonical compression does not validate".into())?;
    let (g, _) = twinned_incidence(&family);
    ensure(d.decompress().map_err(|e| e.to_string())? == g, || "does not decompress to the twinned incidence graph".into())?;
    let stated_size = stated::closure_compression_size(13, 7);
    ensure(d.size() as i64 == stated_size, || {
        format!(
            "13-set family reproduced, validates and decompresses exactly, but size is {} (= 4m - 2n), not the stated {stated_size}",
            d.size()
        )
    })?;
    Ok("13-set family, size 34, validates and decompresses".into())
}

fn subsets(n: u32) -> Vec<Vec<u32>> {
    (1u32..(1 << n) - 1).map(|m| (1..=n).filter(|&e| m >> (e - 1) & 1 == 1).collect()).collect()
}

fn families(n: u32, max: usize) -> Vec<Vec<Vec<u32>>> {
    let all = subsets(n);
    (1u32..1 << all.len())
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..all.len()).filter(|&i| m >> i & 1 == 1).map(|i| all[i].clone()).collect())
        .collect()
}

fn set_cover_instances() -> Vec<SetCoverInstance> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for sets in families(n, 3) {
            if (1..=n).all(|e| sets.iter().any(|s| s.contains(&e))) {
                for k in 0..=3 {
                    out.push(SetCoverInstance::new(n, sets.clone(), k).expect("distinct sets"));
                }
            }
        }
    }
    out
}

fn oracle_budget() -> OracleBudget {
    OracleBudget { max_sinks: 5, max_nonsingleton_clusters: 26, size_cap: None }
}

fn reduction_soundness() -> Check {
    let budget = oracle_budget();
    let insts = set_cover_instances();
    let mut literal = Vec::new();
    for inst in &insts {
        let cover = setcover_exhaustive(inst).map_err(|e| e.to_string())?;
        let yes = cover.as_ref().is_some_and(|c| c.0 <= inst.k());
        let tag = || format!("{:?} k={}", inst.sets(), inst.k());
        let n = inst.universe_size() as usize;

        let r = reduce_mindag(inst).map_err(|e| e.to_string())?;
        let d = decide_mindag_shores(&r.graph, &r.shores, r.threshold, &budget).map_err(|e| e.to_string())?;
        ensure(d.conclusive && d.yes == yes, || format!("mindag {}: oracle {} set cover {yes}", tag(), d.yes))?;

        let a = reduce_add(inst).map_err(|e| e.to_string())?;
        let after = a.graph_with_new_edge();
        ensure(a.compression.is_valid() && a.compression.decompress().ok().as_ref() == Some(&a.graph), || {
            format!("add {}: D is not a compression of G", tag())
        })?;
        ensure(!a.graph.contains(a.new_edge.0, a.new_edge.1) && after.contains(a.new_edge.0, a.new_edge.1), || {
            format!("add {}: new edge misplaced", tag())
        })?;
        let table = a.compression.clusters().map_err(|e| e.to_string())?;
        ensure(
            a.compression.edges().iter().filter(|e| e.0 == a.s_bar).all(|e| !table.cluster(e.1).contains(&1)),
            || format!("add {}: s points at an infected cluster", tag()),
        )?;
        let da = decide_mindag_shores(&after, &a.shores, a.threshold, &budget).map_err(|e| e.to_string())?;
        ensure(da.conclusive && da.yes == yes, || format!("add {}: oracle {} set cover {yes}", tag(), da.yes))?;
        if stated::add_compression_size(a.m, n) != a.compression.size() as i64 {
            literal.push(format!(
                "add D size {} vs stated {}",
                a.compression.size(),
                stated::add_compression_size(a.m, n)
            ));
        }

        let del = reduce_delete(inst).map_err(|e| e.to_string())?;
        let after_del = del.graph_without_edge();
        ensure(del.graph.contains(del.removed_edge.0, del.removed_edge.1) && after_del.edge_count() + 1 == del.graph.edge_count(), || {
            format!("delete {}: removed edge misplaced", tag())
        })?;
        let dd = decide_mindag_shores(&after_del, &del.shores, del.threshold, &budget).map_err(|e| e.to_string())?;
        ensure(dd.conclusive && dd.yes == yes, || format!("delete {}: oracle {} set cover {yes}", tag(), dd.yes))?;
        if stated::closure_compression_size(del.m, n + 1) != del.compression.size() as i64 {
            literal.push(format!(
                "delete D size {} vs stated {}",
                del.compression.size(),
                stated::closure_compression_size(del.m, n + 1)
            ));
        }

        if let Some((c, chosen)) = cover.filter(|c| c.0 <= inst.k()) {
            let w = a.yes_witness(&chosen).map_err(|e| e.to_string())?;
            ensure(w.is_valid() && w.decompress().ok().as_ref() == Some(&after) && w.size() <= a.threshold, || {
                format!("add {}: witness for cover of size {c} fails", tag())
            })?;
            let w = del.yes_witness(&chosen).map_err(|e| e.to_string())?;
            ensure(w.is_valid() && w.decompress().ok().as_ref() == Some(&after_del) && w.size() <= del.threshold, || {
                format!("delete {}: witness for cover of size {c} fails", tag())
            })?;
        }
    }
    let worked = reduce_mindag(&worked_instance()).map_err(|e| e.to_string())?;
    let stated_k = stated::mindag_threshold(worked.m, 7, 2);
    let summary = format!(
        "{} instances: mindag, add and delete answers agree with set cover under thresholds 4m-2n+2+k, k+4m-2(n+1), k+4m-2(n+1)-2; witnesses valid",
        insts.len()
    );
    ensure(literal.is_empty() && worked.threshold as i64 == stated_k, || {
        format!(
            "{summary}; stated formulas do not match the constructions ({} mismatches, e.g. {}; worked k' {} vs stated {stated_k})",
            literal.len(),
            literal.first().cloned().unwrap_or_default(),
            worked.threshold
        )
    })?;
    Ok(summary)
}

fn sandwich() -> Check {
    let budget = oracle_budget();
    let mut checked = 0;
    for n in 2..=3u32 {
        let all = subsets(n);
        for sets in families(n, 3) {
            for r in &all {
                let coverable = r.iter().all(|e| sets.iter().any(|s| s.contains(e)));
                if !coverable || sets.iter().any(|s| r.iter().all(|e| s.contains(e))) {
                    continue;
                }
                let rep = check_sandwich(n, &sets, r, &budget).map_err(|e| e.to_string())?;
                ensure(rep.holds(), || format!("{sets:?} + {r:?}: {rep:?}"))?;
                checked += 1;
            }
        }
    }
    ensure(checked >= 20, || format!("only {checked} families"))?;
    Ok(format!("{checked} families, no violation"))
}

fn random_family(r: &mut ChaCha8Rng) -> (u32, Vec<Vec<u32>>) {
    let n = r.gen_range(2..=6u32);
    let m = r.gen_range(1..=5usize.min((1 << n) - 1));
    let mut sets: Vec<Vec<u32>> = Vec::new();
    while sets.len() < m {
        let s: Vec<u32> = (1..=n).filter(|_| r.gen_bool(0.5)).collect();
        if !s.is_empty() && !sets.contains(&s) {
            sets.push(s);
        }
    }
    (n, sets)
}

fn clusters_in_shore2(d: &DagCompression, shores: &ShorePartition) -> bool {
    let t = d.clusters().expect("valid");
    d.cluster_vertices().all(|v| t.cluster(v).iter().all(|&x| shores.in_shore2(x)))
}

fn normalization() -> Check {
    let mut r = ChaCha8Rng::seed_from_u64(2024);
    let mut shrunk = [0usize; 2];
    for seed in 0..100 {
        let (n, sets) = random_family(&mut r);
        let (g, shores) = twinned_incidence_of(n, &sets).map_err(|e| e.to_string())?;
        let pairs = twin_pairs(n, sets.len());
        let d = random_compression_of(&g, &RandomCoverParams { n_clusters: 8, max_children: 3, keep: 0.4, seed });
        let t = twin_normalize(&d, &pairs).map_err(|e| e.to_string())?;
        let s = shore_normalize(&t, &shores).map_err(|e| e.to_string())?;
        let e = twin_single_edge(&s, &shores, &pairs).map_err(|e| e.to_string())?;
        for (name, x) in [("twins", &t), ("shore", &s), ("single-edge", &e)] {
            ensure(x.decompress().ok().as_ref() == Some(&g), || format!("instance {seed}: {name} pass changes the graph"))?;
        }
        ensure(t.size() <= d.size() && s.size() <= t.size(), || format!("instance {seed}: size grew"))?;
        ensure(e.size() == s.size(), || format!("instance {seed}: single-edge pass changed size"))?;
        let deg = |v: Vertex| e.edges().iter().filter(|x| x.0 == v || x.1 == v).count();
        ensure(pairs.iter().all(|&(a, b)| deg(a) <= 1 && deg(b) <= 1), || format!("instance {seed}: twin with two edges"))?;
        ensure(clusters_in_shore2(&e, &shores), || format!("instance {seed}: cluster outside shore 2"))?;
        shrunk[0] += usize::from(t.size() < d.size());
        shrunk[1] += usize::from(s.size() < t.size());
    }
    Ok(format!(
        "100 instances exact; twin pass shrank {}, shore pass shrank {}; single-edge size-preserving",
        shrunk[0], shrunk[1]
    ))
}

fn all_graphs(directed: bool, n: Vertex) -> impl Iterator<Item = Graph> {
    let pairs: Vec<_> = (1..=n).flat_map(|u| (1..=n).map(move |v| (u, v))).filter(|&(u, v)| directed || u <= v).collect();
    (0..1u32 << pairs.len()).map(move |mask| {
        let e = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
        Graph::from_edges(directed, n, e).expect("in range")
    })
}

fn oracle_consistency() -> Check {
    let b = OracleBudget::default();
    let size = |g: &Graph| min_dag_size(g, &b).map(|r| r.size).map_err(|e| e.to_string());
    let cases = [
        ("edgeless", Graph::empty(true, 3), 0),
        ("single edge", Graph::from_edges(true, 2, [(1, 2)]).unwrap(), 1),
        ("K_{2,2}", Graph::from_edges(true, 4, [(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap(), 4),
        ("undirected K_{2,2}", Graph::from_edges(false, 4, [(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap(), 4),
    ];
    for (name, g, want) in &cases {
        let got = size(g)?;
        ensure(got == *want, || format!("{name}: {got}, expected {want}"))?;
    }
    let mut graphs = 0;
    for directed in [true, false] {
        for n in 0..=3 {
            let brute = UnrestrictedOracle::new(n as usize, 4).map_err(|e| e.to_string())?;
            for g in all_graphs(directed, n) {
                let r = min_dag_size(&g, &b).map_err(|e| e.to_string())?;
                let u = brute.min_size(&g).map_err(|e| e.to_string())?;
                ensure(r.exhaustive && r.size == u, || format!("{g:?}: restricted {} vs unrestricted {u}", r.size))?;
                graphs += 1;
            }
        }
    }
    Ok(format!("edgeless 0, single edge 1, K_2,2 4; restricted equals unrestricted on {graphs} graphs"))
}

fn main() {
    let mut report = Report { failed: 0 };
    let secs = Duration::from_secs;
    report.run(1, "MST correctness", secs(5), mst_correctness);
    report.run(2, "MST work bound", secs(5), work_bound);
    report.run(3, "rook construction", secs(10), rook_construction);
    report.run(4, "DAG versus tree gap", secs(60), tree_gap);
    report.run(5, "closure and size formula", secs(1), closure_checks);
    report.run(6, "reduction soundness", secs(300), reduction_soundness);
    report.run(7, "cover-number sandwich", secs(300), sandwich);
    report.run(8, "normalization passes", secs(30), normalization);
    report.run(9, "oracle self-consistency", secs(120), oracle_consistency);
    println!("{} of 9 criteria failed", report.failed);
    if report.failed > 0 {
        std::process::exit(1);
    }
}
