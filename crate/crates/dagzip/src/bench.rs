//! Timing harness: compressed Kruskal against Kruskal on the decompressed
//! graph, plus the tree-versus-DAG table for rook graphs.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use dagzip_core::generators::{
    random_compression, random_weights, rook_canonical_compression, GeneratorError, RandomCompressionParams, RookSpec,
};
use dagzip_core::heuristics::{gap_row, GapRow, MergePolicy};
use dagzip_core::{kruskal_baseline, kruskal_compressed, CompressionError, DagCompression};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchFamily {
    /// Random layered weighted compressions; size is the sink count.
    RandomCompression,
    /// Canonical rook compression with random weights; size is `g`.
    Rook,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub family: &'static str,
    pub params: String,
    pub sinks: u32,
    pub original_edges: usize,
    pub arcs: usize,
    pub cedges: usize,
    pub t_compressed_ms: f64,
    pub t_baseline_ms: f64,
    pub weight: u128,
    pub add_edge_calls: u64,
}

pub const BENCH_HEADER: [&str; 10] = [
    "family",
    "params",
    "sinks",
    "original_edges",
    "arcs",
    "cedges",
    "t_compressed_ms",
    "t_baseline_ms",
    "weight",
    "add_edge_calls",
];

pub const GAP_HEADER: [&str; 7] = ["g", "n", "dag_size", "tree_size", "tree_cedges", "ratio", "seconds"];

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Compression(#[from] CompressionError),
    #[error("{params}: compressed weight {compressed} but baseline weight {baseline}")]
    WeightMismatch { params: String, compressed: u128, baseline: u128 },
    #[error("{params}: {calls} add_edge calls exceed |A| + |E| = {bound}")]
    WorkBound { params: String, calls: u64, bound: usize },
}

impl BenchError {
    /// Whether this is a broken guarantee rather than bad input.
    pub fn is_contract(&self) -> bool {
        matches!(self, BenchError::WeightMismatch { .. } | BenchError::WorkBound { .. })
    }
}

pub fn bench_instance(family: BenchFamily, size: u32, seed: u64) -> Result<(String, DagCompression), BenchError> {
    match family {
        BenchFamily::RandomCompression => {
            let p = RandomCompressionParams {
                n_sinks: size.max(1),
                n_clusters: (size / 8).max(1),
                arc_density: (6.0 / size.max(1) as f64).min(1.0),
                edge_count: 2 * size as usize,
                max_weight: 1000,
                seed,
            };
            Ok((format!("sinks={size};seed={seed}"), random_compression(&p)))
        }
        BenchFamily::Rook => {
            let d = rook_canonical_compression(&RookSpec::square(size))?.to_undirected();
            let w = random_weights(d.edges().len(), 1000, seed);
            Ok((format!("g={size};seed={seed}"), d.with_weights(w)?))
        }
    }
}

fn median(mut xs: Vec<Duration>) -> f64 {
    xs.sort();
    let n = xs.len();
    let mid = if n % 2 == 1 { xs[n / 2] } else { (xs[n / 2 - 1] + xs[n / 2]) / 2 };
    mid.as_secs_f64() * 1e3
}

/// One record: both pipelines run `reps` times, medians reported. The
/// baseline is timed on the already decompressed graph.
pub fn bench_case(family: BenchFamily, size: u32, seed: u64, reps: usize) -> Result<BenchRecord, BenchError> {
    let (params, d) = bench_instance(family, size, seed)?;
    let explicit = d.decompress_weighted()?;
    let reps = reps.max(1);
    let mut tc = Vec::with_capacity(reps);
    let mut tb = Vec::with_capacity(reps);
    let mut result = None;
    for _ in 0..reps {
        let t = Instant::now();
        let r = kruskal_compressed(&d)?;
        tc.push(t.elapsed());
        let t = Instant::now();
        let b = kruskal_baseline(&explicit);
        tb.push(t.elapsed());
        result = Some((r, b));
    }
    let ((forest, stats), base) = result.expect("at least one repetition");
    if forest.total_weight != base.total_weight {
        return Err(BenchError::WeightMismatch { params, compressed: forest.total_weight, baseline: base.total_weight });
    }
    let bound = d.size();
    if stats.add_edge_calls > bound as u64 || stats.arcs_traversed > d.arcs().len() as u64 {
        return Err(BenchError::WorkBound { params, calls: stats.add_edge_calls, bound });
    }
    Ok(BenchRecord {
        family: match family {
            BenchFamily::RandomCompression => "random-compression",
            BenchFamily::Rook => "rook",
        },
        params,
        sinks: d.n_sinks(),
        original_edges: explicit.edge_count(),
        arcs: d.arcs().len(),
        cedges: d.edges().len(),
        t_compressed_ms: median(tc),
        t_baseline_ms: median(tb),
        weight: forest.total_weight,
        add_edge_calls: stats.add_edge_calls,
    })
}

/// Runs `f` over `0..count` on up to `jobs` threads, keeping input order.
pub fn parallel_map<T: Send, F: Fn(usize) -> T + Sync>(count: usize, jobs: usize, f: F) -> Vec<T> {
    let jobs = jobs.clamp(1, count.max(1));
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<T>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let r = f(i);
                out.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("no worker panicked").into_iter().map(|x| x.expect("every index ran")).collect()
}

/// One record per `(size, trial)`, trial `t` using seed `seed + t`.
pub fn run_bench(
    family: BenchFamily,
    sizes: &[u32],
    trials: usize,
    seed: u64,
    reps: usize,
    jobs: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    let cases: Vec<(u32, u64)> =
        sizes.iter().flat_map(|&s| (0..trials as u64).map(move |t| (s, seed.wrapping_add(t)))).collect();
    parallel_map(cases.len(), jobs, |i| bench_case(family, cases[i].0, cases[i].1, reps)).into_iter().collect()
}

pub fn write_bench_csv<W: std::io::Write>(out: W, records: &[BenchRecord]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(BENCH_HEADER)?;
    for r in records {
        w.write_record([
            r.family.to_string(),
            r.params.clone(),
            r.sinks.to_string(),
            r.original_edges.to_string(),
            r.arcs.to_string(),
            r.cedges.to_string(),
            format!("{:.3}", r.t_compressed_ms),
            format!("{:.3}", r.t_baseline_ms),
            r.weight.to_string(),
            r.add_edge_calls.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_gap(gs: &[u32], policy: MergePolicy) -> Result<Vec<(GapRow, f64)>, GeneratorError> {
    gs.iter()
        .map(|&g| {
            let t = Instant::now();
            let row = gap_row(g, policy)?;
            Ok((row, t.elapsed().as_secs_f64()))
        })
        .collect()
}

pub fn write_gap_csv<W: std::io::Write>(out: W, rows: &[(GapRow, f64)]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(GAP_HEADER)?;
    for (r, secs) in rows {
        w.write_record([
            r.g.to_string(),
            r.n.to_string(),
            r.dag_size.to_string(),
            r.tree_size.to_string(),
            r.tree_cedges.to_string(),
            format!("{:.4}", r.ratio),
            format!("{secs:.3}"),
        ])?;
    }
    w.flush()?;
    Ok(())
}
