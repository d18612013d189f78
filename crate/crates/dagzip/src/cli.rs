use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicUsize;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use dagzip_core::generators::{
    random_compression, random_graph, random_weights, rook_canonical_compression, rook_graph, RandomCompressionParams,
    RookSpec,
};
use dagzip_core::heuristics::{dag_compress_greedy, tree_compress, MergePolicy};
use dagzip_core::mst::{kruskal_compressed_with, CleanOrder, MstOptions, SortStrategy};
use dagzip_core::normalize::{shore_normalize, twin_normalize, twin_single_edge};
use dagzip_core::oracle::{OracleBudget, OracleSearch};
use dagzip_core::reductions::{reduce_add, reduce_delete, reduce_mindag, stated};
use dagzip_core::{kruskal_baseline, CompressionError, DagCompression, ShorePartition, Vertex, WeightedGraph};

use crate::bench::{self, BenchFamily};
use crate::format::{self, GraphFile};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;

/// A broken guarantee (as opposed to bad input); exits with code 3.
#[derive(Debug)]
pub struct ContractViolation(pub String);

impl fmt::Display for ContractViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ContractViolation {}

#[derive(Parser, Debug)]
#[command(name = "dagzip", version, about = "Build, inspect and run algorithms on DAG compressions of graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the structure of a compression file and list any violations.
    Validate { file: PathBuf },
    /// Expand a compression into its graph.
    Decompress {
        file: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate graphs and compressions.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Minimum spanning forest of a weighted undirected compression.
    Mst {
        file: PathBuf,
        /// Decompress first and run Kruskal on the explicit graph.
        #[arg(long, conflicts_with = "check")]
        baseline: bool,
        /// Run both pipelines and fail with exit code 3 if the weights differ.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = SortArg::Comparison)]
        sort: SortArg,
        /// Largest weight the bucket sort handles before falling back.
        #[arg(long, default_value_t = 1 << 16)]
        bucket_max: u64,
        #[arg(long, value_enum, default_value_t = OrderArg::Uv)]
        clean_order: OrderArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Time compressed against uncompressed Kruskal and write CSV.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchFamily::RandomCompression)]
        family: BenchFamily,
        /// Comma-separated sizes: sink counts, or g for rook graphs.
        #[arg(long, default_value = "", value_parser = parse_sizes)]
        sizes: Sizes,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Repetitions per record; the median time is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, env = "DAGZIP_SEED", default_value_t = 0)]
        seed: u64,
        /// Worker threads for independent trials.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a hardness-reduction instance from a set-cover file.
    Reduce {
        #[arg(value_enum)]
        problem: ReduceArg,
        file: PathBuf,
        /// Directory for the output files; created if missing.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Apply one normalization pass to a compression of a bipartite graph.
    Normalize {
        #[arg(long, value_enum)]
        pass: PassArg,
        /// Shore file; required for `shore` and `single-edge`.
        #[arg(long)]
        shores: Option<PathBuf>,
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum compression size of a tiny graph.
    Oracle {
        file: PathBuf,
        /// Only decide whether a compression of size at most K exists.
        #[arg(long)]
        k: Option<usize>,
        /// Largest number of vertices searched over (at most 5).
        #[arg(long, default_value_t = 4)]
        max_sinks: u32,
        /// Largest number of non-singleton clusters tried.
        #[arg(long, default_value_t = 6)]
        max_clusters: usize,
        /// Restrict to a directed bipartite graph with these shores; the
        /// sink limit then applies to shore 2.
        #[arg(long)]
        shores: Option<PathBuf>,
        /// Worker threads for the family search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Where to write the witness compression.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Compress a graph with one of the heuristics.
    Compress {
        #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = PolicyArg::Similarity)]
        policy: PolicyArg,
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Tree against DAG compression sizes on square rook graphs, as CSV.
    Gap {
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        g: Vec<u32>,
        #[arg(long, value_enum, default_value_t = PolicyArg::Similarity)]
        policy: PolicyArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// Rook graph on the d-dimensional grid with side g.
    Rook {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Leave out the self-pairs.
        #[arg(long)]
        no_loops: bool,
        /// Emit the canonical compression instead of the graph.
        #[arg(long)]
        compress: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Random graph where each pair is an edge with probability p.
    Random {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, env = "DAGZIP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        undirected: bool,
        #[arg(long)]
        loops: bool,
        /// Attach random weights in 1..=max-weight (undirected only).
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 100)]
        max_weight: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Random valid weighted undirected compression.
    RandomCompression {
        #[arg(long)]
        sinks: u32,
        #[arg(long)]
        clusters: u32,
        /// Probability of an arc from a cluster to each earlier vertex.
        #[arg(long, default_value_t = 0.2)]
        arc_density: f64,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 100)]
        max_weight: u64,
        #[arg(long, env = "DAGZIP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SortArg {
    Comparison,
    Bucket,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Uv,
    Vu,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReduceArg {
    Mindag,
    Add,
    Delete,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PassArg {
    Twins,
    Shore,
    SingleEdge,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Tree,
    Greedy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    Similarity,
    Balanced,
}

impl From<PolicyArg> for MergePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Similarity => MergePolicy::Similarity,
            PolicyArg::Balanced => MergePolicy::Balanced,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sizes(pub Vec<u32>);

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Sizes)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_compression(path: &Path) -> Result<DagCompression> {
    format::read_compression(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_graph(path: &Path) -> Result<GraphFile> {
    format::read_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_shores(path: &Path) -> Result<ShorePartition> {
    format::read_shores(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => stdout.write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn emit_csv(out: &Option<PathBuf>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> csv::Result<()>) -> Result<()> {
    match out {
        Some(p) => {
            let mut file = std::fs::File::create(p).with_context(|| format!("writing {}", p.display()))?;
            f(&mut file)?;
        }
        None => f(stdout)?,
    }
    Ok(())
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            if e.downcast_ref::<ContractViolation>().is_some() {
                EXIT_CONTRACT
            } else if let Some(b) = e.downcast_ref::<bench::BenchError>() {
                if b.is_contract() {
                    EXIT_CONTRACT
                } else {
                    EXIT_INPUT
                }
            } else {
                EXIT_INPUT
            }
        }
    }
}

pub fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Validate { file } => {
            let d = read_compression(&file)?;
            let v = d.validate();
            if !v.is_empty() {
                return Err(CompressionError::Invalid(v).into());
            }
            writeln!(
                stdout,
                "valid {} compression: {} sinks, {} clusters, {} arcs, {} compression edges, size {}",
                if d.is_directed() { "directed" } else { "undirected" },
                d.n_sinks(),
                d.n_clusters(),
                d.arcs().len(),
                d.edges().len(),
                d.size()
            )?;
            Ok(())
        }
        Command::Decompress { file, out } => {
            let d = read_compression(&file)?;
            let text = if d.is_weighted() {
                format::write_weighted_graph(&d.decompress_weighted()?)
            } else {
                format::write_graph(&d.decompress()?)
            };
            emit(&out, &text, stdout)
        }
        Command::Generate { what } => generate(what, stdout),
        Command::Mst { file, baseline, check, sort, bucket_max, clean_order, out } => {
            let d = read_compression(&file)?;
            let opts = MstOptions {
                sort: match sort {
                    SortArg::Comparison => SortStrategy::Comparison,
                    SortArg::Bucket => SortStrategy::Bucket { max_weight: bucket_max },
                },
                clean_order: match clean_order {
                    OrderArg::Uv => CleanOrder::UThenV,
                    OrderArg::Vu => CleanOrder::VThenU,
                },
            };
            let forest = if baseline {
                kruskal_baseline(&explicit_weighted(&d)?)
            } else {
                let (f, _) = kruskal_compressed_with(&d, &opts)?;
                if check {
                    let b = kruskal_baseline(&explicit_weighted(&d)?);
                    if b.total_weight != f.total_weight {
                        return Err(ContractViolation(format!(
                            "compressed weight {} differs from baseline weight {}",
                            f.total_weight, b.total_weight
                        ))
                        .into());
                    }
                }
                f
            };
            emit(&out, &format::write_mst(&forest), stdout)
        }
        Command::Bench { family, sizes, trials, reps, seed, jobs, out } => {
            let records = bench::run_bench(family, &sizes.0, trials, seed, reps, jobs)?;
            emit_csv(&out, stdout, |w| bench::write_bench_csv(w, &records))
        }
        Command::Reduce { problem, file, out_dir } => reduce(problem, &file, &out_dir, stdout),
        Command::Normalize { pass, shores, file, out } => {
            let d = read_compression(&file)?;
            let shores = shores.as_deref().map(read_shores).transpose()?;
            let need_shores = || shores.as_ref().context("this pass needs --shores");
            let result = match pass {
                PassArg::Twins => twin_normalize(&d, &d.decompress()?.twins())?,
                PassArg::Shore => shore_normalize(&d, need_shores()?)?,
                PassArg::SingleEdge => {
                    let sh = need_shores()?;
                    let pairs: Vec<_> =
                        d.decompress()?.twins().into_iter().filter(|&(a, b)| sh.in_shore1(a) && sh.in_shore1(b)).collect();
                    twin_single_edge(&d, sh, &pairs)?
                }
            };
            emit(&out, &format::write_compression(&result), stdout)
        }
        Command::Oracle { file, k, max_sinks, max_clusters, shores, jobs, witness } => {
            let g = read_graph(&file)?.into_graph();
            let budget = OracleBudget { max_sinks, max_nonsingleton_clusters: max_clusters, size_cap: k };
            let shores = shores.as_deref().map(read_shores).transpose()?;
            let search = match &shores {
                Some(sh) => OracleSearch::with_shores(&g, sh, &budget)?,
                None => OracleSearch::new(&g, &budget)?,
            };
            let shared = AtomicUsize::new(search.initial_bound());
            let parts = bench::parallel_map(jobs.max(1), jobs.max(1), |i| search.run_shard(i, jobs.max(1), &shared));
            let r = search.combine(&parts);
            if r.witness.decompress()? != g || r.witness.size() != r.size {
                return Err(ContractViolation("oracle witness does not reproduce the graph".into()).into());
            }
            match k {
                Some(k) => {
                    let yes = r.size <= k;
                    writeln!(stdout, "{}", if yes { "yes" } else { "no" })?;
                }
                None => {
                    writeln!(stdout, "{}", r.size)?;
                    if !r.exhaustive {
                        writeln!(stdout, "# families beyond --max-clusters were not searched")?;
                    }
                }
            }
            if let Some(p) = witness {
                std::fs::write(&p, format::write_compression(&r.witness))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(())
        }
        Command::Compress { strategy, policy, file, out } => {
            let g = read_graph(&file)?.into_graph();
            let d = match strategy {
                StrategyArg::Tree => tree_compress(&g, policy.into()).into_compression(),
                StrategyArg::Greedy => dag_compress_greedy(&g),
            };
            emit(&out, &format::write_compression(&d), stdout)
        }
        Command::Gap { g, policy, out } => {
            let rows = bench::run_gap(&g, policy.into())?;
            emit_csv(&out, stdout, |w| bench::write_gap_csv(w, &rows))
        }
    }
}

fn explicit_weighted(d: &DagCompression) -> Result<WeightedGraph> {
    Ok(d.decompress_weighted()?)
}

fn generate(what: Generate, stdout: &mut dyn Write) -> Result<()> {
    match what {
        Generate::Rook { g, d, no_loops, compress, out } => {
            let spec = RookSpec { g, d, include_loops: !no_loops };
            let text = if compress {
                format::write_compression(&rook_canonical_compression(&spec)?)
            } else {
                format::write_graph(&rook_graph(&spec)?)
            };
            emit(&out, &text, stdout)
        }
        Generate::Random { n, p, seed, undirected, loops, weighted, max_weight, out } => {
            if !(0.0..=1.0).contains(&p) {
                bail!("--p must lie in [0, 1]");
            }
            let g = random_graph(n, p, seed, !undirected, loops);
            let text = if weighted {
                if !undirected {
                    bail!("weighted graphs must be undirected; add --undirected");
                }
                let w = random_weights(g.edge_count(), max_weight, seed);
                format::write_weighted_graph(&WeightedGraph::new(g, w)?)
            } else {
                format::write_graph(&g)
            };
            emit(&out, &text, stdout)
        }
        Generate::RandomCompression { sinks, clusters, arc_density, edges, max_weight, seed, out } => {
            if !(0.0..=1.0).contains(&arc_density) {
                bail!("--arc-density must lie in [0, 1]");
            }
            let p = RandomCompressionParams { n_sinks: sinks, n_clusters: clusters, arc_density, edge_count: edges, max_weight, seed };
            emit(&out, &format::write_compression(&random_compression(&p)), stdout)
        }
    }
}

fn write_meta(dir: &Path, pairs: &[(&str, String)]) -> Result<()> {
    let mut s = String::new();
    for (k, v) in pairs {
        s.push_str(k);
        s.push(' ');
        s.push_str(v);
        s.push('\n');
    }
    std::fs::write(dir.join("meta.txt"), s).context("writing meta.txt")
}

fn write_in(dir: &Path, name: &str, text: &str) -> Result<()> {
    let p = dir.join(name);
    std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
}

fn edge_text((u, v): (Vertex, Vertex)) -> String {
    format!("{u} {v}")
}

fn reduce(problem: ReduceArg, file: &Path, dir: &Path, stdout: &mut dyn Write) -> Result<()> {
    let inst = format::read_setcover(&read(file)?).with_context(|| format!("parsing {}", file.display()))?;
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let (n, k) = (inst.universe_size(), inst.k());
    match problem {
        ReduceArg::Mindag => {
            let r = reduce_mindag(&inst)?;
            write_in(dir, "graph.txt", &format::write_graph(&r.graph))?;
            write_in(dir, "shores.txt", &format::write_shores(&r.shores))?;
            write_meta(
                dir,
                &[
                    ("problem", "mindag".into()),
                    ("closure_sets", r.m.to_string()),
                    ("universe", n.to_string()),
                    ("k", k.to_string()),
                    ("threshold", r.threshold.to_string()),
                    ("threshold_without_correction", stated::mindag_threshold(r.m, n as usize, k).to_string()),
                ],
            )?;
            writeln!(stdout, "threshold {}", r.threshold)?;
        }
        ReduceArg::Add => {
            let r = reduce_add(&inst)?;
            write_in(dir, "graph.txt", &format::write_graph(&r.graph))?;
            write_in(dir, "graph_after.txt", &format::write_graph(&r.graph_with_new_edge()))?;
            write_in(dir, "compression.dagc", &format::write_compression(&r.compression))?;
            write_in(dir, "shores.txt", &format::write_shores(&r.shores))?;
            write_meta(
                dir,
                &[
                    ("problem", "add".into()),
                    ("closure_sets", r.m.to_string()),
                    ("universe", (n + 1).to_string()),
                    ("k", k.to_string()),
                    ("compression_size", r.compression.size().to_string()),
                    ("new_edge", edge_text(r.new_edge)),
                    ("threshold", r.threshold.to_string()),
                    ("threshold_without_correction", stated::add_threshold(r.m, n as usize, k).to_string()),
                ],
            )?;
            writeln!(stdout, "threshold {}", r.threshold)?;
        }
        ReduceArg::Delete => {
            let r = reduce_delete(&inst)?;
            write_in(dir, "graph.txt", &format::write_graph(&r.graph))?;
            write_in(dir, "graph_after.txt", &format::write_graph(&r.graph_without_edge()))?;
            write_in(dir, "compression.dagc", &format::write_compression(&r.compression))?;
            write_in(dir, "shores.txt", &format::write_shores(&r.shores))?;
            write_meta(
                dir,
                &[
                    ("problem", "delete".into()),
                    ("closure_sets", r.m.to_string()),
                    ("universe", (n + 1).to_string()),
                    ("k", k.to_string()),
                    ("compression_size", r.compression.size().to_string()),
                    ("removed_edge", edge_text(r.removed_edge)),
                    ("threshold", r.threshold.to_string()),
                    ("threshold_without_correction", stated::delete_threshold(r.m, n as usize, k).to_string()),
                ],
            )?;
            writeln!(stdout, "threshold {}", r.threshold)?;
        }
    }
    Ok(())
}

/// Entry point used by the binary.
pub fn main_with(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
