use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dagzip::format::{read_compression, read_graph};
use dagzip_core::generators::{rook_graph, RookSpec};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn dagzip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dagzip")).args(args).env_remove("DAGZIP_SEED").output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = dagzip(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    dagzip(args).status.code().expect("exited normally")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn weighted_example_checks_out() {
    let out = ok(&["mst", "--check", p(&fixture("weighted_mst_example.dagc"))]);
    assert!(out.starts_with("mst 7 6 7\n"), "{out}");
    let base = ok(&["mst", "--baseline", p(&fixture("weighted_mst_example.dagc"))]);
    assert_eq!(base.lines().next(), Some("mst 7 6 7"));
    let bucket = ok(&["mst", "--sort", "bucket", "--clean-order", "vu", p(&fixture("weighted_mst_example.dagc"))]);
    assert_eq!(bucket.lines().next(), Some("mst 7 6 7"));
}

#[test]
fn validate_reports_violations() {
    assert!(ok(&["validate", p(&fixture("mixed_clusters.dagc"))]).contains("size 17"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dagc");
    std::fs::write(&bad, "dagc directed\nsinks 2\nclusters 2\narcs 2\na 3 4\na 4 3\ncedges 0\n").unwrap();
    assert_eq!(code(&["validate", p(&bad)]), 2);
    let msg = String::from_utf8(dagzip(&["validate", p(&bad)]).stderr).unwrap();
    assert!(msg.contains("cycle"), "{msg}");
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["validate", "/nonexistent/file.dagc"]), 2);
    assert_eq!(code(&["generate", "random", "--n", "3", "--p", "1.5"]), 2);
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "graph directed 2 1\ne 1 3\n").unwrap();
    assert_eq!(code(&["oracle", p(&junk)]), 2);
    assert_eq!(code(&["compress", p(&junk)]), 2);
    assert_eq!(code(&["mst", p(&fixture("mixed_clusters.dagc"))]), 2);
    assert_eq!(code(&["normalize", "--pass", "shore", p(&fixture("mixed_clusters.dagc"))]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn mst_weight_mismatch_is_not_possible_on_valid_input() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        let f = dir.path().join(format!("rc{seed}.dagc"));
        let s = seed.to_string();
        ok(&[
            "generate", "random-compression", "--sinks", "30", "--clusters", "8", "--edges", "40", "--seed", &s, "-o",
            p(&f),
        ]);
        ok(&["mst", "--check", p(&f)]);
    }
}

#[test]
fn rook_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    for g in 1..=10u32 {
        let gs = g.to_string();
        let graph = dir.path().join(format!("rook{g}.txt"));
        let canon = dir.path().join(format!("rook{g}.dagc"));
        ok(&["generate", "rook", "--g", &gs, "-o", p(&graph)]);
        ok(&["generate", "rook", "--g", &gs, "--compress", "-o", p(&canon)]);
        ok(&["validate", p(&canon)]);
        let expanded = ok(&["decompress", p(&canon)]);
        assert_eq!(expanded, std::fs::read_to_string(&graph).unwrap());
        let expected = rook_graph(&RookSpec::square(g)).unwrap();
        assert_eq!(read_graph(&expanded).unwrap().into_graph(), expected);
        for strategy in ["tree", "greedy"] {
            let c = dir.path().join(format!("rook{g}_{strategy}.dagc"));
            ok(&["compress", "--strategy", strategy, p(&graph), "-o", p(&c)]);
            ok(&["validate", p(&c)]);
            assert_eq!(ok(&["decompress", p(&c)]), expanded);
        }
        let d = read_compression(&std::fs::read_to_string(&canon).unwrap()).unwrap();
        assert_eq!(d.size(), (2 * g * (g + 1)) as usize);
    }
}

#[test]
fn oracle_on_small_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let k22 = dir.path().join("k22.txt");
    std::fs::write(&k22, "graph directed 4 4\ne 1 3\ne 1 4\ne 2 3\ne 2 4\n").unwrap();
    assert_eq!(ok(&["oracle", p(&k22)]).lines().next(), Some("4"));
    assert_eq!(ok(&["oracle", p(&k22), "--k", "3"]).trim(), "no");
    assert_eq!(ok(&["oracle", p(&k22), "--k", "4", "--jobs", "3"]).trim(), "yes");
    let single = dir.path().join("one.txt");
    std::fs::write(&single, "graph directed 2 1\ne 1 2\n").unwrap();
    assert_eq!(ok(&["oracle", p(&single)]).trim(), "1");
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "graph directed 3 0\n").unwrap();
    assert_eq!(ok(&["oracle", p(&empty)]).trim(), "0");
    let clique = dir.path().join("clique.txt");
    ok(&["generate", "random", "--n", "4", "--p", "1", "--loops", "-o", p(&clique)]);
    let w = dir.path().join("w.dagc");
    assert_eq!(ok(&["oracle", p(&clique), "--witness", p(&w)]).lines().next(), Some("5"));
    assert_eq!(ok(&["decompress", p(&w)]), std::fs::read_to_string(&clique).unwrap());
    assert_eq!(code(&["oracle", p(&clique), "--max-sinks", "9"]), 2);
}

#[test]
fn reductions_write_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture("two_sets_seven_elements.setcover");
    for (problem, files) in [
        ("mindag", &["graph.txt", "shores.txt", "meta.txt"][..]),
        ("add", &["graph.txt", "graph_after.txt", "compression.dagc", "shores.txt", "meta.txt"][..]),
        ("delete", &["graph.txt", "graph_after.txt", "compression.dagc", "shores.txt", "meta.txt"][..]),
    ] {
        let out = dir.path().join(problem);
        ok(&["reduce", problem, p(&sc), "--out-dir", p(&out)]);
        for f in files {
            assert!(out.join(f).exists(), "{problem}: missing {f}");
        }
        let meta = std::fs::read_to_string(out.join("meta.txt")).unwrap();
        assert!(meta.lines().any(|l| l.starts_with("threshold ")));
        if problem != "mindag" {
            let c = out.join("compression.dagc");
            ok(&["validate", p(&c)]);
            assert_eq!(ok(&["decompress", p(&c)]), std::fs::read_to_string(out.join("graph.txt")).unwrap());
        }
    }
    let meta = std::fs::read_to_string(dir.path().join("mindag/meta.txt")).unwrap();
    assert!(meta.contains("closure_sets 13\n") && meta.contains("threshold 42\n"), "{meta}");
}

#[test]
fn normalize_pipeline_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture("two_sets_seven_elements.setcover");
    let out = dir.path().join("m");
    ok(&["reduce", "mindag", p(&sc), "--out-dir", p(&out)]);
    let graph = out.join("graph.txt");
    let shores = out.join("shores.txt");
    let start = dir.path().join("tree.dagc");
    ok(&["compress", "--strategy", "tree", p(&graph), "-o", p(&start)]);
    let expect = std::fs::read_to_string(&graph).unwrap();
    let mut prev = start;
    let mut size = read_compression(&std::fs::read_to_string(&prev).unwrap()).unwrap().size();
    for pass in ["twins", "shore", "single-edge"] {
        let next = dir.path().join(format!("{pass}.dagc"));
        ok(&["normalize", "--pass", pass, "--shores", p(&shores), p(&prev), "-o", p(&next)]);
        assert_eq!(ok(&["decompress", p(&next)]), expect, "{pass}");
        let s = read_compression(&std::fs::read_to_string(&next).unwrap()).unwrap().size();
        assert!(s <= size, "{pass}: {size} -> {s}");
        size = s;
        prev = next;
    }
}

#[test]
fn bench_and_gap_csv() {
    let header = "family,params,sinks,original_edges,arcs,cedges,t_compressed_ms,t_baseline_ms,weight,add_edge_calls";
    assert_eq!(ok(&["bench", "--sizes="]), format!("{header}\n"));
    let out = ok(&["bench", "--sizes", "16,32", "--trials", "2", "--reps", "1", "--jobs", "2"]);
    let rows: Vec<_> = out.lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], header);
    let again = ok(&["bench", "--sizes", "16,32", "--trials", "2", "--reps", "1"]);
    let strip = |s: &str| s.lines().map(|l| {
        let f: Vec<_> = l.split(',').collect();
        format!("{},{},{}", f[..6].join(","), f[8], f[9])
    }).collect::<Vec<_>>();
    assert_eq!(strip(&out), strip(&again));
    let seeded = Command::new(env!("CARGO_BIN_EXE_dagzip"))
        .args(["bench", "--sizes", "16", "--reps", "1"])
        .env("DAGZIP_SEED", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8(seeded.stdout).unwrap().contains("seed=7"));
    let rook = ok(&["bench", "--family", "rook", "--sizes", "6", "--reps", "1"]);
    assert!(rook.lines().nth(1).unwrap().starts_with("rook,g=6;seed=0,36,"));
    let gap = ok(&["gap", "--g", "2,4", "--policy", "balanced"]);
    assert!(gap.starts_with("g,n,dag_size,tree_size,tree_cedges,ratio,seconds\n2,4,12,"));
}
