use dagzip_core::oracle::{min_dag_size, min_dag_size_shores, OracleBudget, UnrestrictedOracle};
use dagzip_core::{Graph, ShorePartition, Vertex};

fn all_pairs(directed: bool, n: Vertex) -> Vec<(Vertex, Vertex)> {
    let mut p = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if directed || u <= v {
                p.push((u, v));
            }
        }
    }
    p
}

fn graph_from_mask(directed: bool, n: Vertex, pairs: &[(Vertex, Vertex)], mask: u32) -> Graph {
    let e = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
    Graph::from_edges(directed, n, e).unwrap()
}

#[test]
fn family_search_matches_brute_force_on_three_vertices() {
    let budget = OracleBudget::default();
    for directed in [false, true] {
        for n in 0..=3 {
            let brute = UnrestrictedOracle::new(n as usize, 4).unwrap();
            let pairs = all_pairs(directed, n);
            for mask in 0..1u32 << pairs.len() {
                let g = graph_from_mask(directed, n, &pairs, mask);
                let fast = min_dag_size(&g, &budget).unwrap();
                assert!(fast.exhaustive);
                assert_eq!(fast.size, brute.min_size(&g).unwrap(), "{g:?}");
                assert_eq!(fast.witness.decompress().unwrap(), g);
                assert_eq!(fast.witness.size(), fast.size);
            }
        }
    }
}

#[test]
fn shore_search_matches_generic_on_bipartite_graphs() {
    let budget = OracleBudget::default();
    for n in 2..=4u32 {
        for split in 1..n {
            let shore1: Vec<Vertex> = (1..=split).collect();
            let sh = ShorePartition::new(n, shore1.iter().copied()).unwrap();
            let pairs: Vec<_> = shore1.iter().flat_map(|&u| (split + 1..=n).map(move |v| (u, v))).collect();
            for mask in 0..1u32 << pairs.len() {
                let g = graph_from_mask(true, n, &pairs, mask);
                let generic = min_dag_size(&g, &budget).unwrap();
                let shore = min_dag_size_shores(&g, &sh, &budget).unwrap();
                assert_eq!(generic.size, shore.size, "{g:?}");
                assert_eq!(shore.witness.decompress().unwrap(), g);
            }
        }
    }
}
