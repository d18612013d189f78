//! DAG compressions of dense graphs.
//!
//! A DAG compression stores a graph as a cluster DAG whose sinks are the
//! original vertices, plus a set of compression edges. Each compression edge
//! `(u, v)` stands for every original edge from the sinks reachable from `u`
//! to the sinks reachable from `v`. This crate holds the data structure and
//! everything that works on it directly:
//!
//! - [`graph`]: explicit graphs, twins, connectivity, bipartite shores.
//! - [`compression`]: the compression itself, clusters, representatives,
//!   decompression and validation.
//! - [`mst`]: Kruskal's algorithm on weighted undirected compressions, next to
//!   the uncompressed baseline.
//! - [`generators`]: rook graphs and their canonical compressions, seeded
//!   random graphs and random valid compressions.
//! - [`reductions`]: set-cover closures, twinned incidence graphs and the
//!   hardness constructions for the minimisation problems.
//! - [`normalize`]: the rewrite passes that put compressions of bipartite
//!   graphs into normal form.
//! - [`oracle`]: exact minimum compression size for tiny graphs.
//! - [`heuristics`]: tree and greedy DAG compressors.
//!
//! The crate is `no_std` and only needs `alloc`. Text formats, timing and the
//! command-line tool live in the `dagzip` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod compression;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod mst;
pub mod normalize;
pub mod oracle;
pub mod reductions;
pub mod union_find;

mod bits;

pub use compression::{ClusterTable, CompressionBuilder, CompressionError, DagCompression, Violation};
pub use graph::{Graph, GraphError, ShorePartition, Vertex, Weight, WeightedGraph};
pub use mst::{kruskal_baseline, kruskal_compressed, MstStats, SpanningForest};
pub use union_find::UnionFind;
