//! Line-oriented text formats. Lines starting with `#` and blank lines are
//! skipped; everything else is whitespace-separated tokens.
//!
//! ```text
//! graph <directed|undirected> <n> <m> [weighted]
//! e <u> <v> [w]
//!
//! dagc <directed|undirected> [weighted]
//! sinks <n>
//! clusters <k>
//! arcs <|A|>
//! a <u> <v>
//! cedges <|E|>
//! c <u> <v> [w]
//!
//! setcover <n> <|T|> <k>
//! s <id> <e1> <e2> ...
//!
//! shores <n> <|V1|>
//! v <x>
//!
//! mst <n> <k> <total_weight>
//! t <u> <v> <w>
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use dagzip_core::reductions::{ReductionError, SetCoverInstance};
use dagzip_core::{CompressionError, DagCompression, Graph, GraphError, ShorePartition, SpanningForest, Vertex, Weight, WeightedGraph};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Eof(&'static str),
    #[error("declared {expected} {what}, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Compression(#[from] CompressionError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Plain(Graph),
    Weighted(WeightedGraph),
}

impl GraphFile {
    pub fn graph(&self) -> &Graph {
        match self {
            GraphFile::Plain(g) => g,
            GraphFile::Weighted(w) => w.graph(),
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            GraphFile::Plain(g) => g,
            GraphFile::Weighted(w) => w.graph().clone(),
        }
    }
}

type Tokens<'a> = Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>;

struct Lines<'a> {
    inner: std::iter::Peekable<Tokens<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
                .map(|(i, l)| (i, l.split_whitespace().collect())),
        );
        Self { inner: it.peekable() }
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, Vec<&'a str>), FormatError> {
        self.inner.next().ok_or(FormatError::Eof(what))
    }

    /// Next line, which must start with `tag`.
    fn tagged(&mut self, tag: &'static str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let (line, toks) = self.next(tag)?;
        if toks[0] != tag {
            return Err(syntax(line, format!("expected `{tag}`, found `{}`", toks[0])));
        }
        Ok((line, toks))
    }

    fn finish(mut self) -> Result<(), FormatError> {
        match self.inner.next() {
            None => Ok(()),
            Some((line, toks)) => Err(syntax(line, format!("unexpected trailing `{}`", toks.join(" ")))),
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| syntax(line, format!("`{tok}` is not a non-negative integer")))
}

fn direction(line: usize, tok: &str) -> Result<bool, FormatError> {
    match tok {
        "directed" => Ok(true),
        "undirected" => Ok(false),
        other => Err(syntax(line, format!("expected `directed` or `undirected`, found `{other}`"))),
    }
}

fn weighted_flag(line: usize, toks: &[&str]) -> Result<bool, FormatError> {
    match toks {
        [] => Ok(false),
        ["weighted"] => Ok(true),
        other => Err(syntax(line, format!("unexpected `{}` in header", other.join(" ")))),
    }
}

fn arity(line: usize, toks: &[&str], want: usize) -> Result<(), FormatError> {
    if toks.len() != want {
        let msg = if toks.len() == want + 1 && want == 3 {
            "weight given in an unweighted file".to_string()
        } else {
            format!("expected {} fields, found {}", want, toks.len())
        };
        return Err(syntax(line, msg));
    }
    Ok(())
}

fn direction_name(directed: bool) -> &'static str {
    if directed {
        "directed"
    } else {
        "undirected"
    }
}

pub fn read_graph(text: &str) -> Result<GraphFile, FormatError> {
    let mut lines = Lines::new(text);
    let (line, h) = lines.tagged("graph")?;
    if h.len() < 4 {
        return Err(syntax(line, "header is `graph <directed|undirected> <n> <m> [weighted]`"));
    }
    let directed = direction(line, h[1])?;
    let n: Vertex = num(line, h[2])?;
    let m: usize = num(line, h[3])?;
    let weighted = weighted_flag(line, &h[4..])?;
    let mut edges = Vec::with_capacity(m);
    let mut weights = Vec::new();
    while lines.inner.peek().is_some() {
        let (line, t) = lines.tagged("e")?;
        arity(line, &t, if weighted { 4 } else { 3 })?;
        edges.push((num(line, t[1])?, num(line, t[2])?));
        if weighted {
            weights.push(num::<Weight>(line, t[3])?);
        }
    }
    if edges.len() != m {
        return Err(FormatError::Count { what: "edges", expected: m, found: edges.len() });
    }
    if weighted {
        let triples = edges.into_iter().zip(weights).map(|((u, v), w)| (u, v, w));
        if directed {
            return Err(GraphError::DirectedWeighted.into());
        }
        Ok(GraphFile::Weighted(WeightedGraph::from_weighted_edges(n, triples)?))
    } else {
        Ok(GraphFile::Plain(Graph::from_edges_strict(directed, n, edges)?))
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {} {} {}\n", direction_name(g.is_directed()), g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}

pub fn write_weighted_graph(g: &WeightedGraph) -> String {
    let mut s = format!("graph undirected {} {} weighted\n", g.vertex_count(), g.edge_count());
    for (u, v, w) in g.iter() {
        let _ = writeln!(s, "e {u} {v} {w}");
    }
    s
}

pub fn write_graph_file(g: &GraphFile) -> String {
    match g {
        GraphFile::Plain(g) => write_graph(g),
        GraphFile::Weighted(w) => write_weighted_graph(w),
    }
}

fn counted(lines: &mut Lines<'_>, tag: &'static str) -> Result<usize, FormatError> {
    let (line, t) = lines.tagged(tag)?;
    arity(line, &t, 2)?;
    num(line, t[1])
}

pub fn read_compression(text: &str) -> Result<DagCompression, FormatError> {
    let mut lines = Lines::new(text);
    let (line, h) = lines.tagged("dagc")?;
    if h.len() < 2 {
        return Err(syntax(line, "header is `dagc <directed|undirected> [weighted]`"));
    }
    let directed = direction(line, h[1])?;
    let weighted = weighted_flag(line, &h[2..])?;
    let n_sinks = counted(&mut lines, "sinks")? as Vertex;
    let n_clusters = counted(&mut lines, "clusters")? as Vertex;
    let n_arcs = counted(&mut lines, "arcs")?;
    let mut arcs = Vec::with_capacity(n_arcs);
    for _ in 0..n_arcs {
        let (line, t) = lines.tagged("a")?;
        arity(line, &t, 3)?;
        arcs.push((num(line, t[1])?, num(line, t[2])?));
    }
    let n_edges = counted(&mut lines, "cedges")?;
    let mut edges = Vec::with_capacity(n_edges);
    let mut weights = Vec::new();
    for _ in 0..n_edges {
        let (line, t) = lines.tagged("c")?;
        arity(line, &t, if weighted { 4 } else { 3 })?;
        edges.push((num(line, t[1])?, num(line, t[2])?));
        if weighted {
            weights.push(num::<Weight>(line, t[3])?);
        }
    }
    lines.finish()?;
    Ok(DagCompression::from_parts(directed, n_sinks, n_clusters, arcs, edges, weighted.then_some(weights))?)
}

pub fn write_compression(d: &DagCompression) -> String {
    let mut s = format!("dagc {}{}\n", direction_name(d.is_directed()), if d.is_weighted() { " weighted" } else { "" });
    let _ = writeln!(s, "sinks {}\nclusters {}\narcs {}", d.n_sinks(), d.n_clusters(), d.arcs().len());
    for &(u, v) in d.arcs() {
        let _ = writeln!(s, "a {u} {v}");
    }
    let _ = writeln!(s, "cedges {}", d.edges().len());
    match d.weights() {
        Some(w) => {
            for (&(u, v), w) in d.edges().iter().zip(w) {
                let _ = writeln!(s, "c {u} {v} {w}");
            }
        }
        None => {
            for &(u, v) in d.edges() {
                let _ = writeln!(s, "c {u} {v}");
            }
        }
    }
    s
}

pub fn read_setcover(text: &str) -> Result<SetCoverInstance, FormatError> {
    let mut lines = Lines::new(text);
    let (line, h) = lines.tagged("setcover")?;
    arity(line, &h, 4)?;
    let n: u32 = num(line, h[1])?;
    let count: usize = num(line, h[2])?;
    let k: usize = num(line, h[3])?;
    let mut sets: Vec<Option<Vec<u32>>> = vec![None; count];
    for _ in 0..count {
        let (line, t) = lines.tagged("s")?;
        if t.len() < 2 {
            return Err(syntax(line, "set line is `s <id> <elements...>`"));
        }
        let id: usize = num(line, t[1])?;
        if id == 0 || id > count {
            return Err(syntax(line, format!("set id {id} outside 1..={count}")));
        }
        if sets[id - 1].is_some() {
            return Err(syntax(line, format!("set id {id} given twice")));
        }
        sets[id - 1] = Some(t[2..].iter().map(|x| num(line, x)).collect::<Result<_, _>>()?);
    }
    lines.finish()?;
    let sets = sets.into_iter().map(|s| s.expect("every id seen once")).collect();
    Ok(SetCoverInstance::new(n, sets, k)?)
}

pub fn write_setcover(inst: &SetCoverInstance) -> String {
    let mut s = format!("setcover {} {} {}\n", inst.universe_size(), inst.sets().len(), inst.k());
    for (i, set) in inst.sets().iter().enumerate() {
        let _ = write!(s, "s {}", i + 1);
        for e in set {
            let _ = write!(s, " {e}");
        }
        s.push('\n');
    }
    s
}

pub fn read_shores(text: &str) -> Result<ShorePartition, FormatError> {
    let mut lines = Lines::new(text);
    let (line, h) = lines.tagged("shores")?;
    arity(line, &h, 3)?;
    let n: Vertex = num(line, h[1])?;
    let k: usize = num(line, h[2])?;
    let mut shore1 = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, t) = lines.tagged("v")?;
        arity(line, &t, 2)?;
        shore1.push(num::<Vertex>(line, t[1])?);
    }
    lines.finish()?;
    Ok(ShorePartition::new(n, shore1)?)
}

pub fn write_shores(s: &ShorePartition) -> String {
    let mut out = format!("shores {} {}\n", s.vertex_count(), s.shore1().len());
    for v in s.shore1() {
        let _ = writeln!(out, "v {v}");
    }
    out
}

pub fn write_mst(f: &SpanningForest) -> String {
    let mut s = format!("mst {} {} {}\n", f.n, f.edges.len(), f.total_weight);
    for &(u, v, w) in &f.edges {
        let _ = writeln!(s, "t {u} {v} {w}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph() {
        let g = read_graph("graph directed 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, GraphFile::Plain(Graph::from_edges(true, 2, [(1, 2)]).unwrap()));
        assert_eq!(write_graph_file(&g), "graph directed 2 1\ne 1 2\n");
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(
            read_graph("graph directed 2 1\ne 1 3\n"),
            Err(FormatError::Graph(GraphError::EndpointOutOfRange { vertex: 3, n: 2 }))
        ));
        assert!(matches!(read_graph("graph sideways 2 0\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(read_graph("graph directed 2 1\ne 1 2 5\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(read_graph("graph directed 2 2\ne 1 2\ne 1 2\n"), Err(FormatError::Graph(_))));
        assert!(matches!(read_graph("graph directed 2 2\ne 1 2\n"), Err(FormatError::Count { .. })));
        assert!(matches!(read_graph(""), Err(FormatError::Eof(_))));
    }

    #[test]
    fn comments_and_weights() {
        let text = "# a triangle\ngraph undirected 3 2 weighted\n\ne 2 1 4\n# middle\ne 2 3 1\n";
        let GraphFile::Weighted(w) = read_graph(text).unwrap() else { panic!() };
        assert_eq!(w.weight(1, 2), Some(4));
        assert_eq!(write_weighted_graph(&w), "graph undirected 3 2 weighted\ne 1 2 4\ne 2 3 1\n");
    }

    #[test]
    fn setcover_by_id() {
        let inst = read_setcover("setcover 3 2 1\ns 2 3\ns 1 1 2\n").unwrap();
        assert_eq!(inst.sets(), &[vec![1, 2], vec![3]]);
        assert_eq!(write_setcover(&inst), "setcover 3 2 1\ns 1 1 2\ns 2 3\n");
        assert!(read_setcover("setcover 3 2 1\ns 1 1\ns 1 2\n").is_err());
    }

    #[test]
    fn shores_round_trip() {
        let s = read_shores("shores 4 2\nv 3\nv 1\n").unwrap();
        assert_eq!(s.shore1(), &[1, 3]);
        assert_eq!(read_shores(&write_shores(&s)).unwrap(), s);
    }
}
