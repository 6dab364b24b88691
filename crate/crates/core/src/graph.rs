//! Shared immutable graph storage and block partitioning.
//!
//! The graph is kept as a forward CSR (out-edges only). All jobs read the
//! same [`Graph`]; the [`BlockTable`] cuts the vertex space into contiguous
//! ranges of `block_size` vertices, which are the unit every scheduler in
//! this crate works with.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::ops::Range;
use std::path::Path;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type BlockId = usize;

/// Block size used when none is configured.
pub const DEFAULT_BLOCK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: f64,
}

impl Edge {
    pub fn new(src: VertexId, dst: VertexId, weight: f64) -> Self {
        Edge { src, dst, weight }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeList {
    pub edges: Vec<Edge>,
}

impl EdgeList {
    pub fn new(edges: Vec<Edge>) -> Self {
        EdgeList { edges }
    }

    pub fn from_pairs(pairs: &[(VertexId, VertexId)]) -> Self {
        pairs.iter().map(|&(s, d)| Edge::new(s, d, 1.0)).collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Parses the `src dst [weight]` text format. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::Parse {
                line: lineno,
                message: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            edges.push(parse_edge_line(trimmed, lineno)?);
        }
        Ok(EdgeList { edges })
    }
}

impl FromIterator<Edge> for EdgeList {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeList {
            edges: iter.into_iter().collect(),
        }
    }
}

fn parse_edge_line(line: &str, lineno: usize) -> Result<Edge> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 2 && tokens.len() != 3 {
        return Err(Error::Parse {
            line: lineno,
            message: format!("expected 2 or 3 fields, found {}", tokens.len()),
        });
    }
    let vertex = |tok: &str| {
        tok.parse::<VertexId>().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid vertex id {tok:?}"),
        })
    };
    let src = vertex(tokens[0])?;
    let dst = vertex(tokens[1])?;
    let weight = match tokens.get(2) {
        None => 1.0,
        Some(tok) => {
            let w = tok.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid weight {tok:?}"),
            })?;
            if !w.is_finite() || w < 0.0 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("weight must be finite and non-negative, got {w}"),
                });
            }
            w
        }
    };
    Ok(Edge { src, dst, weight })
}

/// Reads an edge list from a text file.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<EdgeList> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    EdgeList::parse(BufReader::new(file))
}

/// Forward CSR adjacency shared read-only by every job.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    vertex_count: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<VertexId>,
    out_weights: Vec<f64>,
}

impl Graph {
    /// Builds the CSR. The vertex count is one past the largest id seen;
    /// duplicate edges and self-loops are kept, and edges of one source keep
    /// their input order.
    pub fn from_edges(edges: &EdgeList) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let vertex_count = edges
            .edges
            .iter()
            .map(|e| e.src.max(e.dst))
            .max()
            .map_or(0, |m| m + 1);

        let mut out_offsets = vec![0usize; vertex_count + 1];
        for e in &edges.edges {
            out_offsets[e.src + 1] += 1;
        }
        for i in 0..vertex_count {
            out_offsets[i + 1] += out_offsets[i];
        }

        let mut cursor = out_offsets.clone();
        let mut out_targets = vec![0; edges.len()];
        let mut out_weights = vec![0.0; edges.len()];
        for e in &edges.edges {
            let slot = cursor[e.src];
            out_targets[slot] = e.dst;
            out_weights[slot] = e.weight;
            cursor[e.src] += 1;
        }

        Ok(Graph {
            vertex_count,
            out_offsets,
            out_targets,
            out_weights,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    pub fn out_weights(&self, v: VertexId) -> &[f64] {
        &self.out_weights[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    /// `(target, weight)` pairs for the out-edges of `v`.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.out_neighbors(v)
            .iter()
            .copied()
            .zip(self.out_weights(v).iter().copied())
    }

    pub fn offsets(&self) -> &[usize] {
        &self.out_offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.out_targets
    }
}

/// Convenience wrapper matching the edge-list → CSR step of the pipeline.
pub fn build_graph(edges: &EdgeList) -> Result<Graph> {
    Graph::from_edges(edges)
}

/// Contiguous equal-size vertex ranges; the last one may be short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTable {
    block_size: usize,
    vertex_count: usize,
    ranges: Vec<Range<VertexId>>,
}

impl BlockTable {
    pub fn new(vertex_count: usize, block_size: usize) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::ZeroBlockSize);
        }
        let ranges = (0..vertex_count)
            .step_by(block_size)
            .map(|start| start..(start + block_size).min(vertex_count))
            .collect();
        Ok(BlockTable {
            block_size,
            vertex_count,
            ranges,
        })
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block_count(&self) -> usize {
        self.ranges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn ranges(&self) -> &[Range<VertexId>] {
        &self.ranges
    }

    pub fn range(&self, block: BlockId) -> Range<VertexId> {
        self.ranges[block].clone()
    }

    pub fn block_of(&self, v: VertexId) -> Result<BlockId> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        Ok(v / self.block_size)
    }
}

/// Block holding vertex `v`.
pub fn block_of(table: &BlockTable, v: VertexId) -> Result<BlockId> {
    table.block_of(v)
}

pub fn partition_blocks(graph: &Graph, block_size: usize) -> Result<BlockTable> {
    BlockTable::new(graph.vertex_count(), block_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str) -> Result<EdgeList> {
        EdgeList::parse(text.as_bytes())
    }

    #[test]
    fn parses_default_and_explicit_weights() {
        let el = parse("0 1\n1 2\n").unwrap();
        assert_eq!(el.edges, vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0)]);
        let el = parse("0 1 2.5\n").unwrap();
        assert_eq!(el.edges, vec![Edge::new(0, 1, 2.5)]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let el = parse("# header\n\n0 1\n  # indented comment\n2 0 3\n").unwrap();
        assert_eq!(el.len(), 2);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        match parse("0 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("0 1\n# c\n5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse("0 1 -2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("0 1 nan\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("0 1 2 3\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_edge_list("/nonexistent/graph.el"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn csr_two_edge_star() {
        let g = build_graph(&EdgeList::from_pairs(&[(0, 1), (0, 2)])).unwrap();
        assert_eq!(g.offsets(), &[0, 2, 2, 2]);
        assert_eq!(g.targets(), &[1, 2]);
    }

    #[test]
    fn csr_sink_vertex() {
        let g = build_graph(&EdgeList::from_pairs(&[(1, 0)])).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.out_degree(0), 0);
        assert_eq!(g.out_degree(1), 1);
    }

    #[test]
    fn csr_cycle_degrees() {
        let g = build_graph(&EdgeList::from_pairs(&[(0, 1), (1, 2), (2, 0)])).unwrap();
        assert!((0..3).all(|v| g.out_degree(v) == 1));
    }

    #[test]
    fn csr_keeps_duplicates_and_self_loops() {
        let g = build_graph(&EdgeList::from_pairs(&[(0, 0), (0, 1), (0, 1)])).unwrap();
        assert_eq!(g.out_neighbors(0), &[0, 1, 1]);
    }

    #[test]
    fn empty_edge_list_rejected() {
        assert!(matches!(
            build_graph(&EdgeList::default()),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn partition_examples() {
        let t = BlockTable::new(10, 4).unwrap();
        assert_eq!(t.ranges(), &[0..4, 4..8, 8..10]);
        assert_eq!(t.block_count(), 3);

        assert_eq!(BlockTable::new(8, 8).unwrap().block_count(), 1);
        assert_eq!(BlockTable::new(1_000_000, 1000).unwrap().block_count(), 1000);
        assert!(matches!(BlockTable::new(8, 0), Err(Error::ZeroBlockSize)));
    }

    #[test]
    fn block_of_examples() {
        let t = BlockTable::new(10, 4).unwrap();
        assert_eq!(t.block_of(0).unwrap(), 0);
        assert_eq!(t.block_of(7).unwrap(), 1);
        assert_eq!(t.block_of(9).unwrap(), 2);
        assert!(matches!(
            t.block_of(10),
            Err(Error::VertexOutOfRange { vertex: 10, .. })
        ));
    }

    fn edge_strategy() -> impl Strategy<Value = Vec<(usize, usize, f64)>> {
        prop::collection::vec((0usize..60, 0usize..60, 0.0f64..10.0), 1..200)
    }

    proptest! {
        #[test]
        fn block_ranges_tile_vertices(n in 1usize..5000, bs in 1usize..700) {
            let t = BlockTable::new(n, bs).unwrap();
            prop_assert_eq!(t.block_count(), n.div_ceil(bs));
            let mut next = 0;
            for (i, r) in t.ranges().iter().enumerate() {
                prop_assert_eq!(r.start, next);
                if i + 1 < t.block_count() {
                    prop_assert_eq!(r.len(), bs);
                }
                next = r.end;
            }
            prop_assert_eq!(next, n);
            for v in (0..n).step_by(7) {
                prop_assert!(t.ranges()[t.block_of(v).unwrap()].contains(&v));
            }
        }

        #[test]
        fn csr_invariants(raw in edge_strategy()) {
            let el: EdgeList = raw.iter().map(|&(s, d, w)| Edge::new(s, d, w)).collect();
            let g = build_graph(&el).unwrap();
            let off = g.offsets();
            prop_assert_eq!(off[0], 0);
            prop_assert_eq!(off[g.vertex_count()], el.len());
            prop_assert!(off.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(g.targets().iter().all(|&t| t < g.vertex_count()));
            let deg_sum: usize = (0..g.vertex_count()).map(|v| g.out_degree(v)).sum();
            prop_assert_eq!(deg_sum, g.edge_count());
            prop_assert_eq!(&g, &build_graph(&el).unwrap());
            // per-source order and multiplicity preserved
            for v in 0..g.vertex_count() {
                let expected: Vec<(usize, f64)> = el.edges.iter()
                    .filter(|e| e.src == v).map(|e| (e.dst, e.weight)).collect();
                let got: Vec<(usize, f64)> = g.out_edges(v).collect();
                prop_assert_eq!(got, expected);
            }
        }
    }
}
