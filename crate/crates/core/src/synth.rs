//! Seeded random graphs for examples, tests and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{build_graph, Edge, EdgeList, Graph};

/// Directed graph with `vertices` vertices and about `avg_degree` random
/// out-edges per vertex (uniform targets, self-loops and duplicates
/// possible). Weighted graphs draw weights uniformly from `[1, 10]`,
/// otherwise every weight is 1.
pub fn random_edges(vertices: usize, avg_degree: f64, weighted: bool, seed: u64) -> EdgeList {
    assert!(vertices > 0, "need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edge_count = ((vertices as f64 * avg_degree).round() as usize).max(1);
    let mut edges: EdgeList = (0..edge_count)
        .map(|_| {
            let src = rng.gen_range(0..vertices);
            let dst = rng.gen_range(0..vertices);
            let w = if weighted { rng.gen_range(1.0..=10.0) } else { 1.0 };
            Edge::new(src, dst, w)
        })
        .collect();
    // pin the vertex count
    let last = vertices - 1;
    if !edges.edges.iter().any(|e| e.src == last || e.dst == last) {
        let src = rng.gen_range(0..vertices);
        edges.edges.push(Edge::new(src, last, 1.0));
    }
    edges
}

pub fn random_graph(vertices: usize, avg_degree: f64, weighted: bool, seed: u64) -> Graph {
    build_graph(&random_edges(vertices, avg_degree, weighted, seed)).expect("non-empty edge list")
}

/// Writes an edge list in the text format read by
/// [`load_edge_list`](crate::graph::load_edge_list).
pub fn write_edge_list<W: std::io::Write>(edges: &EdgeList, mut out: W) -> std::io::Result<()> {
    for e in &edges.edges {
        writeln!(out, "{} {} {}", e.src, e.dst, e.weight)?;
    }
    Ok(())
}
