//! One PageRank job on a synthetic graph, printing the top vertices.
//!
//! ```text
//! cargo run --example pagerank_single -- [vertices] [block_size]
//! ```

use std::sync::Arc;

use twolevel::{synth, AlgorithmKind, BlockTable, Engine, EngineConfig, Mode};

fn main() -> twolevel::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(20_000, |s| s.parse().expect("vertices"));
    let block_size: usize = args.next().map_or(256, |s| s.parse().expect("block size"));

    let graph = Arc::new(synth::random_graph(n, 8.0, false, 1));
    let blocks = BlockTable::new(n, block_size)?;
    let mut engine = Engine::new(graph.clone(), blocks, EngineConfig::default())?;
    println!(
        "{} vertices, {} edges, {} blocks, queue length {}",
        graph.vertex_count(),
        graph.edge_count(),
        engine.blocks().block_count(),
        engine.queue_len()
    );

    engine.admit(AlgorithmKind::pagerank())?;
    let metrics = engine.run_to_convergence(Mode::TwoLevel)?;

    let values = engine.job(0).unwrap().values();
    let total: f64 = values.iter().sum();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    println!("top vertices (normalized rank):");
    for &v in &order[..10] {
        println!("  {v:>6}  {:.6}", values[v] / total);
    }
    println!(
        "{} supersteps, {} block loads, {} vertex updates, {:.1?}",
        metrics.supersteps,
        metrics.block_loads,
        metrics.total_vertex_updates(),
        metrics.wall_time
    );
    Ok(())
}
