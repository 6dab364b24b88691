//! Block loads of the shared schedule against one private schedule per job.

use std::sync::Arc;

use twolevel::{synth, AlgorithmKind, BlockTable, Engine, EngineConfig, Graph, Metrics, Mode};

fn run(graph: &Arc<Graph>, jobs: &[AlgorithmKind], mode: Mode) -> twolevel::Result<Metrics> {
    let blocks = BlockTable::new(graph.vertex_count(), 128)?;
    let config = EngineConfig { c_const: 20.0, ..Default::default() };
    let mut engine = Engine::new(graph.clone(), blocks, config)?;
    for &kind in jobs {
        engine.admit(kind)?;
    }
    engine.run_to_convergence(mode)
}

fn main() -> twolevel::Result<()> {
    let graph = Arc::new(synth::random_graph(20_000, 8.0, true, 3));

    println!("identical PageRank jobs");
    println!("{:>4} {:>12} {:>12} {:>7}", "J", "two-level", "naive", "ratio");
    for j in [1, 2, 4, 8] {
        let jobs = vec![AlgorithmKind::pagerank(); j];
        let two = run(&graph, &jobs, Mode::TwoLevel)?;
        let naive = run(&graph, &jobs, Mode::NaivePerJob)?;
        println!(
            "{j:>4} {:>12} {:>12} {:>7.2}",
            two.block_loads,
            naive.block_loads,
            naive.block_loads as f64 / two.block_loads as f64
        );
    }

    println!("\nmixed jobs");
    let mixed = [
        AlgorithmKind::pagerank(),
        AlgorithmKind::PageRank { damping: 0.7 },
        AlgorithmKind::sssp(0),
        AlgorithmKind::sssp(10_000),
    ];
    for mode in [Mode::TwoLevel, Mode::NaivePerJob] {
        let m = run(&graph, &mixed, mode)?;
        println!(
            "{mode:>9}: {:>7} block loads, {:>9} vertex updates, {} supersteps",
            m.block_loads,
            m.total_vertex_updates(),
            m.supersteps
        );
    }
    Ok(())
}
