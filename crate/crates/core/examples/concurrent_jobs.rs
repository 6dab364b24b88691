//! Several PageRank and SSSP jobs sharing one graph and one block schedule.

use std::sync::Arc;

use twolevel::{synth, AlgorithmKind, BlockTable, Engine, EngineConfig, Mode};

fn main() -> twolevel::Result<()> {
    let n = 30_000;
    let graph = Arc::new(synth::random_graph(n, 6.0, true, 7));
    let blocks = BlockTable::new(n, 512)?;
    let mut engine = Engine::new(graph, blocks, EngineConfig { threads: 4, ..Default::default() })?;

    let jobs = [
        AlgorithmKind::pagerank(),
        AlgorithmKind::PageRank { damping: 0.5 },
        AlgorithmKind::sssp(0),
        AlgorithmKind::sssp(n / 2),
    ];
    for kind in jobs {
        engine.admit(kind)?;
    }
    let metrics = engine.run_to_convergence(Mode::TwoLevel)?;

    println!("{:<4} {:<18} {:>11} {:>14}  summary", "job", "kind", "iterations", "vertex updates");
    for job in engine.jobs() {
        let id = job.id();
        let summary = match job.kind() {
            AlgorithmKind::PageRank { .. } => {
                let max = job.values().iter().copied().fold(0.0, f64::max);
                format!("max rank {max:.4}")
            }
            AlgorithmKind::Sssp { .. } => {
                let reached: Vec<f64> = job.values().iter().copied().filter(|d| d.is_finite()).collect();
                let far = reached.iter().copied().fold(0.0, f64::max);
                format!("{} reached, eccentricity {far}", reached.len())
            }
        };
        println!(
            "{id:<4} {:<18} {:>11} {:>14}  {summary}",
            job.kind().to_string(),
            metrics.per_job_iterations[&id],
            metrics.per_job_vertex_updates[&id],
        );
    }
    println!("{} supersteps, {} shared block loads", metrics.supersteps, metrics.block_loads);
    Ok(())
}
