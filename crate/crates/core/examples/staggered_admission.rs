//! Jobs that arrive while others are already running.

use std::sync::Arc;

use twolevel::{synth, AlgorithmKind, BlockTable, Engine, EngineConfig, Mode};

fn main() -> twolevel::Result<()> {
    let n = 20_000;
    let graph = Arc::new(synth::random_graph(n, 6.0, true, 5));
    let blocks = BlockTable::new(n, 256)?;
    let mut engine = Engine::new(graph, blocks, EngineConfig::default())?;
    engine.admit(AlgorithmKind::pagerank())?;

    let mut arrivals = vec![
        (5, AlgorithmKind::sssp(17)),
        (10, AlgorithmKind::PageRank { damping: 0.6 }),
        (10, AlgorithmKind::sssp(19_000)),
    ];
    arrivals.reverse();
    let mut reported = std::collections::BTreeSet::new();
    let metrics = engine.run_with_hook(Mode::TwoLevel, |e| {
        while arrivals.last().is_some_and(|&(at, _)| at <= e.superstep()) {
            let (at, kind) = arrivals.pop().unwrap();
            let id = e.admit(kind)?;
            println!("superstep {at:>3}: admitted job {id} ({kind})");
        }
        for job in e.jobs().iter().filter(|j| j.done()) {
            if reported.insert(job.id()) {
                println!("superstep {:>3}: job {} converged", e.superstep(), job.id());
            }
        }
        Ok(())
    })?;
    println!("{} supersteps, {} block loads", metrics.supersteps, metrics.block_loads);
    Ok(())
}
