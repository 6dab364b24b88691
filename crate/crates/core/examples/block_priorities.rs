//! Per-block priority pairs of a running job and the queue picked from them.

use std::sync::Arc;

use twolevel::priority::{build_ptable, cbp, do_select, queue_length, SelectParams};
use twolevel::{synth, AlgorithmKind, BlockTable, Engine, EngineConfig, Mode, PriorityPair};

fn main() -> twolevel::Result<()> {
    let n = 10_000;
    let graph = Arc::new(synth::random_graph(n, 6.0, true, 12));
    let blocks = BlockTable::new(n, 100)?;
    let mut engine = Engine::new(graph, blocks.clone(), EngineConfig::default())?;
    engine.admit(AlgorithmKind::sssp(0))?;
    for _ in 0..3 {
        engine.step(Mode::TwoLevel)?;
    }

    let job = engine.job(0).unwrap();
    let table = build_ptable(job, &blocks);
    let active = table.pairs.iter().filter(|p| p.is_active()).count();
    println!("after 3 supersteps: {active} of {} blocks have pending vertices", table.len());

    let q = queue_length(blocks.block_count(), n, 10.0);
    let sel = do_select(&table, &SelectParams::new(q, 40, 9));
    let thresh = sel.threshold.unwrap();
    println!(
        "q = {q}; threshold block {} (node_un {}, p_avg {:.3}); {} pass, {} kept",
        thresh.block,
        thresh.node_un,
        thresh.p_avg,
        sel.collected.len(),
        sel.queue.len()
    );
    for p in sel.collected.iter().take(sel.queue.len()) {
        println!("  block {:>3}: node_un {:>3}, p_avg {:>8.3}", p.block, p.node_un, p.p_avg);
    }

    println!("\nthe pairwise rule is not transitive:");
    let a = PriorityPair::new(0, 1, 10.0);
    let b = PriorityPair::new(1, 5, 8.5);
    let c = PriorityPair::new(2, 20, 7.0);
    let name = |p: &PriorityPair| ["a", "b", "c"][p.block];
    for (x, y) in [(a, b), (b, c), (c, a)] {
        let winner = if cbp(&x, &y) { x } else { y };
        println!(
            "  {} = ({:>2}, {:>4}) vs {} = ({:>2}, {:>4}): {} ranks higher",
            name(&x), x.node_un, x.p_avg, name(&y), y.node_un, y.p_avg, name(&winner)
        );
    }
    Ok(())
}
