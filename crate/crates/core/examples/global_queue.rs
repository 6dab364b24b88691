//! Merging per-job block queues into the shared queue.

use twolevel::global::{assign_pri, main_slots};
use twolevel::{build_global_queue, JobQueue};

fn show(name: &str, queues: &[JobQueue], q: usize, alpha: f64) -> twolevel::Result<()> {
    let g = build_global_queue(queues, q, alpha)?;
    println!("{name} (q = {q}, alpha = {alpha}, {} main slots)", main_slots(q, alpha));
    for (j, jq) in queues.iter().enumerate() {
        println!("  job {j}: {:?} weights {:?}", jq.entries, assign_pri(jq, q));
    }
    println!("  scores   {:?}", g.scores);
    println!("  main     {:?}", g.main());
    println!("  reserved {:?}\n", g.reserved());
    Ok(())
}

fn main() -> twolevel::Result<()> {
    show(
        "two overlapping jobs",
        &[JobQueue::new(vec![0, 1, 2]), JobQueue::new(vec![3, 1, 4])],
        3,
        0.8,
    )?;
    show(
        "one job outvoted by three",
        &[
            JobQueue::new(vec![10, 11, 12, 13]),
            JobQueue::new(vec![10, 11, 12, 13]),
            JobQueue::new(vec![11, 10, 13, 12]),
            JobQueue::new(vec![90, 91, 92, 93]),
        ],
        4,
        0.75,
    )?;
    show(
        "no reserve at alpha = 1",
        &[JobQueue::new(vec![0, 1, 2]), JobQueue::new(vec![3, 4]), JobQueue::new(vec![5])],
        3,
        1.0,
    )
}
