//! Global block queue shared by all jobs in a superstep.
//!
//! Every job queue assigns rank weights `q, q-1, ..., 1` to its entries.
//! Weights are summed per block; the `floor(alpha * q)` heaviest blocks
//! form the main section. The remaining slots are reserved for blocks that
//! matter to an individual job but did not accumulate enough weight,
//! handed out round-robin over jobs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::BlockId;
use crate::priority::JobQueue;

pub const DEFAULT_ALPHA: f64 = 0.8;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GlobalQueue {
    pub entries: Vec<BlockId>,
    pub scores: BTreeMap<BlockId, u64>,
    /// Length of the score-ordered prefix; the rest is the reserved section.
    pub main_len: usize,
}

impl GlobalQueue {
    /// Every block in id order, used before any priorities exist.
    pub fn all_blocks(block_count: usize) -> Self {
        GlobalQueue {
            entries: (0..block_count).collect(),
            scores: BTreeMap::new(),
            main_len: block_count,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn main(&self) -> &[BlockId] {
        &self.entries[..self.main_len]
    }

    pub fn reserved(&self) -> &[BlockId] {
        &self.entries[self.main_len..]
    }

    pub fn contains(&self, block: BlockId) -> bool {
        self.entries.contains(&block)
    }
}

/// Rank weights of one queue: entry `r` (0-based) gets `q - r`.
pub fn assign_pri(queue: &JobQueue, q: usize) -> BTreeMap<BlockId, u64> {
    queue
        .iter()
        .take(q)
        .enumerate()
        .map(|(rank, block)| (block, (q - rank) as u64))
        .collect()
}

/// Number of main-section slots for queue length `q`.
pub fn main_slots(q: usize, alpha: f64) -> usize {
    // nudge guards products like 0.7 * 10 = 6.999...
    ((alpha * q as f64) + 1e-9).floor().min(q as f64) as usize
}

/// Synthesizes the global queue from per-job queues.
///
/// The main section holds the `floor(alpha * q)` blocks with the highest
/// summed rank weight (ties by ascending id). Reserved slots are then
/// filled round-robin over jobs in submission order, each job offering its
/// best block not yet present. Jobs with a non-empty queue but no block in
/// the global queue are served first; if they outnumber the reserved slots
/// the main section gives up its lowest entries so that every such job is
/// represented whenever `jobs <= q`.
pub fn build_global_queue(job_queues: &[JobQueue], q: usize, alpha: f64) -> Result<GlobalQueue> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    if q == 0 {
        return Err(Error::InvalidConfig("queue length must be at least 1".into()));
    }

    let mut scores: BTreeMap<BlockId, u64> = BTreeMap::new();
    for queue in job_queues {
        for (block, pri) in assign_pri(queue, q) {
            *scores.entry(block).or_default() += pri;
        }
    }
    let mut ranked: Vec<(BlockId, u64)> = scores.iter().map(|(&b, &s)| (b, s)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let active_jobs: Vec<&JobQueue> = job_queues.iter().filter(|jq| !jq.is_empty()).collect();
    let mut main_len = main_slots(q, alpha).min(ranked.len());
    loop {
        let main: BTreeSet<BlockId> = ranked[..main_len].iter().map(|&(b, _)| b).collect();
        let unserved = active_jobs
            .iter()
            .filter(|jq| !jq.iter().any(|b| main.contains(&b)))
            .count();
        if unserved <= q - main_len || main_len == 0 {
            break;
        }
        main_len -= 1;
    }

    let mut entries: Vec<BlockId> = ranked[..main_len].iter().map(|&(b, _)| b).collect();
    let mut present: BTreeSet<BlockId> = entries.iter().copied().collect();
    let mut cursors = vec![0usize; job_queues.len()];

    let next_absent = |jq: &JobQueue, cursor: &mut usize, present: &BTreeSet<BlockId>| {
        while *cursor < jq.len() {
            let b = jq.entries[*cursor];
            *cursor += 1;
            if !present.contains(&b) {
                return Some(b);
            }
        }
        None
    };

    // unrepresented jobs first
    for (j, jq) in job_queues.iter().enumerate() {
        if entries.len() >= q {
            break;
        }
        if jq.iter().any(|b| present.contains(&b)) {
            continue;
        }
        if let Some(b) = next_absent(jq, &mut cursors[j], &present) {
            entries.push(b);
            present.insert(b);
        }
    }

    // plain round-robin for whatever is left
    while entries.len() < q {
        let mut progressed = false;
        for (j, jq) in job_queues.iter().enumerate() {
            if entries.len() >= q {
                break;
            }
            if let Some(b) = next_absent(jq, &mut cursors[j], &present) {
                entries.push(b);
                present.insert(b);
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    Ok(GlobalQueue {
        entries,
        scores,
        main_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn jq(v: &[BlockId]) -> JobQueue {
        JobQueue::new(v.to_vec())
    }

    #[test]
    fn pri_from_q_down() {
        let m = assign_pri(&jq(&[10, 20, 30]), 3);
        assert_eq!(m, BTreeMap::from([(10, 3), (20, 2), (30, 1)]));
        assert!(assign_pri(&jq(&[]), 3).is_empty());
        assert_eq!(assign_pri(&jq(&[10]), 3), BTreeMap::from([(10, 3)]));
    }

    #[test]
    fn top_and_second_rank_sum() {
        let q = 5;
        let g = build_global_queue(&[jq(&[7, 1, 2]), jq(&[3, 7, 4])], q, 0.8).unwrap();
        assert_eq!(g.scores[&7], 2 * q as u64 - 1);
    }

    #[test]
    fn two_job_example() {
        // a=0, b=1, c=2, d=3, e=4
        let g = build_global_queue(&[jq(&[0, 1, 2]), jq(&[3, 1, 4])], 3, 0.8).unwrap();
        assert_eq!(
            g.scores,
            BTreeMap::from([(1, 4), (0, 3), (3, 3), (2, 1), (4, 1)])
        );
        assert_eq!(g.main(), &[1, 0]);
        assert_eq!(g.entries, vec![1, 0, 2]);
    }

    #[test]
    fn single_job_passthrough() {
        let g = build_global_queue(&[jq(&[5, 2, 9, 1])], 4, 0.8).unwrap();
        assert_eq!(g.entries, vec![5, 2, 9, 1]);
    }

    #[test]
    fn alpha_validated() {
        assert!(build_global_queue(&[], 3, 0.0).is_err());
        assert!(build_global_queue(&[], 3, 1.5).is_err());
        assert!(build_global_queue(&[], 3, 1.0).unwrap().is_empty());
    }

    #[test]
    fn main_slot_rounding() {
        assert_eq!(main_slots(3, 0.8), 2);
        assert_eq!(main_slots(10, 0.7), 7);
        assert_eq!(main_slots(1, 0.8), 0);
        assert_eq!(main_slots(5, 1.0), 5);
    }

    #[test]
    fn main_shrinks_when_reserve_too_small() {
        // q=3, alpha=1 leaves no reserve; three disjoint jobs still each get a slot
        let g = build_global_queue(&[jq(&[0, 1, 2]), jq(&[3, 4]), jq(&[5])], 3, 1.0).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.contains(0) && g.contains(3) && g.contains(5));
    }

    fn arb_queues() -> impl Strategy<Value = (Vec<JobQueue>, usize)> {
        (1usize..12).prop_flat_map(|q| {
            let queue = prop::collection::btree_set(0usize..30, 0..=q)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(JobQueue::new);
            (prop::collection::vec(queue, 1..6), Just(q))
        })
    }

    proptest! {
        #[test]
        fn length_and_uniqueness((queues, q) in arb_queues(), alpha in 0.05f64..=1.0) {
            let g = build_global_queue(&queues, q, alpha).unwrap();
            let distinct: BTreeSet<_> = queues.iter().flat_map(|jq| jq.iter()).collect();
            prop_assert_eq!(g.len(), q.min(distinct.len()));
            let uniq: BTreeSet<_> = g.entries.iter().collect();
            prop_assert_eq!(uniq.len(), g.len());
            prop_assert!(g.entries.iter().all(|b| distinct.contains(b)));
        }

        #[test]
        fn identical_queues_fixpoint(base in prop::collection::btree_set(0usize..40, 1..10), jobs in 1usize..6, alpha in 0.05f64..=1.0) {
            let common: Vec<usize> = base.into_iter().rev().collect();
            let q = common.len();
            let queues = vec![JobQueue::new(common.clone()); jobs];
            let g = build_global_queue(&queues, q, alpha).unwrap();
            prop_assert_eq!(g.entries, common);
        }
    }
}
