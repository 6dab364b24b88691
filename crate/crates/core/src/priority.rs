//! Block-granular priorities for a single job.
//!
//! Each block of a job is summarized by a [`PriorityPair`]: how many of its
//! vertices still have pending work, and the mean priority magnitude of
//! those vertices. Pairs are ordered with [`cbp`], a two-factor comparison
//! that falls back to total priority when the means are close. The
//! per-job queue is then extracted with [`do_select`], which estimates the
//! rank-`q` cut from a random sample instead of sorting the whole table.
//!
//! `cbp` is not transitive. Every sort here goes through [`sort_by_cbp`], a
//! stable merge sort that only needs a pairwise "goes before" answer and
//! never assumes a total order.

use std::ops::Range;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{BlockId, BlockTable, VertexId};
use crate::job::{AlgorithmKind, JobState};

pub const DEFAULT_C_CONST: f64 = 100.0;
pub const DEFAULT_SAMPLES: usize = 500;
pub const DEFAULT_EPSILON_FRAC: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorityPair {
    pub block: BlockId,
    /// Vertices of the block with pending work.
    pub node_un: usize,
    /// Mean priority magnitude over those vertices; 0 when `node_un == 0`.
    pub p_avg: f64,
}

impl PriorityPair {
    pub fn new(block: BlockId, node_un: usize, p_avg: f64) -> Self {
        PriorityPair {
            block,
            node_un,
            p_avg,
        }
    }

    pub fn empty(block: BlockId) -> Self {
        PriorityPair::new(block, 0, 0.0)
    }

    pub fn total(&self) -> f64 {
        self.p_avg * self.node_un as f64
    }

    pub fn is_active(&self) -> bool {
        self.node_un > 0
    }
}

/// One [`PriorityPair`] per block, indexed by block id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ptable {
    pub pairs: Vec<PriorityPair>,
}

impl Ptable {
    pub fn new(pairs: Vec<PriorityPair>) -> Self {
        Ptable { pairs }
    }

    /// All blocks share the same pair, so every comparison is a tie and
    /// block id decides the order.
    pub fn uniform(block_count: usize) -> Self {
        Ptable {
            pairs: (0..block_count)
                .map(|b| PriorityPair::new(b, 1, 1.0))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, block: BlockId) -> &PriorityPair {
        &self.pairs[block]
    }
}

/// Block ids of one job in priority-descending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobQueue {
    pub entries: Vec<BlockId>,
}

impl JobQueue {
    pub fn new(entries: Vec<BlockId>) -> Self {
        JobQueue { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = BlockId> + '_ {
        self.entries.iter().copied()
    }

    pub fn contains(&self, block: BlockId) -> bool {
        self.entries.contains(&block)
    }
}

/// Maps a job's vertex priorities onto non-negative magnitudes where
/// larger means more urgent.
///
/// PageRank priorities are already non-negative. SSSP priorities are
/// `-distance`, so the magnitude is `max_finite_distance + 1 - distance`.
#[derive(Debug, Clone, Copy)]
pub struct PriorityScale {
    sssp_ceiling: Option<f64>,
}

impl PriorityScale {
    pub fn for_job(job: &JobState) -> Self {
        let sssp_ceiling = match job.kind() {
            AlgorithmKind::PageRank { .. } => None,
            AlgorithmKind::Sssp { .. } => {
                let max = job
                    .values()
                    .iter()
                    .copied()
                    .filter(|d| d.is_finite())
                    .fold(0.0f64, f64::max);
                Some(max + 1.0)
            }
        };
        PriorityScale { sssp_ceiling }
    }

    /// `None` when `v` has no pending work.
    pub fn magnitude(&self, job: &JobState, v: VertexId) -> Option<f64> {
        if !job.is_pending(v) {
            return None;
        }
        Some(match self.sssp_ceiling {
            None => job.node_priority(v).abs(),
            Some(ceiling) => {
                let d = job.values()[v];
                if d.is_finite() {
                    ceiling - d
                } else {
                    0.0
                }
            }
        })
    }
}

fn pair_with_scale(
    job: &JobState,
    scale: &PriorityScale,
    range: Range<VertexId>,
    block: BlockId,
) -> PriorityPair {
    let mut node_un = 0usize;
    let mut sum = 0.0;
    for v in range {
        if let Some(m) = scale.magnitude(job, v) {
            node_un += 1;
            sum += m;
        }
    }
    if node_un == 0 {
        PriorityPair::empty(block)
    } else {
        PriorityPair::new(block, node_un, sum / node_un as f64)
    }
}

/// Summarizes one block of a job as `(pending count, mean magnitude)`.
pub fn compute_pair(job: &JobState, range: Range<VertexId>, block: BlockId) -> PriorityPair {
    pair_with_scale(job, &PriorityScale::for_job(job), range, block)
}

/// Builds the full pair table of a job.
pub fn build_ptable(job: &JobState, blocks: &BlockTable) -> Ptable {
    let scale = PriorityScale::for_job(job);
    Ptable {
        pairs: blocks
            .ranges()
            .iter()
            .enumerate()
            .map(|(b, r)| pair_with_scale(job, &scale, r.clone(), b))
            .collect(),
    }
}

/// Two-factor block comparison: is `a` at least as urgent as `b`?
///
/// Mean priority decides, except when the block with the higher mean has
/// fewer pending vertices, the means differ by less than
/// `epsilon_frac * mean_of_higher`, and the other block has the larger
/// total. Then the decision flips.
pub fn cbp_with(a: &PriorityPair, b: &PriorityPair, epsilon_frac: f64) -> bool {
    let mut state = true;
    let (mut a, mut b) = (a, b);
    if a.p_avg < b.p_avg {
        std::mem::swap(&mut a, &mut b);
        state = !state;
    }
    if a.node_un < b.node_un
        && a.p_avg - b.p_avg < epsilon_frac * a.p_avg
        && a.p_avg * (a.node_un as f64) < b.p_avg * (b.node_un as f64)
    {
        state = !state;
    }
    state
}

/// [`cbp_with`] at the default epsilon fraction of 0.2.
pub fn cbp(a: &PriorityPair, b: &PriorityPair) -> bool {
    cbp_with(a, b, DEFAULT_EPSILON_FRAC)
}

/// Strict "a goes before b": `a` wins the comparison and `b` does not, or
/// both claim the other (a tie) and `a` has the smaller block id.
pub fn ranks_before(a: &PriorityPair, b: &PriorityPair, epsilon_frac: f64) -> bool {
    match (cbp_with(a, b, epsilon_frac), cbp_with(b, a, epsilon_frac)) {
        (true, false) => true,
        (false, true) => false,
        _ => a.block < b.block,
    }
}

/// Stable top-down merge sort in priority-descending order.
///
/// Adjacent output elements are never inverted under [`ranks_before`],
/// even though the relation is not transitive.
pub fn sort_by_cbp(pairs: &mut [PriorityPair], epsilon_frac: f64) {
    if pairs.len() < 2 {
        return;
    }
    let mut buf = pairs.to_vec();
    merge_sort(pairs, &mut buf, epsilon_frac);
}

fn merge_sort(items: &mut [PriorityPair], buf: &mut [PriorityPair], eps: f64) {
    let n = items.len();
    if n <= 1 {
        return;
    }
    let mid = n / 2;
    merge_sort(&mut items[..mid], &mut buf[..mid], eps);
    merge_sort(&mut items[mid..], &mut buf[mid..], eps);
    buf[..n].copy_from_slice(items);
    let (left, right) = buf[..n].split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in items.iter_mut() {
        let take_left = j >= right.len() || (i < left.len() && !ranks_before(&right[j], &left[i], eps));
        if take_left {
            *slot = left[i];
            i += 1;
        } else {
            *slot = right[j];
            j += 1;
        }
    }
}

/// Queue length from the graph shape: `round(c * B_N / sqrt(V_N))`,
/// clamped into `[1, B_N]`.
pub fn queue_length(block_count: usize, vertex_count: usize, c_const: f64) -> usize {
    let raw = c_const * block_count as f64 / (vertex_count as f64).sqrt();
    let q = if raw.is_finite() { raw.round() } else { f64::MAX };
    (q.max(1.0) as usize).clamp(1, block_count.max(1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectParams {
    pub q: usize,
    pub samples: usize,
    pub epsilon_frac: f64,
    pub seed: u64,
}

impl SelectParams {
    pub fn new(q: usize, samples: usize, seed: u64) -> Self {
        SelectParams {
            q,
            samples,
            epsilon_frac: DEFAULT_EPSILON_FRAC,
            seed,
        }
    }
}

/// Operation counts of one [`do_select`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SelectStats {
    /// Pairs visited by the filtering scan.
    pub scanned: usize,
    /// Number of full passes over the table.
    pub passes: usize,
    pub sample_sort_len: usize,
    pub collected_sort_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub queue: JobQueue,
    /// Sample at the estimated rank-`q` position; `None` on an empty table.
    pub threshold: Option<PriorityPair>,
    /// Sorted sample, useful for diagnostics.
    pub sorted_sample: Vec<PriorityPair>,
    /// Everything that passed the threshold, sorted, before truncation.
    pub collected: Vec<PriorityPair>,
    pub stats: SelectStats,
}

/// Sampling-based extraction of roughly the top-`q` active blocks.
///
/// 1. draw `min(s, B_N)` pairs without replacement,
/// 2. sort them and take the one at `floor(q * s / B_N)` as threshold,
/// 3. one pass over the table keeps pairs that rank at least as high as
///    the threshold and have pending work,
/// 4. sort the kept pairs and truncate to `q`.
pub fn do_select(ptable: &Ptable, params: &SelectParams) -> Selection {
    let block_count = ptable.len();
    let q = params.q.max(1);
    let eps = params.epsilon_frac;
    let mut stats = SelectStats::default();

    if block_count == 0 {
        return Selection {
            queue: JobQueue::default(),
            threshold: None,
            sorted_sample: Vec::new(),
            collected: Vec::new(),
            stats,
        };
    }

    let sample_count = params.samples.max(1).min(block_count);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut picked = index::sample(&mut rng, block_count, sample_count).into_vec();
    // id order before sorting makes the outcome independent of draw order
    picked.sort_unstable();
    let mut sample: Vec<PriorityPair> = picked.into_iter().map(|b| ptable.pairs[b]).collect();
    sort_by_cbp(&mut sample, eps);
    stats.sample_sort_len = sample.len();

    let cut = (q as u128 * sample_count as u128 / block_count as u128) as usize;
    let threshold = sample[cut.min(sample.len() - 1)];

    let mut collected: Vec<PriorityPair> = Vec::new();
    for pair in &ptable.pairs {
        stats.scanned += 1;
        if pair.is_active() && cbp_with(pair, &threshold, eps) {
            collected.push(*pair);
        }
    }
    stats.passes = 1;

    sort_by_cbp(&mut collected, eps);
    stats.collected_sort_len = collected.len();

    let queue = JobQueue::new(collected.iter().take(q).map(|p| p.block).collect());
    Selection {
        queue,
        threshold: Some(threshold),
        sorted_sample: sample,
        collected,
        stats,
    }
}

/// Queue of a single job for this round: [`build_ptable`] then [`do_select`].
pub fn select_queue(job: &JobState, blocks: &BlockTable, params: &SelectParams) -> JobQueue {
    do_select(&build_ptable(job, blocks), params).queue
}
