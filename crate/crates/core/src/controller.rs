//! Superstep driver.
//!
//! A superstep has three phases separated by barriers:
//!
//! 1. every unfinished job builds its pair table and its block queue,
//! 2. the per-job queues are merged into one [`GlobalQueue`],
//! 3. the global queue is walked block by block; each block is handed to
//!    every job that still has pending vertices in it, one job after the
//!    other, before the walk moves on.
//!
//! The first superstep of an engine has no priority history, so its
//! global queue is every block in id order.
//!
//! [`Mode::NaivePerJob`] is the reference schedule: each job walks its own
//! queue independently, so a block shared by `J` jobs is loaded `J` times.
//! `block_loads` counts one load per block activation in two-level mode and
//! one per (job, block) activation in naive mode.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::global::{build_global_queue, GlobalQueue, DEFAULT_ALPHA};
use crate::graph::{BlockId, BlockTable, Graph};
use crate::job::{AlgorithmKind, JobId, JobState, UpdateSummary, DEFAULT_TOLERANCE};
use crate::priority::{
    queue_length, select_queue, JobQueue, SelectParams, DEFAULT_C_CONST, DEFAULT_EPSILON_FRAC,
    DEFAULT_SAMPLES,
};

pub const DEFAULT_MAX_SUPERSTEPS: usize = 10_000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "two-level")]
    TwoLevel,
    #[serde(rename = "naive")]
    NaivePerJob,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::TwoLevel => "two-level",
            Mode::NaivePerJob => "naive",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-level" | "twolevel" | "two_level" => Ok(Mode::TwoLevel),
            "naive" | "naive-per-job" | "naive_per_job" => Ok(Mode::NaivePerJob),
            other => Err(Error::InvalidConfig(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub c_const: f64,
    pub alpha: f64,
    pub samples: usize,
    pub epsilon_frac: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub max_supersteps: usize,
    /// Worker threads for per-job work; 1 runs everything on the caller.
    pub threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            c_const: DEFAULT_C_CONST,
            alpha: DEFAULT_ALPHA,
            samples: DEFAULT_SAMPLES,
            epsilon_frac: DEFAULT_EPSILON_FRAC,
            tolerance: DEFAULT_TOLERANCE,
            seed: DEFAULT_SEED,
            max_supersteps: DEFAULT_MAX_SUPERSTEPS,
            threads: 1,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.c_const > 0.0 && self.c_const.is_finite()) {
            return bad(format!("c_const must be positive, got {}", self.c_const));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad(format!("alpha must lie in (0, 1], got {}", self.alpha));
        }
        if self.samples == 0 {
            return bad("samples must be at least 1".into());
        }
        if !(self.epsilon_frac >= 0.0 && self.epsilon_frac.is_finite()) {
            return bad(format!("epsilon_frac must be non-negative, got {}", self.epsilon_frac));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if self.max_supersteps == 0 {
            return bad("max_supersteps must be at least 1".into());
        }
        if self.threads == 0 {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Metrics {
    pub supersteps: u64,
    pub block_loads: u64,
    pub per_job_iterations: BTreeMap<JobId, u64>,
    pub per_job_vertex_updates: BTreeMap<JobId, u64>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Metrics {
    pub fn merge(&mut self, other: &Metrics) {
        self.supersteps += other.supersteps;
        self.block_loads += other.block_loads;
        for (&j, &n) in &other.per_job_iterations {
            *self.per_job_iterations.entry(j).or_default() += n;
        }
        for (&j, &n) in &other.per_job_vertex_updates {
            *self.per_job_vertex_updates.entry(j).or_default() += n;
        }
        self.wall_time += other.wall_time;
    }

    pub fn total_vertex_updates(&self) -> u64 {
        self.per_job_vertex_updates.values().sum()
    }
}

/// Fine-grained execution log, recorded when enabled with
/// [`Engine::record_events`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    /// Queues chosen for a superstep (two-level mode only).
    Scheduled {
        superstep: u64,
        job_queues: Vec<(JobId, Vec<BlockId>)>,
        global: Vec<BlockId>,
    },
    /// A block was brought in; counted in `block_loads`.
    Load { superstep: u64, block: BlockId },
    /// One `apply_block` call.
    Apply {
        superstep: u64,
        block: BlockId,
        job: JobId,
        processed: usize,
        emitted: usize,
    },
}

/// One record per block activation: the block and the jobs that ran on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub superstep: u64,
    pub block: BlockId,
    pub jobs: Vec<JobId>,
}

/// Folds an event log into per-activation trace records.
pub fn trace_records(events: &[Event]) -> Vec<TraceRecord> {
    let mut out: Vec<TraceRecord> = Vec::new();
    for e in events {
        match *e {
            Event::Load { superstep, block } => out.push(TraceRecord {
                superstep,
                block,
                jobs: Vec::new(),
            }),
            Event::Apply { job, .. } => {
                if let Some(last) = out.last_mut() {
                    last.jobs.push(job);
                }
            }
            Event::Scheduled { .. } => {}
        }
    }
    out
}

fn mix_seed(seed: u64, superstep: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ superstep.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct Engine {
    graph: Arc<Graph>,
    blocks: BlockTable,
    config: EngineConfig,
    q: usize,
    jobs: Vec<JobState>,
    admitted: Vec<JobState>,
    next_id: JobId,
    superstep: u64,
    metrics: Metrics,
    events: Option<Vec<Event>>,
    out_dir: Option<PathBuf>,
    finalized: Vec<JobId>,
    pool: Option<rayon::ThreadPool>,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("vertices", &self.graph.vertex_count())
            .field("blocks", &self.blocks.block_count())
            .field("q", &self.q)
            .field("jobs", &self.jobs.len())
            .field("superstep", &self.superstep)
            .finish()
    }
}

impl Engine {
    pub fn new(graph: Arc<Graph>, blocks: BlockTable, config: EngineConfig) -> Result<Self> {
        config.validate()?;
        if blocks.vertex_count() != graph.vertex_count() {
            return Err(Error::InvalidConfig(format!(
                "block table covers {} vertices, graph has {}",
                blocks.vertex_count(),
                graph.vertex_count()
            )));
        }
        let q = queue_length(blocks.block_count(), graph.vertex_count(), config.c_const);
        let pool = if config.threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(config.threads)
                    .build()
                    .map_err(|e| Error::InvalidConfig(e.to_string()))?,
            )
        } else {
            None
        };
        Ok(Engine {
            graph,
            blocks,
            config,
            q,
            jobs: Vec::new(),
            admitted: Vec::new(),
            next_id: 0,
            superstep: 0,
            metrics: Metrics::default(),
            events: None,
            out_dir: None,
            finalized: Vec::new(),
            pool,
        })
    }

    /// Write `job_<id>.txt` into `dir` as each job converges.
    pub fn with_output_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.out_dir = Some(dir.into());
        self
    }

    pub fn record_events(&mut self, on: bool) {
        self.events = if on { Some(Vec::new()) } else { None };
    }

    pub fn events(&self) -> &[Event] {
        self.events.as_deref().unwrap_or(&[])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn blocks(&self) -> &BlockTable {
        &self.blocks
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Queue length used for every job queue and the global queue.
    pub fn queue_len(&self) -> usize {
        self.q
    }

    pub fn superstep(&self) -> u64 {
        self.superstep
    }

    pub fn metrics(&self) -> &Metrics {
        &self.metrics
    }

    /// Jobs that have joined a superstep, in admission order.
    pub fn jobs(&self) -> &[JobState] {
        &self.jobs
    }

    pub fn job(&self, id: JobId) -> Option<&JobState> {
        self.jobs
            .iter()
            .chain(self.admitted.iter())
            .find(|j| j.id() == id)
    }

    /// Ids of jobs whose results have been written, in completion order.
    pub fn finalized(&self) -> &[JobId] {
        &self.finalized
    }

    /// Registers a job. It joins at the next superstep boundary.
    pub fn admit(&mut self, kind: AlgorithmKind) -> Result<JobId> {
        let id = self.next_id;
        let job = JobState::new(id, kind, &self.graph, self.config.tolerance)?;
        self.next_id += 1;
        self.admitted.push(job);
        Ok(id)
    }

    pub fn has_work(&self) -> bool {
        !self.admitted.is_empty() || self.jobs.iter().any(|j| !j.done())
    }

    fn select_params(&self) -> SelectParams {
        SelectParams {
            q: self.q,
            samples: self.config.samples,
            epsilon_frac: self.config.epsilon_frac,
            seed: mix_seed(self.config.seed, self.superstep),
        }
    }

    fn emit(&mut self, event: impl FnOnce() -> Event) {
        if let Some(log) = self.events.as_mut() {
            log.push(event());
        }
    }

    fn join_admitted(&mut self) {
        self.jobs.append(&mut self.admitted);
    }

    fn active_indices(&self) -> Vec<usize> {
        (0..self.jobs.len()).filter(|&i| !self.jobs[i].done()).collect()
    }

    /// One superstep in the given mode.
    pub fn step(&mut self, mode: Mode) -> Result<Metrics> {
        match mode {
            Mode::TwoLevel => self.run_superstep_two_level(),
            Mode::NaivePerJob => self.run_superstep_naive(),
        }
    }

    /// One superstep of the shared schedule.
    pub fn run_superstep_two_level(&mut self) -> Result<Metrics> {
        self.join_admitted();
        let active = self.active_indices();
        let mut delta = Metrics::default();
        if active.is_empty() {
            return Ok(delta);
        }
        let step = self.superstep;

        let global = if step == 0 {
            GlobalQueue::all_blocks(self.blocks.block_count())
        } else {
            let params = self.select_params();
            let queues = self.build_queues(&active, &params);
            let global = build_global_queue(&queues, self.q, self.config.alpha)?;
            if self.events.is_some() {
                let job_queues = active
                    .iter()
                    .zip(&queues)
                    .map(|(&i, jq)| (self.jobs[i].id(), jq.entries.clone()))
                    .collect();
                self.emit(|| Event::Scheduled {
                    superstep: step,
                    job_queues,
                    global: global.entries.clone(),
                });
            }
            global
        };

        let mut participated = vec![false; self.jobs.len()];
        for &block in &global.entries {
            let range = self.blocks.range(block);
            let dispatch: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&i| self.jobs[i].has_pending_in(range.clone()))
                .collect();
            if dispatch.is_empty() {
                continue;
            }
            delta.block_loads += 1;
            self.emit(|| Event::Load {
                superstep: step,
                block,
            });

            let summaries = self.dispatch_block(&dispatch, range);
            for (&i, summary) in dispatch.iter().zip(summaries) {
                participated[i] = true;
                let id = self.jobs[i].id();
                *delta.per_job_vertex_updates.entry(id).or_default() += summary.processed as u64;
                self.emit(|| Event::Apply {
                    superstep: step,
                    block,
                    job: id,
                    processed: summary.processed,
                    emitted: summary.emitted,
                });
            }
        }

        self.finish_superstep(&active, &participated, &mut delta)?;
        Ok(delta)
    }

    /// One superstep of the per-job reference schedule.
    pub fn run_superstep_naive(&mut self) -> Result<Metrics> {
        self.join_admitted();
        let active = self.active_indices();
        let mut delta = Metrics::default();
        if active.is_empty() {
            return Ok(delta);
        }
        let step = self.superstep;
        let params = self.select_params();
        let graph = Arc::clone(&self.graph);
        let blocks = &self.blocks;

        let walk = |job: &mut JobState| -> Vec<(BlockId, UpdateSummary)> {
            let queue = if step == 0 {
                JobQueue::new((0..blocks.block_count()).collect())
            } else {
                select_queue(job, blocks, &params)
            };
            let mut done = Vec::new();
            for block in queue.iter() {
                let range = blocks.range(block);
                if job.has_pending_in(range.clone()) {
                    done.push((block, job.apply_block(&graph, range)));
                }
            }
            done
        };

        let mut selected: Vec<&mut JobState> = self
            .jobs
            .iter_mut()
            .enumerate()
            .filter(|(i, _)| active.contains(i))
            .map(|(_, j)| j)
            .collect();
        let walks: Vec<Vec<(BlockId, UpdateSummary)>> = match &self.pool {
            Some(pool) => pool.install(|| selected.par_iter_mut().map(|j| walk(j)).collect()),
            None => selected.iter_mut().map(|j| walk(j)).collect(),
        };

        let mut participated = vec![false; self.jobs.len()];
        for (&i, activations) in active.iter().zip(walks) {
            let id = self.jobs[i].id();
            for (block, summary) in activations {
                participated[i] = true;
                delta.block_loads += 1;
                *delta.per_job_vertex_updates.entry(id).or_default() += summary.processed as u64;
                self.emit(|| Event::Load {
                    superstep: step,
                    block,
                });
                self.emit(|| Event::Apply {
                    superstep: step,
                    block,
                    job: id,
                    processed: summary.processed,
                    emitted: summary.emitted,
                });
            }
        }

        self.finish_superstep(&active, &participated, &mut delta)?;
        Ok(delta)
    }

    fn build_queues(&self, active: &[usize], params: &SelectParams) -> Vec<JobQueue> {
        let build = |&i: &usize| select_queue(&self.jobs[i], &self.blocks, params);
        match &self.pool {
            Some(pool) => pool.install(|| active.par_iter().map(build).collect()),
            None => active.iter().map(build).collect(),
        }
    }

    /// Runs `apply_block` for each selected job on one block. Jobs are
    /// independent, so with a pool they run side by side; results come back
    /// in `dispatch` order either way.
    fn dispatch_block(
        &mut self,
        dispatch: &[usize],
        range: std::ops::Range<usize>,
    ) -> Vec<UpdateSummary> {
        let graph = &self.graph;
        match &self.pool {
            Some(pool) if dispatch.len() > 1 => {
                let mut selected: Vec<(usize, &mut JobState)> = self
                    .jobs
                    .iter_mut()
                    .enumerate()
                    .filter(|(i, _)| dispatch.contains(i))
                    .collect();
                pool.install(|| {
                    selected
                        .par_iter_mut()
                        .map(|(_, job)| job.apply_block(graph, range.clone()))
                        .collect()
                })
            }
            _ => dispatch
                .iter()
                .map(|&i| self.jobs[i].apply_block(graph, range.clone()))
                .collect(),
        }
    }

    fn finish_superstep(
        &mut self,
        active: &[usize],
        participated: &[bool],
        delta: &mut Metrics,
    ) -> Result<()> {
        delta.supersteps = 1;
        for &i in active {
            if participated[i] {
                *delta.per_job_iterations.entry(self.jobs[i].id()).or_default() += 1;
            }
            if self.jobs[i].refresh_done() {
                self.finalize_job(i)?;
            }
        }
        self.superstep += 1;
        self.metrics.merge(delta);
        Ok(())
    }

    fn finalize_job(&mut self, i: usize) -> Result<()> {
        let job = &self.jobs[i];
        if let Some(dir) = &self.out_dir {
            job.finalize(dir.join(format!("job_{}.txt", job.id())))?;
        }
        self.finalized.push(job.id());
        Ok(())
    }

    /// Runs supersteps until every job has converged.
    pub fn run_to_convergence(&mut self, mode: Mode) -> Result<Metrics> {
        self.run_with_hook(mode, |_| Ok(()))
    }

    /// Like [`run_to_convergence`](Self::run_to_convergence), calling
    /// `hook` at every superstep boundary (before the superstep starts).
    /// The hook may admit jobs.
    pub fn run_with_hook<F>(&mut self, mode: Mode, mut hook: F) -> Result<Metrics>
    where
        F: FnMut(&mut Engine) -> Result<()>,
    {
        let start = Instant::now();
        let base = self.metrics.wall_time;
        loop {
            hook(self)?;
            if !self.has_work() {
                break;
            }
            if self.superstep >= self.config.max_supersteps as u64 {
                self.metrics.wall_time = base + start.elapsed();
                return Err(Error::SuperstepLimit {
                    limit: self.config.max_supersteps,
                    partial: Box::new(self.metrics.clone()),
                });
            }
            self.step(mode)?;
        }
        self.metrics.wall_time = base + start.elapsed();
        Ok(self.metrics.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, Edge, EdgeList};

    fn engine(pairs: &[(usize, usize)], block_size: usize, config: EngineConfig) -> Engine {
        let g = Arc::new(build_graph(&EdgeList::from_pairs(pairs)).unwrap());
        let blocks = BlockTable::new(g.vertex_count(), block_size).unwrap();
        Engine::new(g, blocks, config).unwrap()
    }

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn no_jobs_is_noop() {
        let mut e = engine(&cycle(4), 2, EngineConfig::default());
        assert_eq!(e.run_superstep_two_level().unwrap(), Metrics::default());
        assert_eq!(e.run_superstep_naive().unwrap(), Metrics::default());
        let m = e.run_to_convergence(Mode::TwoLevel).unwrap();
        assert_eq!(m.supersteps, 0);
    }

    #[test]
    fn pagerank_cycle_uniform() {
        let mut e = engine(&cycle(3), 2, EngineConfig::default());
        let id = e.admit(AlgorithmKind::pagerank()).unwrap();
        let m = e.run_to_convergence(Mode::TwoLevel).unwrap();
        assert!(m.supersteps >= 1);
        let v = e.job(id).unwrap().values();
        assert!((v[0] - v[1]).abs() < 1e-8 && (v[1] - v[2]).abs() < 1e-8);
    }

    #[test]
    fn sssp_path() {
        let edges: EdgeList = (0..6).map(|i| Edge::new(i, i + 1, 2.5)).collect();
        let g = Arc::new(build_graph(&edges).unwrap());
        let blocks = BlockTable::new(7, 2).unwrap();
        for mode in [Mode::TwoLevel, Mode::NaivePerJob] {
            let mut e = Engine::new(g.clone(), blocks.clone(), EngineConfig::default()).unwrap();
            let id = e.admit(AlgorithmKind::sssp(0)).unwrap();
            e.run_to_convergence(mode).unwrap();
            let want: Vec<f64> = (0..7).map(|i| i as f64 * 2.5).collect();
            assert_eq!(e.job(id).unwrap().values(), want.as_slice());
        }
    }

    #[test]
    fn invalid_admissions() {
        let mut e = engine(&cycle(4), 2, EngineConfig::default());
        assert!(e.admit(AlgorithmKind::sssp(0)).is_ok());
        assert!(matches!(e.admit(AlgorithmKind::sssp(4)), Err(Error::InvalidJob(_))));
        assert!(e.admit(AlgorithmKind::PageRank { damping: 1.2 }).is_err());
    }

    #[test]
    fn shared_loads_vs_naive_on_identical_jobs() {
        let pairs: Vec<(usize, usize)> = (0..60).flat_map(|i| [(i, (i * 7 + 1) % 60), (i, (i + 3) % 60)]).collect();
        let run = |mode| {
            let mut e = engine(&pairs, 4, EngineConfig { c_const: 2.0, ..Default::default() });
            for _ in 0..3 {
                e.admit(AlgorithmKind::pagerank()).unwrap();
            }
            e.step(mode).unwrap();
            let first = e.step(mode).unwrap();
            (first, e.run_to_convergence(mode).unwrap())
        };
        let (two_step, two) = run(Mode::TwoLevel);
        let (naive_step, naive) = run(Mode::NaivePerJob);
        assert_eq!(naive_step.block_loads, 3 * two_step.block_loads);
        assert_eq!(naive.block_loads, 3 * two.block_loads);
    }

    #[test]
    fn superstep_limit_reports_partial_metrics() {
        let config = EngineConfig {
            max_supersteps: 2,
            tolerance: 1e-15,
            ..Default::default()
        };
        let mut e = engine(&cycle(50), 5, config);
        e.admit(AlgorithmKind::pagerank()).unwrap();
        match e.run_to_convergence(Mode::TwoLevel) {
            Err(Error::SuperstepLimit { limit, partial }) => {
                assert_eq!(limit, 2);
                assert_eq!(partial.supersteps, 2);
            }
            other => panic!("expected limit error, got {other:?}"),
        }
    }

    #[test]
    fn admission_waits_for_boundary() {
        let mut e = engine(&cycle(12), 3, EngineConfig::default());
        e.admit(AlgorithmKind::pagerank()).unwrap();
        e.run_superstep_two_level().unwrap();
        let late = e.admit(AlgorithmKind::sssp(0)).unwrap();
        assert_eq!(e.jobs().len(), 1);
        assert!(e.job(late).is_some());
        e.run_superstep_two_level().unwrap();
        assert_eq!(e.jobs().len(), 2);
        assert_eq!(e.metrics().per_job_iterations.get(&late), Some(&1));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("two-level".parse::<Mode>().unwrap(), Mode::TwoLevel);
        assert_eq!("naive".parse::<Mode>().unwrap(), Mode::NaivePerJob);
        assert!("fast".parse::<Mode>().is_err());
        assert_eq!(Mode::TwoLevel.to_string(), "two-level");
    }

    #[test]
    fn config_validation() {
        assert!(EngineConfig { alpha: 0.0, ..Default::default() }.validate().is_err());
        assert!(EngineConfig { samples: 0, ..Default::default() }.validate().is_err());
        assert!(EngineConfig { tolerance: -1.0, ..Default::default() }.validate().is_err());
        assert!(EngineConfig::default().validate().is_ok());
    }

    #[test]
    fn trace_records_group_applies() {
        let events = vec![
            Event::Load { superstep: 0, block: 2 },
            Event::Apply { superstep: 0, block: 2, job: 0, processed: 1, emitted: 1 },
            Event::Apply { superstep: 0, block: 2, job: 1, processed: 1, emitted: 1 },
            Event::Load { superstep: 0, block: 0 },
            Event::Apply { superstep: 0, block: 0, job: 1, processed: 1, emitted: 1 },
        ];
        assert_eq!(
            trace_records(&events),
            vec![
                TraceRecord { superstep: 0, block: 2, jobs: vec![0, 1] },
                TraceRecord { superstep: 0, block: 0, jobs: vec![1] },
            ]
        );
    }

    #[test]
    fn threaded_matches_single_worker() {
        let pairs: Vec<(usize, usize)> = (0..80).flat_map(|i| [(i, (i * 13 + 5) % 80), (i, (i + 1) % 80)]).collect();
        let run = |threads| {
            let mut e = engine(&pairs, 8, EngineConfig { threads, c_const: 3.0, ..Default::default() });
            e.admit(AlgorithmKind::pagerank()).unwrap();
            e.admit(AlgorithmKind::sssp(3)).unwrap();
            e.admit(AlgorithmKind::PageRank { damping: 0.7 }).unwrap();
            let m = e.run_to_convergence(Mode::TwoLevel).unwrap();
            let values: Vec<Vec<f64>> = e.jobs().iter().map(|j| j.values().to_vec()).collect();
            (m.block_loads, m.supersteps, values)
        };
        assert_eq!(run(1), run(4));
    }
}
