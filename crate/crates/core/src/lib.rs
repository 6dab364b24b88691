//! Concurrent graph analytics over one shared, immutable graph.
//!
//! Several analytics jobs (delta-accumulative PageRank, SSSP) run against
//! the same CSR graph. The vertex space is cut into cache-sized blocks and
//! scheduling happens at block granularity, on two levels:
//!
//! - **data level**: every job ranks its blocks by a `(pending vertices,
//!   mean priority)` pair and extracts a short queue with a sampling
//!   threshold ([`priority`]); the per-job queues are merged into a global
//!   queue by accumulated rank weight plus a reserve for individually
//!   urgent blocks ([`global`]);
//! - **job level**: the global queue is walked block by block and every
//!   job with pending work on the current block processes it back to back
//!   ([`controller`]), so a block is brought in once per superstep rather
//!   than once per job.
//!
//! ```
//! use std::sync::Arc;
//! use twolevel::{AlgorithmKind, BlockTable, Engine, EngineConfig, Mode, synth};
//!
//! let graph = Arc::new(synth::random_graph(200, 4.0, false, 7));
//! let blocks = BlockTable::new(graph.vertex_count(), 16).unwrap();
//! let mut engine = Engine::new(graph, blocks, EngineConfig::default()).unwrap();
//! let pr = engine.admit(AlgorithmKind::pagerank()).unwrap();
//! let sp = engine.admit(AlgorithmKind::sssp(0)).unwrap();
//! let metrics = engine.run_to_convergence(Mode::TwoLevel).unwrap();
//! assert!(engine.job(pr).unwrap().done() && engine.job(sp).unwrap().done());
//! assert!(metrics.block_loads > 0);
//! ```

pub mod cli;
pub mod controller;
pub mod error;
pub mod global;
pub mod graph;
pub mod job;
pub mod priority;
pub mod synth;

pub use controller::{Engine, EngineConfig, Event, Metrics, Mode, TraceRecord};
pub use error::{Error, Result};
pub use global::{assign_pri, build_global_queue, GlobalQueue};
pub use graph::{
    block_of, build_graph, load_edge_list, partition_blocks, BlockId, BlockTable,
    Edge, EdgeList, Graph, VertexId,
};
pub use job::{AlgorithmKind, JobId, JobState, UpdateSummary};
pub use priority::{
    cbp, compute_pair, do_select, queue_length, JobQueue, PriorityPair, Ptable, SelectParams,
    Selection,
};
