//! Per-job vertex state and the two supported update rules.
//!
//! PageRank runs in delta-accumulative form: every vertex keeps its current
//! value and a pending change. Processing a vertex folds the change into
//! the value and pushes `d * change / out_degree` to each out-neighbor.
//! SSSP keeps tentative distances and a "changed since last visit" flag.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub type JobId = usize;

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "lowercase")]
pub enum AlgorithmKind {
    PageRank { damping: f64 },
    Sssp { source: VertexId },
}

impl AlgorithmKind {
    pub fn pagerank() -> Self {
        AlgorithmKind::PageRank {
            damping: DEFAULT_DAMPING,
        }
    }

    pub fn sssp(source: VertexId) -> Self {
        AlgorithmKind::Sssp { source }
    }

    pub fn validate(&self, vertex_count: usize) -> Result<()> {
        match *self {
            AlgorithmKind::PageRank { damping } => {
                if !(damping > 0.0 && damping < 1.0) {
                    return Err(Error::InvalidJob(format!(
                        "damping must lie in (0, 1), got {damping}"
                    )));
                }
            }
            AlgorithmKind::Sssp { source } => {
                if source >= vertex_count {
                    return Err(Error::InvalidJob(format!(
                        "source {source} out of range (vertex count {vertex_count})"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmKind::PageRank { damping } => write!(f, "pagerank:d={damping}"),
            AlgorithmKind::Sssp { source } => write!(f, "sssp:src={source}"),
        }
    }
}

/// Counts returned by [`JobState::apply_block`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UpdateSummary {
    /// Vertices with pending work that were processed.
    pub processed: usize,
    /// PageRank: edge pushes. SSSP: successful relaxations.
    pub emitted: usize,
}

impl std::ops::AddAssign for UpdateSummary {
    fn add_assign(&mut self, rhs: Self) {
        self.processed += rhs.processed;
        self.emitted += rhs.emitted;
    }
}

#[derive(Debug, Clone)]
pub struct JobState {
    id: JobId,
    kind: AlgorithmKind,
    tolerance: f64,
    value: Vec<f64>,
    // PageRank pending change; empty for SSSP.
    delta: Vec<f64>,
    // SSSP "distance changed" flags; empty for PageRank.
    pending: Vec<bool>,
    done: bool,
}

impl JobState {
    pub fn new(id: JobId, kind: AlgorithmKind, graph: &Graph, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidJob(format!(
                "tolerance must be positive and finite, got {tolerance}"
            )));
        }
        let n = graph.vertex_count();
        kind.validate(n)?;
        let mut job = match kind {
            AlgorithmKind::PageRank { damping } => JobState {
                id,
                kind,
                tolerance,
                value: vec![0.0; n],
                delta: vec![1.0 - damping; n],
                pending: Vec::new(),
                done: false,
            },
            AlgorithmKind::Sssp { source } => {
                let mut value = vec![f64::INFINITY; n];
                let mut pending = vec![false; n];
                value[source] = 0.0;
                pending[source] = true;
                JobState {
                    id,
                    kind,
                    tolerance,
                    value,
                    delta: Vec::new(),
                    pending,
                    done: false,
                }
            }
        };
        job.refresh_done();
        Ok(job)
    }

    pub fn id(&self) -> JobId {
        self.id
    }

    pub fn kind(&self) -> AlgorithmKind {
        self.kind
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn vertex_count(&self) -> usize {
        self.value.len()
    }

    /// PageRank values or SSSP distances.
    pub fn values(&self) -> &[f64] {
        &self.value
    }

    /// Pending PageRank changes (empty slice for SSSP).
    pub fn deltas(&self) -> &[f64] {
        &self.delta
    }

    /// Whether `v` still has work to do.
    #[inline]
    pub fn is_pending(&self, v: VertexId) -> bool {
        match self.kind {
            AlgorithmKind::PageRank { .. } => self.delta[v] >= self.tolerance,
            AlgorithmKind::Sssp { .. } => self.pending[v],
        }
    }

    pub fn is_converged(&self, v: VertexId) -> bool {
        !self.is_pending(v)
    }

    pub fn pending_in(&self, range: Range<VertexId>) -> usize {
        range.filter(|&v| self.is_pending(v)).count()
    }

    pub fn has_pending_in(&self, range: Range<VertexId>) -> bool {
        range.into_iter().any(|v| self.is_pending(v))
    }

    /// Algorithm-level priority of a vertex. PageRank: the pending change.
    /// SSSP: the negated tentative distance. Zero once the vertex has no
    /// pending work (and for an unreached vertex).
    pub fn node_priority(&self, v: VertexId) -> f64 {
        if !self.is_pending(v) {
            return 0.0;
        }
        match self.kind {
            AlgorithmKind::PageRank { .. } => self.delta[v],
            AlgorithmKind::Sssp { .. } => {
                let d = self.value[v];
                if d.is_finite() {
                    -d
                } else {
                    0.0
                }
            }
        }
    }

    /// True iff no vertex has pending work.
    pub fn converged(&self) -> bool {
        (0..self.vertex_count()).all(|v| !self.is_pending(v))
    }

    pub fn done(&self) -> bool {
        self.done
    }

    /// Re-evaluates [`converged`](Self::converged) and caches it.
    pub fn refresh_done(&mut self) -> bool {
        self.done = self.converged();
        self.done
    }

    /// Processes every pending vertex of `range` once, in id order.
    ///
    /// Only vertices inside `range` act as sources; vertices elsewhere only
    /// receive contributions. A vertex of `range` that becomes pending
    /// after the cursor passed it stays pending for a later call.
    pub fn apply_block(&mut self, graph: &Graph, range: Range<VertexId>) -> UpdateSummary {
        match self.kind {
            AlgorithmKind::PageRank { damping } => self.apply_pagerank(graph, range, damping),
            AlgorithmKind::Sssp { .. } => self.apply_sssp(graph, range),
        }
    }

    fn apply_pagerank(&mut self, graph: &Graph, range: Range<VertexId>, damping: f64) -> UpdateSummary {
        let mut summary = UpdateSummary::default();
        for v in range {
            let change = self.delta[v];
            if change < self.tolerance {
                continue;
            }
            self.delta[v] = 0.0;
            self.value[v] += change;
            summary.processed += 1;

            let degree = graph.out_degree(v);
            // dangling vertices keep their change
            if degree == 0 {
                continue;
            }
            let share = damping * change / degree as f64;
            for &u in graph.out_neighbors(v) {
                self.delta[u] += share;
            }
            summary.emitted += degree;
        }
        summary
    }

    fn apply_sssp(&mut self, graph: &Graph, range: Range<VertexId>) -> UpdateSummary {
        let mut summary = UpdateSummary::default();
        for v in range {
            if !self.pending[v] {
                continue;
            }
            self.pending[v] = false;
            summary.processed += 1;
            let dist = self.value[v];
            for (u, w) in graph.out_edges(v) {
                let candidate = dist + w;
                if candidate < self.value[u] {
                    self.value[u] = candidate;
                    self.pending[u] = true;
                    summary.emitted += 1;
                }
            }
        }
        summary
    }

    #[cfg(test)]
    pub(crate) fn set_deltas_for_test(&mut self, deltas: &[f64]) {
        self.delta.copy_from_slice(deltas);
    }

    /// Writes `vertex<TAB>value` lines; unreachable distances print as `inf`.
    pub fn write_results<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (v, x) in self.value.iter().enumerate() {
            writeln!(out, "{v}\t{x}")?;
        }
        out.flush()
    }

    /// Persists the final values. The job must have converged.
    pub fn finalize(&self, path: impl AsRef<Path>) -> Result<()> {
        if !self.done {
            return Err(Error::NotConverged(self.id));
        }
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_results(BufWriter::new(file))
            .map_err(|e| Error::io(path, e))
    }
}
