//! Command-line front end: argument parsing, end-to-end run, and the
//! `metrics.json` / `job_<id>.txt` / trace outputs.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::Parser;
use serde::Serialize;

use crate::controller::{trace_records, Engine, EngineConfig, Metrics, Mode};
use crate::error::{Error, Result};
use crate::graph::{build_graph, load_edge_list, partition_blocks, DEFAULT_BLOCK_SIZE};
use crate::job::AlgorithmKind;

/// A `--job` argument: `pagerank`, `pagerank:d=<real>` or `sssp:src=<int>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JobSpec(pub AlgorithmKind);

impl FromStr for JobSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidJob(format!("malformed job spec {s:?}"));
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let param = |key: &str| -> Result<Option<&str>> {
            match params {
                None => Ok(None),
                Some(p) => match p.split_once('=') {
                    Some((k, v)) if k == key => Ok(Some(v)),
                    _ => Err(bad()),
                },
            }
        };
        let kind = match name {
            "pagerank" => {
                let damping = match param("d")? {
                    None => crate::job::DEFAULT_DAMPING,
                    Some(v) => v.parse::<f64>().map_err(|_| bad())?,
                };
                if !(damping > 0.0 && damping < 1.0) {
                    return Err(Error::InvalidJob(format!(
                        "damping must lie in (0, 1), got {damping}"
                    )));
                }
                AlgorithmKind::PageRank { damping }
            }
            "sssp" => {
                let src = param("src")?.ok_or_else(bad)?;
                AlgorithmKind::Sssp {
                    source: src.parse().map_err(|_| bad())?,
                }
            }
            _ => return Err(bad()),
        };
        Ok(JobSpec(kind))
    }
}

impl std::fmt::Display for JobSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for JobSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `--stagger <superstep>:<jobspec>`: admit a job at a superstep boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StaggeredJob {
    pub superstep: u64,
    pub job: JobSpec,
}

impl FromStr for StaggeredJob {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (step, spec) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidJob(format!("malformed stagger spec {s:?}")))?;
        Ok(StaggeredJob {
            superstep: step
                .parse()
                .map_err(|_| Error::InvalidJob(format!("malformed stagger superstep {step:?}")))?,
            job: spec.parse()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Parser, Serialize)]
#[command(
    name = "twolevel",
    about = "Run concurrent graph jobs over a shared graph with block-level co-scheduling"
)]
pub struct RunConfig {
    /// Edge list: one `src dst [weight]` per line, `#` comments
    #[arg(long = "graph")]
    pub graph_path: PathBuf,

    /// Job to run; repeatable. `pagerank[:d=<real>]` or `sssp:src=<int>`
    #[arg(long = "job", required = true)]
    pub jobs: Vec<JobSpec>,

    /// Vertices per block
    #[arg(long, default_value_t = DEFAULT_BLOCK_SIZE)]
    pub block_size: usize,

    /// Constant of the queue-length rule q = C * B_N / sqrt(V_N)
    #[arg(long, default_value_t = crate::priority::DEFAULT_C_CONST)]
    pub c_const: f64,

    /// Share of the global queue ranked by accumulated weight
    #[arg(long, default_value_t = crate::global::DEFAULT_ALPHA)]
    pub alpha: f64,

    /// Sample size used to estimate the queue threshold
    #[arg(long, default_value_t = crate::priority::DEFAULT_SAMPLES)]
    pub samples: usize,

    /// Relative closeness of block means that triggers the total-priority rule
    #[arg(long, default_value_t = crate::priority::DEFAULT_EPSILON_FRAC)]
    pub epsilon_frac: f64,

    /// PageRank per-vertex convergence tolerance
    #[arg(long, default_value_t = crate::job::DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    /// `two-level` or `naive`
    #[arg(long, default_value = "two-level")]
    pub mode: Mode,

    #[arg(long, default_value_t = crate::controller::DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long, default_value_t = crate::controller::DEFAULT_MAX_SUPERSTEPS)]
    pub max_supersteps: usize,

    /// Directory receiving `metrics.json` and `job_<id>.txt`
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,

    /// Write a JSON-lines record per block activation
    #[arg(long)]
    pub trace: Option<PathBuf>,

    /// Admit a job later: `<superstep>:<jobspec>`; repeatable
    #[arg(long)]
    pub stagger: Vec<StaggeredJob>,

    /// Worker threads for per-job work
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

impl RunConfig {
    /// Builds a config with defaults for everything but graph and jobs.
    pub fn new(graph_path: impl Into<PathBuf>, jobs: Vec<JobSpec>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            graph_path: graph_path.into(),
            jobs,
            block_size: DEFAULT_BLOCK_SIZE,
            c_const: crate::priority::DEFAULT_C_CONST,
            alpha: crate::global::DEFAULT_ALPHA,
            samples: crate::priority::DEFAULT_SAMPLES,
            epsilon_frac: crate::priority::DEFAULT_EPSILON_FRAC,
            tolerance: crate::job::DEFAULT_TOLERANCE,
            mode: Mode::TwoLevel,
            seed: crate::controller::DEFAULT_SEED,
            max_supersteps: crate::controller::DEFAULT_MAX_SUPERSTEPS,
            out_dir: out_dir.into(),
            trace: None,
            stagger: Vec::new(),
            threads: 1,
        }
    }

    pub fn engine_config(&self) -> EngineConfig {
        EngineConfig {
            c_const: self.c_const,
            alpha: self.alpha,
            samples: self.samples,
            epsilon_frac: self.epsilon_frac,
            tolerance: self.tolerance,
            seed: self.seed,
            max_supersteps: self.max_supersteps,
            threads: self.threads,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size == 0 {
            return Err(Error::ZeroBlockSize);
        }
        if self.jobs.is_empty() {
            return Err(Error::InvalidConfig("at least one --job is required".into()));
        }
        self.engine_config().validate()
    }
}

impl From<Error> for clap::Error {
    fn from(e: Error) -> Self {
        clap::Error::raw(clap::error::ErrorKind::ValueValidation, e)
    }
}

/// Parses command-line arguments (including the program name) and checks
/// every constraint on the result.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = RunConfig::try_parse_from(argv)?;
    config.validate()?;
    Ok(config)
}

#[derive(Debug, Serialize)]
struct MetricsDocument<'a> {
    mode: Mode,
    supersteps: u64,
    block_loads: u64,
    per_job_iterations: &'a std::collections::BTreeMap<usize, u64>,
    per_job_vertex_updates: &'a std::collections::BTreeMap<usize, u64>,
    wall_time_ms: f64,
    config: &'a RunConfig,
}

/// Renders the `metrics.json` document.
pub fn metrics_json(config: &RunConfig, metrics: &Metrics) -> String {
    let doc = MetricsDocument {
        mode: config.mode,
        supersteps: metrics.supersteps,
        block_loads: metrics.block_loads,
        per_job_iterations: &metrics.per_job_iterations,
        per_job_vertex_updates: &metrics.per_job_vertex_updates,
        wall_time_ms: metrics.wall_time.as_secs_f64() * 1e3,
        config,
    };
    serde_json::to_string_pretty(&doc).expect("metrics document serializes")
}

#[derive(Debug)]
pub struct RunOutcome {
    pub metrics: Metrics,
    /// False when the superstep limit stopped the run.
    pub converged: bool,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Loads the graph, runs every job to convergence and writes all outputs.
///
/// Hitting the superstep limit still writes `metrics.json` (with the
/// partial counters) and reports `converged: false`.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let edges = load_edge_list(&config.graph_path)?;
    let graph = Arc::new(build_graph(&edges)?);
    let blocks = partition_blocks(&graph, config.block_size)?;

    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
    let mut engine =
        Engine::new(graph, blocks, config.engine_config())?.with_output_dir(&config.out_dir);
    engine.record_events(config.trace.is_some());
    for spec in &config.jobs {
        engine.admit(spec.0)?;
    }

    let mut stagger = config.stagger.clone();
    stagger.sort_by_key(|s| s.superstep);
    let mut next = 0;
    let result = engine.run_with_hook(config.mode, |e| {
        while next < stagger.len() && stagger[next].superstep <= e.superstep() {
            e.admit(stagger[next].job.0)?;
            next += 1;
        }
        Ok(())
    });

    let (metrics, converged) = match result {
        Ok(m) => (m, true),
        Err(Error::SuperstepLimit { partial, .. }) => (*partial, false),
        Err(e) => return Err(e),
    };

    write_file(
        &config.out_dir.join("metrics.json"),
        &(metrics_json(config, &metrics) + "\n"),
    )?;
    if let Some(path) = &config.trace {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        for record in trace_records(engine.events()) {
            let line = serde_json::to_string(&record).expect("trace record serializes");
            writeln!(out, "{line}").map_err(|e| Error::io(path, e))?;
        }
        out.flush().map_err(|e| Error::io(path, e))?;
    }
    Ok(RunOutcome { metrics, converged })
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&config) {
        Ok(outcome) if outcome.converged => 0,
        Ok(outcome) => {
            eprintln!(
                "error: superstep limit {} reached after {} supersteps",
                config.max_supersteps, outcome.metrics.supersteps
            );
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
