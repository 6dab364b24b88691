//! The file-based workflow: write an edge list, run it as the binary would,
//! and read back the result files.

use std::fs;

use twolevel::cli::{self, JobSpec, RunConfig};
use twolevel::{synth, TraceRecord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("twolevel-edge-list-run");
    fs::create_dir_all(&dir)?;
    let graph_path = dir.join("graph.el");
    let edges = synth::random_edges(5_000, 5.0, true, 8);
    synth::write_edge_list(&edges, fs::File::create(&graph_path)?)?;

    let mut config = RunConfig::new(
        &graph_path,
        vec!["pagerank".parse::<JobSpec>()?, "sssp:src=0".parse()?],
        dir.join("out"),
    );
    config.block_size = 128;
    config.trace = Some(dir.join("trace.jsonl"));
    config.stagger = vec!["4:pagerank:d=0.6".parse()?];

    let outcome = cli::run(&config)?;
    println!("converged: {}", outcome.converged);
    println!("{}", fs::read_to_string(config.out_dir.join("metrics.json"))?);

    let mut names: Vec<_> = fs::read_dir(&config.out_dir)?
        .map(|e| e.map(|e| e.file_name().to_string_lossy().into_owned()))
        .collect::<Result<_, _>>()?;
    names.sort();
    println!("outputs in {}: {names:?}", config.out_dir.display());
    let head: Vec<String> = fs::read_to_string(config.out_dir.join("job_1.txt"))?
        .lines()
        .take(3)
        .map(str::to_owned)
        .collect();
    println!("job_1.txt starts with {head:?}");

    let trace = fs::read_to_string(dir.join("trace.jsonl"))?;
    let records: Vec<TraceRecord> = trace.lines().map(serde_json::from_str).collect::<Result<_, _>>()?;
    let shared = records.iter().filter(|r| r.jobs.len() > 1).count();
    println!("{} activations in the trace, {shared} shared by several jobs", records.len());
    Ok(())
}
