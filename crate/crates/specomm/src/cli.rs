//! Command implementations behind the `specomm` binary: pipeline runs,
//! threshold sweeps, eigenvector dumps, and the benchmark harness.
//!
//! All logic lives here as library code; the binary only parses args
//! and forwards. Exit statuses: 0 success (warnings allowed), 1 usage
//! error, 2 data error, 3 algorithm failure, 4 benchmark mismatch.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::datasets::{data_dir, registry, DatasetEntry};
use crate::divisive::{run_pipeline, PipelineConfig, PipelineMode, SelectionGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::metrics::{accuracy, modularity, nmi};
use crate::sparsify::{sparsify, SparsifyConfig, DEFAULT_THETA};
use crate::spectral::{second_eigenpair, SolverConfig};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_ALGORITHM: i32 = 3;
pub const EXIT_BENCH_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "specomm",
    about = "Divisive spectral community detection with network sparsification",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect communities and score them against a ground truth.
    Detect(DetectArgs),
    /// Run the pipeline across a grid of similarity thresholds.
    Sweep(SweepArgs),
    /// Dump second-eigenvector components and their sign gap.
    Eigvec(EigvecArgs),
    /// Score the bundled benchmark networks against expected values.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Lite,
    Complete,
}

impl From<ModeArg> for PipelineMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Lite => PipelineMode::Lite,
            ModeArg::Complete => PipelineMode::Complete,
        }
    }
}

impl ModeArg {
    fn label(self) -> &'static str {
        match self {
            ModeArg::Lite => "lite",
            ModeArg::Complete => "complete",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelectionArg {
    Partitioned,
    Original,
}

impl From<SelectionArg> for SelectionGraph {
    fn from(s: SelectionArg) -> Self {
        match s {
            SelectionArg::Partitioned => SelectionGraph::Partitioned,
            SelectionArg::Original => SelectionGraph::Original,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Edge-list file.
    #[arg(long)]
    pub input: PathBuf,
    /// Number of communities to extract.
    #[arg(long)]
    pub k: usize,
    /// Similarity threshold for complete mode (default 0.15).
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, value_enum, default_value = "complete")]
    pub mode: ModeArg,
    /// Partition file to score the result against.
    #[arg(long)]
    pub ground_truth: Option<PathBuf>,
    /// Where to write the detected partition.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Graph used for modularity during split selection.
    #[arg(long, value_enum, default_value = "partitioned")]
    pub selection_graph: SelectionArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub ground_truth: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    pub theta_min: f64,
    #[arg(long, default_value_t = 0.6)]
    pub theta_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub theta_step: f64,
    #[arg(long, value_enum, default_value = "partitioned")]
    pub selection_graph: SelectionArg,
}

#[derive(Debug, Args)]
pub struct EigvecArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Also dump the eigenvector of the sparsified graph at this
    /// threshold.
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated dataset names (default: all registered).
    #[arg(long, value_delimiter = ',')]
    pub datasets: Option<Vec<String>>,
    /// Restrict to one mode.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

/// Dispatches a parsed command line, printing to stdout/stderr, and
/// returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Detect(args) => cmd_detect(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Eigvec(args) => cmd_eigvec(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_data_error() {
                EXIT_DATA
            } else {
                EXIT_ALGORITHM
            }
        }
    }
}

fn pipeline_config(
    k: usize,
    mode: ModeArg,
    theta: Option<f64>,
    sel: SelectionArg,
) -> PipelineConfig {
    PipelineConfig {
        k,
        mode: mode.into(),
        theta,
        selection: sel.into(),
        solver: SolverConfig::default(),
    }
}

fn network_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn cmd_detect(args: &DetectArgs) -> Result<i32> {
    let graph = Graph::read_edge_list(&args.input)?;
    let cfg = pipeline_config(args.k, args.mode, args.theta, args.selection_graph);
    let outcome = run_pipeline(&graph, &cfg)?;
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    if let Some(path) = &args.output {
        std::fs::write(path, outcome.partition.to_file_string())?;
    }
    let name = network_name(&args.input);
    let mode = args.mode.label();
    // Q is always reported on the original network
    let q = modularity(&graph, &outcome.partition)?;
    let scores = match &args.ground_truth {
        Some(path) => {
            let truth = Partition::read_partition(path, &graph)?;
            Some((
                accuracy(&outcome.partition, &truth)?,
                nmi(&outcome.partition, &truth)?,
            ))
        }
        None => None,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        FormatArg::Text => {
            writeln!(out, "network: {name}")?;
            writeln!(out, "mode:    {mode}")?;
            writeln!(out, "communities: {}", outcome.partition.group_count())?;
            if let Some(report) = &outcome.report {
                writeln!(
                    out,
                    "edges removed by sparsification: {}",
                    report.removed_edges.len()
                )?;
            }
            writeln!(out, "Q = {:.3}", q)?;
            if let Some((a, i)) = scores {
                writeln!(out, "A = {:.3}", a)?;
                writeln!(out, "NMI = {:.3}", i)?;
            }
        }
        FormatArg::Csv => {
            writeln!(out, "network,mode,Q,A,NMI")?;
            match scores {
                Some((a, i)) => writeln!(
                    out,
                    "{},{},{:.6},{:.6},{:.6}",
                    csv_field(&name),
                    mode,
                    q,
                    a,
                    i
                )?,
                None => writeln!(out, "{},{},{:.6},,", csv_field(&name), mode, q)?,
            }
        }
    }
    Ok(EXIT_SUCCESS)
}

/// Grid values in milli-units so 0.05 steps accumulate exactly.
fn theta_grid(min: f64, max: f64, step: f64) -> Result<Vec<i64>> {
    let to_milli = |x: f64| -> i64 { (x * 1000.0).round() as i64 };
    let (lo, hi, inc) = (to_milli(min), to_milli(max), to_milli(step));
    if inc <= 0 || lo < 0 || hi < lo {
        return Err(Error::InvalidConfig(format!(
            "bad theta grid: min {min}, max {max}, step {step}"
        )));
    }
    Ok((lo..=hi).step_by(inc as usize).collect())
}

fn fmt_theta(milli: i64) -> String {
    format!("{}", milli as f64 / 1000.0)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let graph = Graph::read_edge_list(&args.input)?;
    let truth = Partition::read_partition(&args.ground_truth, &graph)?;
    let grid = theta_grid(args.theta_min, args.theta_max, args.theta_step)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "theta,components_after_sparsify,edges_removed,Q,A,NMI")?;
    for milli in grid {
        let theta = milli as f64 / 1000.0;
        let scfg = SparsifyConfig::new(theta)?;
        let (sparsified, report) = sparsify(&graph, &scfg)?;
        let components = sparsified.connected_components().group_count();
        let cfg = PipelineConfig {
            k: args.k,
            mode: PipelineMode::Complete,
            theta: Some(theta),
            selection: args.selection_graph.into(),
            solver: SolverConfig::default(),
        };
        let outcome = run_pipeline(&graph, &cfg)?;
        for warning in &outcome.warnings {
            eprintln!("warning: theta {}: {warning}", fmt_theta(milli));
        }
        let q = modularity(&graph, &outcome.partition)?;
        let a = accuracy(&outcome.partition, &truth)?;
        let i = nmi(&outcome.partition, &truth)?;
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{:.6}",
            fmt_theta(milli),
            components,
            report.removed_edges.len(),
            q,
            a,
            i
        )?;
    }
    Ok(EXIT_SUCCESS)
}

/// Second-eigenvector dump of a graph's largest component: value per
/// vertex plus the sign gap (smallest positive minus largest negative
/// component).
fn eigvec_rows(graph: &Graph, variant: &str) -> Result<(Vec<(String, f64)>, f64)> {
    let components = graph.connected_components();
    let largest = &components.groups()[0];
    if largest.len() < graph.vertex_count() {
        eprintln!(
            "note: {} graph is disconnected; using its largest component ({} of {} vertices)",
            variant,
            largest.len(),
            graph.vertex_count()
        );
    }
    let sub = graph.induced_subgraph(largest.iter())?;
    let pair = second_eigenpair(&sub, &SolverConfig::default())?;
    let mut rows: Vec<(String, f64)> = sub
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str().to_owned(), pair.vector[i]))
        .collect();
    rows.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let smallest_positive = rows
        .iter()
        .map(|r| r.1)
        .filter(|&v| v > 0.0)
        .fold(f64::INFINITY, f64::min);
    let largest_negative = rows
        .iter()
        .map(|r| r.1)
        .filter(|&v| v < 0.0)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((rows, smallest_positive - largest_negative))
}

pub fn cmd_eigvec(args: &EigvecArgs) -> Result<i32> {
    let graph = Graph::read_edge_list(&args.input)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "vertex,component_value,variant")?;
    let mut gaps: Vec<(&str, f64)> = Vec::new();
    let (rows, gap) = eigvec_rows(&graph, "original")?;
    for (vertex, value) in rows {
        writeln!(out, "{},{:.9},original", csv_field(&vertex), value)?;
    }
    gaps.push(("original", gap));
    if let Some(theta) = args.theta {
        let (sparsified, _) = sparsify(&graph, &SparsifyConfig::new(theta)?)?;
        let (rows, gap) = eigvec_rows(&sparsified, "sparsified")?;
        for (vertex, value) in rows {
            writeln!(out, "{},{:.9},sparsified", csv_field(&vertex), value)?;
        }
        gaps.push(("sparsified", gap));
    }
    for (variant, gap) in gaps {
        writeln!(out, "# gap {variant} = {:.9}", gap)?;
    }
    Ok(EXIT_SUCCESS)
}

struct BenchRow {
    network: String,
    mode: &'static str,
    q: f64,
    a: f64,
    nmi: f64,
    expected: String,
    status: String,
}

fn bench_dataset(
    entry: &DatasetEntry,
    dir: &Path,
    mode_filter: Option<ModeArg>,
) -> Result<(Vec<BenchRow>, bool)> {
    let (graph, truth) = entry.load(dir)?;
    let mut rows = Vec::new();
    let mut failed = false;
    let mut nmi_by_mode = [f64::NAN, f64::NAN];
    for (slot, mode) in [(0, ModeArg::Lite), (1, ModeArg::Complete)] {
        if mode_filter.is_some() && mode_filter != Some(mode) {
            continue;
        }
        let cfg = pipeline_config(
            entry.k,
            mode,
            Some(DEFAULT_THETA),
            SelectionArg::Partitioned,
        );
        let outcome = run_pipeline(&graph, &cfg)?;
        for warning in &outcome.warnings {
            eprintln!("warning: {} {}: {warning}", entry.name, mode.label());
        }
        let q = modularity(&graph, &outcome.partition)?;
        let a = accuracy(&outcome.partition, &truth)?;
        let i = nmi(&outcome.partition, &truth)?;
        nmi_by_mode[slot] = i;
        let expected = match mode {
            ModeArg::Lite => entry.expected_lite,
            ModeArg::Complete => entry.expected_proposal,
        };
        let (expected_text, status) = match expected {
            Some(exp) => {
                let ok = exp.check(q, a, i);
                let text = format!("({:.3}, {:.3}, {:.3})", exp.q, exp.a, exp.nmi);
                let status = match (entry.advisory, ok) {
                    (false, true) => "PASS",
                    (false, false) => {
                        failed = true;
                        "FAIL"
                    }
                    (true, true) => "ADVISORY-PASS",
                    (true, false) => "ADVISORY-MISS",
                };
                (text, status.to_owned())
            }
            None => (String::from("-"), String::from("-")),
        };
        rows.push(BenchRow {
            network: entry.name.to_owned(),
            mode: if mode == ModeArg::Lite {
                "lite"
            } else {
                "proposal"
            },
            q,
            a,
            nmi: i,
            expected: expected_text,
            status,
        });
    }
    if entry.lite_nmi_strictly_worse && mode_filter.is_none() {
        let ok = nmi_by_mode[0] < nmi_by_mode[1];
        if !ok {
            failed = true;
        }
        rows.push(BenchRow {
            network: entry.name.to_owned(),
            mode: "lite<proposal",
            q: f64::NAN,
            a: f64::NAN,
            nmi: nmi_by_mode[0],
            expected: format!("NMI {:.3} < {:.3}", nmi_by_mode[0], nmi_by_mode[1]),
            status: if ok { "PASS".into() } else { "FAIL".into() },
        });
    }
    Ok((rows, failed))
}

pub fn cmd_bench(args: &BenchArgs) -> Result<i32> {
    let started = Instant::now();
    let dir = data_dir();
    let entries: Vec<DatasetEntry> = registry()
        .into_iter()
        .filter(|e| match &args.datasets {
            Some(filter) => filter.iter().any(|f| f == e.name),
            None => true,
        })
        .collect();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if entries.is_empty() {
        writeln!(out, "no registered dataset matches the filter")?;
        return Ok(EXIT_SUCCESS);
    }
    writeln!(
        out,
        "{:<14} {:<14} {:>8} {:>8} {:>8}  {:<24} status",
        "network", "mode", "Q", "A", "NMI", "expected (Q, A, NMI)"
    )?;
    let mut any_failure = false;
    for entry in &entries {
        if !entry.is_present(&dir) {
            writeln!(
                out,
                "{:<14} {:<14} {:>8} {:>8} {:>8}  {:<24} SKIPPED (files not found in {})",
                entry.name,
                "-",
                "-",
                "-",
                "-",
                "-",
                dir.display()
            )?;
            if let Some(how) = entry.acquisition {
                writeln!(out, "  to supply: {how}")?;
            }
            continue;
        }
        let (rows, failed) = bench_dataset(entry, &dir, args.mode)?;
        any_failure |= failed;
        for row in rows {
            let fmt = |x: f64| {
                if x.is_nan() {
                    String::from("-")
                } else {
                    format!("{:.3}", x)
                }
            };
            writeln!(
                out,
                "{:<14} {:<14} {:>8} {:>8} {:>8}  {:<24} {}",
                row.network,
                row.mode,
                fmt(row.q),
                fmt(row.a),
                fmt(row.nmi),
                row.expected,
                row.status
            )?;
        }
    }
    writeln!(out, "elapsed: {:.2}s", started.elapsed().as_secs_f64())?;
    if any_failure {
        writeln!(out, "benchmark: FAIL")?;
        Ok(EXIT_BENCH_MISMATCH)
    } else {
        writeln!(out, "benchmark: PASS")?;
        Ok(EXIT_SUCCESS)
    }
}
