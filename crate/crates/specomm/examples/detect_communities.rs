//! The full pipeline on a benchmark network, in both variants: with
//! the sparsification pre-pass (complete) and without (lite), scored
//! against the known communities.
//!
//! ```bash
//! cargo run --example detect_communities
//! ```

use specomm::datasets::data_dir;
use specomm::{
    accuracy, modularity, nmi, run_pipeline, Graph, Partition, PipelineConfig, PipelineMode,
};

fn main() -> specomm::Result<()> {
    let dir = data_dir();
    let g = Graph::read_edge_list(dir.join("karate.edges"))?;
    let truth = Partition::read_partition(dir.join("karate.truth"), &g)?;

    for mode in [PipelineMode::Lite, PipelineMode::Complete] {
        let mut cfg = PipelineConfig::new(2, mode);
        cfg.theta = Some(0.15);
        let outcome = run_pipeline(&g, &cfg)?;
        // quality is always judged on the original network
        let q = modularity(&g, &outcome.partition)?;
        let a = accuracy(&outcome.partition, &truth)?;
        let i = nmi(&outcome.partition, &truth)?;
        println!("{mode:?}:");
        if let Some(report) = &outcome.report {
            println!(
                "  sparsification removed {} edges",
                report.removed_edges.len()
            );
        }
        println!(
            "  {} communities, sizes {:?}",
            outcome.partition.group_count(),
            outcome
                .partition
                .groups()
                .iter()
                .map(|c| c.len())
                .collect::<Vec<_>>()
        );
        println!("  Q = {q:.3}   A = {a:.3}   NMI = {i:.3}");
        println!(
            "  bisections computed: {} (each community at most once)\n",
            outcome.stats.bisections_computed
        );
    }
    Ok(())
}
