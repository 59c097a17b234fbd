//! Sweep the similarity threshold across its useful range and watch
//! recovery quality respond, the way one picks a threshold for a new
//! network.
//!
//! ```bash
//! cargo run --example theta_sweep
//! ```

use specomm::datasets::data_dir;
use specomm::{
    accuracy, modularity, nmi, run_pipeline, sparsify, suggest_theta, Graph, Partition,
    PipelineConfig, PipelineMode, SparsifyConfig,
};

fn main() -> specomm::Result<()> {
    let dir = data_dir();
    let g = Graph::read_edge_list(dir.join("karate.edges"))?;
    let truth = Partition::read_partition(dir.join("karate.truth"), &g)?;

    println!("theta  removed  components  Q      A      NMI");
    for step in 0..=12 {
        let theta = step as f64 * 0.05;
        let (sparsified, report) = sparsify(&g, &SparsifyConfig::new(theta)?)?;
        let mut cfg = PipelineConfig::new(2, PipelineMode::Complete);
        cfg.theta = Some(theta);
        let outcome = run_pipeline(&g, &cfg)?;
        println!(
            "{theta:<5.2}  {:>7}  {:>10}  {:.3}  {:.3}  {:.3}",
            report.removed_edges.len(),
            sparsified.connected_components().group_count(),
            modularity(&g, &outcome.partition)?,
            accuracy(&outcome.partition, &truth)?,
            nmi(&outcome.partition, &truth)?
        );
    }
    println!(
        "\nhistogram-based suggestion for this network: theta = {}",
        suggest_theta(&g)?
    );
    Ok(())
}
