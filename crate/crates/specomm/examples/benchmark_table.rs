//! Score every bundled benchmark network in both pipeline variants and
//! print the comparison table, including the registered expectations.
//!
//! ```bash
//! cargo run --example benchmark_table
//! ```

use specomm::datasets::{data_dir, registry};
use specomm::{accuracy, modularity, nmi, run_pipeline, PipelineConfig, PipelineMode};

fn main() -> specomm::Result<()> {
    let dir = data_dir();
    println!(
        "{:<14} {:<10} {:>7} {:>7} {:>7}",
        "network", "mode", "Q", "A", "NMI"
    );
    for entry in registry() {
        if !entry.is_present(&dir) {
            println!(
                "{:<14} (not bundled; see `specomm bench` for instructions)",
                entry.name
            );
            continue;
        }
        let (g, truth) = entry.load(&dir)?;
        for (mode, label) in [
            (PipelineMode::Lite, "lite"),
            (PipelineMode::Complete, "proposal"),
        ] {
            let mut cfg = PipelineConfig::new(entry.k, mode);
            cfg.theta = Some(0.15);
            let outcome = run_pipeline(&g, &cfg)?;
            println!(
                "{:<14} {:<10} {:>7.3} {:>7.3} {:>7.3}",
                entry.name,
                label,
                modularity(&g, &outcome.partition)?,
                accuracy(&outcome.partition, &truth)?,
                nmi(&outcome.partition, &truth)?
            );
        }
    }
    println!("\n(the `specomm bench` subcommand adds PASS/FAIL checks and exit status)");
    Ok(())
}
