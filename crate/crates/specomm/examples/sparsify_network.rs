//! Score edges by neighbor overlap and strip the weak ones, watching
//! how the threshold changes what survives.
//!
//! ```bash
//! cargo run --example sparsify_network
//! ```

use specomm::datasets::data_dir;
use specomm::{similarity, sparsify, suggest_theta, Graph, SparsifyConfig};

fn main() -> specomm::Result<()> {
    let g = Graph::read_edge_list(data_dir().join("karate.edges"))?;
    println!(
        "karate club: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );

    // the similarity is asymmetric: each edge has two scores
    for (u, v) in [("1", "2"), ("1", "32"), ("33", "34")] {
        println!(
            "similarity({u}, {v}) = {:.4}   similarity({v}, {u}) = {:.4}",
            similarity(&g, u, v)?,
            similarity(&g, v, u)?
        );
    }

    println!("\nsuggested threshold: {}", suggest_theta(&g)?);

    for theta in [0.0, 0.15, 0.35, 0.6] {
        let (out, report) = sparsify(&g, &SparsifyConfig::new(theta)?)?;
        println!(
            "theta {theta:<4}: removed {:>2} edges ({} kept by the dmin<=2 guard, {} by the dmin=3 rule), {} components",
            report.removed_edges.len(),
            report.kept_by_guard,
            report.kept_by_degree3_guard,
            out.connected_components().group_count()
        );
    }

    let (_, report) = sparsify(&g, &SparsifyConfig::new(0.15)?)?;
    let removed: Vec<String> = report
        .removed_edges
        .iter()
        .map(|(u, v)| format!("({u},{v})"))
        .collect();
    println!("\nedges removed at theta 0.15: {}", removed.join(" "));
    Ok(())
}
