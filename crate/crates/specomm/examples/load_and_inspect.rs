//! Load a network from an edge-list file and poke at its structure:
//! vertex and edge counts, degrees, neighborhoods, connected components.
//!
//! ```bash
//! cargo run --example load_and_inspect
//! ```

use specomm::datasets::data_dir;
use specomm::Graph;

fn main() -> specomm::Result<()> {
    let path = data_dir().join("karate.edges");
    let g = Graph::read_edge_list(&path)?;
    println!("loaded {}", path.display());
    println!("vertices: {}  edges: {}", g.vertex_count(), g.edge_count());

    let hub = g
        .labels()
        .iter()
        .max_by_key(|l| g.degree(l.as_str()).unwrap())
        .unwrap();
    println!(
        "highest-degree vertex: {} with {} neighbors",
        hub,
        g.degree(hub.as_str())?
    );
    let neighbors = g.neighbors(hub.as_str())?;
    let listed: Vec<&str> = neighbors.iter().map(|l| l.as_str()).collect();
    println!("its neighborhood: {}", listed.join(" "));

    let components = g.connected_components();
    println!("connected components: {}", components.group_count());

    // carve out the hub's neighborhood as a subgraph
    let mut selection: Vec<_> = neighbors.into_iter().cloned().collect();
    selection.push(hub.clone());
    let sub = g.induced_subgraph(selection.iter())?;
    println!(
        "subgraph induced by the hub and its neighbors: {} vertices, {} edges",
        sub.vertex_count(),
        sub.edge_count()
    );
    Ok(())
}
