//! One spectral bisection, up close: the second eigenpair of the
//! random-walk transition matrix and the sign split it induces.
//!
//! ```bash
//! cargo run --example bisect_graph
//! ```

use specomm::datasets::data_dir;
use specomm::{second_eigenpair, spectra_bisection, Graph, SolverConfig};

fn main() -> specomm::Result<()> {
    // two triangles joined by a single bridge: the sign pattern finds
    // the bridge without being told where it is
    let toy = Graph::parse_edge_list("a b\nb c\nc a\nd e\ne f\nf d\nc d\n")?;
    let pair = second_eigenpair(&toy, &SolverConfig::default())?;
    println!("bridged triangles, second eigenvalue: {:.6}", pair.value);
    for (i, x) in pair.vector.iter().enumerate() {
        println!("  {} {:+.4}", toy.label(i), x);
    }
    let (c1, c2) = spectra_bisection(&toy, &SolverConfig::default())?;
    println!("split: {:?} | {:?}\n", side(&c1), side(&c2));

    let karate = Graph::read_edge_list(data_dir().join("karate.edges"))?;
    let pair = second_eigenpair(&karate, &SolverConfig::default())?;
    println!("karate club, second eigenvalue: {:.6}", pair.value);
    let (c1, c2) = spectra_bisection(&karate, &SolverConfig::default())?;
    println!("split sizes: {} vs {}", c1.len(), c2.len());
    Ok(())
}

fn side(labels: &std::collections::BTreeSet<specomm::Label>) -> Vec<&str> {
    labels.iter().map(|l| l.as_str()).collect()
}
