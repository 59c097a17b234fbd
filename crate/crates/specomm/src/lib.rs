//! Community detection for undirected, unweighted networks by
//! similarity-based sparsification followed by repeated spectral
//! bisection.
//!
//! The pipeline has two stages. A sparsification pass scores every edge
//! from both endpoints by neighbor overlap (`|N(u) ∩ N(v)| / d_u`) and
//! drops edges that score below a threshold on both sides, subject to
//! low-degree guards that keep the network from shattering. A division
//! loop then seeds communities with the connected components and
//! repeatedly bisects whichever community's split maximizes modularity,
//! using the sign pattern of the second eigenvector of the random-walk
//! transition matrix `T = D⁻¹A`, until the requested community count is
//! reached. Quality is scored by modularity, matching accuracy, and
//! normalized mutual information.
//!
//! ```
//! use specomm::{Graph, PipelineConfig, PipelineMode, run_pipeline};
//!
//! let g = Graph::parse_edge_list(
//!     "a1 a2\na1 a3\na2 a3\nb1 b2\nb1 b3\nb2 b3\na3 b1\n",
//! )?;
//! let outcome = run_pipeline(&g, &PipelineConfig::new(2, PipelineMode::Lite))?;
//! assert_eq!(outcome.partition.group_count(), 2);
//! # Ok::<(), specomm::Error>(())
//! ```
//!
//! Runnable walkthroughs live in `examples/`; each major capability has
//! one (`cargo run --example detect_communities`, `--example
//! theta_sweep`, ...). The thin `specomm` binary exposes the same
//! operations as subcommands (`detect`, `sweep`, `eigvec`, `bench`).

pub mod cli;
pub mod datasets;
pub mod divisive;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod sparsify;
pub mod spectral;

pub use divisive::{
    detect, run_pipeline, DetectConfig, DetectOutcome, DetectStats, DetectWarning, DivisionTree,
    PipelineConfig, PipelineMode, PipelineOutcome, SelectionGraph,
};
pub use error::{Error, Result};
pub use graph::{Graph, Label, Partition};
pub use metrics::{accuracy, confusion, modularity, nmi, ConfusionTable};
pub use sparsify::{
    similarity, sparsify, suggest_theta, DegreeSource, SparsifyConfig, SparsifyReport,
    DEFAULT_THETA,
};
pub use spectral::{
    dense_spectrum_oracle, second_eigenpair, spectra_bisection, EigenPair, SolverConfig,
};
