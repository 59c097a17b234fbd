//! Registry of the benchmark networks: bundled edge lists with ground
//! truth, expected scores for the benchmark harness, and acquisition
//! notes for the two networks that do not ship in the repo.

use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::graph::{Graph, Partition};

/// Environment variable overriding the bundled dataset directory.
pub const DATA_DIR_ENV: &str = "SPECOMM_DATA_DIR";

/// Expected `(Q, A, NMI)` with per-metric tolerances.
#[derive(Debug, Clone, Copy)]
pub struct ExpectedScores {
    pub q: f64,
    pub q_tol: f64,
    pub a: f64,
    pub a_tol: f64,
    pub nmi: f64,
    pub nmi_tol: f64,
}

impl ExpectedScores {
    pub fn check(&self, q: f64, a: f64, nmi: f64) -> bool {
        (q - self.q).abs() <= self.q_tol
            && (a - self.a).abs() <= self.a_tol
            && (nmi - self.nmi).abs() <= self.nmi_tol
    }
}

#[derive(Debug, Clone)]
pub struct DatasetEntry {
    pub name: &'static str,
    pub edge_file: &'static str,
    pub truth_file: &'static str,
    /// Ground-truth community count, fed to the division loop as K.
    pub k: usize,
    pub expected_lite: Option<ExpectedScores>,
    pub expected_proposal: Option<ExpectedScores>,
    /// Expected-value checks are informational only for datasets with
    /// multiple circulating variants.
    pub advisory: bool,
    /// The lite run must score strictly lower NMI than the complete run.
    pub lite_nmi_strictly_worse: bool,
    /// How to obtain the files when they are not bundled.
    pub acquisition: Option<&'static str>,
}

impl DatasetEntry {
    pub fn edge_path(&self, dir: &Path) -> PathBuf {
        dir.join(self.edge_file)
    }

    pub fn truth_path(&self, dir: &Path) -> PathBuf {
        dir.join(self.truth_file)
    }

    pub fn is_present(&self, dir: &Path) -> bool {
        self.edge_path(dir).is_file() && self.truth_path(dir).is_file()
    }

    pub fn load(&self, dir: &Path) -> Result<(Graph, Partition)> {
        let graph = Graph::read_edge_list(self.edge_path(dir))?;
        let truth = Partition::read_partition(self.truth_path(dir), &graph)?;
        Ok((graph, truth))
    }
}

/// Directory holding the dataset files: `SPECOMM_DATA_DIR` when set,
/// otherwise the crate's bundled `data/`.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

/// All registered benchmark networks, in report order.
pub fn registry() -> Vec<DatasetEntry> {
    vec![
        DatasetEntry {
            name: "karate",
            edge_file: "karate.edges",
            truth_file: "karate.truth",
            k: 2,
            expected_lite: Some(ExpectedScores {
                q: 0.360,
                q_tol: 0.001,
                a: 0.971,
                a_tol: 0.001,
                nmi: 0.836,
                nmi_tol: 0.005,
            }),
            expected_proposal: Some(ExpectedScores {
                q: 0.371,
                q_tol: 0.001,
                a: 1.000,
                a_tol: 1e-12,
                nmi: 1.000,
                nmi_tol: 1e-12,
            }),
            advisory: false,
            lite_nmi_strictly_worse: false,
            acquisition: None,
        },
        DatasetEntry {
            name: "dolphin",
            edge_file: "dolphins.edges",
            truth_file: "dolphins.truth",
            k: 2,
            expected_lite: Some(ExpectedScores {
                q: 0.385,
                q_tol: 0.001,
                a: 0.968,
                a_tol: 0.001,
                nmi: 0.814,
                nmi_tol: 0.005,
            }),
            expected_proposal: Some(ExpectedScores {
                q: 0.385,
                q_tol: 0.001,
                a: 0.968,
                a_tol: 0.001,
                nmi: 0.814,
                nmi_tol: 0.005,
            }),
            advisory: false,
            lite_nmi_strictly_worse: false,
            acquisition: None,
        },
        DatasetEntry {
            name: "football",
            edge_file: "football.edges",
            truth_file: "football.truth",
            k: 12,
            expected_lite: None,
            expected_proposal: Some(ExpectedScores {
                q: 0.601,
                q_tol: 0.001,
                a: 1.000,
                a_tol: 1e-12,
                nmi: 1.000,
                nmi_tol: 1e-12,
            }),
            advisory: false,
            lite_nmi_strictly_worse: true,
            acquisition: None,
        },
        DatasetEntry {
            name: "risk_map",
            edge_file: "risk_map.edges",
            truth_file: "risk_map.truth",
            k: 6,
            expected_lite: None,
            expected_proposal: Some(ExpectedScores {
                q: 0.631,
                q_tol: 0.005,
                a: 0.976,
                a_tol: 0.005,
                nmi: 0.956,
                nmi_tol: 0.01,
            }),
            advisory: true,
            lite_nmi_strictly_worse: false,
            acquisition: Some(
                "adjacency of the 42 Risk board territories grouped into 6 continents; \
                 transcribe the board (or convert Steinhaeuser & Chawla's map file) into \
                 risk_map.edges / risk_map.truth using territory names as labels",
            ),
        },
        DatasetEntry {
            name: "collaboration",
            edge_file: "collaboration.edges",
            truth_file: "collaboration.truth",
            k: 6,
            expected_lite: None,
            expected_proposal: Some(ExpectedScores {
                q: 0.740,
                q_tol: 0.005,
                a: 0.949,
                a_tol: 0.005,
                nmi: 0.936,
                nmi_tol: 0.01,
            }),
            advisory: true,
            lite_nmi_strictly_worse: false,
            acquisition: Some(
                "Santa Fe Institute collaboration network (118 scientists, 197 edges, \
                 6 specialities); convert the published GML to collaboration.edges / \
                 collaboration.truth with one `scientist speciality` line per vertex",
            ),
        },
    ]
}
