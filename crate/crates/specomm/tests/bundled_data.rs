//! Golden-value checks on the bundled benchmark networks. Expected
//! values were computed once with an independent reference
//! implementation (dense eigensolver, brute-force counting) and frozen
//! here.

use std::collections::BTreeSet;

use specomm::datasets::{data_dir, registry};
use specomm::graph::{Graph, Label, Partition};
use specomm::metrics::modularity;
use specomm::sparsify::{similarity, sparsify, suggest_theta, SparsifyConfig};
use specomm::spectral::dense_spectrum_oracle;
use specomm::{run_pipeline, PipelineConfig, PipelineMode};

fn load(name: &str) -> (Graph, Partition) {
    let entry = registry().into_iter().find(|e| e.name == name).unwrap();
    entry.load(&data_dir()).unwrap()
}

#[test]
fn karate_counts_and_hub_degree() {
    let (g, truth) = load("karate");
    assert_eq!(g.vertex_count(), 34);
    assert_eq!(g.edge_count(), 78);
    assert_eq!(truth.group_count(), 2);
    assert_eq!(g.degree("1").unwrap(), 16);
}

#[test]
fn karate_similarity_on_the_1_2_edge() {
    // |N(1) ∩ N(2)| = 7 common neighbors, d_1 = 16
    let (g, _) = load("karate");
    let expected = {
        let n1: BTreeSet<&Label> = g.neighbors("1").unwrap().into_iter().collect();
        let n2: BTreeSet<&Label> = g.neighbors("2").unwrap().into_iter().collect();
        n1.intersection(&n2).count() as f64 / g.degree("1").unwrap() as f64
    };
    assert_eq!(similarity(&g, "1", "2").unwrap(), expected);
    assert_eq!(expected, 7.0 / 16.0);
}

#[test]
fn karate_truth_modularity() {
    let (g, truth) = load("karate");
    let q = modularity(&g, &truth).unwrap();
    assert!((q - 0.3714661406).abs() < 1e-9, "got {q}");
}

#[test]
fn karate_sparsified_stays_connected() {
    let (g, _) = load("karate");
    let (out, report) = sparsify(&g, &SparsifyConfig::new(0.15).unwrap()).unwrap();
    assert_eq!(report.removed_edges.len(), 9);
    assert_eq!(out.edge_count(), 69);
    assert_eq!(out.connected_components().group_count(), 1);
}

#[test]
fn karate_remove_edge_decrements() {
    let (mut g, _) = load("karate");
    g.remove_edge("1", "2").unwrap();
    assert_eq!(g.edge_count(), 77);
}

#[test]
fn karate_second_eigenvalue_matches_oracle_golden() {
    let (g, _) = load("karate");
    let pairs = dense_spectrum_oracle(&g).unwrap();
    assert!((pairs[1].value - 0.8677276707704837).abs() < 1e-10);
}

#[test]
fn karate_suggested_theta_in_recommended_range() {
    let (g, _) = load("karate");
    let theta = suggest_theta(&g).unwrap();
    assert!((0.10..=0.20).contains(&theta), "got {theta}");
    assert_eq!(theta, 0.175);
}

#[test]
fn karate_truth_community_subgraph_matches_brute_filter() {
    let (g, truth) = load("karate");
    let community = &truth.groups()[0];
    let sub = g.induced_subgraph(community.iter()).unwrap();
    let brute = g
        .edge_labels()
        .into_iter()
        .filter(|(u, v)| community.contains(u) && community.contains(v))
        .count();
    assert_eq!(sub.edge_count(), brute);
}

#[test]
fn dolphin_counts_and_truth_modularity() {
    let (g, truth) = load("dolphin");
    assert_eq!(g.vertex_count(), 62);
    assert_eq!(g.edge_count(), 159);
    assert_eq!(truth.group_count(), 2);
    let q = modularity(&g, &truth).unwrap();
    assert!((q - 0.3734820616).abs() < 1e-9, "got {q}");
}

#[test]
fn dolphin_sparsification_golden() {
    let (g, _) = load("dolphin");
    let (out, report) = sparsify(&g, &SparsifyConfig::new(0.15).unwrap()).unwrap();
    assert_eq!(report.removed_edges.len(), 20);
    assert_eq!(out.edge_count(), 139);
    assert_eq!(out.connected_components().group_count(), 1);
}

#[test]
fn dolphin_lite_misassigns_the_two_boundary_vertices() {
    let (g, truth) = load("dolphin");
    let outcome = run_pipeline(&g, &PipelineConfig::new(2, PipelineMode::Lite)).unwrap();
    let small_detected = outcome
        .partition
        .groups()
        .iter()
        .min_by_key(|c| c.len())
        .unwrap();
    let small_truth = truth.groups().iter().min_by_key(|c| c.len()).unwrap();
    let extra: Vec<&str> = small_detected
        .difference(small_truth)
        .map(|l| l.as_str())
        .collect();
    assert_eq!(extra, ["30", "39"]);
    assert!(small_truth.difference(small_detected).next().is_none());
}

#[test]
fn karate_confusion_table_marginals() {
    let (g, truth) = load("karate");
    let mut cfg = PipelineConfig::new(2, PipelineMode::Complete);
    cfg.theta = Some(0.15);
    let outcome = run_pipeline(&g, &cfg).unwrap();
    let table = specomm::confusion(&outcome.partition, &truth).unwrap();
    assert_eq!(table.total, 34);
    assert_eq!(table.row_sums.iter().sum::<usize>(), 34);
    assert_eq!(table.col_sums.iter().sum::<usize>(), 34);
}

#[test]
fn football_counts_and_truth_modularity() {
    let (g, truth) = load("football");
    assert_eq!(g.vertex_count(), 115);
    assert_eq!(g.edge_count(), 613);
    assert_eq!(truth.group_count(), 12);
    let q = modularity(&g, &truth).unwrap();
    assert!((q - 0.6005165407).abs() < 1e-9, "got {q}");
}

#[test]
fn football_sparsification_golden() {
    let (g, _) = load("football");
    let (out, report) = sparsify(&g, &SparsifyConfig::new(0.15).unwrap()).unwrap();
    assert_eq!(report.removed_edges.len(), 169);
    assert_eq!(out.edge_count(), 444);
    assert_eq!(out.connected_components().group_count(), 3);
}

#[test]
fn football_lite_modularity_golden() {
    let (g, _) = load("football");
    let outcome = run_pipeline(&g, &PipelineConfig::new(12, PipelineMode::Lite)).unwrap();
    let q = modularity(&g, &outcome.partition).unwrap();
    assert!((q - 0.5034715477).abs() < 1e-9, "got {q}");
}
