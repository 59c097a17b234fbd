//! Repeated bisection driver: seed communities with connected
//! components, then split whichever community's bisection yields the
//! best modularity until the target count is reached. Bisections are
//! memoized in a division tree, so no community is ever bisected twice.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, Partition};
use crate::metrics::modularity;
use crate::sparsify::{sparsify, SparsifyConfig, SparsifyReport, DEFAULT_THETA};
use crate::spectral::{spectra_bisection, SolverConfig};

/// Which graph the candidate-selection modularity is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionGraph {
    /// The graph being divided (the sparsified one, in the complete
    /// pipeline). This is what the division loop actually receives.
    #[default]
    Partitioned,
    /// The pre-sparsification graph.
    Original,
}

#[derive(Debug, Clone, Copy)]
pub struct DetectConfig {
    /// Target community count.
    pub k: usize,
    pub modularity_graph: SelectionGraph,
    pub solver: SolverConfig,
}

impl DetectConfig {
    pub fn new(k: usize) -> Self {
        DetectConfig {
            k,
            modularity_graph: SelectionGraph::default(),
            solver: SolverConfig::default(),
        }
    }

    pub fn with_selection(mut self, sel: SelectionGraph) -> Self {
        self.modularity_graph = sel;
        self
    }
}

/// Why a run returned fewer or more communities than requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectWarning {
    /// The graph fell apart into more components than the target count;
    /// the components are returned as-is (the loop cannot merge).
    ComponentsExceedTarget { components: usize, k: usize },
    /// All remaining communities are singletons; nothing left to split.
    OnlySingletonsRemain { reached: usize, k: usize },
}

impl std::fmt::Display for DetectWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DetectWarning::ComponentsExceedTarget { components, k } => write!(
                f,
                "initial component count {components} exceeds the requested {k} communities; returning components unchanged"
            ),
            DetectWarning::OnlySingletonsRemain { reached, k } => write!(
                f,
                "every community is a singleton after {reached} of {k} requested communities"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DetectStats {
    /// Eigenproblem bisections actually computed (memoization means at
    /// most one per community ever created).
    pub bisections_computed: usize,
    /// Communities that ever existed: initial components plus two per
    /// committed division.
    pub communities_created: usize,
}

#[derive(Debug, Clone)]
pub struct DetectOutcome {
    pub partition: Partition,
    pub warnings: Vec<DetectWarning>,
    pub stats: DetectStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeStatus {
    LiveLeaf,
    Internal,
    Sentinel,
}

#[derive(Debug, Clone)]
struct TreeNode {
    members: BTreeSet<usize>,
    status: NodeStatus,
    /// Cached bisection halves, attached before the split is committed.
    sentinels: Option<(usize, usize)>,
}

/// Memoized record of the division procedure. Nodes live in an arena
/// with O(1) id lookup; the live leaves are the current community
/// structure at every point in time.
#[derive(Debug, Clone, Default)]
pub struct DivisionTree {
    nodes: Vec<TreeNode>,
    live: Vec<usize>,
}

impl DivisionTree {
    /// Builds the initial tree: the whole vertex set at the root and,
    /// when the graph starts disconnected, a right-leaning chain peeling
    /// off one component per level.
    pub(crate) fn from_components(components: Vec<BTreeSet<usize>>) -> Self {
        let mut tree = DivisionTree::default();
        let all: BTreeSet<usize> = components.iter().flatten().copied().collect();
        let root = tree.push(all, NodeStatus::LiveLeaf);
        if components.len() <= 1 {
            tree.live.push(root);
            return tree;
        }
        // chain: left child = next component, right child = the rest
        let mut rest_node = root;
        let mut remaining: BTreeSet<usize> = tree.nodes[root].members.clone();
        for (i, comp) in components.iter().enumerate() {
            if i == components.len() - 1 {
                tree.live.push(rest_node);
                break;
            }
            tree.nodes[rest_node].status = NodeStatus::Internal;
            let left = tree.push(comp.clone(), NodeStatus::LiveLeaf);
            remaining = remaining.difference(comp).copied().collect();
            let right = tree.push(remaining.clone(), NodeStatus::LiveLeaf);
            tree.nodes[rest_node].sentinels = Some((left, right));
            tree.live.push(left);
            rest_node = right;
        }
        tree
    }

    fn push(&mut self, members: BTreeSet<usize>, status: NodeStatus) -> usize {
        self.nodes.push(TreeNode {
            members,
            status,
            sentinels: None,
        });
        self.nodes.len() - 1
    }

    pub(crate) fn live_leaves(&self) -> &[usize] {
        &self.live
    }

    pub(crate) fn members(&self, id: usize) -> &BTreeSet<usize> {
        &self.nodes[id].members
    }

    fn sentinels(&self, id: usize) -> Option<(usize, usize)> {
        self.nodes[id].sentinels
    }

    /// Caches a community's bisection halves as sentinel children.
    fn attach_sentinels(
        &mut self,
        id: usize,
        left: BTreeSet<usize>,
        right: BTreeSet<usize>,
    ) -> (usize, usize) {
        debug_assert!(self.nodes[id].sentinels.is_none());
        debug_assert!(left.is_disjoint(&right));
        debug_assert_eq!(
            left.union(&right).count(),
            self.nodes[id].members.len(),
            "sentinel halves must partition the parent"
        );
        let l = self.push(left, NodeStatus::Sentinel);
        let r = self.push(right, NodeStatus::Sentinel);
        self.nodes[id].sentinels = Some((l, r));
        (l, r)
    }

    /// Accepts a community's cached bisection as the real division: the
    /// sentinels become live leaves and the parent becomes internal.
    fn commit(&mut self, id: usize) {
        let (l, r) = self.nodes[id].sentinels.expect("commit requires sentinels");
        self.nodes[id].status = NodeStatus::Internal;
        self.nodes[l].status = NodeStatus::LiveLeaf;
        self.nodes[r].status = NodeStatus::LiveLeaf;
        self.live.retain(|&x| x != id);
        self.live.push(l);
        self.live.push(r);
    }

    /// Test hook: live leaves must be pairwise disjoint and cover the
    /// root's vertex set, and committed children partition their parent.
    #[cfg(test)]
    fn check_invariants(&self) {
        let root_members = &self.nodes[0].members;
        let mut seen = BTreeSet::new();
        for &leaf in &self.live {
            assert_eq!(self.nodes[leaf].status, NodeStatus::LiveLeaf);
            for &v in &self.nodes[leaf].members {
                assert!(seen.insert(v), "live leaves overlap");
            }
        }
        assert_eq!(&seen, root_members, "live leaves must cover the root");
        for node in &self.nodes {
            if node.status == NodeStatus::Internal {
                let (l, r) = node.sentinels.expect("internal nodes have children");
                let union: BTreeSet<usize> = self.nodes[l]
                    .members
                    .union(&self.nodes[r].members)
                    .copied()
                    .collect();
                assert_eq!(union, node.members);
            }
        }
    }
}

/// Runs the repeated-bisection division of `g` into `cfg.k`
/// communities. `original` is the pre-sparsification graph (equal to
/// `g` in lite mode); it must share `g`'s vertex set and is consulted
/// when `cfg.modularity_graph` selects it.
pub fn detect(g: &Graph, cfg: &DetectConfig, original: &Graph) -> Result<DetectOutcome> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if cfg.k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".to_owned()));
    }
    if cfg.k > g.vertex_count() {
        return Err(Error::TargetExceedsVertices {
            k: cfg.k,
            n: g.vertex_count(),
        });
    }
    if !g.same_vertices(original) {
        return Err(Error::UniverseMismatch);
    }
    cfg.solver.validate()?;

    let selection_graph = match cfg.modularity_graph {
        SelectionGraph::Partitioned => g,
        SelectionGraph::Original => original,
    };

    let components = g.components_idx();
    let mut stats = DetectStats {
        bisections_computed: 0,
        communities_created: components.len(),
    };
    let mut warnings = Vec::new();
    let mut tree = DivisionTree::from_components(components);

    if tree.live_leaves().len() > cfg.k {
        warnings.push(DetectWarning::ComponentsExceedTarget {
            components: tree.live_leaves().len(),
            k: cfg.k,
        });
        return Ok(DetectOutcome {
            partition: partition_of(g, &tree),
            warnings,
            stats,
        });
    }

    while tree.live_leaves().len() < cfg.k {
        // every splittable live community is a candidate; its bisection
        // is computed once and cached on the tree
        let candidates: Vec<usize> = tree
            .live_leaves()
            .iter()
            .copied()
            .filter(|&id| tree.members(id).len() >= 2)
            .collect();
        if candidates.is_empty() {
            warnings.push(DetectWarning::OnlySingletonsRemain {
                reached: tree.live_leaves().len(),
                k: cfg.k,
            });
            break;
        }
        let mut best: Option<(f64, &Label, usize)> = None;
        for id in candidates {
            if tree.sentinels(id).is_none() {
                let sub = g.induced_subgraph(g.labels_of(tree.members(id)).iter())?;
                let (c1, c2) = spectra_bisection(&sub, &cfg.solver)?;
                stats.bisections_computed += 1;
                let to_indices = |side: &BTreeSet<Label>| -> BTreeSet<usize> {
                    side.iter()
                        .map(|l| g.index_of(l.as_str()).expect("subgraph label"))
                        .collect()
                };
                tree.attach_sentinels(id, to_indices(&c1), to_indices(&c2));
            }
            let (l, r) = tree.sentinels(id).expect("just attached");
            let hypothetical = hypothetical_partition(g, &tree, id, l, r);
            let q = modularity(selection_graph, &hypothetical)?;
            let smallest = tree
                .members(id)
                .first()
                .map(|&v| g.label(v))
                .expect("nonempty community");
            // argmax with exact ties going to the community holding the
            // smallest vertex label
            let better = match &best {
                None => true,
                Some((bq, blabel, _)) => q > *bq || (q == *bq && smallest < *blabel),
            };
            if better {
                best = Some((q, smallest, id));
            }
        }
        let (_, _, chosen) = best.expect("candidates nonempty");
        tree.commit(chosen);
        stats.communities_created += 2;
    }

    Ok(DetectOutcome {
        partition: partition_of(g, &tree),
        warnings,
        stats,
    })
}

fn partition_of(g: &Graph, tree: &DivisionTree) -> Partition {
    let groups: Vec<BTreeSet<Label>> = tree
        .live_leaves()
        .iter()
        .map(|&id| g.labels_of(tree.members(id)))
        .collect();
    Partition::new(groups)
        .expect("live leaves are disjoint and nonempty")
        .sorted_canonical()
}

fn hypothetical_partition(
    g: &Graph,
    tree: &DivisionTree,
    replaced: usize,
    left: usize,
    right: usize,
) -> Partition {
    let mut groups: Vec<BTreeSet<Label>> = Vec::with_capacity(tree.live_leaves().len() + 1);
    for &id in tree.live_leaves() {
        if id != replaced {
            groups.push(g.labels_of(tree.members(id)));
        }
    }
    groups.push(g.labels_of(tree.members(left)));
    groups.push(g.labels_of(tree.members(right)));
    // disjoint by construction: live leaves partition V and the two
    // halves partition the replaced leaf
    Partition::new_unchecked(groups)
}

/// Lite mode runs the division on the input graph directly; complete
/// mode sparsifies first and divides the sparsified network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PipelineMode {
    Lite,
    #[default]
    Complete,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub k: usize,
    pub mode: PipelineMode,
    /// Similarity threshold for complete mode; `None` means the 0.15
    /// default. Ignored in lite mode.
    pub theta: Option<f64>,
    pub selection: SelectionGraph,
    pub solver: SolverConfig,
}

impl PipelineConfig {
    pub fn new(k: usize, mode: PipelineMode) -> Self {
        PipelineConfig {
            k,
            mode,
            theta: None,
            selection: SelectionGraph::default(),
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub partition: Partition,
    /// Present in complete mode only.
    pub report: Option<SparsifyReport>,
    pub warnings: Vec<DetectWarning>,
    pub stats: DetectStats,
}

/// Runs the full pipeline. Metrics reported downstream are always
/// computed on the original graph, regardless of mode.
pub fn run_pipeline(g: &Graph, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    let detect_cfg = DetectConfig {
        k: cfg.k,
        modularity_graph: cfg.selection,
        solver: cfg.solver,
    };
    match cfg.mode {
        PipelineMode::Lite => {
            let outcome = detect(g, &detect_cfg, g)?;
            Ok(PipelineOutcome {
                partition: outcome.partition,
                report: None,
                warnings: outcome.warnings,
                stats: outcome.stats,
            })
        }
        PipelineMode::Complete => {
            let scfg = SparsifyConfig::new(cfg.theta.unwrap_or(DEFAULT_THETA))?;
            let (sparsified, report) = sparsify(g, &scfg)?;
            let outcome = detect(&sparsified, &detect_cfg, g)?;
            Ok(PipelineOutcome {
                partition: outcome.partition,
                report: Some(report),
                warnings: outcome.warnings,
                stats: outcome.stats,
            })
        }
    }
}
