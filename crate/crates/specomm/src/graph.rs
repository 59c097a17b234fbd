//! Undirected simple graphs with string vertex labels, plus vertex
//! partitions and the two text file formats (edge list, partition).
//!
//! Labels are arbitrary strings externally and are mapped to dense
//! internal indices `0..n`. The mapping is canonical: labels that parse
//! as unsigned integers sort numerically before all other labels, which
//! sort lexicographically. Every algorithm in this crate indexes vectors
//! and matrices by the dense index, so results never depend on the order
//! in which an input file lists its edges.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// A vertex label: an arbitrary non-empty string with a numeric-aware
/// total order (integer labels first, in numeric order, then everything
/// else lexicographically).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        Label(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u128> {
        self.0.parse().ok()
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

/// An immutable-after-build undirected simple graph.
///
/// Invariants: no self-loops, no parallel edges, adjacency is symmetric,
/// and `edge_count` equals half the sum of the adjacency set sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<Label>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an explicit vertex set plus edge pairs.
    /// Vertices mentioned by no edge stay in the graph as isolated
    /// vertices. Duplicate edges (in either orientation) collapse.
    pub fn from_vertices_and_edges<L, I, E, S>(vertices: I, edges: E) -> Result<Self>
    where
        L: Into<Label>,
        I: IntoIterator<Item = L>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut label_set: BTreeSet<Label> = vertices.into_iter().map(Into::into).collect();
        let edges: Vec<(String, String)> = edges
            .into_iter()
            .map(|(u, v)| (u.as_ref().to_owned(), v.as_ref().to_owned()))
            .collect();
        for (u, v) in &edges {
            label_set.insert(Label::new(u.clone()));
            label_set.insert(Label::new(v.clone()));
        }
        let labels: Vec<Label> = label_set.into_iter().collect();
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.0.clone(), i))
            .collect();
        let mut adj = vec![BTreeSet::new(); labels.len()];
        let mut edge_count = 0;
        for (u, v) in &edges {
            if u == v {
                return Err(Error::SelfLoop(u.clone()));
            }
            let iu = index[u.as_str()];
            let iv = index[v.as_str()];
            if adj[iu].insert(iv) {
                adj[iv].insert(iu);
                edge_count += 1;
            }
        }
        Ok(Graph {
            labels,
            index,
            adj,
            edge_count,
        })
    }

    /// Builds a graph from edge pairs alone; the vertex set is exactly
    /// the set of mentioned endpoints.
    pub fn from_edges<E, S>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        Self::from_vertices_and_edges(std::iter::empty::<Label>(), edges)
    }

    /// Parses the edge-list format: one edge per line as two
    /// whitespace-separated labels; `#` starts a comment; blank lines
    /// are ignored. Duplicate and reversed-duplicate lines collapse.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (u, v) = match (parts.next(), parts.next(), parts.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("expected two vertex labels, got `{}`", line),
                    })
                }
            };
            if u == v {
                return Err(Error::SelfLoop(u.to_owned()));
            }
            edges.push((u.to_owned(), v.to_owned()));
        }
        Self::from_edges(edges)
    }

    /// Reads an edge-list file from disk.
    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_edge_list(&text)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertex labels in dense-index order.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &Label {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub(crate) fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_owned()))
    }

    /// Neighbor labels of `v`, in label order.
    pub fn neighbors(&self, label: &str) -> Result<Vec<&Label>> {
        let i = self.require_index(label)?;
        Ok(self.adj[i].iter().map(|&j| &self.labels[j]).collect())
    }

    pub fn degree(&self, label: &str) -> Result<usize> {
        Ok(self.adj[self.require_index(label)?].len())
    }

    pub(crate) fn neighbors_idx(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub(crate) fn degree_idx(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(iu), Some(iv)) => self.adj[iu].contains(&iv),
            _ => false,
        }
    }

    /// Every edge once, as `(u, v)` dense index pairs with `u < v`,
    /// ascending. This is the canonical edge order used by all passes.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.adj.len() {
            for &v in self.adj[u].range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Every edge once as label pairs, smaller label first, ascending.
    pub fn edge_labels(&self) -> Vec<(Label, Label)> {
        self.edge_list()
            .into_iter()
            .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect()
    }

    /// Removes an existing edge. Used by the sparsifier on its private
    /// working copy; graphs handed to other modules are never mutated.
    pub fn remove_edge(&mut self, u: &str, v: &str) -> Result<()> {
        let iu = self.require_index(u)?;
        let iv = self.require_index(v)?;
        self.remove_edge_idx(iu, iv)
            .then_some(())
            .ok_or_else(|| Error::MissingEdge(u.to_owned(), v.to_owned()))
    }

    pub(crate) fn remove_edge_idx(&mut self, u: usize, v: usize) -> bool {
        if self.adj[u].remove(&v) {
            self.adj[v].remove(&u);
            self.edge_count -= 1;
            true
        } else {
            false
        }
    }

    /// Connected components as index sets, ordered by descending size,
    /// ties by smallest contained label.
    pub(crate) fn components_idx(&self) -> Vec<BTreeSet<usize>> {
        let n = self.labels.len();
        let mut dsu = UnionFind::new(n);
        for (u, v) in self.edge_list() {
            dsu.union(u, v);
        }
        let mut groups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for v in 0..n {
            groups.entry(dsu.find(v)).or_default().insert(v);
        }
        let mut comps: Vec<BTreeSet<usize>> = groups.into_values().collect();
        // dense indices follow label order, so "smallest contained label"
        // is just the smallest contained index
        comps.sort_by_key(|c| (std::cmp::Reverse(c.len()), *c.first().unwrap()));
        comps
    }

    /// Connected components as a [`Partition`], ordered by descending
    /// size, ties by smallest contained label.
    pub fn connected_components(&self) -> Partition {
        let groups = self
            .components_idx()
            .into_iter()
            .map(|c| c.iter().map(|&v| self.labels[v].clone()).collect())
            .collect();
        Partition::new_unchecked(groups)
    }

    pub fn is_connected(&self) -> bool {
        self.labels.len() <= 1 || self.components_idx().len() == 1
    }

    /// The subgraph induced by `vertices`: exactly those vertices and
    /// the edges with both endpoints among them. External labels are
    /// preserved.
    pub fn induced_subgraph<'a, I>(&self, vertices: I) -> Result<Graph>
    where
        I: IntoIterator<Item = &'a Label>,
    {
        let mut picked = BTreeSet::new();
        for l in vertices {
            picked.insert(self.require_index(l.as_str())?);
        }
        if picked.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut edges = Vec::new();
        for &u in &picked {
            for &v in self.adj[u].range(u + 1..) {
                if picked.contains(&v) {
                    edges.push((self.labels[u].as_str(), self.labels[v].as_str()));
                }
            }
        }
        Graph::from_vertices_and_edges(picked.iter().map(|&v| self.labels[v].clone()), edges)
    }

    pub(crate) fn labels_of(&self, indices: &BTreeSet<usize>) -> BTreeSet<Label> {
        indices.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// True when both graphs have the same vertex label set.
    pub fn same_vertices(&self, other: &Graph) -> bool {
        self.labels == other.labels
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

/// Union-find with union by size and path halving.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (mut xr, mut yr) = (self.find(x), self.find(y));
        if xr == yr {
            return;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
    }
}

/// A set of disjoint, nonempty vertex groups covering a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    groups: Vec<BTreeSet<Label>>,
}

impl Partition {
    /// Validates that groups are nonempty and pairwise disjoint.
    pub fn new(groups: Vec<BTreeSet<Label>>) -> Result<Self> {
        let mut seen: BTreeSet<&Label> = BTreeSet::new();
        for g in &groups {
            if g.is_empty() {
                return Err(Error::EmptyGroup);
            }
            for l in g {
                if !seen.insert(l) {
                    return Err(Error::OverlappingGroups(l.as_str().to_owned()));
                }
            }
        }
        Ok(Partition { groups })
    }

    pub(crate) fn new_unchecked(groups: Vec<BTreeSet<Label>>) -> Self {
        Partition { groups }
    }

    /// Parses the partition format (`vertex group` per line, `#`
    /// comments) against a graph. Group labels become group indices in
    /// first-appearance order.
    pub fn parse_partition(text: &str, graph: &Graph) -> Result<Self> {
        let mut order: Vec<String> = Vec::new();
        let mut assignment: HashMap<String, (usize, String)> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (vertex, group) = match (parts.next(), parts.next(), parts.next()) {
                (Some(v), Some(g), None) => (v, g),
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("expected `vertex group`, got `{}`", line),
                    })
                }
            };
            if !graph.contains(vertex) {
                return Err(Error::UnknownVertex(vertex.to_owned()));
            }
            let gi = match order.iter().position(|g| g == group) {
                Some(gi) => gi,
                None => {
                    order.push(group.to_owned());
                    order.len() - 1
                }
            };
            if let Some((prev, prev_name)) = assignment.get(vertex) {
                if *prev != gi {
                    return Err(Error::ConflictingAssignment {
                        vertex: vertex.to_owned(),
                        first: prev_name.clone(),
                        second: group.to_owned(),
                    });
                }
            }
            assignment.insert(vertex.to_owned(), (gi, group.to_owned()));
        }
        for l in graph.labels() {
            if !assignment.contains_key(l.as_str()) {
                return Err(Error::UnassignedVertex(l.as_str().to_owned()));
            }
        }
        let mut groups = vec![BTreeSet::new(); order.len()];
        for (vertex, (gi, _)) in assignment {
            groups[gi].insert(Label::new(vertex));
        }
        Partition::new(groups)
    }

    pub fn read_partition(path: impl AsRef<Path>, graph: &Graph) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_partition(&text, graph)
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[BTreeSet<Label>] {
        &self.groups
    }

    pub fn universe(&self) -> BTreeSet<&Label> {
        self.groups.iter().flatten().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.groups.iter().map(|g| g.len()).sum()
    }

    /// Index of the group holding `label`, if any.
    pub fn group_of(&self, label: &str) -> Option<usize> {
        self.groups
            .iter()
            .position(|g| g.contains(&Label::from(label)))
    }

    /// True when this partition covers exactly the graph's vertex set.
    pub fn is_partition_of(&self, graph: &Graph) -> bool {
        self.vertex_count() == graph.vertex_count()
            && self
                .groups
                .iter()
                .flatten()
                .all(|l| graph.contains(l.as_str()))
    }

    /// Reorders groups canonically: descending size, ties by smallest
    /// contained label.
    pub fn sorted_canonical(mut self) -> Self {
        self.groups.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.first().cmp(&b.first()))
        });
        self
    }

    /// Serializes in the partition file format with 1-based group ids.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (gi, group) in self.groups.iter().enumerate() {
            for v in group {
                out.push_str(&format!("{} {}\n", v, gi + 1));
            }
        }
        out
    }
}
