//! Partition quality: modularity against a graph, accuracy and
//! normalized mutual information against a reference partition.

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

/// Overlap counts between two partitions of the same universe:
/// `counts[i][j] = |P_i ∩ C_j|` with row/column marginals.
#[derive(Debug, Clone)]
pub struct ConfusionTable {
    pub counts: Vec<Vec<usize>>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
    pub total: usize,
}

/// Newman-Girvan modularity `Q = Σ_i (e_ii − a_i²)` where `e_ii` is the
/// fraction of edges inside community `i` and `a_i` its degree fraction.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    if !p.is_partition_of(g) {
        return Err(Error::UniverseMismatch);
    }
    let m = g.edge_count() as f64;
    let mut q = 0.0;
    for group in p.groups() {
        let members: std::collections::BTreeSet<usize> = group
            .iter()
            .map(|l| g.index_of(l.as_str()).expect("checked above"))
            .collect();
        let mut internal_twice = 0usize;
        let mut degree_sum = 0usize;
        for &v in &members {
            degree_sum += g.degree_idx(v);
            internal_twice += g
                .neighbors_idx(v)
                .iter()
                .filter(|w| members.contains(w))
                .count();
        }
        let e_ii = internal_twice as f64 / 2.0 / m;
        let a_i = degree_sum as f64 / (2.0 * m);
        q += e_ii - a_i * a_i;
    }
    Ok(q)
}

/// Builds the overlap table between an extracted partition and a
/// reference partition of the same universe.
pub fn confusion(p: &Partition, c: &Partition) -> Result<ConfusionTable> {
    if p.universe() != c.universe() {
        return Err(Error::UniverseMismatch);
    }
    let counts: Vec<Vec<usize>> = p
        .groups()
        .iter()
        .map(|pi| {
            c.groups()
                .iter()
                .map(|cj| pi.intersection(cj).count())
                .collect()
        })
        .collect();
    let row_sums: Vec<usize> = counts.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<usize> = (0..c.group_count())
        .map(|j| counts.iter().map(|r| r[j]).sum())
        .collect();
    let total = row_sums.iter().sum();
    Ok(ConfusionTable {
        counts,
        row_sums,
        col_sums,
        total,
    })
}

/// Fraction of vertices placed in the correct group under the best
/// one-to-one matching of extracted groups to reference groups. The
/// smaller side is implicitly padded with empty groups.
pub fn accuracy(p: &Partition, c: &Partition) -> Result<f64> {
    let table = confusion(p, c)?;
    let k = table.counts.len().max(table.col_sums.len());
    let mut weights = vec![vec![0i64; k]; k];
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            weights[i][j] = v as i64;
        }
    }
    let matched = max_assignment(&weights);
    Ok(matched as f64 / table.total as f64)
}

/// Normalized mutual information between two partitions.
///
/// `0·log(·) ≡ 0` throughout; two single-group partitions score 1 by
/// convention, while a single-group partition against anything else
/// scores 0.
pub fn nmi(p: &Partition, c: &Partition) -> Result<f64> {
    let table = confusion(p, c)?;
    let n = table.total as f64;
    let mut numerator = 0.0;
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &nij) in row.iter().enumerate() {
            if nij > 0 {
                let nij = nij as f64;
                numerator +=
                    nij * (nij * n / (table.row_sums[i] as f64 * table.col_sums[j] as f64)).ln();
            }
        }
    }
    numerator *= -2.0;
    let denominator: f64 = table
        .row_sums
        .iter()
        .chain(table.col_sums.iter())
        .filter(|&&s| s > 0)
        .map(|&s| (s as f64) * ((s as f64) / n).ln())
        .sum();
    if numerator == 0.0 && denominator == 0.0 {
        return Ok(1.0);
    }
    Ok(numerator / denominator)
}

/// Maximum-weight perfect matching on a square weight matrix
/// (assignment problem), by the Hungarian algorithm with potentials.
fn max_assignment(weights: &[Vec<i64>]) -> i64 {
    let n = weights.len();
    if n == 0 {
        return 0;
    }
    // minimize negated weights; classic O(n^3) shortest augmenting path
    const INF: i64 = i64::MAX / 4;
    let cost = |i: usize, j: usize| -> i64 { -weights[i][j] };
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut assignment = vec![n; n + 1]; // assignment[j] = row matched to column j (n = none)
    for row in 0..n {
        let mut min_to = vec![INF; n + 1];
        let mut prev = vec![n; n + 1];
        let mut used = vec![false; n + 1];
        let mut j_cur = n; // virtual column holding the current row
        assignment[n] = row;
        loop {
            used[j_cur] = true;
            let i_cur = assignment[j_cur];
            let mut delta = INF;
            let mut j_next = n;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                let reduced = cost(i_cur, j) - u[i_cur] - v[j];
                if reduced < min_to[j] {
                    min_to[j] = reduced;
                    prev[j] = j_cur;
                }
                if min_to[j] < delta {
                    delta = min_to[j];
                    j_next = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[assignment[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_to[j] -= delta;
                }
            }
            j_cur = j_next;
            if assignment[j_cur] == n {
                break;
            }
        }
        // augment along the alternating path
        while j_cur != n {
            let j_prev = prev[j_cur];
            assignment[j_cur] = assignment[j_prev];
            j_cur = j_prev;
        }
    }
    (0..n)
        .map(|j| {
            let i = assignment[j];
            weights[i][j]
        })
        .sum()
}
