//! Second eigenpair of the random-walk transition matrix `T = D⁻¹A`,
//! and the sign-pattern bisection built on it.
//!
//! `T` is similar to the symmetric `M = D^(-1/2) A D^(-1/2)`, whose top
//! eigenpair is known in closed form (eigenvalue 1, eigenvector
//! proportional to `√d`). The solver deflates that direction and runs
//! subspace iteration on the positive-shifted operator `(M + I)/2`, so
//! convergence targets the second most-positive eigenvalue rather than
//! the largest in magnitude. Eigenvectors map back through `D^(-1/2)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

/// An eigenvalue/eigenvector pair of the transition matrix.
///
/// The vector has unit Euclidean norm, is indexed by dense vertex index,
/// and its first nonzero entry is positive.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Residual bound on `‖T·x − λ·x‖∞`.
    pub tolerance: f64,
    /// Iteration cap; `None` means `100·n + 1000`.
    pub max_iterations: Option<usize>,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance <= 0.0 || self.tolerance.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".to_owned(),
            ));
        }
        Ok(())
    }

    fn iteration_cap(&self, n: usize) -> usize {
        self.max_iterations.unwrap_or(100 * n + 1000)
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-10,
            max_iterations: None,
        }
    }
}

/// Largest dense-oracle size.
pub const ORACLE_MAX_VERTICES: usize = 64;

struct Deflated<'g> {
    graph: &'g Graph,
    inv_sqrt_deg: Vec<f64>,
    /// Unit top eigenvector of `M`, proportional to `√d`.
    top: Vec<f64>,
}

impl<'g> Deflated<'g> {
    fn new(graph: &'g Graph) -> Result<Self> {
        let n = graph.vertex_count();
        let mut inv_sqrt_deg = Vec::with_capacity(n);
        let mut top = Vec::with_capacity(n);
        for v in 0..n {
            let d = graph.degree_idx(v);
            if d == 0 {
                return Err(Error::Disconnected);
            }
            inv_sqrt_deg.push(1.0 / (d as f64).sqrt());
            top.push((d as f64).sqrt());
        }
        let norm = norm2(&top);
        top.iter_mut().for_each(|x| *x /= norm);
        Ok(Deflated {
            graph,
            inv_sqrt_deg,
            top,
        })
    }

    /// `out = ((M + I)/2) y` deflated: the `√d` direction is projected
    /// away from both input and output.
    fn apply(&self, y: &[f64], out: &mut Vec<f64>) {
        let n = y.len();
        out.clear();
        out.resize(n, 0.0);
        let mut yp = y.to_vec();
        project_off(&mut yp, &self.top);
        for u in 0..n {
            let mut acc = 0.0;
            for &v in self.graph.neighbors_idx(u) {
                acc += yp[v] * self.inv_sqrt_deg[v];
            }
            out[u] = 0.5 * (acc * self.inv_sqrt_deg[u] + yp[u]);
        }
        project_off(out, &self.top);
    }

    /// Maps an `M`-space vector back to a `T`-space eigenvector:
    /// `x = D^(-1/2) y`, unit norm, first nonzero entry positive.
    fn back_transform(&self, y: &[f64]) -> Vec<f64> {
        let mut x: Vec<f64> = y
            .iter()
            .zip(&self.inv_sqrt_deg)
            .map(|(yi, s)| yi * s)
            .collect();
        let norm = norm2(&x);
        x.iter_mut().for_each(|e| *e /= norm);
        fix_sign(&mut x);
        x
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn project_off(v: &mut [f64], unit: &[f64]) {
    let c = dot(v, unit);
    v.iter_mut().zip(unit).for_each(|(x, u)| *x -= c * u);
}

fn fix_sign(v: &mut [f64]) {
    if let Some(first) = v.iter().find(|&&x| x != 0.0) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// `‖T·x − λ·x‖∞` evaluated directly from the adjacency structure.
fn transition_residual(g: &Graph, x: &[f64], lambda: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for u in 0..x.len() {
        let acc: f64 = g.neighbors_idx(u).iter().map(|&v| x[v]).sum();
        let r = (acc / g.degree_idx(u) as f64 - lambda * x[u]).abs();
        worst = worst.max(r);
    }
    worst
}

/// Computes the eigenpair of `T = D⁻¹A` with the second most-positive
/// eigenvalue on a connected graph with at least two vertices.
///
/// Deterministic: the start vector has entry `1 + i/n`, projected off
/// the deflated direction. The returned vector satisfies the weighted
/// orthogonality `Σ d_v·x_v = 0` up to tolerance by construction.
pub fn second_eigenpair(g: &Graph, cfg: &SolverConfig) -> Result<EigenPair> {
    cfg.validate()?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooSmallToBisect);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let op = Deflated::new(g)?;

    // subspace of two columns accelerates clustered eigenvalues; the
    // Rayleigh-Ritz step separates near-degenerate pairs exactly
    let block = 2.min(n - 1);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(block);
    let primary: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / n as f64).collect();
    basis.push(primary);
    if block > 1 {
        basis.push((0..n).map(|i| ((i + 1) as f64).sqrt()).collect());
    }
    orthonormalize(&mut basis, &op.top, n);

    let cap = cfg.iteration_cap(n);
    let mut applied = vec![Vec::new(); basis.len()];
    let mut last_residual = f64::INFINITY;
    for _ in 0..cap {
        for (col, out) in basis.iter().zip(applied.iter_mut()) {
            op.apply(col, out);
        }
        // Rayleigh-Ritz on the current subspace
        let (mu, ritz) = top_ritz_pair(&basis, &applied);
        let x = op.back_transform(&ritz);
        let lambda = 2.0 * mu - 1.0;
        last_residual = transition_residual(g, &x, lambda);
        if last_residual <= cfg.tolerance {
            return Ok(EigenPair {
                value: lambda,
                vector: x,
            });
        }
        basis = applied.clone();
        orthonormalize(&mut basis, &op.top, n);
    }
    Err(Error::NoConvergence {
        iterations: cap,
        residual: last_residual,
    })
}

/// Modified Gram-Schmidt against the deflated direction and earlier
/// columns. Columns that collapse are replaced by projected basis
/// vectors so the subspace never degenerates.
fn orthonormalize(cols: &mut Vec<Vec<f64>>, deflate: &[f64], n: usize) {
    let wanted = cols.len();
    let mut kept: Vec<Vec<f64>> = Vec::with_capacity(wanted);
    let mut fallback = 0;
    let mut idx = 0;
    while kept.len() < wanted {
        let mut candidate = if idx < cols.len() {
            let c = cols[idx].clone();
            idx += 1;
            c
        } else {
            // deterministic escape hatch: unit basis vectors in order
            let mut e = vec![0.0; n];
            e[fallback % n] = 1.0;
            fallback += 1;
            if fallback > 2 * n {
                break;
            }
            e
        };
        project_off(&mut candidate, deflate);
        for prev in &kept {
            project_off(&mut candidate, prev);
        }
        let norm = norm2(&candidate);
        if norm > 1e-12 {
            candidate.iter_mut().for_each(|x| *x /= norm);
            kept.push(candidate);
        }
    }
    *cols = kept;
}

/// Top Ritz pair of the (at most 2-dimensional) subspace.
fn top_ritz_pair(basis: &[Vec<f64>], applied: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let b = basis.len();
    if b == 1 {
        let mu = dot(&basis[0], &applied[0]);
        return (mu, basis[0].clone());
    }
    // symmetric 2x2 projection [a c; c d]
    let a = dot(&basis[0], &applied[0]);
    let c = 0.5 * (dot(&basis[0], &applied[1]) + dot(&basis[1], &applied[0]));
    let d = dot(&basis[1], &applied[1]);
    let half_trace = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + c * c).sqrt();
    let mu = half_trace + disc;
    // eigenvector of the 2x2 for mu
    let (w0, w1) = if (mu - a).abs() > (mu - d).abs() {
        (c, mu - a)
    } else {
        (mu - d, c)
    };
    let scale = (w0 * w0 + w1 * w1).sqrt();
    let (w0, w1) = if scale > 0.0 {
        (w0 / scale, w1 / scale)
    } else {
        (1.0, 0.0)
    };
    let combined: Vec<f64> = basis[0]
        .iter()
        .zip(&basis[1])
        .map(|(p, q)| w0 * p + w1 * q)
        .collect();
    (mu, combined)
}

/// Splits a graph in two along the sign pattern of the second
/// eigenvector: non-negative entries on one side, negative on the
/// other. Disconnected graphs split as (largest component, rest)
/// without solving an eigenproblem. Both sides are always nonempty.
pub fn spectra_bisection(
    g: &Graph,
    cfg: &SolverConfig,
) -> Result<(BTreeSet<Label>, BTreeSet<Label>)> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.vertex_count() < 2 {
        return Err(Error::TooSmallToBisect);
    }
    let comps = g.components_idx();
    if comps.len() > 1 {
        let first = g.labels_of(&comps[0]);
        let rest = comps[1..]
            .iter()
            .flat_map(|c| c.iter())
            .map(|&v| g.label(v).clone())
            .collect();
        return Ok((first, rest));
    }
    let pair = second_eigenpair(g, cfg)?;
    let mut positive = BTreeSet::new();
    let mut negative = BTreeSet::new();
    for (i, &s) in pair.vector.iter().enumerate() {
        if s >= 0.0 {
            positive.insert(g.label(i).clone());
        } else {
            negative.insert(g.label(i).clone());
        }
    }
    Ok((positive, negative))
}

/// All eigenpairs of `T` by dense symmetric decomposition of `M`,
/// sorted by descending eigenvalue. Test oracle; capped at
/// [`ORACLE_MAX_VERTICES`] vertices.
pub fn dense_spectrum_oracle(g: &Graph) -> Result<Vec<EigenPair>> {
    let n = g.vertex_count();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::OracleTooLarge {
            n,
            max: ORACLE_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut inv_sqrt_deg = Vec::with_capacity(n);
    for v in 0..n {
        let d = g.degree_idx(v);
        if d == 0 {
            return Err(Error::Disconnected);
        }
        inv_sqrt_deg.push(1.0 / (d as f64).sqrt());
    }
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if g.neighbors_idx(i).contains(&j) {
            inv_sqrt_deg[i] * inv_sqrt_deg[j]
        } else {
            0.0
        }
    });
    let eig = nalgebra::SymmetricEigen::new(m);
    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|k| {
            let mut x: Vec<f64> = (0..n)
                .map(|i| eig.eigenvectors[(i, k)] * inv_sqrt_deg[i])
                .collect();
            let norm = norm2(&x);
            x.iter_mut().for_each(|e| *e /= norm);
            fix_sign(&mut x);
            EigenPair {
                value: eig.eigenvalues[k],
                vector: x,
            }
        })
        .collect();
    pairs.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(pairs)
}
