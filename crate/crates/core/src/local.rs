//! Decorated rooted balls and local functionals of the random walk.
//!
//! The k-step return probability `(P^k)_{uu}` only depends on the radius-k
//! ball around `u` decorated with full-graph degree marks: multiplicities
//! inside the ball give the transition numerators, the marks give the
//! denominators (including edges that leave the ball). This module extracts
//! such balls, evaluates return probabilities by forward probability-vector
//! dynamic programming, and averages them over all roots.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};
use crate::numeric::KahanSum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: u32, n: u32 },
    #[error("ball radius {radius} is too small for a {k}-step walk; need radius >= k")]
    RadiusTooSmall { radius: u32, k: u32 },
    #[error("degree truncation K={k_cap} is below the minimum degree m={m}")]
    TruncationBelowMinimumDegree { k_cap: u64, m: u32 },
}

/// A ball vertex: original label plus its full-graph degree mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallVertex {
    pub id: VertexId,
    pub mark: u64,
}

/// Rooted radius-r induced sub-multigraph with full-degree vertex marks.
///
/// Vertices are ordered canonically: by BFS layer, then by original label
/// within a layer. The root is always local index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedBall {
    root: usize,
    vertices: Vec<BallVertex>,
    dist: Vec<u32>,
    adj: Vec<Vec<(usize, u32)>>,
    radius: u32,
}

impl DecoratedBall {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertices(&self) -> &[BallVertex] {
        &self.vertices
    }

    /// Graph distance from the root to a local vertex.
    pub fn distance(&self, local: usize) -> u32 {
        self.dist[local]
    }

    pub fn neighbors(&self, local: usize) -> &[(usize, u32)] {
        &self.adj[local]
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u32 {
        self.adj[a]
            .iter()
            .find(|&&(j, _)| j == b)
            .map_or(0, |&(_, m)| m)
    }

    /// Sum of edge multiplicities at a vertex, counting only ball-internal
    /// edges. Equals the degree mark for every vertex at distance < radius.
    pub fn internal_degree(&self, local: usize) -> u64 {
        self.adj[local].iter().map(|&(_, m)| m as u64).sum()
    }

    /// Distinct internal edges `(a, b, mult)` with `a < b` in local indices.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, list)| {
            list.iter()
                .filter(move |&&(b, _)| b > a)
                .map(move |&(b, mult)| (a, b, mult))
        })
    }

    /// Largest degree mark in the ball.
    pub fn max_degree_mark(&self) -> u64 {
        self.vertices.iter().map(|v| v.mark).max().unwrap_or(0)
    }

    /// k-step return probability of the simple random walk at the root,
    /// computed by k rounds of `p(x -> y) = mult(x, y) / mark(x)` inside the
    /// ball. Exact for `k <= radius`: a walk of length k started at the root
    /// never sees anything outside the radius-k ball.
    pub fn return_probability(&self, k: u32) -> Result<f64, LocalError> {
        if k > self.radius {
            return Err(LocalError::RadiusTooSmall {
                radius: self.radius,
                k,
            });
        }
        let nv = self.vertices.len();
        let mut cur = vec![0.0f64; nv];
        let mut next = vec![0.0f64; nv];
        cur[self.root] = 1.0;
        for _ in 0..k {
            next.iter_mut().for_each(|x| *x = 0.0);
            for (x, &px) in cur.iter().enumerate() {
                if px == 0.0 {
                    continue;
                }
                let w = px / self.vertices[x].mark as f64;
                for &(y, mult) in &self.adj[x] {
                    next[y] += w * mult as f64;
                }
            }
            core::mem::swap(&mut cur, &mut next);
        }
        Ok(cur[self.root])
    }
}

/// Local functional of a decorated rooted ball. Only the k-step return
/// probability is implemented; `truncation` caps the maximum degree mark seen
/// in the radius-k ball (the functional is zeroed where the cap is exceeded).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFunctionalSpec {
    pub kind: FunctionalKind,
    pub k: u32,
    pub truncation: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalKind {
    ReturnProbability,
}

impl LocalFunctionalSpec {
    pub fn return_probability(k: u32) -> Self {
        Self {
            kind: FunctionalKind::ReturnProbability,
            k,
            truncation: None,
        }
    }

    pub fn truncated(k: u32, k_cap: u64) -> Self {
        Self {
            kind: FunctionalKind::ReturnProbability,
            k,
            truncation: Some(k_cap),
        }
    }
}

/// Extract the decorated rooted ball of the given radius around `u`.
pub fn extract_ball(graph: &Graph, u: VertexId, radius: u32) -> Result<DecoratedBall, LocalError> {
    if !graph.contains(u) {
        return Err(LocalError::VertexOutOfRange {
            v: u,
            n: graph.vertex_count(),
        });
    }
    let n = graph.vertex_count() as usize;
    let root0 = (u - 1) as usize;

    // BFS by layers; NONE marks unvisited. Canonical order: layer by layer,
    // ascending original label inside each layer.
    const NONE: u32 = u32::MAX;
    let mut local_of = vec![NONE; n];
    let mut order: Vec<u32> = Vec::new();
    let mut dist: Vec<u32> = Vec::new();

    local_of[root0] = 0;
    order.push(root0 as u32);
    dist.push(0);
    let mut frontier: Vec<u32> = vec![root0 as u32];
    for depth in 1..=radius {
        let mut next_layer: Vec<u32> = Vec::new();
        for &x in &frontier {
            for &(y, _) in graph.adj0(x as usize) {
                if local_of[y as usize] == NONE {
                    local_of[y as usize] = 0; // provisional; fixed below
                    next_layer.push(y);
                }
            }
        }
        if next_layer.is_empty() {
            break; // exhausted the component before reaching the radius
        }
        next_layer.sort_unstable();
        for &y in &next_layer {
            local_of[y as usize] = order.len() as u32;
            order.push(y);
            dist.push(depth);
        }
        frontier = next_layer;
    }

    let vertices: Vec<BallVertex> = order
        .iter()
        .map(|&x| BallVertex {
            id: x + 1,
            mark: graph.degree0(x as usize),
        })
        .collect();

    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); order.len()];
    for (a, &x) in order.iter().enumerate() {
        for &(y, mult) in graph.adj0(x as usize) {
            let ly = local_of[y as usize];
            if ly != NONE {
                adj[a].push((ly as usize, mult));
            }
        }
        adj[a].sort_unstable();
    }

    Ok(DecoratedBall {
        root: 0,
        vertices,
        dist,
        adj,
        radius,
    })
}

/// Maximum full-graph degree over the radius-r ball around `u`, without
/// materializing the induced subgraph.
pub fn ball_max_degree(graph: &Graph, u: VertexId, radius: u32) -> Result<u64, LocalError> {
    if !graph.contains(u) {
        return Err(LocalError::VertexOutOfRange {
            v: u,
            n: graph.vertex_count(),
        });
    }
    let mut scratch = DpScratch::new(graph.vertex_count() as usize);
    Ok(ball_max_degree_with(
        graph,
        (u - 1) as usize,
        radius,
        &mut scratch,
    ))
}

/// Return probabilities `(P^j)_{uu}` for all `j = 0..=k_max`, by forward DP
/// on the full graph. Identical to the ball DP at radius `j` for each `j`.
pub fn return_probabilities_at(
    graph: &Graph,
    u: VertexId,
    k_max: u32,
) -> Result<Vec<f64>, LocalError> {
    if !graph.contains(u) {
        return Err(LocalError::VertexOutOfRange {
            v: u,
            n: graph.vertex_count(),
        });
    }
    let mut scratch = DpScratch::new(graph.vertex_count() as usize);
    Ok(dp_return_probs(
        graph,
        (u - 1) as usize,
        k_max,
        &mut scratch,
    ))
}

/// Empirical local average `S_n(f) = (1/n) sum_u f(ball_k(u))` for the
/// (optionally degree-truncated) return-probability functional.
///
/// Roots are visited in ascending label order and the sum is compensated, so
/// the value does not depend on any execution context.
pub fn local_average(graph: &Graph, spec: &LocalFunctionalSpec) -> Result<f64, LocalError> {
    if let Some(k_cap) = spec.truncation {
        if k_cap < graph.edges_per_vertex() as u64 {
            return Err(LocalError::TruncationBelowMinimumDegree {
                k_cap,
                m: graph.edges_per_vertex(),
            });
        }
    }
    let n = graph.vertex_count() as usize;
    let mut scratch = DpScratch::new(n);
    let mut acc = KahanSum::new();
    for x in 0..n {
        if let Some(k_cap) = spec.truncation {
            if ball_max_degree_with(graph, x, spec.k, &mut scratch) > k_cap {
                continue; // indicator zero; nothing to add
            }
        }
        let probs = dp_return_probs(graph, x, spec.k, &mut scratch);
        acc.add(probs[spec.k as usize]);
    }
    Ok(acc.value() / n as f64)
}

/// Reusable buffers for the per-root DP and BFS loops.
pub(crate) struct DpScratch {
    cur: Vec<f64>,
    next: Vec<f64>,
    active: Vec<u32>,
    next_active: Vec<u32>,
    epoch: Vec<u32>,
    stamp: u32,
}

impl DpScratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            cur: vec![0.0; n],
            next: vec![0.0; n],
            active: Vec::new(),
            next_active: Vec::new(),
            epoch: vec![0; n],
            stamp: 0,
        }
    }
}

/// Forward DP on the full adjacency from a point mass at `root0`; returns the
/// root mass after each of `0..=k_max` steps. Mass at step `t` is supported
/// on the radius-t ball, so this agrees with the decorated-ball evaluation.
pub(crate) fn dp_return_probs(
    graph: &Graph,
    root0: usize,
    k_max: u32,
    scratch: &mut DpScratch,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max as usize + 1);
    out.push(1.0);
    if k_max == 0 {
        return out;
    }
    let DpScratch {
        cur,
        next,
        active,
        next_active,
        ..
    } = scratch;
    active.clear();
    active.push(root0 as u32);
    cur[root0] = 1.0;
    for _ in 1..=k_max {
        next_active.clear();
        for &x in active.iter() {
            let xi = x as usize;
            let w = cur[xi] / graph.degree0(xi) as f64;
            for &(y, mult) in graph.adj0(xi) {
                let yi = y as usize;
                // All contributions are strictly positive, so "still zero"
                // means "not touched yet this step".
                if next[yi] == 0.0 {
                    next_active.push(y);
                }
                next[yi] += w * mult as f64;
            }
        }
        next_active.sort_unstable();
        out.push(next[root0]);
        for &x in active.iter() {
            cur[x as usize] = 0.0;
        }
        core::mem::swap(cur, next);
        core::mem::swap(active, next_active);
    }
    for &x in scratch.active.iter() {
        scratch.cur[x as usize] = 0.0;
    }
    scratch.active.clear();
    out
}

/// BFS to radius `r` tracking only the maximum degree; uses epoch stamps so
/// the visited set never needs clearing.
pub(crate) fn ball_max_degree_with(
    graph: &Graph,
    root0: usize,
    radius: u32,
    scratch: &mut DpScratch,
) -> u64 {
    scratch.stamp = scratch.stamp.wrapping_add(1);
    if scratch.stamp == 0 {
        scratch.epoch.iter_mut().for_each(|e| *e = 0);
        scratch.stamp = 1;
    }
    let stamp = scratch.stamp;
    let DpScratch {
        active,
        next_active,
        epoch,
        ..
    } = scratch;
    active.clear();
    active.push(root0 as u32);
    epoch[root0] = stamp;
    let mut max_deg = graph.degree0(root0);
    for _ in 0..radius {
        next_active.clear();
        for &x in active.iter() {
            for &(y, _) in graph.adj0(x as usize) {
                let yi = y as usize;
                if epoch[yi] != stamp {
                    epoch[yi] = stamp;
                    max_deg = max_deg.max(graph.degree0(yi));
                    next_active.push(y);
                }
            }
        }
        if next_active.is_empty() {
            break;
        }
        core::mem::swap(active, next_active);
    }
    max_deg
}
