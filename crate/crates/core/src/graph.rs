//! The Barabási–Albert preferential-attachment multigraph.
//!
//! Growth rule: start from two vertices joined by `m` parallel edges. At step
//! `t >= 3` the new vertex `t` draws `m` endpoints independently and with
//! replacement from `{1, ..., t-1}`, each with probability proportional to the
//! degree in the graph *before* the step; the degree table is not updated
//! between the `m` draws of a single step. Sampling with replacement creates
//! parallel edges; self-loops cannot occur because the new vertex is excluded
//! from its own draw.
//!
//! Vertices are labeled `1..=n` by birth time. The multigraph satisfies
//! `sum_v d(v) = 2 m (n - 1)` and `d(v) >= m` for every vertex.

use alloc::vec;
use alloc::vec::Vec;

use crate::rng::Prng;

/// 1-based vertex label; the label of a vertex is its birth time.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph needs at least two vertices, got n={0}")]
    TooFewVertices(u32),
    #[error("edges per new vertex must satisfy m >= 2, got m={0}")]
    TooFewEdgesPerStep(u32),
    #[error("edge counts overflow the address space")]
    Overflow,
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: u32, n: u32 },
    #[error("self-loop forbidden at vertex {0}")]
    SelfLoop(u32),
    #[error("edge ({0}, {1}) must be listed with the smaller endpoint first")]
    UnorderedEdge(u32, u32),
    #[error("duplicate edge record ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("edge ({0}, {1}) has zero multiplicity")]
    ZeroMultiplicity(u32, u32),
    #[error("degree sum {actual} does not match 2m(n-1) = {expected}")]
    DegreeSumMismatch { expected: u64, actual: u64 },
    #[error("vertex {v} has degree {degree} < m = {m}")]
    DegreeBelowMinimum { v: u32, degree: u64, m: u32 },
}

/// Immutable preferential-attachment multigraph.
///
/// Adjacency is stored per vertex as a sorted `(neighbor, multiplicity)` list;
/// the structure is symmetric, has a zero diagonal, and `degrees[v]` always
/// equals the sum of multiplicities incident to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    m: u32,
    seed: u64,
    adj: Vec<Vec<(u32, u32)>>,
    degrees: Vec<u64>,
}

impl Graph {
    /// Grow `G_n` from `(n, m, seed)`. Deterministic: the same triple always
    /// yields the same graph.
    pub fn generate(n: u32, m: u32, seed: u64) -> Result<Self, GraphError> {
        check_params(n, m)?;
        let half_edges = 2u64
            .checked_mul(m as u64)
            .and_then(|x| x.checked_mul(n as u64 - 1))
            .ok_or(GraphError::Overflow)?;
        if half_edges > usize::MAX as u64 / 2 {
            return Err(GraphError::Overflow);
        }

        let mut rng = Prng::from_seed(seed);
        let nu = n as usize;
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nu];
        let mut degrees: Vec<u64> = vec![0; nu];

        // Half-edge array: vertex v (0-based) appears d(v) times. Endpoint
        // draws index into it uniformly, which is exactly the
        // degree-proportional rule.
        let mut ends: Vec<u32> = Vec::with_capacity(half_edges as usize);

        // Initial condition: vertices 1 and 2 joined by m parallel edges.
        adj[0].push((1, m));
        adj[1].push((0, m));
        degrees[0] = m as u64;
        degrees[1] = m as u64;
        for _ in 0..m {
            ends.push(0);
            ends.push(1);
        }

        let mut draws: Vec<u32> = Vec::with_capacity(m as usize);
        for t in 2..nu {
            // All m endpoints are drawn against the pre-step degree table:
            // the new vertex's half-edges are appended only after the draws.
            draws.clear();
            for _ in 0..m {
                let idx = rng.uniform_below(ends.len() as u64) as usize;
                draws.push(ends[idx]);
            }
            for &w in &draws {
                let wu = w as usize;
                adj[t].push((w, 1));
                adj[wu].push((t as u32, 1));
                degrees[t] += 1;
                degrees[wu] += 1;
                ends.push(w);
            }
            for _ in 0..m {
                ends.push(t as u32);
            }
        }

        for list in &mut adj {
            merge_multiplicities(list);
        }

        Ok(Self {
            n,
            m,
            seed,
            adj,
            degrees,
        })
    }

    /// Rebuild a graph from distinct-edge records `(u, v, mult)` with
    /// `1 <= u < v <= n`, validating every structural invariant. The degree
    /// table is recomputed from the records and cross-checked against the
    /// `2m(n-1)` identity and the `d(v) >= m` minimum.
    pub fn from_edges(
        n: u32,
        m: u32,
        seed: u64,
        edges: &[(u32, u32, u32)],
    ) -> Result<Self, GraphError> {
        check_params(n, m)?;
        let nu = n as usize;
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nu];
        let mut degrees: Vec<u64> = vec![0; nu];
        for &(u, v, mult) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w < 1 || w > n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u > v {
                return Err(GraphError::UnorderedEdge(u, v));
            }
            if mult == 0 {
                return Err(GraphError::ZeroMultiplicity(u, v));
            }
            adj[u as usize - 1].push((v - 1, mult));
            adj[v as usize - 1].push((u - 1, mult));
            degrees[u as usize - 1] += mult as u64;
            degrees[v as usize - 1] += mult as u64;
        }
        for (i, list) in adj.iter_mut().enumerate() {
            let before = list.len();
            list.sort_unstable();
            list.dedup_by_key(|e| e.0);
            if list.len() != before {
                let v = i as u32 + 1;
                let dup = find_duplicate(&adj_restore(edges, v));
                let (a, b) = dup.unwrap_or((v, v));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        let expected = 2 * m as u64 * (n as u64 - 1);
        let actual: u64 = degrees.iter().sum();
        if actual != expected {
            return Err(GraphError::DegreeSumMismatch { expected, actual });
        }
        for (i, &d) in degrees.iter().enumerate() {
            if d < m as u64 {
                return Err(GraphError::DegreeBelowMinimum {
                    v: i as u32 + 1,
                    degree: d,
                    m,
                });
            }
        }
        Ok(Self {
            n,
            m,
            seed,
            adj,
            degrees,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    /// Edges brought by each new vertex (the model parameter `m`).
    pub fn edges_per_vertex(&self) -> u32 {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Multi-degree of `v` (counting multiplicities).
    pub fn degree(&self, v: VertexId) -> u64 {
        self.degrees[self.index(v)]
    }

    /// Edge multiplicity between `u` and `v`; zero on the diagonal and for
    /// non-adjacent pairs.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        let ui = self.index(u);
        let vi = self.index(v) as u32;
        match self.adj[ui].binary_search_by_key(&vi, |e| e.0) {
            Ok(pos) => self.adj[ui][pos].1,
            Err(_) => 0,
        }
    }

    /// Neighbors of `v` as `(neighbor, multiplicity)`, ascending by label.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj[self.index(v)].iter().map(|&(w, m)| (w + 1, m))
    }

    /// Total degree `sum_v d(v) = 2m(n-1)`.
    pub fn total_degree(&self) -> u64 {
        2 * self.m as u64 * (self.n as u64 - 1)
    }

    /// Number of edges counted with multiplicity, `m(n-1)`.
    pub fn edge_count(&self) -> u64 {
        self.m as u64 * (self.n as u64 - 1)
    }

    /// Distinct edges `(u, v, mult)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter()
                .filter(move |&&(v, _)| v > u)
                .map(move |&(v, mult)| (u + 1, v + 1, mult))
        })
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v >= 1 && v <= self.n
    }

    pub(crate) fn index(&self, v: VertexId) -> usize {
        assert!(self.contains(v), "vertex {v} out of range 1..={}", self.n);
        v as usize - 1
    }

    /// Adjacency list of the 0-based vertex index, sorted by neighbor index.
    pub(crate) fn adj0(&self, i: usize) -> &[(u32, u32)] {
        &self.adj[i]
    }

    pub(crate) fn degree0(&self, i: usize) -> u64 {
        self.degrees[i]
    }
}

fn check_params(n: u32, m: u32) -> Result<(), GraphError> {
    if n < 2 {
        return Err(GraphError::TooFewVertices(n));
    }
    if m < 2 {
        return Err(GraphError::TooFewEdgesPerStep(m));
    }
    Ok(())
}

/// Collapse repeated neighbors in a sorted-to-be list into multiplicities.
fn merge_multiplicities(list: &mut Vec<(u32, u32)>) {
    list.sort_unstable();
    let mut out = 0;
    for i in 0..list.len() {
        if out > 0 && list[out - 1].0 == list[i].0 {
            list[out - 1].1 += list[i].1;
        } else {
            list[out] = list[i];
            out += 1;
        }
    }
    list.truncate(out);
}

fn adj_restore(edges: &[(u32, u32, u32)], v: u32) -> Vec<(u32, u32)> {
    edges
        .iter()
        .filter(|&&(a, b, _)| a == v || b == v)
        .map(|&(a, b, _)| (a, b))
        .collect()
}

fn find_duplicate(pairs: &[(u32, u32)]) -> Option<(u32, u32)> {
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
}
