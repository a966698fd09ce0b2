//! Matrix operators attached to a graph: the adjacency `A`, the random-walk
//! kernel `P = D^{-1} A`, the normalized adjacency `W = D^{-1/2} A D^{-1/2}`,
//! and the normalized Laplacian `L = I - W`.
//!
//! Views are read-only adapters over an immutable [`Graph`]; they answer
//! entry queries, operator-vector products (one pass over the edges, no dense
//! allocation), and desk-scale dense materializations.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMatrix;
use crate::graph::{Graph, VertexId};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Adjacency,
    WalkKernel,
    NormAdjacency,
    Laplacian,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OperatorError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: u32, n: u32 },
    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("n={n} exceeds the dense materialization limit {limit}")]
    DenseLimitExceeded { n: usize, limit: usize },
}

/// Read-only operator view over an immutable graph.
pub struct OperatorView<'a> {
    graph: &'a Graph,
    kind: OperatorKind,
    inv_deg: Vec<f64>,
    inv_sqrt_deg: Vec<f64>,
}

impl<'a> OperatorView<'a> {
    pub fn new(graph: &'a Graph, kind: OperatorKind) -> Self {
        let n = graph.vertex_count() as usize;
        let mut inv_deg = Vec::with_capacity(n);
        let mut inv_sqrt_deg = Vec::with_capacity(n);
        for i in 0..n {
            let d = graph.degree0(i);
            // d >= m >= 2 is a structural invariant; a zero here would mean a
            // corrupted graph, not a legal input.
            assert!(d > 0, "vertex {} has zero degree", i + 1);
            let df = d as f64;
            inv_deg.push(1.0 / df);
            inv_sqrt_deg.push(1.0 / math::sqrt(df));
        }
        Self {
            graph,
            kind,
            inv_deg,
            inv_sqrt_deg,
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// The `(u, v)` entry of the selected operator (1-based vertices).
    pub fn entry(&self, u: VertexId, v: VertexId) -> Result<f64, OperatorError> {
        let n = self.graph.vertex_count();
        for w in [u, v] {
            if !self.graph.contains(w) {
                return Err(OperatorError::VertexOutOfRange { v: w, n });
            }
        }
        let mult = self.graph.multiplicity(u, v) as f64;
        let ui = u as usize - 1;
        let vi = v as usize - 1;
        Ok(match self.kind {
            OperatorKind::Adjacency => mult,
            OperatorKind::WalkKernel => mult * self.inv_deg[ui],
            OperatorKind::NormAdjacency => mult * self.inv_sqrt_deg[ui] * self.inv_sqrt_deg[vi],
            OperatorKind::Laplacian => {
                let w = mult * self.inv_sqrt_deg[ui] * self.inv_sqrt_deg[vi];
                if u == v {
                    1.0
                } else {
                    -w
                }
            }
        })
    }

    /// Operator-vector product in a single pass over the edge lists.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
        let n = self.graph.vertex_count() as usize;
        if x.len() != n {
            return Err(OperatorError::LengthMismatch {
                got: x.len(),
                expected: n,
            });
        }
        let mut y = vec![0.0; n];
        match self.kind {
            OperatorKind::Adjacency => {
                for (i, yi) in y.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for &(j, mult) in self.graph.adj0(i) {
                        acc += mult as f64 * x[j as usize];
                    }
                    *yi = acc;
                }
            }
            OperatorKind::WalkKernel => {
                for (i, yi) in y.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for &(j, mult) in self.graph.adj0(i) {
                        acc += mult as f64 * x[j as usize];
                    }
                    *yi = acc * self.inv_deg[i];
                }
            }
            OperatorKind::NormAdjacency | OperatorKind::Laplacian => {
                for (i, yi) in y.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for &(j, mult) in self.graph.adj0(i) {
                        acc += mult as f64 * self.inv_sqrt_deg[j as usize] * x[j as usize];
                    }
                    *yi = acc * self.inv_sqrt_deg[i];
                }
                if self.kind == OperatorKind::Laplacian {
                    for (yi, xi) in y.iter_mut().zip(x) {
                        *yi = xi - *yi;
                    }
                }
            }
        }
        Ok(y)
    }

    /// Dense materialization; guarded by `limit` because the cost is `n^2`.
    pub fn materialize_dense(&self, limit: usize) -> Result<DenseMatrix, OperatorError> {
        let n = self.graph.vertex_count() as usize;
        if n > limit {
            return Err(OperatorError::DenseLimitExceeded { n, limit });
        }
        let mut out = DenseMatrix::zeros(n, n);
        if self.kind == OperatorKind::Laplacian {
            for i in 0..n {
                out.set(i, i, 1.0);
            }
        }
        for i in 0..n {
            for &(j, mult) in self.graph.adj0(i) {
                let j = j as usize;
                let value = match self.kind {
                    OperatorKind::Adjacency => mult as f64,
                    OperatorKind::WalkKernel => mult as f64 * self.inv_deg[i],
                    OperatorKind::NormAdjacency => {
                        mult as f64 * self.inv_sqrt_deg[i] * self.inv_sqrt_deg[j]
                    }
                    OperatorKind::Laplacian => {
                        -(mult as f64 * self.inv_sqrt_deg[i] * self.inv_sqrt_deg[j])
                    }
                };
                out.set(i, j, value);
            }
        }
        Ok(out)
    }
}
