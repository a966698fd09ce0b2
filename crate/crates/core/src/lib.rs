//! Numerical laboratory for Barabási–Albert preferential-attachment multigraphs.
//!
//! The crate grows the classic degree-proportional multigraph (each new vertex
//! brings `m >= 2` edges, endpoints drawn with replacement), exposes its matrix
//! operators (adjacency, random-walk kernel, normalized adjacency `W`, and
//! normalized Laplacian `L = I - W`), and provides the verification toolbox
//! around them:
//!
//! * dense symmetric eigensolve of `L` and the empirical spectral distribution,
//! * Stieltjes transforms `m_n(z)` by eigenvalues, by complex linear solves,
//!   and by a truncated Neumann series with a rigorous geometric tail bound,
//! * rooted decorated balls and the dynamic-programming evaluation of k-step
//!   return probabilities, which are exactly the diagonal entries of `W^k`,
//! * multi-seed, multi-size studies of self-averaging and spectral
//!   stabilization, with explicit Azuma-Hoeffding bound calculators.
//!
//! Everything here is deterministic: the same `(n, m, seed)` triple always
//! produces the same graph, and every average is accumulated in a fixed order
//! with compensated summation.
//!
//! ```
//! use paspectra_core::graph::Graph;
//! use paspectra_core::neumann::{stieltjes_neumann, tail_bound};
//! use paspectra_core::spectral::{eigenvalues, stieltjes_direct};
//! use paspectra_core::{Complex64, DEFAULT_DENSE_LIMIT};
//!
//! let g = Graph::generate(200, 2, 42)?;
//! let spectrum = eigenvalues(&g, DEFAULT_DENSE_LIMIT)?;
//! assert!(spectrum.raw_min.abs() <= 1e-9); // 0 is always an eigenvalue
//!
//! // Two routes to m_n(z), with the series error certified by its bound.
//! let z = Complex64::new(1.0, 1.5);
//! let direct = stieltjes_direct(&spectrum, z)?;
//! let series = stieltjes_neumann(&g, z, 30)?;
//! assert!((direct.value - series.value).norm() <= tail_bound(z, 30)?);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default `std`
//! feature and enable `libm` for embedded or wasm targets. File formats and
//! the command-line front end live in the companion `paspectra-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("paspectra-core requires either the `std` or the `libm` feature");

pub mod dense;
pub mod experiments;
pub mod graph;
pub mod local;
mod math;
pub mod neumann;
pub mod numeric;
pub mod operators;
pub mod rng;
pub mod spectral;

pub use num_complex::Complex64;

/// Largest `n` for which dense materializations (matrices, eigensolves,
/// complex solves) are attempted by default. Callers may pass their own limit.
pub const DEFAULT_DENSE_LIMIT: usize = 5000;
