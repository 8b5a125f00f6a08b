//! Discretized hyperbolic, elliptic and parabolic maps on the 2-torus, and
//! the entropy production of exponential partitions of unity under them.
//!
//! The crate is organised bottom-up:
//!
//! - [`maps`]: the torus automorphisms `T_α`, the sawtooth maps `S_α`, their
//!   lift `U_α` to the `N × N` lattice, and regime classification.
//! - [`weyl`]: sampling of trigonometric polynomials onto the lattice and
//!   coherent-state reconstruction back onto the torus.
//! - [`entropy`]: partitions, the string-image function and its frequency
//!   field, the Gram matrix `G(n)`, Von Neumann entropies and a brute-force
//!   density-matrix oracle for small instances.
//! - [`lyapunov`]: compactified time, Lagrange extrapolation of the entropy
//!   production, closed-form exponents and breaking times.
//!
//! All entropies are in nats.

pub mod entropy;
pub mod error;
pub mod lyapunov;
pub mod maps;
pub mod weyl;

pub use error::{ChaosError, Result};
