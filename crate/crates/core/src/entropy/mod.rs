//! Entropy of exponential partitions of unity under the lattice dynamics.
//!
//! A partition is a set `Λ = {r₁, …, r_D}` of lattice points; its elements are
//! the sampled exponentials `D^{-1/2} W(r_j)`. Refining it along `n` time
//! steps produces `Dⁿ` strings, and the entropy of the refined partition is
//! the Von Neumann entropy of the `N² × N²` Gram matrix `G(n)`.
//!
//! Two engines compute it:
//!
//! - **frequency** (integer `α` only): `G(n)` is diagonal in the Fourier
//!   basis with eigenvalues `ν(r)`, the fraction of strings whose image
//!   `Σ_p (T^tr)^p r_{i_p} (mod N)` equals `r`. `ν` is obtained by an
//!   `O(n·D·N²)` convolution recursion, never enumerating strings.
//! - **gram**: builds `G(n)` from lattice trajectories with a product
//!   factorization over time steps and diagonalizes it. Works for any real
//!   `α`, including sawtooth maps.
//!
//! [`oracle`] holds the `Dⁿ × Dⁿ` density matrix summed directly over the
//! lattice, for cross-checking both engines on small instances.

mod frequency;
mod gram;
pub mod oracle;
mod partition;
mod series;

pub use frequency::{
    frequencies, frequency_fields, shannon_entropy, string_image, support_set, FrequencyField,
};
pub use gram::{
    gram_entropy, gram_matrix, von_neumann_entropy, GramMatrix, NEGATIVE_EIGENVALUE_TOLERANCE,
};
pub use oracle::{oracle_density_matrix, DensityMatrix, ORACLE_MAX_DIM};
pub use partition::{Partition, SymbolString};
pub use series::{entropy_series, Engine, EntropyRow, EntropySeries};

/// `−x ln x` with `0 ln 0 = 0`.
pub(crate) fn entropy_term(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.ln()
    } else {
        0.0
    }
}
