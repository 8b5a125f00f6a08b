//! Brute-force multitime correlation matrix for small instances.
//!
//! `ρ_{ij} = (1/N²)(1/Dⁿ) Σ_ℓ exp((2πi/N) Σ_p (r_{i_p} − r_{j_p})·U^p(ℓ))`
//! is assembled as `Σ_ℓ |g_ℓ⟩⟨g_ℓ|` with one amplitude per symbol string, so
//! the cost is `O(N²·D²ⁿ)`. Its nonzero spectrum coincides with that of the
//! Gram matrix, which makes it an independent check of both entropy engines.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{ChaosError, Result};
use crate::maps::{trajectory_u, LatticePoint, MapParams};

use super::gram::{hermitian_defect, hermitian_eigenvalues, von_neumann_entropy};
use super::partition::{Partition, SymbolString};

/// Largest `Dⁿ` the oracle accepts.
pub const ORACLE_MAX_DIM: u128 = 4096;

/// `Dⁿ × Dⁿ` density matrix, row-major, rows indexed by symbol strings in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(self.dim, &self.entries)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(self.dim, &self.entries)
    }

    pub fn entropy(&self) -> Result<f64> {
        von_neumann_entropy(&self.eigenvalues()?)
    }
}

pub fn oracle_density_matrix(
    part: &Partition,
    params: &MapParams,
    n: usize,
) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(ChaosError::TooFewSteps { min: 1, got: 0 });
    }
    let d = part.size() as u128;
    let dim = d
        .checked_pow(n as u32)
        .filter(|&v| v <= ORACLE_MAX_DIM)
        .ok_or(ChaosError::OracleTooLarge {
            dim: d.saturating_pow(n as u32),
            limit: ORACLE_MAX_DIM,
        })? as usize;
    if part.grid() != params.grid() {
        return Err(ChaosError::InvalidPartition(format!(
            "partition lives on a {} grid but the map uses N = {}",
            part.grid(),
            params.grid()
        )));
    }

    let grid = params.grid();
    let strings: Vec<SymbolString> = SymbolString::enumerate(part.size(), n).collect();
    let amplitude = 1.0 / (f64::from(grid) * (dim as f64).sqrt());
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut g = vec![Complex64::new(0.0, 0.0); dim];
    for l in LatticePoint::all(grid) {
        let traj = trajectory_u(params, l, n)?;
        for (slot, s) in g.iter_mut().zip(&strings) {
            let phase: f64 = s
                .symbols()
                .iter()
                .zip(&traj)
                .map(|(&j, x)| {
                    let r = part.points()[j];
                    f64::from(r.l1) * x.x1 + f64::from(r.l2) * x.x2
                })
                .sum();
            *slot = Complex64::from_polar(amplitude, TAU * phase / f64::from(grid));
        }
        for (i, gi) in g.iter().enumerate() {
            let row = &mut entries[i * dim..(i + 1) * dim];
            for (cell, gj) in row.iter_mut().zip(&g) {
                *cell += gi * gj.conj();
            }
        }
    }
    Ok(DensityMatrix { dim, entries })
}
