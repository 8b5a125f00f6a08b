use std::f64::consts::TAU;

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{ChaosError, Result};
use crate::maps::{reduce_mod, trajectory_u, LatticePoint, MapParams};

use super::entropy_term;
use super::partition::Partition;

/// Eigenvalues below `−NEGATIVE_EIGENVALUE_TOLERANCE` mark a matrix that is
/// not positive semidefinite; anything between that and zero is roundoff and
/// is clamped to zero.
pub const NEGATIVE_EIGENVALUE_TOLERANCE: f64 = 1e-8;

/// The `N² × N²` Gram matrix `G(n)_{ℓ₁ℓ₂} = ⟨g_{ℓ₂}(n)|g_{ℓ₁}(n)⟩`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    grid: u32,
    steps: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

impl GramMatrix {
    pub fn grid(&self) -> u32 {
        self.grid
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// `max |G_{ij} − conj(G_{ji})|`.
    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(self.dim, &self.entries)
    }

    /// Ascending real spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(self.dim, &self.entries)
    }
}

pub(crate) fn hermitian_defect(dim: usize, entries: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..=i {
            worst = worst.max((entries[i * dim + j] - entries[j * dim + i].conj()).norm());
        }
    }
    worst
}

pub(crate) fn hermitian_eigenvalues(dim: usize, entries: &[Complex64]) -> Result<Vec<f64>> {
    let m: Mat<Complex64> = Mat::from_fn(dim, dim, |i, j| entries[i * dim + j]);
    let mut eigs = m
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| ChaosError::Eigensolver(format!("{e:?}")))?;
    eigs.sort_by(f64::total_cmp);
    Ok(eigs)
}

/// `−Σ η ln η` over a spectrum, clamping roundoff negatives and values
/// above one.
pub fn von_neumann_entropy(eigenvalues: &[f64]) -> Result<f64> {
    if let Some(&bad) = eigenvalues
        .iter()
        .find(|&&e| e < -NEGATIVE_EIGENVALUE_TOLERANCE)
    {
        return Err(ChaosError::NegativeEigenvalue(bad));
    }
    Ok(eigenvalues
        .iter()
        .map(|&e| entropy_term(e.clamp(0.0, 1.0)))
        .sum())
}

/// Phases `exp((2πi/N) r_j·x)` for every partition point, with the dot
/// product reduced mod `N` first. For lattice points that reduction is exact.
pub(crate) fn phases(part: &Partition, x1: f64, x2: f64) -> Vec<Complex64> {
    let n = f64::from(part.grid());
    part.points()
        .iter()
        .map(|r| {
            let k = reduce_mod(f64::from(r.l1) * x1 + f64::from(r.l2) * x2, n);
            Complex64::from_polar(1.0, TAU * k / n)
        })
        .collect()
}

/// Builds `G(n)` from the lattice trajectories `U^p(ℓ)`.
///
/// Summing over independent symbol choices at each time step factorizes the
/// `Dⁿ`-term inner product:
///
/// ```text
/// G_{ℓ₁ℓ₂}(n) = (1/N²) Π_{p<n} (1/D) Σ_j exp((2πi/N) r_j·(U^p ℓ₁ − U^p ℓ₂))
/// ```
///
/// Only the lower triangle is computed; the upper one is its conjugate, so
/// the result is exactly Hermitian.
pub fn gram_matrix(part: &Partition, params: &MapParams, n: usize) -> Result<GramMatrix> {
    if n == 0 {
        return Err(ChaosError::TooFewSteps { min: 1, got: 0 });
    }
    if part.grid() != params.grid() {
        return Err(ChaosError::InvalidPartition(format!(
            "partition lives on a {} grid but the map uses N = {}",
            part.grid(),
            params.grid()
        )));
    }
    let grid = params.grid();
    let dim = grid as usize * grid as usize;
    let d = part.size();

    // amplitudes[p][ℓ·D + j]
    let mut amplitudes = vec![Vec::with_capacity(dim * d); n];
    for l in LatticePoint::all(grid) {
        for (p, x) in trajectory_u(params, l, n)?.into_iter().enumerate() {
            amplitudes[p].extend(phases(part, x.x1, x.x2));
        }
    }

    let norm = 1.0 / (dim as f64);
    let inv_d = 1.0 / d as f64;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for a in 0..dim {
        for b in 0..=a {
            let mut value = Complex64::new(norm, 0.0);
            for amp in &amplitudes {
                let (ra, rb) = (&amp[a * d..(a + 1) * d], &amp[b * d..(b + 1) * d]);
                let s: Complex64 = ra.iter().zip(rb).map(|(x, y)| x * y.conj()).sum();
                value *= s * inv_d;
            }
            if a == b {
                value.im = 0.0;
            }
            entries[a * dim + b] = value;
            entries[b * dim + a] = value.conj();
        }
    }
    let g = GramMatrix {
        grid,
        steps: n,
        dim,
        entries,
    };
    debug_assert!((g.trace().re - 1.0).abs() < 1e-9, "trace {}", g.trace());
    Ok(g)
}

/// Von Neumann entropy `−Tr G ln G`.
pub fn gram_entropy(g: &GramMatrix) -> Result<f64> {
    von_neumann_entropy(&g.eigenvalues()?)
}
