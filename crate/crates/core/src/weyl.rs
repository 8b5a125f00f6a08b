//! Discretization of torus observables onto the `N × N` lattice and back.
//!
//! A trigonometric polynomial `f(x) = Σ f̂ₙ exp(2πi n·x)` is sampled to the
//! diagonal matrix `Σ_ℓ f(ℓ/N) |ℓ⟩⟨ℓ|`. Reconstruction uses the coherent
//! vectors
//!
//! ```text
//! β(x) = λ₁₁|⌊Nx₁⌋, ⌊Nx₂⌋⟩ + λ₁₂|⌊Nx₁⌋, ⌊Nx₂⌋+1⟩
//!      + λ₂₁|⌊Nx₁⌋+1, ⌊Nx₂⌋⟩ + λ₂₂|⌊Nx₁⌋+1, ⌊Nx₂⌋+1⟩
//! ```
//!
//! with cosine/sine weights of the fractional parts `{Nxᵢ}`, and returns
//! `⟨β(x)| M |β(x)⟩`. The round trip converges uniformly to `f` as `N → ∞`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{ChaosError, Result};
use crate::maps::{frac, LatticePoint, UnitPoint};

/// Finite sum of Fourier modes `W(n)(x) = exp(2πi n·x)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPolynomial {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::zero().with_term((0, 0), c)
    }

    /// The single exponential `W(n)`.
    pub fn mode(n: (i64, i64)) -> Self {
        Self::zero().with_term(n, Complex64::new(1.0, 0.0))
    }

    pub fn with_term(mut self, n: (i64, i64), coefficient: Complex64) -> Self {
        *self.terms.entry(n).or_default() += coefficient;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Complex64)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: UnitPoint) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(n1, n2), &c)| {
                let phase = TAU * (n1 as f64 * x.x1 + n2 as f64 * x.x2);
                c * Complex64::from_polar(1.0, phase)
            })
            .sum()
    }

    /// Value at the lattice point `ℓ/N`. Frequencies are reduced mod `N`
    /// first so the phase is computed from a small exact integer.
    pub fn eval_lattice(&self, l: LatticePoint, grid: u32) -> Complex64 {
        let n = i64::from(grid);
        self.terms
            .iter()
            .map(|(&(n1, n2), &c)| {
                let k = (n1 * i64::from(l.l1) + n2 * i64::from(l.l2)).rem_euclid(n);
                c * Complex64::from_polar(1.0, TAU * k as f64 / n as f64)
            })
            .sum()
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((-a, -b), c.conj()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TrigPolynomial) -> Self {
        let mut out = Self::zero();
        for (&(a1, a2), &c) in &self.terms {
            for (&(b1, b2), &d) in &other.terms {
                out = out.with_term((a1 + b1, a2 + b2), c * d);
            }
        }
        out
    }
}

/// Diagonal matrix on `ℂ^{N²}`, stored as its diagonal in row-major
/// lattice order.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalObservable {
    grid: u32,
    values: Vec<Complex64>,
}

impl DiagonalObservable {
    pub fn new(grid: u32, values: Vec<Complex64>) -> Result<Self> {
        if grid < 2 {
            return Err(ChaosError::InvalidGrid(grid));
        }
        let expected = grid as usize * grid as usize;
        if values.len() != expected {
            return Err(ChaosError::ShapeMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> u32 {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, l: LatticePoint) -> Complex64 {
        self.values[l.index(self.grid)]
    }

    /// Tracial state `(1/N²) Tr M`.
    pub fn tracial_state(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    /// Pointwise (matrix) product.
    pub fn hadamard(&self, other: &DiagonalObservable) -> Result<Self> {
        if self.grid != other.grid {
            return Err(ChaosError::ShapeMismatch {
                expected: self.values.len(),
                got: other.values.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    pub fn adjoint(&self) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }
}

/// `Σ_ℓ f(ℓ/N) |ℓ⟩⟨ℓ|`.
pub fn sample(f: &TrigPolynomial, grid: u32) -> Result<DiagonalObservable> {
    let values = LatticePoint::all(grid)
        .map(|l| f.eval_lattice(l, grid))
        .collect();
    DiagonalObservable::new(grid, values)
}

/// Amplitudes of the coherent vector `β(x)` on the four corners of the grid
/// cell containing `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentWeights {
    pub lambda11: f64,
    pub lambda12: f64,
    pub lambda21: f64,
    pub lambda22: f64,
    /// Lower-left corner `(⌊Nx₁⌋, ⌊Nx₂⌋)` of the cell.
    pub base: LatticePoint,
}

impl CoherentWeights {
    /// `(corner, amplitude)` pairs, wrapping mod `N` at the torus edge.
    pub fn corners(&self, grid: u32) -> [(LatticePoint, f64); 4] {
        let (b1, b2) = (i64::from(self.base.l1), i64::from(self.base.l2));
        [
            (LatticePoint::new(b1, b2, grid), self.lambda11),
            (LatticePoint::new(b1, b2 + 1, grid), self.lambda12),
            (LatticePoint::new(b1 + 1, b2, grid), self.lambda21),
            (LatticePoint::new(b1 + 1, b2 + 1, grid), self.lambda22),
        ]
    }

    pub fn norm_squared(&self) -> f64 {
        self.lambda11.powi(2)
            + self.lambda12.powi(2)
            + self.lambda21.powi(2)
            + self.lambda22.powi(2)
    }
}

pub fn coherent_weights(x: UnitPoint, grid: u32) -> CoherentWeights {
    let n = f64::from(grid);
    let x = x.frac();
    let (s1, s2) = (n * x.x1, n * x.x2);
    let base = LatticePoint::new(s1.floor() as i64, s2.floor() as i64, grid);
    let (f1, f2) = (frac(s1), frac(s2));
    let (c1, sn1) = ((FRAC_PI_2 * f1).cos(), (FRAC_PI_2 * f1).sin());
    let (c2, sn2) = ((FRAC_PI_2 * f2).cos(), (FRAC_PI_2 * f2).sin());
    CoherentWeights {
        lambda11: c1 * c2,
        lambda12: c1 * sn2,
        lambda21: sn1 * c2,
        lambda22: sn1 * sn2,
        base,
    }
}

/// `⟨β(x)| M |β(x)⟩`.
pub fn reconstruct(m: &DiagonalObservable, x: UnitPoint) -> Complex64 {
    coherent_weights(x, m.grid())
        .corners(m.grid())
        .iter()
        .map(|&(corner, w)| m.at(corner) * (w * w))
        .sum()
}

/// Side of the fixed offset grid used by [`convergence_gap`].
pub const GAP_SAMPLE_SIDE: usize = 317;

/// Estimate of `sup_x |f̃_N(x) − f(x)|` over a deterministic grid of
/// `samples × samples` cell-centred points (`samples = 0` is treated as 1).
pub fn convergence_gap(f: &TrigPolynomial, grid: u32, samples: usize) -> Result<f64> {
    let sampled = sample(f, grid)?;
    let side = samples.max(1);
    let mut worst = 0.0f64;
    for i in 0..side {
        for j in 0..side {
            let x = UnitPoint::new(
                (i as f64 + 0.5) / side as f64,
                (j as f64 + 0.5) / side as f64,
            );
            worst = worst.max((reconstruct(&sampled, x) - f.eval(x)).norm());
        }
    }
    Ok(worst)
}
