use std::collections::HashSet;

use crate::error::{ChaosError, Result};
use crate::maps::LatticePoint;

/// The ordered set `Λ = {r₁, …, r_D}` of distinct lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    grid: u32,
    points: Vec<LatticePoint>,
}

impl Partition {
    pub fn new(grid: u32, points: Vec<LatticePoint>) -> Result<Self> {
        if grid < 2 {
            return Err(ChaosError::InvalidGrid(grid));
        }
        if points.is_empty() {
            return Err(ChaosError::InvalidPartition(
                "a partition needs at least one point".into(),
            ));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if p.l1 >= grid || p.l2 >= grid {
                return Err(ChaosError::InvalidPartition(format!(
                    "point ({}, {}) lies outside the {grid}x{grid} lattice",
                    p.l1, p.l2
                )));
            }
            if !seen.insert(*p) {
                return Err(ChaosError::InvalidPartition(format!(
                    "point ({}, {}) appears twice",
                    p.l1, p.l2
                )));
            }
        }
        Ok(Self { grid, points })
    }

    /// Builds a partition from integer pairs, reducing them mod `grid`.
    pub fn from_pairs(grid: u32, pairs: &[(i64, i64)]) -> Result<Self> {
        if grid < 2 {
            return Err(ChaosError::InvalidGrid(grid));
        }
        Self::new(
            grid,
            pairs
                .iter()
                .map(|&(a, b)| LatticePoint::new(a, b, grid))
                .collect(),
        )
    }

    /// The same points on another grid, reduced mod the new size.
    pub fn regrid(&self, grid: u32) -> Result<Self> {
        let pairs: Vec<_> = self
            .points
            .iter()
            .map(|p| (i64::from(p.l1), i64::from(p.l2)))
            .collect();
        Self::from_pairs(grid, &pairs)
    }

    pub fn grid(&self) -> u32 {
        self.grid
    }

    /// `D`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }
}

/// A string `(i₀, …, i_{n−1})` of zero-based indices into a [`Partition`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolString(Vec<usize>);

impl SymbolString {
    pub fn new(symbols: Vec<usize>, alphabet: usize) -> Result<Self> {
        if symbols.is_empty() {
            return Err(ChaosError::TooFewSteps { min: 1, got: 0 });
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet) {
            return Err(ChaosError::SymbolOutOfRange {
                symbol,
                size: alphabet,
            });
        }
        Ok(Self(symbols))
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `alphabetⁿ` strings of length `n` in lexicographic order.
    pub fn enumerate(alphabet: usize, n: usize) -> impl Iterator<Item = SymbolString> {
        let total = (alphabet as u64)
            .checked_pow(n as u32)
            .expect("string count overflows u64");
        (0..total).map(move |mut k| {
            let mut symbols = vec![0; n];
            for slot in symbols.iter_mut().rev() {
                *slot = (k % alphabet as u64) as usize;
                k /= alphabet as u64;
            }
            SymbolString(symbols)
        })
    }
}
