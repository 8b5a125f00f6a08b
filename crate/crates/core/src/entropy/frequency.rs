use crate::error::{ChaosError, Result};
use crate::maps::{IntMatrix, LatticePoint, MapParams};

use super::entropy_term;
use super::partition::{Partition, SymbolString};

fn require_integer_alpha(params: &MapParams) -> Result<i64> {
    params
        .integer_alpha()
        .ok_or(ChaosError::FrequencyEngineNeedsIntegerAlpha(params.alpha()))
}

fn check_grid(part: &Partition, params: &MapParams) -> Result<()> {
    if part.grid() != params.grid() {
        return Err(ChaosError::InvalidPartition(format!(
            "partition lives on a {} grid but the map uses N = {}",
            part.grid(),
            params.grid()
        )));
    }
    Ok(())
}

/// `f(i) = Σ_p (T_α^tr)^p r_{i_p} (mod N)`.
pub fn string_image(
    part: &Partition,
    params: &MapParams,
    s: &SymbolString,
) -> Result<LatticePoint> {
    let alpha = require_integer_alpha(params)?;
    check_grid(part, params)?;
    let grid = params.grid();
    let step = IntMatrix::transpose_of_forward(alpha).reduce(grid);
    let mut power = IntMatrix::IDENTITY;
    let n = i64::from(grid);
    let (mut acc1, mut acc2) = (0i64, 0i64);
    for &symbol in s.symbols() {
        let r = *part
            .points()
            .get(symbol)
            .ok_or(ChaosError::SymbolOutOfRange {
                symbol,
                size: part.size(),
            })?;
        let img = power.apply_mod(r, grid);
        acc1 = (acc1 + i64::from(img.l1)) % n;
        acc2 = (acc2 + i64::from(img.l2)) % n;
        power = step.mul_mod(&power, grid);
    }
    Ok(LatticePoint::new(acc1, acc2, grid))
}

/// Frequency function `ν(r) = #{strings with image r} / Dⁿ` over the
/// lattice, in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyField {
    grid: u32,
    steps: usize,
    nu: Vec<f64>,
    counts: Option<Vec<u128>>,
}

impl FrequencyField {
    pub fn grid(&self) -> u32 {
        self.grid
    }

    /// Number of time steps `n`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn at(&self, l: LatticePoint) -> f64 {
        self.nu[l.index(self.grid)]
    }

    /// Exact string counts `#[r]`, while `Dⁿ` still fits in a `u128`.
    pub fn counts(&self) -> Option<&[u128]> {
        self.counts.as_deref()
    }

    pub fn max(&self) -> f64 {
        self.nu.iter().copied().fold(0.0, f64::max)
    }
}

enum Weights {
    Exact { counts: Vec<u128>, total: u128 },
    Float(Vec<f64>),
}

/// Iterator over `ν` for `n = 1, 2, …`, advancing the convolution recursion
/// `h_k(r) = (1/D) Σ_j h_{k−1}(r − (T^tr)^{k−1} r_j)` from a point mass at the
/// origin.
pub struct FrequencyRecursion {
    grid: u32,
    points: Vec<LatticePoint>,
    step: IntMatrix,
    power: IntMatrix,
    steps_done: usize,
    weights: Weights,
}

impl FrequencyRecursion {
    fn advance(&mut self) {
        let n = self.grid as usize;
        let shifts: Vec<(usize, usize)> = self
            .points
            .iter()
            .map(|&r| {
                let s = self.power.apply_mod(r, self.grid);
                (s.l1 as usize, s.l2 as usize)
            })
            .collect();
        let d = self.points.len();
        self.weights = match std::mem::replace(&mut self.weights, Weights::Float(Vec::new())) {
            Weights::Exact { counts, total } => match total.checked_mul(d as u128) {
                Some(total) => Weights::Exact {
                    counts: convolve(&counts, n, &shifts),
                    total,
                },
                None => {
                    // counts would overflow: continue with probabilities
                    let probs: Vec<f64> = counts.iter().map(|&c| c as f64 / total as f64).collect();
                    Weights::Float(scale(convolve(&probs, n, &shifts), d))
                }
            },
            Weights::Float(probs) => Weights::Float(scale(convolve(&probs, n, &shifts), d)),
        };
        self.power = self.step.mul_mod(&self.power, self.grid);
        self.steps_done += 1;
    }

    fn field(&self) -> FrequencyField {
        let (nu, counts) = match &self.weights {
            Weights::Exact { counts, total } => {
                let t = *total as f64;
                (
                    counts.iter().map(|&c| c as f64 / t).collect(),
                    Some(counts.clone()),
                )
            }
            Weights::Float(p) => (p.clone(), None),
        };
        FrequencyField {
            grid: self.grid,
            steps: self.steps_done,
            nu,
            counts,
        }
    }
}

impl Iterator for FrequencyRecursion {
    type Item = FrequencyField;

    fn next(&mut self) -> Option<FrequencyField> {
        self.advance();
        Some(self.field())
    }
}

fn scale(mut v: Vec<f64>, d: usize) -> Vec<f64> {
    let inv = 1.0 / d as f64;
    v.iter_mut().for_each(|x| *x *= inv);
    v
}

/// `out[a + s] += src[a]` for every shift `s`, on the `n × n` torus.
fn convolve<T>(src: &[T], n: usize, shifts: &[(usize, usize)]) -> Vec<T>
where
    T: Copy + Default + std::ops::AddAssign,
{
    let mut out = vec![T::default(); n * n];
    for &(s1, s2) in shifts {
        for a in 0..n {
            let from = &src[a * n..(a + 1) * n];
            let ta = (a + s1) % n;
            let to = &mut out[ta * n..(ta + 1) * n];
            let (head, tail) = from.split_at(n - s2);
            for (t, &v) in to[s2..].iter_mut().zip(head) {
                *t += v;
            }
            for (t, &v) in to[..s2].iter_mut().zip(tail) {
                *t += v;
            }
        }
    }
    out
}

/// Frequency fields for `n = 1, 2, …`; integer `α` only.
pub fn frequency_fields(part: &Partition, params: &MapParams) -> Result<FrequencyRecursion> {
    let alpha = require_integer_alpha(params)?;
    check_grid(part, params)?;
    let grid = params.grid();
    let mut counts = vec![0u128; grid as usize * grid as usize];
    counts[0] = 1;
    Ok(FrequencyRecursion {
        grid,
        points: part.points().to_vec(),
        step: IntMatrix::transpose_of_forward(alpha).reduce(grid),
        power: IntMatrix::IDENTITY,
        steps_done: 0,
        weights: Weights::Exact { counts, total: 1 },
    })
}

/// `ν^{(n)}` after `n ≥ 1` steps.
pub fn frequencies(part: &Partition, params: &MapParams, n: usize) -> Result<FrequencyField> {
    if n == 0 {
        return Err(ChaosError::TooFewSteps { min: 1, got: 0 });
    }
    Ok(frequency_fields(part, params)?
        .nth(n - 1)
        .expect("recursion is unbounded"))
}

/// `−Σ ν ln ν` in nats.
pub fn shannon_entropy(nu: &FrequencyField) -> f64 {
    nu.nu().iter().copied().map(entropy_term).sum()
}

/// Lattice points with `ν > 0`, in row-major order.
pub fn support_set(nu: &FrequencyField) -> Vec<LatticePoint> {
    nu.nu()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, _)| LatticePoint::from_index(i, nu.grid()))
        .collect()
}
