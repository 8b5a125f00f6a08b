//! Torus maps and their lattice lifts.
//!
//! For a parameter `α` the linear part of every map here is
//!
//! ```text
//! ⎛1+α  1⎞
//! ⎝ α   1⎠
//! ```
//!
//! which has determinant 1. For integer `α` it defines the automorphism `T_α`
//! of the unit torus; for real `α` the sawtooth map `S_α` applies the same
//! matrix to `({x₁}, x₂)`. The lattice lift `U_α(ℓ) = N·T_α(ℓ/N)` acts on the
//! `N × N` grid `(ℤ/Nℤ)²`.
//!
//! Integer-α lattice dynamics run entirely in exact integer arithmetic with a
//! reduction mod `N` after every product, so orbits of any length are exact.
//!
//! Real-α trajectories live in `[0, N)²` in double precision and are reduced
//! mod `N` after every step. One step multiplies an incoming error by at most
//! the operator norm of the matrix (below `|α| + 2.5`) and adds a rounding
//! error of order `N·ε`, so after `n` steps the absolute error is bounded by
//! roughly `n·(|α| + 2.5)ⁿ·N·ε`: about `1e-11` for `N = 38`, `α = 1`,
//! `n = 5`, far below the lattice spacing of 1. The exception is a point that
//! lands within that distance of the discontinuity line `x₁ ≡ 0`, where the
//! branch of the fractional part may flip. Intended use is `n ≲ 16`.

use crate::error::{ChaosError, Result};
use num_complex::Complex64;

/// Fractional part in `[0, 1)`. Points on the discontinuity take `{0} = 0`.
pub fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    // x slightly below an integer can round up to exactly 1.0
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `x mod m` in `[0, m)` for a positive real modulus.
pub(crate) fn reduce_mod(x: f64, m: f64) -> f64 {
    let r = x.rem_euclid(m);
    if r >= m {
        0.0
    } else {
        r
    }
}

/// Dynamical parameter `α` together with the inverse lattice spacing `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    alpha: f64,
    grid: u32,
}

impl MapParams {
    pub fn new(alpha: f64, grid: u32) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(ChaosError::NonFiniteAlpha(alpha));
        }
        if grid < 2 {
            return Err(ChaosError::InvalidGrid(grid));
        }
        Ok(Self { alpha, grid })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> u32 {
        self.grid
    }

    /// `Some(α)` when `α` is an integer that fits the exact lattice path.
    pub fn integer_alpha(&self) -> Option<i64> {
        integer_alpha(self.alpha)
    }

    fn require_integer(&self) -> Result<i64> {
        self.integer_alpha()
            .ok_or(ChaosError::NonIntegerAlpha(self.alpha))
    }
}

pub(crate) fn integer_alpha(alpha: f64) -> Option<i64> {
    (alpha.is_finite() && alpha.fract() == 0.0 && alpha.abs() < 1e12).then_some(alpha as i64)
}

/// A point `ℓ` of `(ℤ/Nℤ)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub l1: u32,
    pub l2: u32,
}

impl LatticePoint {
    /// Reduces arbitrary integer coordinates mod `grid`.
    pub fn new(l1: i64, l2: i64, grid: u32) -> Self {
        let n = i64::from(grid);
        Self {
            l1: l1.rem_euclid(n) as u32,
            l2: l2.rem_euclid(n) as u32,
        }
    }

    /// Row-major index `l1·N + l2`.
    pub fn index(&self, grid: u32) -> usize {
        self.l1 as usize * grid as usize + self.l2 as usize
    }

    pub fn from_index(index: usize, grid: u32) -> Self {
        let n = grid as usize;
        Self {
            l1: (index / n) as u32,
            l2: (index % n) as u32,
        }
    }

    pub fn to_torus(self) -> TorusPoint {
        TorusPoint {
            x1: f64::from(self.l1),
            x2: f64::from(self.l2),
        }
    }

    /// All `N²` lattice points in row-major order.
    pub fn all(grid: u32) -> impl Iterator<Item = LatticePoint> {
        (0..grid).flat_map(move |l1| (0..grid).map(move |l2| LatticePoint { l1, l2 }))
    }
}

/// A point of the torus `[0, N)² (mod N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    pub x1: f64,
    pub x2: f64,
}

impl TorusPoint {
    /// The lattice point this torus point sits on, if both coordinates are
    /// integers.
    pub fn as_lattice(&self, grid: u32) -> Option<LatticePoint> {
        (self.x1.fract() == 0.0 && self.x2.fract() == 0.0)
            .then(|| LatticePoint::new(self.x1 as i64, self.x2 as i64, grid))
    }
}

/// A point of the unit torus `[0, 1)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    pub x1: f64,
    pub x2: f64,
}

impl UnitPoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    /// Componentwise fractional part.
    pub fn frac(self) -> Self {
        Self {
            x1: frac(self.x1),
            x2: frac(self.x2),
        }
    }

    /// Distance on the unit torus, in the sup norm.
    pub fn torus_distance(&self, other: &UnitPoint) -> f64 {
        let d = |a: f64, b: f64| {
            let t = frac(a - b);
            t.min(1.0 - t)
        };
        d(self.x1, other.x1).max(d(self.x2, other.x2))
    }
}

/// 2×2 integer matrix. Products are exact; `*_mod` variants reduce mod `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMatrix(pub [[i64; 2]; 2]);

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix([[1, 0], [0, 1]]);

    /// `T_α`.
    pub fn forward(alpha: i64) -> Self {
        IntMatrix([[1 + alpha, 1], [alpha, 1]])
    }

    /// `T_α^tr`, the action of `T_α` on Fourier frequencies.
    pub fn transpose_of_forward(alpha: i64) -> Self {
        Self::forward(alpha).transpose()
    }

    /// `T_α⁻¹`.
    pub fn inverse_of_forward(alpha: i64) -> Self {
        IntMatrix([[1, -1], [-alpha, 1 + alpha]])
    }

    pub fn transpose(&self) -> Self {
        let m = self.0;
        IntMatrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        IntMatrix(out)
    }

    pub fn mul_mod(&self, rhs: &IntMatrix, modulus: u32) -> IntMatrix {
        self.reduce(modulus)
            .mul(&rhs.reduce(modulus))
            .reduce(modulus)
    }

    pub fn reduce(&self, modulus: u32) -> IntMatrix {
        let n = i64::from(modulus);
        IntMatrix(self.0.map(|row| row.map(|v| v.rem_euclid(n))))
    }

    pub fn pow(&self, exp: u32) -> IntMatrix {
        (0..exp).fold(Self::IDENTITY, |acc, _| acc.mul(self))
    }

    pub fn pow_mod(&self, exp: u32, modulus: u32) -> IntMatrix {
        let mut result = Self::IDENTITY.reduce(modulus);
        let mut base = self.reduce(modulus);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        result
    }

    /// `M·ℓ (mod N)`.
    pub fn apply_mod(&self, l: LatticePoint, grid: u32) -> LatticePoint {
        let m = self.reduce(grid).0;
        let (a, b) = (i64::from(l.l1), i64::from(l.l2));
        LatticePoint::new(m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b, grid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeKind {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

impl RegimeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeKind::Hyperbolic => "hyperbolic",
            RegimeKind::Elliptic => "elliptic",
            RegimeKind::Parabolic => "parabolic",
        }
    }
}

impl std::fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime of `T_α` / `S_α` and its eigenvalue pair.
///
/// For hyperbolic `α`, `lambda_plus` is the eigenvalue of modulus greater
/// than one (negative when `α < −4`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub kind: RegimeKind,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

impl Regime {
    /// `ln |λ₊|`; zero outside the hyperbolic regime.
    pub fn log_lambda(&self) -> f64 {
        match self.kind {
            RegimeKind::Hyperbolic => self.lambda_plus.norm().ln(),
            _ => 0.0,
        }
    }

    /// Exact period of `T_α` for the three integer elliptic parameters.
    pub fn period(alpha: f64) -> Option<u32> {
        match integer_alpha(alpha)? {
            -1 => Some(6),
            -2 => Some(4),
            -3 => Some(3),
            _ => None,
        }
    }
}

/// `λ± = (α + 2 ± √((α+2)² − 4)) / 2`.
pub fn eigenvalues(alpha: f64) -> (Complex64, Complex64) {
    let trace = alpha + 2.0;
    let disc = Complex64::new(trace * trace - 4.0, 0.0).sqrt();
    let t = Complex64::new(trace, 0.0);
    ((t + disc) / 2.0, (t - disc) / 2.0)
}

pub fn classify_regime(alpha: f64) -> Regime {
    let (plus, minus) = eigenvalues(alpha);
    let trace = alpha + 2.0;
    let kind = if trace * trace == 4.0 {
        RegimeKind::Parabolic
    } else if alpha > -4.0 && alpha < 0.0 {
        RegimeKind::Elliptic
    } else {
        RegimeKind::Hyperbolic
    };
    let (lambda_plus, lambda_minus) =
        if kind == RegimeKind::Hyperbolic && minus.norm() > plus.norm() {
            (minus, plus)
        } else {
            (plus, minus)
        };
    Regime {
        kind,
        lambda_plus,
        lambda_minus,
    }
}

fn linear_part(alpha: f64, x1: f64, x2: f64) -> (f64, f64) {
    ((1.0 + alpha) * x1 + x2, alpha * x1 + x2)
}

/// `T_α x (mod 1)`; integer `α` only.
pub fn apply_t(params: &MapParams, x: UnitPoint) -> Result<UnitPoint> {
    let alpha = params.require_integer()? as f64;
    let (y1, y2) = linear_part(alpha, x.x1, x.x2);
    Ok(UnitPoint::new(frac(y1), frac(y2)))
}

/// `U_α(ℓ) = ((1+α)ℓ₁ + ℓ₂, αℓ₁ + ℓ₂) mod N`, in exact integer arithmetic.
pub fn apply_u_lattice(params: &MapParams, l: LatticePoint) -> Result<LatticePoint> {
    let alpha = params.require_integer()?;
    Ok(IntMatrix::forward(alpha).apply_mod(l, params.grid))
}

/// Sawtooth map `S_α x = M_α ({x₁}, x₂) (mod 1)` for real `α`.
pub fn apply_s(params: &MapParams, x: UnitPoint) -> UnitPoint {
    let (y1, y2) = linear_part(params.alpha, frac(x.x1), x.x2);
    UnitPoint::new(frac(y1), frac(y2))
}

/// `S_α⁻¹ x = (1 0; −α 1) {(1 −1; 0 1) x} (mod 1)`.
pub fn apply_s_inverse(params: &MapParams, x: UnitPoint) -> UnitPoint {
    let q = frac(x.x1 - x.x2);
    let p = frac(x.x2);
    UnitPoint::new(q, frac(-params.alpha * q + p))
}

/// One step of `N·S_α(x/N)` on `[0, N)²`.
pub fn apply_s_scaled(params: &MapParams, x: TorusPoint) -> TorusPoint {
    let n = f64::from(params.grid);
    let x1 = reduce_mod(x.x1, n);
    let (y1, y2) = linear_part(params.alpha, x1, x.x2);
    TorusPoint {
        x1: reduce_mod(y1, n),
        x2: reduce_mod(y2, n),
    }
}

/// Exact lattice orbit `(ℓ, U ℓ, …, U^{steps−1} ℓ)`; integer `α` only.
pub fn lattice_orbit(
    params: &MapParams,
    l: LatticePoint,
    steps: usize,
) -> Result<Vec<LatticePoint>> {
    let alpha = params.require_integer()?;
    if steps == 0 {
        return Err(ChaosError::TooFewSteps { min: 1, got: 0 });
    }
    let m = IntMatrix::forward(alpha).reduce(params.grid);
    let mut out = Vec::with_capacity(steps);
    let mut cur = l;
    out.push(cur);
    for _ in 1..steps {
        cur = m.apply_mod(cur, params.grid);
        out.push(cur);
    }
    Ok(out)
}

/// `(U⁰ℓ, U¹ℓ, …, U^{steps−1}ℓ)`.
///
/// Integer `α` takes the exact lattice path; any other `α` iterates
/// `N·S_α(x/N)` in floating point.
pub fn trajectory_u(params: &MapParams, l: LatticePoint, steps: usize) -> Result<Vec<TorusPoint>> {
    if steps == 0 {
        return Err(ChaosError::TooFewSteps { min: 1, got: 0 });
    }
    if params.integer_alpha().is_some() {
        return Ok(lattice_orbit(params, l, steps)?
            .into_iter()
            .map(LatticePoint::to_torus)
            .collect());
    }
    let mut out = Vec::with_capacity(steps);
    let mut cur = l.to_torus();
    out.push(cur);
    for _ in 1..steps {
        cur = apply_s_scaled(params, cur);
        out.push(cur);
    }
    Ok(out)
}
