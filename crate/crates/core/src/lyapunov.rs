//! Lyapunov exponents from entropy production.
//!
//! The step index is compactified by `s_n = (2/π) arctan(n − 1)`, which sends
//! `n = 1, 2, …` into `[0, 1)` with `n → ∞` at `t = 1`. The Lagrange polynomial
//! through the first `m` points `(s_n, h(n))` is evaluated at `t = 1`:
//!
//! `l^m = Σ_i h_i Π_{j≠i} (1 − s_j)/(s_i − s_j)`.

use std::f64::consts::FRAC_2_PI;

use crate::entropy::EntropySeries;
use crate::error::{ChaosError, Result};
use crate::maps::{classify_regime, RegimeKind};

/// `s_n = (2/π) arctan(n − 1)`.
pub fn compactified_time(n: usize) -> f64 {
    FRAC_2_PI * ((n as f64) - 1.0).atan()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompactifiedPoint {
    pub t: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CompactifiedSeries {
    points: Vec<CompactifiedPoint>,
}

impl CompactifiedSeries {
    /// Arbitrary abscissae; `lagrange_extrapolate` rejects duplicates.
    pub fn from_points(points: Vec<CompactifiedPoint>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[CompactifiedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Pairs `h(n)` with `s_n`.
pub fn compactify(series: &EntropySeries) -> CompactifiedSeries {
    CompactifiedSeries {
        points: series
            .rows
            .iter()
            .map(|r| CompactifiedPoint {
                t: compactified_time(r.n),
                h: r.rate,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovEstimate {
    /// Degree of accuracy, the number of points used.
    pub m: usize,
    pub value: f64,
}

pub fn lagrange_extrapolate(series: &CompactifiedSeries, m: usize) -> Result<LyapunovEstimate> {
    if m < 2 || m > series.len() {
        return Err(ChaosError::InvalidDegree {
            degree: m,
            available: series.len(),
        });
    }
    let pts = &series.points[..m];
    let mut value = 0.0;
    for (i, pi) in pts.iter().enumerate() {
        let mut weight = 1.0;
        for (j, pj) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let gap = pi.t - pj.t;
            if gap == 0.0 {
                return Err(ChaosError::DuplicateAbscissa(pi.t));
            }
            weight *= (1.0 - pj.t) / gap;
        }
        value += pi.h * weight;
    }
    Ok(LyapunovEstimate { m, value })
}

/// `l^m` for every `m = 2..=len`.
pub fn lagrange_ladder(series: &CompactifiedSeries) -> Result<Vec<LyapunovEstimate>> {
    (2..=series.len())
        .map(|m| lagrange_extrapolate(series, m))
        .collect()
}

/// `ln((|α + 2| + √(α(α + 4)))/2)`; for `α < −4` the dominant eigenvalue is
/// negative and its modulus is used.
pub fn theoretical_lyapunov(alpha: f64) -> Result<f64> {
    if classify_regime(alpha).kind != RegimeKind::Hyperbolic {
        return Err(ChaosError::NonHyperbolic(alpha));
    }
    Ok((((alpha + 2.0).abs() + (alpha * (alpha + 4.0)).sqrt()) / 2.0).ln())
}

/// `τ_B = 2 ln N / ln λ`.
pub fn breaking_time(alpha: f64, grid: u32) -> Result<f64> {
    Ok(2.0 * f64::from(grid).ln() / theoretical_lyapunov(alpha)?)
}

/// `n̄ = 2 ln N / ln D`, where `Dⁿ` first reaches `N²`.
///
/// Only a partition-counting crossover. It is not a breaking time: it knows
/// nothing about the dynamics.
pub fn naive_transition(size: usize, grid: u32) -> f64 {
    2.0 * f64::from(grid).ln() / (size as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::eigenvalues;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn series(h: &[f64]) -> CompactifiedSeries {
        CompactifiedSeries::from_points(
            h.iter()
                .enumerate()
                .map(|(k, &h)| CompactifiedPoint {
                    t: compactified_time(k + 1),
                    h,
                })
                .collect(),
        )
    }

    #[test]
    fn compactified_times() {
        assert_eq!(compactified_time(1), 0.0);
        assert_abs_diff_eq!(compactified_time(2), 0.5, epsilon = 1e-15);
        assert!(compactified_time(1_000_000) > 0.999_999);
        assert!(compactified_time(1_000_000) < 1.0);
    }

    #[test]
    fn compactify_uses_rates() {
        let s = EntropySeries::from_entropies([1.0, 3.0, 3.0]);
        let c = compactify(&s);
        assert_eq!(
            c.points()[1],
            CompactifiedPoint {
                t: compactified_time(2),
                h: 1.5
            }
        );
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn constants_and_lines() {
        for m in 2..=6 {
            let e = lagrange_extrapolate(&series(&[0.7; 6]), m).unwrap();
            assert_abs_diff_eq!(e.value, 0.7, epsilon = 1e-12);
        }
        let e = lagrange_extrapolate(&series(&[1.25, 2.0]), 2).unwrap();
        assert_abs_diff_eq!(e.value, 2.0 * 2.0 - 1.25, epsilon = 1e-14);
    }

    #[test]
    fn degree_and_abscissa_guards() {
        let s = series(&[1.0, 2.0, 3.0]);
        assert_eq!(
            lagrange_extrapolate(&s, 1).unwrap_err(),
            ChaosError::InvalidDegree {
                degree: 1,
                available: 3
            }
        );
        assert!(lagrange_extrapolate(&s, 4).is_err());
        let dup = CompactifiedSeries::from_points(vec![
            CompactifiedPoint { t: 0.5, h: 1.0 },
            CompactifiedPoint { t: 0.5, h: 2.0 },
        ]);
        assert_eq!(
            lagrange_extrapolate(&dup, 2).unwrap_err(),
            ChaosError::DuplicateAbscissa(0.5)
        );
        assert_eq!(lagrange_ladder(&s).unwrap().len(), 2);
    }

    #[test]
    fn closed_form_values() {
        assert_abs_diff_eq!(theoretical_lyapunov(1.0).unwrap(), 0.9624, epsilon = 1e-4);
        assert_abs_diff_eq!(
            theoretical_lyapunov(17.0).unwrap(),
            ((19.0 + 357f64.sqrt()) / 2.0).ln(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(theoretical_lyapunov(17.0).unwrap(), 2.942, epsilon = 1e-3);
        for alpha in [0.0, -4.0, -2.0, -0.5] {
            assert_eq!(
                theoretical_lyapunov(alpha).unwrap_err(),
                ChaosError::NonHyperbolic(alpha)
            );
        }
        assert_abs_diff_eq!(
            theoretical_lyapunov(-5.0).unwrap(),
            eigenvalues(-5.0)
                .1
                .norm()
                .ln()
                .max(eigenvalues(-5.0).0.norm().ln()),
            epsilon = 1e-12
        );
    }

    #[test]
    fn closed_form_matches_eigenvalues() {
        for alpha in [0.05, 0.5, 1.0, 5.0, 17.0] {
            let lp = classify_regime(alpha).lambda_plus;
            assert_abs_diff_eq!(
                theoretical_lyapunov(alpha).unwrap(),
                lp.re.ln(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn time_scales() {
        assert_abs_diff_eq!(breaking_time(1.0, 200).unwrap(), 11.0, epsilon = 0.05);
        assert_abs_diff_eq!(breaking_time(17.0, 200).unwrap(), 3.60, epsilon = 0.01);
        assert!(breaking_time(0.0, 200).is_err());
        assert_abs_diff_eq!(naive_transition(4, 200), 7.64, epsilon = 0.01);
        assert_abs_diff_eq!(naive_transition(2, 200), 15.29, epsilon = 0.01);
        assert_abs_diff_eq!(naive_transition(400, 20), 1.0, epsilon = 1e-14);
    }

    proptest! {
        #[test]
        fn reproduces_low_degree_polynomials(
            coeffs in prop::collection::vec(-3.0f64..3.0, 1..6),
            extra in 0usize..3,
        ) {
            let m = (coeffs.len() + extra).max(2);
            let q = |t: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
            let s = CompactifiedSeries::from_points(
                (1..=m).map(|n| {
                    let t = compactified_time(n);
                    CompactifiedPoint { t, h: q(t) }
                }).collect(),
            );
            let e = lagrange_extrapolate(&s, m).unwrap();
            prop_assert!((e.value - q(1.0)).abs() < 1e-9, "{} vs {}", e.value, q(1.0));
        }

        #[test]
        fn order_of_points_is_irrelevant(
            h in prop::collection::vec(0.0f64..2.0, 5),
            rot in 0usize..5,
        ) {
            let base = series(&h);
            let mut pts = base.points().to_vec();
            pts.rotate_left(rot);
            pts.swap(0, 4);
            let shuffled = CompactifiedSeries::from_points(pts);
            let a = lagrange_extrapolate(&base, 5).unwrap().value;
            let b = lagrange_extrapolate(&shuffled, 5).unwrap().value;
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
        }
    }
}
