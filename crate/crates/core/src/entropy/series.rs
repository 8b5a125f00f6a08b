use std::fmt;
use std::str::FromStr;

use crate::error::{ChaosError, Result};
use crate::maps::MapParams;

use super::frequency::{frequency_fields, shannon_entropy};
use super::gram::{gram_entropy, gram_matrix};
use super::partition::Partition;

/// Which route computes `H(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Shannon entropy of the frequency field; integer `α` only.
    Frequency,
    /// Von Neumann entropy of the Gram matrix; any real `α`.
    Gram,
    /// `Frequency` for integer `α`, `Gram` otherwise.
    #[default]
    Auto,
}

impl Engine {
    pub fn resolve(self, params: &MapParams) -> Engine {
        match self {
            Engine::Auto if params.integer_alpha().is_some() => Engine::Frequency,
            Engine::Auto => Engine::Gram,
            other => other,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Frequency => "frequency",
            Engine::Gram => "gram",
            Engine::Auto => "auto",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "frequency" => Ok(Engine::Frequency),
            "gram" => Ok(Engine::Gram),
            "auto" => Ok(Engine::Auto),
            other => Err(format!(
                "unknown engine `{other}` (expected frequency, gram or auto)"
            )),
        }
    }
}

/// One row `(n, H(n), h(n) = H(n)/n)`, entropies in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyRow {
    pub n: usize,
    pub entropy: f64,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EntropySeries {
    pub rows: Vec<EntropyRow>,
}

impl EntropySeries {
    pub fn from_entropies(entropies: impl IntoIterator<Item = f64>) -> Self {
        let rows = entropies
            .into_iter()
            .enumerate()
            .map(|(k, h)| EntropyRow {
                n: k + 1,
                entropy: h,
                rate: h / (k + 1) as f64,
            })
            .collect();
        Self { rows }
    }

    pub fn entropies(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.entropy).collect()
    }

    pub fn rates(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.rate).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// `H(n)` and `h(n)` for `n = 1..=n_max`.
pub fn entropy_series(
    part: &Partition,
    params: &MapParams,
    n_max: usize,
    engine: Engine,
) -> Result<EntropySeries> {
    if n_max == 0 {
        return Err(ChaosError::TooFewSteps { min: 1, got: 0 });
    }
    match engine.resolve(params) {
        Engine::Frequency => Ok(EntropySeries::from_entropies(
            frequency_fields(part, params)?
                .take(n_max)
                .map(|nu| shannon_entropy(&nu)),
        )),
        _ => {
            let entropies = (1..=n_max)
                .map(|n| gram_entropy(&gram_matrix(part, params, n)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(EntropySeries::from_entropies(entropies))
        }
    }
}
