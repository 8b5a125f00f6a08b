//! Experiment settings: a flat `key = value` file overlaid by command-line
//! flags, validated into an [`ExperimentConfig`] before anything runs.
//!
//! Recognised keys: `alpha` (comma-separated list), `alpha_range`
//! (`a:b:step`), `n_grid`, `partition`, `seed`, `steps`, `engine`, `out`.
//! Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::{Path, PathBuf};

use torus_chaos::entropy::{Engine, Partition};
use torus_chaos::maps::MapParams;

use crate::error::{io_err, CliError, Result};
use crate::partitions::{gen_partition, PartitionSpec};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_STEPS: usize = 10;

/// Largest grid the Gram engine is allowed to run on; its matrix holds
/// `N⁴` complex entries.
pub const GRAM_MAX_GRID: u32 = 64;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub alpha: Option<Vec<f64>>,
    pub alpha_range: Option<String>,
    pub grid: Option<u32>,
    pub partition: Option<PartitionSpec>,
    pub seed: Option<u64>,
    pub steps: Option<usize>,
    pub engine: Option<Engine>,
    pub out: Option<PathBuf>,
}

fn invalid(key: &'static str, message: impl Into<String>) -> CliError {
    CliError::InvalidValue {
        key,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(key: &'static str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| invalid(key, format!("`{value}`: {e}")))
}

pub fn parse_alpha_list(value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|v| parse_num::<f64>("alpha", v.trim()))
        .collect()
}

/// `a:b:step`, inclusive of `b` up to rounding; values are rounded to 12
/// decimals so that `0.05·k` prints as written.
pub fn parse_alpha_range(spec: &str) -> Result<Vec<f64>> {
    let err = |message: &str| CliError::AlphaRange {
        spec: spec.to_owned(),
        message: message.to_owned(),
    };
    let fields: Vec<f64> = spec
        .split(':')
        .map(|v| v.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| err("expected three numbers a:b:step"))?;
    let [start, stop, step] = fields[..] else {
        return Err(err("expected three numbers a:b:step"));
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(err("bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(err("step must be positive"));
    }
    if stop < start {
        return Err(err("end lies below start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "alpha" => self.alpha = Some(parse_alpha_list(value)?),
            "alpha_range" | "alpha-range" => {
                parse_alpha_range(value)?;
                self.alpha_range = Some(value.to_owned());
            }
            "n_grid" | "n-grid" => self.grid = Some(parse_num("n_grid", value)?),
            "partition" => self.partition = Some(value.parse()?),
            "seed" => self.seed = Some(parse_num("seed", value)?),
            "steps" => self.steps = Some(parse_num("steps", value)?),
            "engine" => {
                self.engine = Some(value.parse().map_err(|e: String| invalid("engine", e))?)
            }
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(CliError::UnknownKey(other.to_owned())),
        }
        Ok(())
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut settings = Settings::default();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| CliError::ConfigSyntax {
                path: path.to_owned(),
                line: k + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax("expected `key = value`".into()))?;
            settings
                .set(key.trim(), value.trim())
                .map_err(|e| syntax(e.to_string()))?;
        }
        Ok(settings)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse(&text, path)
    }

    /// `flags` win. The two alpha keys travel together: giving either on
    /// the command line replaces both from the file.
    pub fn overlay(self, flags: Settings) -> Settings {
        let (alpha, alpha_range) = if flags.alpha.is_some() || flags.alpha_range.is_some() {
            (flags.alpha, flags.alpha_range)
        } else {
            (self.alpha, self.alpha_range)
        };
        Settings {
            alpha,
            alpha_range,
            grid: flags.grid.or(self.grid),
            partition: flags.partition.or(self.partition),
            seed: flags.seed.or(self.seed),
            steps: flags.steps.or(self.steps),
            engine: flags.engine.or(self.engine),
            out: flags.out.or(self.out),
        }
    }

    pub fn alphas(&self) -> Result<Vec<f64>> {
        let mut alphas = self.alpha.clone().unwrap_or_default();
        if let Some(range) = &self.alpha_range {
            alphas.extend(parse_alpha_range(range)?);
        }
        if alphas.is_empty() {
            return Err(CliError::Missing("alpha"));
        }
        if let Some(bad) = alphas.iter().find(|a| !a.is_finite()) {
            return Err(invalid("alpha", format!("{bad} is not finite")));
        }
        Ok(alphas)
    }
}

/// What the experiment is going to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Entropy,
    Density,
    Lyapunov,
}

/// A fully validated sweep.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub alphas: Vec<f64>,
    pub grid: u32,
    pub partition_spec: PartitionSpec,
    pub partition: Partition,
    pub seed: u64,
    pub steps: usize,
    pub engine: Engine,
    pub out: PathBuf,
}

impl ExperimentConfig {
    pub fn validate(settings: &Settings, task: Task) -> Result<Self> {
        let alphas = settings.alphas()?;
        let grid = settings.grid.ok_or(CliError::Missing("n_grid"))?;
        for &alpha in &alphas {
            MapParams::new(alpha, grid)?;
        }
        let partition_spec = settings
            .partition
            .clone()
            .ok_or(CliError::Missing("partition"))?;
        let seed = settings.seed.unwrap_or(DEFAULT_SEED);
        let partition = gen_partition(&partition_spec, grid, seed)?;
        let steps = settings.steps.unwrap_or(DEFAULT_STEPS);
        let min_steps = if task == Task::Lyapunov { 2 } else { 1 };
        if steps < min_steps {
            return Err(invalid(
                "steps",
                format!("need at least {min_steps}, got {steps}"),
            ));
        }
        let engine = match task {
            Task::Density => Engine::Frequency,
            _ => settings.engine.unwrap_or_default(),
        };
        for &alpha in &alphas {
            let params = MapParams::new(alpha, grid)?;
            match engine.resolve(&params) {
                Engine::Frequency if params.integer_alpha().is_none() => {
                    return Err(invalid(
                        "alpha",
                        format!("{alpha} is not an integer; frequency fields and density maps need integer alpha"),
                    ));
                }
                Engine::Gram if grid > GRAM_MAX_GRID => {
                    return Err(invalid(
                        "n_grid",
                        format!("the gram engine (needed for alpha = {alpha}) is limited to N <= {GRAM_MAX_GRID}"),
                    ));
                }
                _ => {}
            }
        }
        Ok(Self {
            alphas,
            grid,
            partition_spec,
            partition,
            seed,
            steps,
            engine,
            out: settings.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        })
    }

    pub fn params(&self, alpha: f64) -> Result<MapParams> {
        Ok(MapParams::new(alpha, self.grid)?)
    }
}
