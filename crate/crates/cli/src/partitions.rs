use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torus_chaos::entropy::Partition;
use torus_chaos::maps::LatticePoint;

use crate::error::{io_err, CliError, Result};

/// How `Λ` is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSpec {
    /// `D` distinct points drawn uniformly; the seed is optional here and
    /// falls back to the run seed.
    Random { size: usize, seed: Option<u64> },
    /// Nearest-neighbour shape of `D ∈ {2, 3, 4, 5}` points around a center.
    Cluster { size: usize, center: (i64, i64) },
    /// One `r1 r2` pair per line.
    File(PathBuf),
}

impl PartitionSpec {
    /// Number of points, when known without reading a file.
    pub fn size(&self) -> Option<usize> {
        match self {
            PartitionSpec::Random { size, .. } | PartitionSpec::Cluster { size, .. } => Some(*size),
            PartitionSpec::File(_) => None,
        }
    }
}

fn spec_err(spec: &str, message: impl Into<String>) -> CliError {
    CliError::PartitionSpec {
        spec: spec.to_owned(),
        message: message.into(),
    }
}

impl FromStr for PartitionSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| spec_err(s, "expected <kind>:<args>"))?;
        let int = |v: &str, what: &str| -> Result<i64> {
            v.trim()
                .parse()
                .map_err(|_| spec_err(s, format!("{what} `{v}` is not an integer")))
        };
        match kind {
            "random" => {
                let mut parts = rest.split(':');
                let size = int(parts.next().unwrap_or(""), "size")?;
                let seed = parts
                    .next()
                    .map(|v| {
                        let v = v.strip_prefix("seed=").unwrap_or(v);
                        v.parse::<u64>()
                            .map_err(|_| spec_err(s, format!("seed `{v}` is not an integer")))
                    })
                    .transpose()?;
                if parts.next().is_some() {
                    return Err(spec_err(s, "too many fields"));
                }
                if size < 1 {
                    return Err(spec_err(s, "size must be positive"));
                }
                Ok(PartitionSpec::Random {
                    size: size as usize,
                    seed,
                })
            }
            "cluster" => {
                let (size, center) = rest
                    .split_once(':')
                    .ok_or_else(|| spec_err(s, "expected cluster:D:cx,cy"))?;
                let size = int(size, "size")?;
                if !(2..=5).contains(&size) {
                    return Err(spec_err(s, "cluster shapes exist for D = 2, 3, 4, 5"));
                }
                let (cx, cy) = center
                    .split_once(',')
                    .ok_or_else(|| spec_err(s, "center must be cx,cy"))?;
                Ok(PartitionSpec::Cluster {
                    size: size as usize,
                    center: (int(cx, "cx")?, int(cy, "cy")?),
                })
            }
            "file" if !rest.is_empty() => Ok(PartitionSpec::File(PathBuf::from(rest))),
            "file" => Err(spec_err(s, "empty path")),
            other => Err(spec_err(s, format!("unknown kind `{other}`"))),
        }
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionSpec::Random { size, seed: None } => write!(f, "random:{size}"),
            PartitionSpec::Random {
                size,
                seed: Some(seed),
            } => write!(f, "random:{size}:{seed}"),
            PartitionSpec::Cluster { size, center } => {
                write!(f, "cluster:{size}:{},{}", center.0, center.1)
            }
            PartitionSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

/// Offsets of the cluster shapes; "left" is `r1 − 1` and "up" is `r2 + 1`.
pub fn cluster_offsets(size: usize) -> Option<&'static [(i64, i64)]> {
    match size {
        2 => Some(&[(0, 0), (-1, 0)]),
        3 => Some(&[(0, 0), (-1, 0), (0, 1)]),
        4 => Some(&[(0, 0), (-1, 0), (0, 1), (-1, 1)]),
        5 => Some(&[(0, 0), (0, 1), (-1, 0), (0, -1), (1, 0)]),
        _ => None,
    }
}

pub fn read_partition_file(path: &std::path::Path, grid: u32) -> Result<Partition> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut pairs = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| CliError::ConfigSyntax {
                path: path.to_owned(),
                line: k + 1,
                message: format!("{e}"),
            })?;
        let [r1, r2] = nums[..] else {
            return Err(CliError::ConfigSyntax {
                path: path.to_owned(),
                line: k + 1,
                message: "expected two integers `r1 r2`".into(),
            });
        };
        pairs.push((r1, r2));
    }
    Ok(Partition::from_pairs(grid, &pairs)?)
}

pub fn gen_partition(spec: &PartitionSpec, grid: u32, seed: u64) -> Result<Partition> {
    let cells = grid as usize * grid as usize;
    match spec {
        PartitionSpec::Random { size, seed: own } => {
            if *size > cells {
                return Err(spec_err(
                    &spec.to_string(),
                    format!("D = {size} exceeds N² = {cells}"),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(own.unwrap_or(seed));
            let points = rand::seq::index::sample(&mut rng, cells, *size)
                .into_iter()
                .map(|i| LatticePoint::from_index(i, grid))
                .collect();
            Ok(Partition::new(grid, points)?)
        }
        PartitionSpec::Cluster { size, center } => {
            let offsets = cluster_offsets(*size).ok_or_else(|| {
                spec_err(&spec.to_string(), "cluster shapes exist for D = 2, 3, 4, 5")
            })?;
            if *size > cells {
                return Err(spec_err(
                    &spec.to_string(),
                    format!("D = {size} exceeds N² = {cells}"),
                ));
            }
            let pairs: Vec<_> = offsets
                .iter()
                .map(|(d1, d2)| (center.0 + d1, center.1 + d2))
                .collect();
            Ok(Partition::from_pairs(grid, &pairs)?)
        }
        PartitionSpec::File(path) => read_partition_file(path, grid),
    }
}
