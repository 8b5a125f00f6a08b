//! File formats. Floats are written with Rust's shortest round-trip
//! formatting, so parsing a file back recovers every value bit for bit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use torus_chaos::entropy::{EntropySeries, FrequencyField};
use torus_chaos::lyapunov::LyapunovEstimate;
use torus_chaos::maps::LatticePoint;

use crate::error::{io_err, CliError, Result};

pub const ENTROPY_HEADER: &str = "n,H_nats,h_nats";
pub const LYAPUNOV_HEADER: &str = "alpha,m,l_m,theoretical";
pub const NU_HEADER: &str = "l1,l2,nu";

pub fn entropy_file_name(alpha: f64, grid: u32, size: usize) -> String {
    format!("entropy_alpha{alpha}_N{grid}_D{size}.csv")
}

pub fn density_file_stem(alpha: f64, grid: u32, n: usize) -> String {
    format!("nu_alpha{alpha}_N{grid}_n{n}")
}

pub fn lyapunov_file_name(grid: u32, size: usize) -> String {
    format!("lyapunov_N{grid}_D{size}.csv")
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(io_err(path))
}

pub fn entropy_csv(series: &EntropySeries) -> String {
    let mut out = String::from(ENTROPY_HEADER);
    out.push('\n');
    for row in &series.rows {
        out.push_str(&format!("{},{},{}\n", row.n, row.entropy, row.rate));
    }
    out
}

pub fn parse_entropy_csv(text: &str, path: &Path) -> Result<EntropySeries> {
    let bad = |message: String| CliError::Csv {
        path: path.to_owned(),
        message,
    };
    let mut lines = text.lines();
    if lines.next() != Some(ENTROPY_HEADER) {
        return Err(bad(format!("expected header `{ENTROPY_HEADER}`")));
    }
    let mut series = EntropySeries::default();
    for (k, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        let [n, h, rate] = fields[..] else {
            return Err(bad(format!("row {}: expected three fields", k + 1)));
        };
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|e| bad(format!("row {}: {e}", k + 1)))
        };
        series.rows.push(torus_chaos::entropy::EntropyRow {
            n: n.parse().map_err(|e| bad(format!("row {}: {e}", k + 1)))?,
            entropy: num(h)?,
            rate: num(rate)?,
        });
    }
    Ok(series)
}

pub fn read_entropy_csv(path: &Path) -> Result<EntropySeries> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_entropy_csv(&text, path)
}

/// One gray level per lattice point, `round(255 ν/ν_max)`, normalised per
/// frame. Column `l1`, row `N − 1 − l2`, so that `l2` grows upwards.
pub fn gray_levels(nu: &FrequencyField) -> Vec<u8> {
    let grid = nu.grid();
    let max = nu.max();
    let mut pixels = vec![0u8; grid as usize * grid as usize];
    for l in LatticePoint::all(grid) {
        let v = nu.at(l);
        let row = (grid - 1 - l.l2) as usize;
        pixels[row * grid as usize + l.l1 as usize] = if max > 0.0 {
            (255.0 * v / max).round() as u8
        } else {
            0
        };
    }
    pixels
}

/// Binary P5 image; `comment` must be a single line.
pub fn pgm(nu: &FrequencyField, comment: &str) -> Vec<u8> {
    let grid = nu.grid();
    let mut out = Vec::new();
    write!(out, "P5\n# {comment}\n{grid} {grid}\n255\n").expect("writing to a Vec cannot fail");
    out.extend(gray_levels(nu));
    out
}

/// Lossless companion of the image: every lattice point with its raw `ν`.
pub fn nu_csv(nu: &FrequencyField) -> String {
    let mut out = String::from(NU_HEADER);
    out.push('\n');
    for l in LatticePoint::all(nu.grid()) {
        out.push_str(&format!("{},{},{}\n", l.l1, l.l2, nu.at(l)));
    }
    out
}

pub fn lyapunov_rows(
    alpha: f64,
    estimates: &[LyapunovEstimate],
    theoretical: Option<f64>,
) -> String {
    let theo = theoretical.map(|t| t.to_string()).unwrap_or_default();
    estimates
        .iter()
        .map(|e| format!("{alpha},{},{},{theo}\n", e.m, e.value))
        .collect()
}

/// Outcome of one sweep item.
#[derive(Debug, Clone, PartialEq)]
pub enum ManifestEntry {
    Ok { alpha: f64, files: Vec<PathBuf> },
    Failed { alpha: f64, message: String },
}

impl ManifestEntry {
    pub fn line(&self) -> String {
        match self {
            ManifestEntry::Ok { alpha, files } => {
                let names: Vec<String> = files
                    .iter()
                    .map(|f| {
                        f.file_name().map_or_else(
                            || f.display().to_string(),
                            |n| n.to_string_lossy().into_owned(),
                        )
                    })
                    .collect();
                format!("alpha={alpha} status=ok files={}", names.join(","))
            }
            ManifestEntry::Failed { alpha, message } => {
                format!(
                    "alpha={alpha} status=error message={}",
                    message.replace('\n', " ")
                )
            }
        }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self, ManifestEntry::Ok { .. })
    }
}
