use std::fs;
use std::path::{Path, PathBuf};

use torus_chaos::entropy::{entropy_series, frequency_fields};
use torus_chaos::lyapunov::{breaking_time, compactify, lagrange_ladder, theoretical_lyapunov};
use torus_chaos::maps::{classify_regime, Regime, RegimeKind};

use crate::config::ExperimentConfig;
use crate::error::{io_err, Result};
use crate::output::{
    density_file_stem, entropy_csv, entropy_file_name, lyapunov_file_name, lyapunov_rows, nu_csv,
    pgm, write_file, ManifestEntry, LYAPUNOV_HEADER,
};

pub const MANIFEST: &str = "manifest.txt";

fn format_lambda(regime: &Regime) -> String {
    let l = regime.lambda_plus;
    if l.im == 0.0 {
        format!("{}", l.re)
    } else if l.im > 0.0 {
        format!("{}+{}i", l.re, l.im)
    } else {
        format!("{}-{}i", l.re, -l.im)
    }
}

pub fn classify_line(alpha: f64, grid: Option<u32>) -> String {
    let regime = classify_regime(alpha);
    let mut line = format!(
        "alpha={alpha} regime={} lambda={} log_lambda={}",
        regime.kind,
        format_lambda(&regime),
        regime.log_lambda()
    );
    if let (RegimeKind::Hyperbolic, Some(grid)) = (regime.kind, grid) {
        if let Ok(tau) = breaking_time(alpha, grid) {
            line.push_str(&format!(" tau_B@{grid}={tau}"));
        }
    }
    if let Some(period) = Regime::period(alpha) {
        line.push_str(&format!(" period={period}"));
    }
    line
}

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

fn append_manifest(dir: &Path, entries: &[ManifestEntry]) -> Result<()> {
    use std::io::Write;
    let path = dir.join(MANIFEST);
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(io_err(&path))?;
    for e in entries {
        writeln!(file, "{}", e.line()).map_err(io_err(&path))?;
    }
    Ok(())
}

/// Runs `job` for every alpha, recording failures instead of stopping.
fn sweep(
    cfg: &ExperimentConfig,
    mut job: impl FnMut(f64) -> Result<Vec<PathBuf>>,
) -> Result<Vec<ManifestEntry>> {
    prepare_out(&cfg.out)?;
    let entries: Vec<ManifestEntry> = cfg
        .alphas
        .iter()
        .map(|&alpha| match job(alpha) {
            Ok(files) => ManifestEntry::Ok { alpha, files },
            Err(e) => ManifestEntry::Failed {
                alpha,
                message: e.to_string(),
            },
        })
        .collect();
    append_manifest(&cfg.out, &entries)?;
    Ok(entries)
}

/// One `n,H_nats,h_nats` file per alpha.
pub fn run_entropy_sweep(cfg: &ExperimentConfig) -> Result<Vec<ManifestEntry>> {
    sweep(cfg, |alpha| {
        let series = entropy_series(&cfg.partition, &cfg.params(alpha)?, cfg.steps, cfg.engine)?;
        let path = cfg
            .out
            .join(entropy_file_name(alpha, cfg.grid, cfg.partition.size()));
        write_file(&path, entropy_csv(&series).as_bytes())?;
        Ok(vec![path])
    })
}

/// One image and one raw `ν` table per alpha and step.
pub fn run_density_maps(cfg: &ExperimentConfig) -> Result<Vec<ManifestEntry>> {
    sweep(cfg, |alpha| {
        let mut files = Vec::new();
        for nu in frequency_fields(&cfg.partition, &cfg.params(alpha)?)?.take(cfg.steps) {
            let stem = density_file_stem(alpha, cfg.grid, nu.steps());
            let comment = format!(
                "alpha={alpha} N={} D={} partition={} seed={} n={} nu_max={} gray=round(255*nu/nu_max) \
                 normalization=per-frame x=l1 y=l2(up)",
                cfg.grid,
                cfg.partition.size(),
                cfg.partition_spec,
                cfg.seed,
                nu.steps(),
                nu.max()
            );
            let image = cfg.out.join(format!("{stem}.pgm"));
            write_file(&image, &pgm(&nu, &comment))?;
            let table = cfg.out.join(format!("{stem}.csv"));
            write_file(&table, nu_csv(&nu).as_bytes())?;
            files.push(image);
            files.push(table);
        }
        Ok(files)
    })
}

/// `l^m` for `m = 2..=steps`, all alphas in one file. Alphas that fail
/// contribute no rows.
pub fn run_lyapunov_fit(cfg: &ExperimentConfig) -> Result<Vec<ManifestEntry>> {
    let path = cfg
        .out
        .join(lyapunov_file_name(cfg.grid, cfg.partition.size()));
    let mut body = format!("{LYAPUNOV_HEADER}\n");
    let entries = sweep(cfg, |alpha| {
        let series = entropy_series(&cfg.partition, &cfg.params(alpha)?, cfg.steps, cfg.engine)?;
        let ladder = lagrange_ladder(&compactify(&series))?;
        body.push_str(&lyapunov_rows(
            alpha,
            &ladder,
            theoretical_lyapunov(alpha).ok(),
        ));
        Ok(vec![path.clone()])
    })?;
    write_file(&path, body.as_bytes())?;
    Ok(entries)
}
