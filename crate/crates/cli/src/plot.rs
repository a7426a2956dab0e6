//! Curve data behind the fixed-point pictures.
//!
//! Every curve goes to its own `<curve>.csv` with header `z,<curve>`.
//! Finite instances give exact staircases: each jump appears twice, first
//! with the left limit, then with the value. Continuum inputs are sampled.

use std::fs;
use std::path::{Path, PathBuf};

use cac_core::continuum::{h_alpha, sample_curve, ContinuumDistribution};
use cac_core::{build_ccdf, build_cdf, AgentKind, BigRational, StepFunction};
use serde_json::json;

use crate::error::CliError;
use crate::format::sig15;
use crate::instance::Instance;
use crate::outln;
use crate::report::Report;

fn write_csv(dir: &Path, curve: &str, rows: &[(String, String)]) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{curve}.csv"));
    let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    w.write_record(["z", curve])?;
    for (z, v) in rows {
        w.write_record([z, v])?;
    }
    w.flush()?;
    Ok(path)
}

fn prepare(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))
}

/// Rows for a right-continuous staircase over `grid`.
fn staircase(grid: &[BigRational], left: impl Fn(&BigRational) -> BigRational, value: impl Fn(&BigRational) -> BigRational) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    for z in grid {
        let l = left(z);
        let v = value(z);
        if l != v {
            rows.push((z.to_string(), l.to_string()));
        }
        rows.push((z.to_string(), v.to_string()));
    }
    rows
}

fn report_files(report: &mut Report, files: &[PathBuf]) {
    for f in files {
        outln!(report, "wrote {}", f.display());
    }
}

pub fn finite(inst: &Instance, dir: &Path) -> Result<Report, CliError> {
    prepare(dir)?;
    let pop = &inst.population;
    let n = pop.n();
    let cdf_c = nonempty(pop.thresholds_of(AgentKind::Coordinating), build_cdf)?;
    let ccdf_a = nonempty(pop.thresholds_of(AgentKind::AntiCoordinating), build_ccdf)?;

    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    let mut grid: Vec<BigRational> = vec![zero.clone(), one.clone()];
    grid.extend(pop.thresholds().iter().cloned());
    grid.sort();
    grid.dedup();

    let mut files = Vec::new();
    if let Some(f) = &cdf_c {
        files.push(write_csv(dir, "F_c", &staircase(&grid, |z| f.eval_left(z), |z| f.eval(z)))?);
    }
    if let Some(g) = &ccdf_a {
        files.push(write_csv(dir, "G_a", &staircase(&grid, |z| g.eval_left(z), |z| g.eval(z)))?);
    }
    let total = |z: &BigRational, left: bool| {
        let count = |s: &Option<StepFunction>| {
            s.as_ref().map_or(0, |s| if left { s.eval_left_count(z) } else { s.eval_count(z) })
        };
        BigRational::new((count(&cdf_c) + count(&ccdf_a)).into(), n.into())
    };
    files.push(write_csv(dir, "H_alpha", &staircase(&grid, |z| total(z, true), |z| total(z, false)))?);
    let lo = grid.first().cloned().unwrap_or(zero);
    let hi = grid.last().cloned().unwrap_or(one);
    let bisector = [lo, hi].map(|z| (z.to_string(), z.to_string()));
    files.push(write_csv(dir, "bisector", &bisector)?);

    let mut report = Report::new();
    outln!(report, "alpha: {}", pop.alpha());
    report_files(&mut report, &files);
    report.json = json!({
        "alpha": pop.alpha().to_string(),
        "files": files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>(),
    });
    Ok(report)
}

fn nonempty(
    thresholds: Vec<BigRational>,
    build: fn(&[BigRational]) -> cac_core::Result<StepFunction>,
) -> Result<Option<StepFunction>, CliError> {
    if thresholds.is_empty() {
        Ok(None)
    } else {
        Ok(Some(build(&thresholds)?))
    }
}

pub fn continuum(
    alpha: f64,
    coord: &ContinuumDistribution,
    anti: &ContinuumDistribution,
    points: usize,
    dir: &Path,
) -> Result<Report, CliError> {
    h_alpha(alpha, coord, anti, 0.0)?;
    prepare(dir)?;
    let sampled = |f: &dyn Fn(f64) -> f64| -> Vec<(String, String)> {
        sample_curve(f, 0.0, 1.0, points)
            .into_iter()
            .map(|(z, v)| (sig15(z), sig15(v)))
            .collect()
    };
    let files = vec![
        write_csv(dir, "F_c", &sampled(&|z| coord.cdf(z)))?,
        write_csv(dir, "G_a", &sampled(&|z| anti.ccdf(z)))?,
        write_csv(
            dir,
            "H_alpha",
            &sampled(&|z| h_alpha(alpha, coord, anti, z).expect("alpha checked")),
        )?,
        write_csv(dir, "bisector", &sampled(&|z| z))?,
    ];
    let mut report = Report::new();
    outln!(report, "alpha: {}", sig15(alpha));
    report_files(&mut report, &files);
    report.json = json!({
        "alpha": sig15(alpha),
        "files": files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>(),
    });
    Ok(report)
}
