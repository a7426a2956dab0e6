use cac_core::continuum::{solve_continuum, ContinuumDistribution, ScanOptions};
use serde_json::json;

use crate::error::CliError;
use crate::format::sig15;
use crate::outln;
use crate::report::Report;

pub fn solve(
    alpha: f64,
    coord: &ContinuumDistribution,
    anti: &ContinuumDistribution,
    opts: &ScanOptions,
) -> Result<Report, CliError> {
    let roots = solve_continuum(alpha, coord, anti, opts)?;
    let mut report = Report::new();
    outln!(report, "alpha: {}", sig15(alpha));
    outln!(report, "fixed points: {}", roots.len());
    for r in &roots {
        outln!(
            report,
            "z* = {}  z_c* = {}  z_a* = {}  residual = {}",
            sig15(r.z_star),
            sig15(r.z_c_star),
            sig15(r.z_a_star),
            sig15(r.residual)
        );
    }
    report.json = json!({
        "alpha": sig15(alpha),
        "tolerance": sig15(opts.tolerance),
        "cells": opts.cells,
        "fixed_points": roots.iter().map(|r| json!({
            "z": sig15(r.z_star),
            "z_coord": sig15(r.z_c_star),
            "z_anti": sig15(r.z_a_star),
            "residual": sig15(r.residual),
        })).collect::<Vec<_>>(),
    });
    if roots.is_empty() {
        report.code = crate::finite::NO_EQUILIBRIUM;
    }
    Ok(report)
}
