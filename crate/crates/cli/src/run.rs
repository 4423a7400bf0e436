use lrk_core::entanglement::{entanglement_report, Geometry};
use lrk_core::model::soft_mode_occupation;
use lrk_core::oracle::{run_suite, SuiteConfig};
use lrk_core::scaling::{fit_log_scaling, ground_entropies, phase_scan, Abscissa, Measure};
use lrk_core::{stationary_correlators, ModelParams, QuenchProtocol};
use rayon::prelude::*;
use serde_json::json;

use crate::output::{float, opt_float, Table};
use crate::{CliError, Resolved, RunConfig};

pub const GROUND_COLUMNS: &[&str] = &["record", "l", "value", "slope", "intercept", "r_squared", "c_eff"];

pub const SWEEP_COLUMNS: &[&str] = &[
    "alpha",
    "mu_i",
    "delta_i",
    "mu_f",
    "delta_f",
    "n",
    "l",
    "mutual_info",
    "logneg_upper",
    "logneg_norm",
    "tmi",
    "n_soft",
];

pub const PHASE_COLUMNS: &[&str] = &[
    "alpha", "mu_i", "delta_i", "mu_f", "delta_f", "measure", "c_eff", "r_squared", "flag",
];

pub const ORACLE_COLUMNS: &[&str] = &["check", "samples", "max_deviation", "tolerance", "status"];

/// Output of one subcommand, ready to be written.
pub struct Report {
    pub table: Table,
    pub summary: serde_json::Value,
    pub warnings: Vec<String>,
    /// Names of failed oracle checks.
    pub oracle_failures: Vec<String>,
}

impl Report {
    fn new(table: Table, summary: serde_json::Value) -> Self {
        Self {
            table,
            summary,
            warnings: Vec::new(),
            oracle_failures: Vec::new(),
        }
    }
}

pub fn run(config: &Resolved) -> Result<Report, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Config(vec![format!("worker pool: {e}")]))?;
    pool.install(|| match &config.run {
        RunConfig::Ground { .. } => run_ground(&config.run),
        RunConfig::QuenchSweep { .. } => run_quench_sweep(&config.run),
        RunConfig::PhasePlot { .. } => run_phase_plot(&config.run),
        RunConfig::OracleCheck { .. } => run_oracle_check(&config.run),
    })
}

pub fn run_ground(config: &RunConfig) -> Result<Report, CliError> {
    let RunConfig::Ground { n, alpha, mu, delta, l_range } = config else {
        unreachable!("ground runner called with {config:?}")
    };
    let p = ModelParams::new(*n, *mu, *delta, *alpha)?;
    let points = ground_entropies(&p, l_range)?;
    let fit = fit_log_scaling(&points, Measure::Entropy, Abscissa::Chord { n: *n })?;
    let mut table = Table::new(GROUND_COLUMNS);
    for &(l, s) in &points {
        table.push(vec!["entropy".into(), l.to_string(), float(s), String::new(), String::new(), String::new(), String::new()]);
    }
    table.push(vec![
        "fit".into(),
        String::new(),
        String::new(),
        float(fit.slope),
        float(fit.intercept),
        float(fit.r_squared),
        float(fit.c_eff),
    ]);
    let mut report = Report::new(table, json!({ "fit": fit, "low_confidence": fit.low_confidence() }));
    if fit.low_confidence() {
        report.warnings.push(format!("low-confidence fit, R^2 = {:.3}", fit.r_squared));
    }
    Ok(report)
}

pub fn run_quench_sweep(config: &RunConfig) -> Result<Report, CliError> {
    let RunConfig::QuenchSweep { n, alpha, mu_i, delta_i, mu_f, delta_f, l } = config else {
        unreachable!("quench-sweep runner called with {config:?}")
    };
    let pre = ModelParams::new(*n, *mu_i, *delta_i, *alpha)?;
    let rows: Vec<_> = mu_f
        .par_iter()
        .map(|&m| -> Result<_, CliError> {
            let q = QuenchProtocol::new(pre, pre.with_mu_delta(m, *delta_f)?)?;
            let table = stationary_correlators(&q, 3 * l - 1)?;
            let report = entanglement_report(&table, Geometry::new(*l), true, true)?;
            Ok((m, report, soft_mode_occupation(&q)?))
        })
        .collect::<Result<_, _>>()?;
    let half_ln2 = 0.5 * std::f64::consts::LN_2;
    let mut table = Table::new(SWEEP_COLUMNS);
    let mut summary = Vec::new();
    for (m, report, nk) in rows {
        let upper = report.logneg_upper.expect("requested");
        table.push(vec![
            float(*alpha),
            float(*mu_i),
            float(*delta_i),
            float(m),
            float(*delta_f),
            n.to_string(),
            l.to_string(),
            float(report.mutual_info),
            float(upper),
            float(upper - half_ln2),
            opt_float(report.tmi),
            float(nk),
        ]);
        summary.push(json!({ "mu_f": m, "report": report, "n_soft": nk }));
    }
    Ok(Report::new(table, json!({ "rows": summary })))
}

pub fn run_phase_plot(config: &RunConfig) -> Result<Report, CliError> {
    let RunConfig::PhasePlot { n, alpha, mu_i, delta_i, mu_f, delta_f, measure, l_range } = config else {
        unreachable!("phase-plot runner called with {config:?}")
    };
    let initial = ModelParams::new(*n, *mu_i, *delta_i, *alpha)?;
    let grid = phase_scan(&initial, mu_f, delta_f, *measure, l_range)?;
    let mut table = Table::new(PHASE_COLUMNS);
    let mut warnings = Vec::new();
    let (mut ok, mut low, mut failed) = (0, 0, 0);
    for cell in &grid.cells {
        let (c_eff, r2, flag) = match &cell.fit {
            Ok(fit) if fit.low_confidence() => {
                low += 1;
                (float(fit.c_eff), float(fit.r_squared), "low_confidence")
            }
            Ok(fit) => {
                ok += 1;
                (float(fit.c_eff), float(fit.r_squared), "ok")
            }
            Err(e) => {
                failed += 1;
                warnings.push(format!("cell mu_f = {}, delta_f = {}: {e}", cell.mu_f, cell.delta_f));
                (String::new(), String::new(), "error")
            }
        };
        table.push(vec![
            float(*alpha),
            float(*mu_i),
            float(*delta_i),
            float(cell.mu_f),
            float(cell.delta_f),
            measure.name().into(),
            c_eff,
            r2,
            flag.into(),
        ]);
    }
    let mut report = Report::new(
        table,
        json!({ "cells": grid.cells.len(), "ok": ok, "low_confidence": low, "errors": failed }),
    );
    report.warnings = warnings;
    Ok(report)
}

pub fn run_oracle_check(config: &RunConfig) -> Result<Report, CliError> {
    let RunConfig::OracleCheck { sizes, samples, seed, corrupt_sign } = config else {
        unreachable!("oracle-check runner called with {config:?}")
    };
    let checks = run_suite(&SuiteConfig {
        sizes: sizes.clone(),
        random_quenches: *samples,
        seed: *seed,
        corrupt_sign: *corrupt_sign,
        ..SuiteConfig::default()
    });
    let mut table = Table::new(ORACLE_COLUMNS);
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    for c in &checks {
        table.push(vec![
            c.name.clone(),
            c.samples.to_string(),
            float(c.max_deviation),
            float(c.tolerance),
            if c.passed { "PASS" } else { "FAIL" }.into(),
        ]);
        if !c.passed {
            failures.push(c.name.clone());
        }
        if let Some(detail) = &c.detail {
            warnings.push(format!("{}: {detail}", c.name));
        }
    }
    let mut report = Report::new(table, json!({ "checks": checks }));
    report.oracle_failures = failures;
    report.warnings = warnings;
    Ok(report)
}
