//! Verification driver: samples parameters, runs the identity suites and
//! renders reports.
//!
//! Every instance gets its own seed, derived from the configured seed, the
//! check group and the instance index, so a report does not depend on
//! which other suites ran or on thread scheduling.

mod config;
mod report;
mod suites;

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

pub use config::{Format, Polar, Suite, SuiteConfig};
pub use report::{render_report, summary_line, tally, CheckReport, NamedValue};

use crate::error::Result;
use crate::reduce::relative_residual;
use suites::{groups, Ctx, Group, Outcome, Slot};

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of instance `index` of the named check group.
pub fn instance_seed(seed: u64, group: &str, index: usize) -> u64 {
    splitmix(splitmix(seed ^ fnv1a(group)).wrapping_add(index as u64))
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

fn run_group(ctx: &Ctx, suite: Suite, g: &Group) -> Vec<CheckReport> {
    let per_cell = ctx.config.count(suite, g.count);
    let name = format!("{}.{}", suite.name(), g.name);
    let outcomes: Vec<(Result<Outcome>, f64)> = (0..per_cell * g.cells)
        .into_par_iter()
        .map(|index| {
            let slot = Slot { seed: instance_seed(ctx.config.seed, &name, index), index, per_cell };
            let start = Instant::now();
            let out = (g.run)(ctx, slot);
            let ms = if ctx.config.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            (out, ms)
        })
        .collect();

    let mut reports = Vec::with_capacity(outcomes.len() * g.checks.len());
    for (j, check) in g.checks.iter().enumerate() {
        let tol = ctx.config.tolerance(check.id, check.tol);
        for (outcome, ms) in &outcomes {
            let (params, pair) = match outcome {
                Ok(o) => (o.params.clone(), o.pairs.as_ref().map(|p| p[j]).map_err(|e| e.to_string())),
                Err(e) => (Vec::new(), Err(e.to_string())),
            };
            let report = match pair {
                Ok((lhs, rhs)) => {
                    let rel = relative_residual(lhs, rhs);
                    let pass = check.passes(lhs, rhs, tol);
                    CheckReport {
                        check_id: check.id.into(),
                        params: CheckReport::named(params),
                        lhs,
                        rhs,
                        rel_residual: rel,
                        pass,
                        runtime_ms: *ms,
                        error: None,
                    }
                }
                Err(e) => CheckReport {
                    check_id: check.id.into(),
                    params: CheckReport::named(params),
                    lhs: nan(),
                    rhs: nan(),
                    rel_residual: f64::NAN,
                    pass: false,
                    runtime_ms: *ms,
                    error: Some(e),
                },
            };
            reports.push(report);
        }
    }
    reports
}

/// Run the configured suites in canonical order and return one report per
/// check and instance. Evaluation failures become failed reports carrying
/// the error text. When `config.out` is set the rendered reports are also
/// written there.
pub fn run_suites(config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let reports = run_selected(config, |_| true)?;
    if let Some(path) = &config.out {
        std::fs::write(path, render_report(&reports, config.format)?)?;
    }
    Ok(reports)
}

/// Like [`run_suites`], restricted to the check groups that report at least
/// one of `ids`, and without writing `config.out`. Instances and seeds are
/// the same as in a full run.
pub fn run_checks(config: &SuiteConfig, ids: &[&str]) -> Result<Vec<CheckReport>> {
    run_selected(config, |g| g.checks.iter().any(|c| ids.contains(&c.id)))
}

fn run_selected(config: &SuiteConfig, keep: impl Fn(&Group) -> bool) -> Result<Vec<CheckReport>> {
    config.validate()?;
    let ctx = Ctx { config, nome: config.nome()? };
    let mut selected = config.suites.clone();
    selected.sort();
    selected.dedup();
    let mut reports = Vec::new();
    for suite in selected {
        for g in groups(suite).iter().filter(|g| keep(g)) {
            reports.extend(run_group(&ctx, suite, g));
        }
    }
    Ok(reports)
}

/// Check ids a suite reports, in report order.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    groups(suite).iter().flat_map(|g| g.checks.iter().map(|c| c.id)).collect()
}
