//! Command implementations. Each returns the rendered output and the exit
//! status.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use explicit_core::constants::{
    certification_report, evaluate_density_bound, evaluate_repulsion_bound, optimize_alpha, FieldParams, RepulsionKind,
};
use explicit_core::dirichlet::{CacheStatus, ZeroBank, ZeroCache};
use explicit_core::verify::{run_suites, summary_table, Budgets, Suite, SuiteConfig};
use explicit_core::{Error, Result};

use crate::output::{row, Output};
use crate::run_config::RunConfig;
use crate::{BoundsCmd, Cli, Command, ConstantsCmd, DensityArgs, FieldArgs, RepulsionArgs, VerifyArgs, ZerosCmd, EXIT_FAIL};

const HEURISTIC_NOTE: &str = "heuristic: implied constants are caller inputs, not certified values";

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

pub fn run(cli: &Cli) -> Result<(String, u8)> {
    let cfg = RunConfig::resolve(cli)?;
    let (out, code) = match &cli.command {
        Command::Constants(ConstantsCmd::Derive { alpha, eta }) => constants_derive(&cfg, *alpha, *eta)?,
        Command::Constants(ConstantsCmd::OptimizeAlpha) => (optimize(), 0),
        Command::Bounds(BoundsCmd::Density(a)) => (bounds_density(a)?, 0),
        Command::Bounds(BoundsCmd::Repulsion(a)) => (bounds_repulsion(a)?, 0),
        Command::Zeros(ZerosCmd::Scan { q, qmax, height }) => (zeros_scan(&cfg, *q, *qmax, *height)?, 0),
        Command::Verify(a) => verify(&cfg, a)?,
    };
    Ok((out.render(cfg.format)?, code))
}

fn constants_derive(cfg: &RunConfig, alpha: Option<f64>, eta: Option<f64>) -> Result<(Output, u8)> {
    let alpha = cfg.pick(alpha, "alpha", 0.15)?;
    let eta = cfg.pick(eta, "eta", 1e-4)?;
    let entries = certification_report(alpha, eta)?;
    let mut table = String::new();
    let _ = writeln!(table, "certification at alpha = {alpha}, eta = {eta}");
    for e in &entries {
        let _ = writeln!(
            table,
            "{:<34} {:>14.8} ± {:<9.2e} {:>14} {:<10} {}",
            e.name,
            e.derived_value,
            e.derived_radius,
            e.direction.to_string(),
            e.published,
            if e.pass { "pass" } else { "FAIL" }
        );
    }
    let failed = entries.iter().filter(|e| !e.pass).count();
    let _ = writeln!(table, "{} entries, {failed} failed", entries.len());
    let rows = entries.iter().map(row).collect::<Result<_>>()?;
    Ok((Output { rows, table }, if failed == 0 { 0 } else { EXIT_FAIL }))
}

fn optimize() -> Output {
    let (argmin, value) = optimize_alpha();
    Output {
        rows: vec![object(json!({ "argmin": argmin, "value": value }))],
        table: format!("argmin alpha = {argmin:.6}\nminimum exponent = {value:.6}\n"),
    }
}

fn field(f: &FieldArgs, q: f64, nq: f64) -> Result<FieldParams> {
    FieldParams::new(f.nk, f.dk, q, nq, f.t)?.with_implied(f.implied)
}

fn bounds_density(a: &DensityArgs) -> Result<Output> {
    let p = field(&a.field, a.q, a.q)?;
    let exponent = a
        .exponent
        .unwrap_or(if a.sigma >= 1.0 - 1e-3 { 74.0 } else { 81.0 });
    let b = evaluate_density_bound(a.sigma, &p, exponent, a.leading)?;
    let r = object(json!({
        "bound": "density",
        "sigma": a.sigma, "n_k": a.field.nk, "d_k": a.field.dk, "q": a.q, "t": a.field.t,
        "implied_nk_constant": a.field.implied, "leading_constant": a.leading, "exponent": exponent,
        "log_value": b.log_value, "value": if b.overflow { Value::from("inf") } else { Value::from(b.value) },
        "overflow": b.overflow, "note": HEURISTIC_NOTE,
    }));
    let table = format!(
        "density bound at sigma = {}: {}\n  exponent {exponent}, leading constant {}, implied n_K constant {}\n  n_K = {}, D_K = {}, Q = {}, T = {}\n  log value {:.10}\n  {HEURISTIC_NOTE}\n",
        a.sigma,
        if b.overflow { "overflow".to_string() } else { format!("{:.10}", b.value) },
        a.leading,
        a.field.implied,
        a.field.nk,
        a.field.dk,
        a.q,
        a.field.t,
        b.log_value
    );
    Ok(Output { rows: vec![r], table })
}

fn bounds_repulsion(a: &RepulsionArgs) -> Result<Output> {
    let kind: RepulsionKind = a.kind.parse()?;
    let p = field(&a.field, a.nq, a.nq)?;
    let b = evaluate_repulsion_bound(kind, a.beta1, &p, a.c)?;
    let coeffs = kind.published();
    let r = object(json!({
        "bound": "repulsion", "kind": kind, "coefficients": coeffs,
        "beta1": a.beta1, "n_k": a.field.nk, "d_k": a.field.dk, "nq": a.nq, "t": a.field.t, "c": a.c,
        "value": b.value, "vacuous": b.vacuous, "note": HEURISTIC_NOTE,
    }));
    let table = format!(
        "repulsion bound ({}, coefficients {coeffs:?}): {:.10}{}\n  beta1 = {}, c = {}, n_K = {}, D_K = {}, Nq = {}, T = {}\n  {HEURISTIC_NOTE}\n",
        a.kind,
        b.value,
        if b.vacuous { " (vacuous)" } else { "" },
        a.beta1,
        a.c,
        a.field.nk,
        a.field.dk,
        a.nq,
        a.field.t
    );
    Ok(Output { rows: vec![r], table })
}

fn zeros_scan(cfg: &RunConfig, q: Option<u64>, qmax: Option<u64>, height: Option<f64>) -> Result<Output> {
    let height = cfg.pick(height, "height", 50.0)?;
    let moduli: Vec<u64> = match (q, qmax) {
        (Some(q), _) => vec![q],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => (1..=cfg.pick(None, "qmax", 20)?).collect(),
    };
    if moduli.iter().any(|&m| m == 0) {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    cfg.guard(moduli.iter().copied().max().unwrap_or(1), height)?;
    let cache = ZeroCache::new(&cfg.cache_dir);
    let mut rows = Vec::new();
    let mut table = String::new();
    for m in moduli {
        let (sets, status) = cache.ensure(m, height, true)?;
        let status = match status {
            CacheStatus::Cached => "cached, skipped",
            CacheStatus::Scanned => "scanned",
        };
        if sets.is_empty() {
            let _ = writeln!(table, "q = {m}: no primitive characters ({status})");
        }
        for z in &sets {
            let positive = z.positive_ordinates();
            let _ = writeln!(
                table,
                "q = {m} [{}]: {} zeros with |γ| ≤ {:.3}, first ordinate {} ({status})",
                z.character.label(),
                z.zeros.len(),
                z.complete_to_height,
                positive.first().map_or("-".to_string(), |g| format!("{g:.6}"))
            );
            rows.push(object(json!({
                "modulus": m,
                "character": z.character.label(),
                "zeros": z.zeros.len(),
                "positive_ordinates": positive.len(),
                "first_ordinate": positive.first(),
                "complete_to_height": z.complete_to_height,
                "status": status,
            })));
        }
    }
    Ok(Output { rows, table })
}

fn verify(cfg: &RunConfig, a: &VerifyArgs) -> Result<(Output, u8)> {
    let suites = Suite::parse_list(&a.suite)?;
    let defaults = SuiteConfig::default();
    let suite_cfg = SuiteConfig {
        q_max: cfg.pick(a.qmax, "qmax", defaults.q_max)?,
        height: cfg.pick(a.height, "height", defaults.height)?,
        samples: cfg.pick(a.samples, "samples", defaults.samples)?,
        k: cfg.pick(a.k, "k", defaults.k)?,
        seed: cfg.pick(a.seed, "seed", defaults.seed)?,
        budgets: Budgets::overridden(&cfg.file)?,
        ..defaults
    };
    cfg.guard(suite_cfg.q_max, suite_cfg.zero_height())?;
    let bank = if suites.iter().any(|s| s.needs_zeros()) {
        let cache = ZeroCache::new(&cfg.cache_dir);
        ZeroBank::gather(&cache, suite_cfg.q_max, suite_cfg.zero_height(), a.scan_missing)?
    } else {
        ZeroBank::new()
    };
    let reports = run_suites(&suites, &suite_cfg, &bank)?;
    if let Some(path) = &a.report {
        let text = serde_json::to_string_pretty(&reports).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text + "\n")?;
    }
    let all_pass = reports.iter().all(|r| r.pass);
    let rows = reports.iter().map(row).collect::<Result<_>>()?;
    Ok((
        Output { rows, table: summary_table(&reports) },
        if all_pass { 0 } else { EXIT_FAIL },
    ))
}
