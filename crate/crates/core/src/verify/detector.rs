//! Ingredients of the zero detector at desk scale: prime window sums and the
//! `E_k`-weighted series identity.
//!
//! The detector inequality itself needs `log x` of the order of a hundred
//! times `𝓛`, far outside any computable range, so every report here
//! carries [`SCALE_NOTE`].

use num_complex::Complex64;

use super::report::{CheckReport, Relation};
use super::zerosums::tag;
use crate::arith::{for_each_prime, ComplexSum};
use crate::dirichlet::sums::{prime_power_table, MAX_SUM_LENGTH};
use crate::dirichlet::{log_deriv_analytic, log_deriv_series, DirichletCharacter};
use crate::error::{Error, Result};
use crate::kernels::e_kernel;

pub const SCALE_NOTE: &str =
    "the detector inequality is not evaluated at its true scale; its ingredients are checked separately";

/// Default cutoff of the series identity.
pub const IDENTITY_CUTOFF: u64 = 1_000_000;

fn window_primes(y: f64, u: f64, mut f: impl FnMut(u64)) -> Result<()> {
    if !(y > 0.0 && y <= u && u <= MAX_SUM_LENGTH) {
        return Err(Error::Domain(format!(
            "need 0 < y ≤ u ≤ {MAX_SUM_LENGTH:e}, got y={y}, u={u}"
        )));
    }
    // Primes p with y ≤ p < u.
    let hi = if u.fract() == 0.0 {
        u as u64 - 1
    } else {
        u.floor() as u64
    };
    let lo = y.ceil() as u64;
    if hi >= 2 && hi >= lo {
        for_each_prime(hi, |p| {
            if p >= lo {
                f(p)
            }
        });
    }
    Ok(())
}

/// `W(u) = Σ_{y ≤ p < u} χ(p) log p / p^{1+iτ}`.
pub fn detector_window_sum(
    chi: &DirichletCharacter,
    tau: f64,
    y: f64,
    u: f64,
) -> Result<Complex64> {
    let mut acc = ComplexSum::new();
    window_primes(y, u, |p| {
        let lp = (p as f64).ln();
        acc.add(chi.value(p) * lp / p as f64 * Complex64::from_polar(1.0, -tau * lp));
    })?;
    Ok(acc.value())
}

/// `|W(u)| ≤ Σ_{y ≤ p < u} log p / p`.
pub fn detector_window_check(
    chi: &DirichletCharacter,
    tau: f64,
    y: f64,
    u: f64,
) -> Result<CheckReport> {
    let w = detector_window_sum(chi, tau, y, u)?;
    let mut total = 0.0;
    window_primes(y, u, |p| total += (p as f64).ln() / p as f64)?;
    Ok(CheckReport::new(
        format!("detector.window/{}/tau={tau}/[{y},{u})", tag(chi)),
        w.norm(),
        total,
        Relation::Le,
        1e-12 * total,
    )
    .with("re", w.re)
    .with("im", w.im)
    .with("scale_note", SCALE_NOTE))
}

/// `Σ_{n ≤ N} Λ(n)χ(n) n^{−1−iτ} · r E_k(r log n)` summed through the
/// kernel, against `r^{k+1}` times the `k`-th log-derivative series at
/// `ξ = 1 + r + iτ` with the same cutoff.
///
/// The context also compares with the analytic log-derivative, which must
/// agree within the series tail bound.
pub fn detector_series_identity_check(
    chi: &DirichletCharacter,
    r: f64,
    tau: f64,
    k: u32,
    cutoff: u64,
    tolerance: f64,
) -> Result<CheckReport> {
    if !chi.is_primitive() {
        return Err(Error::Domain(format!("{chi} is not primitive")));
    }
    if !(r > 0.0) || cutoff < 2 || cutoff as f64 > MAX_SUM_LENGTH {
        return Err(Error::Domain(format!(
            "need r > 0 and 2 ≤ cutoff ≤ {MAX_SUM_LENGTH:e}, got r={r}, cutoff={cutoff}"
        )));
    }
    let table = prime_power_table(cutoff);
    let end = table.partition_point(|&(pm, _)| pm <= cutoff);
    let mut acc = ComplexSum::new();
    for &(pm, p) in &table[..end] {
        let v = chi.value(pm);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let ln_n = (pm as f64).ln();
        let phase = Complex64::from_polar(1.0 / pm as f64, -tau * ln_n);
        acc.add(v * (p as f64).ln() * phase * r * e_kernel(r * ln_n, k as u64));
    }
    let kernel_side = acc.value();
    let xi = Complex64::new(1.0 + r, tau);
    let series = log_deriv_series(xi, chi, k, cutoff)?;
    let scale = r.powi(k as i32 + 1);
    let series_side = series.value * scale;
    let analytic = log_deriv_analytic(xi, chi, k)? * scale;
    let tail = series.tail_bound * scale;
    let analytic_gap = (analytic - kernel_side).norm();
    Ok(CheckReport::residual(
        format!("detector.identity.k={k}/{}/r={r}/tau={tau}", tag(chi)),
        (kernel_side - series_side).norm(),
        tolerance,
    )
    .with("kernel_re", kernel_side.re)
    .with("kernel_im", kernel_side.im)
    .with("cutoff", cutoff)
    .with("analytic_gap", analytic_gap)
    .with("scaled_tail_bound", tail)
    .with("analytic_within_tail", analytic_gap <= tail + tolerance)
    .with("scale_note", SCALE_NOTE))
}
