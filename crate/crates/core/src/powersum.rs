//! Power sums `s_m = Σ z_n^m` and witness search for the two power-sum
//! lower bounds used by the zero detector (Kolesnik–Straus) and by zero
//! repulsion (Lagarias–Montgomery–Odlyzko).
//!
//! Sums are evaluated on the normalised sequence `z_n / |z_1|`, so the
//! comparison against `c·|z_1|^m` never underflows; `sum_value` and
//! `lower_bound` in a witness are rescaled afterwards.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::ComplexSum;
use crate::error::{Error, Result};

/// Relative slack granted to the inequality check.
pub const ACCEPT_SLACK: f64 = 1e-10;

/// A non-empty finite sequence sorted by non-increasing modulus, with a
/// non-zero leading term.
///
/// The LMO bound is stated for infinite sequences with finite mass
/// `M = Σ|z_n| / |z_1|`. Callers truncating such a sequence must compute `M`
/// on the full multiset and pass it through [`lmo_witness_with_mass`];
/// [`lmo_witness`] uses the mass of the stored values.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeq {
    values: Vec<Complex64>,
}

impl ComplexSeq {
    /// Sorts `values` by decreasing modulus (stable, so ties keep input order).
    pub fn new(mut values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empty sequence".into()));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain("non-finite entry".into()));
        }
        values.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
        if values[0].norm() == 0.0 {
            return Err(Error::Domain("leading term is zero".into()));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leading_modulus(&self) -> f64 {
        self.values[0].norm()
    }

    /// `Σ|z_n| / |z_1|`.
    pub fn mass(&self) -> f64 {
        let r = self.leading_modulus();
        let mut acc = crate::arith::NeumaierSum::new();
        for z in &self.values {
            acc.add(z.norm() / r);
        }
        acc.value()
    }

    /// `Σ (z_n/|z_1|)^m` together with `Σ |z_n/|z_1||^m`.
    fn normalized_sum(&self, m: u64) -> (Complex64, f64) {
        let r = self.leading_modulus();
        let mut acc = ComplexSum::new();
        let mut abs = crate::arith::NeumaierSum::new();
        for z in &self.values {
            let w = z / r;
            let p = pow_polar(w, m);
            acc.add(p);
            abs.add(p.norm());
        }
        (acc.value(), abs.value())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSumWitness {
    pub index: u64,
    pub sum_value: Complex64,
    pub lower_bound: f64,
    pub search_range: RangeInclusive<u64>,
}

/// `w^m` through the polar form, which keeps unit-modulus inputs on the unit
/// circle.
fn pow_polar(w: Complex64, m: u64) -> Complex64 {
    let (r, theta) = w.to_polar();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mag = (m as f64 * r.ln()).exp();
    // Reduce m·θ modulo 2π in two steps to limit the error for large m.
    let turns = theta / std::f64::consts::TAU;
    let frac = (m as f64 * turns).fract();
    let ang = frac * std::f64::consts::TAU;
    Complex64::from_polar(mag, ang)
}

/// `s_m = Σ z_n^m` with compensated summation.
///
/// The relative error is at most about `10·ε·Σ|z_n|^m / |s_m|`, so results
/// with heavy cancellation carry only absolute accuracy.
pub fn power_sum(z: &ComplexSeq, m: u64) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Domain("power index must be positive".into()));
    }
    let (s, _) = z.normalized_sum(m);
    Ok(s * z.leading_modulus().powf(m as f64))
}

/// `s_m` for an unsorted slice.
pub fn power_sum_slice(values: &[Complex64], m: u64) -> Result<Complex64> {
    power_sum(&ComplexSeq::new(values.to_vec())?, m)
}

/// `ε / (48 + 5ε)`.
pub fn lmo_constant(eps: f64) -> f64 {
    eps / (48.0 + 5.0 * eps)
}

/// Smallest `m₀ ∈ [1, ⌈(12+ε)M⌉]` with `Re s_{m₀} ≥ ε/(48+5ε)·|z_1|^{m₀}`.
pub fn lmo_witness(z: &ComplexSeq, eps: f64) -> Result<PowerSumWitness> {
    lmo_witness_with_mass(z, eps, z.mass())
}

/// As [`lmo_witness`], with the mass `M` of the untruncated sequence supplied.
pub fn lmo_witness_with_mass(z: &ComplexSeq, eps: f64, mass: f64) -> Result<PowerSumWitness> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if !(mass >= 1.0) || !mass.is_finite() {
        return Err(Error::Domain(format!(
            "mass must be at least 1, got {mass}"
        )));
    }
    let c = lmo_constant(eps);
    let hi = ((12.0 + eps) * mass).ceil() as u64;
    let hi = hi.max(1);
    let mut best = (1u64, f64::NEG_INFINITY);
    for m in 1..=hi {
        let (s, _) = z.normalized_sum(m);
        let ratio = s.re / c;
        if ratio >= 1.0 - ACCEPT_SLACK {
            let scale = z.leading_modulus().powf(m as f64);
            return Ok(PowerSumWitness {
                index: m,
                sum_value: s * scale,
                lower_bound: c * scale,
                search_range: 1..=hi,
            });
        }
        if ratio > best.1 {
            best = (m, ratio);
        }
    }
    Err(Error::WitnessNotFound {
        lo: 1,
        hi,
        best_index: best.0,
        best_ratio: best.1,
    })
}

/// `(n / (4e(M+n)))^n`, evaluated in log space.
pub fn ks_ratio(n: u64, m_offset: u64) -> f64 {
    let n_f = n as f64;
    let denom = 4.0 * std::f64::consts::E * (m_offset as f64 + n_f);
    (n_f * (n_f / denom).ln()).exp()
}

/// Smallest `k ∈ [M+1, M+N]` with `|s_k| ≥ 1.007·(N/(4e(M+N)))^N·|z_1|^k`.
pub fn ks_witness(z: &ComplexSeq, m_offset: u64) -> Result<PowerSumWitness> {
    let n = z.len() as u64;
    let c = 1.007 * ks_ratio(n, m_offset);
    let lo = m_offset + 1;
    let hi = m_offset + n;
    let mut best = (lo, f64::NEG_INFINITY);
    for k in lo..=hi {
        let (s, _) = z.normalized_sum(k);
        let ratio = s.norm() / c;
        if ratio >= 1.0 - ACCEPT_SLACK {
            let scale = z.leading_modulus().powf(k as f64);
            return Ok(PowerSumWitness {
                index: k,
                sum_value: s * scale,
                lower_bound: c * scale,
                search_range: lo..=hi,
            });
        }
        if ratio > best.1 {
            best = (k, ratio);
        }
    }
    Err(Error::WitnessNotFound {
        lo,
        hi,
        best_index: best.0,
        best_ratio: best.1,
    })
}
