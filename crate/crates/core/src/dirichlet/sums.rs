//! Prime sums, logarithmic derivatives of `L(s, χ)` and sums over
//! trivial zeros.

use std::f64::consts::{PI, TAU};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::character::DirichletCharacter;
use super::lfunc::{l_times_pole, trivial_zeros};
use crate::arith::{factorize, for_each_prime, prime_powers_up_to, ComplexSum, NeumaierSum};
use crate::error::{Error, Result};

/// Upper limit accepted by the direct prime and integer sums.
pub const MAX_SUM_LENGTH: f64 = 1e8;

/// `(p^m, p)` for all prime powers up to at least `n`, sorted; shared
/// across calls and rebuilt only when a larger limit is requested.
pub fn prime_power_table(n: u64) -> Arc<Vec<(u64, u64)>> {
    type Table = (u64, Arc<Vec<(u64, u64)>>);
    static CACHE: OnceLock<Mutex<Table>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((0, Arc::new(Vec::new()))));
    let mut guard = cache.lock().expect("prime table lock");
    if guard.0 < n {
        let limit = n.max(2 * guard.0);
        *guard = (limit, Arc::new(prime_powers_up_to(limit)));
    }
    guard.1.clone()
}

fn check_length(x: f64, what: &str) -> Result<()> {
    if x > MAX_SUM_LENGTH {
        return Err(Error::Domain(format!(
            "{what} = {x} exceeds the direct-summation limit {MAX_SUM_LENGTH:e}"
        )));
    }
    Ok(())
}

/// `Σ_{n ≤ y} Λ(n)/n`.
pub fn von_mangoldt_sum(y: f64) -> Result<f64> {
    if !(y >= 2.0) {
        return Err(Error::Domain(format!("need y ≥ 2, got {y}")));
    }
    check_length(y, "y")?;
    let n = y.floor() as u64;
    let mut acc = NeumaierSum::new();
    for_each_prime(n, |p| {
        let lp = (p as f64).ln();
        let mut pk = p;
        let mut inv = 0.0;
        loop {
            inv += 1.0 / pk as f64;
            match pk.checked_mul(p) {
                Some(next) if next <= n => pk = next,
                _ => break,
            }
        }
        acc.add(lp * inv);
    });
    Ok(acc.value())
}

/// `Σ_{n ≤ x} (1/n)(1 − n/x)^{n_K}`.
pub fn smoothed_harmonic_sum(x: f64, n_k: u32) -> Result<f64> {
    if !(x > 0.0) || n_k == 0 {
        return Err(Error::Domain(format!(
            "need x > 0 and n_K ≥ 1, got ({x}, {n_k})"
        )));
    }
    check_length(x, "x")?;
    let mut acc = NeumaierSum::new();
    let mut n = 1u64;
    while (n as f64) <= x {
        acc.add((1.0 - n as f64 / x).powi(n_k as i32) / n as f64);
        n += 1;
    }
    Ok(acc.value())
}

/// `V(z) = Σ_{n ≤ z} 1/n`.
pub fn harmonic_number(z: f64) -> Result<f64> {
    check_length(z, "z")?;
    let mut acc = NeumaierSum::new();
    let mut n = 1u64;
    while (n as f64) <= z {
        acc.add(1.0 / n as f64);
        n += 1;
    }
    Ok(acc.value())
}

/// A truncated series with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `Γ(n, x)/(n−2)!` for integer `n ≥ 2`: `(n−1) e^{-x} Σ_{j<n} x^j/j!`.
fn upper_gamma_over_factorial(n: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..n {
        term *= x / j as f64;
        sum += term;
    }
    (n - 1) as f64 * (-x).exp() * sum
}

/// Bound for `(1/k!) Σ_{n > N} (log n)^{k+1} n^{-σ}`, which majorises the
/// tail of the Dirichlet series of `(−1)^{k+1}/k!·(L′/L)^{(k)}`.
pub fn log_deriv_tail_bound(sigma: f64, k: u32, cutoff: u64) -> f64 {
    let kf = k as f64;
    let turn = ((kf + 1.0) / sigma).exp();
    let f = |x: f64| x.ln().powf(kf + 1.0) * x.powf(-sigma);
    let k_fact: f64 = (1..=k).map(|i| i as f64).product();
    let n = cutoff as f64;
    let start = n.max(turn);
    let head = if n < turn {
        (turn - n + 1.0) * f(turn) / k_fact
    } else {
        0.0
    };
    let d = sigma - 1.0;
    head + upper_gamma_over_factorial(k + 2, d * start.ln()) / d.powf(kf + 2.0)
}

/// `(1/k!) Σ_{n ≤ cutoff} Λ(n) (log n)^k χ(n) n^{-s}`, which converges to
/// `(−1)^{k+1}/k!·(d/ds)^k L′/L(s, χ)` for `Re s > 1`.
pub fn log_deriv_series(
    s: Complex64,
    chi: &DirichletCharacter,
    k: u32,
    cutoff: u64,
) -> Result<SeriesValue> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("need Re s > 1, got {s}")));
    }
    if cutoff < 2 {
        return Err(Error::Domain("cutoff must be at least 2".into()));
    }
    check_length(cutoff as f64, "cutoff")?;
    let table = prime_power_table(cutoff);
    let end = table.partition_point(|&(pm, _)| pm <= cutoff);
    let mut acc = ComplexSum::new();
    for &(pm, p) in &table[..end] {
        let v = chi.value(pm);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let ln_n = (pm as f64).ln();
        acc.add(v * (p as f64).ln() * ln_n.powi(k as i32) * (-s * ln_n).exp());
    }
    let k_fact: f64 = (1..=k).map(|i| i as f64).product();
    Ok(SeriesValue {
        value: acc.value() / k_fact,
        tail_bound: log_deriv_tail_bound(s.re, k, cutoff),
    })
}

const CAUCHY_POINTS: usize = 256;

/// `(−1)^{k+1}/k!·(d/ds)^k L′/L(s, χ)` from a Cauchy integral of
/// `log[(z−1)^δ L(z, χ)]` on a circle that encloses no zero, for `Re s > ½`.
pub fn log_deriv_analytic(s: Complex64, chi: &DirichletCharacter, k: u32) -> Result<Complex64> {
    if !(s.re > 0.5) {
        return Err(Error::Domain(format!("need Re s > 1/2, got {s}")));
    }
    let mut r = (0.8 * (s.re - 0.5)).min(1.0);
    let m = k + 1;
    for _ in 0..8 {
        let mut logs = Vec::with_capacity(CAUCHY_POINTS);
        let mut prev: Option<f64> = None;
        let mut unwrapped = 0.0;
        let mut smooth = true;
        for j in 0..CAUCHY_POINTS {
            let theta = TAU * j as f64 / CAUCHY_POINTS as f64;
            let z = s + Complex64::from_polar(r, theta);
            let v = l_times_pole(z, chi)?;
            let arg = v.arg();
            unwrapped = match prev {
                None => arg,
                Some(pa) => {
                    let d = (arg - pa + PI).rem_euclid(TAU) - PI;
                    if d.abs() > 1.0 {
                        smooth = false;
                    }
                    unwrapped + d
                }
            };
            prev = Some(arg);
            logs.push(Complex64::new(v.norm().ln(), unwrapped));
        }
        let close = {
            let pa = prev.unwrap_or(0.0);
            let d = (logs[0].im - pa + PI).rem_euclid(TAU) - PI;
            unwrapped + d - logs[0].im
        };
        if !smooth || close.abs() > 1e-6 {
            // A zero inside the circle, or too rapid variation.
            r /= 2.0;
            continue;
        }
        let mut acc = ComplexSum::new();
        for (j, h) in logs.iter().enumerate() {
            let theta = TAU * j as f64 / CAUCHY_POINTS as f64;
            acc.add(*h * Complex64::from_polar(1.0, -(m as f64) * theta));
        }
        // h^{(m)}(s)/m! = (1/(N r^m)) Σ h(z_j) e^{-imθ_j}
        let taylor = acc.value() / (CAUCHY_POINTS as f64 * r.powi(m as i32));
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let mut out = sign * (m as f64) * taylor;
        if chi.is_principal() {
            out += 1.0 / (s - 1.0).powu(m);
        }
        return Ok(out);
    }
    Err(Error::Certification(format!(
        "no zero-free circle found about {s} for {chi}"
    )))
}

/// `Σ_ω 1/(s−ω)^{k+1}` over the trivial zeros of primitive `χ`, `k ≥ 1`,
/// with the tail beyond the summed zeros bounded by an integral.
pub fn trivial_zero_power_sum(
    s: Complex64,
    chi: &DirichletCharacter,
    k: u32,
) -> Result<SeriesValue> {
    if k == 0 {
        return Err(Error::Domain(
            "the sum over trivial zeros diverges for k = 0".into(),
        ));
    }
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("need Re s > 0, got {s}")));
    }
    let p = (k + 1) as i32;
    // The tail past the last summed zero at distance x₀ is at most
    // ∫_0^∞ (x₀ + 2x)^{-p} dx = x₀^{1−p}/(2(p−1)); choose x₀ for 10⁻¹⁰.
    let x0_needed = (1e10 / (2.0 * (p - 1) as f64)).powf(1.0 / (p - 1) as f64);
    let depth = (x0_needed / 2.0).ceil().max(10.0) as usize;
    let zeros = trivial_zeros(chi, depth)?;
    let mut acc = ComplexSum::new();
    for &(w, order) in zeros.iter().rev() {
        acc.add(order as f64 / (s - w).powi(p));
    }
    let last = zeros.last().map_or(0.0, |z| z.0);
    let x0 = s.re - last;
    let tail = (x0).powi(1 - p) / (2.0 * (p - 1) as f64);
    Ok(SeriesValue {
        value: acc.value(),
        tail_bound: tail,
    })
}

/// `Σ_ω 1/|s − ω|²` over the trivial zeros of `L(s, χ)` for any `χ`: those
/// of the inducing primitive character and the purely imaginary zeros of
/// the Euler factors at primes dividing the modulus but not the conductor.
pub fn trivial_zero_inverse_square_sum(
    sigma: f64,
    t: f64,
    chi: &DirichletCharacter,
) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("need σ > 0, got {sigma}")));
    }
    let prim = chi.primitive()?;
    Ok(primitive_trivial_part(sigma, t, &prim)? + euler_factor_part(sigma, t, chi, &prim))
}

/// The primitive-character part of [`trivial_zero_inverse_square_sum`].
pub fn primitive_trivial_part(sigma: f64, t: f64, prim: &DirichletCharacter) -> Result<f64> {
    const TERMS: usize = 10_000;
    let zeros = trivial_zeros(prim, TERMS)?;
    let mut acc = NeumaierSum::new();
    for &(w, order) in zeros.iter().rev() {
        let x = sigma - w;
        acc.add(order as f64 / (x * x + t * t));
    }
    // Σ_{i ≥ 1} 1/((x_J + 2i)² + t²) by the midpoint integral from i = ½.
    let x_last = sigma - zeros[TERMS - 1].0 + 1.0;
    let tail = if t == 0.0 {
        1.0 / (2.0 * x_last)
    } else {
        (PI / 2.0 - (x_last / t.abs()).atan()) / (2.0 * t.abs())
    };
    Ok(acc.value() + tail)
}

/// Sum of `1/|σ + it − ω|²` over the zeros `ω` of the Euler factors
/// `1 − χ*(p) p^{-s}` with `p | q`, `p ∤ f`, in closed form.
pub fn euler_factor_part(
    sigma: f64,
    t: f64,
    chi: &DirichletCharacter,
    prim: &DirichletCharacter,
) -> f64 {
    let mut total = 0.0;
    for (p, _) in factorize(chi.modulus()) {
        if chi.conductor() % p == 0 {
            continue;
        }
        let lp = (p as f64).ln();
        let period = TAU / lp;
        let c = prim.value(p).arg() / lp;
        let a = TAU * sigma / period;
        let u = TAU * (t - c) / period;
        total += PI / (sigma * period) * a.sinh() / (a.cosh() - u.cos());
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::character::enumerate_characters;
    use crate::dirichlet::lfunc::l_eval;
    use crate::dirichlet::special::EULER_GAMMA;
    use proptest::prelude::*;

    fn zeta() -> DirichletCharacter {
        DirichletCharacter::principal(1).unwrap()
    }

    fn odd4() -> DirichletCharacter {
        enumerate_characters(4).unwrap()[1].clone()
    }

    #[test]
    fn von_mangoldt_values() {
        assert!((von_mangoldt_sum(2.0).unwrap() - 2f64.ln() / 2.0).abs() < 1e-15);
        let oracle = 2f64.ln() * (0.5 + 0.25 + 0.125)
            + 3f64.ln() * (1.0 / 3.0 + 1.0 / 9.0)
            + 5f64.ln() / 5.0
            + 7f64.ln() / 7.0;
        assert!((von_mangoldt_sum(10.0).unwrap() - oracle).abs() < 1e-14);
        assert!((oracle - 1.694_650_7).abs() < 1e-7);
        let y: f64 = 1e6;
        let v = von_mangoldt_sum(y).unwrap();
        assert!(v >= y.ln() - 2.0 && v <= y.ln());
        assert!(von_mangoldt_sum(1.0).is_err());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(smoothed_harmonic_sum(1.0, 1).unwrap(), 0.0);
        assert!((smoothed_harmonic_sum(2.0, 1).unwrap() - 0.5).abs() < 1e-15);
        let x: f64 = 1e5;
        let main = x.ln() - 1.0 + EULER_GAMMA;
        assert!((smoothed_harmonic_sum(x, 1).unwrap() - main).abs() < 1e-2);
        assert!((harmonic_number(10.0).unwrap() - 2.928_968_253_968_254).abs() < 1e-14);
    }

    /// −f′/f by a central difference of `l_eval`.
    fn numeric_log_deriv(s: Complex64, chi: &DirichletCharacter) -> Complex64 {
        let h = 1e-5;
        let d = (l_eval(s + h, chi).unwrap() - l_eval(s - h, chi).unwrap()) / (2.0 * h);
        -d / l_eval(s, chi).unwrap()
    }

    #[test]
    fn log_derivative_series_and_oracles() {
        let s = Complex64::new(2.0, 0.0);
        let v = log_deriv_series(s, &zeta(), 0, 1_000_000).unwrap();
        assert!((v.value.re - 0.569_961).abs() < 1e-5);
        assert!(v.tail_bound < 1e-3);
        let oracle = numeric_log_deriv(s, &zeta());
        assert!((v.value - oracle).norm() <= v.tail_bound + 1e-7);
        let s3 = Complex64::new(3.0, 0.0);
        let v = log_deriv_series(s3, &odd4(), 0, 1_000_000).unwrap();
        assert!((v.value - numeric_log_deriv(s3, &odd4())).norm() < 1e-8);
        assert!(log_deriv_series(Complex64::new(1.0, 0.0), &zeta(), 0, 100).is_err());
    }

    #[test]
    fn analytic_log_derivative_agrees_with_series() {
        for chi in [zeta(), odd4(), enumerate_characters(5).unwrap()[1].clone()] {
            for s in [
                Complex64::new(2.0, 0.0),
                Complex64::new(1.5, 3.0),
                Complex64::new(3.0, -10.0),
            ] {
                let a0 = log_deriv_analytic(s, &chi, 0).unwrap();
                assert!((a0 - numeric_log_deriv(s, &chi)).norm() < 1e-7, "{chi} {s}");
                for k in [0u32, 1, 2, 3] {
                    let a = log_deriv_analytic(s, &chi, k).unwrap();
                    let b = log_deriv_series(s, &chi, k, 1_000_000).unwrap();
                    assert!(
                        (a - b.value).norm() <= b.tail_bound + 1e-9,
                        "{chi} {s} k={k}: {a} vs {}",
                        b.value
                    );
                }
            }
        }
    }

    #[test]
    fn tail_bound_majorises() {
        // Compare a short-cutoff tail with the difference to a long cutoff.
        let s = Complex64::new(1.5, 0.0);
        for k in [0u32, 2, 5] {
            let short = log_deriv_series(s, &zeta(), k, 1000).unwrap();
            let long = log_deriv_series(s, &zeta(), k, 1_000_000).unwrap();
            assert!((short.value - long.value).norm() <= short.tail_bound);
        }
    }

    #[test]
    fn trivial_zero_sums() {
        let s = Complex64::new(2.0, 0.0);
        let v = primitive_trivial_part(2.0, 0.0, &odd4()).unwrap();
        assert!((v - (PI * PI / 8.0 - 1.0)).abs() < 1e-10);
        assert!(v <= 0.5);
        let z = trivial_zero_power_sum(s, &zeta(), 2).unwrap();
        // Σ_{j≥1} 1/(2+2j)³ = (ζ(3) − 1)/8
        assert!(z.tail_bound <= 1e-10);
        assert!((z.value.re - (1.202_056_903_159_594 - 1.0) / 8.0).abs() <= z.tail_bound + 1e-14);
    }

    #[test]
    fn euler_factor_closed_form() {
        // χ mod 6 induced by the character mod 3: Euler factor at 2.
        let chi = enumerate_characters(6).unwrap()[1].clone();
        let prim = chi.primitive().unwrap();
        let (sigma, t) = (2.0, 1.3);
        let lp = 2f64.ln();
        let c = prim.value(2).arg() / lp;
        let direct: f64 = (-200_000i64..=200_000)
            .map(|m| {
                let g = c + TAU * m as f64 / lp;
                1.0 / (sigma * sigma + (t - g) * (t - g))
            })
            .sum();
        let closed = euler_factor_part(sigma, t, &chi, &prim);
        assert!((direct - closed).abs() < 1e-5);
        let full = trivial_zero_inverse_square_sum(sigma, t, &chi).unwrap();
        assert!((full - closed - primitive_trivial_part(sigma, t, &prim).unwrap()).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn trivial_sum_bounds(sigma in 1.0f64..20.0, t in -100.0f64..100.0, q in 1u64..40, pick in any::<prop::sample::Index>()) {
            let chars = enumerate_characters(q).unwrap();
            let chi = &chars[pick.index(chars.len())];
            let prim = chi.primitive().unwrap();
            let primitive_bound = 1.0 / (2.0 * sigma) + 1.0 / (sigma * sigma);
            prop_assert!(primitive_trivial_part(sigma, t, &prim).unwrap() <= primitive_bound + 1e-12);
            let full = trivial_zero_inverse_square_sum(sigma, t, chi).unwrap();
            let unconditional = primitive_bound + (1.0 / (2.0 * sigma) + 2.0 / (sigma * sigma * 2f64.ln())) * (q as f64).ln();
            prop_assert!(full <= unconditional + 1e-12);
        }
    }
}
