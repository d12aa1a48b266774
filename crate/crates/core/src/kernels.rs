//! The compactly supported smoothing weight Ψ and the exponential kernel
//! `E_k(u) = u^k e^{-u} / k!`.
//!
//! Ψ is the density, in the variable `log x`, of a sum of `2n` independent
//! uniform variables on `[-1/A, 1/A]` with `A = T·√(2n)`. Its Mellin
//! transform is `[sinh(s/A)/(s/A)]^{2n}`. Values are computed from the
//! cardinal B-spline recurrence, which agrees with the Irwin–Hall closed form
//! but does not suffer its cancellation at larger orders.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    degree_n: u32,
    height_t: f64,
    scale_a: f64,
}

impl WeightParams {
    pub fn new(degree_n: u32, height_t: f64) -> Result<Self> {
        if degree_n == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        if !(height_t >= 1.0) || !height_t.is_finite() {
            return Err(Error::Domain(format!(
                "height must be at least 1, got {height_t}"
            )));
        }
        Ok(Self {
            degree_n,
            height_t,
            scale_a: height_t * (2.0 * degree_n as f64).sqrt(),
        })
    }

    pub fn degree_n(&self) -> u32 {
        self.degree_n
    }

    pub fn height_t(&self) -> f64 {
        self.height_t
    }

    pub fn scale_a(&self) -> f64 {
        self.scale_a
    }

    /// Half-width `2n/A` of the support in `log x`.
    pub fn log_half_width(&self) -> f64 {
        2.0 * self.degree_n as f64 / self.scale_a
    }

    /// Support `[e^{-2n/A}, e^{2n/A}]`.
    pub fn support(&self) -> (f64, f64) {
        let w = self.log_half_width();
        ((-w).exp(), w.exp())
    }

    /// Knots of the spline in `log x`: `(2/A)(j - n)` for `j = 0..=2n`.
    pub fn log_knots(&self) -> Vec<f64> {
        let n = self.degree_n as f64;
        (0..=2 * self.degree_n)
            .map(|j| 2.0 / self.scale_a * (j as f64 - n))
            .collect()
    }
}

/// Cardinal B-spline of order `m` (support `[0, m]`), i.e. the Irwin–Hall
/// density of a sum of `m` uniforms on `[0, 1]`.
pub fn cardinal_bspline(m: u32, t: f64) -> f64 {
    let m = m as usize;
    if !(t > 0.0 && t < m as f64) {
        return 0.0;
    }
    let t = t.min(m as f64 - t);
    let mut b: Vec<f64> = (0..=m)
        .map(|j| {
            let x = t - j as f64;
            if (0.0..1.0).contains(&x) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for k in 2..=m {
        let kf = k as f64;
        for j in 0..=(m - k) {
            let x = t - j as f64;
            b[j] = (x * b[j] + (kf - x) * b[j + 1]) / (kf - 1.0);
        }
    }
    b[0].max(0.0)
}

/// Ψ as a function of `u = log x`.
pub fn psi_log_density(u: f64, p: &WeightParams) -> f64 {
    let m = 2 * p.degree_n;
    let a = p.scale_a;
    let t = 0.5 * a * u + p.degree_n as f64;
    0.5 * a * cardinal_bspline(m, t)
}

/// Ψ(x), zero outside `[e^{-2n/A}, e^{2n/A}]`, bounded by `A/2`.
pub fn psi_weight(x: f64, p: &WeightParams) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "weight argument must be positive, got {x}"
        )));
    }
    Ok(psi_log_density(x.ln(), p))
}

/// `sinh(w)/w`, with a Taylor branch for `|w| < 1e-3`.
fn sinhc(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        let w2 = w * w;
        Complex64::new(1.0, 0.0)
            + w2 / 6.0
                * (Complex64::new(1.0, 0.0) + w2 / 20.0 * (Complex64::new(1.0, 0.0) + w2 / 42.0))
    } else {
        w.sinh() / w
    }
}

/// `Ψ̂(s) = [sinh(s/A)/(s/A)]^{2n}`.
pub fn psi_mellin(s: Complex64, p: &WeightParams) -> Complex64 {
    sinhc(s / p.scale_a).powu(2 * p.degree_n)
}

/// Explicit constant for the uniform bound on `|σ| ≤ A/√(2n)`:
/// `(sinh a/a)^{2n}` at `a = 1/√(2n)`, which never exceeds `e^{1/6}`.
pub fn strip_constant(p: &WeightParams) -> f64 {
    let a = 1.0 / (2.0 * p.degree_n as f64).sqrt();
    (a.sinh() / a).powi(2 * p.degree_n as i32)
}

/// Outcome of the three Mellin-transform bounds at one point. A bound whose
/// hypothesis does not hold at `s` is reported as satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MellinBoundChecks {
    /// `|Ψ̂(s)| ≤ (A/|s|)^{2n} e^{|σ|/A}`.
    pub decay: bool,
    /// `|Ψ̂(s)| ≤ (1 + |s|²/(5A²))^{2n}` for `|s| ≤ A`.
    pub near_origin: bool,
    /// `|Ψ̂(s)| ≤ strip_constant` for `|σ| ≤ A/√(2n)`.
    pub strip: bool,
}

pub fn psi_mellin_bounds_check(s: Complex64, p: &WeightParams) -> MellinBoundChecks {
    let a = p.scale_a;
    let two_n = 2 * p.degree_n as i32;
    let v = psi_mellin(s, p).norm();
    let slack = 1.0 + 1e-12;
    let r = s.norm();
    let decay = if r == 0.0 {
        true
    } else {
        v <= (a / r).powi(two_n) * (s.re.abs() / a).exp() * slack
    };
    let near_origin = r > a || v <= (1.0 + r * r / (5.0 * a * a)).powi(two_n) * slack;
    let strip = s.re.abs() > p.height_t || v <= strip_constant(p) * slack;
    MellinBoundChecks {
        decay,
        near_origin,
        strip,
    }
}

/// `log k!`: exact accumulation below 32, Stirling series with four
/// correction terms above (absolute error below 1e-15 there).
pub fn ln_factorial(k: u64) -> f64 {
    if k < 32 {
        return (2..=k).map(|j| (j as f64).ln()).sum();
    }
    let x = k as f64;
    x * x.ln() - x + 0.5 * (std::f64::consts::TAU * x).ln() + stirling_tail(x)
}

/// Stirling correction `log k! - (k log k - k + ½ log 2πk)` for `k ≥ 32`.
fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// `log E_k(u)`. For large `k` this is arranged as
/// `k·log1p(d/k) - d - ½ log 2πk - tail` with `d = u - k`, which avoids
/// cancelling terms of size `k log k`.
pub fn ln_e_kernel(u: f64, k: u64) -> f64 {
    if u == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if k < 32 {
        return k as f64 * u.ln() - u - ln_factorial(k);
    }
    let x = k as f64;
    let d = u - x;
    x * (d / x).ln_1p() - d - 0.5 * (std::f64::consts::TAU * x).ln() - stirling_tail(x)
}

/// `E_k(u) = u^k e^{-u} / k!` in log space.
pub fn e_kernel(u: f64, k: u64) -> f64 {
    ln_e_kernel(u, k).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelBound {
    Holds,
    Fails,
    /// `u` lies in neither regime of the two-sided estimate.
    NotApplicable,
}

/// Lower regime edge `k / (e(1+η))`.
pub fn e_kernel_lower_edge(k: u64, eta: f64) -> f64 {
    k as f64 / (std::f64::consts::E * (1.0 + eta))
}

/// Upper regime edge `(2/(1-δ))·log(2(1+η)/(1-δ))·k`.
pub fn e_kernel_upper_edge(k: u64, eta: f64, delta: f64) -> f64 {
    2.0 / (1.0 - delta) * (2.0 * (1.0 + eta) / (1.0 - delta)).ln() * k as f64
}

/// Checks `E_k(u) ≤ (1+η)^{-k}` below the lower edge and
/// `E_k(u) ≤ (1+η)^{-k} e^{-δu}` above the upper edge, in log space.
pub fn e_kernel_bound_check(k: u64, eta: f64, delta: f64, u: f64) -> Result<KernelBound> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if !(eta > 0.0) || !(delta > 0.0 && delta < 1.0) || !(u >= 0.0) {
        return Err(Error::Domain(format!(
            "bad parameters eta={eta} delta={delta} u={u}"
        )));
    }
    let log_e = ln_e_kernel(u, k);
    let base = -(k as f64) * eta.ln_1p();
    let tol = 1e-12 * base.abs().max(1.0);
    let verdict = |ok: bool| {
        if ok {
            KernelBound::Holds
        } else {
            KernelBound::Fails
        }
    };
    if u <= e_kernel_lower_edge(k, eta) {
        Ok(verdict(log_e <= base + tol))
    } else if u >= e_kernel_upper_edge(k, eta, delta) {
        Ok(verdict(log_e <= base - delta * u + tol))
    } else {
        Ok(KernelBound::NotApplicable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{adaptive_simpson, GaussLegendre};
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    /// Irwin–Hall closed form, used as an oracle for the recurrence.
    fn irwin_hall_closed(m: u32, t: f64) -> f64 {
        if t <= 0.0 || t >= m as f64 {
            return 0.0;
        }
        let t = t.min(m as f64 - t);
        let mut acc = 0.0;
        let mut binom = 1.0;
        for j in 0..=(t.floor() as u32) {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * (t - j as f64).powi(m as i32 - 1);
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        acc / (1..m).map(|i| i as f64).product::<f64>()
    }

    #[test]
    fn bspline_matches_closed_form() {
        for m in 1..=12u32 {
            for i in 0..=200 {
                let t = m as f64 * i as f64 / 200.0;
                let a = cardinal_bspline(m, t);
                let b = irwin_hall_closed(m, t);
                assert!((a - b).abs() < 1e-12, "m={m} t={t} {a} {b}");
            }
        }
    }

    #[test]
    fn weight_examples() {
        let p = WeightParams::new(1, 1.0).unwrap();
        assert!((p.scale_a() - SQRT_2).abs() < 1e-15);
        let right = (2.0 / p.scale_a()).exp();
        assert_eq!(psi_weight(right, &p).unwrap(), 0.0);
        assert!((psi_weight(1.0, &p).unwrap() - SQRT_2 / 2.0).abs() < 1e-15);
        assert!(psi_weight(0.0, &p).is_err());
        assert!(psi_weight(-1.0, &p).is_err());
    }

    /// Inverse Mellin transform along the imaginary axis.
    fn psi_inverse_mellin(x: f64, p: &WeightParams) -> f64 {
        let a = p.scale_a();
        let lx = x.ln();
        let f = |t: f64| {
            (psi_mellin(Complex64::new(0.0, t), p) * Complex64::new(0.0, -t * lx).exp()).re
        };
        // Integrate between the zeros of sin(t/A) so each panel is smooth.
        let mut acc = 0.0;
        let panels = 4000;
        let gl = GaussLegendre::new(24);
        for j in 0..panels {
            let t0 = std::f64::consts::PI * a * j as f64;
            acc += gl.integrate(f, t0, t0 + std::f64::consts::PI * a);
        }
        acc / std::f64::consts::PI
    }

    #[test]
    fn weight_matches_inverse_mellin() {
        let p = WeightParams::new(2, 1.0).unwrap();
        let direct = psi_weight(1.0, &p).unwrap();
        assert!((direct - 2.0 / 3.0).abs() < 1e-14);
        let oracle = psi_inverse_mellin(1.0, &p);
        assert!((direct - oracle).abs() < 1e-8, "{direct} vs {oracle}");
        let x = 1.3;
        let oracle = psi_inverse_mellin(x, &p);
        assert!((psi_weight(x, &p).unwrap() - oracle).abs() < 1e-8);
    }

    #[test]
    fn mellin_examples() {
        let p = WeightParams::new(1, 1.0).unwrap();
        let a = p.scale_a();
        assert_eq!(
            psi_mellin(Complex64::new(0.0, 0.0), &p),
            Complex64::new(1.0, 0.0)
        );
        let v = psi_mellin(Complex64::new(a, 0.0), &p);
        assert!((v.re - 1f64.sinh().powi(2)).abs() < 1e-13);
        let v = psi_mellin(Complex64::new(0.0, a), &p);
        assert!((v.re - 1f64.sin().powi(2)).abs() < 1e-13 && v.im.abs() < 1e-15);
        // Taylor branch agrees with the direct formula across the switch.
        let near = psi_mellin(Complex64::new(0.999e-3 * a, 0.0), &p);
        let far = (Complex64::new(1.001e-3, 0.0).sinh() / 1.001e-3).powu(2);
        assert!((near - far).norm() < 1e-8);
    }

    #[test]
    fn mellin_bound_examples() {
        let p = WeightParams::new(1, 1.0).unwrap();
        let a = p.scale_a();
        let zero = psi_mellin_bounds_check(Complex64::new(0.0, 0.0), &p);
        assert!(zero.decay && zero.near_origin && zero.strip);
        let far = psi_mellin_bounds_check(Complex64::new(2.0 * a, 0.0), &p);
        assert!(!far.decay);
        let half = psi_mellin_bounds_check(Complex64::new(0.5 * a, 0.0), &p);
        assert!(half.near_origin);
        let v = psi_mellin(Complex64::new(0.5 * a, 0.0), &p).re;
        assert!((v - (0.5f64.sinh() / 0.5).powi(2)).abs() < 1e-13);
        assert!(strip_constant(&p) <= (1.0f64 / 6.0).exp());
    }

    #[test]
    fn mellin_bounds_hold_off_the_real_axis() {
        for n in [1u32, 2, 3] {
            let p = WeightParams::new(n, 2.0).unwrap();
            let a = p.scale_a();
            for i in 0..60 {
                for j in -20..=20 {
                    let s = Complex64::new(j as f64 * p.height_t() / 20.0, i as f64 * a / 6.0);
                    let c = psi_mellin_bounds_check(s, &p);
                    assert!(c.near_origin && c.strip, "n={n} s={s}");
                }
            }
        }
    }

    #[test]
    fn weight_normalisation_and_numeric_mellin() {
        for (n, t) in [(1u32, 1.0), (2, 1.0), (2, 3.0), (3, 1.5)] {
            let p = WeightParams::new(n, t).unwrap();
            let knots = p.log_knots();
            let gl = GaussLegendre::new(16);
            // ∫ Ψ(x) x^{s-1} dx = ∫ g(u) e^{su} du, piecewise polynomial times exponential.
            let mellin_numeric = |s: Complex64| {
                let mut re = 0.0;
                let mut im = 0.0;
                for w in knots.windows(2) {
                    re += gl.integrate(|u| psi_log_density(u, &p) * (s * u).exp().re, w[0], w[1]);
                    im += gl.integrate(|u| psi_log_density(u, &p) * (s * u).exp().im, w[0], w[1]);
                }
                Complex64::new(re, im)
            };
            let mass = mellin_numeric(Complex64::new(0.0, 0.0));
            assert!((mass.re - 1.0).abs() < 1e-12 && mass.im.abs() < 1e-15);
            for sigma in [0.0, 1.0, -1.0] {
                for k in 0..100 {
                    let s = Complex64::new(sigma, -20.0 + 0.4 * k as f64);
                    let d = mellin_numeric(s) - psi_mellin(s, &p);
                    assert!(d.norm() < 1e-8, "n={n} s={s} diff={d}");
                }
            }
        }
    }

    #[test]
    fn weight_bounded_on_grid() {
        for (n, t) in [(1u32, 1.0), (2, 1.0), (3, 4.0)] {
            let p = WeightParams::new(n, t).unwrap();
            let (lo, hi) = p.support();
            let cap = p.scale_a() / 2.0;
            for i in 0..10_000 {
                let x = lo + (hi - lo) * i as f64 / 9_999.0;
                let v = psi_weight(x, &p).unwrap();
                assert!((0.0..=cap * (1.0 + 1e-15)).contains(&v));
            }
            for x in [lo * 0.999, hi * 1.001, 1e-9, 1e9] {
                assert_eq!(psi_weight(x, &p).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn e_kernel_examples() {
        assert_eq!(e_kernel(0.0, 0), 1.0);
        assert_eq!(e_kernel(0.0, 3), 0.0);
        assert!((e_kernel(1.0, 1) - (-1f64).exp()).abs() < 1e-16);
        let exact = 5f64.powi(10) / 3_628_800.0 * (-5f64).exp();
        assert!((e_kernel(5.0, 10) - exact).abs() < 1e-15);
        assert!((e_kernel(5.0, 10) - 0.0181328).abs() < 1e-7);
    }

    #[test]
    fn ln_factorial_accuracy() {
        let mut acc = 0.0f64;
        for k in 1..=200u64 {
            acc += (k as f64).ln();
            assert!(
                (ln_factorial(k) - acc).abs() < 1e-12 * acc.max(1.0),
                "k={k}"
            );
        }
        assert!(ln_factorial(1_000_000).is_finite());
    }

    #[test]
    fn kernel_bound_examples() {
        assert_eq!(
            e_kernel_bound_check(10, 3.0, 0.01, 0.5).unwrap(),
            KernelBound::Holds
        );
        assert_eq!(
            e_kernel_bound_check(1, 3.0, 0.01, 0.0).unwrap(),
            KernelBound::Holds
        );
        assert_eq!(
            e_kernel_bound_check(5, 3.0, 0.01, 25.0).unwrap(),
            KernelBound::Holds
        );
        assert_eq!(
            e_kernel_bound_check(5, 3.0, 0.01, 5.0).unwrap(),
            KernelBound::NotApplicable
        );
        assert!(e_kernel_bound_check(0, 3.0, 0.01, 5.0).is_err());
        assert!((e_kernel_upper_edge(1, 3.0, 0.01) - 4.2212).abs() < 1e-4);
    }

    #[test]
    fn kernel_bounds_on_full_grid() {
        for k in 1..=200u64 {
            for i in 0..1000 {
                let u = 1000.0 * i as f64 / 999.0;
                let r = e_kernel_bound_check(k, 3.0, 0.01, u).unwrap();
                assert_ne!(r, KernelBound::Fails, "k={k} u={u}");
            }
        }
    }

    #[test]
    fn kernel_partial_sums() {
        for i in 0..200 {
            let u = 0.37 * i as f64 * i as f64 / 10.0;
            let kmax = u.ceil() as u64 + (60.0 * (u + 1.0).sqrt()).ceil() as u64;
            let mut acc = crate::arith::NeumaierSum::new();
            for k in 0..=kmax {
                acc.add(e_kernel(u, k));
                assert!(acc.value() <= 1.0 + 1e-12);
            }
            assert!(
                (acc.value() - 1.0).abs() <= 1e-10,
                "u={u} sum={}",
                acc.value()
            );
        }
    }

    proptest! {
        #[test]
        fn weight_in_range(n in 1u32..=4, t in 1.0f64..20.0, x in 0.01f64..100.0) {
            let p = WeightParams::new(n, t).unwrap();
            let v = psi_weight(x, &p).unwrap();
            prop_assert!(v >= 0.0 && v <= p.scale_a() / 2.0 * (1.0 + 1e-15));
            let (lo, hi) = p.support();
            if x < lo || x > hi {
                prop_assert_eq!(v, 0.0);
            }
        }

        #[test]
        fn weight_symmetric_in_log(n in 1u32..=4, t in 1.0f64..10.0, u in 0.0f64..3.0) {
            let p = WeightParams::new(n, t).unwrap();
            let a = psi_log_density(u, &p);
            let b = psi_log_density(-u, &p);
            prop_assert!((a - b).abs() <= 1e-13 * a.max(1.0));
        }

        #[test]
        fn simpson_agrees_on_weight_mass(n in 1u32..=3, t in 1.0f64..5.0) {
            let p = WeightParams::new(n, t).unwrap();
            let w = p.log_half_width();
            let v = adaptive_simpson(|u| psi_log_density(u, &p), -w, w, 1e-10, 1e-14);
            prop_assert!((v - 1.0).abs() < 1e-8);
        }
    }
}
