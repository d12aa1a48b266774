//! Gamma, digamma, Bernoulli numbers and the Hurwitz zeta function.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Euler–Maclaurin correction order used by [`hurwitz_zeta`].
pub const EM_ORDER: usize = 20;

const STIRLING_TERMS: usize = 10;
const SHIFT_TARGET: f64 = 15.0;

/// `b_j = B_{2j}/(2j)!` for `j = 1..=EM_ORDER`, index 0 unused.
fn bernoulli_scaled() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; EM_ORDER + 1];
        for (j, slot) in t.iter_mut().enumerate().skip(1) {
            let zeta = match j {
                1 => PI * PI / 6.0,
                2 => PI.powi(4) / 90.0,
                _ => {
                    let mut s = 0.0;
                    for n in (1..=2000).rev() {
                        s += (n as f64).powi(-2 * j as i32);
                    }
                    s
                }
            };
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * zeta / TAU.powi(2 * j as i32);
        }
        t
    })
}

/// The Bernoulli number `B_{2j}`, `1 ≤ j ≤ 20`.
pub fn bernoulli_even(j: usize) -> f64 {
    assert!((1..=EM_ORDER).contains(&j), "bernoulli index out of range");
    let fact: f64 = (1..=2 * j).map(|i| i as f64).product();
    bernoulli_scaled()[j] * fact
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `log Γ(z)` on the branch continuous in the right half plane and obtained
/// by the recurrence elsewhere. The real part is `log |Γ(z)|` everywhere.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Pole(format!("Gamma at {z}")));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TARGET {
        shift += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for j in 1..=STIRLING_TERMS {
        let b = bernoulli_even(j);
        series += b / ((2 * j) as f64 * (2 * j - 1) as f64) * pow;
        pow *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + 0.5 * TAU.ln() + series - shift)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// `Γ′/Γ(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at {z}")));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TARGET {
        shift += 1.0 / w;
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for j in 1..=STIRLING_TERMS {
        series += bernoulli_even(j) / (2 * j) as f64 * pow;
        pow *= inv2;
    }
    Ok(w.ln() - 0.5 * inv - series - shift)
}

/// `Re Γ′/Γ(s)` for `Re s > 1`.
pub fn digamma_real_part(s: Complex64) -> Result<f64> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("need Re s > 1, got {s}")));
    }
    Ok(digamma(s)?.re)
}

/// `(e^w − 1)/w`, accurate near 0.
pub fn expm1_over(w: Complex64) -> Complex64 {
    if w.norm() < 1e-2 {
        // Taylor to w⁵; the omitted term is below 2e-16 here.
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..=7 {
            term *= w / k as f64;
            sum += term;
        }
        sum
    } else {
        (w.exp() - 1.0) / w
    }
}

/// Euler–Maclaurin evaluation of `ζ(s, a) − 1/(s−1)`, returned with a bound
/// on the truncation error. Finite at `s = 1`.
pub(crate) fn hurwitz_regular(s: Complex64, a: f64) -> Result<(Complex64, f64)> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!(
            "Hurwitz parameter must lie in (0, 1], got {a}"
        )));
    }
    if !(s.re > -30.0) || !s.im.is_finite() {
        return Err(Error::Domain(format!("Hurwitz zeta evaluated at {s}")));
    }
    let n = 20f64.max((2.0 * s.im.abs()).ceil()) as u64;
    let mut head = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        head += (-s * (k as f64 + a).ln()).exp();
    }
    let x = n as f64 + a;
    let lx = x.ln();
    let x_s = (-s * lx).exp();
    let pole_part = -lx * expm1_over((1.0 - s) * lx);
    let b = bernoulli_scaled();
    let mut rising = s;
    // x^{-s-2j+1}
    let mut xpow = x_s * x;
    let inv_x2 = 1.0 / (x * x);
    let mut tail = Complex64::new(0.0, 0.0);
    for (j, bj) in b.iter().enumerate().skip(1) {
        xpow *= inv_x2;
        tail += *bj * rising * xpow;
        let jf = j as f64;
        rising *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf);
    }
    // `rising` is now (s)_{2M+1}; the remainder uses (s)_{2M}.
    let m = EM_ORDER as f64;
    let rising_2m = rising / (s + 2.0 * m);
    let sigma_eff = s.re + 2.0 * m - 1.0;
    let bound =
        4.0 * rising_2m.norm() / TAU.powi(2 * EM_ORDER as i32) * x.powf(-sigma_eff) / sigma_eff;
    Ok((head + pole_part + 0.5 * x_s + tail, bound))
}

/// `ζ(s, a)` for `a ∈ (0, 1]` with its Euler–Maclaurin truncation bound.
pub fn hurwitz_zeta_bounded(s: Complex64, a: f64) -> Result<(Complex64, f64)> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    let (r, bound) = hurwitz_regular(s, a)?;
    Ok((r + 1.0 / (s - 1.0), bound))
}

pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    Ok(hurwitz_zeta_bounded(s, a)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bernoulli_values() {
        assert!((bernoulli_even(1) - 1.0 / 6.0).abs() < 1e-16);
        assert!((bernoulli_even(2) + 1.0 / 30.0).abs() < 1e-16);
        assert!((bernoulli_even(3) - 1.0 / 42.0).abs() < 1e-16);
        assert!((bernoulli_even(6) + 691.0 / 2730.0).abs() < 1e-14);
        assert!((bernoulli_even(10) + 174611.0 / 330.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_values() {
        assert!((ln_gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt().ln()).abs() < 1e-14);
        for n in 1..20u32 {
            let f: f64 = (1..n).map(|i| i as f64).product();
            assert!((gamma(c(n as f64, 0.0)).unwrap().re / f - 1.0).abs() < 1e-13);
        }
        for z in [c(0.3, 0.7), c(-2.5, 1.0), c(0.1, -20.0), c(3.0, 40.0)] {
            let refl = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            let expect = PI / (PI * z).sin();
            assert!((refl / expect - 1.0).norm() < 1e-12, "{z}");
            let rec = ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap() - z.ln();
            assert!(rec.re.abs() < 1e-12);
            assert!(((rec.im / TAU).round() * TAU - rec.im).abs() < 1e-11);
        }
        assert!(matches!(ln_gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(ln_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn digamma_values() {
        assert!((digamma_real_part(c(2.0, 0.0)).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        assert!((digamma_real_part(c(1.5, 0.0)).unwrap() - 0.036_489_973_978_576_52).abs() < 1e-13);
        assert!((2.0 - EULER_GAMMA - 2.0 * 2f64.ln() - 0.0364899).abs() < 1e-7);
        let s = c(2.0, 3.0);
        let v = digamma_real_part(s).unwrap();
        assert!(v <= s.norm().ln() + 0.5);
        assert!((s.norm().ln() + 0.5 - 1.7825).abs() < 1e-3);
        assert!(digamma_real_part(c(1.0, 0.0)).is_err());
        for z in [c(0.3, 0.7), c(5.0, -12.0), c(-1.5, 0.2)] {
            let h = 1e-5;
            let fd = (ln_gamma(z + h).unwrap() - ln_gamma(z - h).unwrap()) / (2.0 * h);
            assert!((fd - digamma(z).unwrap()).norm() < 1e-8);
        }
    }

    #[test]
    fn digamma_bound_random_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let s = c(
                1.0 + rng.gen_range(1e-6..20.0),
                rng.gen_range(-1000.0..1000.0),
            );
            let v = digamma_real_part(s).unwrap();
            assert!(v <= s.norm().ln() + 1.0 / s.re, "{s}");
        }
    }

    #[test]
    fn hurwitz_values() {
        assert!((hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap() - PI * PI / 6.0).norm() < 1e-14);
        assert!((hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap() - PI * PI / 2.0).norm() < 1e-13);
        assert!(hurwitz_zeta(c(0.5, 14.134725), 1.0).unwrap().norm() < 1e-5);
        assert!((hurwitz_zeta(c(0.0, 0.0), 0.3).unwrap() - 0.2).norm() < 1e-13);
        assert!((hurwitz_zeta(c(-1.0, 0.0), 1.0).unwrap() + 1.0 / 12.0).norm() < 1e-13);
        assert!(
            (hurwitz_zeta(c(0.5, 0.0), 1.0).unwrap().re + 1.460_354_508_809_586_8).abs() < 1e-13
        );
        assert!(matches!(
            hurwitz_zeta(c(1.0, 0.0), 0.5),
            Err(Error::Pole(_))
        ));
        assert!(hurwitz_zeta(c(2.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn hurwitz_truncation_bound_in_window() {
        for sigma in [0.0, 0.5, 1.0, 2.0, 3.0] {
            for t in [0.0, 1.0, 14.0, 100.0, 999.0, -1000.0] {
                for a in [1e-3, 0.25, 1.0] {
                    let (_, bound) = hurwitz_regular(c(sigma, t), a).unwrap();
                    assert!(bound <= 1e-12, "bound {bound} at {sigma}+{t}i, a={a}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn hurwitz_duplication(sr in 0.0f64..3.0, t in -200.0f64..200.0, a in 0.01f64..1.0) {
            // ζ(s, a/2) + ζ(s, (a+1)/2) = 2^s ζ(s, a)
            let s = c(sr, t);
            prop_assume!((s - 1.0).norm() > 1e-3);
            let lhs = hurwitz_zeta(s, a / 2.0).unwrap() + hurwitz_zeta(s, (a + 1.0) / 2.0).unwrap();
            let rhs = (s * 2f64.ln()).exp() * hurwitz_zeta(s, a).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
        }
    }
}
