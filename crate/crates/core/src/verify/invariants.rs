//! Empirical constants of the convexity bound and of the elementary prime
//! and harmonic sums.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{CheckReport, Relation};
use super::zerosums::tag;
use crate::dirichlet::lfunc::l_times_pole;
use crate::dirichlet::sums::{harmonic_number, smoothed_harmonic_sum, von_mangoldt_sum};
use crate::dirichlet::{hurwitz_zeta, primitive_characters, DirichletCharacter, EULER_GAMMA};
use crate::error::Result;

pub const CONVEXITY_ETAS: [f64; 2] = [0.1, 0.5];
const SIGMA_STEPS: usize = 8;
const T_STEPS: usize = 10;

/// The smallest `C` with
/// `|L(s, χ)| ≤ C |(1+s)/(1−s)|^δ ζ(1+η) (q(3+|t|)/2π)^{(1+η−σ)/2}` on a
/// grid of `−η ≤ σ ≤ 1+η`, `|t| ≤ t_max`, for each primitive `χ` with
/// `q ≤ q_max` and each `η` in [`CONVEXITY_ETAS`].
pub fn rademacher_check(q_max: u64, t_max: f64, ceiling: f64) -> Result<Vec<CheckReport>> {
    let mut chars = Vec::new();
    for q in 1..=q_max {
        chars.extend(primitive_characters(q)?);
    }
    let per_char: Vec<Vec<CheckReport>> = chars
        .par_iter()
        .map(|chi| {
            CONVEXITY_ETAS
                .iter()
                .map(|&eta| rademacher_one(chi, eta, t_max, ceiling))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_char.into_iter().flatten().collect())
}

fn rademacher_one(
    chi: &DirichletCharacter,
    eta: f64,
    t_max: f64,
    ceiling: f64,
) -> Result<CheckReport> {
    let q = chi.modulus() as f64;
    let zeta_1_eta = hurwitz_zeta(Complex64::new(1.0 + eta, 0.0), 1.0)?.re;
    let mut worst = (0.0, 0.0, 0.0);
    for i in 0..=SIGMA_STEPS {
        let sigma = -eta + (1.0 + 2.0 * eta) * i as f64 / SIGMA_STEPS as f64;
        for j in 0..=2 * T_STEPS {
            let t = t_max * (j as f64 / T_STEPS as f64 - 1.0);
            let s = Complex64::new(sigma, t);
            // |(s−1)^δ L(s)| / |1+s|^δ = |L(s)| / |(1+s)/(1−s)|^δ
            let mut v = l_times_pole(s, chi)?.norm();
            if chi.is_principal() {
                v /= (1.0 + s).norm();
            }
            let bound = zeta_1_eta * (q * (3.0 + t.abs()) / TAU).powf((1.0 + eta - sigma) / 2.0);
            let c = v / bound;
            if c > worst.0 {
                worst = (c, sigma, t);
            }
        }
    }
    Ok(CheckReport::new(
        format!("rademacher/{}/eta={eta}", tag(chi)),
        worst.0,
        ceiling,
        Relation::Le,
        0.0,
    )
    .with("sigma", worst.1)
    .with("t", worst.2)
    .with("t_max", t_max)
    .with("grid", format!("{}x{}", SIGMA_STEPS + 1, 2 * T_STEPS + 1)))
}

/// `Σ_{n≤y} Λ(n)/n ≤ ratio·log y` at `y = 10², …, 10^{max_exp}`.
pub fn prime_sum_check(ratio: f64, max_exp: u32) -> Result<Vec<CheckReport>> {
    (2..=max_exp)
        .map(|e| {
            let y = 10f64.powi(e as i32);
            let v = von_mangoldt_sum(y)?;
            Ok(CheckReport::new(
                format!("prime_sum/y=1e{e}"),
                v,
                ratio * y.ln(),
                Relation::Le,
                0.0,
            )
            .with("ratio", v / y.ln()))
        })
        .collect()
}

/// `|Σ_{n≤x} (1/n)(1 − n/x) − (log x − 1 + γ)| ≤ C′ x^{−1/2}` at
/// `x = 10³, …, 10^{max_exp}`; the context records `C′` needed.
pub fn harmonic_check(c_prime: f64, max_exp: u32) -> Result<Vec<CheckReport>> {
    (3..=max_exp)
        .map(|e| {
            let x = 10f64.powi(e as i32);
            let v = smoothed_harmonic_sum(x, 1)?;
            let err = (v - (x.ln() - 1.0 + EULER_GAMMA)).abs();
            Ok(CheckReport::new(
                format!("harmonic/x=1e{e}"),
                err,
                c_prime / x.sqrt(),
                Relation::Le,
                0.0,
            )
            .with("required_constant", err * x.sqrt()))
        })
        .collect()
}

/// `V(z) ≥ 0.9 log z` at `z = 10³, …, 10^{max_exp}`.
pub fn harmonic_lower_bound_check(max_exp: u32) -> Result<Vec<CheckReport>> {
    (3..=max_exp)
        .map(|e| {
            let z = 10f64.powi(e as i32);
            Ok(CheckReport::new(
                format!("harmonic.lower/z=1e{e}"),
                harmonic_number(z)?,
                0.9 * z.ln(),
                Relation::Ge,
                0.0,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convexity_constant_is_small() {
        let r = rademacher_check(5, 20.0, 10.0).unwrap();
        assert_eq!(r.len(), 2 * (1 + 1 + 1 + 3));
        assert!(r.iter().all(|x| x.pass), "{r:#?}");
    }

    #[test]
    fn elementary_sums() {
        assert!(prime_sum_check(1.1, 6).unwrap().iter().all(|r| r.pass));
        let h = harmonic_check(1.0, 6).unwrap();
        assert!(h.iter().all(|r| r.pass), "{h:#?}");
        assert!(harmonic_lower_bound_check(6)
            .unwrap()
            .iter()
            .all(|r| r.pass));
    }
}
