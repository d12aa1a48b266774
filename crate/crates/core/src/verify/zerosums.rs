//! Checks that combine computed zeros with analytic evaluations: the disc
//! counts, the explicit formula and its derivatives, the zero sums behind
//! the repulsion estimate, and zero density.

use std::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{CheckReport, Relation};
use crate::constants::{evaluate_density_bound, zero_circle_bound, CircleKind, FieldParams};
use crate::dirichlet::{
    count_zeros_circle, digamma, enumerate_characters, log_deriv_analytic, log_deriv_series,
    trivial_zero_inverse_square_sum, trivial_zero_power_sum, DirichletCharacter, ZeroBank, ZeroSet,
};
use crate::error::{Error, Result};
use crate::quad::integrate_to_infinity;

/// Ordinates at which the zero-sum checks are evaluated.
pub const SUM_HEIGHTS: [f64; 3] = [0.0, 5.0, 20.0];
/// Convexity-disc parameters sampled by [`circle_lemma_check`].
pub const CONVEXITY_EPSILONS: [f64; 2] = [0.05, 0.001];
/// Cutoff of the Dirichlet series reported next to the analytic value.
pub const SERIES_CUTOFF: u64 = 1_000_000;

pub(crate) fn tag(chi: &DirichletCharacter) -> String {
    format!("q{}[{}]", chi.modulus(), chi.label())
}

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_primitive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{chi} is not primitive")))
    }
}

/// Expected number of zeros per unit height near ordinate `γ` (one sign).
fn zero_density(q: u64, gamma: f64) -> f64 {
    (q as f64 * (gamma.abs() + 3.0) / TAU).ln() / TAU
}

/// `∫_{|γ|>T} f(β=½, γ)·density dγ` over both signs of `γ`.
fn zero_tail(q: u64, t: f64, f: impl Fn(Complex64) -> f64) -> f64 {
    integrate_to_infinity(
        |g| zero_density(q, g) * (f(Complex64::new(0.5, g)) + f(Complex64::new(0.5, -g))),
        t,
        1e-8,
        1e-14,
    )
}

fn zeros_to<'a>(bank: &'a ZeroBank, chi: &DirichletCharacter, t: f64) -> Result<ZeroSetView<'a>> {
    let set = bank.zeros_of(chi)?;
    // Fails when the data does not reach height t.
    let _ = set.up_to(t)?;
    Ok(ZeroSetView { set, t })
}

struct ZeroSetView<'a> {
    set: &'a ZeroSet,
    t: f64,
}

impl ZeroSetView<'_> {
    fn sum<T: std::iter::Sum<T>>(&self, f: impl Fn(Complex64) -> T) -> T {
        self.set
            .zeros
            .iter()
            .filter(|z| z.gamma.abs() <= self.t)
            .flat_map(|z| std::iter::repeat(z.rho()).take(z.multiplicity as usize))
            .map(f)
            .sum()
    }

    fn len(&self) -> usize {
        self.set
            .zeros
            .iter()
            .filter(|z| z.gamma.abs() <= self.t)
            .count()
    }
}

/// Sampled disc counts against both disc bounds, one report per character
/// and bound: the sample with the smallest margin.
pub fn circle_lemma_check(
    bank: &ZeroBank,
    q_max: u64,
    t: f64,
    samples: usize,
    implied_nk_constant: f64,
    seed: u64,
) -> Result<Vec<CheckReport>> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let mut sets = Vec::new();
    for q in 1..=q_max {
        for z in bank.primitive(q)? {
            if z.complete_to_height < t + 1.0 {
                return Err(Error::Dependency(format!(
                    "zeros of {} known to height {}, the disc samples need {}",
                    z.character,
                    z.complete_to_height,
                    t + 1.0
                )));
            }
            sets.push(z);
        }
    }
    let per_set: Vec<Vec<CheckReport>> = sets
        .par_iter()
        .enumerate()
        .map(|(i, z)| {
            circle_samples(
                z,
                t,
                samples,
                implied_nk_constant,
                seed.wrapping_add(i as u64),
            )
        })
        .collect::<Result<_>>()?;
    Ok(per_set.into_iter().flatten().collect())
}

fn circle_samples(
    z: &ZeroSet,
    t: f64,
    samples: usize,
    implied: f64,
    seed: u64,
) -> Result<Vec<CheckReport>> {
    let chi = &z.character;
    let q = chi.modulus();
    let p = FieldParams::rational(q as f64, t.max(1.0))?.with_implied(implied)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kinds: Vec<(String, CircleKind, f64)> =
        vec![("classical".into(), CircleKind::Classical, 1.0)];
    for eps in CONVEXITY_EPSILONS {
        kinds.push((format!("convexity.eps={eps}"), CircleKind::Convexity, eps));
    }
    let mut out = Vec::new();
    for (label, kind, eps) in kinds {
        let mut worst: Option<(f64, f64, f64, f64, f64, f64)> = None;
        for _ in 0..samples {
            let sigma = 1.0 + rng.gen::<f64>().max(1e-12);
            let height = rng.gen_range(-t..=t);
            let r = match kind {
                CircleKind::Classical => 1.0 - rng.gen::<f64>(),
                CircleKind::Convexity => eps * rng.gen::<f64>().max(1e-12),
            };
            let center = Complex64::new(sigma, height);
            let lhs = count_zeros_circle(z, r, center)? as f64;
            let rhs = zero_circle_bound(r, &p, q as f64, height, chi.is_principal(), kind, eps)?;
            if worst.map_or(true, |w| rhs - lhs < w.1 - w.0) {
                worst = Some((lhs, rhs, r, sigma, height, rhs - lhs));
            }
        }
        let (lhs, rhs, r, sigma, height, _) = worst.expect("at least one sample");
        out.push(
            CheckReport::new(
                format!("circle.{label}/{}", tag(chi)),
                lhs,
                rhs,
                Relation::Le,
                0.0,
            )
            .with("samples", samples)
            .with("r", r)
            .with("sigma", sigma)
            .with("t", height)
            .with("implied_nk_constant", implied),
        );
    }
    Ok(out)
}

/// `Re γ′/γ(s)` for `γ(s) = π^{-(s+b)/2} Γ((s+b)/2)`.
fn gamma_log_deriv_re(s: Complex64, chi: &DirichletCharacter) -> Result<f64> {
    let (_, b) = chi.gamma_exponents();
    Ok(-0.5 * PI.ln() + 0.5 * digamma((s + b as f64) / 2.0)?.re)
}

/// Both sides of the explicit formula for `−Re L′/L(s, χ)`, the zero sum
/// running over `|γ| ≤ T_zeros` plus a density estimate of the rest.
pub fn explicit_formula_residual(
    bank: &ZeroBank,
    chi: &DirichletCharacter,
    s: Complex64,
    t_zeros: f64,
) -> Result<CheckReport> {
    explicit_formula_residual_tol(bank, chi, s, t_zeros, 0.05)
}

pub fn explicit_formula_residual_tol(
    bank: &ZeroBank,
    chi: &DirichletCharacter,
    s: Complex64,
    t_zeros: f64,
    tolerance: f64,
) -> Result<CheckReport> {
    require_primitive(chi)?;
    if !(s.re > 1.0 && s.re <= 3.0) {
        return Err(Error::Domain(format!("need 1 < Re s ≤ 3, got {s}")));
    }
    let zeros = zeros_to(bank, chi, t_zeros)?;
    let q = chi.modulus();
    let lhs = log_deriv_analytic(s, chi, 0)?.re;
    let zero_sum: f64 = zeros.sum(|rho| (1.0 / (s - rho)).re);
    let tail = zero_tail(q, t_zeros, |rho| (1.0 / (s - rho)).re);
    let delta = chi.delta() as f64;
    let polar = delta * (1.0 / (s - 1.0) + 1.0 / s).re;
    let gamma_part = gamma_log_deriv_re(s, chi)?;
    let rhs = 0.5 * (q as f64).ln() + polar - zero_sum - tail + gamma_part;
    Ok(CheckReport::residual(
        format!("explicit_formula/{}/s={s}", tag(chi)),
        lhs - rhs,
        tolerance,
    )
    .with("minus_re_log_deriv", lhs)
    .with("formula_value", rhs)
    .with("zero_sum", zero_sum)
    .with("zeros_used", zeros.len())
    .with("t_zeros", t_zeros)
    .with("tail_estimate", tail)
    .with(
        "tail_note",
        "zeros beyond t_zeros estimated from the zero density on the critical line, not certified",
    ))
}

/// `(−1)^{k+1}/k!·(L′/L)^{(k)}(s)` against
/// `δ/(s−1)^{k+1} − Σ_ρ (s−ρ)^{−k−1} − Σ_ω (s−ω)^{−k−1}`, the nontrivial
/// sum running over `|γ| ≤ T_zeros` plus a density estimate of the rest.
pub fn hadamard_derivative_check(
    bank: &ZeroBank,
    chi: &DirichletCharacter,
    k: u32,
    s: Complex64,
    t_zeros: f64,
    tolerance: f64,
) -> Result<CheckReport> {
    require_primitive(chi)?;
    if k < 2 {
        return Err(Error::Domain(format!("the zero sum needs k ≥ 2, got {k}")));
    }
    if !(s.re > 1.0 && s.re <= 2.0) {
        return Err(Error::Domain(format!("need 1 < Re s ≤ 2, got {s}")));
    }
    let zeros = zeros_to(bank, chi, t_zeros)?;
    let m = (k + 1) as i32;
    let lhs = log_deriv_analytic(s, chi, k)?;
    let nontrivial: Complex64 = zeros.sum(|rho| 1.0 / (s - rho).powi(m));
    let trivial = trivial_zero_power_sum(s, chi, k)?;
    let delta = chi.delta() as f64;
    let q = chi.modulus();
    let tail_estimate = Complex64::new(
        zero_tail(q, t_zeros, |rho| (1.0 / (s - rho).powi(m)).re),
        zero_tail(q, t_zeros, |rho| (1.0 / (s - rho).powi(m)).im),
    );
    let rhs = delta / (s - 1.0).powi(m) - nontrivial - tail_estimate - trivial.value;
    let tail = zero_tail(q, t_zeros, |rho| (s - rho).norm().powi(-m));
    let series = log_deriv_series(s, chi, k, SERIES_CUTOFF)?;
    Ok(CheckReport::residual(
        format!("hadamard.k={k}/{}/s={s}", tag(chi)),
        (lhs - rhs).norm(),
        tolerance,
    )
    .with("analytic_re", lhs.re)
    .with("analytic_im", lhs.im)
    .with("zero_side_re", rhs.re)
    .with("zero_side_im", rhs.im)
    .with("zeros_used", zeros.len())
    .with("t_zeros", t_zeros)
    .with("nontrivial_tail_estimate_re", tail_estimate.re)
    .with("nontrivial_tail_estimate_im", tail_estimate.im)
    .with("nontrivial_tail_abs_bound", tail)
    .with(
        "tail_note",
        "zeros beyond t_zeros estimated from the zero density on the critical line, not certified",
    )
    .with("trivial_tail_bound", trivial.tail_bound)
    .with("series_cutoff", SERIES_CUTOFF)
    .with("series_difference", (series.value - lhs).norm())
    .with("series_tail_bound", series.tail_bound))
}

/// `Σ 1/|s − ρ|²` over the recorded zeros with `|γ| ≤ T`.
fn inverse_square_sum(
    bank: &ZeroBank,
    chi: &DirichletCharacter,
    s: Complex64,
    t_zeros: f64,
) -> Result<f64> {
    Ok(zeros_to(bank, chi, t_zeros)?.sum(|rho| 1.0 / (s - rho).norm_sqr()))
}

/// The trivial-zero sums against both branches of their bound, and the
/// partial four-sum of nontrivial zeros against its bound at `σ = α + 1`.
///
/// Reports keep the worst case over characters and [`SUM_HEIGHTS`] for each
/// modulus and `σ`.
pub fn repulsion_sums_check(
    bank: &ZeroBank,
    q_max: u64,
    sigma_grid: &[f64],
    t_zeros: f64,
) -> Result<Vec<CheckReport>> {
    if let Some(&s) = sigma_grid.iter().find(|&&s| !(s >= 2.0)) {
        return Err(Error::Domain(format!(
            "sigma grid values must be at least 2, got {s}"
        )));
    }
    let zeta = DirichletCharacter::principal(1)?;
    let mut out = Vec::new();
    for q in 1..=q_max {
        let chars = enumerate_characters(q)?;
        let psis: Vec<&DirichletCharacter> = chars.iter().filter(|c| c.is_real()).collect();
        for &sigma in sigma_grid {
            out.extend(trivial_sum_reports(&chars, q, sigma)?);

            let alpha = sigma - 1.0;
            let mut worst: Option<(f64, f64, String, String, f64)> = None;
            let zeta_part = inverse_square_sum(bank, &zeta, Complex64::new(sigma, 0.0), t_zeros)?;
            for psi in &psis {
                let psi_part = inverse_square_sum(bank, psi, Complex64::new(sigma, 0.0), t_zeros)?;
                let d_psi = psi.conductor() as f64;
                for chi in &chars {
                    let prod = chi.mul(psi)?;
                    for &t in &SUM_HEIGHTS {
                        let s = Complex64::new(sigma, t);
                        let lhs = zeta_part
                            + psi_part
                            + inverse_square_sum(bank, chi, s, t_zeros)?
                            + inverse_square_sum(bank, &prod, s, t_zeros)?;
                        let rhs = four_sum_bound(alpha, q as f64, d_psi, t);
                        if worst.as_ref().map_or(true, |w| rhs - lhs < w.1 - w.0) {
                            worst = Some((lhs, rhs, psi.label(), chi.label(), t));
                        }
                    }
                }
            }
            let (lhs, rhs, psi, chi, t) = worst.expect("the principal character is real");
            out.push(
                CheckReport::new(
                    format!("repulsion.four_sum/q{q}/sigma={sigma}"),
                    lhs,
                    rhs,
                    Relation::Le,
                    0.0,
                )
                .with("psi", psi)
                .with("chi", chi)
                .with("t", t)
                .with("t_zeros", t_zeros)
                .with(
                    "note",
                    "partial sums over |γ| ≤ t_zeros; every term is positive",
                ),
            );
        }
    }
    Ok(out)
}

/// `(1/α)[½ log(Nq² D_ψ) + log(α+2) + 2/(α+1) − 2 log π + log(α+2+|t|) + 4/α + 4/(α+1)]` for `K = ℚ`.
pub fn four_sum_bound(alpha: f64, q: f64, d_psi: f64, t: f64) -> f64 {
    let inner = 0.5 * (q * q * d_psi).ln() + (alpha + 2.0).ln() + 2.0 / (alpha + 1.0)
        - 2.0 * PI.ln()
        + (alpha + 2.0 + t.abs()).ln()
        + 4.0 / alpha
        + 4.0 / (alpha + 1.0);
    inner / alpha
}

/// `1/(2σ) + 1/σ²`, the primitive branch for `n_K = 1`.
pub fn trivial_sum_bound_primitive(sigma: f64) -> f64 {
    1.0 / (2.0 * sigma) + 1.0 / (sigma * sigma)
}

/// The primitive branch plus `(1/(2σ) + 2/(σ² log 2))·log q`.
pub fn trivial_sum_bound_unconditional(sigma: f64, q: f64) -> f64 {
    trivial_sum_bound_primitive(sigma)
        + (1.0 / (2.0 * sigma) + 2.0 / (sigma * sigma * LN_2)) * q.ln()
}

fn trivial_sum_reports(
    chars: &[DirichletCharacter],
    q: u64,
    sigma: f64,
) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for primitive_branch in [true, false] {
        let mut worst: Option<(f64, f64, String, f64)> = None;
        for chi in chars
            .iter()
            .filter(|c| !primitive_branch || c.is_primitive())
        {
            for &t in &SUM_HEIGHTS {
                let lhs = trivial_zero_inverse_square_sum(sigma, t, chi)?;
                let rhs = if primitive_branch {
                    trivial_sum_bound_primitive(sigma)
                } else {
                    trivial_sum_bound_unconditional(sigma, q as f64)
                };
                if worst.as_ref().map_or(true, |w| rhs - lhs < w.1 - w.0) {
                    worst = Some((lhs, rhs, chi.label(), t));
                }
            }
        }
        if let Some((lhs, rhs, chi, t)) = worst {
            let branch = if primitive_branch {
                "primitive"
            } else {
                "unconditional"
            };
            out.push(
                CheckReport::new(
                    format!("repulsion.trivial.{branch}/q{q}/sigma={sigma}"),
                    lhs,
                    rhs,
                    Relation::Le,
                    0.0,
                )
                .with("chi", chi)
                .with("t", t),
            );
        }
    }
    Ok(out)
}

/// Exponent used by the density check: 74 in the narrow range
/// `σ ≥ 1 − 10⁻³`, 81 elsewhere.
pub fn density_exponent_for(sigma: f64) -> f64 {
    if sigma >= 1.0 - 1e-3 {
        74.0
    } else {
        81.0
    }
}

/// `Σ_{χ mod q} N(σ, T, χ)` against the density bound with `Q` the largest
/// conductor modulo `q`; the context records the smallest leading constant
/// that would still pass.
pub fn density_theorem_check(
    bank: &ZeroBank,
    q_max: u64,
    t: f64,
    sigma_grid: &[f64],
    leading: f64,
) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for q in 1..=q_max {
        let chars = enumerate_characters(q)?;
        let big_q = chars.iter().map(|c| c.conductor()).max().unwrap_or(1);
        let p = FieldParams::rational(big_q as f64, t)?;
        for &sigma in sigma_grid {
            let lhs = density_count(bank, &chars, sigma, t)?;
            let exponent = density_exponent_for(sigma);
            let base = evaluate_density_bound(sigma, &p, exponent, 1.0)?;
            out.push(
                CheckReport::new(
                    format!("density/q{q}/sigma={sigma}"),
                    lhs as f64,
                    leading * base.value,
                    Relation::Le,
                    0.0,
                )
                .with("exponent", exponent)
                .with("max_conductor", big_q)
                .with("t", t)
                .with("leading_constant", leading)
                .with("minimal_leading_constant", lhs as f64 / base.value)
                .with("overflow", base.overflow),
            );
        }
    }
    Ok(out)
}

/// `Σ_χ #{ρ : σ < β < 1, |γ| ≤ T}` over the given characters.
pub fn density_count(
    bank: &ZeroBank,
    chars: &[DirichletCharacter],
    sigma: f64,
    t: f64,
) -> Result<u64> {
    let mut total = 0;
    for chi in chars {
        total += bank.zeros_of(chi)?.count_right_of(sigma, t)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn bank() -> &'static ZeroBank {
        static BANK: OnceLock<ZeroBank> = OnceLock::new();
        BANK.get_or_init(|| ZeroBank::scan(6, 60.0).unwrap())
    }

    fn zeta() -> DirichletCharacter {
        DirichletCharacter::principal(1).unwrap()
    }

    fn odd4() -> DirichletCharacter {
        enumerate_characters(4).unwrap()[1].clone()
    }

    #[test]
    fn circle_examples() {
        let z = bank().zeros_of(&zeta()).unwrap();
        let center = Complex64::new(1.0, 14.0);
        assert_eq!(count_zeros_circle(z, 1.0, center).unwrap(), 1);
        let reports = circle_lemma_check(bank(), 6, 30.0, 200, 0.0, 7).unwrap();
        assert!(reports.iter().all(|r| r.pass), "{reports:#?}");
        // Primitive characters: one each for q = 1, 3, 4 and three for q = 5.
        assert_eq!(reports.len(), 3 * 6);
        let again = circle_lemma_check(bank(), 6, 30.0, 200, 0.0, 7).unwrap();
        assert_eq!(reports, again);
        assert!(matches!(
            circle_lemma_check(bank(), 6, 59.5, 10, 0.0, 7),
            Err(Error::Dependency(_))
        ));
        assert!(matches!(
            circle_lemma_check(bank(), 7, 30.0, 10, 0.0, 7),
            Err(Error::Dependency(_))
        ));
    }

    #[test]
    fn explicit_formula() {
        for chi in [zeta(), odd4()] {
            for s in [
                Complex64::new(2.0, 0.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(2.0, 5.0),
            ] {
                let r = explicit_formula_residual(bank(), &chi, s, 50.0).unwrap();
                assert!(r.pass, "{r:#?}");
            }
        }
        let imprimitive = DirichletCharacter::principal(4).unwrap();
        assert!(
            explicit_formula_residual(bank(), &imprimitive, Complex64::new(2.0, 0.0), 50.0)
                .is_err()
        );
        assert!(matches!(
            explicit_formula_residual(bank(), &zeta(), Complex64::new(2.0, 0.0), 100.0),
            Err(Error::Dependency(_))
        ));
    }

    #[test]
    fn hadamard() {
        let r = hadamard_derivative_check(bank(), &zeta(), 2, Complex64::new(1.5, 0.0), 60.0, 1e-4)
            .unwrap();
        assert!(r.pass, "{r:#?}");
        let r = hadamard_derivative_check(bank(), &odd4(), 3, Complex64::new(1.5, 0.0), 60.0, 1e-5)
            .unwrap();
        assert!(r.pass, "{r:#?}");
        let r = hadamard_derivative_check(bank(), &zeta(), 2, Complex64::new(2.0, 0.0), 60.0, 1e-5)
            .unwrap();
        assert!(r.pass, "{r:#?}");
        assert!(hadamard_derivative_check(
            bank(),
            &zeta(),
            1,
            Complex64::new(2.0, 0.0),
            60.0,
            1e-5
        )
        .is_err());
    }

    #[test]
    fn trivial_sum_example() {
        let v = trivial_zero_inverse_square_sum(2.0, 0.0, &odd4()).unwrap();
        assert!((v - (PI * PI / 8.0 - 1.0)).abs() < 1e-9);
        assert!(v <= trivial_sum_bound_primitive(2.0));
        let reports = repulsion_sums_check(bank(), 6, &[2.0, 3.0, 19.0], 60.0).unwrap();
        assert!(reports.iter().all(|r| r.pass), "{reports:#?}");
        assert!(repulsion_sums_check(bank(), 6, &[1.5], 60.0).is_err());
    }

    #[test]
    fn four_sum_for_trivial_modulus_doubles() {
        let s = 3.0;
        let z = inverse_square_sum(bank(), &zeta(), Complex64::new(s, 0.0), 60.0).unwrap();
        let reports = repulsion_sums_check(bank(), 1, &[s], 60.0).unwrap();
        let four = reports
            .iter()
            .find(|r| r.name.starts_with("repulsion.four_sum"))
            .unwrap();
        // With ψ = χ = 1 the worst height is t = 0, where all four sums agree.
        assert!((four.lhs - 4.0 * z).abs() < 1e-12);
        assert!(four.pass);
    }

    #[test]
    fn density_examples() {
        let r = density_theorem_check(bank(), 6, 50.0, &[0.5, 0.6, 0.999], 1.0).unwrap();
        assert!(r.iter().all(|x| x.pass && x.lhs == 0.0));
        let three = enumerate_characters(3).unwrap();
        assert_eq!(density_count(bank(), &three, 0.6, 10.0).unwrap(), 0);
        assert_eq!(density_count(bank(), &three, 0.49, 10.0).unwrap(), 2);
        assert_eq!(density_exponent_for(0.999), 74.0);
        assert_eq!(density_exponent_for(0.99), 81.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn four_sum_partial_sums_grow_with_height(t1 in 1.0f64..60.0, t2 in 1.0f64..60.0, sigma in 2.0f64..10.0) {
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let chi = odd4();
            let s = Complex64::new(sigma, 3.0);
            let a = inverse_square_sum(bank(), &chi, s, lo).unwrap();
            let b = inverse_square_sum(bank(), &chi, s, hi).unwrap();
            prop_assert!(a <= b);
            let a = repulsion_sums_check(bank(), 5, &[sigma], lo).unwrap();
            let b = repulsion_sums_check(bank(), 5, &[sigma], hi).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(x.pass && y.pass);
            }
        }

        #[test]
        fn density_count_monotone(s1 in 0.4f64..1.0, s2 in 0.4f64..1.0, t1 in 1.0f64..60.0, t2 in 1.0f64..60.0) {
            let chars = enumerate_characters(5).unwrap();
            let (slo, shi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
            let (tlo, thi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            prop_assert!(density_count(bank(), &chars, shi, thi).unwrap() <= density_count(bank(), &chars, slo, thi).unwrap());
            prop_assert!(density_count(bank(), &chars, slo, tlo).unwrap() <= density_count(bank(), &chars, slo, thi).unwrap());
        }
    }
}
