//! Evaluation of `L(s, χ)`, the gamma factor and the completed L-function.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::character::DirichletCharacter;
use super::special::{hurwitz_regular, ln_gamma};
use crate::arith::factorize;
use crate::error::{Error, Result};

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_primitive() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{chi} is not primitive (conductor {})",
            chi.conductor()
        )))
    }
}

/// `(s−1)^{δ(χ)} L(s, χ)`, which is entire.
pub fn l_times_pole(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let q = chi.modulus();
    let qf = q as f64;
    let mut reg = Complex64::new(0.0, 0.0);
    let mut mass = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let v = chi.value(a);
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let (r, _) = hurwitz_regular(s, a as f64 / qf)?;
        reg += v * r;
        mass += v;
    }
    let scale = (-s * qf.ln()).exp();
    if chi.is_principal() {
        Ok(scale * ((s - 1.0) * reg + mass))
    } else {
        // Σ χ(a) = 0, so the poles of the Hurwitz terms cancel exactly.
        Ok(scale * reg)
    }
}

/// `L(s, χ) = q^{-s} Σ_a χ(a) ζ(s, a/q)`.
pub fn l_eval(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole(format!("L(s, {chi}) at s = 1")));
        }
        return Ok(l_times_pole(s, chi)? / (s - 1.0));
    }
    l_times_pole(s, chi)
}

/// `L(s, χ*) Π_{p | q, p ∤ f} (1 − χ*(p) p^{-s})`, with `χ*` the inducing
/// primitive character.
pub fn l_eval_via_primitive(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let prim = chi.primitive()?;
    let mut v = l_eval(s, &prim)?;
    for (p, _) in factorize(chi.modulus()) {
        if chi.conductor() % p != 0 {
            v *= 1.0 - prim.value(p) * (-s * (p as f64).ln()).exp();
        }
    }
    Ok(v)
}

/// `log γ_χ(s)` with `γ_χ(s) = π^{-(s+b)/2} Γ((s+b)/2)`.
pub fn log_gamma_factor(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let (_, b) = chi.gamma_exponents();
    let w = (s + b as f64) / 2.0;
    match ln_gamma(w) {
        Ok(lg) => Ok(lg - w * PI.ln()),
        Err(_) => Err(Error::Pole(format!("gamma factor of {chi} at s = {s}"))),
    }
}

pub fn gamma_factor(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    Ok(log_gamma_factor(s, chi)?.exp())
}

/// `ξ(s, χ)` as the plain product of its factors. Fails at poles of the
/// gamma factor even where the product extends analytically.
pub fn completed_l_direct(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    require_primitive(chi)?;
    let q = chi.modulus() as f64;
    let pre = (0.5 * s * q.ln() + log_gamma_factor(s, chi)?).exp();
    let core = if chi.is_principal() {
        s * l_times_pole(s, chi)?
    } else {
        l_eval(s, chi)?
    };
    Ok(pre * core)
}

/// `log ξ(s, χ)` for `Re s ≥ ½` (real part exact, imaginary part modulo
/// 2π), together with `|(s−1)^δ L(s, χ)|`.
fn log_completed_right(s: Complex64, chi: &DirichletCharacter) -> Result<(Complex64, f64)> {
    let q = chi.modulus() as f64;
    let l = l_times_pole(s, chi)?;
    let mut v = 0.5 * s * q.ln() + log_gamma_factor(s, chi)? + l.ln();
    if chi.is_principal() {
        v += s.ln();
    }
    Ok((v, l.norm()))
}

/// Evaluation context for `ξ(·, χ)` on the whole plane: caches `χ̄` and the
/// root number.
#[derive(Debug, Clone)]
pub struct CompletedL {
    chi: DirichletCharacter,
    conj: DirichletCharacter,
    root: Complex64,
    sqrt_root: Complex64,
}

impl CompletedL {
    pub fn new(chi: &DirichletCharacter) -> Result<Self> {
        require_primitive(chi)?;
        let root = root_number(chi)?;
        Ok(Self {
            chi: chi.clone(),
            conj: chi.conj(),
            root,
            sqrt_root: root.sqrt(),
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn root_number(&self) -> Complex64 {
        self.root
    }

    /// `log ξ(s, χ)`; the left half plane goes through the functional equation.
    pub fn log_xi(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.log_xi_with_proximity(s)?.0)
    }

    /// `log ξ(s, χ)` and `|(s−1)^δ L|` at `s`, or at `1 − s` for `χ̄` when
    /// `Re s < ½`. The second value is a scale-free measure of proximity to
    /// a zero of `ξ`.
    pub fn log_xi_with_proximity(&self, s: Complex64) -> Result<(Complex64, f64)> {
        if s.re >= 0.5 {
            log_completed_right(s, &self.chi)
        } else {
            let (v, p) = log_completed_right(1.0 - s, &self.conj)?;
            Ok((self.root.ln() + v, p))
        }
    }

    pub fn xi(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.log_xi(s)?.exp())
    }

    /// The real function on the critical line whose sign agrees with
    /// `ξ(½+it, χ)/√w(χ)`. The imaginary part is round-off.
    pub fn hardy_z(&self, t: f64) -> Result<Complex64> {
        let s = Complex64::new(0.5, t);
        let q = self.chi.modulus() as f64;
        let g = 0.5 * s * q.ln() + log_gamma_factor(s, &self.chi)?;
        let phase = Complex64::from_polar(1.0, g.im);
        let sign = if self.chi.is_principal() { -1.0 } else { 1.0 };
        Ok(sign * phase * l_eval(s, &self.chi)? / self.sqrt_root)
    }
}

/// `ξ(s, χ) = [s(s−1)]^{δ} q^{s/2} γ_χ(s) L(s, χ)` for primitive `χ`.
pub fn completed_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    require_primitive(chi)?;
    if s.re >= 0.5 {
        Ok(log_completed_right(s, chi)?.0.exp())
    } else {
        CompletedL::new(chi)?.xi(s)
    }
}

/// `w(χ)` from `ξ(s, χ) = w(χ) ξ(1−s, χ̄)`, evaluated as a quotient away
/// from the real axis.
pub fn root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    require_primitive(chi)?;
    let conj = chi.conj();
    let mut s = Complex64::new(0.3, 0.7);
    for _ in 0..20 {
        let num = completed_l_direct(s, chi)?;
        let den = completed_l_direct(1.0 - s, &conj)?;
        if num.norm() > 1e-8 && den.norm() > 1e-8 {
            return Ok(num / den);
        }
        s.im += 0.37;
    }
    Err(Error::Certification(format!(
        "root number of {chi}: every reference point is near a zero"
    )))
}

/// `τ(χ) = Σ_a χ(a) e^{2πi a/q}`.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus();
    (1..=q)
        .map(|a| chi.value(a) * Complex64::from_polar(1.0, TAU * a as f64 / q as f64))
        .sum()
}

/// Trivial zeros `(location, order)` of `L(s, χ)`, `χ` primitive: even
/// characters at `0` (order `1 − δ`), `−2`, `−4`, …; odd at `−1`, `−3`, ….
pub fn trivial_zeros(chi: &DirichletCharacter, depth: usize) -> Result<Vec<(f64, u32)>> {
    require_primitive(chi)?;
    if depth == 0 {
        return Err(Error::Domain("depth must be positive".into()));
    }
    let (a, b) = chi.gamma_exponents();
    let start = if b == 1 {
        -1.0
    } else if a as i32 - chi.delta() as i32 > 0 {
        0.0
    } else {
        -2.0
    };
    Ok((0..depth).map(|j| (start - 2.0 * j as f64, 1)).collect())
}
