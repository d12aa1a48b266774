//! Counting zeros by the argument principle and locating them on the
//! critical line.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::character::{primitive_characters, DirichletCharacter};
use super::lfunc::CompletedL;
use crate::error::{Error, Result};

/// Largest height accepted by [`scan_zeros`].
pub const MAX_SCAN_HEIGHT: f64 = 1e3;
/// Winding numbers must lie this close to an integer.
pub const WINDING_TOLERANCE: f64 = 0.1;
/// Target half-width of the bisection brackets.
pub const ZERO_RADIUS: f64 = 1e-9;

const PROXIMITY_FLOOR: f64 = 1e-6;
const MAX_PHASE_STEP: f64 = 0.6;
const MIN_SEGMENT: f64 = 1e-9;
const RIGHT_EDGE: f64 = 1.5;
const MAX_PERTURBATIONS: u32 = 20;
const BASE_GRID: f64 = 0.1;
const GRID_REFINEMENTS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub beta: f64,
    pub gamma: f64,
    pub multiplicity: u32,
    pub certified_radius: f64,
}

impl ZeroRecord {
    pub fn rho(&self) -> Complex64 {
        Complex64::new(self.beta, self.gamma)
    }
}

/// The nontrivial zeros of `L(s, χ)` with `|γ| ≤ complete_to_height`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub character: DirichletCharacter,
    pub zeros: Vec<ZeroRecord>,
    pub complete_to_height: f64,
}

impl ZeroSet {
    /// The zero set of `χ̄`: every zero reflected in the real axis.
    pub fn conjugate(&self) -> ZeroSet {
        let mut zeros: Vec<ZeroRecord> = self
            .zeros
            .iter()
            .map(|z| ZeroRecord {
                gamma: -z.gamma,
                ..*z
            })
            .collect();
        zeros.reverse();
        ZeroSet {
            character: self.character.conj(),
            zeros,
            complete_to_height: self.complete_to_height,
        }
    }

    /// Zeros with `|γ| ≤ t`, which must not exceed the certified height.
    pub fn up_to(&self, t: f64) -> Result<impl Iterator<Item = &ZeroRecord>> {
        if t > self.complete_to_height {
            return Err(Error::Dependency(format!(
                "zeros of {} known to height {}, requested {t}",
                self.character, self.complete_to_height
            )));
        }
        Ok(self.zeros.iter().filter(move |z| z.gamma.abs() <= t))
    }

    /// `N(σ, T, χ)`: zeros with `σ < β < 1` and `|γ| ≤ T`, with multiplicity.
    pub fn count_right_of(&self, sigma: f64, t: f64) -> Result<u64> {
        Ok(self
            .up_to(t)?
            .filter(|z| z.beta > sigma && z.beta < 1.0)
            .map(|z| z.multiplicity as u64)
            .sum())
    }

    /// Positive ordinates, ascending.
    pub fn positive_ordinates(&self) -> Vec<f64> {
        self.zeros
            .iter()
            .map(|z| z.gamma)
            .filter(|&g| g > 0.0)
            .collect()
    }
}

/// Outcome of an argument-principle count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectangleCount {
    pub count: u64,
    /// The winding number before rounding.
    pub winding: f64,
    /// The height actually used, after boundary perturbation.
    pub height: f64,
    pub left_edge: f64,
}

enum EdgeFailure {
    /// A zero lies on or very near the contour.
    Proximity,
    Other(Error),
}

impl From<Error> for EdgeFailure {
    fn from(e: Error) -> Self {
        EdgeFailure::Other(e)
    }
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

struct Contour<'a> {
    ctx: &'a CompletedL,
}

impl Contour<'_> {
    fn phase(&self, s: Complex64) -> std::result::Result<f64, EdgeFailure> {
        let (v, prox) = self.ctx.log_xi_with_proximity(s)?;
        if prox < PROXIMITY_FLOOR || !v.im.is_finite() {
            return Err(EdgeFailure::Proximity);
        }
        Ok(v.im)
    }

    /// Phase change from `a` to `b`, both with known phases, subdividing
    /// until each step is below [`MAX_PHASE_STEP`].
    fn segment(
        &self,
        a: Complex64,
        pa: f64,
        b: Complex64,
        pb: f64,
        depth: u32,
    ) -> std::result::Result<f64, EdgeFailure> {
        let d = wrap(pb - pa);
        if d.abs() <= MAX_PHASE_STEP {
            return Ok(d);
        }
        if (b - a).norm() < MIN_SEGMENT || depth > 60 {
            return Err(EdgeFailure::Proximity);
        }
        let m = (a + b) / 2.0;
        let pm = self.phase(m)?;
        Ok(self.segment(a, pa, m, pm, depth + 1)? + self.segment(m, pm, b, pb, depth + 1)?)
    }

    fn edge(&self, a: Complex64, b: Complex64) -> std::result::Result<f64, EdgeFailure> {
        let q = self.ctx.character().modulus() as f64;
        let mut total = 0.0;
        let mut p = a;
        let mut pp = self.phase(a)?;
        let len = (b - a).norm();
        let dir = (b - a) / len;
        let mut walked = 0.0;
        while walked < len {
            let height = p.im.abs();
            let density = 0.5 * (q * (height + 3.0) / TAU).ln() + 1.0;
            let h = (0.5 / density).min(0.25).min(len - walked);
            walked += h;
            let next = if walked >= len { b } else { a + dir * walked };
            let pn = self.phase(next)?;
            total += self.segment(p, pp, next, pn, 0)?;
            p = next;
            pp = pn;
        }
        Ok(total)
    }

    fn winding(&self, left: f64, height: f64) -> std::result::Result<f64, EdgeFailure> {
        let c = |x: f64, y: f64| Complex64::new(x, y);
        let corners = [
            c(left, -height),
            c(RIGHT_EDGE, -height),
            c(RIGHT_EDGE, height),
            c(left, height),
        ];
        let mut total = 0.0;
        for i in 0..4 {
            total += self.edge(corners[i], corners[(i + 1) % 4])?;
        }
        Ok(total / TAU)
    }
}

fn rectangle_with(ctx: &CompletedL, sigma0: f64, t: f64) -> Result<RectangleCount> {
    if !(0.0..1.0).contains(&sigma0) || !(t > 0.0) {
        return Err(Error::Domain(format!(
            "need 0 ≤ σ0 < 1 and T > 0, got ({sigma0}, {t})"
        )));
    }
    // Every zero has β > 0, so for σ0 = 0 the left edge moves away from the axis.
    let left = if sigma0 == 0.0 { -0.5 } else { sigma0 };
    let contour = Contour { ctx };
    for j in 0..=MAX_PERTURBATIONS {
        let height = t + j as f64 * 1e-3;
        match contour.winding(left, height) {
            Ok(w) => {
                let n = w.round();
                if (w - n).abs() > WINDING_TOLERANCE || n < 0.0 {
                    return Err(Error::Certification(format!(
                        "winding number {w} for {} on [{left}, {RIGHT_EDGE}]×[−{height}, {height}] is not near an integer",
                        ctx.character()
                    )));
                }
                return Ok(RectangleCount {
                    count: n as u64,
                    winding: w,
                    height,
                    left_edge: left,
                });
            }
            Err(EdgeFailure::Other(e)) => return Err(e),
            Err(EdgeFailure::Proximity) if sigma0 > 0.0 && j == MAX_PERTURBATIONS => break,
            Err(EdgeFailure::Proximity) => continue,
        }
    }
    Err(Error::Certification(format!(
        "a zero of {} stays within {PROXIMITY_FLOOR:e} of the contour (σ0 = {sigma0}, T = {t})",
        ctx.character()
    )))
}

/// Number of zeros with `σ0 < β < 1`, `|γ| ≤ T` (with multiplicity), by the
/// winding number of `ξ` around a rectangle. `T` is nudged upward by
/// multiples of 10⁻³ when a zero sits near the horizontal edges.
pub fn count_zeros_rectangle(chi: &DirichletCharacter, sigma0: f64, t: f64) -> Result<u64> {
    Ok(count_zeros_rectangle_detailed(chi, sigma0, t)?.count)
}

pub fn count_zeros_rectangle_detailed(
    chi: &DirichletCharacter,
    sigma0: f64,
    t: f64,
) -> Result<RectangleCount> {
    let ctx = CompletedL::new(chi)?;
    rectangle_with(&ctx, sigma0, t)
}

fn sign_changes(ctx: &CompletedL, height: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    let n = (2.0 * height / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|i| -height + i as f64 * 2.0 * height / n as f64)
        .collect();
    let values: Vec<f64> = grid
        .iter()
        .map(|&t| ctx.hardy_z(t).map(|z| z.re))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..n {
        let (mut a, mut b) = (grid[i], grid[i + 1]);
        let (mut fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 {
            out.push(ZeroRecord {
                beta: 0.5,
                gamma: a,
                multiplicity: 1,
                certified_radius: 0.0,
            });
            continue;
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        while (b - a) / 2.0 > ZERO_RADIUS {
            let m = 0.5 * (a + b);
            let fm = ctx.hardy_z(m)?.re;
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        out.push(ZeroRecord {
            beta: 0.5,
            gamma: 0.5 * (a + b),
            multiplicity: 1,
            certified_radius: 0.5 * (b - a),
        });
    }
    if values[n] == 0.0 {
        out.push(ZeroRecord {
            beta: 0.5,
            gamma: grid[n],
            multiplicity: 1,
            certified_radius: 0.0,
        });
    }
    Ok(out)
}

/// Zeros of `L(s, χ)` on the critical line with `|γ| ≤ T`, certified
/// complete against the argument principle.
pub fn scan_zeros(chi: &DirichletCharacter, t: f64) -> Result<ZeroSet> {
    if !(t > 0.0 && t <= MAX_SCAN_HEIGHT) {
        return Err(Error::Domain(format!(
            "scan height must lie in (0, {MAX_SCAN_HEIGHT}], got {t}"
        )));
    }
    let ctx = CompletedL::new(chi)?;
    let rect = rectangle_with(&ctx, 0.0, t)?;
    let mut found = Vec::new();
    for r in 0..=GRID_REFINEMENTS {
        let step = BASE_GRID / 4f64.powi(r as i32);
        found = sign_changes(&ctx, rect.height, step)?;
        if found.len() as u64 == rect.count {
            return Ok(ZeroSet {
                character: chi.clone(),
                zeros: found,
                complete_to_height: rect.height,
            });
        }
    }
    Err(Error::UnverifiedWindow {
        label: format!("{chi}"),
        height: rect.height,
        found: found.len() as u64,
        expected: rect.count,
    })
}

/// [`scan_zeros`] for every primitive character modulo `q`, in character
/// order. Conjugate pairs are scanned once.
pub fn scan_primitive(q: u64, t: f64) -> Result<Vec<ZeroSet>> {
    let chars = primitive_characters(q)?;
    let reps: Vec<&DirichletCharacter> = chars
        .iter()
        .filter(|c| c.exponents() <= c.conj().exponents())
        .collect();
    let scanned: Vec<ZeroSet> = reps
        .par_iter()
        .map(|c| scan_zeros(c, t))
        .collect::<Result<_>>()?;
    Ok(chars
        .iter()
        .map(|c| {
            scanned
                .iter()
                .find(|z| &z.character == c)
                .cloned()
                .or_else(|| {
                    scanned
                        .iter()
                        .find(|z| z.character == c.conj())
                        .map(ZeroSet::conjugate)
                })
                .expect("every character or its conjugate was scanned")
        })
        .collect())
}

/// Recorded zeros in the closed disc `|s − center| ≤ r`.
pub fn count_zeros_circle(z: &ZeroSet, r: f64, center: Complex64) -> Result<u64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    if center.im.abs() + r > z.complete_to_height {
        return Err(Error::Domain(format!(
            "disc about {center} of radius {r} exceeds the certified height {}",
            z.complete_to_height
        )));
    }
    Ok(z.zeros
        .iter()
        .filter(|x| (x.rho() - center).norm() <= r)
        .map(|x| x.multiplicity as u64)
        .sum())
}
