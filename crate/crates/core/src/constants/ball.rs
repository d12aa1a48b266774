//! `ErrorBounded`: a real value with a certified absolute-error radius.
//!
//! Every operation propagates radii outward: the exact first-order bound plus
//! the second-order term, then a rounding slack of four units in the last
//! place of the result. Elementary functions use a Lipschitz constant of the
//! function on the enclosing interval. This assumes the platform `exp`, `ln`
//! and `sqrt` are accurate to within one ulp, which holds for the common libm
//! implementations.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Rounding slack of four ulps at `v`; the additive floor covers subnormals.
fn slack(v: f64) -> f64 {
    4.0 * EPS * v.abs() + f64::MIN_POSITIVE
}

/// Inflate a radius computed in floating point so that it stays an upper bound.
fn up(r: f64) -> f64 {
    r * (1.0 + 4.0 * EPS)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBounded {
    value: f64,
    radius: f64,
}

impl ErrorBounded {
    /// An exactly representable value.
    pub const fn exact(value: f64) -> Self {
        Self { value, radius: 0.0 }
    }

    pub fn new(value: f64, radius: f64) -> Self {
        assert!(radius >= 0.0, "radius must be non-negative");
        Self { value, radius }
    }

    /// A decimal literal, enclosed by its nearest double plus one ulp.
    pub fn from_decimal(text: &str) -> Result<Self> {
        let value: f64 = text
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a decimal literal: {text}")))?;
        Ok(Self {
            value,
            radius: EPS * value.abs(),
        })
    }

    pub fn pi() -> Self {
        Self::new(std::f64::consts::PI, EPS * 4.0)
    }

    pub fn e() -> Self {
        Self::new(std::f64::consts::E, EPS * 4.0)
    }

    pub fn ln2() -> Self {
        Self::new(std::f64::consts::LN_2, EPS)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn lower(&self) -> f64 {
        self.value - up(self.radius)
    }

    pub fn upper(&self) -> f64 {
        self.value + up(self.radius)
    }

    /// `true` when every point of `self` is at most every point of `other`.
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.upper() <= other.lower()
    }

    pub fn certainly_ge(&self, other: &Self) -> bool {
        self.lower() >= other.upper()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }

    fn with(value: f64, radius: f64) -> Self {
        Self {
            value,
            radius: up(radius) + slack(value),
        }
    }

    pub fn abs(self) -> Self {
        Self {
            value: self.value.abs(),
            radius: self.radius,
        }
    }

    pub fn recip(self) -> Result<Self> {
        Self::exact(1.0).checked_div(self)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        let d = rhs.value.abs();
        if !(d > up(rhs.radius)) {
            return Err(Error::Domain(
                "division by an interval containing zero".into(),
            ));
        }
        let v = self.value / rhs.value;
        let r = (self.value.abs() * rhs.radius + d * self.radius) / (d * (d - up(rhs.radius)));
        Ok(Self::with(v, r))
    }

    pub fn sqrt(self) -> Result<Self> {
        let lo = self.value - up(self.radius);
        if lo < 0.0 {
            return Err(Error::Domain(
                "square root of an interval reaching below zero".into(),
            ));
        }
        let v = self.value.sqrt();
        let denom = v + lo.sqrt();
        let r = if self.radius == 0.0 {
            0.0
        } else if denom > 0.0 {
            self.radius / denom
        } else {
            self.radius.sqrt()
        };
        Ok(Self::with(v, r))
    }

    pub fn ln(self) -> Result<Self> {
        let lo = self.value - up(self.radius);
        if !(lo > 0.0) {
            return Err(Error::Domain(
                "logarithm of an interval reaching zero".into(),
            ));
        }
        let v = self.value.ln();
        Ok(Self::with(v, self.radius / lo))
    }

    pub fn exp(self) -> Self {
        let v = self.value.exp();
        // |e^y - e^x| ≤ e^x (e^r - 1) for |y - x| ≤ r.
        let r = v * self.radius.exp_m1();
        Self::with(v, r)
    }

    /// `self^p` for an exact real exponent, as `exp(p·ln self)`.
    pub fn powf(self, p: f64) -> Result<Self> {
        if p == 0.0 {
            return Ok(Self::exact(1.0));
        }
        Ok((self.ln()? * p).exp())
    }

    /// `self^n` by repeated multiplication, valid for any sign.
    pub fn powi(self, n: u32) -> Self {
        let mut acc = Self::exact(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// `self^other` for a positive base.
    pub fn pow(self, other: Self) -> Result<Self> {
        Ok((self.ln()? * other).exp())
    }

    pub fn max(self, other: Self) -> Self {
        let hi = self.upper().max(other.upper());
        let lo = self.lower().max(other.lower());
        let v = 0.5 * (hi + lo);
        Self::with(v, 0.5 * (hi - lo))
    }
}

impl fmt::Display for ErrorBounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.1e}", self.value, self.radius)
    }
}

impl Add for ErrorBounded {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::with(self.value + rhs.value, self.radius + rhs.radius)
    }
}

impl Sub for ErrorBounded {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::with(self.value - rhs.value, self.radius + rhs.radius)
    }
}

impl Mul for ErrorBounded {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let r = self.value.abs() * rhs.radius
            + rhs.value.abs() * self.radius
            + self.radius * rhs.radius;
        Self::with(self.value * rhs.value, r)
    }
}

/// Division by a ball containing zero yields an infinite radius; use
/// [`ErrorBounded::checked_div`] to get an error instead.
impl Div for ErrorBounded {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(rhs).unwrap_or(Self {
            value: self.value / rhs.value,
            radius: f64::INFINITY,
        })
    }
}

impl Neg for ErrorBounded {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            radius: self.radius,
        }
    }
}

impl Add<f64> for ErrorBounded {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        self + Self::exact(rhs)
    }
}

impl Sub<f64> for ErrorBounded {
    type Output = Self;
    fn sub(self, rhs: f64) -> Self {
        self - Self::exact(rhs)
    }
}

impl Mul<f64> for ErrorBounded {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self * Self::exact(rhs)
    }
}

impl Div<f64> for ErrorBounded {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self / Self::exact(rhs)
    }
}

impl From<f64> for ErrorBounded {
    fn from(v: f64) -> Self {
        Self::exact(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use astro_float::{BigFloat, Consts, RoundingMode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: usize = 256;
    const RM: RoundingMode = RoundingMode::ToEven;

    #[derive(Debug)]
    enum Expr {
        Leaf(f64),
        Pi,
        Add(Box<Expr>, Box<Expr>),
        Sub(Box<Expr>, Box<Expr>),
        Mul(Box<Expr>, Box<Expr>),
        Div(Box<Expr>, Box<Expr>),
        Ln(Box<Expr>),
        Exp(Box<Expr>),
        Sqrt(Box<Expr>),
    }

    fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
        if depth == 0 || rng.gen_bool(0.25) {
            return if rng.gen_bool(0.1) {
                Expr::Pi
            } else {
                Expr::Leaf(rng.gen_range(0.25..4.0))
            };
        }
        let a = Box::new(random_expr(rng, depth - 1));
        match rng.gen_range(0..7) {
            0 => Expr::Add(a, Box::new(random_expr(rng, depth - 1))),
            1 => Expr::Sub(a, Box::new(random_expr(rng, depth - 1))),
            2 => Expr::Mul(a, Box::new(random_expr(rng, depth - 1))),
            3 => Expr::Div(a, Box::new(random_expr(rng, depth - 1))),
            4 => Expr::Ln(a),
            5 => Expr::Exp(a),
            _ => Expr::Sqrt(a),
        }
    }

    /// Evaluate in both arithmetics; `None` when the expression leaves the
    /// domain (or grows too large to be a useful sample).
    fn eval(e: &Expr, cc: &mut Consts) -> Option<(ErrorBounded, BigFloat)> {
        Some(match e {
            Expr::Leaf(v) => (ErrorBounded::exact(*v), BigFloat::from_f64(*v, P)),
            Expr::Pi => (ErrorBounded::pi(), cc.pi(P, RM)),
            Expr::Add(a, b) => {
                let (x, bx) = eval(a, cc)?;
                let (y, by) = eval(b, cc)?;
                (x + y, bx.add(&by, P, RM))
            }
            Expr::Sub(a, b) => {
                let (x, bx) = eval(a, cc)?;
                let (y, by) = eval(b, cc)?;
                (x - y, bx.sub(&by, P, RM))
            }
            Expr::Mul(a, b) => {
                let (x, bx) = eval(a, cc)?;
                let (y, by) = eval(b, cc)?;
                (x * y, bx.mul(&by, P, RM))
            }
            Expr::Div(a, b) => {
                let (x, bx) = eval(a, cc)?;
                let (y, by) = eval(b, cc)?;
                (x.checked_div(y).ok()?, bx.div(&by, P, RM))
            }
            Expr::Ln(a) => {
                let (x, bx) = eval(a, cc)?;
                (x.ln().ok()?, bx.ln(P, RM, cc))
            }
            Expr::Exp(a) => {
                let (x, bx) = eval(a, cc)?;
                if x.value().abs() > 20.0 {
                    return None;
                }
                (x.exp(), bx.exp(P, RM, cc))
            }
            Expr::Sqrt(a) => {
                let (x, bx) = eval(a, cc)?;
                (x.sqrt().ok()?, bx.sqrt(P, RM))
            }
        })
    }

    #[test]
    fn enclosures_contain_high_precision_values() {
        let mut cc = Consts::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut checked = 0;
        while checked < 10_000 {
            let e = random_expr(&mut rng, 5);
            let Some((ball, exact)) = eval(&e, &mut cc) else {
                continue;
            };
            if !ball.radius().is_finite() || ball.value().abs() > 1e12 {
                continue;
            }
            let diff = exact.sub(&BigFloat::from_f64(ball.value(), P), P, RM);
            let diff = if diff.is_negative() { diff.neg() } else { diff };
            let rad = BigFloat::from_f64(ball.radius(), P);
            assert!(
                diff.cmp(&rad).unwrap() <= 0,
                "expression {e:?} gave {ball} but the exact value differs by more"
            );
            checked += 1;
        }
    }

    #[test]
    fn basic_enclosures() {
        let two = ErrorBounded::exact(2.0);
        let s = two.sqrt().unwrap();
        assert!(s.contains(std::f64::consts::SQRT_2));
        assert!(s.radius() < 1e-14);
        let l = two.ln().unwrap();
        assert!(l.contains(std::f64::consts::LN_2));
        assert!(ErrorBounded::exact(0.0).ln().is_err());
        assert!(ErrorBounded::exact(-1.0).sqrt().is_err());
        assert!(ErrorBounded::exact(1.0)
            .checked_div(ErrorBounded::new(0.0, 1e-3))
            .is_err());
        let x = ErrorBounded::new(1.0, 0.1);
        let y = x * x;
        assert!(y.contains(1.21) && y.contains(0.81));
        let d = ErrorBounded::from_decimal("2.3").unwrap();
        assert!(d.contains(2.3));
        assert!(ErrorBounded::exact(2.29).certainly_le(&d));
        assert!(!ErrorBounded::new(2.29, 0.02).certainly_le(&d));
    }

    #[test]
    fn power_functions() {
        let x = ErrorBounded::exact(3.0);
        assert!(x.powf(2.0).unwrap().contains(9.0));
        assert!(x.powi(3).contains(27.0));
        assert!(x
            .pow(ErrorBounded::exact(0.5))
            .unwrap()
            .contains(3f64.sqrt()));
        assert_eq!(x.powf(0.0).unwrap().value(), 1.0);
    }

    #[test]
    fn serde_round_trip() {
        let b = ErrorBounded::new(3.752, 1e-12);
        let text = serde_json::to_string(&b).unwrap();
        let back: ErrorBounded = serde_json::from_str(&text).unwrap();
        assert_eq!(b, back);
    }
}
