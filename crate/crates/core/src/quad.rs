//! One-dimensional quadrature: adaptive Simpson and fixed-order Gauss–Legendre.

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// Subdivides until the Richardson estimate on each panel is below its share of
/// `rel_tol * |I|` (with `abs_floor` guarding integrals that are near zero).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> f64 {
    if a == b {
        return 0.0;
    }
    // A coarse composite pass sets the scale used by the tolerance.
    let n0 = 16;
    let h = (b - a) / n0 as f64;
    let mut coarse = 0.0;
    let mut panels = Vec::with_capacity(n0);
    for i in 0..n0 {
        let x0 = a + h * i as f64;
        let x1 = if i + 1 == n0 { b } else { x0 + h };
        let xm = 0.5 * (x0 + x1);
        let (f0, fm, f1) = (f(x0), f(xm), f(x1));
        let s = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        coarse += s;
        panels.push((x0, x1, f0, fm, f1, s));
    }
    let tol = (rel_tol * coarse.abs()).max(abs_floor);
    let mut total = 0.0;
    for (x0, x1, f0, fm, f1, s) in panels {
        total += simpson_rec(&f, x0, x1, f0, fm, f1, s, tol / n0 as f64, 50);
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Integral of `f` over `[a, ∞)` via the substitution `t = a + u/(1-u)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, rel_tol: f64, abs_floor: f64) -> f64 {
    let g = |u: f64| {
        if u >= 1.0 {
            return 0.0;
        }
        let w = 1.0 - u;
        let t = a + u / w;
        let v = f(t) / (w * w);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    adaptive_simpson(g, 0.0, 1.0, rel_tol, abs_floor)
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            weights[i] = w;
            nodes[n - 1 - i] = -x;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = crate::arith::NeumaierSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        half * acc.value()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_polynomial_and_transcendental() {
        let v = adaptive_simpson(|x| x.powi(3), 0.0, 2.0, 1e-12, 0.0);
        assert!((v - 4.0).abs() < 1e-12);
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-10, 0.0);
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn infinite_range() {
        let v = integrate_to_infinity(|t| 1.0 / (1.0 + t * t), 0.0, 1e-10, 0.0);
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }

    #[test]
    fn gauss_legendre_exact_on_polynomials() {
        let g = GaussLegendre::new(10);
        let v = g.integrate(|x| x.powi(19) + x.powi(18), -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
        let v = g.integrate(|x| x * x, 0.0, 3.0);
        assert!((v - 9.0).abs() < 1e-13);
    }
}
