//! Elementary number theory and compensated summation helpers.

use num_complex::Complex64;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Prime factorisation by trial division, as `(p, k)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0).
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Calls `f` on every prime up to and including `n`, in increasing order,
/// with a segmented sieve of bounded memory.
pub fn for_each_prime(n: u64, mut f: impl FnMut(u64)) {
    if n < 2 {
        return;
    }
    let root = (n as f64).sqrt() as u64 + 1;
    let base = primes_up_to(root);
    const SEGMENT: u64 = 1 << 18;
    let mut seg = vec![false; SEGMENT as usize];
    let mut lo = 2u64;
    while lo <= n {
        let hi = (lo + SEGMENT - 1).min(n);
        seg.iter_mut().for_each(|x| *x = false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut j = (lo.div_ceil(p) * p).max(p * p);
            while j <= hi {
                seg[(j - lo) as usize] = true;
                j += p;
            }
        }
        for i in lo..=hi {
            if !seg[(i - lo) as usize] {
                f(i);
            }
        }
        lo = hi + 1;
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

/// Prime powers `p^m ≤ n` as `(p^m, p)` pairs, sorted by the power.
pub fn prime_powers_up_to(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in primes_up_to(n) {
        let mut pk = p;
        loop {
            out.push((pk, p));
            match pk.checked_mul(p) {
                Some(next) if next <= n => pk = next,
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// Solve `x ≡ a (mod m)`, `x ≡ b (mod n)` for coprime `m, n`.
pub fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    // x = a + m * ((b - a) * m^{-1} mod n)
    let inv = mod_inverse(m % n, n).expect("moduli must be coprime");
    let diff = ((b as i128 - a as i128).rem_euclid(n as i128)) as u128;
    let t = diff * inv as u128 % n as u128;
    ((a as u128 + m as u128 * t) % (m as u128 * n as u128)) as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Neumaier (improved Kahan) summation for reals.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise Neumaier summation for complex numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
