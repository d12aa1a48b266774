//! Dirichlet characters labelled by exponent vectors on fixed generators of
//! `(ℤ/qℤ)^×`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{crt_pair, factorize, gcd, lcm, mod_pow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// One cyclic factor of the unit group: a generator of order `order`
/// modulo the prime power `pk`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Component {
    pk: u64,
    /// Generator, lifted to be `≡ 1` modulo the other prime powers.
    lifted: u64,
    order: u64,
    /// Discrete logarithm modulo `pk`, `None` off the units. For the
    /// `2^k, k ≥ 3` pair this is the log with respect to 5 after removing
    /// the sign, or the sign bit itself.
    dlog: Vec<Option<u64>>,
}

/// The CRT decomposition of `(ℤ/qℤ)^×`, shared between the characters of a
/// modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    components: Vec<Component>,
    exponent: u64,
}

fn primitive_root(p: u64, k: u32) -> u64 {
    let pk = p.pow(k);
    let phi = pk / p * (p - 1);
    let lp: Vec<u64> = factorize(phi).into_iter().map(|(l, _)| l).collect();
    (2..pk)
        .find(|&g| g % p != 0 && lp.iter().all(|&l| mod_pow(g, phi / l, pk) != 1))
        .expect("odd prime powers have primitive roots")
}

impl UnitGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        let mut components = Vec::new();
        let lift = |g: u64, pk: u64| {
            if q == pk {
                g % q
            } else {
                crt_pair(g % pk, pk, 1, q / pk)
            }
        };
        for (p, k) in factorize(q) {
            let pk = p.pow(k);
            if p == 2 {
                if k == 1 {
                    continue;
                }
                let mut sign = vec![None; pk as usize];
                for n in (1..pk).step_by(2) {
                    sign[n as usize] = Some(if n % 4 == 1 { 0 } else { 1 });
                }
                components.push(Component {
                    pk,
                    lifted: lift(pk - 1, pk),
                    order: 2,
                    dlog: sign,
                });
                if k >= 3 {
                    let order = pk / 4;
                    let mut table = vec![None; pk as usize];
                    let mut x = 1u64;
                    for e in 0..order {
                        table[x as usize] = Some(e);
                        table[(pk - x) as usize] = Some(e);
                        x = x * 5 % pk;
                    }
                    components.push(Component {
                        pk,
                        lifted: lift(5, pk),
                        order,
                        dlog: table,
                    });
                }
            } else {
                let g = primitive_root(p, k);
                let order = pk / p * (p - 1);
                let mut table = vec![None; pk as usize];
                let mut x = 1u64;
                for e in 0..order {
                    table[x as usize] = Some(e);
                    x = x * g % pk;
                }
                components.push(Component {
                    pk,
                    lifted: lift(g, pk),
                    order,
                    dlog: table,
                });
            }
        }
        let exponent = components.iter().fold(1, |acc, c| lcm(acc, c.order));
        Ok(Self {
            modulus: q,
            components,
            exponent,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Orders of the generators, in label order.
    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.order).collect()
    }

    /// Generators lifted to residues modulo `q`.
    pub fn generators(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.lifted).collect()
    }

    /// Least common multiple of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Coordinates of `n` on the generators, or `None` when `gcd(n, q) > 1`.
    pub fn coordinates(&self, n: u64) -> Option<Vec<u64>> {
        if gcd(n % self.modulus.max(1), self.modulus) != 1 && self.modulus > 1 {
            return None;
        }
        self.components
            .iter()
            .map(|c| c.dlog[(n % c.pk) as usize])
            .collect()
    }
}

/// A Dirichlet character modulo `modulus`.
///
/// Values are stored as indices `j` meaning `e^{2πi j / exponent}`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CharacterLabel", into = "CharacterLabel")]
pub struct DirichletCharacter {
    modulus: u64,
    exponents: Vec<u64>,
    conductor: u64,
    parity: Parity,
    group: Arc<UnitGroup>,
    table: Arc<Vec<Option<u64>>>,
}

#[derive(Serialize, Deserialize)]
struct CharacterLabel {
    modulus: u64,
    exponents: Vec<u64>,
}

impl TryFrom<CharacterLabel> for DirichletCharacter {
    type Error = Error;
    fn try_from(l: CharacterLabel) -> Result<Self> {
        DirichletCharacter::from_exponents(l.modulus, &l.exponents)
    }
}

impl From<DirichletCharacter> for CharacterLabel {
    fn from(c: DirichletCharacter) -> Self {
        CharacterLabel {
            modulus: c.modulus,
            exponents: c.exponents,
        }
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl std::hash::Hash for DirichletCharacter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.exponents.hash(state);
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ[{}; {}]", self.modulus, self.label())
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl DirichletCharacter {
    fn build(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Self {
        let q = group.modulus;
        let e = group.exponent;
        let orders = group.orders();
        let table: Vec<Option<u64>> = (0..q.max(1))
            .map(|n| {
                group.coordinates(n).map(|coords| {
                    coords
                        .iter()
                        .zip(&exponents)
                        .zip(&orders)
                        .map(|((l, x), o)| l * x % o * (e / o))
                        .sum::<u64>()
                        % e
                })
            })
            .collect();
        let mut chi = Self {
            modulus: q,
            exponents,
            conductor: q,
            parity: Parity::Even,
            group,
            table: Arc::new(table),
        };
        chi.parity = if q > 2 && chi.table[(q - 1) as usize] != Some(0) {
            Parity::Odd
        } else {
            Parity::Even
        };
        chi.conductor = chi.compute_conductor();
        chi
    }

    fn compute_conductor(&self) -> u64 {
        let q = self.modulus;
        let mut divs = crate::arith::divisors(q);
        divs.sort_unstable();
        for d in divs {
            let trivial = (0..q / d).all(|m| {
                let n = (1 + m * d) % q.max(1);
                match self.table[n as usize] {
                    Some(v) => v == 0,
                    None => true,
                }
            });
            if trivial {
                return d;
            }
        }
        q
    }

    /// The character with the given exponent vector on the generators
    /// returned by [`UnitGroup::generators`].
    pub fn from_exponents(q: u64, exponents: &[u64]) -> Result<Self> {
        let group = Arc::new(UnitGroup::new(q)?);
        let orders = group.orders();
        if exponents.len() != orders.len() || exponents.iter().zip(&orders).any(|(e, o)| e >= o) {
            return Err(Error::Domain(format!(
                "exponents {exponents:?} invalid for modulus {q} (orders {orders:?})"
            )));
        }
        Ok(Self::build(group, exponents.to_vec()))
    }

    pub fn principal(q: u64) -> Result<Self> {
        let n = UnitGroup::new(q)?.components.len();
        Self::from_exponents(q, &vec![0; n])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// `δ(χ)`: 1 for the principal character, else 0.
    pub fn delta(&self) -> u32 {
        self.is_principal() as u32
    }

    /// `(a(χ), b(χ))`.
    pub fn gamma_exponents(&self) -> (u32, u32) {
        match self.parity {
            Parity::Even => (1, 0),
            Parity::Odd => (0, 1),
        }
    }

    /// True when every value is real.
    pub fn is_real(&self) -> bool {
        self.exponents
            .iter()
            .zip(self.group.orders())
            .all(|(e, o)| (2 * e) % o == 0)
    }

    /// Exponent vector rendered as `e1;e2;…`.
    pub fn label(&self) -> String {
        self.exponents
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn group(&self) -> &UnitGroup {
        &self.group
    }

    /// `χ(n)` as an index `j` of `e^{2πi j / exponent}`, `None` off the units.
    pub fn value_index(&self, n: u64) -> Option<u64> {
        self.table[(n % self.modulus) as usize]
    }

    pub fn value(&self, n: u64) -> Complex64 {
        match self.value_index(n) {
            None => Complex64::new(0.0, 0.0),
            Some(j) => root_of_unity(j, self.group.exponent),
        }
    }

    /// The complex conjugate character.
    pub fn conj(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(self.group.orders())
            .map(|(&e, o)| (o - e) % o)
            .collect();
        Self::build(self.group.clone(), exps)
    }

    /// The product character; both factors must have the same modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::Domain(format!(
                "cannot multiply {self} by {other}: moduli differ"
            )));
        }
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(self.group.orders())
            .map(|((a, b), o)| (a + b) % o)
            .collect();
        Ok(Self::build(self.group.clone(), exps))
    }

    /// The primitive character modulo the conductor inducing `self`.
    pub fn primitive(&self) -> Result<Self> {
        if self.is_primitive() {
            return Ok(self.clone());
        }
        let f = self.conductor;
        let group = Arc::new(UnitGroup::new(f)?);
        let e = self.group.exponent;
        let mut exps = Vec::with_capacity(group.components.len());
        for c in &group.components {
            // A residue ≡ g (mod f) coprime to q.
            let n = (0..self.modulus / f)
                .map(|m| c.lifted + m * f)
                .find(|&n| gcd(n, self.modulus) == 1)
                .expect("every unit mod f lifts to a unit mod q");
            let j = self.value_index(n).expect("lift is a unit");
            let scaled = j * c.order;
            if scaled % e != 0 {
                return Err(Error::Domain(format!(
                    "inconsistent induced value for {self}"
                )));
            }
            exps.push(scaled / e);
        }
        Ok(Self::build(group, exps))
    }
}

fn root_of_unity(j: u64, n: u64) -> Complex64 {
    if j == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * j == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * j == n {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * j == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    let theta = std::f64::consts::TAU * j as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// All `φ(q)` characters modulo `q`, ordered lexicographically by exponent vector.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(UnitGroup::new(q)?);
    let orders = group.orders();
    let mut out = Vec::new();
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::build(group.clone(), exps.clone()));
        let mut i = orders.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// The primitive characters modulo `q`.
pub fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(q)?
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;
    use proptest::prelude::*;

    #[test]
    fn small_moduli() {
        let one = enumerate_characters(1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].is_principal() && one[0].conductor() == 1);
        assert_eq!(one[0].value(5), Complex64::new(1.0, 0.0));

        let four = enumerate_characters(4).unwrap();
        assert_eq!(four.len(), 2);
        assert_eq!((four[0].conductor(), four[0].parity()), (1, Parity::Even));
        assert_eq!((four[1].conductor(), four[1].parity()), (4, Parity::Odd));
        assert_eq!(four[1].value(3), Complex64::new(-1.0, 0.0));

        let five = enumerate_characters(5).unwrap();
        let conductors: Vec<u64> = five.iter().map(|c| c.conductor()).collect();
        let parities: Vec<Parity> = five.iter().map(|c| c.parity()).collect();
        assert_eq!(conductors, vec![1, 5, 5, 5]);
        assert_eq!(
            parities,
            vec![Parity::Even, Parity::Odd, Parity::Even, Parity::Odd]
        );
        let mut sorted = parities.clone();
        sorted.sort_by_key(|p| *p == Parity::Odd);
        assert_eq!(
            sorted,
            vec![Parity::Even, Parity::Even, Parity::Odd, Parity::Odd]
        );
    }

    #[test]
    fn mod_eight_uses_two_generators() {
        let g = UnitGroup::new(8).unwrap();
        assert_eq!(g.orders(), vec![2, 2]);
        assert_eq!(g.generators(), vec![7, 5]);
        let chars = enumerate_characters(8).unwrap();
        let conductors: Vec<u64> = chars.iter().map(|c| c.conductor()).collect();
        assert_eq!(conductors, vec![1, 8, 4, 8]);
        let g = UnitGroup::new(12).unwrap();
        assert_eq!(g.orders(), vec![2, 2]);
    }

    #[test]
    fn imprimitive_reduces_to_primitive() {
        for q in [6u64, 9, 12, 15, 16, 20, 21, 24] {
            for chi in enumerate_characters(q).unwrap() {
                let p = chi.primitive().unwrap();
                assert_eq!(p.modulus(), chi.conductor());
                assert!(p.is_primitive());
                for n in 1..3 * q {
                    if gcd(n, q) == 1 {
                        assert!((p.value(n) - chi.value(n)).norm() < 1e-14, "{chi} at {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn characters_are_distinct_and_orthogonal() {
        for q in [7u64, 16, 20, 45] {
            let chars = enumerate_characters(q).unwrap();
            assert_eq!(chars.len() as u64, euler_phi(q));
            for (i, a) in chars.iter().enumerate() {
                for (j, b) in chars.iter().enumerate() {
                    let s: Complex64 = (1..=q).map(|n| a.value(n) * b.value(n).conj()).sum();
                    let expect = if i == j { euler_phi(q) as f64 } else { 0.0 };
                    assert!((s - expect).norm() < 1e-9, "q={q} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn serde_by_label() {
        let chi = enumerate_characters(15).unwrap()[5].clone();
        let text = serde_json::to_string(&chi).unwrap();
        let back: DirichletCharacter = serde_json::from_str(&text).unwrap();
        assert_eq!(back, chi);
        assert_eq!(back.conductor(), chi.conductor());
    }

    proptest! {
        #[test]
        fn character_invariants(q in 1u64..200, n in 0u64..10_000, m in 0u64..10_000, pick in any::<prop::sample::Index>()) {
            let chars = enumerate_characters(q).unwrap();
            let chi = &chars[pick.index(chars.len())];
            let e = chi.group().exponent();
            let v = chi.value(n);
            if gcd(n, q) == 1 {
                prop_assert!((v.norm() - 1.0).abs() < 1e-12);
                let j = chi.value_index(n).unwrap();
                prop_assert!(j < e);
                prop_assert!((v.powu(e as u32) - 1.0).norm() < 1e-9);
            } else {
                prop_assert_eq!(v, Complex64::new(0.0, 0.0));
            }
            prop_assert!((chi.value(n * m) - chi.value(n) * chi.value(m)).norm() < 1e-12);
            prop_assert_eq!(q % chi.conductor(), 0);
            prop_assert_eq!(chi.is_principal(), chi.exponents().iter().all(|&x| x == 0));
            let minus = chi.value(if q == 1 { 1 } else { q - 1 });
            let sign = match chi.parity() { Parity::Even => 1.0, Parity::Odd => -1.0 };
            prop_assert!((minus - sign).norm() < 1e-12);
            let (a, b) = chi.gamma_exponents();
            prop_assert_eq!(a + b, 1);
            prop_assert_eq!(b == 1, chi.parity() == Parity::Odd);
            prop_assert_eq!(chi.is_principal(), chi.conductor() == 1);
        }
    }

    #[test]
    fn products_multiply_values() {
        for q in [1u64, 8, 12, 15] {
            let chars = enumerate_characters(q).unwrap();
            for a in &chars {
                for b in &chars {
                    let c = a.mul(b).unwrap();
                    for n in 0..q {
                        assert!((c.value(n) - a.value(n) * b.value(n)).norm() < 1e-12);
                    }
                }
                assert!(a.mul(&a.conj()).unwrap().is_principal());
            }
        }
        let a = DirichletCharacter::principal(3).unwrap();
        assert!(a.mul(&DirichletCharacter::principal(4).unwrap()).is_err());
    }
}
