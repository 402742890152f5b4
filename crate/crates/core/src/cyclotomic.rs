//! Exact arithmetic in `Z[ζ_e]`, stored in the power basis `1, ζ, …, ζ^{φ(e)-1}`
//! reduced modulo the cyclotomic polynomial `Φ_e`.
//!
//! The representation is canonical, so zero testing and equality are
//! coefficient comparisons.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::{Serialize, Serializer};

use crate::numbers::{mul_mod, pow_mod};

/// Reduction data for one conductor.
pub struct CyclotomicRing {
    conductor: u64,
    /// `Φ_e` coefficients, constant term first, monic.
    modulus: Vec<i64>,
    /// Canonical form of `ζ^k` for `k` in `0..e`.
    powers: Vec<Vec<i64>>,
}

static RINGS: Lazy<Mutex<HashMap<u64, Arc<CyclotomicRing>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// `Φ_n` with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 = Π_{d | n} Φ_d(x)
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            poly = exact_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = rem.len() - dd;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl CyclotomicRing {
    fn build(conductor: u64) -> Self {
        let modulus = cyclotomic_polynomial(conductor);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        if phi == 0 {
            unreachable!("Φ_e has positive degree");
        }
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * modulus[j];
                }
            }
        }
        CyclotomicRing {
            conductor,
            modulus,
            powers,
        }
    }

    /// Shared reduction data for conductor `e`.
    pub fn get(conductor: u64) -> Arc<CyclotomicRing> {
        assert!(conductor >= 1, "conductor must be positive");
        let mut map = RINGS.lock().expect("cyclotomic ring cache poisoned");
        map.entry(conductor)
            .or_insert_with(|| Arc::new(CyclotomicRing::build(conductor)))
            .clone()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `φ(e)`, the dimension of the power basis.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    fn reduce(&self, mut poly: Vec<i64>) -> Vec<i64> {
        let phi = self.degree();
        for k in (phi..poly.len()).rev() {
            let c = poly[k];
            if c != 0 {
                for j in 0..phi {
                    poly[k - phi + j] -= c * self.modulus[j];
                }
                poly[k] = 0;
            }
        }
        poly.resize(phi, 0);
        poly
    }
}

/// An element of `Z[ζ_e]` in canonical power-basis form.
#[derive(Clone)]
pub struct Cyclotomic {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        let ring = CyclotomicRing::get(conductor);
        let coeffs = vec![0; ring.degree()];
        Cyclotomic { ring, coeffs }
    }

    pub fn from_int(conductor: u64, n: i64) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = n;
        z
    }

    /// `ζ_e^k`.
    pub fn root_power(conductor: u64, k: i64) -> Self {
        let ring = CyclotomicRing::get(conductor);
        let k = k.rem_euclid(conductor as i64) as usize;
        let coeffs = ring.powers[k].clone();
        Cyclotomic { ring, coeffs }
    }

    /// `Σ_k mult[k] · ζ_e^k` with `mult` indexed by exponent `0..e`.
    pub fn from_exponents(conductor: u64, mult: &[i64]) -> Self {
        let mut z = Self::zero(conductor);
        for (k, &m) in mult.iter().enumerate() {
            if m != 0 {
                let pk = &z.ring.powers[k % conductor as usize];
                for (c, &p) in z.coeffs.iter_mut().zip(pk) {
                    *c += m * p;
                }
            }
        }
        z
    }

    /// Builds a value from raw power-basis coefficients (any length),
    /// reducing modulo `Φ_e`.
    pub fn from_coefficients(conductor: u64, coeffs: Vec<i64>) -> Self {
        let ring = CyclotomicRing::get(conductor);
        let coeffs = ring.reduce(coeffs);
        Cyclotomic { ring, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.ring.conductor
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Complex conjugate: `ζ ↦ ζ^{e-1}`.
    pub fn conj(&self) -> Self {
        let e = self.ring.conductor as usize;
        let mut out = vec![0i64; self.coeffs.len()];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let pk = &self.ring.powers[(e - j) % e];
                for (o, &p) in out.iter_mut().zip(pk) {
                    *o += c * p;
                }
            }
        }
        Cyclotomic {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclotomic {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Image under `ζ_e ↦ λ` in `F_p`, where `λ` has multiplicative order `e`.
    pub fn reduce_mod(&self, lambda: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        let mut pw = 1u64;
        for &c in &self.coeffs {
            let cm = c.rem_euclid(p as i64) as u64;
            acc = (acc + mul_mod(cm, pw, p)) % p;
            pw = mul_mod(pw, lambda, p);
        }
        acc
    }

    /// Numerical value `Σ c_j · exp(2πij/e)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.ring.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, &c)| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / e;
                (re + c as f64 * t.cos(), im + c as f64 * t.sin())
            })
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.ring.conductor, other.ring.conductor,
            "cyclotomic values with different conductors"
        );
    }
}

/// Image of `ζ_e^k` modulo `p`, i.e. `λ^k`.
pub fn root_residue(lambda: u64, k: u64, p: u64) -> u64 {
    pow_mod(lambda, k, p)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.ring.conductor == other.ring.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(conductor, coefficients)`.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ring.conductor, &self.coeffs).cmp(&(other.ring.conductor, &other.coeffs))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        Cyclotomic {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        Cyclotomic {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        let n = self.coeffs.len();
        let mut prod = vec![0i64; 2 * n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic {
            ring: self.ring.clone(),
            coeffs: self.ring.reduce(prod),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `"a0 + a1*z{e}^1 + ..."`, zero terms omitted, integers bare.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z{}^{j}", self.ring.conductor)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn phi5_relation_is_zero() {
        let s = (0..5).fold(Cyclotomic::zero(5), |acc, k| &acc + &Cyclotomic::root_power(5, k));
        assert!(s.is_zero());
    }

    #[test]
    fn one_plus_zeta3() {
        let v = &Cyclotomic::from_int(3, 1) + &Cyclotomic::root_power(3, 1);
        assert!(!v.is_zero());
        assert_eq!(v, -&Cyclotomic::root_power(3, 2));
    }

    #[test]
    fn display_format() {
        assert_eq!(Cyclotomic::from_int(12, -1).to_string(), "-1");
        assert_eq!(Cyclotomic::zero(7).to_string(), "0");
        let v = &Cyclotomic::from_int(12, 2) + &Cyclotomic::root_power(12, 3).scale(-1);
        assert_eq!(v.to_string(), "2 + -1*z12^3");
    }

    #[test]
    fn conjugation_and_norm() {
        let z = Cyclotomic::root_power(7, 3);
        assert_eq!(&z * &z.conj(), Cyclotomic::from_int(7, 1));
        // |1 + ζ_4|² = 2
        let w = &Cyclotomic::from_int(4, 1) + &Cyclotomic::root_power(4, 1);
        assert_eq!((&w * &w.conj()).as_integer(), Some(2));
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism() {
        // λ = 3 has order 12 mod 13? 3^3 = 1, so use 2 (primitive root of 13)
        let p = 13;
        let lambda = pow_mod(2, 1, p);
        let a = Cyclotomic::from_exponents(12, &[1, 0, 2, 0, 0, 3, 0, 0, 0, 0, 0, 1]);
        let b = Cyclotomic::root_power(12, 5);
        let ab = &a * &b;
        assert_eq!(
            ab.reduce_mod(lambda, p),
            mul_mod(a.reduce_mod(lambda, p), b.reduce_mod(lambda, p), p)
        );
    }

    fn element(e: u64) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-3i64..=3, e as usize)
            .prop_map(move |m| Cyclotomic::from_exponents(e, &m))
    }

    proptest! {
        #[test]
        fn ring_laws(a in element(15), b in element(15), c in element(15)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn numeric_value_agrees(a in element(12), b in element(12)) {
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (pr, pi) = (&a * &b).to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9);
            prop_assert_eq!(a.is_zero(), ar.abs() < 1e-9 && ai.abs() < 1e-9);
        }
    }
}
