//! Elements of cyclotomic fields Q(zeta_n) in the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)`, reduced modulo the n-th cyclotomic
//! polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term
/// first. Cached per process.
pub fn cyclotomic_coeffs(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    // t^n - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let divisor = cyclotomic_coeffs(d);
        poly = exact_monic_div(&poly, &divisor);
    }
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quot
}

/// Reduces a coefficient vector modulo Phi_n, returning exactly phi(n)
/// coefficients.
fn reduce_mod_phi(mut poly: Vec<BigInt>, n: u64) -> Vec<BigInt> {
    let phi = cyclotomic_coeffs(n);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for k in (deg..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            let shift = k - deg;
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if *pj != 0 {
                    poly[shift + j] -= &c * *pj;
                }
            }
        }
        poly.truncate(deg);
    }
    poly.resize(deg, BigInt::zero());
    poly
}

/// An exact element of Q(zeta_n).
///
/// Stored as integer numerators over one positive common denominator with
/// `gcd(numerators, denominator) = 1`, so equal values at equal conductor
/// are structurally equal.
#[derive(Clone)]
pub struct CycloNumber {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn from_parts(conductor: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycloNumber {
            conductor,
            num,
            den,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Ring::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn from_rational(conductor: u64, q: &Rational) -> Self {
        assert!(conductor >= 1);
        let phi = euler_phi(conductor) as usize;
        let mut num = vec![BigInt::zero(); phi];
        num[0] = q.numer().clone();
        Self::from_parts(conductor, num, q.denom().clone())
    }

    pub fn from_int(conductor: u64, v: i64) -> Self {
        Self::from_rational(conductor, &Rational::from_integer(BigInt::from(v)))
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        Self::from_parts(n, reduce_mod_phi(poly, n), BigInt::one())
    }

    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds from explicit power-basis coefficients (`coeffs.len()` may be
    /// any length; the vector is reduced modulo Phi_n).
    pub fn from_coeffs(conductor: u64, coeffs: &[Rational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let poly = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(
            conductor,
            reduce_mod_phi(poly, conductor),
            den,
        ))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical reduced coefficients, length phi(conductor).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Ring::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Same element expressed at conductor `m`.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch {
                from: self.conductor,
                to: m,
            });
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_parts(
            m,
            reduce_mod_phi(poly, m),
            self.den.clone(),
        ))
    }

    fn embed_unchecked(&self, m: u64) -> Self {
        self.embed(m).expect("conductor divides lcm")
    }

    fn aligned(&self, other: &Self) -> (std::borrow::Cow<'_, Self>, Self, u64) {
        if self.conductor == other.conductor {
            return (
                std::borrow::Cow::Borrowed(self),
                other.clone(),
                self.conductor,
            );
        }
        let m = lcm(self.conductor, other.conductor);
        (
            std::borrow::Cow::Owned(self.embed_unchecked(m)),
            other.embed_unchecked(m),
            m,
        )
    }

    /// Applies the Galois automorphism zeta -> zeta^a (gcd(a, n) = 1).
    pub fn galois(&self, a: u64) -> Self {
        let n = self.conductor;
        let mut poly = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let e = ((i as u64 * a) % n) as usize;
            poly[e] += c;
        }
        Self::from_parts(n, reduce_mod_phi(poly, n), self.den.clone())
    }

    /// Complex conjugation, zeta -> zeta^(n-1).
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    pub fn invert(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.conductor;
        if self.is_rational() {
            let q = self.to_rational().unwrap();
            return Some(Self::from_rational(n, &q.recip()));
        }
        // x^{-1} = (product of the other conjugates) / norm(x).
        let mut others = Self::from_int(n, 1);
        for a in 2..n {
            if a.gcd(&n) == 1 {
                others = Ring::mul(&others, &self.galois(a));
            }
        }
        let norm = Ring::mul(&others, self)
            .to_rational()
            .expect("field norm is rational");
        let inv_norm = Self::from_rational(n, &norm.recip());
        Some(Ring::mul(&others, &inv_norm))
    }

    /// Exact hashing key at a fixed conductor (used for finite closures).
    pub fn key_at(&self, m: u64) -> Result<(Vec<BigInt>, BigInt)> {
        let e = self.embed(m)?;
        Ok((e.num, e.den))
    }
}

impl Ring for CycloNumber {
    fn zero() -> Self {
        Self::from_int(1, 0)
    }
    fn one() -> Self {
        Self::from_int(1, 1)
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Ring::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        let (a, b, m) = self.aligned(rhs);
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return Self::from_parts(m, num, a.den.clone());
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Self::from_parts(m, num, &a.den * &b.den)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Ring::add(self, &Ring::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        let (a, b, m) = self.aligned(rhs);
        if a.num.len() == 1 {
            let num = vec![&a.num[0] * &b.num[0]];
            return Self::from_parts(m, num, &a.den * &b.den);
        }
        let mut poly = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_parts(m, reduce_mod_phi(poly, m), &a.den * &b.den)
    }
    fn neg(&self) -> Self {
        CycloNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
    fn from_i64(v: i64) -> Self {
        Self::from_int(1, v)
    }
}

impl Field for CycloNumber {
    fn inv(&self) -> Option<Self> {
        self.invert()
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b, _) = self.aligned(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})z{}", self.conductor),
                _ => format!("({c})z{}^{i}", self.conductor),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            conductor: self.conductor,
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CycloNumber::from_coeffs(repr.conductor, &coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, ratio};
    use proptest::prelude::*;

    fn cube(x: &CycloNumber) -> CycloNumber {
        Ring::mul(&Ring::mul(x, x), x)
    }

    #[test]
    fn phi_values() {
        let phis: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(phis, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_coeffs(2), vec![1, 1]);
        assert_eq!(*cyclotomic_coeffs(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn embed_rational_and_roots() {
        let three = CycloNumber::from_int(1, 3);
        assert_eq!(three.embed(4).unwrap().coeffs(), vec![rat(3), rat(0)]);
        let minus_one = CycloNumber::zeta(2).embed(4).unwrap();
        assert_eq!(minus_one.coeffs(), vec![rat(-1), rat(0)]);
        let z3 = CycloNumber::zeta(3).embed(6).unwrap();
        assert_eq!(z3.conductor(), 6);
        assert_eq!(cube(&z3), CycloNumber::from_int(6, 1));
        assert_ne!(z3, CycloNumber::from_int(6, 1));
        assert!(CycloNumber::zeta(4).embed(6).is_err());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(
            CycloNumber::from_int(1, 5).conjugate(),
            CycloNumber::from_int(1, 5)
        );
        let i = CycloNumber::zeta(4);
        assert_eq!(i.conjugate(), Ring::neg(&i));
        let x = Ring::add(&CycloNumber::zeta(5), &CycloNumber::zeta_pow(5, 2));
        let expected = Ring::add(&CycloNumber::zeta_pow(5, 4), &CycloNumber::zeta_pow(5, 3));
        assert_eq!(x.conjugate(), expected);
        // x + conj(x) is fixed by conjugation, i.e. real.
        let s = Ring::add(&x, &x.conjugate());
        assert_eq!(s.conjugate(), s);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        // zeta_4 * zeta_6 = zeta_12^5
        let p = Ring::mul(&CycloNumber::zeta(4), &CycloNumber::zeta(6));
        assert_eq!(p, CycloNumber::zeta_pow(12, 5));
        // zeta_3 + zeta_3^2 = -1
        let s = Ring::add(&CycloNumber::zeta(3), &CycloNumber::zeta_pow(3, 2));
        assert_eq!(s, CycloNumber::from_int(7, -1));
    }

    #[test]
    fn inverse_of_half_plus_zeta() {
        let x = CycloNumber::from_coeffs(5, &[ratio(1, 2), rat(1), rat(0), rat(3)]).unwrap();
        let y = x.invert().unwrap();
        assert_eq!(Ring::mul(&x, &y), CycloNumber::one());
        assert!(CycloNumber::from_int(9, 0).invert().is_none());
    }

    #[test]
    fn serde_shape() {
        let x = CycloNumber::zeta(4);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"conductor":4,"coeffs":["0/1","1/1"]}"#);
        let back: CycloNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    fn arb_cyclo() -> impl Strategy<Value = CycloNumber> {
        (1u64..=12).prop_flat_map(|n| {
            let phi = euler_phi(n) as usize;
            prop::collection::vec((-4i64..=4, 1i64..=3), phi).prop_map(move |cs| {
                let coeffs: Vec<Rational> = cs.iter().map(|(a, b)| ratio(*a, *b)).collect();
                CycloNumber::from_coeffs(n, &coeffs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn inverse_is_exact(x in arb_cyclo()) {
            prop_assume!(!Ring::is_zero(&x));
            let y = x.invert().unwrap();
            prop_assert_eq!(Ring::mul(&x, &y), CycloNumber::one());
        }

        #[test]
        fn conjugation_is_involutive_automorphism(x in arb_cyclo(), y in arb_cyclo()) {
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert_eq!(Ring::add(&x, &y).conjugate(), Ring::add(&x.conjugate(), &y.conjugate()));
            prop_assert_eq!(Ring::mul(&x, &y).conjugate(), Ring::mul(&x.conjugate(), &y.conjugate()));
        }

        #[test]
        fn coefficient_length_is_phi(x in arb_cyclo()) {
            prop_assert_eq!(x.coeffs().len() as u64, euler_phi(x.conductor()));
        }
    }
}
