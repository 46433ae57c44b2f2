//! Laurent polynomials over Q, the PID Q[t, 1/t].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::cyclotomic_coeffs;
use super::rational::{format_rational, parse_rational, rat, Rational};
use super::ring::{EuclideanDomain, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in it {
            let slot: &mut Rational = terms.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    /// Integer coefficients, constant term first.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as i64, rat(*c))))
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::from_terms([(e, c)])
    }

    /// t^e
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest exponent (t-adic valuation); `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// max exponent minus min exponent; the Euclidean size on Q[t, 1/t].
    pub fn span(&self) -> Option<u64> {
        Some((self.max_exponent()? - self.valuation()?) as u64)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Canonical associate: divided by its leading coefficient and by
    /// t^valuation, so it is a monic polynomial with nonzero constant term.
    pub fn monic_normalized(&self) -> Self {
        match (self.valuation(), self.leading_coeff()) {
            (Some(v), Some(lc)) => self.shift(-v).scale(&lc.recip()),
            _ => Self::default(),
        }
    }

    /// Units of Q[t, 1/t] are exactly c * t^k with c != 0.
    pub fn is_unit_laurent(&self) -> bool {
        self.terms.len() == 1
    }

    /// t -> t^{-1}
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Dense coefficients of `self * t^-valuation`, constant term first.
    fn dense_shifted(&self) -> (i64, Vec<Rational>) {
        let v = self.valuation().unwrap_or(0);
        let top = self.max_exponent().unwrap_or(0);
        let mut out = vec![Rational::zero(); (top - v + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - v) as usize] = c.clone();
        }
        (v, out)
    }

    fn from_dense(shift: i64, coeffs: Vec<Rational>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c)),
        )
    }

    /// Evaluates at an exact scalar given as powers of some fixed element.
    pub fn eval_with<T: Ring>(&self, pow: impl Fn(i64) -> T, lift: impl Fn(&Rational) -> T) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, (e, c)| acc.add(&lift(c).mul(&pow(*e))))
    }
}

/// Phi_n, monic of degree phi(n).
pub fn cyclotomic_polynomial(n: u64) -> LaurentPoly {
    LaurentPoly::from_int_coeffs(&cyclotomic_coeffs(n))
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::t_pow(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let slot = terms.entry(*e).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *terms.entry(e1 + e2).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(rat(v))
    }
}

impl EuclideanDomain for LaurentPoly {
    type Norm = u64;

    fn norm(&self) -> u64 {
        self.span().expect("norm of zero")
    }

    /// Division in Q[t, 1/t]: both sides are shifted into Q[t] with nonzero
    /// constant term of the divisor, divided there, and shifted back.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (vd, dd) = d.dense_shifted();
        let (va, mut rem) = self.dense_shifted();
        let dn = dd.len() - 1;
        let lead_inv = dd[dn].recip();
        if rem.len() <= dn {
            return (Self::zero(), self.clone());
        }
        let qlen = rem.len() - dn;
        let mut quot = vec![Rational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dn] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in dd.iter().enumerate() {
                let delta = &c * dj;
                rem[k + j] -= delta;
            }
            quot[k] = c;
        }
        rem.truncate(dn);
        (Self::from_dense(va - vd, quot), Self::from_dense(va, rem))
    }

    fn normalizing_unit(&self) -> Self {
        match (self.valuation(), self.leading_coeff()) {
            (Some(v), Some(lc)) => Self::monomial(lc.recip(), -v),
            _ => Self::one(),
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}t"),
                _ => format!("{c}t^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    terms: BTreeMap<String, String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.to_string(), format_rational(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let mut terms = Vec::new();
        for (e, c) in repr.terms {
            let e: i64 = e.parse().map_err(serde::de::Error::custom)?;
            let c = parse_rational(&c).map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::ratio;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(c)
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_polynomial(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), p(&[1, 1]));
        // (t^6 - 1) / ((t - 1)(t + 1)(t^2 + t + 1)) by hand.
        assert_eq!(cyclotomic_polynomial(6), p(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_products_give_t_n_minus_one() {
        for n in 1..=30u64 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(LaurentPoly::one(), |acc, d| {
                    acc.mul(&cyclotomic_polynomial(d))
                });
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, p(&expect), "n = {n}");
        }
    }

    #[test]
    fn normalization_strips_units() {
        let x = p(&[0, 0, 4, -2]).shift(-5); // (-2t^3 + 4t^2) t^-5
        assert_eq!(x.monic_normalized(), p(&[-2, 1]));
        assert!(LaurentPoly::monomial(ratio(2, 3), -4).is_unit_laurent());
        let u = x.normalizing_unit();
        assert_eq!(u.mul(&x), p(&[-2, 1]));
    }

    #[test]
    fn laurent_division() {
        let a = p(&[1, 0, 0, 1]).shift(-2); // t + t^-2
        let d = p(&[1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.is_zero() || r.norm() < d.norm());
        // t^3 + 1 is divisible by t + 1
        assert!(d.divides(&p(&[1, 0, 0, 1])));
        assert!(!p(&[1, -1, 1]).divides(&p(&[1, 1])));
        assert!(p(&[0, 2]).is_unit());
    }

    #[test]
    fn serde_shape() {
        let x = p(&[-1, 1]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"terms":{"0":"-1/1","1":"1/1"}}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), x);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (prop::collection::vec(-3i64..=3, 0..5), -2i64..=2)
            .prop_map(|(c, s)| LaurentPoly::from_int_coeffs(&c).shift(s))
    }

    proptest! {
        #[test]
        fn euclidean_division_invariant(a in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            let (q, r) = a.div_rem(&d);
            prop_assert_eq!(q.mul(&d).add(&r), a);
            prop_assert!(r.is_zero() || r.norm() < d.norm());
        }
    }
}
