//! The integral group ring of a finitely presented group, with elements
//! written over freely reduced words.
//!
//! Equality of group elements is never decided beyond free reduction, so
//! two elements can be equal in Z[pi] while comparing unequal here. Every
//! consumer evaluates through a homomorphism before comparing.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::Word;
use crate::exactnum::Ring;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn from_terms<I: IntoIterator<Item = (i64, Word)>>(it: I) -> Self {
        let mut terms = BTreeMap::new();
        for (c, w) in it {
            *terms.entry(w).or_insert(0) += c;
        }
        terms.retain(|_, c| *c != 0);
        GroupRingElement { terms }
    }

    pub fn word(w: Word) -> Self {
        Self::from_terms([(1, w)])
    }

    /// `w - 1`
    pub fn word_minus_one(w: Word) -> Self {
        Self::from_terms([(1, w), (-1, Word::empty())])
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Word)> {
        self.terms.iter().map(|(w, c)| (*c, w))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c * k, w.clone())))
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (*c, f(w))))
    }

    /// Sum of coefficients (the augmentation).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(Word::max_generator).max()
    }

    /// Involution g -> g^-1 extended linearly.
    pub fn conjugate(&self) -> Self {
        self.map_words(Word::inverse)
    }
}

impl Ring for GroupRingElement {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::word(Word::empty())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(w, c)| (*c, w.clone())),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.push((c1 * c2, w1.concat(w2)));
            }
        }
        Self::from_terms(out)
    }
    fn neg(&self) -> Self {
        self.scale(-1)
    }
    fn from_i64(v: i64) -> Self {
        Self::from_terms([(v, Word::empty())])
    }
}

/// Left Fox derivative d(w)/d(x_j):
/// `d(uv) = d(u) + u d(v)`, `d(x_j) = 1`, `d(x_j^-1) = -x_j^-1`.
pub fn fox_derivative(w: &Word, generator: usize) -> GroupRingElement {
    let letters = w.letters();
    let mut out = Vec::new();
    for (m, l) in letters.iter().enumerate() {
        if l.generator != generator {
            continue;
        }
        if l.inverse {
            out.push((-1, Word::from_letters(&letters[..=m])));
        } else {
            out.push((1, Word::from_letters(&letters[..m])));
        }
    }
    GroupRingElement::from_terms(out)
}

/// Right Fox derivative, characterized by `w - 1 = sum_j (x_j - 1) D_j(w)`:
/// `D(uv) = D(u) v + D(v)`, `D(x_j) = 1`, `D(x_j^-1) = -x_j^-1`.
pub fn right_fox_derivative(w: &Word, generator: usize) -> GroupRingElement {
    let letters = w.letters();
    let mut out = Vec::new();
    for (m, l) in letters.iter().enumerate() {
        if l.generator != generator {
            continue;
        }
        if l.inverse {
            out.push((-1, Word::from_letters(&letters[m..])));
        } else {
            out.push((1, Word::from_letters(&letters[m + 1..])));
        }
    }
    GroupRingElement::from_terms(out)
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}*({w})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// JSON: list of `[coeff, word]` pairs.
impl Serialize for GroupRingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i64, &Word)> = self.terms().collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupRingElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<(i64, Word)>::deserialize(d)?;
        Ok(GroupRingElement::from_terms(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::word::Letter;
    use proptest::prelude::*;

    fn w(codes: &[i64]) -> Word {
        Word::from_signed(codes).unwrap()
    }

    #[test]
    fn fox_on_power() {
        // d(x^3)/dx = 1 + x + x^2
        let d = fox_derivative(&w(&[1, 1, 1]), 0);
        assert_eq!(
            d,
            GroupRingElement::from_terms([(1, w(&[])), (1, w(&[1])), (1, w(&[1, 1]))])
        );
        assert_eq!(right_fox_derivative(&w(&[1, 1, 1]), 0), d);
    }

    #[test]
    fn fox_on_trefoil_relator() {
        let r = w(&[1, 2, 1, -2, -1, -2]);
        let da = fox_derivative(&r, 0);
        let expect = GroupRingElement::from_terms([
            (1, w(&[])),
            (1, w(&[1, 2])),
            (-1, w(&[1, 2, 1, -2, -1])),
        ]);
        assert_eq!(da, expect);
    }

    #[test]
    fn fundamental_formulas_hold_in_free_group() {
        let r = w(&[1, 2, 1, -2, -1, -2, 3, -1]);
        let one = GroupRingElement::one();
        let lhs = GroupRingElement::word(r.clone()).sub(&one);
        let mut left = GroupRingElement::zero();
        let mut right = GroupRingElement::zero();
        for g in 0..3 {
            let xm1 = GroupRingElement::word_minus_one(Word::generator(g));
            left = left.add(&fox_derivative(&r, g).mul(&xm1));
            right = right.add(&xm1.mul(&right_fox_derivative(&r, g)));
        }
        assert_eq!(left, lhs);
        assert_eq!(right, lhs);
    }

    fn arb_elem() -> impl Strategy<Value = GroupRingElement> {
        let word = prop::collection::vec((0usize..2, any::<bool>()), 0..=4).prop_map(|ls| {
            Word::from_letters(
                &ls.into_iter()
                    .map(|(g, i)| Letter::new(g, i))
                    .collect::<Vec<_>>(),
            )
        });
        prop::collection::vec((-3i64..=3, word), 0..=4).prop_map(GroupRingElement::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }
    }
}
