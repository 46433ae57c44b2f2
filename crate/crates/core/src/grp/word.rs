use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the free group on the generators.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(letters: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        free_reduce(letters)
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn generator_inv(g: usize) -> Self {
        Word(vec![Letter::new(g, true)])
    }

    /// Parses the signed 1-based encoding, e.g. `[1, -2, 1]` = x1 x2^-1 x1.
    pub fn from_signed(codes: &[i64]) -> Result<Self> {
        let letters = codes
            .iter()
            .map(|&c| {
                if c == 0 {
                    Err(Error::Parse("generator code 0 in word".into()))
                } else {
                    Ok(Letter::new(c.unsigned_abs() as usize - 1, c < 0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(free_reduce(&letters))
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|l| (l.generator as i64 + 1) * l.exponent())
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, rhs: &Word) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        free_reduce(&letters)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// x y x^-1 y^-1
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Renumbers generators by adding `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(l.generator + offset, l.inverse))
                .collect(),
        )
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut out = vec![0; num_generators];
        for l in &self.0 {
            out[l.generator] += l.exponent();
        }
        out
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("x{}^-1", l.generator + 1)
                } else {
                    format!("x{}", l.generator + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let codes = Vec::<i64>::deserialize(d)?;
        Word::from_signed(&codes).map_err(serde::de::Error::custom)
    }
}
