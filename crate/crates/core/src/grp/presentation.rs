use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};
use crate::exactnum::{smith_normal_form_int, Matrix, Ring, Snf};

/// A finite presentation `<x_1, ..., x_n | r_1, ..., r_m>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr", into = "PresentationRepr")]
pub struct GroupPresentation {
    num_generators: usize,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    generators: usize,
    relators: Vec<Word>,
}

impl TryFrom<PresentationRepr> for GroupPresentation {
    type Error = Error;
    fn try_from(r: PresentationRepr) -> Result<Self> {
        GroupPresentation::new(r.generators, r.relators)
    }
}

impl From<GroupPresentation> for PresentationRepr {
    fn from(p: GroupPresentation) -> Self {
        PresentationRepr {
            generators: p.num_generators,
            relators: p.relators,
        }
    }
}

impl GroupPresentation {
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::InvalidPresentation(format!("relator {i} is empty")));
            }
            if let Some(g) = r.max_generator() {
                if g >= num_generators {
                    return Err(Error::GeneratorOutOfRange {
                        index: g,
                        count: num_generators,
                    });
                }
            }
        }
        Ok(GroupPresentation {
            num_generators,
            relators,
        })
    }

    pub fn trivial() -> Self {
        GroupPresentation {
            num_generators: 0,
            relators: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        GroupPresentation {
            num_generators: rank,
            relators: Vec::new(),
        }
    }

    /// `<x | x^p>`
    pub fn cyclic(p: usize) -> Self {
        GroupPresentation {
            num_generators: 1,
            relators: vec![Word::generator(0).pow(p as i64)],
        }
    }

    /// Fundamental group of the closed orientable surface of genus g:
    /// `<a_1, b_1, ..., a_g, b_g | [a_1, b_1] ... [a_g, b_g]>`.
    pub fn surface(genus: usize) -> Self {
        if genus == 0 {
            return Self::trivial();
        }
        let rel = (0..genus).fold(Word::empty(), |acc, i| {
            acc.concat(&Word::commutator(
                &Word::generator(2 * i),
                &Word::generator(2 * i + 1),
            ))
        });
        GroupPresentation {
            num_generators: 2 * genus,
            relators: vec![rel],
        }
    }

    /// `<a, b | a b a b^-1 a^-1 b^-1>`
    pub fn trefoil() -> Self {
        GroupPresentation {
            num_generators: 2,
            relators: vec![Word::from_signed(&[1, 2, 1, -2, -1, -2]).unwrap()],
        }
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.num_generators => Err(Error::GeneratorOutOfRange {
                index: g,
                count: self.num_generators,
            }),
            _ => Ok(()),
        }
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> Matrix<BigInt> {
        Matrix::from_fn(self.relators.len(), self.num_generators, |i, j| {
            BigInt::from(self.relators[i].exponent_sums(self.num_generators)[j])
        })
    }
}

/// Presentation of the free product: generators concatenated, the second
/// factor's generators renumbered after the first's.
pub fn free_product(p1: &GroupPresentation, p2: &GroupPresentation) -> GroupPresentation {
    let shift = p1.num_generators;
    let mut relators = p1.relators.clone();
    relators.extend(p2.relators.iter().map(|r| r.shifted(shift)));
    GroupPresentation {
        num_generators: p1.num_generators + p2.num_generators,
        relators,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub betti: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<u64>,
}

/// `H_1(pi; Z)` from the Smith form of the relation matrix.
pub fn abelianization(p: &GroupPresentation) -> Abelianization {
    abelianization_with_snf(p).0
}

pub(crate) fn abelianization_with_snf(p: &GroupPresentation) -> (Abelianization, Snf<BigInt>) {
    let snf = smith_normal_form_int(&p.relation_matrix());
    let diag = snf.diagonal();
    let rank = snf.rank();
    let torsion = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| d.to_u64().expect("invariant factor fits in u64"))
        .collect();
    (
        Abelianization {
            betti: p.num_generators - rank,
            torsion,
        },
        snf,
    )
}
