use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Matrix;
use crate::grp::{
    right_fox_derivative, GroupPresentation, GroupRingElement, PermAction, SchreierData, Word,
};

/// A finite free chain complex of right Z[pi]-modules in column form:
/// `boundaries[k-1]` is d_k, of shape `ranks[k-1] x ranks[k]`.
///
/// Entries act on coefficients by substituting the representation matrix
/// of each word directly, and composites multiply in the usual order, so
/// d_{k-1} d_k = 0 holds in the group ring read left to right.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct EquivariantComplex {
    group: GroupPresentation,
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<GroupRingElement>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    group: GroupPresentation,
    ranks: Vec<usize>,
    boundaries: Vec<Vec<Vec<GroupRingElement>>>,
}

impl TryFrom<ComplexRepr> for EquivariantComplex {
    type Error = Error;
    fn try_from(r: ComplexRepr) -> Result<Self> {
        if r.boundaries.len() + 1 != r.ranks.len().max(1) {
            return Err(Error::Shape(format!(
                "{} boundary matrices for {} chain groups",
                r.boundaries.len(),
                r.ranks.len()
            )));
        }
        let mats = r
            .boundaries
            .into_iter()
            .enumerate()
            .map(|(k, rows)| {
                let (m, n) = (r.ranks[k], r.ranks[k + 1]);
                if rows.len() != m || rows.iter().any(|row| row.len() != n) {
                    return Err(Error::Shape(format!("d{} is not {m} x {n}", k + 1)));
                }
                Matrix::from_vec(
                    m,
                    n,
                    rows.into_iter().flatten().collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        EquivariantComplex::new(r.group, r.ranks, mats)
    }
}

impl From<EquivariantComplex> for ComplexRepr {
    fn from(c: EquivariantComplex) -> Self {
        ComplexRepr {
            group: c.group,
            ranks: c.ranks,
            boundaries: c.boundaries.iter().map(Matrix::to_rows).collect(),
        }
    }
}

impl EquivariantComplex {
    /// Checks shapes and that every word uses valid generators.
    pub fn new(
        group: GroupPresentation,
        ranks: Vec<usize>,
        boundaries: Vec<Matrix<GroupRingElement>>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Shape(
                "complex needs at least one chain group".into(),
            ));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!(
                "{} boundary matrices for {} chain groups",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::Shape(format!(
                    "d{} has shape {:?}, expected {:?}",
                    k + 1,
                    d.shape(),
                    (ranks[k], ranks[k + 1])
                )));
            }
            if let Some(g) = d
                .entries()
                .iter()
                .filter_map(GroupRingElement::max_generator)
                .max()
            {
                if g >= group.num_generators() {
                    return Err(Error::GeneratorOutOfRange {
                        index: g,
                        count: group.num_generators(),
                    });
                }
            }
        }
        Ok(EquivariantComplex {
            group,
            ranks,
            boundaries,
        })
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Top degree.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// d_k for `1 <= k <= top`.
    pub fn boundary(&self, k: usize) -> &Matrix<GroupRingElement> {
        &self.boundaries[k - 1]
    }

    pub fn boundaries(&self) -> &[Matrix<GroupRingElement>] {
        &self.boundaries
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Replaces one boundary matrix without re-validating anything beyond
    /// its shape. Used to build negative controls.
    pub fn with_boundary(&self, k: usize, d: Matrix<GroupRingElement>) -> Result<Self> {
        let mut b = self.boundaries.clone();
        b[k - 1] = d;
        EquivariantComplex::new(self.group.clone(), self.ranks.clone(), b)
    }
}

/// The complex of the universal cover of the presentation 2-complex:
/// ranks `(1, |generators|, |relators|)`, d_1 column `x - 1`, and d_2 entry
/// `(x, r)` the right Fox derivative of r, so the composite column for r
/// is `r - 1`.
pub fn presentation_complex(p: &GroupPresentation) -> EquivariantComplex {
    let n = p.num_generators();
    let m = p.relators().len();
    let d1 = Matrix::from_fn(1, n, |_, j| {
        GroupRingElement::word_minus_one(Word::generator(j))
    });
    let d2 = Matrix::from_fn(n, m, |j, r| right_fox_derivative(&p.relators()[r], j));
    EquivariantComplex {
        group: p.clone(),
        ranks: vec![1, n, m],
        boundaries: vec![d1, d2],
    }
}

/// The point: rank one in degree 0 over the trivial group.
pub fn point_complex() -> EquivariantComplex {
    EquivariantComplex {
        group: GroupPresentation::trivial(),
        ranks: vec![1],
        boundaries: Vec::new(),
    }
}

/// Product with a circle. The new generator `t` is appended last and made
/// central by relators `[t, g]`; `C'_k = C_k + C_{k-1}` with
/// `d'(x, y) = (d x + (-1)^{k-1} (t - 1) y, d y)`.
pub fn circle_product(c: &EquivariantComplex) -> EquivariantComplex {
    let n = c.group.num_generators();
    let t = Word::generator(n);
    let mut relators = c.group.relators().to_vec();
    relators.extend((0..n).map(|g| Word::commutator(&t, &Word::generator(g))));
    let group = GroupPresentation::new(n + 1, relators).expect("relators use valid generators");

    let r = |k: isize| -> usize {
        if k < 0 || k as usize >= c.ranks.len() {
            0
        } else {
            c.ranks[k as usize]
        }
    };
    let top = c.ranks.len();
    let ranks: Vec<usize> = (0..=top as isize).map(|k| r(k) + r(k - 1)).collect();
    let t_minus_one = GroupRingElement::word_minus_one(t);
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let rows = ranks[k - 1];
        let cols = ranks[k];
        let (ck, ck1) = (r(k as isize), r(k as isize - 1));
        let ck2 = r(k as isize - 2);
        let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
        let mut d = Matrix::zeros(rows, cols);
        // upper-left: d_k on C_k
        if k < c.ranks.len() {
            for i in 0..ck1 {
                for j in 0..ck {
                    d[(i, j)] = c.boundary(k)[(i, j)].clone();
                }
            }
        }
        // upper-right: sign (t - 1) identity on C_{k-1}
        for i in 0..ck1 {
            d[(i, ck + i)] = t_minus_one.scale(sign);
        }
        // lower-right: d_{k-1} on C_{k-2}
        if k >= 2 {
            for i in 0..ck2 {
                for j in 0..ck1 {
                    d[(ck1 + i, ck + j)] = c.boundary(k - 1)[(i, j)].clone();
                }
            }
        }
        boundaries.push(d);
    }
    EquivariantComplex {
        group,
        ranks,
        boundaries,
    }
}

/// The complex of the finite cover determined by `a`, over the stabilizer
/// presentation from Reidemeister-Schreier. Cell `(i, d)` (cell i of the
/// base, coset d) has index `i * degree + d`.
///
/// A term `n w` in entry `(i, j)` of d_k contributes, for each coset c, the
/// term `n h` at `((i, c.w^-1), (j, c))` where `h` rewrites `w` read from
/// coset `c.w^-1`.
pub fn cover_complex(
    c: &EquivariantComplex,
    a: &PermAction,
) -> Result<(EquivariantComplex, SchreierData)> {
    let (sub, data) = crate::grp::reidemeister_schreier(&c.group, a)?;
    let m = a.degree();
    let ranks: Vec<usize> = c.ranks.iter().map(|r| r * m).collect();
    let mut boundaries = Vec::with_capacity(c.boundaries.len());
    for d in &c.boundaries {
        let mut terms: Vec<Vec<Vec<(i64, Word)>>> =
            vec![vec![Vec::new(); d.cols() * m]; d.rows() * m];
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                for (coeff, w) in d[(i, j)].terms() {
                    let winv = w.inverse();
                    for coset in 0..m {
                        let start = a.act(coset, &winv);
                        let (end, h) = data.rewrite_from(start, w);
                        debug_assert_eq!(end, coset);
                        terms[i * m + start][j * m + coset].push((coeff, h));
                    }
                }
            }
        }
        let entries: Vec<GroupRingElement> = terms
            .into_iter()
            .flatten()
            .map(GroupRingElement::from_terms)
            .collect();
        boundaries.push(Matrix::from_vec(d.rows() * m, d.cols() * m, entries)?);
    }
    Ok((EquivariantComplex::new(sub, ranks, boundaries)?, data))
}
