use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::cyclo::lcm;
use crate::exactnum::{CycloNumber, Matrix};
use crate::grp::{
    reidemeister_schreier, GroupPresentation, IntGrading, PermAction, SchreierData, Word,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Character,
    Trivial,
    Permutation,
    Induced,
    #[default]
    Explicit,
}

/// A homomorphism from a presented group to U(k) with cyclotomic entries.
///
/// Construction checks shapes only; [`verify_rep`] checks unitarity and the
/// relators, and every consumer that needs a genuine representation calls
/// it first.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryRep {
    group: GroupPresentation,
    dim: usize,
    conductor: u64,
    images: Vec<Matrix<CycloNumber>>,
    inverses: Vec<Matrix<CycloNumber>>,
    provenance: Provenance,
}

pub fn conj_transpose(a: &Matrix<CycloNumber>) -> Matrix<CycloNumber> {
    a.transpose().map(CycloNumber::conjugate)
}

impl UnitaryRep {
    /// Embeds every entry at the least common conductor.
    pub fn new(
        group: GroupPresentation,
        dim: usize,
        images: Vec<Matrix<CycloNumber>>,
        provenance: Provenance,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRep("dimension must be at least 1".into()));
        }
        if images.len() != group.num_generators() {
            return Err(Error::InvalidRep(format!(
                "{} generator images for {} generators",
                images.len(),
                group.num_generators()
            )));
        }
        if let Some(g) = images.iter().position(|m| m.shape() != (dim, dim)) {
            return Err(Error::InvalidRep(format!(
                "image of generator {} is not {dim} x {dim}",
                g + 1
            )));
        }
        let conductor = images
            .iter()
            .flat_map(|m| m.entries().iter())
            .fold(1, |acc, x| lcm(acc, x.conductor()));
        let images: Vec<Matrix<CycloNumber>> = images
            .iter()
            .map(|m| m.map(|x| x.embed(conductor).expect("conductor divides lcm")))
            .collect();
        let inverses = images.iter().map(conj_transpose).collect();
        Ok(UnitaryRep {
            group,
            dim,
            conductor,
            images,
            inverses,
            provenance,
        })
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(group: &GroupPresentation, dim: usize) -> Self {
        let id = Matrix::identity(dim);
        UnitaryRep::new(
            group.clone(),
            dim,
            vec![id; group.num_generators()],
            Provenance::Trivial,
        )
        .expect("identity images are well-formed")
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn generator_images(&self) -> &[Matrix<CycloNumber>] {
        &self.images
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub(crate) fn inverse_images(&self) -> &[Matrix<CycloNumber>] {
        &self.inverses
    }

    /// The same images, regarded as a representation of another
    /// presentation with the same generator count.
    pub fn on_group(&self, group: &GroupPresentation) -> Result<Self> {
        UnitaryRep::new(
            group.clone(),
            self.dim,
            self.images.clone(),
            self.provenance,
        )
    }

    /// Pullback along `G1 * G2 -> G1`: the second factor's generators act
    /// trivially.
    pub fn pullback_to_free_product(&self, product: &GroupPresentation) -> Result<Self> {
        let n1 = self.group.num_generators();
        if product.num_generators() < n1 {
            return Err(Error::GroupMismatch(
                "free product has fewer generators than the factor".into(),
            ));
        }
        let mut images = self.images.clone();
        images.resize(product.num_generators(), Matrix::identity(self.dim));
        UnitaryRep::new(product.clone(), self.dim, images, self.provenance)
    }

    pub fn to_file(&self) -> RepFile {
        RepFile {
            dim: self.dim,
            conductor: self.conductor,
            generators: self.images.iter().map(Matrix::to_rows).collect(),
            provenance: self.provenance,
        }
    }

    pub fn from_file(file: RepFile, group: &GroupPresentation) -> Result<Self> {
        let images = file
            .generators
            .into_iter()
            .map(Matrix::from_rows)
            .collect::<Result<Vec<_>>>()?;
        for m in &images {
            for x in m.entries() {
                if !file.conductor.is_multiple_of(x.conductor()) {
                    return Err(Error::ConductorMismatch {
                        from: x.conductor(),
                        to: file.conductor,
                    });
                }
            }
        }
        UnitaryRep::new(group.clone(), file.dim, images, file.provenance)
    }
}

/// JSON form of a representation; the group comes from the complex it is
/// paired with.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepFile {
    pub dim: usize,
    pub conductor: u64,
    pub generators: Vec<Vec<Vec<CycloNumber>>>,
    #[serde(default)]
    pub provenance: Provenance,
}

/// Ordered product of generator images, with inverse letters mapped to the
/// conjugate transpose.
pub fn evaluate_word(r: &UnitaryRep, w: &Word) -> Result<Matrix<CycloNumber>> {
    r.group.check_word(w)?;
    Ok(evaluate_with(&r.images, &r.inverses, r.dim, w))
}

pub(crate) fn evaluate_with(
    images: &[Matrix<CycloNumber>],
    inverses: &[Matrix<CycloNumber>],
    dim: usize,
    w: &Word,
) -> Matrix<CycloNumber> {
    let mut out: Option<Matrix<CycloNumber>> = None;
    for l in w.letters() {
        let m = if l.inverse {
            &inverses[l.generator]
        } else {
            &images[l.generator]
        };
        out = Some(match out {
            None => m.clone(),
            Some(acc) => acc.mul(m).expect("square images"),
        });
    }
    out.unwrap_or_else(|| Matrix::identity(dim))
}

/// Memoized word evaluation for one representation.
pub(crate) struct WordCache<'a> {
    images: &'a [Matrix<CycloNumber>],
    inverses: &'a [Matrix<CycloNumber>],
    dim: usize,
    cache: HashMap<Word, Matrix<CycloNumber>>,
}

impl<'a> WordCache<'a> {
    pub fn new(
        images: &'a [Matrix<CycloNumber>],
        inverses: &'a [Matrix<CycloNumber>],
        dim: usize,
    ) -> Self {
        WordCache {
            images,
            inverses,
            dim,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, w: &Word) -> &Matrix<CycloNumber> {
        if !self.cache.contains_key(w) {
            let m = evaluate_with(self.images, self.inverses, self.dim, w);
            self.cache.insert(w.clone(), m);
        }
        &self.cache[w]
    }
}

/// Checks unitarity of every image and that every relator maps to I.
pub fn check_rep(r: &UnitaryRep) -> Result<()> {
    let id = Matrix::identity(r.dim);
    for (g, m) in r.images.iter().enumerate() {
        if r.inverses[g].mul(m)? != id {
            return Err(Error::InvalidRep(format!(
                "image of generator {} is not unitary",
                g + 1
            )));
        }
    }
    for (k, rel) in r.group.relators().iter().enumerate() {
        if evaluate_with(&r.images, &r.inverses, r.dim, rel) != id {
            return Err(Error::InvalidRep(format!(
                "relator {} does not map to the identity",
                k + 1
            )));
        }
    }
    Ok(())
}

pub fn verify_rep(r: &UnitaryRep) -> bool {
    check_rep(r).is_ok()
}

/// The 1-dimensional representation sending generator j to
/// `zeta_n^{exponents[j]}`.
pub fn character_from_exponents(
    p: &GroupPresentation,
    n: u64,
    exponents: &[i64],
) -> Result<UnitaryRep> {
    if exponents.len() != p.num_generators() {
        return Err(Error::Shape(format!(
            "{} exponents for {} generators",
            exponents.len(),
            p.num_generators()
        )));
    }
    let images = exponents
        .iter()
        .map(|&e| Matrix::scalar(1, &CycloNumber::zeta_pow(n, e)))
        .collect();
    UnitaryRep::new(p.clone(), 1, images, Provenance::Character)
}

/// `g -> zeta_n^{a phi(g)}`.
pub fn character_from_grading(
    p: &GroupPresentation,
    phi: &IntGrading,
    n: u64,
    a: i64,
) -> Result<UnitaryRep> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "root of unity order must be positive".into(),
        ));
    }
    crate::grp::check_grading(p, phi)?;
    let exps: Vec<i64> = phi
        .0
        .iter()
        .map(|&v| (a as i128 * v as i128).rem_euclid(n as i128) as i64)
        .collect();
    character_from_exponents(p, n, &exps)
}

/// Permutation matrices of the action: `P[d][d.g] = 1`.
pub fn permutation_rep(p: &GroupPresentation, a: &PermAction) -> Result<UnitaryRep> {
    a.validate(p)?;
    let m = a.degree();
    let images = a
        .images()
        .iter()
        .map(|img| {
            Matrix::from_fn(m, m, |i, j| {
                CycloNumber::from_int(1, i64::from(img[i] == j))
            })
        })
        .collect();
    UnitaryRep::new(p.clone(), m, images, Provenance::Permutation)
}

/// Induction from the stabilizer of point 0. `sub_images[s]` is the image of
/// Schreier generator s. Block `(d, d.g)` of the image of g is the image of
/// the Schreier generator on edge `(d, g)`, or I on tree edges.
pub fn induce_rep(
    p: &GroupPresentation,
    a: &PermAction,
    sub_images: &[Matrix<CycloNumber>],
    sub_dim: usize,
) -> Result<UnitaryRep> {
    let (sub, data) = reidemeister_schreier(p, a)?;
    let beta = UnitaryRep::new(sub, sub_dim, sub_images.to_vec(), Provenance::Explicit)?;
    check_rep(&beta)?;
    induce_from(p, &data, &beta)
}

/// Induction when the subgroup representation is already assembled on the
/// Reidemeister-Schreier presentation.
pub fn induce_from(
    p: &GroupPresentation,
    data: &SchreierData,
    beta: &UnitaryRep,
) -> Result<UnitaryRep> {
    let a = data.action();
    if beta.images.len() != data.num_schreier_generators() {
        return Err(Error::GroupMismatch(format!(
            "{} images for {} Schreier generators",
            beta.images.len(),
            data.num_schreier_generators()
        )));
    }
    let m = a.degree();
    let k = beta.dim;
    let zero = Matrix::zeros(k, k);
    let id = Matrix::identity(k);
    let images = (0..p.num_generators())
        .map(|g| {
            Matrix::from_blocks(m, m, k, |d, e| {
                if a.images()[g][d] != e {
                    zero.clone()
                } else {
                    match data.edge_generator(d, g) {
                        Some(s) => beta.images[s].clone(),
                        None => id.clone(),
                    }
                }
            })
        })
        .collect();
    UnitaryRep::new(p.clone(), m * k, images, Provenance::Induced)
}

/// Left multiplication by i and j on the quaternions `H = R^4` (basis
/// 1, i, j, k), a free action of Q8 on the unit sphere.
pub fn quaternion_rep(q8: &GroupPresentation) -> Result<UnitaryRep> {
    let m = |cols: [(usize, i64); 4]| {
        let mut out = Matrix::zeros(4, 4);
        for (j, (i, s)) in cols.into_iter().enumerate() {
            out[(i, j)] = CycloNumber::from_int(1, s);
        }
        out
    };
    // i.1 = i, i.i = -1, i.j = k, i.k = -j
    let li = m([(1, 1), (0, -1), (3, 1), (2, -1)]);
    // j.1 = j, j.i = -k, j.j = -1, j.k = i
    let lj = m([(2, 1), (3, -1), (0, -1), (1, 1)]);
    let r = UnitaryRep::new(q8.clone(), 4, vec![li, lj], Provenance::Explicit)?;
    check_rep(&r)?;
    Ok(r)
}
