//! Twisted homology: specialize a complex along a representation and count
//! dimensions, plus the comparison operations between coefficient systems.

use serde::{Deserialize, Serialize};

use crate::chain::{cover_complex, presentation_complex, CatalogEntry, EquivariantComplex};
use crate::error::{Error, Result};
use crate::exactnum::{rank_cyclo, solve, CycloNumber, Matrix, Ring};
use crate::grp::{free_product, GroupPresentation, PermAction};
use crate::rep::unitary::WordCache;
use crate::rep::{check_rep, induce_from, SplitData, UnitaryRep};

/// The complex `C_* (x) V` over the cyclotomic field: `boundaries[k-1]` is
/// d_k, of shape `dims[k-1] x dims[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockComplex {
    dims: Vec<usize>,
    boundaries: Vec<Matrix<CycloNumber>>,
}

impl BlockComplex {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[Matrix<CycloNumber>] {
        &self.boundaries
    }

    /// Index of the first nonzero composite `d_k d_{k+1}`, if any.
    fn first_nonzero_composite(&self) -> Result<Option<usize>> {
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k])?.is_zero() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub dims: Vec<usize>,
    pub euler: i64,
    pub acyclic: bool,
}

impl HomologyReport {
    pub fn from_dims(dims: Vec<usize>) -> Self {
        let euler = alternating_sum(&dims);
        let acyclic = dims.iter().all(|&d| d == 0);
        HomologyReport {
            dims,
            euler,
            acyclic,
        }
    }
}

pub(crate) fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Substitutes the given matrices for the generators. Inverse letters use
/// `inverses`, so this also covers non-unitary actions written in a
/// non-orthonormal basis.
pub(crate) fn specialize_with(
    c: &EquivariantComplex,
    images: &[Matrix<CycloNumber>],
    inverses: &[Matrix<CycloNumber>],
    dim: usize,
) -> BlockComplex {
    let mut cache = WordCache::new(images, inverses, dim);
    let dims: Vec<usize> = c.ranks().iter().map(|r| r * dim).collect();
    let boundaries = c
        .boundaries()
        .iter()
        .map(|d| {
            let mut out: Matrix<CycloNumber> = Matrix::zeros(d.rows() * dim, d.cols() * dim);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    for (n, w) in d[(i, j)].terms() {
                        let n = CycloNumber::from_int(1, n);
                        let m = cache.get(w);
                        for a in 0..dim {
                            for b in 0..dim {
                                let v = &m[(a, b)];
                                if !v.is_zero() {
                                    let cell = &mut out[(i * dim + a, j * dim + b)];
                                    *cell = cell.add(&n.mul(v));
                                }
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    BlockComplex { dims, boundaries }
}

fn check_group(c: &EquivariantComplex, r: &UnitaryRep) -> Result<()> {
    if c.group() != r.group() {
        return Err(Error::GroupMismatch(format!(
            "complex has {} generators and {} relators, representation has {} and {}",
            c.group().num_generators(),
            c.group().relators().len(),
            r.group().num_generators(),
            r.group().relators().len()
        )));
    }
    Ok(())
}

/// `C_* (x) V`, with every composite `d_k d_{k+1}` checked to vanish.
pub fn specialize(c: &EquivariantComplex, r: &UnitaryRep) -> Result<BlockComplex> {
    check_group(c, r)?;
    check_rep(r)?;
    let b = specialize_with(c, r.generator_images(), r.inverse_images(), r.dim());
    if let Some(k) = b.first_nonzero_composite()? {
        return Err(Error::BoundaryNotZero {
            lower: k,
            upper: k + 1,
        });
    }
    Ok(b)
}

/// Rank-nullity: `dims[i] = dim C_i - rank d_i - rank d_{i+1}`.
pub fn homology_dims(b: &BlockComplex) -> HomologyReport {
    let ranks: Vec<usize> = b.boundaries.iter().map(rank_cyclo).collect();
    let dims = (0..b.dims.len())
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            let inc = ranks.get(i).copied().unwrap_or(0);
            b.dims[i] - out - inc
        })
        .collect();
    HomologyReport::from_dims(dims)
}

pub fn twisted_homology(c: &EquivariantComplex, r: &UnitaryRep) -> Result<HomologyReport> {
    Ok(homology_dims(&specialize(c, r)?))
}

/// True iff every specialized composite vanishes.
pub fn validate_complex(c: &EquivariantComplex, r: &UnitaryRep) -> Result<bool> {
    check_group(c, r)?;
    check_rep(r)?;
    let b = specialize_with(c, r.generator_images(), r.inverse_images(), r.dim());
    Ok(b.first_nonzero_composite()?.is_none())
}

/// `dim V - rank [alpha(g_1) - I | ... | alpha(g_n) - I]`.
pub fn coinvariants_h0(p: &GroupPresentation, r: &UnitaryRep) -> Result<usize> {
    if p != r.group() {
        return Err(Error::GroupMismatch(
            "representation is defined on another presentation".into(),
        ));
    }
    check_rep(r)?;
    let k = r.dim();
    let id: Matrix<CycloNumber> = Matrix::identity(k);
    let mut stacked: Matrix<CycloNumber> = Matrix::zeros(k, 0);
    for m in r.generator_images() {
        stacked = stacked.hcat(&m.sub(&id)?)?;
    }
    Ok(k - rank_cyclo(&stacked))
}

/// Homology of the cover with coefficients `sub_images`, and of the base
/// with the induced coefficients. The two must agree.
pub fn shapiro_compare(
    c: &EquivariantComplex,
    a: &PermAction,
    sub_images: &[Matrix<CycloNumber>],
    sub_dim: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let (cover, data) = cover_complex(c, a)?;
    let beta = UnitaryRep::new(
        cover.group().clone(),
        sub_dim,
        sub_images.to_vec(),
        crate::rep::Provenance::Explicit,
    )?;
    let dims_cover = twisted_homology(&cover, &beta)?.dims;
    let induced = induce_from(c.group(), &data, &beta)?;
    let dims_induced = twisted_homology(c, &induced)?.dims;
    if dims_cover != dims_induced {
        return Err(Error::CrossCheck(format!(
            "cover homology {dims_cover:?} differs from induced homology {dims_induced:?}"
        )));
    }
    Ok((dims_cover, dims_induced))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubquotientDims {
    pub w: Vec<usize>,
    pub v: Vec<usize>,
    pub wperp: Vec<usize>,
}

/// Homology with coefficients in W, V and `V/W` (modelled by W-perp, on
/// which the group acts trivially), with the checks implied by the long
/// exact sequence: Euler characteristics add, and `dim H_i(V)` is at most
/// `dim H_i(W) + dim H_i(V/W)`.
pub fn subquotient_dims(
    c: &EquivariantComplex,
    r: &UnitaryRep,
    s: &SplitData,
) -> Result<SubquotientDims> {
    check_group(c, r)?;
    check_rep(r)?;
    let k = r.dim();
    let wb = &s.w_basis;
    if wb.rows() != k || s.wperp_basis.rows() != k || s.dim_w() + s.dim_wperp() != k {
        return Err(Error::CrossCheck(
            "split does not match the representation dimension".into(),
        ));
    }
    let mut w_images = Vec::new();
    let mut w_inverses = Vec::new();
    for (m, minv) in r.generator_images().iter().zip(r.inverse_images()) {
        let x =
            solve(wb, &m.mul(wb)?).ok_or_else(|| Error::CrossCheck("W is not invariant".into()))?;
        let xi = solve(wb, &minv.mul(wb)?)
            .ok_or_else(|| Error::CrossCheck("W is not invariant".into()))?;
        w_images.push(x);
        w_inverses.push(xi);
        if m.mul(&s.wperp_basis)? != s.wperp_basis {
            return Err(Error::CrossCheck(
                "the group moves a vector of W-perp".into(),
            ));
        }
    }
    let bw = specialize_with(c, &w_images, &w_inverses, s.dim_w());
    if let Some(kk) = bw.first_nonzero_composite()? {
        return Err(Error::BoundaryNotZero {
            lower: kk,
            upper: kk + 1,
        });
    }
    let dims_w = homology_dims(&bw).dims;
    let dims_v = twisted_homology(c, r)?.dims;
    let trivial = UnitaryRep::trivial(c.group(), s.dim_wperp().max(1));
    let dims_wperp = if s.dim_wperp() == 0 {
        vec![0; c.ranks().len()]
    } else {
        twisted_homology(c, &trivial)?.dims
    };
    if alternating_sum(&dims_v) != alternating_sum(&dims_w) + alternating_sum(&dims_wperp) {
        return Err(Error::CrossCheck(
            "Euler characteristics are not additive".into(),
        ));
    }
    for i in 0..dims_v.len() {
        if dims_v[i] > dims_w[i] + dims_wperp[i] {
            return Err(Error::CrossCheck(format!(
                "exactness bound fails in degree {i}"
            )));
        }
    }
    Ok(SubquotientDims {
        w: dims_w,
        v: dims_v,
        wperp: dims_wperp,
    })
}

/// Twisted homology of `N1 # N2` for a representation pulled back from
/// `pi_1(N1)`, which equals that of N1 when N2 is a rational homology
/// sphere. Degrees 0 and 1 are cross-checked against the presentation
/// complex of the free product.
pub fn connected_sum_dims(
    c1: &CatalogEntry,
    r1: &UnitaryRep,
    c2: &CatalogEntry,
) -> Result<HomologyReport> {
    let trivial2 = UnitaryRep::trivial(c2.complex.group(), 1);
    let dims2 = twisted_homology(&c2.complex, &trivial2)?.dims;
    if dims2 != [1, 0, 0, 1] {
        return Err(Error::NotRationalHomologySphere(dims2));
    }
    if r1.group() != c1.complex.group() {
        return Err(Error::GroupMismatch(
            "the representation must be defined on the first summand's group".into(),
        ));
    }
    let report = twisted_homology(&c1.complex, r1)?;
    let product = free_product(c1.complex.group(), c2.complex.group());
    let pulled = r1.pullback_to_free_product(&product)?;
    let fox = twisted_homology(&presentation_complex(&product), &pulled)?;
    if report.dims.len() < 2 || fox.dims[..2] != report.dims[..2] {
        return Err(Error::CrossCheck(format!(
            "H_0, H_1 of the free product {:?} differ from the summand's {:?}",
            &fox.dims[..2],
            report.dims
        )));
    }
    Ok(report)
}
