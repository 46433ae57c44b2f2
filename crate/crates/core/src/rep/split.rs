use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use super::unitary::{check_rep, conj_transpose, UnitaryRep};
use crate::error::{Error, Result};
use crate::exactnum::{column_basis, nullspace, rank_cyclo, CycloNumber, Matrix};
use crate::grp::abelianization;

/// `W = span{alpha(g)v - v}` and its orthogonal complement, as column bases.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitData {
    pub w_basis: Matrix<CycloNumber>,
    pub wperp_basis: Matrix<CycloNumber>,
}

impl SplitData {
    pub fn dim_w(&self) -> usize {
        self.w_basis.cols()
    }

    pub fn dim_wperp(&self) -> usize {
        self.wperp_basis.cols()
    }
}

/// Splits `V = W + W^perp` and checks that W is a submodule on which the
/// complement acts trivially.
pub fn invariant_coinvariant_split(r: &UnitaryRep) -> Result<SplitData> {
    check_rep(r)?;
    let k = r.dim();
    let id: Matrix<CycloNumber> = Matrix::identity(k);
    let mut stacked: Matrix<CycloNumber> = Matrix::zeros(k, 0);
    for m in r.generator_images() {
        stacked = stacked.hcat(&m.sub(&id)?)?;
    }
    let w_basis = column_basis(&stacked);
    let wperp_basis = if w_basis.cols() == 0 {
        Matrix::identity(k)
    } else {
        nullspace(&conj_transpose(&w_basis))
    };
    let rank_w = w_basis.cols();
    for (g, m) in r.generator_images().iter().enumerate() {
        let image = m.mul(&w_basis)?;
        if rank_cyclo(&w_basis.hcat(&image)?) != rank_w {
            return Err(Error::CrossCheck(format!(
                "W is not invariant under generator {}",
                g + 1
            )));
        }
        if m.mul(&wperp_basis)? != wperp_basis {
            return Err(Error::CrossCheck(format!(
                "generator {} moves a vector of W-perp",
                g + 1
            )));
        }
    }
    if rank_w + wperp_basis.cols() != k {
        return Err(Error::CrossCheck("W and W-perp do not span V".into()));
    }
    Ok(SplitData {
        w_basis,
        wperp_basis,
    })
}

type Key = Vec<(Vec<BigInt>, BigInt)>;

fn key(m: &Matrix<CycloNumber>, conductor: u64) -> Key {
    m.entries()
        .iter()
        .map(|x| {
            x.key_at(conductor)
                .expect("entries live in the rep's field")
        })
        .collect()
}

/// Default bound on the size of the image group.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// True iff no non-identity group element acts with eigenvalue 1.
///
/// The image is enumerated by breadth-first closure under the generators
/// and every non-identity matrix in it is tested. Group elements in the
/// kernel act as I, so a non-faithful rep fails; the kernel is detected
/// through the abelianization (an infinite H_1, or one larger than the
/// image, forces a nontrivial kernel).
pub fn fixed_point_free_check(r: &UnitaryRep, element_cap: usize) -> Result<bool> {
    let k = r.dim();
    let n = r.conductor();
    let id: Matrix<CycloNumber> = Matrix::identity(k);
    let mut seen: HashSet<Key> = HashSet::new();
    let mut elements = vec![id.clone()];
    seen.insert(key(&id, n));
    let mut queue = VecDeque::from([id.clone()]);
    while let Some(m) = queue.pop_front() {
        for g in r.generator_images() {
            let next = m.mul(g)?;
            if seen.insert(key(&next, n)) {
                if elements.len() >= element_cap {
                    return Err(Error::ClosureCapExceeded { cap: element_cap });
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    let ab = abelianization(r.group());
    let h1_order = ab.torsion.iter().map(|&d| d as u128).product::<u128>();
    if ab.betti > 0 || h1_order > elements.len() as u128 {
        return Ok(false);
    }
    for m in elements.iter().skip(1) {
        if rank_cyclo(&m.sub(&id)?) != k {
            return Ok(false);
        }
    }
    Ok(true)
}
