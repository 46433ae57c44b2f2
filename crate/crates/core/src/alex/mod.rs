//! Homology over Q[t, 1/t] along a grading, and acyclicity certificates
//! from characters `g -> zeta_n^{phi(g)}` that avoid every torsion factor.

use serde::{Deserialize, Serialize};

use crate::chain::EquivariantComplex;
use crate::error::{Error, Result};
use crate::exactnum::rational::rat;
use crate::exactnum::{
    cyclotomic_polynomial, smith_normal_form_poly, EuclideanDomain, LaurentPoly, Matrix, Ring,
};
use crate::grp::{check_grading, GroupRingElement, IntGrading};
use crate::rep::{character_from_grading, UnitaryRep};
use crate::twist::{twisted_homology, HomologyReport};

/// `g -> t^{phi(g)}` applied entrywise.
pub fn laurent_image(x: &GroupRingElement, phi: &IntGrading) -> LaurentPoly {
    x.terms().fold(LaurentPoly::zero(), |acc, (n, w)| {
        acc.add(&LaurentPoly::monomial(rat(n), phi.weight(w)))
    })
}

/// The boundary matrices of `C_* (x) Q[t, 1/t]`, with every composite
/// checked to vanish.
pub fn laurent_specialize(
    c: &EquivariantComplex,
    phi: &IntGrading,
) -> Result<Vec<Matrix<LaurentPoly>>> {
    check_grading(c.group(), phi)?;
    let mats: Vec<Matrix<LaurentPoly>> = c
        .boundaries()
        .iter()
        .map(|d| d.map(|x| laurent_image(x, phi)))
        .collect();
    for k in 1..mats.len() {
        if !mats[k - 1].mul(&mats[k])?.is_zero() {
            return Err(Error::BoundaryNotZero {
                lower: k,
                upper: k + 1,
            });
        }
    }
    Ok(mats)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeTorsion {
    pub free_rank: usize,
    /// Monic with nonzero constant term, each dividing the next.
    pub torsion_polys: Vec<LaurentPoly>,
}

/// `H_i = Q[t,1/t]^{free_rank} + sum Q[t,1/t]/(p)` for each degree i.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionData {
    pub degrees: Vec<DegreeTorsion>,
}

/// Invariant factors of `H_i` from the Smith forms: the cycles are the last
/// columns of V in `U d_i V = D`, and the boundaries written in that basis
/// are the matching rows of `V^-1 d_{i+1}`.
pub fn torsion_invariants(mats: &[Matrix<LaurentPoly>], ranks: &[usize]) -> Result<TorsionData> {
    if mats.len() + 1 != ranks.len() {
        return Err(Error::Shape(format!(
            "{} boundary matrices for {} chain groups",
            mats.len(),
            ranks.len()
        )));
    }
    for (k, d) in mats.iter().enumerate() {
        if d.shape() != (ranks[k], ranks[k + 1]) {
            return Err(Error::Shape(format!(
                "d_{} has shape {:?}, expected {:?}",
                k + 1,
                d.shape(),
                (ranks[k], ranks[k + 1])
            )));
        }
    }
    let mut degrees = Vec::with_capacity(ranks.len());
    for i in 0..ranks.len() {
        let n = ranks[i];
        let (r, v_inv) = if i == 0 {
            (0, Matrix::identity(n))
        } else {
            let snf = smith_normal_form_poly(&mats[i - 1]);
            (snf.rank(), snf.v_inv)
        };
        let upper = if i + 1 < ranks.len() {
            mats[i].clone()
        } else {
            Matrix::zeros(n, 0)
        };
        let image = v_inv.mul(&upper)?;
        if (0..r).any(|row| image.row(row).iter().any(|x| !x.is_zero())) {
            return Err(Error::Internal(format!(
                "boundaries in degree {i} do not lie in the cycles"
            )));
        }
        let rel = image.select_rows(&(r..n).collect::<Vec<_>>());
        let snf = smith_normal_form_poly(&rel);
        let diag = snf.diagonal();
        let rank = snf.rank();
        let torsion_polys = diag
            .iter()
            .filter(|p| !p.is_zero() && !p.is_unit_laurent())
            .map(LaurentPoly::monic_normalized)
            .collect();
        degrees.push(DegreeTorsion {
            free_rank: (n - r) - rank,
            torsion_polys,
        });
    }
    Ok(TorsionData { degrees })
}

/// True iff `Phi_n` divides `p`, i.e. `zeta_n` is a root of `p`.
pub fn cyclotomic_divides(n: u64, p: &LaurentPoly) -> bool {
    cyclotomic_polynomial(n).divides(p)
}

/// Smallest `n >= 2` with `Phi_n` dividing no torsion polynomial, as
/// `(n, 1)`. Fails if any degree has positive free rank, since then
/// `H_i (x) C_z` is nonzero for every z.
pub fn select_root_of_unity(td: &TorsionData) -> Result<(u64, i64)> {
    if let Some((degree, d)) = td.degrees.iter().enumerate().find(|(_, d)| d.free_rank > 0) {
        return Err(Error::FreeRankObstruction {
            degree,
            rank: d.free_rank,
        });
    }
    let polys: Vec<&LaurentPoly> = td.degrees.iter().flat_map(|d| &d.torsion_polys).collect();
    // each polynomial has finitely many cyclotomic factors, so this stops
    let n = (2u64..)
        .find(|&n| polys.iter().all(|p| !cyclotomic_divides(n, p)))
        .expect("unbounded search");
    Ok((n, 1))
}

/// `dim H_i(C (x) C_z)` for `z = zeta_n`, from the universal coefficient
/// sequence `0 -> H_i (x) C_z -> H_i(C_z) -> Tor(H_{i-1}, C_z) -> 0`.
pub fn uct_dims(td: &TorsionData, n: u64) -> Vec<usize> {
    let hits = |d: &DegreeTorsion| {
        d.torsion_polys
            .iter()
            .filter(|p| cyclotomic_divides(n, p))
            .count()
    };
    (0..td.degrees.len())
        .map(|i| {
            let tor = if i == 0 { 0 } else { hits(&td.degrees[i - 1]) };
            td.degrees[i].free_rank + hits(&td.degrees[i]) + tor
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AcyclicityCertificate {
    pub z_order: u64,
    pub z_power: i64,
    pub grading: IntGrading,
    pub character: UnitaryRep,
    pub report: HomologyReport,
    pub torsion: TorsionData,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub z_order: u64,
    pub z_power: i64,
    pub torsion: TorsionData,
    pub dims: Vec<usize>,
    pub verified: bool,
}

impl AcyclicityCertificate {
    /// Recomputes the twisted homology of the stored character.
    pub fn verify(&self, c: &EquivariantComplex) -> Result<bool> {
        let again = twisted_homology(c, &self.character)?;
        Ok(again == self.report && again.acyclic)
    }

    pub fn to_json(&self, verified: bool) -> CertificateJson {
        CertificateJson {
            z_order: self.z_order,
            z_power: self.z_power,
            torsion: self.torsion.clone(),
            dims: self.report.dims.clone(),
            verified,
        }
    }
}

pub fn torsion_data(c: &EquivariantComplex, phi: &IntGrading) -> Result<TorsionData> {
    let mats = laurent_specialize(c, phi)?;
    torsion_invariants(&mats, c.ranks())
}

/// Picks `z = zeta_n` avoiding every torsion polynomial of the complex
/// along `phi`, and checks the twisted homology directly and through the
/// universal coefficient count.
pub fn make_acyclic_fibered(
    c: &EquivariantComplex,
    phi: &IntGrading,
) -> Result<AcyclicityCertificate> {
    check_grading(c.group(), phi)?;
    let g = phi.gcd();
    if g != 1 {
        return Err(Error::GradingNotSurjective { gcd: g });
    }
    let torsion = torsion_data(c, phi)?;
    let (n, a) = select_root_of_unity(&torsion)?;
    for p in torsion.degrees.iter().flat_map(|d| &d.torsion_polys) {
        if cyclotomic_divides(n, p) {
            return Err(Error::Internal(format!("Phi_{n} divides {p}")));
        }
    }
    let character = character_from_grading(c.group(), phi, n, a)?;
    let report = twisted_homology(c, &character)?;
    let expected = uct_dims(&torsion, n);
    if report.dims != expected {
        return Err(Error::CrossCheck(format!(
            "direct twisted dims {:?} differ from universal coefficient dims {expected:?}",
            report.dims
        )));
    }
    if !report.acyclic {
        return Err(Error::Internal(format!(
            "character zeta_{n} leaves dims {:?}",
            report.dims
        )));
    }
    Ok(AcyclicityCertificate {
        z_order: n,
        z_power: a,
        grading: phi.clone(),
        character,
        report,
        torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::parse_catalog_spec;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(c)
    }

    fn td(polys: Vec<Vec<LaurentPoly>>) -> TorsionData {
        TorsionData {
            degrees: polys
                .into_iter()
                .map(|t| DegreeTorsion {
                    free_rank: 0,
                    torsion_polys: t,
                })
                .collect(),
        }
    }

    fn grading(v: &[i64]) -> IntGrading {
        IntGrading(v.to_vec())
    }

    #[test]
    fn circle_specialization() {
        let c = parse_catalog_spec("circle").unwrap().complex;
        let m = laurent_specialize(&c, &grading(&[1])).unwrap();
        assert_eq!(m[0][(0, 0)], p(&[-1, 1]));
    }

    #[test]
    fn trefoil_specialization() {
        let c = parse_catalog_spec("trefoil_exterior").unwrap().complex;
        let m = laurent_specialize(&c, &grading(&[1, 1])).unwrap();
        let col: Vec<LaurentPoly> = m[1].column(0);
        // up to units, the entries are +-(t^2 - t + 1)
        for x in &col {
            assert_eq!(x.monic_normalized(), p(&[1, -1, 1]));
        }
        assert!(m[0].mul(&m[1]).unwrap().is_zero());
    }

    #[test]
    fn bad_grading() {
        let c = parse_catalog_spec("trefoil_exterior").unwrap().complex;
        assert!(matches!(
            laurent_specialize(&c, &grading(&[1, 0])),
            Err(Error::InvalidGrading { .. })
        ));
        assert!(matches!(
            laurent_specialize(&c, &grading(&[1])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn torsion_examples() {
        let s = parse_catalog_spec("s1xs2").unwrap().complex;
        let t = torsion_data(&s, &grading(&[1])).unwrap();
        assert_eq!(
            t,
            td(vec![vec![p(&[-1, 1])], vec![], vec![p(&[-1, 1])], vec![]])
        );

        let tr = parse_catalog_spec("trefoil_exterior").unwrap().complex;
        let t = torsion_data(&tr, &grading(&[1, 1])).unwrap();
        assert_eq!(
            t.degrees[1],
            DegreeTorsion {
                free_rank: 0,
                torsion_polys: vec![p(&[1, -1, 1])]
            }
        );

        let t3 = parse_catalog_spec("t3").unwrap().complex;
        let t = torsion_data(&t3, &grading(&[1, 0, 0])).unwrap();
        assert_eq!(
            t.degrees[1],
            DegreeTorsion {
                free_rank: 0,
                torsion_polys: vec![p(&[-1, 1]), p(&[-1, 1])]
            }
        );
    }

    #[test]
    fn root_selection() {
        let t = td(vec![vec![], vec![p(&[-1, 1]), p(&[1, 1, 1])]]);
        assert_eq!(select_root_of_unity(&t).unwrap(), (2, 1));
        let t = td(vec![vec![], vec![p(&[1, 1])]]);
        assert_eq!(select_root_of_unity(&t).unwrap(), (3, 1));
        let t = td(vec![vec![p(&[-1, 1])], vec![], vec![p(&[-1, 1])], vec![]]);
        assert_eq!(select_root_of_unity(&t).unwrap(), (2, 1));
        let mut t = td(vec![vec![], vec![]]);
        t.degrees[1].free_rank = 1;
        assert_eq!(
            select_root_of_unity(&t),
            Err(Error::FreeRankObstruction { degree: 1, rank: 1 })
        );
    }

    #[test]
    fn uct_examples() {
        let s = td(vec![vec![p(&[-1, 1])], vec![], vec![p(&[-1, 1])], vec![]]);
        assert_eq!(uct_dims(&s, 2), vec![0, 0, 0, 0]);
        assert_eq!(uct_dims(&s, 1), vec![1, 1, 1, 1]);
        let tr = td(vec![vec![p(&[-1, 1])], vec![p(&[1, -1, 1])], vec![]]);
        assert_eq!(uct_dims(&tr, 6), vec![0, 1, 1]);
    }

    #[test]
    fn certificates() {
        for (spec, phi, n) in [
            ("s1xs2", vec![1], 2),
            ("t3", vec![1, 0, 0], 2),
            ("trefoil_exterior", vec![1, 1], 2),
            ("torus2d", vec![1, 0], 2),
        ] {
            let e = parse_catalog_spec(spec).unwrap();
            let cert = make_acyclic_fibered(&e.complex, &grading(&phi)).unwrap();
            assert_eq!(cert.z_order, n, "{spec}");
            assert!(cert.verify(&e.complex).unwrap());
            let neg: Vec<i64> = phi.iter().map(|x| -x).collect();
            assert_eq!(
                make_acyclic_fibered(&e.complex, &grading(&neg))
                    .unwrap()
                    .z_order,
                n
            );
        }
    }

    #[test]
    fn certificate_failures() {
        let h = parse_catalog_spec("handlebody:2").unwrap().complex;
        assert_eq!(
            make_acyclic_fibered(&h, &grading(&[1, 0])).map(|c| c.z_order),
            Err(Error::FreeRankObstruction { degree: 1, rank: 1 })
        );
        let s = parse_catalog_spec("s1xs2").unwrap().complex;
        assert_eq!(
            make_acyclic_fibered(&s, &grading(&[2])).map(|c| c.z_order),
            Err(Error::GradingNotSurjective { gcd: 2 })
        );
    }

    #[test]
    fn uct_matches_direct_for_small_orders() {
        let e = parse_catalog_spec("trefoil_exterior").unwrap();
        let phi = grading(&[1, 1]);
        let t = torsion_data(&e.complex, &phi).unwrap();
        for n in 1..=12 {
            let r = character_from_grading(e.complex.group(), &phi, n, 1).unwrap();
            assert_eq!(
                twisted_homology(&e.complex, &r).unwrap().dims,
                uct_dims(&t, n),
                "n = {n}"
            );
        }
    }
}
