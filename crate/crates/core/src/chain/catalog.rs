use num_integer::Integer;
use serde::Serialize;

use super::complex::{circle_product, point_complex, presentation_complex, EquivariantComplex};
use crate::error::{Error, Result};
use crate::exactnum::Matrix;
use crate::grp::{abelianization, free_product, GroupPresentation, GroupRingElement, Word};
use crate::rep::UnitaryRep;
use crate::twist::twisted_homology;

/// A named complex together with its expected homology under the trivial
/// 1-dimensional representation, checked on construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Vec<i64>,
    pub complex: EquivariantComplex,
    pub expected_trivial_dims: Vec<usize>,
    pub notes: String,
}

pub const CATALOG_NAMES: &[&str] = &[
    "lens",
    "s1xs2",
    "t3",
    "s1x_sigma",
    "quaternion_q8",
    "trefoil_exterior",
    "handlebody",
    "torus2d",
    "circle",
    "free_product_of",
];

impl CatalogEntry {
    fn build(
        name: &str,
        parameters: Vec<i64>,
        complex: EquivariantComplex,
        expected: Vec<usize>,
        notes: &str,
    ) -> Result<Self> {
        let entry = CatalogEntry {
            name: name.to_string(),
            parameters,
            complex,
            expected_trivial_dims: expected,
            notes: notes.to_string(),
        };
        entry.check()?;
        Ok(entry)
    }

    /// Recomputes trivial-representation homology and compares.
    pub fn check(&self) -> Result<()> {
        let triv = UnitaryRep::trivial(self.complex.group(), 1);
        let dims = twisted_homology(&self.complex, &triv)?.dims;
        if dims != self.expected_trivial_dims {
            return Err(Error::Internal(format!(
                "catalog entry {} has trivial dims {dims:?}, expected {:?}",
                self.label(),
                self.expected_trivial_dims
            )));
        }
        Ok(())
    }

    /// Name with parameters, e.g. `lens:5,1`.
    pub fn label(&self) -> String {
        if self.parameters.is_empty() {
            self.name.clone()
        } else {
            let ps: Vec<String> = self.parameters.iter().map(i64::to_string).collect();
            format!("{}:{}", self.name, ps.join(","))
        }
    }

    /// True for closed 3-manifold entries (alternating rank sum zero,
    /// top degree 3).
    pub fn is_closed_3_manifold(&self) -> bool {
        self.complex.top() == 3 && self.complex.euler_characteristic() == 0
    }
}

fn params_exact(name: &str, params: &[i64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::InvalidParameters(format!(
            "{name} takes {n} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

/// `<x | x^p>` with cells in degrees 0..3: d_1 = x - 1, d_2 = the norm
/// element, d_3 = x^{q'} - 1 where `q q' = 1 mod p`.
pub fn lens_complex(p: i64, q: i64) -> Result<EquivariantComplex> {
    if p <= 0 {
        return Err(Error::InvalidParameters(format!(
            "lens space needs p >= 1, got {p}"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidParameters(format!("gcd({p}, {q}) != 1")));
    }
    let x = Word::generator(0);
    let ext = q.extended_gcd(&p);
    let qbar = ext.x.rem_euclid(p);
    let group = GroupPresentation::cyclic(p as usize);
    let d1 = Matrix::from_vec(1, 1, vec![GroupRingElement::word_minus_one(x.clone())])?;
    let norm = GroupRingElement::from_terms((0..p).map(|i| (1, x.pow(i))));
    let d2 = Matrix::from_vec(1, 1, vec![norm])?;
    let d3 = Matrix::from_vec(1, 1, vec![GroupRingElement::word_minus_one(x.pow(qbar))])?;
    EquivariantComplex::new(group, vec![1, 1, 1, 1], vec![d1, d2, d3])
}

/// The 2-sphere: cells in degrees 0 and 2, trivial group.
pub fn sphere2_complex() -> EquivariantComplex {
    EquivariantComplex::new(
        GroupPresentation::trivial(),
        vec![1, 0, 1],
        vec![Matrix::zeros(1, 0), Matrix::zeros(0, 1)],
    )
    .expect("shapes agree")
}

/// The quaternion group `<x, y | x^2 y^-2, x y x y^-1>` with the free
/// period-4 resolution of Cartan-Eilenberg (XII.7), rewritten for right
/// modules by transposing and applying `g -> g^-1`.
pub fn quaternion_complex() -> EquivariantComplex {
    let w = |codes: &[i64]| Word::from_signed(codes).unwrap();
    let e = |terms: &[(i64, &[i64])]| {
        GroupRingElement::from_terms(terms.iter().map(|&(c, t)| (c, w(t))))
    };
    let group = GroupPresentation::new(2, vec![w(&[1, 1, -2, -2]), w(&[1, 2, 1, -2])]).unwrap();
    let d1 = Matrix::from_vec(
        1,
        2,
        vec![e(&[(1, &[-1]), (-1, &[])]), e(&[(1, &[-2]), (-1, &[])])],
    )
    .unwrap();
    let d2 = Matrix::from_vec(
        2,
        2,
        vec![
            e(&[(1, &[]), (1, &[-1])]),
            e(&[(1, &[]), (1, &[-2, -1])]),
            e(&[(-1, &[]), (-1, &[-2])]),
            e(&[(1, &[-1]), (-1, &[])]),
        ],
    )
    .unwrap();
    let d3 = Matrix::from_vec(
        2,
        1,
        vec![e(&[(1, &[-1]), (-1, &[])]), e(&[(-1, &[-2, -1]), (1, &[])])],
    )
    .unwrap();
    EquivariantComplex::new(group, vec![1, 2, 2, 1], vec![d1, d2, d3]).unwrap()
}

/// Looks up an entry by name and integer parameters.
pub fn catalog_complex(name: &str, params: &[i64]) -> Result<CatalogEntry> {
    let p = params.to_vec();
    match name {
        "lens" => {
            let (pp, q) = match params {
                [pp] => (*pp, 1),
                [pp, q] => (*pp, *q),
                _ => return Err(Error::InvalidParameters("lens takes p or p,q".into())),
            };
            CatalogEntry::build(
                "lens",
                vec![pp, q],
                lens_complex(pp, q)?,
                vec![1, 0, 0, 1],
                "lens space L(p,q); d3 = x^{q'} - 1 with q q' = 1 mod p",
            )
        }
        "s1xs2" => {
            params_exact(name, params, 0)?;
            CatalogEntry::build(
                name,
                p,
                circle_product(&sphere2_complex()),
                vec![1, 1, 1, 1],
                "S^1 x S^2",
            )
        }
        "t3" => {
            params_exact(name, params, 0)?;
            let c = circle_product(&circle_product(&circle_product(&point_complex())));
            CatalogEntry::build(
                name,
                p,
                c,
                vec![1, 3, 3, 1],
                "3-torus as an iterated circle product",
            )
        }
        "torus2d" => {
            params_exact(name, params, 0)?;
            let c = circle_product(&circle_product(&point_complex()));
            CatalogEntry::build(name, p, c, vec![1, 2, 1], "2-torus")
        }
        "circle" => {
            params_exact(name, params, 0)?;
            CatalogEntry::build(
                name,
                p,
                circle_product(&point_complex()),
                vec![1, 1],
                "circle",
            )
        }
        "s1x_sigma" => {
            params_exact(name, params, 1)?;
            let g = params[0];
            if g < 1 {
                return Err(Error::InvalidParameters(format!(
                    "surface genus must be >= 1, got {g}"
                )));
            }
            let surface = presentation_complex(&GroupPresentation::surface(g as usize));
            let b = 2 * g as usize + 1;
            CatalogEntry::build(
                name,
                p,
                circle_product(&surface),
                vec![1, b, b, 1],
                "S^1 x closed orientable surface of genus g; t is the last generator",
            )
        }
        "quaternion_q8" => {
            params_exact(name, params, 0)?;
            CatalogEntry::build(
                name,
                p,
                quaternion_complex(),
                vec![1, 0, 0, 1],
                "S^3/Q8 from the period-4 resolution of the quaternion group",
            )
        }
        "trefoil_exterior" => {
            params_exact(name, params, 0)?;
            CatalogEntry::build(
                name,
                p,
                presentation_complex(&GroupPresentation::trefoil()),
                vec![1, 1, 0],
                "presentation 2-complex of <a, b | a b a b^-1 a^-1 b^-1>",
            )
        }
        "handlebody" => {
            params_exact(name, params, 1)?;
            let g = params[0];
            if g < 0 {
                return Err(Error::InvalidParameters(format!(
                    "genus must be >= 0, got {g}"
                )));
            }
            let g = g as usize;
            CatalogEntry::build(
                name,
                p,
                presentation_complex(&GroupPresentation::free(g)),
                vec![1, g, 0],
                "handlebody of genus g (wedge of g circles)",
            )
        }
        "free_product_of" => Err(Error::InvalidParameters(
            "free_product_of takes entries: free_product_of:NAME[:params]+NAME[:params]".into(),
        )),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

/// Presentation 2-complex of the free product of the entries' groups.
/// Expected dims come from the integer abelianization.
pub fn catalog_free_product(entries: &[CatalogEntry]) -> Result<CatalogEntry> {
    if entries.is_empty() {
        return Err(Error::InvalidParameters(
            "free_product_of needs at least one entry".into(),
        ));
    }
    let group = entries.iter().fold(GroupPresentation::trivial(), |acc, e| {
        free_product(&acc, e.complex.group())
    });
    let ab = abelianization(&group);
    let rank_a = group.num_generators() - ab.betti;
    let expected = vec![1, ab.betti, group.relators().len() - rank_a];
    let labels: Vec<String> = entries.iter().map(CatalogEntry::label).collect();
    let mut entry = CatalogEntry::build(
        "free_product_of",
        Vec::new(),
        presentation_complex(&group),
        expected,
        &format!("presentation 2-complex of {}", labels.join(" * ")),
    )?;
    entry.name = format!("free_product_of:{}", labels.join("+"));
    Ok(entry)
}

/// Parses `NAME`, `NAME:p1,p2`, or `free_product_of:E1+E2+...`.
pub fn parse_catalog_spec(spec: &str) -> Result<CatalogEntry> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("free_product_of:") {
        let entries = rest
            .split('+')
            .map(parse_catalog_spec)
            .collect::<Result<Vec<_>>>()?;
        return catalog_free_product(&entries);
    }
    let (name, params) = match spec.split_once(':') {
        Some((n, ps)) => {
            let params = ps
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad catalog parameter {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            (n, params)
        }
        None => (spec, Vec::new()),
    };
    catalog_complex(name, &params)
}
