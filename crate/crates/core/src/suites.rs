//! Seeded property batteries over the catalog: Euler multiplicativity,
//! trivial coefficients, coinvariants, Shapiro, subquotient sequences and
//! the obstruction direction.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::{cover_complex, parse_catalog_spec, presentation_complex, CatalogEntry, EquivariantComplex};
use crate::error::{Error, Result};
use crate::exactnum::{smith_normal_form_int, CycloNumber, Matrix};
use crate::grp::{reidemeister_schreier, transitive_actions, GroupPresentation, GroupRingElement, PermAction, Word};
use crate::rep::{
    induce_from, invariant_coinvariant_split, permutation_rep, quaternion_rep, torsion_characters,
    AbelianCoords, Provenance, UnitaryRep,
};
use crate::twist::{coinvariants_h0, shapiro_compare, subquotient_dims, twisted_homology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Euler,
    Trivial,
    H0,
    Shapiro,
    Les,
    Obstruction,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Euler, Suite::Trivial, Suite::H0, Suite::Shapiro, Suite::Les, Suite::Obstruction];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Euler => "euler",
            Suite::Trivial => "trivial",
            Suite::H0 => "h0",
            Suite::Shapiro => "shapiro",
            Suite::Les => "les",
            Suite::Obstruction => "obstruction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}; expected one of euler, trivial, h0, shapiro, les, obstruction")))
    }
}

const MAX_LISTED_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(s: Suite) -> Self {
        SuiteResult { name: s.name().to_string(), passed: 0, failed: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(msg);
        }
    }

    fn check(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(e) => {
                let msg = format!("{}: {e}", what());
                self.fail(msg);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub all_passed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// `None` runs everything.
    pub only: Option<Suite>,
    /// Replaces d_2 of lens(5,1) by 1 in the Euler battery.
    pub corrupt_fixture: bool,
}

pub fn run_suites(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut suites = Vec::new();
    for s in Suite::ALL {
        if opts.only.is_some_and(|o| o != s) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(s as u64 + 1)));
        let res = match s {
            Suite::Euler => euler_suite(&mut rng, opts.corrupt_fixture)?,
            Suite::Trivial => trivial_suite()?,
            Suite::H0 => h0_suite(&mut rng, 200)?,
            Suite::Shapiro => shapiro_suite(&mut rng)?,
            Suite::Les => les_suite(&mut rng, 100)?,
            Suite::Obstruction => obstruction_suite(&mut rng)?,
        };
        suites.push(res);
    }
    let all_passed = suites.iter().all(SuiteResult::ok);
    Ok(VerifyReport { seed: opts.seed, suites, all_passed })
}

/// Catalog entries used by the batteries.
pub const BATTERY_SPECS: &[&str] = &[
    "circle",
    "torus2d",
    "lens:2,1",
    "lens:3,1",
    "lens:5,1",
    "lens:5,2",
    "lens:7,3",
    "s1xs2",
    "t3",
    "s1x_sigma:1",
    "s1x_sigma:2",
    "quaternion_q8",
    "trefoil_exterior",
    "handlebody:1",
    "handlebody:2",
    "handlebody:3",
    "free_product_of:t3+lens:3,1",
];

fn entries(specs: &[&str]) -> Result<Vec<CatalogEntry>> {
    specs.iter().map(|s| parse_catalog_spec(s)).collect()
}

/// A random 1-dimensional character through `H_1`: torsion coordinates get
/// random residues, free coordinates random powers of `zeta_m`.
pub fn random_character(p: &GroupPresentation, rng: &mut ChaCha8Rng) -> Result<UnitaryRep> {
    let coords = AbelianCoords::new(p);
    let a: Vec<i64> = coords.torsion_factors().iter().map(|&d| rng.gen_range(0..d as i64)).collect();
    let m = rng.gen_range(2..=6u64);
    let b: Vec<i64> = (0..coords.free_rank()).map(|_| rng.gen_range(0..m as i64)).collect();
    coords.character(p, &a, m, &b)
}

/// Block-diagonal sum of representations of one group.
pub fn direct_sum(reps: &[UnitaryRep]) -> Result<UnitaryRep> {
    let first = reps.first().ok_or_else(|| Error::InvalidRep("empty direct sum".into()))?;
    let group = first.group().clone();
    let dim: usize = reps.iter().map(UnitaryRep::dim).sum();
    let mut images = Vec::with_capacity(group.num_generators());
    for g in 0..group.num_generators() {
        let mut m: Matrix<CycloNumber> = Matrix::zeros(dim, dim);
        let mut off = 0;
        for r in reps {
            if r.group() != &group {
                return Err(Error::GroupMismatch("direct sum of representations of different groups".into()));
            }
            let x = &r.generator_images()[g];
            for i in 0..r.dim() {
                for j in 0..r.dim() {
                    m[(off + i, off + j)] = x[(i, j)].clone();
                }
            }
            off += r.dim();
        }
        images.push(m);
    }
    UnitaryRep::new(group, dim, images, Provenance::Explicit)
}

/// `P^-1 alpha(g) P` for a permutation matrix P.
fn permute_basis(r: &UnitaryRep, perm: &[usize]) -> Result<UnitaryRep> {
    let k = r.dim();
    let images = r
        .generator_images()
        .iter()
        .map(|m| Matrix::from_fn(k, k, |i, j| m[(perm[i], perm[j])].clone()))
        .collect();
    UnitaryRep::new(r.group().clone(), k, images, r.provenance())
}

fn euler_suite(rng: &mut ChaCha8Rng, corrupt: bool) -> Result<SuiteResult> {
    let mut res = SuiteResult::new(Suite::Euler);
    for e in entries(BATTERY_SPECS)? {
        let complex = if corrupt && e.label() == "lens:5,1" {
            let one = Matrix::from_vec(1, 1, vec![GroupRingElement::word(Word::empty())])?;
            e.complex.with_boundary(2, one)?
        } else {
            e.complex.clone()
        };
        let chi = complex.euler_characteristic();
        let p = complex.group();
        let mut reps = vec![UnitaryRep::trivial(p, 1), UnitaryRep::trivial(p, 2)];
        reps.extend(torsion_characters(p)?);
        for d in 2..=3 {
            for a in transitive_actions(p, d).iter().take(4) {
                reps.push(permutation_rep(p, a)?);
            }
        }
        if e.name == "quaternion_q8" {
            reps.push(quaternion_rep(p)?);
        }
        for _ in 0..3 {
            reps.push(random_character(p, rng)?);
        }
        for (i, r) in reps.iter().enumerate() {
            let out = twisted_homology(&complex, r).map(|h| h.euler == r.dim() as i64 * chi);
            res.check(out, || format!("{} rep #{i} (dim {})", e.label(), r.dim()));
        }
    }
    Ok(res)
}

/// Rational Betti numbers from the augmented integer matrices.
pub fn integral_betti(c: &EquivariantComplex) -> Vec<usize> {
    let ranks: Vec<usize> = c
        .boundaries()
        .iter()
        .map(|d| smith_normal_form_int(&d.map(|x| num_bigint::BigInt::from(x.augmentation()))).rank())
        .collect();
    (0..c.ranks().len())
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            c.ranks()[i] - out - ranks.get(i).copied().unwrap_or(0)
        })
        .collect()
}

fn trivial_suite() -> Result<SuiteResult> {
    let mut res = SuiteResult::new(Suite::Trivial);
    for e in entries(BATTERY_SPECS)? {
        let betti = integral_betti(&e.complex);
        for k in 1..=3 {
            let out = twisted_homology(&e.complex, &UnitaryRep::trivial(e.complex.group(), k))
                .map(|h| h.dims.iter().zip(&betti).all(|(d, b)| *d == k * b));
            res.check(out, || format!("{} with trivial rep of dim {k}", e.label()));
        }
    }
    Ok(res)
}

fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let codes: Vec<i64> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=gens as i64);
            if rng.gen_bool(0.5) { g } else { -g }
        })
        .collect();
    Word::from_signed(&codes).expect("codes are nonzero")
}

fn random_presentation(rng: &mut ChaCha8Rng) -> GroupPresentation {
    let gens = rng.gen_range(1..=3);
    let nrel = rng.gen_range(0..=3);
    let relators: Vec<Word> = (0..nrel).map(|_| random_word(rng, gens, 6)).filter(|w| !w.is_empty()).collect();
    GroupPresentation::new(gens, relators).expect("relators use existing generators")
}

fn h0_suite(rng: &mut ChaCha8Rng, count: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::new(Suite::H0);
    for i in 0..count {
        let p = random_presentation(rng);
        let r = random_character(&p, rng)?;
        let c = presentation_complex(&p);
        let out = coinvariants_h0(&p, &r).and_then(|h0| Ok(twisted_homology(&c, &r)?.dims[0] == h0));
        res.check(out, || format!("pair #{i}: {} generators, relators {:?}", p.num_generators(), p.relators()));
    }
    Ok(res)
}

const SHAPIRO_SPECS: &[&str] = &["circle", "torus2d", "t3", "trefoil_exterior", "handlebody:2", "quaternion_q8", "lens:3,1"];

fn shapiro_suite(rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut res = SuiteResult::new(Suite::Shapiro);
    for e in entries(SHAPIRO_SPECS)? {
        let p = e.complex.group();
        for d in 1..=4 {
            let actions = transitive_actions(p, d);
            let mut picked: Vec<&PermAction> = actions.iter().take(1).collect();
            if actions.len() > 1 {
                picked.push(&actions[rng.gen_range(1..actions.len())]);
            }
            for a in picked {
                let (cover, _) = cover_complex(&e.complex, a)?;
                let q = cover.group();
                let mut subs = vec![UnitaryRep::trivial(q, 1), random_character(q, rng)?];
                if q.num_generators() > 0 {
                    subs.push(direct_sum(&[random_character(q, rng)?, random_character(q, rng)?])?);
                }
                for s in subs {
                    let out = shapiro_compare(&e.complex, a, s.generator_images(), s.dim()).map(|(x, y)| x == y);
                    res.check(out, || format!("{} cover {:?} with a dim-{} rep", e.label(), a.images(), s.dim()));
                }
            }
        }
    }
    Ok(res)
}

const LES_SPECS: &[&str] = &["circle", "torus2d", "t3", "s1xs2", "trefoil_exterior", "handlebody:2", "lens:5,1", "quaternion_q8"];

fn random_piece(p: &GroupPresentation, rng: &mut ChaCha8Rng) -> Result<UnitaryRep> {
    match rng.gen_range(0..3) {
        0 => random_character(p, rng),
        1 => {
            let d = rng.gen_range(2..=3);
            let actions = transitive_actions(p, d);
            match actions.choose(rng) {
                Some(a) => permutation_rep(p, a),
                None => random_character(p, rng),
            }
        }
        _ => Ok(UnitaryRep::trivial(p, 1)),
    }
}

fn les_suite(rng: &mut ChaCha8Rng, count: usize) -> Result<SuiteResult> {
    let mut res = SuiteResult::new(Suite::Les);
    let battery = entries(LES_SPECS)?;
    for i in 0..count {
        let e = &battery[rng.gen_range(0..battery.len())];
        let p = e.complex.group();
        let pieces = (0..rng.gen_range(1..=3)).map(|_| random_piece(p, rng)).collect::<Result<Vec<_>>>()?;
        let sum = direct_sum(&pieces)?;
        let mut perm: Vec<usize> = (0..sum.dim()).collect();
        perm.shuffle(rng);
        let r = permute_basis(&sum, &perm)?;
        let out = invariant_coinvariant_split(&r).and_then(|s| subquotient_dims(&e.complex, &r, &s)).map(|_| true);
        res.check(out, || format!("rep #{i} of dim {} on {}", r.dim(), e.label()));
    }
    Ok(res)
}

/// A random induced representation: a character (or a sum of two) on a
/// random cover of degree 2 or 3.
fn random_induced(p: &GroupPresentation, rng: &mut ChaCha8Rng, actions: &[Vec<PermAction>]) -> Result<UnitaryRep> {
    let pool = &actions[rng.gen_range(0..actions.len())];
    let a = pool.choose(rng).ok_or_else(|| Error::Internal("no transitive actions".into()))?;
    let (q, data) = reidemeister_schreier(p, a)?;
    let beta = if rng.gen_bool(0.5) {
        random_character(&q, rng)?
    } else {
        direct_sum(&[random_character(&q, rng)?, random_character(&q, rng)?])?
    };
    induce_from(p, &data, &beta)
}

fn obstruction_suite(rng: &mut ChaCha8Rng) -> Result<SuiteResult> {
    let mut res = SuiteResult::new(Suite::Obstruction);
    for g in 1..=3usize {
        let e = parse_catalog_spec(&format!("handlebody:{g}"))?;
        let p = e.complex.group();
        let mut reps: Vec<UnitaryRep> = (1..=3).map(|k| UnitaryRep::trivial(p, k)).collect();
        reps.extend(torsion_characters(p)?);
        let mut actions = Vec::new();
        for d in 2..=3 {
            let acts = transitive_actions(p, d);
            for a in &acts {
                reps.push(permutation_rep(p, a)?);
            }
            actions.push(acts);
        }
        for _ in 0..10 {
            reps.push(random_character(p, rng)?);
            reps.push(random_induced(p, rng, &actions)?);
        }
        for (i, r) in reps.iter().enumerate() {
            let out = twisted_homology(&e.complex, r)
                .map(|h| h.dims[1] as i64 - h.dims[0] as i64 == (g as i64 - 1) * r.dim() as i64);
            res.check(out, || format!("handlebody:{g} rep #{i} (dim {})", r.dim()));
        }
    }

    let e = parse_catalog_spec("free_product_of:t3+t3")?;
    let c = &e.complex;
    let p = c.group();
    let not_acyclic = |r: &UnitaryRep| twisted_homology(c, r).map(|h| h.dims[0] != 0 || h.dims[1] != 0);
    for (i, r) in torsion_characters(p)?.iter().enumerate() {
        res.check(not_acyclic(r), || format!("t3*t3 torsion character #{i}"));
    }
    let mut small = Vec::new();
    for d in 1..=4 {
        let acts = transitive_actions(p, d);
        for (i, a) in acts.iter().enumerate() {
            let r = permutation_rep(p, a)?;
            res.check(not_acyclic(&r), || format!("t3*t3 permutation rep of degree {d}, #{i}"));
        }
        if (2..=3).contains(&d) {
            small.push(acts);
        }
    }
    for i in 0..50 {
        let r = random_induced(p, rng, &small)?;
        res.check(not_acyclic(&r), || format!("t3*t3 induced rep #{i} (dim {})", r.dim()));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn betti_of_catalog() {
        let e = parse_catalog_spec("t3").unwrap();
        assert_eq!(integral_betti(&e.complex), vec![1, 3, 3, 1]);
        let e = parse_catalog_spec("lens:5,1").unwrap();
        assert_eq!(integral_betti(&e.complex), vec![1, 0, 0, 1]);
    }

    #[test]
    fn fast_suites_pass_and_are_deterministic() {
        for only in [Suite::Trivial, Suite::H0, Suite::Les] {
            let opts = VerifyOptions { seed: 3, only: Some(only), corrupt_fixture: false };
            let a = run_suites(&opts).unwrap();
            assert!(a.all_passed, "{a:?}");
            assert_eq!(a, run_suites(&opts).unwrap());
        }
    }

    #[test]
    fn corrupted_fixture_fails_euler() {
        let opts = VerifyOptions { seed: 0, only: Some(Suite::Euler), corrupt_fixture: true };
        let r = run_suites(&opts).unwrap();
        assert!(!r.all_passed);
        assert!(r.suites[0].failures.iter().any(|f| f.contains("lens:5,1")));
    }
}
