use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::unitary::{character_from_exponents, UnitaryRep};
use crate::error::Result;
use crate::exactnum::cyclo::lcm;
use crate::exactnum::Ring;
use crate::grp::presentation::abelianization_with_snf;
use crate::grp::GroupPresentation;

/// Coordinates on `H_1(pi; Z)` read off the Smith form `U A V = D` of the
/// relation matrix: generator j has coordinate vector row j of V, with
/// coordinate i taken mod `d_i`.
#[derive(Clone, Debug)]
pub struct AbelianCoords {
    /// `v[j][i]`
    v: Vec<Vec<i64>>,
    /// coordinate indices with invariant factor > 1, and those factors
    torsion: Vec<(usize, u64)>,
    /// coordinate indices generating the free part
    free: Vec<usize>,
}

impl AbelianCoords {
    pub fn new(p: &GroupPresentation) -> Self {
        let (_, snf) = abelianization_with_snf(p);
        let n = p.num_generators();
        let diag = snf.diagonal();
        let v = (0..n)
            .map(|j| (0..n).map(|i| to_i64(&snf.v[(j, i)])).collect())
            .collect();
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for i in 0..n {
            match diag.get(i) {
                Some(d) if d.is_zero() => free.push(i),
                None => free.push(i),
                Some(d) if !d.is_one() => {
                    torsion.push((i, d.to_u64().expect("invariant factor fits in u64")))
                }
                _ => {}
            }
        }
        AbelianCoords { v, torsion, free }
    }

    pub fn torsion_factors(&self) -> Vec<u64> {
        self.torsion.iter().map(|&(_, d)| d).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    /// The character sending torsion coordinate i to `zeta_{d_i}^{a_i}` and
    /// free coordinate f to `zeta_{free_order}^{b_f}`.
    pub fn character(
        &self,
        p: &GroupPresentation,
        a: &[i64],
        free_order: u64,
        b: &[i64],
    ) -> Result<UnitaryRep> {
        let l = self
            .torsion
            .iter()
            .fold(free_order.max(1), |acc, &(_, d)| lcm(acc, d));
        let exps: Vec<i64> = self
            .v
            .iter()
            .map(|row| {
                let mut e: i128 = 0;
                for (&(i, d), &ai) in self.torsion.iter().zip(a) {
                    e += row[i] as i128 * ai as i128 * (l / d) as i128;
                }
                for (&i, &bi) in self.free.iter().zip(b) {
                    e += row[i] as i128 * bi as i128 * (l / free_order.max(1)) as i128;
                }
                e.rem_euclid(l as i128) as i64
            })
            .collect();
        character_from_exponents(p, l, &exps)
    }
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("change-of-basis entry fits in i64")
}

/// Coordinate vectors `(a_1, ..., a_s)` with `0 <= a_i < d_i`, in
/// lexicographic order.
pub fn torsion_coordinates(factors: &[u64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut a = vec![0i64; factors.len()];
    loop {
        out.push(a.clone());
        // odometer, last coordinate fastest
        let mut k = factors.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            a[k] += 1;
            if (a[k] as u64) < factors[k] {
                break;
            }
            a[k] = 0;
        }
    }
}

/// Every character of the torsion subgroup of `H_1(pi; Z)`, extended by
/// zero on the free part, at conductor `lcm(d_i)`. Ordered as
/// [`torsion_coordinates`], so the trivial character comes first.
pub fn torsion_characters(p: &GroupPresentation) -> Result<Vec<UnitaryRep>> {
    let coords = AbelianCoords::new(p);
    torsion_coordinates(&coords.torsion_factors())
        .iter()
        .map(|a| coords.character(p, a, 1, &[]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{CycloNumber, Matrix};
    use crate::grp::Word;
    use crate::rep::unitary::verify_rep;

    #[test]
    fn cyclic_characters() {
        let chars = torsion_characters(&GroupPresentation::cyclic(5)).unwrap();
        assert_eq!(chars.len(), 5);
        for (a, r) in chars.iter().enumerate() {
            assert!(verify_rep(r));
            let z = &r.generator_images()[0][(0, 0)];
            assert_eq!(z, &CycloNumber::zeta_pow(5, a as i64).embed(5).unwrap());
        }
        assert_eq!(chars[0].generator_images()[0], Matrix::identity(1));
    }

    #[test]
    fn free_group_has_only_trivial() {
        let chars = torsion_characters(&GroupPresentation::free(2)).unwrap();
        assert_eq!(chars.len(), 1);
        assert!(chars[0]
            .generator_images()
            .iter()
            .all(|m| *m == Matrix::identity(1)));
    }

    #[test]
    fn klein_four() {
        let p = GroupPresentation::new(
            2,
            vec![
                Word::generator(0).pow(2),
                Word::generator(1).pow(2),
                Word::commutator(&Word::generator(0), &Word::generator(1)),
            ],
        )
        .unwrap();
        let chars = torsion_characters(&p).unwrap();
        assert_eq!(chars.len(), 4);
        let trivial: Vec<_> = chars
            .iter()
            .filter(|r| {
                r.generator_images()
                    .iter()
                    .all(|m| *m == Matrix::identity(1))
            })
            .collect();
        assert_eq!(trivial.len(), 1);
        for r in &chars {
            assert!(verify_rep(r));
        }
        // the four characters are distinct
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(chars[i].generator_images(), chars[j].generator_images());
            }
        }
    }

    #[test]
    fn mixed_torsion_and_free() {
        // Z/6 x Z: relator x^6 and [x, y]
        let p = GroupPresentation::new(
            2,
            vec![
                Word::generator(0).pow(6),
                Word::commutator(&Word::generator(0), &Word::generator(1)),
            ],
        )
        .unwrap();
        let coords = AbelianCoords::new(&p);
        assert_eq!(coords.torsion_factors(), vec![6]);
        assert_eq!(coords.free_rank(), 1);
        let chars = torsion_characters(&p).unwrap();
        assert_eq!(chars.len(), 6);
        assert!(chars.iter().all(verify_rep));
        let r = coords.character(&p, &[1], 4, &[1]).unwrap();
        assert!(verify_rep(&r));
        assert_eq!(r.conductor(), 12);
    }
}
