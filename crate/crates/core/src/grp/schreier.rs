use serde::Serialize;

use super::action::PermAction;
use super::presentation::GroupPresentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Coset representatives and Schreier generators for the stabilizer of
/// point 0 under a transitive action.
#[derive(Clone, Debug, Serialize)]
pub struct SchreierData {
    #[serde(skip)]
    action: PermAction,
    /// `transversal[i]` maps point 0 to point `i`.
    transversal: Vec<Word>,
    /// `edge_generator[i][g]` is the Schreier generator for the edge
    /// `(i, g)`, or `None` for spanning-tree edges.
    #[serde(skip)]
    edge_generator: Vec<Vec<Option<usize>>>,
    /// `(coset, generator)` of each Schreier generator, in order.
    edges: Vec<(usize, usize)>,
}

impl SchreierData {
    pub fn new(action: &PermAction) -> Result<Self> {
        if !action.is_transitive() {
            return Err(Error::InvalidAction("action is not transitive".into()));
        }
        let m = action.degree();
        let n = action.num_generators();
        let mut transversal: Vec<Option<Word>> = vec![None; m];
        let mut tree = vec![vec![false; n]; m];
        transversal[0] = Some(Word::empty());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            let rep_c = transversal[c].clone().unwrap();
            for inverse in [false, true] {
                for g in 0..n {
                    let l = Letter::new(g, inverse);
                    let d = action.act_letter(c, l);
                    if transversal[d].is_none() {
                        transversal[d] = Some(rep_c.concat(&Word::from_letters(&[l])));
                        if inverse {
                            tree[d][g] = true;
                        } else {
                            tree[c][g] = true;
                        }
                        queue.push(d);
                    }
                }
            }
        }
        let mut edge_generator = vec![vec![None; n]; m];
        let mut edges = Vec::new();
        for (i, row) in edge_generator.iter_mut().enumerate() {
            for (g, slot) in row.iter_mut().enumerate() {
                if !tree[i][g] {
                    *slot = Some(edges.len());
                    edges.push((i, g));
                }
            }
        }
        Ok(SchreierData {
            action: action.clone(),
            transversal: transversal.into_iter().map(Option::unwrap).collect(),
            edge_generator,
            edges,
        })
    }

    pub fn action(&self) -> &PermAction {
        &self.action
    }

    pub fn degree(&self) -> usize {
        self.action.degree()
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn num_schreier_generators(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Schreier generator for edge `(coset, generator)`, if not a tree edge.
    pub fn edge_generator(&self, coset: usize, generator: usize) -> Option<usize> {
        self.edge_generator[coset][generator]
    }

    /// `rep_i g rep_{i.g}^-1` as a word in the original generators.
    pub fn schreier_generator_word(&self, s: usize) -> Word {
        let (i, g) = self.edges[s];
        let j = self.action.act_letter(i, Letter::new(g, false));
        self.transversal[i]
            .concat(&Word::generator(g))
            .concat(&self.transversal[j].inverse())
    }

    /// Rewrites `w` read from coset `start`. Returns the end coset `e` and
    /// the Schreier word equal to `rep_start w rep_e^-1`.
    pub fn rewrite_from(&self, start: usize, w: &Word) -> (usize, Word) {
        let mut i = start;
        let mut letters = Vec::new();
        for &l in w.letters() {
            if l.inverse {
                let j = self.action.act_letter(i, l);
                if let Some(s) = self.edge_generator[j][l.generator] {
                    letters.push(Letter::new(s, true));
                }
                i = j;
            } else {
                if let Some(s) = self.edge_generator[i][l.generator] {
                    letters.push(Letter::new(s, false));
                }
                i = self.action.act_letter(i, l);
            }
        }
        (i, Word::from_letters(&letters))
    }

    /// Rewrites a word lying in the stabilizer of 0.
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        match self.rewrite_from(0, w) {
            (0, h) => Ok(h),
            (e, _) => Err(Error::InvalidAction(format!(
                "word {w} moves the basepoint to {e}"
            ))),
        }
    }
}

/// Presentation of the stabilizer of point 0 on the Schreier generators,
/// with one rewritten relator per (coset, relator) pair, ordered by coset.
pub fn reidemeister_schreier(
    p: &GroupPresentation,
    a: &PermAction,
) -> Result<(GroupPresentation, SchreierData)> {
    a.validate(p)?;
    let data = SchreierData::new(a)?;
    let mut relators = Vec::with_capacity(a.degree() * p.relators().len());
    for c in 0..a.degree() {
        for r in p.relators() {
            let (end, h) = data.rewrite_from(c, r);
            if end != c {
                return Err(Error::Internal(
                    "relator moved a coset after validation".into(),
                ));
            }
            relators.push(h);
        }
    }
    let sub = GroupPresentation::new(data.num_schreier_generators(), relators)?;
    Ok((sub, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::presentation::abelianization;
    use crate::grp::transitive_actions;

    #[test]
    fn index_two_subgroup_of_z() {
        let z = GroupPresentation::free(1);
        let a = PermAction::new(2, vec![vec![1, 0]]).unwrap();
        let (sub, data) = reidemeister_schreier(&z, &a).unwrap();
        assert_eq!(sub.num_generators(), 1);
        assert!(sub.relators().is_empty());
        assert_eq!(data.schreier_generator_word(0).to_signed(), vec![1, 1]);
        assert_eq!(
            data.rewrite(&Word::generator(0).pow(4))
                .unwrap()
                .to_signed(),
            vec![1, 1]
        );
        assert!(data.rewrite(&Word::generator(0)).is_err());
    }

    #[test]
    fn z4_to_z2() {
        let z4 = GroupPresentation::cyclic(4);
        let a = PermAction::new(2, vec![vec![1, 0]]).unwrap();
        let (sub, _) = reidemeister_schreier(&z4, &a).unwrap();
        let ab = abelianization(&sub);
        assert_eq!((ab.betti, ab.torsion), (0, vec![2]));
    }

    #[test]
    fn index_one_is_identity() {
        let p = GroupPresentation::trefoil();
        let (sub, data) = reidemeister_schreier(&p, &PermAction::trivial(2)).unwrap();
        assert_eq!(sub, p);
        let w = Word::from_signed(&[1, -2, 2, 2]).unwrap();
        assert_eq!(data.rewrite(&w).unwrap(), w);
    }

    #[test]
    fn counts_and_euler_characteristic() {
        let c = |i: usize, j: usize| Word::commutator(&Word::generator(i), &Word::generator(j));
        let t3 = GroupPresentation::new(3, vec![c(0, 1), c(0, 2), c(1, 2)]).unwrap();
        for p in [
            GroupPresentation::trefoil(),
            GroupPresentation::surface(2),
            t3,
        ] {
            let chi = 1 - p.num_generators() as i64 + p.relators().len() as i64;
            for d in 1..=3 {
                for a in transitive_actions(&p, d) {
                    let (sub, data) = reidemeister_schreier(&p, &a).unwrap();
                    assert_eq!(sub.num_generators(), d * p.num_generators() - (d - 1));
                    let sub_chi = 1 - sub.num_generators() as i64 + sub.relators().len() as i64;
                    assert_eq!(sub_chi, d as i64 * chi);
                    // rewriting round-trips on Schreier generators
                    for s in 0..data.num_schreier_generators() {
                        let w = data.schreier_generator_word(s);
                        assert_eq!(data.rewrite(&w).unwrap(), Word::generator(s));
                    }
                }
            }
        }
    }
}
