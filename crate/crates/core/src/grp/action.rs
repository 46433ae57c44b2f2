use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::presentation::GroupPresentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A right action of the free group on `{0, ..., degree-1}` given by one
/// permutation per generator: point `i` moves to `images[g][i]` under `g`.
///
/// Words act left to right, so `i.(uv) = (i.u).v`. The subgroup it encodes
/// is the stabilizer of point 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermAction {
    images: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
    degree: usize,
}

impl PermAction {
    /// Checks that every image array is a permutation of one common degree.
    pub fn new(degree: usize, images: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidAction("degree must be at least 1".into()));
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (g, img) in images.iter().enumerate() {
            if img.len() != degree {
                return Err(Error::InvalidAction(format!(
                    "generator {} has {} images, expected {degree}",
                    g + 1,
                    img.len()
                )));
            }
            let mut inv = vec![usize::MAX; degree];
            for (i, &j) in img.iter().enumerate() {
                if j >= degree || inv[j] != usize::MAX {
                    return Err(Error::InvalidAction(format!(
                        "generator {} is not a permutation",
                        g + 1
                    )));
                }
                inv[j] = i;
            }
            inverses.push(inv);
        }
        Ok(PermAction {
            images,
            inverses,
            degree,
        })
    }

    /// The action of every generator as the identity on `degree` points.
    pub fn trivial(num_generators: usize) -> Self {
        PermAction::new(1, vec![vec![0]; num_generators]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn act_letter(&self, point: usize, l: Letter) -> usize {
        if l.inverse {
            self.inverses[l.generator][point]
        } else {
            self.images[l.generator][point]
        }
    }

    pub fn act(&self, point: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(point, |p, &l| self.act_letter(p, l))
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            for g in 0..self.images.len() {
                for q in [self.images[g][p], self.inverses[g][p]] {
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks generator count, relators acting trivially, and transitivity.
    pub fn validate(&self, p: &GroupPresentation) -> Result<()> {
        if self.images.len() != p.num_generators() {
            return Err(Error::InvalidAction(format!(
                "{} permutations for {} generators",
                self.images.len(),
                p.num_generators()
            )));
        }
        for (k, r) in p.relators().iter().enumerate() {
            if (0..self.degree).any(|i| self.act(i, r) != i) {
                return Err(Error::InvalidAction(format!(
                    "relator {} does not act trivially",
                    k + 1
                )));
            }
        }
        if !self.is_transitive() {
            return Err(Error::InvalidAction("action is not transitive".into()));
        }
        Ok(())
    }

    /// Relabels points in BFS discovery order from `start`, generators in
    /// index order with inverses after positives.
    fn relabeled_from(&self, start: usize) -> Option<Vec<Vec<usize>>> {
        let n = self.degree;
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for table in self.images.iter().chain(self.inverses.iter()) {
                let q = table[p];
                if label[q] == usize::MAX {
                    label[q] = order.len();
                    order.push(q);
                }
            }
        }
        if order.len() != n {
            return None;
        }
        Some(
            self.images
                .iter()
                .map(|img| order.iter().map(|&p| label[img[p]]).collect())
                .collect(),
        )
    }

    /// Lexicographically least relabeling over all basepoints: equal for two
    /// transitive actions iff they are conjugate in the symmetric group.
    pub fn canonical_form(&self) -> Vec<Vec<usize>> {
        (0..self.degree)
            .filter_map(|s| self.relabeled_from(s))
            .min()
            .unwrap_or_else(|| self.images.clone())
    }
}

/// All transitive actions of degree exactly `degree` compatible with `p`,
/// one per isomorphism class, each in canonical labeling, sorted.
pub fn transitive_actions(p: &GroupPresentation, degree: usize) -> Vec<PermAction> {
    let n = p.num_generators();
    if degree == 0 {
        return Vec::new();
    }
    let perms = all_permutations(degree);
    let invs: Vec<Vec<usize>> = perms
        .iter()
        .map(|q| {
            let mut inv = vec![0; degree];
            for (i, &j) in q.iter().enumerate() {
                inv[j] = i;
            }
            inv
        })
        .collect();
    // relators grouped by the last generator they mention
    let mut check_at: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(g) = r.max_generator() {
            check_at[g].push(r);
        }
    }
    // every action is conjugate to one whose first generator is a fixed
    // representative of its cycle type
    let first = cycle_type_representatives(degree)
        .iter()
        .map(|q| perms.binary_search(q).expect("a permutation"))
        .collect();
    let mut s = Search {
        perms: &perms,
        invs: &invs,
        check_at,
        degree,
        first,
        chosen: Vec::with_capacity(n),
        out: BTreeSet::new(),
    };
    s.run();
    s.out
        .into_iter()
        .map(|images| PermAction::new(degree, images).expect("a permutation action"))
        .collect()
}

/// One permutation per partition of `n`, with cycles on consecutive blocks.
fn cycle_type_representatives(n: usize) -> Vec<Vec<usize>> {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            partitions(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|part| {
            let mut q = Vec::with_capacity(n);
            let mut start = 0;
            for len in part {
                q.extend((start + 1..start + len).chain([start]));
                start += len;
            }
            q
        })
        .collect()
}

struct Search<'a> {
    perms: &'a [Vec<usize>],
    invs: &'a [Vec<usize>],
    check_at: Vec<Vec<&'a Word>>,
    degree: usize,
    first: Vec<usize>,
    chosen: Vec<usize>,
    out: BTreeSet<Vec<Vec<usize>>>,
}

impl Search<'_> {
    fn act(&self, mut i: usize, w: &Word) -> usize {
        for l in w.letters() {
            let k = self.chosen[l.generator];
            i = if l.inverse {
                self.invs[k][i]
            } else {
                self.perms[k][i]
            };
        }
        i
    }

    fn run(&mut self) {
        let g = self.chosen.len();
        if g == self.check_at.len() {
            let a = PermAction {
                images: self.chosen.iter().map(|&k| self.perms[k].clone()).collect(),
                inverses: self.chosen.iter().map(|&k| self.invs[k].clone()).collect(),
                degree: self.degree,
            };
            if a.is_transitive() {
                self.out.insert(a.canonical_form());
            }
            return;
        }
        let count = if g == 0 {
            self.first.len()
        } else {
            self.perms.len()
        };
        for idx in 0..count {
            let k = if g == 0 { self.first[idx] } else { idx };
            self.chosen.push(k);
            let ok = self.check_at[g]
                .iter()
                .all(|r| (0..self.degree).all(|i| self.act(i, r) == i));
            if ok {
                self.run();
            }
            self.chosen.pop();
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

impl Serialize for PermAction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermAction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<Vec<usize>>::deserialize(d)?;
        let degree = images.first().map_or(1, Vec::len);
        PermAction::new(degree, images).map_err(serde::de::Error::custom)
    }
}

/// A homomorphism to Z given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntGrading(pub Vec<i64>);

impl IntGrading {
    pub fn weight(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| self.0[l.generator] * l.exponent())
            .sum()
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |a, &b| num_integer::gcd(a, b))
    }
}

/// True iff φ has one value per generator and every relator has weight 0.
pub fn verify_grading(p: &GroupPresentation, phi: &IntGrading) -> bool {
    check_grading(p, phi).is_ok()
}

pub fn check_grading(p: &GroupPresentation, phi: &IntGrading) -> Result<()> {
    if phi.0.len() != p.num_generators() {
        return Err(Error::Shape(format!(
            "grading has {} values for {} generators",
            phi.0.len(),
            p.num_generators()
        )));
    }
    match p.relators().iter().position(|r| phi.weight(r) != 0) {
        Some(k) => Err(Error::InvalidGrading { relator: k + 1 }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_examples() {
        assert!(verify_grading(
            &GroupPresentation::trefoil(),
            &IntGrading(vec![1, 1])
        ));
        assert!(!verify_grading(
            &GroupPresentation::cyclic(2),
            &IntGrading(vec![1])
        ));
        assert!(verify_grading(
            &GroupPresentation::surface(2),
            &IntGrading(vec![0; 4])
        ));
        assert_eq!(IntGrading(vec![4, 6]).gcd(), 2);
    }

    #[test]
    fn action_validation() {
        let z4 = GroupPresentation::cyclic(4);
        let a = PermAction::new(2, vec![vec![1, 0]]).unwrap();
        a.validate(&z4).unwrap();
        assert_eq!(a.act(0, &Word::generator(0).pow(3)), 1);
        let z3 = GroupPresentation::cyclic(3);
        assert!(a.validate(&z3).is_err());
        let nontrans = PermAction::new(2, vec![vec![0, 1]]).unwrap();
        assert!(nontrans.validate(&z4).is_err());
        assert!(PermAction::new(2, vec![vec![0, 0]]).is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[1,0]]");
    }

    #[test]
    fn transitive_action_counts() {
        // Z has one transitive action of each degree; Z/4 has them for d | 4
        let z = GroupPresentation::free(1);
        for d in 1..=4 {
            assert_eq!(transitive_actions(&z, d).len(), 1);
        }
        let z4 = GroupPresentation::cyclic(4);
        let counts: Vec<usize> = (1..=4).map(|d| transitive_actions(&z4, d).len()).collect();
        assert_eq!(counts, vec![1, 1, 0, 1]);
        // index-2 subgroups of F_2: 3
        assert_eq!(transitive_actions(&GroupPresentation::free(2), 2).len(), 3);
        // conjugacy classes of index-3 subgroups of F_2: 7 (13 subgroups)
        assert_eq!(transitive_actions(&GroupPresentation::free(2), 3).len(), 7);
    }
}
