//! Canonical representatives of equivalence classes of permutations.
//!
//! Two permutations are equivalent when one is obtained from the other by
//! cyclic shifts of the base line, by independent cyclic shifts of the
//! factors of a concatenation product, or by reordering those factors. The
//! factors of a class are the restrictions of a representative to the
//! connected components of its intersection graph; a connected class is a
//! single orbit under cyclic shift.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CycleSet, Permutation};

/// Canonical representative of an equivalence class; the memoization key.
///
/// Ordered by size first, then by the cycle normal form of the
/// representative compared lexicographically (a cycle that is a proper
/// prefix of another sorts first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Permutation", into = "Permutation")]
pub struct ClassKey {
    m: usize,
    word: CycleSet,
    perm: Permutation,
}

impl ClassKey {
    fn from_canonical(perm: Permutation) -> Self {
        ClassKey { m: perm.len(), word: perm.cycles(), perm }
    }

    pub fn of(perm: &Permutation) -> Self {
        canonical_form(perm)
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn into_perm(self) -> Permutation {
        self.perm
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// The connected factors of the class, in canonical order.
    pub fn factors(&self) -> Vec<ClassKey> {
        class_factors(&self.perm).into_iter().map(ClassKey::from_canonical).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.m > 0 && self.perm.connected_factors().len() == 1
    }
}

impl From<Permutation> for ClassKey {
    fn from(p: Permutation) -> Self {
        canonical_form(&p)
    }
}

impl From<ClassKey> for Permutation {
    fn from(k: ClassKey) -> Self {
        k.perm
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.word)
    }
}

impl fmt::Debug for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassKey{}", self.word)
    }
}

/// Strict class order: `k1 < k2`.
pub fn class_less(k1: &ClassKey, k2: &ClassKey) -> bool {
    k1 < k2
}

/// Canonical form of the class of `alpha`.
pub fn canonical_form(alpha: &Permutation) -> ClassKey {
    let factors = class_factors(alpha);
    let perm = factors.iter().fold(Permutation::empty(), |acc, f| acc.concat(f));
    ClassKey::from_canonical(perm)
}

/// Minimal cyclic shift of a permutation whose intersection graph is connected.
fn min_shift(p: &Permutation) -> Permutation {
    (1..p.len())
        .map(|k| p.cyclic_shift_by(k))
        .fold((p.cycles(), p.clone()), |best, q| {
            let w = q.cycles();
            if w < best.0 {
                (w, q)
            } else {
                best
            }
        })
        .1
}

fn concat_order(a: &Permutation, b: &Permutation) -> Ordering {
    a.concat(b).cycles().cmp(&b.concat(a).cycles())
}

/// Canonical connected factors, sorted into the order that minimises the
/// concatenated cycle word.
pub(crate) fn class_factors(alpha: &Permutation) -> Vec<Permutation> {
    if alpha.is_empty() {
        return Vec::new();
    }
    let cycles = alpha.cycles();
    let graph = alpha.intersection_graph();
    let mut factors: Vec<Permutation> = graph
        .components()
        .into_iter()
        .map(|comp| {
            let keep: BTreeSet<usize> = comp.iter().flat_map(|&v| cycles.cycles()[v - 1].iter().copied()).collect();
            min_shift(&alpha.restriction(&keep))
        })
        .collect();
    factors.sort_by(concat_order);
    factors
}

#[cfg(test)]
mod tests {
    use std::collections::{HashMap, HashSet};

    use itertools::Itertools;

    use super::*;
    use crate::perm::{enumerate, EnumKind};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// The defining moves: a cyclic shift of the whole base line, a cyclic
    /// shift of one interval factor in place, or a swap of two adjacent
    /// interval factors.
    fn moves(q: &Permutation) -> Vec<Permutation> {
        let mut next = vec![q.cyclic_shift()];
        let factors = q.connected_factors();
        if factors.len() > 1 {
            let join = |fs: &[Permutation]| fs.iter().fold(Permutation::empty(), |a, f| a.concat(f));
            for i in 0..factors.len() {
                let mut fs = factors.clone();
                fs[i] = fs[i].cyclic_shift();
                next.push(join(&fs));
            }
            for i in 1..factors.len() {
                let mut fs = factors.clone();
                fs.swap(i - 1, i);
                next.push(join(&fs));
            }
        }
        next
    }

    /// Classes of the equivalence generated by [`moves`], via union-find.
    fn generated_classes(m: usize) -> Vec<Vec<Permutation>> {
        let perms: Vec<Permutation> = enumerate(EnumKind::All, m).unwrap().collect();
        let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut parent: Vec<usize> = (0..perms.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, p) in perms.iter().enumerate() {
            for q in moves(p) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, index[&q]));
                parent[a] = b;
            }
        }
        let mut classes: HashMap<usize, Vec<Permutation>> = HashMap::new();
        for (i, p) in perms.iter().enumerate() {
            classes.entry(find(&mut parent, i)).or_default().push(p.clone());
        }
        classes.into_values().collect()
    }

    #[test]
    fn shifts_of_a_chord_diagram_share_a_key() {
        let a = p("(1 3)(2 4)");
        let keys: HashSet<ClassKey> = (0..4).map(|k| canonical_form(&a.cyclic_shift_by(k))).collect();
        assert_eq!(keys.len(), 1);
    }

    #[test]
    fn product_is_commutative_on_keys() {
        let a = p("(1 3 2)");
        let b = p("(1 3)(2 4)");
        assert_eq!(canonical_form(&a.concat(&b)), canonical_form(&b.concat(&a)));
    }

    #[test]
    fn standard_cycle_is_canonical() {
        for m in 1..8 {
            let s = Permutation::standard_cycle(m);
            assert_eq!(canonical_form(&s).perm(), &s);
        }
    }

    #[test]
    fn ordering_examples() {
        let s3 = canonical_form(&Permutation::standard_cycle(3));
        let inv = canonical_form(&p("(1 3 2)"));
        assert!(class_less(&s3, &inv));
        assert!(!class_less(&s3, &s3));
        let two = canonical_form(&p("(1 2)"));
        let three = canonical_form(&Permutation::identity(3));
        assert!(class_less(&two, &three));
    }

    #[test]
    fn fixed_point_under_an_arc_splits_off() {
        assert_eq!(canonical_form(&p("(1 3)(2)")), canonical_form(&p("(1 2)(3)")));
        assert_eq!(canonical_form(&p("(1 4)(2 3)")), canonical_form(&p("(1 2)(3 4)")));
    }

    #[test]
    fn keys_match_the_generated_equivalence() {
        for m in 0..=6 {
            let classes = generated_classes(m);
            let mut keys = HashSet::new();
            for class in &classes {
                let min = class.iter().map(|q| q.cycles()).min().unwrap();
                let key = canonical_form(&class[0]);
                for a in class {
                    assert_eq!(canonical_form(a), key, "m={m}: {a}");
                }
                // The key is the lexicographically smallest member of the class.
                assert_eq!(key.word, min, "m={m}");
                assert!(keys.insert(key), "m={m}: two classes share a key");
            }
        }
    }

    #[test]
    fn factor_sort_matches_brute_force_ordering() {
        for m in 2..=7 {
            for a in enumerate(EnumKind::All, m).unwrap() {
                let mut fs = class_factors(&a);
                if fs.len() < 2 || fs.len() > 5 {
                    continue;
                }
                let best = fs
                    .iter()
                    .permutations(fs.len())
                    .map(|order| order.into_iter().fold(Permutation::empty(), |acc, f| acc.concat(f)).cycles())
                    .min()
                    .unwrap();
                fs.sort_by(concat_order);
                let got = fs.iter().fold(Permutation::empty(), |acc, f| acc.concat(f));
                assert_eq!(got.cycles(), best, "{a}");
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for a in enumerate(EnumKind::All, 6).unwrap() {
            let k = canonical_form(&a);
            assert_eq!(canonical_form(k.perm()), k);
        }
    }

    #[test]
    fn class_order_is_strict_total() {
        for m in 0..=5 {
            let keys: Vec<ClassKey> = enumerate(EnumKind::All, m)
                .unwrap()
                .map(|a| canonical_form(&a))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for a in &keys {
                assert!(!class_less(a, a));
                for b in &keys {
                    if a != b {
                        assert!(class_less(a, b) ^ class_less(b, a));
                    }
                    for c in &keys {
                        if class_less(a, b) && class_less(b, c) {
                            assert!(class_less(a, c));
                        }
                    }
                }
            }
        }
    }
}
