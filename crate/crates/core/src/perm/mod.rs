//! Permutations of `{1..m}` viewed as one-vertex hypermaps.
//!
//! Elements are 1-indexed throughout. The hypervertex is always the
//! standard long cycle `σ = (1 2 … m)`.

mod canon;
mod enumerate;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PermError;
use crate::graph::SimpleGraph;

pub use canon::{canonical_form, class_less, ClassKey};
pub use enumerate::{enumerate, EnumKind, PermIter};
pub use parse::{format_perm, parse_perm, Notation};

/// A bijection of `{1..m}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

/// Disjoint-cycle decomposition; each cycle starts at its minimum and the
/// cycles are sorted by that minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSet {
    cycles: Vec<Vec<usize>>,
}

impl CycleSet {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cycles.iter()
    }

    pub fn into_inner(self) -> Vec<Vec<usize>> {
        self.cycles
    }
}

impl fmt::Display for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "()");
        }
        for c in &self.cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(images: Vec<usize>) -> Result<Self, PermError> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl Permutation {
    /// Builds a permutation from its one-line images, `images[i-1] = α(i)`.
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x > m {
                return Err(PermError::OutOfRange { element: x, m });
            }
            if seen[x] {
                return Err(PermError::Duplicate(x));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of `{1..m}` from disjoint cycles; unlisted
    /// elements are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(m: usize, cycles: &[C]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (1..=m).collect();
        let mut seen = vec![false; m + 1];
        for c in cycles {
            let c = c.as_ref();
            for (i, &x) in c.iter().enumerate() {
                if x == 0 || x > m {
                    return Err(PermError::OutOfRange { element: x, m });
                }
                if seen[x] {
                    return Err(PermError::Duplicate(x));
                }
                seen[x] = true;
                images[x - 1] = c[(i + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn empty() -> Self {
        Permutation { images: Vec::new() }
    }

    pub fn identity(m: usize) -> Self {
        Permutation { images: (1..=m).collect() }
    }

    /// The standard long cycle `σ(i) = i+1`, `σ(m) = 1`.
    pub fn standard_cycle(m: usize) -> Self {
        Permutation { images: (1..=m).map(|i| if i == m { 1 } else { i + 1 }).collect() }
    }

    /// Number of permuted elements.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `α(i)` for `1 ≤ i ≤ m`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation { images: other.images.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn is_standard_cycle(&self) -> bool {
        let m = self.len();
        self.images.iter().enumerate().all(|(i, &x)| x == if i + 1 == m { 1 } else { i + 2 })
    }

    pub fn cycles(&self) -> CycleSet {
        let m = self.len();
        let mut seen = vec![false; m + 1];
        let mut cycles = Vec::new();
        for start in 1..=m {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            cycles.push(cycle);
        }
        CycleSet { cycles }
    }

    /// `c(α)`.
    pub fn num_cycles(&self) -> usize {
        let m = self.len();
        let mut seen = vec![false; m + 1];
        let mut count = 0;
        for start in 1..=m {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
            }
        }
        count
    }

    /// Index of the cycle containing each element (by increasing cycle minimum).
    pub(crate) fn cycle_labels(&self) -> (Vec<usize>, usize) {
        let m = self.len();
        let mut label = vec![usize::MAX; m + 1];
        let mut next = 0;
        for start in 1..=m {
            if label[start] != usize::MAX {
                continue;
            }
            let mut x = start;
            while label[x] == usize::MAX {
                label[x] = next;
                x = self.apply(x);
            }
            next += 1;
        }
        (label, next)
    }

    /// `a(α) = |{i : 0 < i < m, α(i) > i}|`.
    pub fn ascents(&self) -> usize {
        let m = self.len();
        (1..m).filter(|&i| self.apply(i) > i).count()
    }

    /// `a(α) = m − c(α)`.
    pub fn is_positive(&self) -> bool {
        self.ascents() + self.num_cycles() == self.len()
    }

    /// Number of hyperfaces, the cycles of `α⁻¹ ∘ σ` (so the standard
    /// cycle has `m` faces); the empty permutation has one face.
    pub fn faces(&self) -> usize {
        let m = self.len();
        if m == 0 {
            return 1;
        }
        let inv = self.inverse();
        let phi: Vec<usize> = (1..=m).map(|i| inv.apply(i % m + 1)).collect();
        Permutation { images: phi }.num_cycles()
    }

    /// `σ⁻¹ ∘ α ∘ σ`: the base line rotated by one position.
    pub fn cyclic_shift(&self) -> Permutation {
        self.cyclic_shift_by(1)
    }

    /// `σ⁻ᵏ ∘ α ∘ σᵏ`.
    pub fn cyclic_shift_by(&self, k: usize) -> Permutation {
        let m = self.len();
        if m == 0 {
            return self.clone();
        }
        let k = k % m;
        let images = (0..m)
            .map(|i| {
                let src = (i + k) % m;
                (self.images[src] - 1 + m - k) % m + 1
            })
            .collect();
        Permutation { images }
    }

    /// Restriction to `keep`: follow each cycle skipping dropped elements,
    /// then renumber the survivors increasingly.
    pub fn restriction(&self, keep: &BTreeSet<usize>) -> Permutation {
        let m = self.len();
        let mut new_index = vec![0; m + 1];
        for (k, &x) in keep.iter().enumerate() {
            new_index[x] = k + 1;
        }
        let mut images = vec![0; keep.len()];
        for &x in keep {
            let mut y = self.apply(x);
            while new_index[y] == 0 {
                y = self.apply(y);
            }
            images[new_index[x] - 1] = new_index[y];
        }
        Permutation { images }
    }

    /// Restriction to the union of the given cycles (by index into `cycles()`).
    pub fn restrict_to_cycles(&self, cycles: &CycleSet, which: impl IntoIterator<Item = usize>) -> Permutation {
        let keep: BTreeSet<usize> = which.into_iter().flat_map(|c| cycles.cycles[c].iter().copied()).collect();
        self.restriction(&keep)
    }

    /// Removes one element, rerouting its predecessor to its successor.
    pub(crate) fn contract(&self, e: usize) -> Permutation {
        let keep: BTreeSet<usize> = (1..=self.len()).filter(|&x| x != e).collect();
        self.restriction(&keep)
    }

    /// Concatenation product `α₁ # α₂`.
    pub fn concat(&self, other: &Permutation) -> Permutation {
        let m1 = self.len();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + m1));
        Permutation { images }
    }

    /// The finest splitting of the base line into consecutive α-invariant
    /// intervals, each renumbered from 1.
    pub fn connected_factors(&self) -> Vec<Permutation> {
        let m = self.len();
        let mut factors = Vec::new();
        let mut start = 0;
        let mut reach = 0;
        for i in 0..m {
            reach = reach.max(self.images[i]);
            if reach == i + 1 {
                let images = self.images[start..=i].iter().map(|&x| x - start).collect();
                factors.push(Permutation { images });
                start = i + 1;
            }
        }
        factors
    }

    /// Intersection graph `γ(α)`: vertices are cycles ordered by minimum,
    /// edges join interlacing cycles.
    pub fn intersection_graph(&self) -> SimpleGraph {
        let (label, n) = self.cycle_labels();
        let m = self.len();
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                // Count runs of the u/v labels along the base line; four or
                // more runs means an alternating a < b < c < d pattern.
                let mut runs = 0;
                let mut last = usize::MAX;
                for &l in &label[1..=m] {
                    if (l == u || l == v) && l != last {
                        runs += 1;
                        last = l;
                    }
                }
                if runs >= 4 {
                    g.add_edge(u + 1, v + 1);
                }
            }
        }
        g
    }

    /// `γ(α)` with each vertex weighted by its cycle length.
    pub fn weighted_intersection_graph(&self) -> SimpleGraph {
        let weights = self.cycles().iter().map(|c| c.len()).collect();
        self.intersection_graph().with_weights(weights)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}
