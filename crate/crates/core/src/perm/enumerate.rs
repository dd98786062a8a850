use std::str::FromStr;

use super::Permutation;
use crate::error::PermError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumKind {
    /// Every bijection of `{1..m}`.
    All,
    /// One positive permutation per set partition of `{1..m}`.
    Positive,
    /// Fixed-point-free involutions (chord diagrams); `m` must be even.
    Chord,
}

impl FromStr for EnumKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(EnumKind::All),
            "positive" => Ok(EnumKind::Positive),
            "chord" => Ok(EnumKind::Chord),
            _ => Err(format!("unknown enumeration kind `{s}`")),
        }
    }
}

/// Lazily enumerates permutations of the given kind.
pub fn enumerate(kind: EnumKind, m: usize) -> Result<PermIter, PermError> {
    if kind == EnumKind::Chord && m % 2 == 1 {
        return Err(PermError::OddChordSize(m));
    }
    Ok(PermIter { kind, m, state: None, done: false })
}

/// Iterator returned by [`enumerate`].
pub struct PermIter {
    kind: EnumKind,
    m: usize,
    // All: the current one-line word (lexicographic order).
    // Positive: restricted growth string.
    // Chord: partner[i] for each position.
    state: Option<Vec<usize>>,
    done: bool,
}

impl PermIter {
    fn first(&self) -> Vec<usize> {
        match self.kind {
            EnumKind::All => (1..=self.m).collect(),
            EnumKind::Positive => vec![0; self.m],
            EnumKind::Chord => (0..self.m).map(|i| i ^ 1).collect(),
        }
    }

    fn advance(&self, s: &mut [usize]) -> bool {
        match self.kind {
            EnumKind::All => next_lex_permutation(s),
            EnumKind::Positive => next_growth_string(s),
            EnumKind::Chord => next_matching(s),
        }
    }

    fn render(&self, s: &[usize]) -> Permutation {
        match self.kind {
            EnumKind::All => Permutation::from_images_unchecked(s.to_vec()),
            EnumKind::Positive => {
                let blocks = s.iter().copied().max().map_or(0, |b| b + 1);
                let mut members: Vec<Vec<usize>> = vec![Vec::new(); blocks];
                for (i, &b) in s.iter().enumerate() {
                    members[b].push(i + 1);
                }
                let mut images = vec![0; self.m];
                for block in &members {
                    for (j, &x) in block.iter().enumerate() {
                        images[x - 1] = block[(j + 1) % block.len()];
                    }
                }
                Permutation::from_images_unchecked(images)
            }
            EnumKind::Chord => Permutation::from_images_unchecked(s.iter().map(|&j| j + 1).collect()),
        }
    }
}

impl Iterator for PermIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut s = match self.state.take() {
            None => self.first(),
            Some(mut s) => {
                if !self.advance(&mut s) {
                    self.done = true;
                    return None;
                }
                s
            }
        };
        let out = self.render(&s);
        self.state = Some(std::mem::take(&mut s));
        Some(out)
    }
}

fn next_lex_permutation(s: &mut [usize]) -> bool {
    let n = s.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

/// Next restricted growth string: `s[0] = 0`, `s[i] ≤ 1 + max(s[..i])`.
fn next_growth_string(s: &mut [usize]) -> bool {
    let n = s.len();
    let mut i = n;
    while i > 1 {
        i -= 1;
        let max_before = s[..i].iter().copied().max().unwrap_or(0);
        if s[i] <= max_before {
            s[i] += 1;
            for x in &mut s[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Next perfect matching, stored as a partner array (0-indexed). The
/// matchings are visited by choosing, for the smallest unmatched point,
/// partners in increasing order.
fn next_matching(s: &mut [usize]) -> bool {
    let n = s.len();
    // Sequence of (point, partner) choices in the order they were made.
    let mut choices = Vec::with_capacity(n / 2);
    let mut used = vec![false; n];
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            used[s[i]] = true;
            choices.push((i, s[i]));
        }
    }
    while let Some((a, b)) = choices.pop() {
        used[a] = false;
        used[b] = false;
        if let Some(nb) = (b + 1..n).find(|&x| !used[x]) {
            used[a] = true;
            used[nb] = true;
            choices.push((a, nb));
            // Complete greedily.
            let mut i = 0;
            while i < n {
                if !used[i] {
                    let j = (i + 1..n).find(|&x| !used[x]).unwrap();
                    used[i] = true;
                    used[j] = true;
                    choices.push((i, j));
                }
                i += 1;
            }
            for (x, y) in choices {
                s[x] = y;
                s[y] = x;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn bell(n: usize) -> usize {
        // Bell triangle.
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn all_counts_are_factorials() {
        let mut fact = 1;
        for m in 0..=7 {
            if m > 0 {
                fact *= m;
            }
            let perms: HashSet<Permutation> = enumerate(EnumKind::All, m).unwrap().collect();
            assert_eq!(perms.len(), fact);
        }
        let zero: Vec<_> = enumerate(EnumKind::All, 0).unwrap().collect();
        assert_eq!(zero, vec![Permutation::empty()]);
    }

    #[test]
    fn positive_counts_are_bell_numbers() {
        assert_eq!(bell(3), 5);
        for m in 0..=8 {
            let perms: HashSet<Permutation> = enumerate(EnumKind::Positive, m).unwrap().collect();
            assert_eq!(perms.len(), bell(m), "m = {m}");
            assert!(perms.iter().all(|p| p.is_positive()));
        }
    }

    #[test]
    fn chord_diagrams_on_four_points() {
        let perms: Vec<Permutation> = enumerate(EnumKind::Chord, 4).unwrap().collect();
        let expected: Vec<Permutation> =
            ["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(perms, expected);
    }

    #[test]
    fn chord_counts_are_double_factorials() {
        let mut df = 1;
        for n in 0..=5 {
            if n > 0 {
                df *= 2 * n - 1;
            }
            let perms: HashSet<Permutation> = enumerate(EnumKind::Chord, 2 * n).unwrap().collect();
            assert_eq!(perms.len(), df);
            for p in &perms {
                assert_eq!(p.compose(p), Permutation::identity(2 * n));
                assert!((1..=2 * n).all(|i| p.apply(i) != i));
            }
        }
    }

    #[test]
    fn odd_chord_size_is_rejected() {
        assert!(matches!(enumerate(EnumKind::Chord, 3), Err(PermError::OddChordSize(3))));
    }
}
