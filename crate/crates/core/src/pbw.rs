//! Normal ordering in `U(gl(N))` and the defining sum of `w_gl`, for
//! checking the recurrence engine at small `N` and `m`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::PbwError;
use crate::perm::Permutation;
use crate::poly::{MPoly, Var};
use crate::ring::{coeff, Coeff};

pub const MAX_RANK: usize = 3;
pub const MAX_SIZE: usize = 5;

/// The matrix unit `E_{i,j}`. Generators are ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(pub u8, pub u8);

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.0, self.1)
    }
}

/// Element of `U(gl(N))` in the PBW basis of sorted words.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement<R> {
    terms: BTreeMap<Vec<Gen>, R>,
}

impl<R: Coeff> PbwElement<R> {
    pub fn zero() -> Self {
        PbwElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(R::one())
    }

    pub fn scalar(c: R) -> Self {
        let mut out = Self::zero();
        out.add_term(Vec::new(), c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Gen>, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Vec<Gen>, c: R) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &Self, c: &R) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d.clone() * c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-R::one());
        out
    }

    fn is_valid(&self) -> bool {
        self.terms.iter().all(|(w, c)| !c.is_zero() && w.windows(2).all(|p| p[0] <= p[1]))
    }
}

impl<R: Coeff> fmt::Display for PbwElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = w.iter().map(Gen::to_string).collect();
            write!(f, "({c})*[{}]", word.join(" "))?;
        }
        Ok(())
    }
}

impl<R: Coeff> fmt::Debug for PbwElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwElement({self})")
    }
}

/// Normal ordering in `U(gl(N))` with a cache of already ordered words.
pub struct Pbw<R> {
    n: usize,
    memo: HashMap<Vec<Gen>, PbwElement<R>>,
}

impl<R: Coeff> Pbw<R> {
    pub fn new(n: usize) -> Result<Self, PbwError> {
        if n == 0 {
            return Err(PbwError::RankZero);
        }
        if n > MAX_RANK {
            return Err(PbwError::RankTooLarge(n));
        }
        Ok(Pbw { n, memo: HashMap::new() })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn generator(&self, i: usize, j: usize) -> Result<Gen, PbwError> {
        if !(1..=self.n).contains(&i) || !(1..=self.n).contains(&j) {
            return Err(PbwError::IndexOutOfRange(i, j, self.n));
        }
        Ok(Gen(i as u8, j as u8))
    }

    /// Rewrites `word` in the PBW basis by adjacent swaps, using
    /// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
    pub fn normal_order(&mut self, word: &[Gen]) -> PbwElement<R> {
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let value = match word.windows(2).position(|p| p[0] > p[1]) {
            None => {
                let mut out = PbwElement::zero();
                out.add_term(word.to_vec(), R::one());
                out
            }
            Some(i) => {
                let (a, b) = (word[i], word[i + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut out = self.normal_order(&swapped);
                let mut bracket = |g: Gen, c: R, out: &mut PbwElement<R>| {
                    let mut w = word[..i].to_vec();
                    w.push(g);
                    w.extend_from_slice(&word[i + 2..]);
                    let t = self.normal_order(&w);
                    out.add_scaled(&t, &c);
                };
                if a.1 == b.0 {
                    bracket(Gen(a.0, b.1), R::one(), &mut out);
                }
                if b.1 == a.0 {
                    bracket(Gen(b.0, a.1), -R::one(), &mut out);
                }
                out
            }
        };
        debug_assert!(value.is_valid());
        self.memo.insert(word.to_vec(), value.clone());
        value
    }

    pub fn mul(&mut self, a: &PbwElement<R>, b: &PbwElement<R>) -> PbwElement<R> {
        let mut out = PbwElement::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let t = self.normal_order(&w);
                out.add_scaled(&t, &(ca.clone() * cb.clone()));
            }
        }
        out
    }

    /// `Σ_{i₁..i_m} E_{i₁ i_{α(1)}} ⋯ E_{i_m i_{α(m)}}`, normal ordered.
    pub fn wgl_direct(&mut self, alpha: &Permutation) -> Result<PbwElement<R>, PbwError> {
        let m = alpha.len();
        if m > MAX_SIZE {
            return Err(PbwError::SizeTooLarge(m));
        }
        let mut out = PbwElement::zero();
        let mut idx = vec![1u8; m];
        loop {
            let word: Vec<Gen> = (0..m).map(|s| Gen(idx[s], idx[alpha.apply(s + 1) - 1])).collect();
            let t = self.normal_order(&word);
            out.add_scaled(&t, &R::one());
            let mut s = 0;
            loop {
                if s == m {
                    return Ok(out);
                }
                idx[s] += 1;
                if usize::from(idx[s]) <= self.n {
                    break;
                }
                idx[s] = 1;
                s += 1;
            }
        }
    }

    /// Image of a polynomial in `N, C₁, C₂, …` in `U(gl(N))` at this rank.
    pub fn eval_casimir_poly(&mut self, p: &MPoly<R>) -> Result<PbwElement<R>, PbwError> {
        let mut casimirs: HashMap<u32, PbwElement<R>> = HashMap::new();
        let mut out = PbwElement::zero();
        for (mono, c) in p.terms() {
            let mut value = PbwElement::scalar(c.clone());
            for &(v, e) in mono.pairs() {
                match v {
                    Var::N if e < 0 => return Err(PbwError::NegativePower),
                    Var::N => {
                        let n = coeff::<R>(self.n as i64);
                        let scale = (0..e).fold(R::one(), |acc, _| acc * n.clone());
                        value = self.mul(&value, &PbwElement::scalar(scale));
                    }
                    Var::C(k) => {
                        if k as usize > MAX_SIZE {
                            return Err(PbwError::SizeTooLarge(k as usize));
                        }
                        if let Entry::Vacant(slot) = casimirs.entry(k) {
                            slot.insert(self.wgl_direct(&Permutation::standard_cycle(k as usize))?);
                        }
                        for _ in 0..e {
                            value = self.mul(&value, &casimirs[&k]);
                        }
                    }
                    other => return Err(PbwError::UnsupportedVariable(other.to_string())),
                }
            }
            out.add_scaled(&value, &R::one());
        }
        Ok(out)
    }
}
