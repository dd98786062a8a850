//! Sparse multivariate polynomials, Laurent in `N` only, with exact
//! coefficients.

mod text;

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::PolyError;
use crate::ring::{coeff, Coeff};

pub use text::{format_poly, parse_poly, PolyFormat};

/// Polynomial variables, ordered `N < C₁ < C₂ < … < p₁ < … < x < pL₁ < … < pR₁ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    N,
    /// Casimir element `C_k`.
    C(u32),
    P(u32),
    X,
    /// `p_k ⊗ 1`.
    PL(u32),
    /// `1 ⊗ p_k`.
    PR(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::N => write!(f, "N"),
            Var::C(k) => write!(f, "C{k}"),
            Var::P(k) => write!(f, "p{k}"),
            Var::X => write!(f, "x"),
            Var::PL(k) => write!(f, "pL{k}"),
            Var::PR(k) => write!(f, "pR{k}"),
        }
    }
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let unknown = || PolyError::UnknownVariable(s.to_string());
        let index = |rest: &str| -> Result<u32, PolyError> {
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
                return Err(unknown());
            }
            rest.parse().map_err(|_| unknown())
        };
        match s {
            "N" => Ok(Var::N),
            "x" => Ok(Var::X),
            _ if s.starts_with("pL") => index(&s[2..]).map(Var::PL),
            _ if s.starts_with("pR") => index(&s[2..]).map(Var::PR),
            _ if s.starts_with('C') => index(&s[1..]).map(Var::C),
            _ if s.starts_with('p') => index(&s[1..]).map(Var::P),
            _ => Err(unknown()),
        }
    }
}

/// A product of variable powers, stored sorted by variable with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let mut acc: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Drops `v` from the monomial.
    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn is_valid(&self) -> bool {
        self.0.windows(2).all(|w| w[0].0 < w[1].0) && self.0.iter().all(|&(v, e)| e != 0 && (e > 0 || v == Var::N))
    }
}

impl Ord for Monomial {
    /// Graded: total degree first, then the exponent vectors compared
    /// lexicographically in variable order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(&(_, e)), None) => return e.cmp(&0),
                    (None, Some(&(_, e))) => return 0.cmp(&e),
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        let ord = match va.cmp(&vb) {
                            Ordering::Less => {
                                i += 1;
                                ea.cmp(&0)
                            }
                            Ordering::Greater => {
                                j += 1;
                                0.cmp(&eb)
                            }
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                                ea.cmp(&eb)
                            }
                        };
                        if ord != Ordering::Equal {
                            return ord;
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact sparse polynomial over `R` in the variables of [`Var`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<R> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Coeff> Default for MPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> MPoly<R> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(coeff(c))
    }

    pub fn term(c: R, mono: Monomial) -> Self {
        debug_assert!(mono.is_valid(), "invalid monomial {mono:?}");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        assert!(e >= 0 || v == Var::N, "negative exponent on {v}");
        Self::term(R::one(), Monomial::var(v, e))
    }

    /// `N^e` for any integer `e`.
    pub fn n_pow(e: i32) -> Self {
        Self::var_pow(Var::N, e)
    }

    /// Builds from `(coefficient, monomial)` pairs, collecting like terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (R, Monomial)>) -> Self {
        let mut acc: HashMap<Monomial, R> = HashMap::new();
        for (c, m) in terms {
            accumulate(&mut acc, m, c);
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, R>) -> Self {
        let p = MPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() };
        p.debug_check();
        p
    }

    #[inline]
    fn debug_check(&self) {
        debug_assert!(self.terms.iter().all(|(m, c)| m.is_valid() && !c.is_zero()), "polynomial invariant violated");
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in the deterministic output order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> R {
        self.terms.get(mono).cloned().unwrap_or_else(R::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> R {
        self.coefficient(&Monomial::one())
    }

    /// The single term if the polynomial is a monomial times a scalar.
    pub fn as_term(&self) -> Option<(&Monomial, &R)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        let p = MPoly { terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect() };
        p.debug_check();
        p
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the ring homomorphism sending each variable `v` to
    /// `rule(v)` (or to itself when the rule returns `None`).
    ///
    /// A variable that occurs with a negative exponent may only be sent to a
    /// single term with coefficient `±1` whose inverse stays a valid monomial.
    pub fn substitute_with<F>(&self, rule: F) -> Result<Self, PolyError>
    where
        F: Fn(Var) -> Option<MPoly<R>>,
    {
        let mut images: HashMap<Var, Option<MPoly<R>>> = HashMap::new();
        let mut powers: HashMap<(Var, i32), MPoly<R>> = HashMap::new();
        let mut out: HashMap<Monomial, R> = HashMap::new();
        for (mono, c) in &self.terms {
            let mut kept = Vec::new();
            let mut value = MPoly::constant(c.clone());
            for &(v, e) in &mono.0 {
                let image = images.entry(v).or_insert_with(|| rule(v));
                let Some(image) = image else {
                    kept.push((v, e));
                    continue;
                };
                let factor = match powers.entry((v, e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(slot) => slot.insert(if e >= 0 {
                        image.pow(e as u32)
                    } else {
                        image
                            .inverse_term()
                            .ok_or_else(|| PolyError::NegativePowerSubstitution(v.to_string()))?
                            .pow((-e) as u32)
                    }),
                };
                value = &value * &*factor;
            }
            let kept = Monomial(kept);
            for (m, a) in value.terms {
                accumulate(&mut out, m.mul(&kept), a);
            }
        }
        Ok(Self::from_map(out))
    }

    /// [`substitute_with`](Self::substitute_with) driven by an explicit map.
    pub fn substitute(&self, rule: &HashMap<Var, MPoly<R>>) -> Result<Self, PolyError> {
        self.substitute_with(|v| rule.get(&v).cloned())
    }

    /// Inverse of a unit monomial `±N^k`, if it exists in the ring.
    fn inverse_term(&self) -> Option<Self> {
        let (mono, c) = self.as_term()?;
        if !c.is_unit() || mono.0.iter().any(|&(v, _)| v != Var::N) {
            return None;
        }
        let inv = Monomial(mono.0.iter().map(|&(v, e)| (v, -e)).collect());
        Some(Self::term(c.clone(), inv))
    }

    /// Coefficient of `N^j`, as a polynomial in the remaining variables.
    pub fn coeff_in_n(&self, j: i32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(Var::N) == j)
                .map(|(m, c)| (m.without(Var::N), c.clone()))
                .collect(),
        }
    }

    /// Highest exponent of `N`; `None` for the zero polynomial.
    pub fn degree_in_n(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(Var::N)).max()
    }

    pub fn min_degree_in_n(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(Var::N)).min()
    }

    /// Exponents of `N` that occur, increasing.
    pub fn n_exponents(&self) -> Vec<i32> {
        let mut es: Vec<i32> = self.terms.keys().map(|m| m.exponent(Var::N)).collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Value of a polynomial in `x` alone at an integer point.
    pub fn eval_univariate(&self, v: Var, at: &R) -> Option<R> {
        let mut sum = R::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if m.0.len() > usize::from(e != 0) || e < 0 {
                return None;
            }
            let mut t = c.clone();
            for _ in 0..e {
                t = t * at.clone();
            }
            sum += t;
        }
        Some(sum)
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> R {
        self.terms.values().fold(R::zero(), |acc, c| acc + c.clone())
    }
}

fn accumulate<R: Coeff>(acc: &mut HashMap<Monomial, R>, m: Monomial, c: R) {
    match acc.entry(m) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

impl<R: Coeff> Add<&MPoly<R>> for &MPoly<R> {
    type Output = MPoly<R>;

    fn add(self, rhs: &MPoly<R>) -> MPoly<R> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<R: Coeff> AddAssign<&MPoly<R>> for MPoly<R> {
    fn add_assign(&mut self, rhs: &MPoly<R>) {
        for (m, c) in &rhs.terms {
            match self.terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c.clone();
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
            }
        }
    }
}

impl<R: Coeff> SubAssign<&MPoly<R>> for MPoly<R> {
    fn sub_assign(&mut self, rhs: &MPoly<R>) {
        *self += &(-rhs);
    }
}

impl<R: Coeff> Sub<&MPoly<R>> for &MPoly<R> {
    type Output = MPoly<R>;

    fn sub(self, rhs: &MPoly<R>) -> MPoly<R> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<R: Coeff> Neg for &MPoly<R> {
    type Output = MPoly<R>;

    fn neg(self) -> MPoly<R> {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<R: Coeff> Neg for MPoly<R> {
    type Output = MPoly<R>;

    fn neg(self) -> MPoly<R> {
        -&self
    }
}

impl<R: Coeff> Mul<&MPoly<R>> for &MPoly<R> {
    type Output = MPoly<R>;

    fn mul(self, rhs: &MPoly<R>) -> MPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let mut acc: HashMap<Monomial, R> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        MPoly::from_map(acc)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl<R: Coeff> $tr<MPoly<R>> for MPoly<R> {
            type Output = MPoly<R>;
            fn $method(self, rhs: MPoly<R>) -> MPoly<R> {
                (&self).$method(&rhs)
            }
        }
        impl<R: Coeff> $tr<&MPoly<R>> for MPoly<R> {
            type Output = MPoly<R>;
            fn $method(self, rhs: &MPoly<R>) -> MPoly<R> {
                (&self).$method(rhs)
            }
        }
        impl<R: Coeff> $tr<MPoly<R>> for &MPoly<R> {
            type Output = MPoly<R>;
            fn $method(self, rhs: MPoly<R>) -> MPoly<R> {
                self.$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl<R: Coeff> Zero for MPoly<R> {
    fn zero() -> Self {
        MPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Coeff> One for MPoly<R> {
    fn one() -> Self {
        MPoly::one()
    }
}

impl<R: Coeff> std::iter::Sum for MPoly<R> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(MPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<R: Coeff> std::iter::Product for MPoly<R> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(MPoly::one(), |acc, p| &acc * &p)
    }
}

impl<R: Coeff> fmt::Display for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self, PolyFormat::Text))
    }
}

impl<R: Coeff> fmt::Debug for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl<R: Coeff> FromStr for MPoly<R> {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_poly(s)
    }
}
