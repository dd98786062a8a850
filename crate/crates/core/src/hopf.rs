//! The rotational Hopf algebra of permutation classes and the map `Ξ`.

use std::collections::BTreeMap;
use std::fmt;

use crate::engine::{pivot, GlEngine, PivotKind};
use crate::error::EngineError;
use crate::perm::{ClassKey, Permutation};
use crate::poly::{MPoly, Var};
use crate::ring::Coeff;

/// Finite linear combination of permutation classes.
#[derive(Clone, PartialEq, Eq)]
pub struct HopfElement<R> {
    terms: BTreeMap<ClassKey, R>,
}

/// Finite linear combination of ordered pairs of classes.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement<R> {
    terms: BTreeMap<(ClassKey, ClassKey), R>,
}

fn add_term<K: Ord, R: Coeff>(terms: &mut BTreeMap<K, R>, key: K, c: R) {
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
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

impl<R: Coeff> HopfElement<R> {
    pub fn zero() -> Self {
        HopfElement { terms: BTreeMap::new() }
    }

    /// The unit, the class of the empty permutation.
    pub fn one() -> Self {
        Self::basis(&Permutation::empty())
    }

    pub fn basis(alpha: &Permutation) -> Self {
        Self::from_terms([(R::one(), alpha.clone())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (R, Permutation)>) -> Self {
        let mut out = Self::zero();
        for (c, p) in terms {
            add_term(&mut out.terms, ClassKey::of(&p), c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassKey, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    /// Bilinear extension of concatenation.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let key = ClassKey::of(&a.perm().concat(b.perm()));
                add_term(&mut out.terms, key, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn coproduct(&self) -> TensorElement<R> {
        let mut out = TensorElement::zero();
        for (k, c) in &self.terms {
            for ((l, r), d) in coproduct(k).terms {
                add_term(&mut out.terms, (l, r), c.clone() * d);
            }
        }
        out
    }
}

impl<R: Coeff> TensorElement<R> {
    pub fn zero() -> Self {
        TensorElement { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ClassKey, ClassKey), &R)> {
        self.terms.iter()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> R {
        self.terms.values().fold(R::zero(), |acc, c| acc + c.clone())
    }

    pub fn coefficient(&self, left: &Permutation, right: &Permutation) -> R {
        self.terms.get(&(ClassKey::of(left), ClassKey::of(right))).cloned().unwrap_or_else(R::zero)
    }

    /// Product in `𝒜 ⊗ 𝒜`, factorwise.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                let key = (ClassKey::of(&a1.perm().concat(b1.perm())), ClassKey::of(&a2.perm().concat(b2.perm())));
                add_term(&mut out.terms, key, ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// Ordered splits `I ⊔ J` of the cycles of `α`, as restricted pairs.
pub fn cycle_splits(alpha: &Permutation) -> impl Iterator<Item = (Permutation, Permutation)> + '_ {
    let cycles = alpha.cycles();
    let c = cycles.len();
    assert!(c < usize::BITS as usize);
    (0..1usize << c).map(move |mask| {
        let (left, right): (Vec<usize>, Vec<usize>) = (0..c).partition(|&i| mask >> i & 1 == 1);
        (alpha.restrict_to_cycles(&cycles, left), alpha.restrict_to_cycles(&cycles, right))
    })
}

/// `μ[α] = Σ_{I ⊔ J = V(α)} [α|_I] ⊗ [α|_J]`.
pub fn coproduct<R: Coeff>(key: &ClassKey) -> TensorElement<R> {
    let mut out = TensorElement::zero();
    for (l, r) in cycle_splits(key.perm()) {
        add_term(&mut out.terms, (ClassKey::of(&l), ClassKey::of(&r)), R::one());
    }
    out
}

fn tensor_side<R: Coeff>(p: &MPoly<R>, side: fn(u32) -> Var) -> MPoly<R> {
    p.substitute_with(|v| match v {
        Var::P(k) => Some(MPoly::var(side(k))),
        _ => None,
    })
    .expect("renaming variables cannot fail")
}

/// `Ξ(α) = Σ_{I ⊔ J} X₀(α|_I) ⊗ X₀(α|_J)`, with the left factor in the
/// `pL` variables and the right one in `pR`.
pub fn xi<R: Coeff>(engine: &GlEngine<R>, alpha: &Permutation) -> Result<MPoly<R>, EngineError> {
    let mut out = MPoly::zero();
    for (l, r) in cycle_splits(alpha) {
        let left = tensor_side(&engine.x0(&l)?, Var::PL);
        let right = tensor_side(&engine.x0(&r)?, Var::PR);
        out += &(&left * &right);
    }
    Ok(out)
}

/// `X₀(α)` with every `p_k ↦ pL_k + pR_k`.
pub fn x0_coproduct<R: Coeff>(engine: &GlEngine<R>, alpha: &Permutation) -> Result<MPoly<R>, EngineError> {
    Ok(engine
        .x0(alpha)?
        .substitute_with(|v| match v {
            Var::P(k) => Some(&MPoly::var(Var::PL(k)) + &MPoly::var(Var::PR(k))),
            _ => None,
        })
        .expect("substitution into p_k cannot fail"))
}

/// Whether `Ξ(α) = X₀(α)|_{p_k := pL_k + pR_k}`.
pub fn check_hopf_hom<R: Coeff>(engine: &GlEngine<R>, alpha: &Permutation) -> Result<bool, EngineError> {
    Ok(xi(engine, alpha)? == x0_coproduct(engine, alpha)?)
}

/// Checks the case of `Ξ(α) = Ξ(α′) + Ξ(β₁) − Ξ(β₂)` (join),
/// `Ξ(α) = Ξ(α′)` (cut) or `Ξ(α) = Ξ(α′) − Ξ(β₂)` (cut0) that applies at `ℓ`.
pub fn lemma_xi_cases<R: Coeff>(engine: &GlEngine<R>, alpha: &Permutation, l: usize) -> Result<bool, EngineError> {
    let out = pivot::<R>(alpha, l)?;
    let lhs = xi(engine, alpha)?;
    let mut rhs = xi(engine, &out.alpha_prime)?;
    match out.kind {
        PivotKind::Join => {
            rhs += &xi(engine, &out.beta1.1)?;
            rhs -= &xi(engine, &out.beta2.1)?;
        }
        PivotKind::Cut => {}
        PivotKind::Cut0 => rhs -= &xi(engine, &out.beta2.1)?,
    }
    Ok(lhs == rhs)
}

fn write_combination<K, R: Coeff>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<K, R>,
    show: impl Fn(&K) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        let c = c.to_string();
        let (neg, mag) = c.strip_prefix('-').map_or((false, c.as_str()), |m| (true, m));
        match (i == 0, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if mag != "1" {
            write!(f, "{mag}*")?;
        }
        write!(f, "{}", show(k))?;
    }
    Ok(())
}

impl<R: Coeff> fmt::Display for HopfElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.terms, |k| k.to_string())
    }
}

impl<R: Coeff> fmt::Debug for HopfElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfElement({self})")
    }
}

impl<R: Coeff> fmt::Display for TensorElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.terms, |(l, r)| format!("{l}⊗{r}"))
    }
}

impl<R: Coeff> fmt::Debug for TensorElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}
