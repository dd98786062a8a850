//! The universal gl-weight system and the invariants derived from it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::perm::{ClassKey, Permutation};
use crate::poly::{MPoly, Monomial, Var};
use crate::ring::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PivotKind {
    /// `ℓ` and `ℓ+1` lie in different cycles.
    Join,
    /// Same cycle, and `ℓ+1` is not adjacent to `ℓ` in it.
    Cut,
    /// `α(ℓ+1) = ℓ`.
    Cut0,
}

/// The three permutations produced by one application of the recurrence
/// `w(α) = w(α′) + s₁·w(β₁) − s₂·w(β₂)` at neighbouring elements `ℓ, ℓ+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotOutcome<R: Coeff> {
    pub kind: PivotKind,
    pub alpha_prime: Permutation,
    pub beta1: (MPoly<R>, Permutation),
    pub beta2: (MPoly<R>, Permutation),
}

/// Applies the recurrence at the pair `ℓ, ℓ+1`.
///
/// `α′ = τατ` with `τ = (ℓ ℓ+1)`; `β₁` and `β₂` are `α∘τ` with `ℓ+1`,
/// respectively `ℓ`, removed. Removing a fixed point of `α∘τ` contributes a
/// factor `N`.
pub fn pivot<R: Coeff>(alpha: &Permutation, l: usize) -> Result<PivotOutcome<R>, EngineError> {
    let m = alpha.len();
    if l == 0 || l >= m {
        return Err(EngineError::PivotOutOfRange { pivot: l, m });
    }
    if alpha.apply(l) == l + 1 {
        return Err(EngineError::AscendingPair { pivot: l });
    }
    let mut swap: Vec<usize> = (1..=m).collect();
    swap.swap(l - 1, l);
    let tau = Permutation::from_images_unchecked(swap);
    let at = alpha.compose(&tau);
    let (labels, _) = alpha.cycle_labels();
    let kind = if labels[l] != labels[l + 1] {
        PivotKind::Join
    } else if alpha.apply(l + 1) == l {
        PivotKind::Cut0
    } else {
        PivotKind::Cut
    };
    let s2 = if at.apply(l) == l { MPoly::var(Var::N) } else { MPoly::one() };
    Ok(PivotOutcome {
        kind,
        alpha_prime: tau.compose(&at),
        beta1: (MPoly::one(), at.contract(l + 1)),
        beta2: (s2, at.contract(l)),
    })
}

/// The pivot used by the engine on a canonical connected class
/// representative: `ℓ = ᾱ(k) − 1` for the least `k` with `ᾱ(k) > k + 1`.
pub fn select_pivot(canonical: &Permutation) -> Option<usize> {
    (1..canonical.len()).find(|&k| canonical.apply(k) > k + 1).map(|k| canonical.apply(k) - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Specialization {
    /// `C_k ↦ N^{k−1}`, giving `N^{f(α)−1}`.
    Faces,
    /// `C_k ↦ N^{k+1}`, giving `N^{m+c(α)}`.
    Shifted,
    /// `N ↦ 1, C_k ↦ x`.
    CycleCount,
}

/// Every map the engine can apply to `w_gl(α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Substitution {
    Prechromatic,
    Chromatic,
    Special(Specialization),
}

impl FromStr for Substitution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "prechromatic" => Substitution::Prechromatic,
            "chromatic" => Substitution::Chromatic,
            "faces" => Substitution::Special(Specialization::Faces),
            "shifted" => Substitution::Special(Specialization::Shifted),
            "cyclecount" => Substitution::Special(Specialization::CycleCount),
            _ => return Err(format!("unknown substitution `{s}`")),
        })
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Substitution::Prechromatic => "prechromatic",
            Substitution::Chromatic => "chromatic",
            Substitution::Special(Specialization::Faces) => "faces",
            Substitution::Special(Specialization::Shifted) => "shifted",
            Substitution::Special(Specialization::CycleCount) => "cyclecount",
        })
    }
}

/// On-disk memo table.
#[derive(Serialize, Deserialize)]
#[serde(bound = "R: Coeff")]
pub struct MemoFile<R> {
    pub version: u32,
    pub entries: Vec<(Permutation, MPoly<R>)>,
}

pub const MEMO_VERSION: u32 = 1;

/// Memoized evaluator of `w_gl` over the coefficient ring `R`.
///
/// Values are cached per connected class factor. The cache is shared and
/// may be used from several threads at once.
pub struct GlEngine<R> {
    memo: RwLock<HashMap<ClassKey, MPoly<R>>>,
}

impl<R: Coeff> Default for GlEngine<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Coeff> GlEngine<R> {
    pub fn new() -> Self {
        GlEngine { memo: RwLock::new(HashMap::new()) }
    }

    pub fn cached_classes(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// `w_gl(α)`, a polynomial in `N, C₁, C₂, …`.
    pub fn wgl(&self, alpha: &Permutation) -> Result<MPoly<R>, EngineError> {
        self.wgl_class(&ClassKey::of(alpha))
    }

    pub fn wgl_class(&self, key: &ClassKey) -> Result<MPoly<R>, EngineError> {
        let mut value = MPoly::one();
        for factor in key.factors() {
            value = &value * &self.connected(&factor)?;
        }
        Ok(value)
    }

    fn connected(&self, key: &ClassKey) -> Result<MPoly<R>, EngineError> {
        if let Some(v) = self.memo.read().unwrap().get(key) {
            return Ok(v.clone());
        }
        let alpha = key.perm();
        let value = match select_pivot(alpha) {
            None if alpha.is_standard_cycle() => MPoly::var(Var::C(alpha.len() as u32)),
            None => return Err(EngineError::NoPivot(alpha.clone())),
            Some(l) => {
                let out = pivot::<R>(alpha, l)?;
                let next = ClassKey::of(&out.alpha_prime);
                if next >= *key {
                    return Err(EngineError::NonDecreasing { from: alpha.clone(), to: out.alpha_prime });
                }
                let mut v = self.wgl_class(&next)?;
                v += &(&out.beta1.0 * &self.wgl(&out.beta1.1)?);
                v -= &(&out.beta2.0 * &self.wgl(&out.beta2.1)?);
                v
            }
        };
        debug_assert!(value.min_degree_in_n().is_none_or(|d| d >= 0));
        Ok(self.memo.write().unwrap().entry(key.clone()).or_insert(value).clone())
    }

    /// `X(α) = N^{c−m}·w_gl(α)|_{C_k := p_k N^{k−1}}`, a polynomial in `N⁻²`
    /// and the `p_k`.
    pub fn prechromatic(&self, alpha: &Permutation) -> Result<MPoly<R>, EngineError> {
        let w = self.wgl(alpha)?;
        Ok(prechromatic_of(&w, alpha.num_cycles() as i32 - alpha.len() as i32))
    }

    /// Coefficient of `N^{−2k}` in `X(α)`.
    pub fn x_coeff(&self, alpha: &Permutation, k: u32) -> Result<MPoly<R>, EngineError> {
        Ok(self.prechromatic(alpha)?.coeff_in_n(-2 * k as i32))
    }

    /// `X₀(α)`, the `N⁰` part of `X(α)`.
    pub fn x0(&self, alpha: &Permutation) -> Result<MPoly<R>, EngineError> {
        self.x_coeff(alpha, 0)
    }

    /// `X(α)` with every `p_k ↦ x`.
    pub fn chromatic_substitution(&self, alpha: &Permutation) -> Result<MPoly<R>, EngineError> {
        Ok(chromatic_of(&self.prechromatic(alpha)?))
    }

    pub fn specialize(&self, alpha: &Permutation, rule: Specialization) -> Result<MPoly<R>, EngineError> {
        Ok(specialize_of(&self.wgl(alpha)?, rule))
    }

    pub fn substitute(&self, alpha: &Permutation, rule: Substitution) -> Result<MPoly<R>, EngineError> {
        match rule {
            Substitution::Prechromatic => self.prechromatic(alpha),
            Substitution::Chromatic => self.chromatic_substitution(alpha),
            Substitution::Special(s) => self.specialize(alpha, s),
        }
    }

    /// Snapshot of the memo table, sorted by class.
    pub fn export_memo(&self) -> MemoFile<R> {
        let memo = self.memo.read().unwrap();
        let mut entries: Vec<(&ClassKey, &MPoly<R>)> = memo.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        MemoFile {
            version: MEMO_VERSION,
            entries: entries.into_iter().map(|(k, v)| (k.perm().clone(), v.clone())).collect(),
        }
    }

    /// Loads entries saved by [`export_memo`](Self::export_memo). Entries
    /// that are not connected classes are ignored; returns the number kept.
    pub fn import_memo(&self, file: MemoFile<R>) -> usize {
        let mut memo = self.memo.write().unwrap();
        let mut kept = 0;
        for (perm, value) in file.entries {
            let key = ClassKey::of(&perm);
            if key.is_connected() {
                memo.insert(key, value);
                kept += 1;
            }
        }
        kept
    }
}

/// `N^{shift}·w|_{C_k := p_k N^{k−1}}`; panics if the result is not a
/// polynomial in `N⁻²`, which would mean `w` is not a gl-weight value.
pub fn prechromatic_of<R: Coeff>(w: &MPoly<R>, shift: i32) -> MPoly<R> {
    let x = casimir_to_power_sums(w, shift);
    assert!(
        x.n_exponents().iter().all(|&e| e <= 0 && e % 2 == 0),
        "prechromatic value has an odd or positive power of N: {x}"
    );
    x
}

/// `N^{shift}·w|_{C_k := p_k N^{k−1}}` without any check on the result.
pub fn casimir_to_power_sums<R: Coeff>(w: &MPoly<R>, shift: i32) -> MPoly<R> {
    w.substitute_with(|v| match v {
        Var::C(k) => Some(&MPoly::var(Var::P(k)) * &MPoly::n_pow(k as i32 - 1)),
        _ => None,
    })
    .expect("substitution into C_k cannot fail")
    .mul_monomial(&Monomial::var(Var::N, shift))
}

pub fn chromatic_of<R: Coeff>(x: &MPoly<R>) -> MPoly<R> {
    x.substitute_with(|v| matches!(v, Var::P(_)).then(|| MPoly::var(Var::X)))
        .expect("substitution into p_k cannot fail")
}

pub fn specialize_of<R: Coeff>(w: &MPoly<R>, rule: Specialization) -> MPoly<R> {
    w.substitute_with(|v| match (rule, v) {
        (Specialization::Faces, Var::C(k)) => Some(MPoly::n_pow(k as i32 - 1)),
        (Specialization::Shifted, Var::C(k)) => Some(MPoly::n_pow(k as i32 + 1)),
        (Specialization::CycleCount, Var::C(_)) => Some(MPoly::var(Var::X)),
        (Specialization::CycleCount, Var::N) => Some(MPoly::one()),
        _ => None,
    })
    .expect("specializations only touch nonnegative powers")
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::perm::{enumerate, EnumKind};

    type P = MPoly<BigInt>;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn join_example() {
        let out = pivot::<BigInt>(&p("(1 3)(2 4)"), 2).unwrap();
        assert_eq!(out.kind, PivotKind::Join);
        assert_eq!(out.alpha_prime, p("(1 2)(3 4)"));
        assert_eq!(out.beta1, (P::one(), p("(1 3 2)")));
        assert_eq!(out.beta2, (P::one(), p("(1 2 3)")));
    }

    #[test]
    fn special_recurrence_on_three_elements() {
        // w((1 3 2)) = w((1 2 3)) + C₁·w((1)) − N·w((1 2))
        let out = pivot::<BigInt>(&p("(1 3 2)"), 1).unwrap();
        assert_eq!(out.kind, PivotKind::Cut0);
        assert_eq!(out.alpha_prime, p("(1 2 3)"));
        assert_eq!(out.beta1, (P::one(), p("(1)(2)")));
        assert_eq!(out.beta2, (poly("N"), p("(1 2)")));
    }

    #[test]
    fn neighbouring_fixed_points_cancel() {
        let a = p("(1)(2)(3 4)");
        let out = pivot::<BigInt>(&a, 1).unwrap();
        assert_eq!(out.kind, PivotKind::Join);
        assert_eq!(out.alpha_prime, a);
        assert_eq!(out.beta1, out.beta2);
    }

    #[test]
    fn pivot_errors() {
        let a = p("(1 2 3)");
        assert_eq!(pivot::<BigInt>(&a, 0), Err(EngineError::PivotOutOfRange { pivot: 0, m: 3 }));
        assert_eq!(pivot::<BigInt>(&a, 3), Err(EngineError::PivotOutOfRange { pivot: 3, m: 3 }));
        assert_eq!(pivot::<BigInt>(&a, 1), Err(EngineError::AscendingPair { pivot: 1 }));
    }

    #[test]
    fn cut_kind() {
        let out = pivot::<BigInt>(&p("(1 3 4 2)"), 2).unwrap();
        assert_eq!(out.kind, PivotKind::Cut);
    }

    #[test]
    fn small_values() {
        let e = GlEngine::<BigInt>::new();
        assert_eq!(e.wgl(&Permutation::empty()).unwrap(), P::one());
        assert_eq!(e.wgl(&p("(1 3 2)")).unwrap(), poly("C3 + C1^2 - N*C2"));
        assert_eq!(e.wgl(&p("(1 3)(2 4)")).unwrap(), poly("C2^2 + C1^2 - N*C2"));
        assert_eq!(e.wgl(&Permutation::identity(3)).unwrap(), poly("C1^3"));
        assert_eq!(e.prechromatic(&p("(1 2)")).unwrap(), poly("p2"));
        assert_eq!(e.prechromatic(&p("(1 3)(2 4)")).unwrap(), poly("p2^2 - p2 + p1^2*N^-2"));
        assert_eq!(e.prechromatic(&p("(1 3 2)")).unwrap(), poly("p3 - p2 + p1^2*N^-2"));
        assert_eq!(e.x_coeff(&p("(1 3)(2 4)"), 1).unwrap(), poly("p1^2"));
        assert_eq!(e.x0(&p("(1 3)(2 4)")).unwrap(), poly("p2^2 - p2"));
        for m in 1..6 {
            assert_eq!(e.x0(&Permutation::standard_cycle(m)).unwrap(), P::var(Var::P(m as u32)));
        }
    }

    #[test]
    fn specialization_examples() {
        let e = GlEngine::<BigInt>::new();
        assert_eq!(e.specialize(&p("(1 3)(2 4)"), Specialization::Faces).unwrap(), P::one());
        assert_eq!(e.specialize(&p("(1 3 2)"), Specialization::Shifted).unwrap(), P::n_pow(4));
        assert_eq!(e.specialize(&p("(1 2)(3 4)"), Specialization::CycleCount).unwrap(), poly("x^2"));
    }

    #[test]
    fn class_invariance_and_multiplicativity() {
        let e = GlEngine::<BigInt>::new();
        for m in 0..=5 {
            for a in enumerate(EnumKind::All, m).unwrap() {
                assert_eq!(e.wgl(&a).unwrap(), e.wgl(&a.cyclic_shift()).unwrap(), "{a}");
            }
        }
        let small: Vec<Permutation> = (0..=3).flat_map(|m| enumerate(EnumKind::All, m).unwrap()).collect();
        for a in &small {
            for b in &small {
                let lhs = e.wgl(&a.concat(b)).unwrap();
                assert_eq!(lhs, &e.wgl(a).unwrap() * &e.wgl(b).unwrap(), "{a} # {b}");
            }
        }
    }

    #[test]
    fn memo_round_trip() {
        let e = GlEngine::<BigInt>::new();
        let a = p("(1 4 2 5 3)");
        let value = e.wgl(&a).unwrap();
        let json = serde_json::to_string(&e.export_memo()).unwrap();
        let fresh = GlEngine::<BigInt>::new();
        let n = fresh.import_memo(serde_json::from_str(&json).unwrap());
        assert_eq!(n, e.cached_classes());
        assert_eq!(fresh.wgl(&a).unwrap(), value);
    }

    #[test]
    fn substitution_names() {
        for name in ["prechromatic", "chromatic", "faces", "shifted", "cyclecount"] {
            assert_eq!(name.parse::<Substitution>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Substitution>().is_err());
    }
}
