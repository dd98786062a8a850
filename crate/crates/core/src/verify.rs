//! Exhaustive verification sweeps over small permutations.
//!
//! Each suite checks one family of identities on every permutation in its
//! range. Checks run in parallel; the reported counterexample is always the
//! first failure in class order, independent of scheduling.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chromatic::ChromaticOracle;
use crate::engine::{casimir_to_power_sums, chromatic_of, pivot, specialize_of, GlEngine, PivotKind, Specialization};
use crate::error::VerifyError;
use crate::hopf::{check_hopf_hom, lemma_xi_cases, x0_coproduct, xi};
use crate::pbw::{Gen, Pbw};
use crate::perm::{enumerate, ClassKey, EnumKind, Permutation};
use crate::poly::{MPoly, Monomial, Var};
use crate::ring::{coeff, Coeff};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    GlType,
    Specializations,
    HopfHom,
    Chromatic,
    FreeTerm,
    CyclicX0,
    DegreeBound,
    Divisibility,
    Successor,
    XiCases,
    Pbw,
    GraphHopf,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::GlType,
        Suite::Specializations,
        Suite::HopfHom,
        Suite::Chromatic,
        Suite::FreeTerm,
        Suite::CyclicX0,
        Suite::DegreeBound,
        Suite::Divisibility,
        Suite::Successor,
        Suite::XiCases,
        Suite::Pbw,
        Suite::GraphHopf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GlType => "gl-type",
            Suite::Specializations => "specializations",
            Suite::HopfHom => "hopf-hom",
            Suite::Chromatic => "chromatic",
            Suite::FreeTerm => "free-term",
            Suite::CyclicX0 => "cyclic-x0",
            Suite::DegreeBound => "degree-bound",
            Suite::Divisibility => "divisibility",
            Suite::Successor => "successor",
            Suite::XiCases => "xi-cases",
            Suite::Pbw => "pbw",
            Suite::GraphHopf => "graph-hopf",
        }
    }

    /// The size bound used by the acceptance run.
    pub fn default_bound(self) -> usize {
        match self {
            Suite::Chromatic => 8,
            Suite::FreeTerm | Suite::CyclicX0 | Suite::DegreeBound => 7,
            Suite::Pbw => 4,
            _ => 6,
        }
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// The permutation (or other input) that failed.
    pub subject: String,
    /// Which identity failed.
    pub check: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bound: usize,
    pub checked: usize,
    pub failure: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} (m <= {}): {} instances", self.suite, self.bound, self.checked),
            Some(c) => write!(
                f,
                "FAIL {} (m <= {}): {}: {}\n  lhs: {}\n  rhs: {}",
                self.suite, self.bound, c.subject, c.check, c.lhs, c.rhs
            ),
        }
    }
}

type Outcome = Result<Option<Counterexample>, VerifyError>;

fn mismatch(alpha: &Permutation, check: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Outcome {
    Ok(Some(Counterexample {
        subject: alpha.to_string(),
        check: check.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }))
}

fn expect_eq<T: PartialEq + fmt::Display>(alpha: &Permutation, check: impl Into<String>, lhs: T, rhs: T) -> Outcome {
    if lhs == rhs {
        Ok(None)
    } else {
        mismatch(alpha, check, lhs, rhs)
    }
}

/// Runs the verification suites against a shared engine.
pub struct Verifier<R> {
    engine: GlEngine<R>,
    chromatic: ChromaticOracle<R>,
    seed: u64,
}

impl<R: Coeff> Verifier<R> {
    pub fn new(seed: u64) -> Self {
        Self::with_engine(GlEngine::new(), seed)
    }

    pub fn with_engine(engine: GlEngine<R>, seed: u64) -> Self {
        Verifier { engine, chromatic: ChromaticOracle::new(), seed }
    }

    pub fn engine(&self) -> &GlEngine<R> {
        &self.engine
    }

    pub fn into_engine(self) -> GlEngine<R> {
        self.engine
    }

    pub fn run(&self, suite: Suite, bound: usize) -> Result<SuiteReport, VerifyError> {
        let all = || all_up_to(bound);
        let (checked, failure) = match suite {
            Suite::GlType => self.sweep(all(), |a| self.gl_type(a, bound))?,
            Suite::Specializations => self.sweep(all(), |a| self.specializations(a))?,
            Suite::HopfHom => self.sweep(all(), |a| self.hopf_hom(a))?,
            Suite::Chromatic => {
                let mut universe: Vec<Permutation> =
                    (0..=bound).flat_map(|m| enumerate(EnumKind::Positive, m).unwrap()).collect();
                universe.extend((0..=bound).step_by(2).flat_map(|m| enumerate(EnumKind::Chord, m).unwrap()));
                self.sweep(universe, |a| self.chromatic_coincidence(a))?
            }
            Suite::FreeTerm => {
                let universe = all().into_iter().filter(|a| !a.is_positive()).collect();
                self.sweep(universe, |a| self.free_term(a))?
            }
            Suite::CyclicX0 => {
                let universe = all().into_iter().filter(|a| a.num_cycles() == 1).collect();
                self.sweep(universe, |a| self.cyclic_x0(a))?
            }
            Suite::DegreeBound => {
                let universe = all().into_iter().filter(|a| a.num_cycles() == 1 && !a.is_positive()).collect();
                self.sweep(universe, |a| self.degree_bound(a))?
            }
            Suite::Divisibility => {
                let universe = all().into_iter().filter(|a| !a.is_empty()).collect();
                self.sweep(universe, |a| self.divisibility(a))?
            }
            Suite::Successor => {
                let universe = all().into_iter().filter(|a| !successors(a).is_empty()).collect();
                self.sweep(universe, |a| self.successor(a))?
            }
            Suite::XiCases => self.sweep(all(), |a| self.xi_cases(a))?,
            Suite::Pbw => {
                let (n, failure) = self.sweep(all(), |a| self.pbw_agreement(a))?;
                match failure {
                    Some(f) => (n, Some(f)),
                    None => {
                        let (m, f) = self.pbw_associativity()?;
                        (n + m, f)
                    }
                }
            }
            Suite::GraphHopf => self.sweep(all(), |a| self.graph_hopf(a))?,
        };
        Ok(SuiteReport { suite, bound, checked, failure })
    }

    /// Checks every permutation in parallel and returns the first failure
    /// (or error) in class order.
    fn sweep<F>(&self, universe: Vec<Permutation>, check: F) -> Result<(usize, Option<Counterexample>), VerifyError>
    where
        F: Fn(&Permutation) -> Outcome + Sync,
    {
        let mut results: Vec<(ClassKey, Permutation, Outcome)> = universe
            .into_par_iter()
            .map(|a| {
                let r = check(&a);
                (ClassKey::of(&a), a, r)
            })
            .collect();
        results.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        let n = results.len();
        for (_, _, r) in results {
            if let Some(c) = r? {
                return Ok((n, Some(c)));
            }
        }
        Ok((n, None))
    }

    fn wgl(&self, a: &Permutation) -> Result<MPoly<R>, VerifyError> {
        Ok(self.engine.wgl(a)?)
    }

    /// `X(α)` computed without the engine's parity assertion.
    fn x(&self, a: &Permutation) -> Result<MPoly<R>, VerifyError> {
        Ok(casimir_to_power_sums(&self.wgl(a)?, a.num_cycles() as i32 - a.len() as i32))
    }

    fn chrom(&self, a: &Permutation) -> Result<MPoly<R>, VerifyError> {
        Ok(chromatic_of(&self.x(a)?))
    }

    fn gl_type(&self, a: &Permutation, bound: usize) -> Outcome {
        let w = self.wgl(a)?;
        if let Some(c) = expect_eq(a, "shift invariance", &w, &self.wgl(&a.cyclic_shift())?)? {
            return Ok(Some(c));
        }
        let x = self.x(a)?;
        if !x.n_exponents().iter().all(|&e| e <= 0 && e % 2 == 0) {
            return mismatch(a, "X contains only even nonpositive powers of N", &x, "a polynomial in N^-2");
        }
        let n_inv2 = MPoly::n_pow(-2);
        for l in legal_pivots(a) {
            let out = pivot::<R>(a, l)?;
            let rhs = &(&self.wgl(&out.alpha_prime)? + &(&out.beta1.0 * &self.wgl(&out.beta1.1)?))
                - &(&out.beta2.0 * &self.wgl(&out.beta2.1)?);
            if let Some(c) = expect_eq(a, format!("recurrence at {l}"), &w, &rhs)? {
                return Ok(Some(c));
            }
            let (xp, x1, x2) = (self.x(&out.alpha_prime)?, self.x(&out.beta1.1)?, self.x(&out.beta2.1)?);
            let rhs = match out.kind {
                PivotKind::Join => &(&xp + &x1) - &x2,
                PivotKind::Cut => &xp + &(&n_inv2 * &(&x1 - &x2)),
                PivotKind::Cut0 => {
                    let inner = self.x(&out.beta1.1.contract(l))?;
                    &(&xp + &(&(&MPoly::var(Var::P(1)) * &n_inv2) * &inner)) - &x2
                }
            };
            if let Some(c) = expect_eq(a, format!("X recurrence ({:?}) at {l}", out.kind), &x, &rhs)? {
                return Ok(Some(c));
            }
        }
        let rest = bound.saturating_sub(a.len()).min(3);
        for b in all_up_to(rest) {
            let lhs = self.wgl(&a.concat(&b))?;
            let rhs = &w * &self.wgl(&b)?;
            if lhs != rhs {
                return mismatch(a, format!("multiplicativity with {b}"), lhs, rhs);
            }
        }
        Ok(None)
    }

    /// Sweeps a single specialization rule over every `α` with `m ≤ bound`.
    pub fn run_specialization(
        &self,
        rule: Specialization,
        bound: usize,
    ) -> Result<(usize, Option<Counterexample>), VerifyError> {
        self.sweep(all_up_to(bound), |a| self.specialization(a, rule))
    }

    fn specializations(&self, a: &Permutation) -> Outcome {
        for rule in [Specialization::Faces, Specialization::Shifted, Specialization::CycleCount] {
            if let Some(ce) = self.specialization(a, rule)? {
                return Ok(Some(ce));
            }
        }
        Ok(None)
    }

    fn specialization(&self, a: &Permutation, rule: Specialization) -> Outcome {
        let w = self.wgl(a)?;
        let (m, c, f) = (a.len() as i32, a.num_cycles() as i32, a.faces() as i32);
        let (want, check) = match rule {
            Specialization::Faces => (MPoly::n_pow(f - 1), "C_k := N^(k-1) gives N^(f-1)"),
            Specialization::Shifted => (MPoly::n_pow(m + c), "C_k := N^(k+1) gives N^(m+c)"),
            Specialization::CycleCount => (MPoly::var_pow(Var::X, c), "N := 1, C_k := x gives x^c"),
        };
        expect_eq(a, check, specialize_of(&w, rule), want)
    }

    fn hopf_hom(&self, a: &Permutation) -> Outcome {
        if check_hopf_hom(&self.engine, a)? {
            return Ok(None);
        }
        mismatch(a, "Xi(a) = X0(a)|p_k := pL_k + pR_k", xi(&self.engine, a)?, x0_coproduct(&self.engine, a)?)
    }

    fn chromatic_coincidence(&self, a: &Permutation) -> Outcome {
        let lhs = chromatic_of(&self.x(a)?.coeff_in_n(0));
        let rhs = self.chromatic.chromatic_polynomial(&a.intersection_graph());
        expect_eq(a, "X0 at p_k := x equals the chromatic polynomial of the intersection graph", lhs, rhs)
    }

    fn free_term(&self, a: &Permutation) -> Outcome {
        expect_eq(a, "coefficient of N^0 after p_k := x", self.chrom(a)?.coeff_in_n(0), MPoly::zero())
    }

    fn cyclic_x0(&self, a: &Permutation) -> Outcome {
        let m = a.len();
        let k = m - a.ascents();
        let x0 = self.x(a)?.coeff_in_n(0);
        let want: MPoly<R> = (0..k)
            .map(|j| {
                let c = binomial(k as i64 - 1, j as i64) * if j % 2 == 0 { 1 } else { -1 };
                MPoly::term(coeff(c), Monomial::var(Var::P((m - j) as u32), 1))
            })
            .sum();
        if let Some(c) = expect_eq(a, format!("X0 of a cyclic permutation with m - {k} ascents"), &x0, &want)? {
            return Ok(Some(c));
        }
        let p1 = x0.coefficient(&Monomial::var(Var::P(1), 1));
        if m > 1 && !p1.is_zero() {
            return mismatch(a, "coefficient of p1 in X0", p1, 0);
        }
        if k > 1 {
            return expect_eq(a, "X0 at p_k := x", chromatic_of(&x0), MPoly::zero());
        }
        Ok(None)
    }

    fn degree_bound(&self, a: &Permutation) -> Outcome {
        let chrom = self.chrom(a)?;
        if let Some(d) = chrom.degree_in_n() {
            if d > -2 {
                return mismatch(a, "degree in N after p_k := x is at most -2", d, -2);
            }
        }
        if a.ascents() + 2 == a.len() {
            let want = &MPoly::var_pow(Var::X, 2) * &MPoly::n_pow(-2);
            return expect_eq(a, "cyclic with m - 2 ascents gives x^2*N^-2", chrom, want);
        }
        Ok(None)
    }

    fn divisibility(&self, a: &Permutation) -> Outcome {
        let chrom = self.chrom(a)?;
        let special = a.faces() as i32 - a.len() as i32;
        let at = |p: &MPoly<R>, v: i64| p.eval_univariate(Var::X, &coeff(v)).expect("univariate in x");
        for j in chrom.n_exponents() {
            let cj = chrom.coeff_in_n(j);
            if j != special && !(at(&cj, 0).is_zero() && at(&cj, 1).is_zero()) {
                return mismatch(a, format!("coefficient of N^{j} divisible by x(x-1)"), cj, "a multiple of x(x-1)");
            }
        }
        let cs = chrom.coeff_in_n(special);
        if !at(&cs, 0).is_zero() {
            return mismatch(a, format!("coefficient of N^{special} divisible by x"), cs, "a multiple of x");
        }
        expect_eq(a, format!("value at x = 1 of the coefficient of N^{special} (f - m)"), at(&cs, 1), R::one())
    }

    fn successor(&self, a: &Permutation) -> Outcome {
        let chrom = self.chrom(a)?;
        for k in successors(a) {
            let reduced = a.contract(k);
            if let Some(c) =
                expect_eq(a, format!("removing {k} (a({k}) = {})", a.apply(k)), &chrom, &self.chrom(&reduced)?)?
            {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn xi_cases(&self, a: &Permutation) -> Outcome {
        for l in legal_pivots(a) {
            if !lemma_xi_cases(&self.engine, a, l)? {
                let kind = pivot::<R>(a, l)?.kind;
                return mismatch(a, format!("Xi identity ({kind:?}) at {l}"), "unequal", "equal");
            }
        }
        Ok(None)
    }

    fn pbw_agreement(&self, a: &Permutation) -> Outcome {
        let w = self.wgl(a)?;
        for n in 2..=3 {
            let mut u = Pbw::<R>::new(n)?;
            let direct = u.wgl_direct(a)?;
            let via = u.eval_casimir_poly(&w)?;
            if direct != via {
                return mismatch(a, format!("defining sum in U(gl({n}))"), direct, via);
            }
        }
        Ok(None)
    }

    /// Normal ordering respects concatenation on seeded random words.
    fn pbw_associativity(&self) -> Result<(usize, Option<Counterexample>), VerifyError> {
        const WORDS: usize = 100;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut u = Pbw::<R>::new(2)?;
        for _ in 0..WORDS {
            let mut word = |len: usize| -> Vec<Gen> {
                (0..len).map(|_| Gen(rng.gen_range(1..=2), rng.gen_range(1..=2))).collect()
            };
            let (w1, w2) = (word(4), word(4));
            let whole: Vec<Gen> = w1.iter().chain(&w2).copied().collect();
            let lhs = u.normal_order(&whole);
            let (x, y) = (u.normal_order(&w1), u.normal_order(&w2));
            let rhs = u.mul(&x, &y);
            if lhs != rhs {
                let show = |w: &[Gen]| w.iter().map(Gen::to_string).collect::<Vec<_>>().join(" ");
                return Ok((
                    WORDS,
                    Some(Counterexample {
                        subject: format!("[{}] [{}]", show(&w1), show(&w2)),
                        check: "normal ordering of a concatenation".into(),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    }),
                ));
            }
        }
        Ok((WORDS, None))
    }

    fn graph_hopf(&self, a: &Permutation) -> Outcome {
        let g = a.intersection_graph();
        if !a.is_empty() && ClassKey::of(a).is_connected() != g.is_connected() {
            return mismatch(
                a,
                "class connected iff intersection graph connected",
                ClassKey::of(a).is_connected(),
                g.is_connected(),
            );
        }
        let cycles = a.cycles();
        let c = cycles.len();
        for mask in 0..1usize << c {
            let (left, right): (BTreeSet<usize>, BTreeSet<usize>) = (0..c).partition(|&i| mask >> i & 1 == 1);
            for side in [left, right] {
                let restricted = a.restrict_to_cycles(&cycles, side.iter().copied()).intersection_graph();
                let induced = g.induced_subgraph(&side.iter().map(|&i| i + 1).collect());
                if restricted != induced {
                    return mismatch(
                        a,
                        format!("intersection graph of the restriction to cycles {side:?}"),
                        serde_json::to_string(&restricted).unwrap(),
                        serde_json::to_string(&induced).unwrap(),
                    );
                }
            }
        }
        Ok(None)
    }
}

fn all_up_to(bound: usize) -> Vec<Permutation> {
    (0..=bound).flat_map(|m| enumerate(EnumKind::All, m).unwrap()).collect()
}

/// Pivot positions `ℓ` with `α(ℓ) ≠ ℓ + 1`.
pub fn legal_pivots(a: &Permutation) -> Vec<usize> {
    (1..a.len()).filter(|&l| a.apply(l) != l + 1).collect()
}

/// Elements `k` with `α(k) ≡ k + 1 (mod m)`, for `m ≥ 2`.
pub fn successors(a: &Permutation) -> Vec<usize> {
    let m = a.len();
    if m < 2 {
        return Vec::new();
    }
    (1..=m).filter(|&k| a.apply(k) == k % m + 1).collect()
}
