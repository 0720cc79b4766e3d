//! Higher and multiple Gamma hierarchies.
//!
//! Level 0 is `f⁻¹`. Level `n ≥ 1` with step `ω = ω_n` is obtained by the change of
//! variables `t = s/ω`: with `h(t) = G_{n-1}(ωt)⁻¹`,
//!
//! ```text
//! G_n(s) = Γ^h(s/ω) / Γ^h(1/ω),    G_n(s + ω) = G_{n-1}(s)⁻¹ G_n(s),    G_n(1) = 1.
//! ```
//!
//! The higher hierarchy is the case `ω_n = 1` throughout. Every level keeps its
//! own [`GammaSolution`] in the variable `t` and a link to its parent; evaluating a
//! level never rebuilds the ones below it.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{solution_family_levels, Poly};
use crate::divisor::{self, DivisorSpec};
use crate::error::{Error, Result};
use crate::funcspec::{value_from_local, FunctionSpec};
use crate::gamma::{build_gamma_with, FitDomain, GammaSolution, Normalization, SeedFunction, TruncationPolicy};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug)]
enum Body {
    Base { seed: Arc<dyn SeedFunction> },
    Built { solution: Box<GammaSolution>, omega: Complex64, ln_norm: Complex64 },
}

/// One level `G_n(·|ω_1..ω_n)` of a hierarchy.
#[derive(Debug)]
pub struct HierarchyLevel {
    n: usize,
    omegas: Vec<Complex64>,
    body: Body,
    parent: Option<Arc<HierarchyLevel>>,
}

impl HierarchyLevel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omegas(&self) -> &[Complex64] {
        &self.omegas
    }

    pub fn parent(&self) -> Option<&Arc<HierarchyLevel>> {
        self.parent.as_ref()
    }

    /// The level `k ≤ n` of the same chain.
    pub fn level(self: &Arc<Self>, k: usize) -> Option<Arc<HierarchyLevel>> {
        let mut cur = Arc::clone(self);
        while cur.n > k {
            cur = Arc::clone(cur.parent.as_ref()?);
        }
        (cur.n == k).then_some(cur)
    }

    /// `Γ^h` in the variable `t = s/ω_n`; `None` at level 0.
    pub fn solution(&self) -> Option<&GammaSolution> {
        match &self.body {
            Body::Base { .. } => None,
            Body::Built { solution, .. } => Some(solution.as_ref()),
        }
    }

    /// Order of `G_n` at `s` and the log of the leading coefficient.
    pub fn local(&self, s: Complex64) -> Result<(i64, Complex64)> {
        match &self.body {
            Body::Base { seed } => {
                let (o, ln) = seed.local(s)?;
                Ok((-o, -ln))
            }
            Body::Built { solution, omega, ln_norm } => {
                // (t - t₀)^o = ω^{-o} (s - s₀)^o
                let (o, ln) = solution.local(s / omega)?;
                Ok((o, ln - omega.ln() * o as f64 - ln_norm))
            }
        }
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let (o, ln) = self.local(s)?;
        value_from_local(s, o, ln)
    }

    /// A branch of `log G_n` continuous on `Re s > 0`.
    pub fn ln_continuous(&self, s: Complex64) -> Result<Complex64> {
        match &self.body {
            Body::Base { seed } => Ok(-seed.ln_value(s)?),
            Body::Built { solution, omega, ln_norm } => Ok(solution.ln_continuous(s / omega)? - ln_norm),
        }
    }

    /// Polynomial part of [`HierarchyLevel::ln_continuous`].
    pub fn log_poly(&self) -> Poly {
        match &self.body {
            Body::Base { seed } => -&seed.log_poly(),
            Body::Built { solution, omega, ln_norm } => {
                &solution.log_poly().compose_scale(omega.inv()) - &Poly::constant(*ln_norm)
            }
        }
    }

    /// Divisor of `G_n` in the variable `s`.
    pub fn divisor(&self) -> Result<DivisorSpec> {
        match &self.body {
            Body::Base { seed } => Ok(seed.divisor().negated()),
            Body::Built { solution, omega, .. } => solution.divisor().scaled(*omega),
        }
    }

    pub fn real_analytic(&self) -> bool {
        match &self.body {
            Body::Base { seed } => seed.real_analytic(),
            Body::Built { solution, omega, .. } => {
                omega.im == 0.0 && solution.normalization() == Normalization::RealAnalytic
            }
        }
    }
}

/// `t ↦ G(ωt)⁻¹`, the seed of the level above `G`.
#[derive(Debug)]
struct ReciprocalSeed {
    level: Arc<HierarchyLevel>,
    omega: Complex64,
}

impl SeedFunction for ReciprocalSeed {
    fn local(&self, t: Complex64) -> Result<(i64, Complex64)> {
        let (o, ln) = self.level.local(self.omega * t)?;
        Ok((-o, -ln - self.omega.ln() * o as f64))
    }

    fn ln_value(&self, t: Complex64) -> Result<Complex64> {
        Ok(-self.level.ln_continuous(self.omega * t)?)
    }

    fn log_poly(&self) -> Poly {
        -&self.level.log_poly().compose_scale(self.omega)
    }

    fn divisor(&self) -> DivisorSpec {
        self.level
            .divisor()
            .and_then(|d| d.scaled(self.omega.inv()))
            .expect("nonzero step")
            .negated()
    }

    fn real_analytic(&self) -> bool {
        self.omega.im == 0.0 && self.level.real_analytic()
    }

    fn describe(&self) -> String {
        format!("1/G_{}({}·t)", self.level.n, self.omega)
    }
}

fn check_normalized(seed: &dyn SeedFunction) -> Result<()> {
    let v = seed.eval(ONE)?;
    if (v - ONE).norm() >= 1e-12 {
        return Err(Error::InvalidArgument(format!("the seed must satisfy f(1) = 1, got {v}")));
    }
    Ok(())
}

/// Level `n` policy: the `t`-domain is the base domain with its imaginary extent
/// divided by `|ω_n|`, so every level covers the same strip in `s`.
fn level_policy(base: &TruncationPolicy, omega: Complex64) -> TruncationPolicy {
    TruncationPolicy {
        domain: FitDomain { im_max: base.domain.im_max / omega.norm(), ..base.domain },
        ..*base
    }
}

fn build_chain(
    seed: Arc<dyn SeedFunction>,
    first: Option<FunctionSpec>,
    omegas: &[Complex64],
    normalization: Normalization,
    policy: &TruncationPolicy,
) -> Result<Arc<HierarchyLevel>> {
    let mut level = Arc::new(HierarchyLevel { n: 0, omegas: Vec::new(), body: Body::Base { seed }, parent: None });
    for (i, &omega) in omegas.iter().enumerate() {
        if omega.norm() == 0.0 || !(omega.re > 0.0) {
            return Err(Error::InvalidArgument(format!("step {omega} is not in the right half-plane")));
        }
        let h: Arc<dyn SeedFunction> = match (&first, i) {
            // exact atoms in t keep principal logs continuous for complex ω
            (Some(spec), 0) => Arc::new(spec.rescaled(omega)?),
            _ => {
                if omega.im != 0.0 {
                    return Err(Error::InvalidArgument(
                        "complex steps are only supported on the first level".into(),
                    ));
                }
                Arc::new(ReciprocalSeed { level: Arc::clone(&level), omega })
            }
        };
        let lp = level_policy(policy, omega);
        let solution = build_gamma_with(h, normalization, &lp)?;
        let ln_norm = solution.ln_continuous(omega.inv())?;
        let mut omegas_n = level.omegas.clone();
        omegas_n.push(omega);
        level = Arc::new(HierarchyLevel {
            n: i + 1,
            omegas: omegas_n,
            body: Body::Built { solution: Box::new(solution), omega, ln_norm },
            parent: Some(level),
        });
    }
    Ok(level)
}

/// The canonical multiple hierarchy `G_N(s|ω_1..ω_N)` for a real analytic seed with
/// `f(1) = 1` and real `ω_k > 0`.
pub fn multiple_gamma(spec: &FunctionSpec, omegas: &[f64]) -> Result<Arc<HierarchyLevel>> {
    multiple_gamma_with(spec, omegas, &TruncationPolicy::default())
}

pub fn multiple_gamma_with(spec: &FunctionSpec, omegas: &[f64], policy: &TruncationPolicy) -> Result<Arc<HierarchyLevel>> {
    if let Some(w) = omegas.iter().find(|w| !(**w > 0.0)) {
        return Err(Error::InvalidArgument(format!("step {w} must be a positive real")));
    }
    check_normalized(spec)?;
    if !spec.is_real_analytic() {
        return Err(Error::NormalizationIncompatible(format!("{spec} is not real analytic")));
    }
    let omegas: Vec<Complex64> = omegas.iter().map(|&w| Complex64::new(w, 0.0)).collect();
    build_chain(Arc::new(spec.clone()), Some(spec.clone()), &omegas, Normalization::RealAnalytic, policy)
}

/// The higher hierarchy: every step equal to 1.
pub fn higher_gamma(spec: &FunctionSpec, n: usize) -> Result<Arc<HierarchyLevel>> {
    if n == 0 {
        return Err(Error::InvalidArgument("the hierarchy needs at least one level".into()));
    }
    multiple_gamma(spec, &vec![1.0; n])
}

/// Hierarchy over an arbitrary seed with `f(1) = 1`, e.g. the reciprocal of a level
/// of another hierarchy.
pub fn multiple_gamma_from_seed(
    seed: Arc<dyn SeedFunction>,
    omegas: &[f64],
    policy: &TruncationPolicy,
) -> Result<Arc<HierarchyLevel>> {
    check_normalized(seed.as_ref())?;
    let normalization = if seed.real_analytic() { Normalization::RealAnalytic } else { Normalization::Value1 };
    let omegas: Vec<Complex64> = omegas.iter().map(|&w| Complex64::new(w, 0.0)).collect();
    build_chain(seed, None, &omegas, normalization, policy)
}

/// The reciprocal `1/G_n(ω·t)` of a level, as a seed.
pub fn reciprocal_seed(level: &Arc<HierarchyLevel>, omega: f64) -> Arc<dyn SeedFunction> {
    Arc::new(ReciprocalSeed { level: Arc::clone(level), omega: Complex64::new(omega, 0.0) })
}

/// A change-of-variables solution for complex steps. Not canonical: the
/// normalization only fixes `G_n(1) = 1`, and complex steps are allowed on the
/// first level only.
pub fn complex_hierarchy(spec: &FunctionSpec, omegas: &[Complex64]) -> Result<Arc<HierarchyLevel>> {
    check_normalized(spec)?;
    build_chain(Arc::new(spec.clone()), Some(spec.clone()), omegas, Normalization::Value1, &TruncationPolicy::default())
}

/// Divisors of `G_0..G_N` without building any solution.
pub fn hierarchy_divisors(spec: &FunctionSpec, omegas: &[f64]) -> Result<Vec<DivisorSpec>> {
    let mut out = vec![spec.divisor_of().negated()];
    for &w in omegas {
        let w = Complex64::new(w, 0.0);
        let h = out.last().expect("nonempty").scaled(w.inv())?.negated();
        out.push(divisor::propagate(&h)?.scaled(w)?);
    }
    Ok(out)
}

/// `G_N^{(-1)^{N+1}}`.
#[derive(Debug, Clone)]
pub struct VignerasLevel {
    level: Arc<HierarchyLevel>,
}

pub fn vigneras_convert(level: &Arc<HierarchyLevel>) -> VignerasLevel {
    VignerasLevel { level: Arc::clone(level) }
}

impl VignerasLevel {
    pub fn exponent(&self) -> i64 {
        if self.level.n % 2 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let (o, ln) = self.level.local(s)?;
        let e = self.exponent();
        value_from_local(s, o * e, ln * e as f64)
    }
}

/// `e^{2πi P_n(s)} G_n(s)`, one member of the complex-parameter family at level `n`.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub level: Arc<HierarchyLevel>,
    pub p: Poly,
}

impl FamilyMember {
    pub fn local(&self, s: Complex64) -> Result<(i64, Complex64)> {
        let (o, ln) = self.level.local(s)?;
        Ok((o, ln + Complex64::new(0.0, 2.0 * PI) * self.p.eval(s)))
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let (o, ln) = self.local(s)?;
        value_from_local(s, o, ln)
    }
}

/// Members for levels `0..=N` built from integer seeds `a_0..a_N`:
/// `P_n(s) = (-1)^n Q_n(s - 1)`, so that `Δ_{ω_{n+1}} P_{n+1} = -P_n` and
/// `P_n(1) = ±a_n`. Every member satisfies the ladder equation of its level.
pub fn complex_family(level: &Arc<HierarchyLevel>, seeds: &[i64]) -> Result<Vec<FamilyMember>> {
    if seeds.len() != level.n + 1 {
        return Err(Error::InvalidArgument(format!(
            "level {} needs {} seeds, got {}",
            level.n,
            level.n + 1,
            seeds.len()
        )));
    }
    let q = solution_family_levels(seeds, &level.omegas)?;
    q.into_iter()
        .enumerate()
        .map(|(n, qn)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let p = qn.shift(-ONE).scale(Complex64::new(sign, 0.0));
            let lvl = level.level(n).expect("ancestor exists");
            Ok(FamilyMember { level: lvl, p })
        })
        .collect()
}
