//! Divisors of meromorphic functions: finitely many points plus infinite
//! generator families `{base + Σ kᵢ·dᵢ : kᵢ ≥ 0}`.
//!
//! Families are never materialised; [`enumerate`] expands them lazily inside a
//! disc. Steps sharing a direction are grouped, so a family with the step `-1`
//! repeated `r` times contributes `binom(m+r-1, r-1)` at `base - m` without
//! walking the `r`-dimensional index box.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positions closer than this are the same divisor point.
pub const MERGE_TOL: f64 = 1e-9;

/// Radii used by [`exponent_estimate`].
pub const EXPONENT_RADII: (f64, f64) = (64.0, 128.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivisorPoint {
    #[serde(with = "crate::cjson")]
    pub rho: Complex64,
    pub n: i64,
}

/// The family `{base + Σ kᵢ·stepsᵢ : kᵢ ≥ 0}`, every element carrying `multiplicity`
/// once per representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    #[serde(with = "crate::cjson")]
    base: Complex64,
    #[serde(with = "crate::cjson::vec")]
    steps: Vec<Complex64>,
    multiplicity: i64,
}

impl Generator {
    pub fn new(base: Complex64, steps: Vec<Complex64>, multiplicity: i64) -> Result<Self> {
        let g = Generator { base, steps, multiplicity };
        g.validate()?;
        Ok(g)
    }

    pub fn base(&self) -> Complex64 {
        self.base
    }

    pub fn steps(&self) -> &[Complex64] {
        &self.steps
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    fn validate(&self) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::InvalidArgument("generator needs at least one step".into()));
        }
        for d in &self.steps {
            if d.norm() == 0.0 || !d.re.is_finite() || !d.im.is_finite() {
                return Err(Error::InvalidArgument(format!("degenerate step {d}")));
            }
            if d.re > 1e-12 * d.norm() {
                return Err(Error::InvalidArgument(format!(
                    "step {d} points into the right half-plane"
                )));
            }
        }
        self.projection()?;
        Ok(())
    }

    /// Distinct step directions with their repetition counts, in first-seen order.
    fn groups(&self) -> Vec<(Complex64, usize)> {
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for &d in &self.steps {
            match out.iter_mut().find(|(e, _)| (*e - d).norm() <= 1e-12 * d.norm()) {
                Some(slot) => slot.1 += 1,
                None => out.push((d, 1)),
            }
        }
        out
    }

    /// Unit vector `ℓ` with `Re(d·ℓ̄) > 0` for every step; exists iff the step
    /// directions span an angle smaller than π, which keeps discs finite.
    fn projection(&self) -> Result<Complex64> {
        let mut angles: Vec<f64> = self.groups().iter().map(|(d, _)| d.arg()).collect();
        angles.sort_by(|a, b| a.total_cmp(b));
        let n = angles.len();
        let (mut gap, mut after) = (0.0, 0);
        for i in 0..n {
            let next = if i + 1 < n { angles[i + 1] } else { angles[0] + 2.0 * PI };
            if next - angles[i] > gap {
                gap = next - angles[i];
                after = (i + 1) % n;
            }
        }
        let span = 2.0 * PI - gap;
        if n > 1 && span >= PI - 1e-9 {
            return Err(Error::InvalidArgument(
                "generator steps do not lie in an open half-plane; family is not locally finite"
                    .into(),
            ));
        }
        Ok(Complex64::from_polar(1.0, angles[after] + span / 2.0))
    }

    fn is_lld(&self) -> bool {
        self.base.re <= 0.0 && self.steps.iter().all(|d| d.re <= 1e-12 * d.norm())
    }

    fn is_cld(&self) -> bool {
        in_closed_cone(self.base) && self.steps.iter().all(|d| d.re < -1e-12 * d.norm())
    }

    /// Calls `visit` on every element with `|ρ| ≤ radius`, unmerged.
    fn visit(&self, radius: f64, visit: &mut dyn FnMut(Complex64, i64)) {
        let groups = self.groups();
        let ell = self.projection().expect("validated generator");
        let weights: Vec<f64> = groups.iter().map(|(d, _)| (d * ell.conj()).re).collect();
        let budget = radius - (self.base * ell.conj()).re;
        if budget < -MERGE_TOL {
            return;
        }
        let mut idx = vec![0usize; groups.len()];
        walk(&groups, &weights, 0, budget + MERGE_TOL, self.base, &mut idx, &mut |p, idx| {
            if p.norm() <= radius {
                let mut m = self.multiplicity as i128;
                for ((_, r), &k) in groups.iter().zip(idx.iter()) {
                    m = m.saturating_mul(binomial(k + r - 1, r - 1) as i128);
                }
                visit(p, m.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
            }
        });
    }

    fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Generator::new(
            self.base * lambda,
            self.steps.iter().map(|d| d * lambda).collect(),
            self.multiplicity,
        )
    }
}

fn walk(
    groups: &[(Complex64, usize)],
    weights: &[f64],
    level: usize,
    budget: f64,
    at: Complex64,
    idx: &mut Vec<usize>,
    emit: &mut dyn FnMut(Complex64, &[usize]),
) {
    if level == groups.len() {
        emit(at, idx);
        return;
    }
    let (d, _) = groups[level];
    let w = weights[level];
    let mut k = 0usize;
    while k as f64 * w <= budget {
        idx[level] = k;
        walk(groups, weights, level + 1, budget - k as f64 * w, at + d * k as f64, idx, emit);
        k += 1;
    }
    idx[level] = 0;
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn in_closed_cone(z: Complex64) -> bool {
    z == Complex64::new(0.0, 0.0) || z.re < 0.0
}

/// Divisor with finitely many isolated points and finitely many generator families.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DivisorSpec {
    #[serde(default)]
    points: Vec<DivisorPoint>,
    #[serde(default)]
    families: Vec<Generator>,
}

impl DivisorSpec {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a divisor, merging coincident points and dropping zero multiplicities.
    pub fn new(points: Vec<DivisorPoint>, families: Vec<Generator>) -> Self {
        let raw = points.into_iter().map(|p| (p.rho, p.n)).collect();
        let points = merge(raw).into_iter().map(|(rho, n)| DivisorPoint { rho, n }).collect();
        let families = families.into_iter().filter(|g| g.multiplicity != 0).collect();
        DivisorSpec { points, families }
    }

    pub fn from_points(points: &[(Complex64, i64)]) -> Self {
        Self::new(points.iter().map(|&(rho, n)| DivisorPoint { rho, n }).collect(), Vec::new())
    }

    pub fn points(&self) -> &[DivisorPoint] {
        &self.points
    }

    pub fn families(&self) -> &[Generator] {
        &self.families
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.families.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    /// Checks generator invariants, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        self.families.iter().try_for_each(Generator::validate)
    }

    /// Formal sum of two divisors.
    pub fn merged(&self, other: &DivisorSpec) -> DivisorSpec {
        let points = self.points.iter().chain(&other.points).copied().collect();
        let families = self.families.iter().chain(&other.families).cloned().collect();
        DivisorSpec::new(points, families)
    }

    pub fn negated(&self) -> DivisorSpec {
        DivisorSpec {
            points: self.points.iter().map(|p| DivisorPoint { rho: p.rho, n: -p.n }).collect(),
            families: self
                .families
                .iter()
                .map(|g| Generator { multiplicity: -g.multiplicity, ..g.clone() })
                .collect(),
        }
    }

    /// Divisor of `s ↦ F(s/λ)` given the divisor of `F`: every position is multiplied by `λ`.
    pub fn scaled(&self, lambda: Complex64) -> Result<DivisorSpec> {
        if lambda.norm() == 0.0 {
            return Err(Error::InvalidArgument("scale must be nonzero".into()));
        }
        Ok(DivisorSpec {
            points: self
                .points
                .iter()
                .map(|p| DivisorPoint { rho: p.rho * lambda, n: p.n })
                .collect(),
            families: self.families.iter().map(|g| g.scaled(lambda)).collect::<Result<_>>()?,
        })
    }

    /// Multiplicity at `s` (0 when `s` is not within [`MERGE_TOL`] of the divisor).
    pub fn multiplicity_at(&self, s: Complex64) -> i64 {
        enumerate(self, s.norm() + 2.0 * MERGE_TOL)
            .into_iter()
            .filter(|(rho, _)| (rho - s).norm() <= MERGE_TOL)
            .map(|(_, n)| n)
            .sum()
    }
}

/// Convergence classification of a divisor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisorClass {
    /// No element in the open right half-plane.
    pub lld: bool,
    /// Every element in one closed cone `{|Im ρ| ≤ c·(-Re ρ)} ∪ {0}`.
    pub cld: bool,
    pub exponent: f64,
}

fn lex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn merge(mut raw: Vec<(Complex64, i64)>) -> Vec<(Complex64, i64)> {
    raw.sort_by(|a, b| lex(&a.0, &b.0));
    let mut out: Vec<(Complex64, i64)> = Vec::with_capacity(raw.len());
    for (z, n) in raw {
        let mut hit = None;
        for (j, (w, _)) in out.iter().enumerate().rev() {
            if z.re - w.re > MERGE_TOL {
                break;
            }
            if (z.im - w.im).abs() <= MERGE_TOL {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => out[j].1 += n,
            None => out.push((z, n)),
        }
    }
    out.retain(|&(_, n)| n != 0);
    out
}

/// All elements with `|ρ| ≤ radius`, merged, in lexicographic `(Re, Im)` order.
pub fn enumerate(div: &DivisorSpec, radius: f64) -> Vec<(Complex64, i64)> {
    let mut raw: Vec<(Complex64, i64)> = div
        .points
        .iter()
        .filter(|p| p.rho.norm() <= radius)
        .map(|p| (p.rho, p.n))
        .collect();
    for g in &div.families {
        g.visit(radius, &mut |p, n| raw.push((p, n)));
    }
    merge(raw)
}

/// Every element with `|ρ| ≤ radius`, without merging; coincident elements of
/// different families are visited separately. Cheaper than [`enumerate`] for sums
/// that are linear in the multiplicities.
pub fn for_each_raw(div: &DivisorSpec, radius: f64, visit: &mut dyn FnMut(Complex64, i64)) {
    for p in div.points.iter().filter(|p| p.rho.norm() <= radius) {
        visit(p.rho, p.n);
    }
    for g in &div.families {
        g.visit(radius, visit);
    }
}

/// `Σ_{ρ≠0, |ρ|≤radius} |n_ρ| |ρ|^{-α}`.
pub fn norm(div: &DivisorSpec, alpha: f64, radius: f64) -> f64 {
    norm_of(&enumerate(div, radius), alpha)
}

pub(crate) fn norm_of(points: &[(Complex64, i64)], alpha: f64) -> f64 {
    points
        .iter()
        .filter(|(rho, _)| rho.norm() > 0.0)
        .map(|(rho, n)| n.unsigned_abs() as f64 * rho.norm().powf(-alpha))
        .sum()
}

/// Smallest `α ∈ {0.5, 1, …, 6}` whose partial norms at the two [`EXPONENT_RADII`]
/// agree within 5%. A heuristic, used only to choose a genus.
pub fn exponent_estimate(div: &DivisorSpec) -> f64 {
    let (r1, r2) = EXPONENT_RADII;
    let pts = enumerate(div, r2);
    let inner: Vec<(Complex64, i64)> =
        pts.iter().copied().filter(|(rho, _)| rho.norm() <= r1).collect();
    (1..=12)
        .map(|k| 0.5 * k as f64)
        .find(|&alpha| {
            let a = norm_of(&inner, alpha);
            let b = norm_of(&pts, alpha);
            b == 0.0 || (b - a) < 0.05 * b
        })
        .unwrap_or(6.0)
}

pub fn classify(div: &DivisorSpec) -> DivisorClass {
    let lld = div.points.iter().all(|p| p.rho.re <= 0.0) && div.families.iter().all(Generator::is_lld);
    let cld = lld
        && div.points.iter().all(|p| in_closed_cone(p.rho))
        && div.families.iter().all(Generator::is_cld);
    DivisorClass { lld, cld, exponent: exponent_estimate(div) }
}

/// Divisor of `Γ^f` from the divisor of `f`: `-Σ_{ρ, k≥0} n_ρ(f)·(ρ-k)`.
pub fn propagate(div_f: &DivisorSpec) -> Result<DivisorSpec> {
    if !(div_f.points.iter().all(|p| p.rho.re <= 0.0) && div_f.families.iter().all(Generator::is_lld)) {
        return Err(Error::NotLeftLocated(
            "the seed divisor has elements with positive real part".into(),
        ));
    }
    let minus_one = Complex64::new(-1.0, 0.0);
    let mut families: Vec<Generator> = div_f
        .points
        .iter()
        .map(|p| Generator { base: p.rho, steps: vec![minus_one], multiplicity: -p.n })
        .collect();
    for g in &div_f.families {
        let mut steps = g.steps.clone();
        steps.push(minus_one);
        families.push(Generator::new(g.base, steps, -g.multiplicity)?);
    }
    Ok(DivisorSpec { points: Vec::new(), families })
}
