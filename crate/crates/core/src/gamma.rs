//! Construction and evaluation of `Γ^f`.
//!
//! For a left located seed `f` the divisor of `Γ^f` is the propagated divisor, `g`
//! is its canonical product of genus `d`, and
//!
//! ```text
//! Γ^f(s) = e^{-ψ(s) + c} · g(s),    ψ(s+1) - ψ(s) = φ(s),    g(s+1) = f(s) g(s) e^{φ(s)}.
//! ```
//!
//! Everything is computed in log space. `L(s) = log g(s)` is taken with principal
//! logarithms of the primary factors, which is holomorphic on `Re s > 0` because
//! every divisor element has `Re ρ ≤ 0`.
//!
//! The product is truncated at a radius `R`. The discarded factors contribute an
//! entire function `T_R(s) = -Σ_{j>d} τ_j s^j / j` with `τ_j = Σ_{|ρ|>R} n_ρ ρ^{-j}`.
//! The correction polynomial is fitted with degree `d + extra`, so the fit absorbs
//! `ΔT_R` up to that degree and `R` only has to make the terms of degree above
//! `d + extra + 1` negligible on the fit domain. The absorbed part is then removed
//! again with estimated power sums `τ_j`, so `φ`, `ψ` and `g` refer to the full
//! product; those estimates cancel exactly in `Γ^f` itself.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{antidifference, Poly};
use crate::divisor::{self, DivisorSpec, MERGE_TOL};
use crate::error::{Error, Result};
use crate::funcspec::{value_from_local, FunctionSpec};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Genus cap.
pub const MAX_GENUS: usize = 8;

/// Enumerated points spent on estimating the tail power sums `τ_j`.
const TAIL_POINT_BUDGET: usize = 2_000_000;

/// A seed `f` as seen by the construction. [`FunctionSpec`] is the usual one; the
/// hierarchies feed reciprocals of earlier levels through the same interface.
pub trait SeedFunction: fmt::Debug + Send + Sync {
    /// Order of `f` at `s` and the log of the leading coefficient `c` in
    /// `f ≈ c·(s - s₀)^order`; at a regular point `(0, log f(s))`.
    fn local(&self, s: Complex64) -> Result<(i64, Complex64)>;

    /// A branch of `log f` continuous on the open right half-plane.
    fn ln_value(&self, s: Complex64) -> Result<Complex64>;

    /// Polynomial part `P` of [`SeedFunction::ln_value`]; the remainder is what the
    /// correction fit sees, so `P` should carry every polynomial growth of `log f`.
    fn log_poly(&self) -> Poly;

    fn log_rest(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.ln_value(s)? - self.log_poly().eval(s))
    }

    fn divisor(&self) -> DivisorSpec;

    /// `f(s̄) = conj f(s)`.
    fn real_analytic(&self) -> bool;

    fn describe(&self) -> String;

    fn eval(&self, s: Complex64) -> Result<Complex64> {
        let (order, ln) = self.local(s)?;
        value_from_local(s, order, ln)
    }
}

/// Rectangle `[re_min, re_max] × [-im_max, im_max]` on which `φ` is fitted and
/// the product formula is used directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitDomain {
    pub re_min: f64,
    pub re_max: f64,
    pub im_max: f64,
}

impl Default for FitDomain {
    fn default() -> Self {
        FitDomain { re_min: 0.5, re_max: 8.5, im_max: 10.5 }
    }
}

impl FitDomain {
    /// Largest `|s|` reached by the fit, including the shifted points `s + 1`.
    pub fn reach(&self) -> f64 {
        Complex64::new(self.re_max + 1.0, self.im_max).norm()
    }

    fn samples(&self) -> Vec<Complex64> {
        let nr = ((self.re_max - self.re_min) / 0.5).round() as usize + 1;
        let ni = (2.0 * self.im_max / 1.5).round().max(1.0) as usize + 1;
        let mut out = Vec::with_capacity(nr * ni);
        for i in 0..nr {
            for j in 0..ni {
                let re = self.re_min + (self.re_max - self.re_min) * i as f64 / (nr - 1).max(1) as f64;
                let im = -self.im_max + 2.0 * self.im_max * j as f64 / (ni - 1).max(1) as f64;
                out.push(Complex64::new(re, im));
            }
        }
        out
    }

    /// Points off the sample lattice, offset by 0.37.
    fn holdout(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        let mut re = self.re_min + 0.37;
        while re <= self.re_max {
            let mut im = -self.im_max + 0.37;
            while im <= self.im_max {
                out.push(Complex64::new(re, im));
                im += 2.3;
            }
            re += 1.1;
        }
        out
    }
}

/// Truncation and fitting parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Smallest truncation radius tried.
    pub radius: f64,
    /// Bound on the neglected part of `log g` over the fit domain.
    pub tol: f64,
    /// Radius beyond which the construction gives up.
    pub cap: f64,
    /// Fit degree is `genus + extra_degree`.
    pub extra_degree: usize,
    /// Largest tolerated holdout residual of the fit.
    pub fit_tol: f64,
    pub domain: FitDomain,
    /// Power sums `τ_j` are summed out to `radius · tail_extension` before extrapolating.
    pub tail_extension: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            radius: 64.0,
            tol: 1e-12,
            cap: 1e6,
            extra_degree: 6,
            fit_tol: 1e-8,
            domain: FitDomain::default(),
            tail_extension: 1024.0,
        }
    }
}

/// How the free constant `c` is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `Γ^f(1) = 1`.
    Value1,
    /// `Res_{s=0} Γ^f = 1`; needs a simple zero of `f` at 0.
    Residue0,
    /// `Γ^f(0) = 1`; needs `f(0)` finite and nonzero.
    Value0,
    /// `Γ^f(1) = 1` and `Γ^f(s̄) = conj Γ^f(s)`; needs a real analytic seed.
    RealAnalytic,
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "value1" => Ok(Normalization::Value1),
            "residue0" => Ok(Normalization::Residue0),
            "value0" => Ok(Normalization::Value0),
            "realanalytic" => Ok(Normalization::RealAnalytic),
            other => Err(Error::InvalidArgument(format!(
                "unknown normalization {other:?}; expected value1, residue0, value0 or realanalytic"
            ))),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Value1 => "value1",
            Normalization::Residue0 => "residue0",
            Normalization::Value0 => "value0",
            Normalization::RealAnalytic => "realanalytic",
        })
    }
}

/// `E_d(x) = (1 - x) exp(x + x²/2 + … + x^d/d)`.
pub fn primary_factor(x: Complex64, d: usize) -> Complex64 {
    if x == ONE {
        return ZERO;
    }
    ln_primary(x, d).exp()
}

/// Principal-branch `log E_d(x)`; for small `|x|` summed as `-Σ_{j>d} x^j/j`.
pub fn ln_primary(x: Complex64, d: usize) -> Complex64 {
    let r = x.norm();
    if r <= 0.125 {
        let mut acc = ZERO;
        let mut p = x.powi(d as i32 + 1);
        let mut j = d + 1;
        while p.norm() > 1e-18 * (acc.norm() + 1e-300) * j as f64 {
            acc -= p / j as f64;
            p *= x;
            j += 1;
        }
        acc
    } else {
        let mut acc = (ONE - x).ln();
        let mut p = ONE;
        for j in 1..=d {
            p *= x;
            acc += p / j as f64;
        }
        acc
    }
}

/// Truncated canonical product `g_R` of a divisor with an estimate of the
/// discarded tail `T_R` as a polynomial.
#[derive(Debug, Clone)]
pub struct WeierstrassProduct {
    genus: usize,
    radius: f64,
    n0: i64,
    /// `(1/ρ, n_ρ)` in ascending `|ρ|`.
    terms: Arc<Vec<(Complex64, f64)>>,
    tail: Poly,
}

impl WeierstrassProduct {
    /// Chooses `R` so that the degree `> tail_degree` part of the tail is below
    /// `policy.tol` for `|s| ≤ reach`, enumerates the divisor and estimates `τ_j`
    /// for `genus < j ≤ tail_degree`.
    pub fn build(
        gdiv: &DivisorSpec,
        genus: usize,
        tail_degree: usize,
        reach: f64,
        policy: &TruncationPolicy,
    ) -> Result<Self> {
        let tail_degree = tail_degree.max(genus);
        let radius = choose_radius(gdiv, tail_degree + 1, reach, policy)?;
        let mut n0 = 0;
        let mut terms: Vec<(Complex64, f64, f64)> = Vec::new();
        for (rho, n) in divisor::enumerate(gdiv, radius) {
            if rho.norm() <= MERGE_TOL {
                n0 += n;
            } else {
                terms.push((rho.inv(), n as f64, rho.norm()));
            }
        }
        terms.sort_by(|a, b| a.2.total_cmp(&b.2));
        let tau = if gdiv.is_finite() {
            Vec::new()
        } else {
            tail_power_sums(gdiv, radius, genus + 1, tail_degree, policy)
        };
        let mut tail = vec![ZERO; tail_degree + 1];
        for (i, t) in tau.iter().enumerate() {
            let j = genus + 1 + i;
            tail[j] = -t / j as f64;
        }
        Ok(WeierstrassProduct {
            genus,
            radius,
            n0,
            terms: Arc::new(terms.into_iter().map(|(inv, n, _)| (inv, n)).collect()),
            tail: Poly::new(tail),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Estimated `T_R` as a polynomial.
    pub fn tail(&self) -> &Poly {
        &self.tail
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// `log g_R(s)` with principal branches, summed in ascending `|ρ|`.
    pub fn ln_truncated(&self, s: Complex64) -> Complex64 {
        let mut acc = if self.n0 != 0 { s.ln() * self.n0 as f64 } else { ZERO };
        for &(inv, n) in self.terms.iter() {
            acc += ln_primary(s * inv, self.genus) * n;
        }
        acc
    }

    /// `log g(s) ≈ log g_R(s) + T_R(s)`.
    pub fn ln(&self, s: Complex64) -> Complex64 {
        self.ln_truncated(s) + self.tail.eval(s)
    }

    /// `g(s)`; zero on zeros of the divisor, [`Error::Pole`] on its poles.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let mut order = 0;
        if s.norm() <= MERGE_TOL {
            order += self.n0;
        }
        for &(inv, n) in self.terms.iter() {
            let rho = inv.inv();
            if (rho - s).norm() <= MERGE_TOL {
                order += n as i64;
            }
        }
        if order != 0 {
            return value_from_local(s, order, ZERO);
        }
        value_from_local(s, 0, self.ln(s))
    }
}

/// Smallest doubling of the starting radius for which
/// `2/κ · r^κ · Σ_{|ρ|>R} |n_ρ| |ρ|^{-κ} < tol/2`, the sum beyond `R` being
/// extrapolated geometrically from the last two dyadic shells.
fn choose_radius(gdiv: &DivisorSpec, kappa: usize, reach: f64, policy: &TruncationPolicy) -> Result<f64> {
    let mut radius = policy.radius.max(2.0 * reach);
    if gdiv.is_finite() {
        let far = gdiv.points().iter().map(|p| p.rho.norm()).fold(0.0, f64::max);
        return Ok(radius.max(far + 1.0));
    }
    let k = kappa as f64;
    loop {
        if radius > policy.cap {
            return Err(Error::ToleranceUnreachable { cap: policy.cap });
        }
        let (mut inner, mut outer) = (0.0, 0.0);
        divisor::for_each_raw(gdiv, radius, &mut |rho, n| {
            let r = rho.norm();
            if r > radius / 2.0 {
                outer += n.unsigned_abs() as f64 * r.powf(-k);
            } else if r > radius / 4.0 {
                inner += n.unsigned_abs() as f64 * r.powf(-k);
            }
        });
        let beyond = if outer == 0.0 {
            0.0
        } else if inner > 0.0 && outer < inner {
            let q = outer / inner;
            outer * q / (1.0 - q)
        } else {
            f64::INFINITY
        };
        if 2.0 / k * reach.powf(k) * beyond < policy.tol / 2.0 {
            return Ok(radius);
        }
        radius *= 2.0;
    }
}

/// `τ_j = Σ_{|ρ|>R} n_ρ ρ^{-j}` for `j_min ≤ j ≤ j_max`: dyadic shells out to
/// `R · tail_extension` (or the point budget), then a geometric extrapolation.
fn tail_power_sums(
    gdiv: &DivisorSpec,
    radius: f64,
    j_min: usize,
    j_max: usize,
    policy: &TruncationPolicy,
) -> Vec<Complex64> {
    if j_max < j_min {
        return Vec::new();
    }
    let m = j_max - j_min + 1;
    let mut sums = vec![ZERO; m];
    let mut shells: Vec<Vec<Complex64>> = Vec::new();
    let mut inner = radius;
    let mut spent = 0usize;
    while inner < radius * policy.tail_extension && spent < TAIL_POINT_BUDGET {
        let outer = 2.0 * inner;
        let mut shell = vec![ZERO; m];
        let mut count = 0usize;
        divisor::for_each_raw(gdiv, outer, &mut |rho, n| {
            if rho.norm() > inner {
                count += 1;
                let inv = rho.inv();
                let mut p = inv.powi(j_min as i32) * n as f64;
                for slot in shell.iter_mut() {
                    *slot += p;
                    p *= inv;
                }
            }
        });
        spent += count;
        for (acc, v) in sums.iter_mut().zip(&shell) {
            *acc += v;
        }
        shells.push(shell);
        if count == 0 {
            return sums;
        }
        inner = outer;
    }
    if let [.., prev, last] = shells.as_slice() {
        for i in 0..m {
            if prev[i].norm() > 0.0 {
                let q = last[i] / prev[i];
                if q.norm() < 0.9 {
                    sums[i] += last[i] * q / (ONE - q);
                }
            }
        }
    }
    sums
}

/// `g(s)` for the canonical product of genus `d` of `gdiv`.
pub fn weierstrass_eval(gdiv: &DivisorSpec, d: usize, s: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    let product = WeierstrassProduct::build(gdiv, d, d + policy.extra_degree + 1, s.norm(), policy)?;
    product.eval(s)
}

/// Genus used for a propagated divisor: `⌈exponent⌉ + 1`, capped; 0 when finite.
pub fn genus_for(gdiv: &DivisorSpec) -> usize {
    if gdiv.is_finite() {
        return 0;
    }
    ((divisor::exponent_estimate(gdiv).ceil() as usize) + 1).min(MAX_GENUS)
}

/// Result of fitting the correction polynomial.
#[derive(Debug, Clone)]
pub struct CorrectionFit {
    /// `φ` for the full canonical product.
    pub phi: Poly,
    /// Largest holdout residual of the fit, in log space.
    pub residual: f64,
}

fn fit_correction(
    seed: &dyn SeedFunction,
    product: &WeierstrassProduct,
    degree: usize,
    real: bool,
    policy: &TruncationPolicy,
) -> Result<CorrectionFit> {
    // χ = log g_R(s+1) - log g_R(s) - (log f(s) - P(s)) is a polynomial up to the tolerance
    let target = |s: Complex64| -> Result<Complex64> {
        Ok(product.ln_truncated(s + 1.0) - product.ln_truncated(s) - seed.log_rest(s)?)
    };
    let samples = policy.domain.samples();
    let values: Vec<Complex64> = samples.par_iter().map(|&s| target(s)).collect::<Result<_>>()?;
    let scale = policy.domain.reach();
    let cols = degree + 1;
    let a = DMatrix::from_fn(samples.len(), cols, |i, k| (samples[i] / scale).powi(k as i32));
    let b = DVector::from_vec(values);
    let coef = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::InvalidArgument(format!("least squares failed: {e}")))?;
    let mut chi = Poly::new(coef.iter().copied().collect()).compose_scale(Complex64::new(1.0 / scale, 0.0));
    if real {
        chi = chi.real_part();
    }
    let holdout = policy.domain.holdout();
    let residual = holdout
        .par_iter()
        .map(|&s| target(s).map(|t| (chi.eval(s) - t).norm()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    if !(residual < policy.fit_tol) {
        return Err(Error::FitResidualExceeded { residual, tolerance: policy.fit_tol });
    }
    let mut tail = product.tail().clone();
    if real {
        tail = tail.real_part();
    }
    let phi = &(&chi - &seed.log_poly()) + &tail.difference();
    Ok(CorrectionFit { phi, residual })
}

/// `φ` with `g(s+1) = f(s) g(s) e^{φ(s)}` for the genus-`d` product of `gdiv`.
pub fn correction_poly(spec: &FunctionSpec, gdiv: &DivisorSpec, d: usize) -> Result<Poly> {
    let policy = TruncationPolicy::default();
    let degree = d + policy.extra_degree;
    let product = WeierstrassProduct::build(gdiv, d, degree + 1, policy.domain.reach(), &policy)?;
    Ok(fit_correction(spec, &product, degree, false, &policy)?.phi)
}

/// A constructed `Γ^f`, optionally multiplied by `e^{2πias + b}`.
#[derive(Debug, Clone)]
pub struct GammaSolution {
    seed: Arc<dyn SeedFunction>,
    gdiv: DivisorSpec,
    product: WeierstrassProduct,
    /// Tail estimate actually added to `log g_R`.
    tail: Poly,
    phi: Poly,
    psi: Poly,
    c: Complex64,
    normalization: Normalization,
    variant: (i64, Complex64),
    policy: TruncationPolicy,
    fit_residual: f64,
}

/// `Γ^f` for a parsed seed with the default policy.
pub fn build_gamma(spec: &FunctionSpec, normalization: Normalization) -> Result<GammaSolution> {
    build_gamma_with(Arc::new(spec.clone()), normalization, &TruncationPolicy::default())
}

pub fn build_gamma_with(
    seed: Arc<dyn SeedFunction>,
    normalization: Normalization,
    policy: &TruncationPolicy,
) -> Result<GammaSolution> {
    let div_f = seed.divisor();
    let gdiv = divisor::propagate(&div_f)?;
    let real = normalization == Normalization::RealAnalytic;
    if real && !seed.real_analytic() {
        return Err(Error::NormalizationIncompatible(format!(
            "seed {} is not real analytic",
            seed.describe()
        )));
    }
    // leading data at 0 decides the two normalizations anchored there
    let anchor = match normalization {
        Normalization::Value1 | Normalization::RealAnalytic => ZERO,
        Normalization::Residue0 => match seed.local(ZERO)? {
            (1, ln) => ln,
            (o, _) => {
                return Err(Error::NormalizationIncompatible(format!(
                    "residue normalization needs a simple zero of f at 0, found order {o}"
                )))
            }
        },
        Normalization::Value0 => match seed.local(ZERO)? {
            (0, ln) => ln,
            (o, _) => {
                return Err(Error::NormalizationIncompatible(format!(
                    "value at 0 needs f(0) finite and nonzero, found order {o}"
                )))
            }
        },
    };
    let genus = genus_for(&gdiv);
    let degree = genus + policy.extra_degree;
    let product = WeierstrassProduct::build(&gdiv, genus, degree + 1, policy.domain.reach(), policy)?;
    let fit = fit_correction(seed.as_ref(), &product, degree, real, policy)?;
    let psi = antidifference(&fit.phi);
    let tail = if real { product.tail().real_part() } else { product.tail().clone() };
    let mut sol = GammaSolution {
        seed,
        gdiv,
        product,
        tail,
        phi: fit.phi,
        psi,
        c: ZERO,
        normalization,
        variant: (0, ZERO),
        policy: *policy,
        fit_residual: fit.residual,
    };
    // Γ(1) = f(0)·Γ(0) fixes both anchors at 0
    let mut c = anchor - sol.ln_direct(ONE);
    if real {
        c = Complex64::new(c.re, 0.0);
    }
    sol.c = c;
    Ok(sol)
}

impl GammaSolution {
    pub fn seed(&self) -> &Arc<dyn SeedFunction> {
        &self.seed
    }

    /// Divisor of `Γ^f`.
    pub fn divisor(&self) -> &DivisorSpec {
        &self.gdiv
    }

    pub fn genus(&self) -> usize {
        self.product.genus()
    }

    pub fn product(&self) -> &WeierstrassProduct {
        &self.product
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn psi(&self) -> &Poly {
        &self.psi
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn variant(&self) -> (i64, Complex64) {
        self.variant
    }

    pub fn policy(&self) -> &TruncationPolicy {
        &self.policy
    }

    pub fn fit_residual(&self) -> f64 {
        self.fit_residual
    }

    /// `e^{2πias + b}·Γ`; the functional equation is unchanged.
    pub fn uniqueness_variant(&self, a: i64, b: Complex64) -> GammaSolution {
        let mut out = self.clone();
        out.variant = (self.variant.0 + a, self.variant.1 + b);
        out
    }

    /// Same solution with `ψ` replaced by `ψ + delta` and `φ` left alone. Breaks the
    /// functional equation unless `Δ delta = 0`; used as a negative control.
    pub fn with_psi_offset(&self, delta: &Poly) -> GammaSolution {
        let mut out = self.clone();
        out.psi = &self.psi + delta;
        out
    }

    fn variant_ln(&self, s: Complex64) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI * self.variant.0 as f64) * s + self.variant.1
    }

    /// Polynomial part of [`GammaSolution::ln_continuous`] on the fit domain:
    /// `-ψ + c + T_R + 2πias + b`. The remainder there is `log g_R`.
    pub fn log_poly(&self) -> Poly {
        let variant = Poly::new(vec![self.variant.1, Complex64::new(0.0, 2.0 * PI * self.variant.0 as f64)]);
        &(&(&(-&self.psi) + &Poly::constant(self.c)) + &variant) + &self.tail
    }

    /// `-ψ(s) + c + log g(s)` without the variant factor.
    fn ln_direct(&self, s: Complex64) -> Complex64 {
        -self.psi.eval(s) + self.c + self.product.ln_truncated(s) + self.tail.eval(s)
    }

    /// A branch of `log Γ` continuous on `Re s > 0`.
    pub fn ln_continuous(&self, s: Complex64) -> Result<Complex64> {
        if s.re <= 0.0 {
            return Err(Error::InvalidArgument(format!("{s} is outside the right half-plane")));
        }
        Ok(self.ln_base(s)? + self.variant_ln(s))
    }

    fn ln_base(&self, s: Complex64) -> Result<Complex64> {
        let dom = &self.policy.domain;
        if s.re < dom.re_min {
            let n = (dom.re_min - s.re).ceil() as usize;
            let mut acc = self.ln_direct(s + n as f64);
            for k in 0..n {
                acc -= self.seed.ln_value(s + k as f64)?;
            }
            Ok(acc)
        } else if s.re > dom.re_max {
            let n = (s.re - dom.re_max).ceil() as usize;
            let mut acc = self.ln_direct(s - n as f64);
            for k in 1..=n {
                acc += self.seed.ln_value(s - k as f64)?;
            }
            Ok(acc)
        } else {
            Ok(self.ln_direct(s))
        }
    }

    /// Order of `Γ` at `s` and the log of its leading coefficient there. Left of
    /// the fit domain the functional equation is applied backwards, and the local
    /// data of `f(s), …, f(s+n-1)` give exact limits at zeros, poles and removable
    /// points alike.
    pub fn local(&self, s: Complex64) -> Result<(i64, Complex64)> {
        if s.re > 0.0 {
            return Ok((0, self.ln_continuous(s)?));
        }
        let n = (self.policy.domain.re_min - s.re).ceil() as usize;
        let mut order = 0;
        let mut acc = self.ln_direct(s + n as f64);
        for k in 0..n {
            let (o, ln) = self.seed.local(s + k as f64)?;
            order -= o;
            acc -= ln;
        }
        Ok((order, acc + self.variant_ln(s)))
    }

    /// `log Γ(s)` on some branch; [`Error::Pole`] at poles.
    pub fn ln_eval(&self, s: Complex64) -> Result<Complex64> {
        match self.local(s)? {
            (0, ln) => Ok(ln),
            (o, _) if o < 0 => Err(Error::Pole { at: s, order: (-o) as u32 }),
            _ => Ok(Complex64::new(f64::NEG_INFINITY, 0.0)),
        }
    }

    /// `Γ(s)`.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let (order, ln) = self.local(s)?;
        value_from_local(s, order, ln)
    }
}
