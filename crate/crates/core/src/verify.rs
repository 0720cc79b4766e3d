//! Residual suites over the constructions, with CSV output.
//!
//! A [`Check`] records the worst residual over its points; it passes when that
//! residual is below the tolerance. Every suite carries negative controls, checks
//! run on deliberately corrupted solutions: a report is good when all ordinary
//! checks pass and all controls fail.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::Poly;
use crate::closed_forms::{euler_gamma_oracle, gamma_omega, mellin_solve, q_gamma, OmegaGammaFlavor};
use crate::divisor::{self, DivisorSpec};
use crate::error::{Error, Result};
use crate::funcspec::FunctionSpec;
use crate::gamma::{build_gamma, GammaSolution, Normalization};
use crate::hierarchy::{
    complex_family, complex_hierarchy, hierarchy_divisors, higher_gamma, multiple_gamma, multiple_gamma_from_seed,
    reciprocal_seed, vigneras_convert, HierarchyLevel,
};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Grid points closer than this to a zero or pole are dropped.
pub const EXCLUSION_RADIUS: f64 = 0.05;

pub const FE_TOL: f64 = 1e-9;
pub const MORPHISM_TOL: f64 = 1e-8;
pub const LADDER_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-8;

/// Corruption used by the negative controls: `ψ ↦ ψ + 0.01·s`.
const CORRUPTION: f64 = 0.01;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn f(text: &str) -> FunctionSpec {
    text.parse().expect("built-in seed parses")
}

/// `|a - b| / |a|`, falling back to `|b|` when `a` vanishes.
fn rel(a: Complex64, b: Complex64) -> f64 {
    let scale = if a.norm() > 0.0 { a.norm() } else { b.norm() };
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Evaluation points for residual checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub points: Vec<Complex64>,
    pub description: String,
}

impl Grid {
    /// `Re s = 0.1 + 0.7i`, `Im s = -5 + 0.7j`, `0 ≤ i, j < 14`.
    pub fn standard() -> Grid {
        let points = (0..14)
            .flat_map(|i| (0..14).map(move |j| c(0.1 + 0.7 * i as f64, -5.0 + 0.7 * j as f64)))
            .collect();
        Grid { points, description: "standard: Re 0.1+0.7i, Im -5+0.7j, i,j<14".into() }
    }

    pub fn from_points(points: Vec<Complex64>, description: &str) -> Grid {
        Grid { points, description: description.into() }
    }

    /// Drops every `s` with `s + shift` within [`EXCLUSION_RADIUS`] of `div` for
    /// some shift.
    pub fn avoiding(&self, div: &DivisorSpec, shifts: &[Complex64]) -> Grid {
        let reach = self.points.iter().map(|s| s.norm()).fold(0.0, f64::max)
            + shifts.iter().map(|s| s.norm()).fold(0.0, f64::max)
            + 1.0;
        let elems: Vec<Complex64> = divisor::enumerate(div, reach).into_iter().map(|(rho, _)| rho).collect();
        let points = self
            .points
            .iter()
            .copied()
            .filter(|&s| {
                shifts.iter().all(|&h| elems.iter().all(|&rho| (s + h - rho).norm() >= EXCLUSION_RADIUS))
            })
            .collect();
        Grid { points, description: self.description.clone() }
    }

    /// Drops every `s` within [`EXCLUSION_RADIUS`] of `ρ - n` for an integer `n`.
    fn avoiding_lattices(&self, bases: &[Complex64]) -> Grid {
        let points = self
            .points
            .iter()
            .copied()
            .filter(|&s| {
                bases.iter().all(|&rho| {
                    let d = s - rho;
                    let frac = d.re - d.re.round();
                    c(frac, d.im).norm() >= EXCLUSION_RADIUS
                })
            })
            .collect();
        Grid { points, description: self.description.clone() }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub s: Complex64,
    pub value: Complex64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Run on a corrupted solution; expected to fail.
    pub negative_control: bool,
    pub rows: Vec<Row>,
}

impl Check {
    fn from_rows(name: impl Into<String>, tolerance: f64, rows: Vec<Row>) -> Check {
        // NaN residuals (failed evaluations) poison the maximum
        let max_residual = rows
            .iter()
            .map(|r| r.residual)
            .fold(0.0, |m: f64, r| if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(r) });
        Check::with_max(name, tolerance, max_residual, rows)
    }

    fn with_max(name: impl Into<String>, tolerance: f64, max_residual: f64, rows: Vec<Row>) -> Check {
        Check { name: name.into(), max_residual, tolerance, pass: max_residual < tolerance, negative_control: false, rows }
    }

    fn control(mut self) -> Check {
        self.negative_control = true;
        self
    }

    /// Passing for an ordinary check, failing for a control.
    pub fn as_expected(&self) -> bool {
        self.pass != self.negative_control
    }
}

/// Evaluates `eval` at every point in parallel; an evaluation error is recorded as
/// a NaN residual.
fn grid_check<F>(name: impl Into<String>, tolerance: f64, points: &[Complex64], eval: F) -> Check
where
    F: Fn(Complex64) -> Result<(Complex64, f64)> + Sync,
{
    let rows: Vec<Row> = points
        .par_iter()
        .map(|&s| match eval(s) {
            Ok((value, residual)) => Row { s, value, residual },
            Err(_) => Row { s, value: c(f64::NAN, f64::NAN), residual: f64::NAN },
        })
        .collect();
    Check::from_rows(name, tolerance, rows)
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub grid: String,
    pub runtime_secs: f64,
    /// Set when a check ran on an empty grid.
    pub warning: Option<String>,
}

impl VerificationReport {
    fn new(suite: &str, grid: &str) -> Self {
        VerificationReport { suite: suite.into(), checks: Vec::new(), grid: grid.into(), runtime_secs: 0.0, warning: None }
    }

    fn push(&mut self, check: Check) {
        if check.rows.is_empty() && self.warning.is_none() {
            self.warning = Some(format!("{}: no evaluation points", check.name));
        }
        self.checks.push(check);
    }

    fn absorb(&mut self, other: VerificationReport) {
        if self.warning.is_none() {
            self.warning = other.warning;
        }
        self.checks.extend(other.checks);
    }

    /// All ordinary checks pass and all controls fail.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::as_expected)
    }

    /// Ordinary checks only.
    pub fn checks_pass(&self) -> bool {
        self.checks.iter().filter(|c| !c.negative_control).all(|c| c.pass)
    }

    pub fn controls(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.negative_control)
    }

    /// Report restricted to the negative controls.
    pub fn controls_only(&self) -> VerificationReport {
        VerificationReport { checks: self.controls().cloned().collect(), ..self.clone() }
    }

    /// CSV body without header, rows sorted by check and point.
    pub fn csv_rows(&self) -> Vec<String> {
        let mut rows: Vec<(&str, &Row)> =
            self.checks.iter().flat_map(|ch| ch.rows.iter().map(move |r| (ch.name.as_str(), r))).collect();
        rows.sort_by(|a, b| {
            a.0.cmp(b.0)
                .then(a.1.s.re.total_cmp(&b.1.s.re))
                .then(a.1.s.im.total_cmp(&b.1.s.im))
                .then(a.1.residual.total_cmp(&b.1.residual))
        });
        rows.into_iter()
            .map(|(name, r)| {
                format!(
                    "{},{},{:e},{:e},{:e},{:e},{:e}",
                    self.suite, name, r.s.re, r.s.im, r.value.re, r.value.im, r.residual
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,s_re,s_im,value_re,value_im,residual\n");
        for line in self.csv_rows() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ch in &self.checks {
            let verdict = match (ch.pass, ch.negative_control) {
                (true, false) => "PASS",
                (false, false) => "FAIL",
                (false, true) => "PASS (control failed as expected)",
                (true, true) => "FAIL (control passed)",
            };
            writeln!(
                out,
                "{verdict:<34} {:<9} {:<40} max={:.3e} tol={:.1e} n={}",
                self.suite,
                ch.name,
                ch.max_residual,
                ch.tolerance,
                ch.rows.len()
            )?;
        }
        if let Some(w) = &self.warning {
            writeln!(out, "warning: {w}")?;
        }
        write!(out, "{}: {} in {:.1}s", self.suite, if self.ok() { "ok" } else { "FAILED" }, self.runtime_secs)
    }
}

/// `|Γ(s+1) - f(s)Γ(s)| / |Γ(s+1)|` over the grid, which is first cleared of the
/// divisor of `Γ` at `s` and `s + 1`.
pub fn check_functional_equation(name: &str, sol: &GammaSolution, grid: &Grid, tol: f64) -> VerificationReport {
    let grid = grid.avoiding(sol.divisor(), &[Complex64::new(0.0, 0.0), ONE]);
    let mut report = VerificationReport::new("functional_equation", &grid.description);
    report.push(grid_check(name, tol, &grid.points, |s| {
        let g = sol.eval(s)?;
        let lhs = sol.eval(s + 1.0)?;
        Ok((g, rel(lhs, sol.seed().eval(s)? * g)))
    }));
    report
}

/// `|G_N(s+ω_N) G_{N-1}(s) - G_N(s)| / |G_N(s)|`, with `G_N(s)` multiplied by
/// `e^{-corruption·s}` in both places.
fn ladder_check(name: &str, level: &HierarchyLevel, grid: &Grid, tol: f64, corruption: f64) -> Result<Check> {
    let parent = level.parent().ok_or_else(|| Error::InvalidArgument("level 0 has no ladder".into()))?;
    let omega = *level.omegas().last().expect("level ≥ 1");
    let zero = Complex64::new(0.0, 0.0);
    let grid = grid.avoiding(&level.divisor()?, &[zero, omega]).avoiding(&parent.divisor()?, &[zero]);
    let g = |s: Complex64| -> Result<Complex64> { Ok(level.eval(s)? * (-corruption * s).exp()) };
    Ok(grid_check(name, tol, &grid.points, |s| {
        let v = g(s)?;
        Ok((v, rel(v, g(s + omega)? * parent.eval(s)?)))
    }))
}

/// Ladder residuals of every level `1..=N` of a hierarchy.
pub fn check_ladder(level: &std::sync::Arc<HierarchyLevel>, grid: &Grid, tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("ladder", &grid.description);
    for n in 1..=level.n() {
        let lvl = level.level(n).expect("ancestor");
        report.push(ladder_check(&format!("ladder_level{n}"), &lvl, grid, tol, 0.0)?);
    }
    Ok(report)
}

fn normalized(spec: &FunctionSpec) -> Result<()> {
    let v = spec.eval(ONE)?;
    if (v - ONE).norm() >= 1e-12 {
        return Err(Error::InvalidArgument(format!("{spec} does not satisfy f(1) = 1")));
    }
    Ok(())
}

/// `|Γ^{fg} - Γ^f Γ^g| / |Γ^{fg}|` over the grid.
pub fn check_morphism(fs: &FunctionSpec, gs: &FunctionSpec, grid: &Grid) -> Result<VerificationReport> {
    normalized(fs)?;
    normalized(gs)?;
    let fg = fs.product(gs);
    let (a, b, ab) = (
        build_gamma(fs, Normalization::Value1)?,
        build_gamma(gs, Normalization::Value1)?,
        build_gamma(&fg, Normalization::Value1)?,
    );
    let zero = Complex64::new(0.0, 0.0);
    let grid = grid.avoiding(a.divisor(), &[zero]).avoiding(b.divisor(), &[zero]).avoiding(ab.divisor(), &[zero]);
    let mut report = VerificationReport::new("morphism", &grid.description);
    report.push(grid_check(format!("morphism[{fs}|{gs}]"), MORPHISM_TOL, &grid.points, |s| {
        let v = ab.eval(s)?;
        Ok((v, rel(v, a.eval(s)? * b.eval(s)?)))
    }));
    Ok(report)
}

/// Named suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Euler,
    Qgamma,
    Mellin,
    Barnes,
    Multiple,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 5] = [Suite::Euler, Suite::Qgamma, Suite::Mellin, Suite::Barnes, Suite::Multiple];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Euler => "euler",
            Suite::Qgamma => "qgamma",
            Suite::Mellin => "mellin",
            Suite::Barnes => "barnes",
            Suite::Multiple => "multiple",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(text: &str) -> Result<Suite> {
        Suite::SINGLE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|s| s.name() == text)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{text}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    /// Tolerance of the functional equation checks.
    pub fe_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { fe_tol: FE_TOL }
    }
}

/// Runs a suite and, if `out` is given, writes its CSV.
pub fn run_suite(suite: Suite, config: &SuiteConfig, out: Option<&Path>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = match suite {
        Suite::Euler => euler_suite(config)?,
        Suite::Qgamma => qgamma_suite(config)?,
        Suite::Mellin => mellin_suite(config)?,
        Suite::Barnes => barnes_suite(config)?,
        Suite::Multiple => multiple_suite(config)?,
        Suite::All => {
            let mut all = VerificationReport::new("all", &Grid::standard().description);
            for s in Suite::SINGLE {
                let r = run_suite(s, config, None)?;
                // keep the originating suite in the check name
                for mut ch in r.checks {
                    ch.name = format!("{}/{}", s.name(), ch.name);
                    all.push(ch);
                }
            }
            all
        }
    };
    report.runtime_secs = start.elapsed().as_secs_f64();
    if let Some(path) = out {
        report.write_csv(path)?;
    }
    Ok(report)
}

fn fe_into(report: &mut VerificationReport, name: &str, sol: &GammaSolution, grid: &Grid, tol: f64) {
    let r = check_functional_equation(name, sol, grid, tol);
    report.absorb(r);
}

fn corrupted(sol: &GammaSolution) -> GammaSolution {
    sol.with_psi_offset(&Poly::monomial(c(CORRUPTION, 0.0), 1))
}

/// Real points `0.5, 0.75, …, 10` and 20 complex points with `|s| ≤ 10`.
pub fn oracle_points() -> (Vec<Complex64>, Vec<Complex64>) {
    let real = (0..=38).map(|k| c(0.5 + 0.25 * k as f64, 0.0)).collect();
    let complex = (0..20)
        .map(|k| {
            let r = 1.5 + 8.0 * k as f64 / 19.0;
            let theta = -2.6 + 5.2 * k as f64 / 19.0 + 0.05;
            Complex64::from_polar(r, theta)
        })
        .collect();
    (real, complex)
}

fn euler_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let grid = Grid::standard();
    let mut report = VerificationReport::new("euler", &grid.description);
    let sol = build_gamma(&f("(s-0)"), Normalization::Value1)?;
    fe_into(&mut report, "functional_equation", &sol, &grid, config.fe_tol);

    let oracle = |s: Complex64| -> Result<(Complex64, f64)> {
        let v = sol.eval(s)?;
        Ok((v, rel(euler_gamma_oracle(s)?, v)))
    };
    let (real, complex) = oracle_points();
    report.push(grid_check("oracle_real", ORACLE_TOL, &real, oracle));
    report.push(grid_check("oracle_complex", ORACLE_TOL, &complex, oracle));
    report.push(grid_check("oracle_grid", ORACLE_TOL, &grid.points, oracle));

    for (a, b) in [(3, 0.0), (1, 0.0), (-2, 0.0), (0, 2f64.ln())] {
        let v = sol.uniqueness_variant(a, c(b, 0.0));
        fe_into(&mut report, &format!("variant_a{a}_b{b:.4}_functional_equation"), &v, &grid, config.fe_tol);
        if b == 0.0 {
            let ints: Vec<Complex64> = (0..10).map(|k| c(1.0 + k as f64, 0.0)).collect();
            report.push(grid_check(format!("variant_a{a}_integer_points"), 1e-10, &ints, |s| {
                let w = v.eval(s)?;
                Ok((w, rel(sol.eval(s)?, w)))
            }));
        }
    }

    for (fs, gs) in [("(s-0)", "(s+1)/const(2)"), ("exp(s^2-s)", "exp(s^2-s)"), ("(s-0)", "const(1)")] {
        report.absorb(check_morphism(&f(fs), &f(gs), &grid)?);
    }

    let bad = corrupted(&sol);
    report.push(check_functional_equation("corrupted_psi", &bad, &grid, config.fe_tol).checks.remove(0).control());
    Ok(report)
}

fn q_limit_check(s: f64) -> Result<Check> {
    let exact = euler_gamma_oracle(c(s, 0.0))?;
    let mut rows = Vec::new();
    let mut errs = Vec::new();
    for q in [0.9, 0.99, 0.999] {
        let v = q_gamma(q, c(s, 0.0))?;
        let e = (v - exact).norm();
        errs.push(e);
        rows.push(Row { s: c(s, 0.0), value: v, residual: e });
    }
    // strictly decreasing ⇔ every successive ratio < 1
    let worst = errs.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    Ok(Check::with_max("q_limit_monotone", 1.0, worst, rows))
}

fn qgamma_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let grid = Grid::standard();
    let mut report = VerificationReport::new("qgamma", &grid.description);
    for q in [0.3, 0.5, 0.9] {
        report.push(grid_check(format!("closed_form_functional_equation_q{q}"), 1e-10, &grid.points, |s| {
            let g = q_gamma(q, s)?;
            let factor = (1.0 - (s * f64::ln(q)).exp()) / (1.0 - q);
            Ok((g, rel(q_gamma(q, s + 1.0)?, factor * g)))
        }));
    }
    report.push(q_limit_check(2.5)?);

    let mut base = None;
    for q in [0.5, 0.9] {
        let h = higher_gamma(&f(&format!("qfac({q})")), 1)?;
        let sol = h.solution().expect("level 1").clone();
        fe_into(&mut report, &format!("functional_equation_q{q}"), &sol, &grid, config.fe_tol);
        let pts = grid.avoiding(&h.divisor()?, &[Complex64::new(0.0, 0.0)]);
        report.push(grid_check(format!("nishizawa_level1_q{q}"), ORACLE_TOL, &pts.points, |s| {
            let v = h.eval(s)?;
            Ok((v, rel(q_gamma(q, s)?, v)))
        }));
        base.get_or_insert(sol);
    }
    let bad = corrupted(base.as_ref().expect("built"));
    report.push(check_functional_equation("corrupted_psi", &bad, &grid, config.fe_tol).checks.remove(0).control());
    Ok(report)
}

fn mellin_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let grid = Grid::standard();
    let mut report = VerificationReport::new("mellin", &grid.description);
    for text in ["(s-0)/(s+1)", "(s-0.5)", "(s-1+1i)*(s+0.5)/(s+2)^2", "const(2)*(s+3)/(s-2.5-0.5i)"] {
        let spec = f(text);
        let bases: Vec<Complex64> = spec.divisor_of().points().iter().map(|p| p.rho).collect();
        let pts = grid.avoiding_lattices(&bases);
        for k in [0, 1] {
            let m = mellin_solve(&spec, k)?;
            report.push(grid_check(format!("closed_form[{text}]_k{k}"), 1e-10, &pts.points, |s| {
                let v = m.eval(s)?;
                Ok((v, rel(m.eval(s + 1.0)?, m.ratio(s)? * v)))
            }));
        }
    }
    // the constructed solution against the closed form, for left located seeds
    let mut base = None;
    for text in ["(s-0)/(s+1)", "const(2)*(s+0.5)/(s+1)^2", "(s+1-2i)*(s+1+2i)/(s+3)^2"] {
        let spec = f(text);
        let sol = build_gamma(&spec, Normalization::Value1)?;
        let m = mellin_solve(&spec, 0)?;
        let bases: Vec<Complex64> = spec.divisor_of().points().iter().map(|p| p.rho).collect();
        let pts = grid.avoiding_lattices(&bases);
        report.push(grid_check(format!("construction_vs_closed_form[{text}]"), ORACLE_TOL, &pts.points, |s| {
            let v = sol.eval(s)?;
            Ok((v, rel(m.eval_normalized(s)?, v)))
        }));
        fe_into(&mut report, &format!("functional_equation[{text}]"), &sol, &grid, config.fe_tol);
        base.get_or_insert(sol);
    }
    let bad = corrupted(base.as_ref().expect("built"));
    report.push(check_functional_equation("corrupted_psi", &bad, &grid, config.fe_tol).checks.remove(0).control());
    Ok(report)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `-mult(Γ_N, -n) = C(n+N-1, N-1)` for `n ≤ 100`, `N ≤ 5`, one check per `N`.
pub fn divisor_binomial_checks() -> Result<Vec<Check>> {
    let divs = hierarchy_divisors(&f("(s-0)"), &[1.0; 5])?;
    Ok(divs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(big_n, d)| {
            let table: std::collections::HashMap<i64, i64> = divisor::enumerate(d, 100.5)
                .into_iter()
                .filter(|(rho, _)| rho.im.abs() < 1e-9 && (rho.re - rho.re.round()).abs() < 1e-9)
                .map(|(rho, m)| (rho.re.round() as i64, m))
                .collect();
            let rows = (0..=100u64)
                .map(|n| {
                    let m = table.get(&-(n as i64)).copied().unwrap_or(0);
                    let expect = binomial(n + big_n as u64 - 1, big_n as u64 - 1) as i64;
                    Row { s: c(-(n as f64), 0.0), value: c(m as f64, 0.0), residual: (-m - expect).abs() as f64 }
                })
                .collect();
            // integer equality
            Check::from_rows(format!("divisor_binomial_N{big_n}"), 0.5, rows)
        })
        .collect())
}

fn barnes_suite(_config: &SuiteConfig) -> Result<VerificationReport> {
    let grid = Grid::standard();
    let mut report = VerificationReport::new("barnes", &grid.description);
    for ch in divisor_binomial_checks()? {
        report.push(ch);
    }
    let h = higher_gamma(&f("(s-0)"), 3)?;
    report.absorb(check_ladder(&h, &grid, LADDER_TOL)?);

    let four = c(4.0, 0.0);
    let g2 = h.level(2).expect("level 2");
    let values = [
        ("gamma1_at_4", h.level(1).expect("level 1").eval(four)?, c(6.0, 0.0)),
        ("gamma2_at_4", g2.eval(four)?, c(0.5, 0.0)),
        ("vigneras_g2_at_4", vigneras_convert(&g2).eval(four)?, c(2.0, 0.0)),
    ];
    for (name, v, expect) in values {
        report.push(Check::from_rows(name, 1e-9, vec![Row { s: four, value: v, residual: rel(expect, v) }]));
    }
    report.push(ladder_check("corrupted_ladder_level2", &g2, &grid, LADDER_TOL, CORRUPTION)?.control());
    Ok(report)
}

fn multiple_suite(_config: &SuiteConfig) -> Result<VerificationReport> {
    let grid = Grid::standard();
    let mut report = VerificationReport::new("multiple", &grid.description);
    let s_seed = f("(s-0)");

    for w in [0.5, 2.0] {
        let h = multiple_gamma(&s_seed, &[w])?;
        let pts = grid.avoiding(&h.divisor()?, &[Complex64::new(0.0, 0.0)]);
        report.push(grid_check(format!("closed_form_omega{w}"), ORACLE_TOL, &pts.points, |s| {
            let v = h.eval(s)?;
            Ok((v, rel(gamma_omega(s, c(w, 0.0), OmegaGammaFlavor::Norm1)?, v)))
        }));
    }

    for w in [0.5, 1.0, std::f64::consts::PI] {
        let om = c(w, 0.0);
        let at_omega = gamma_omega(om, om, OmegaGammaFlavor::Barnes)?;
        report.push(Check::from_rows(
            format!("barnes_at_omega_w{w:.4}"),
            ORACLE_TOL,
            vec![Row { s: om, value: at_omega, residual: rel(ONE, at_omega) }],
        ));
        let eps = c(1e-10, 0.0);
        let res = eps * gamma_omega(eps, om, OmegaGammaFlavor::Barnes)?;
        report.push(Check::from_rows(
            format!("barnes_residue_w{w:.4}"),
            ORACLE_TOL,
            vec![Row { s: eps, value: res, residual: rel(ONE, res) }],
        ));
        report.push(grid_check(format!("flavor_relation_w{w:.4}"), 1e-12, &grid.points, |s| {
            let b = gamma_omega(s, om, OmegaGammaFlavor::Barnes)?;
            let sh = gamma_omega(s, om, OmegaGammaFlavor::Shintani)?;
            Ok((b, rel(b, (2.0 * std::f64::consts::PI / w).sqrt() * sh)))
        }));
    }
    report.push(grid_check("shintani_step1", ORACLE_TOL, &grid.points, |s| {
        let v = gamma_omega(s, ONE, OmegaGammaFlavor::Shintani)?;
        Ok((v, rel(euler_gamma_oracle(s)? / (2.0 * std::f64::consts::PI).sqrt(), v)))
    }));

    let h12 = multiple_gamma(&s_seed, &[1.0, 2.0])?;
    let h21 = multiple_gamma(&s_seed, &[2.0, 1.0])?;
    let sym_pts = [c(0.7, 0.0), c(1.9, 0.0), c(3.3, 0.0)];
    report.push(grid_check("symmetry_1_2", 1e-6, &sym_pts, |s| {
        let v = h12.eval(s)?;
        Ok((v, rel(v, h21.eval(s)?)))
    }));
    report.push(grid_check("symmetry_1_2_grid", 1e-6, &grid.points, |s| {
        let v = h12.eval(s)?;
        Ok((v, rel(v, h21.eval(s)?)))
    }));
    report.push(symmetry_defect_check(&h12, &h21, &grid)?);
    report.absorb(check_ladder(&h12, &grid, LADDER_TOL)?);

    // rebuilding from 1/G_1 with the remaining step reproduces level 2
    let g1 = h12.level(1).expect("level 1");
    let shifted = multiple_gamma_from_seed(reciprocal_seed(&g1, 1.0), &[2.0], &Default::default())?;
    report.push(grid_check("hierarchy_shift", 1e-7, &grid.points, |s| {
        let v = h12.eval(s)?;
        Ok((v, rel(v, shifted.eval(s)?)))
    }));

    report.push(family_check("family_invariance_1_2", &h12, &[3, -1, 2])?);
    let hc = complex_hierarchy(&s_seed, &[c(1.0, 1.0)])?;
    report.push(family_check("family_invariance_1+i", &hc, &[2, -1])?);

    report.push(ladder_check("corrupted_ladder_level2", &h12, &grid, LADDER_TOL, CORRUPTION)?.control());
    Ok(report)
}

/// `κ = ln k(ω₁)/ω₂ - ln k(ω₂)/ω₁` with `k(ω) = Γ(1|ω)` in the Shintani flavor.
///
/// The symmetric double Gamma `S` obeys `S(s+ω_j) = S(s)/Γ(s|ω_i)`. Normalizing
/// every level to 1 at `s = 1` turns it into `S·e^{αs+β}` with `α = ln k(ω₁)/ω₂` for
/// the order `(ω₁, ω₂)`, so the two orders differ by `e^{κ(s-1)}`.
pub fn symmetry_defect(omega1: f64, omega2: f64) -> Result<f64> {
    let k = |w: f64| -> Result<f64> { Ok(gamma_omega(ONE, c(w, 0.0), OmegaGammaFlavor::Shintani)?.re.ln()) };
    Ok(k(omega1)? / omega2 - k(omega2)? / omega1)
}

/// `Γ(s|ω₁,ω₂) / Γ(s|ω₂,ω₁)` against `e^{κ(s-1)}`.
fn symmetry_defect_check(
    h12: &std::sync::Arc<HierarchyLevel>,
    h21: &std::sync::Arc<HierarchyLevel>,
    grid: &Grid,
) -> Result<Check> {
    let w = h12.omegas();
    let kappa = symmetry_defect(w[0].re, w[1].re)?;
    Ok(grid_check("symmetry_defect_law", 1e-8, &grid.points, |s| {
        let ratio = h12.eval(s)? / h21.eval(s)?;
        Ok((ratio, rel((kappa * (s - 1.0)).exp(), ratio)))
    }))
}

/// Members of the complex family against the base level at `1 + kω_n`.
fn family_check(name: &str, level: &std::sync::Arc<HierarchyLevel>, seeds: &[i64]) -> Result<Check> {
    let members = complex_family(level, seeds)?;
    let mut rows = Vec::new();
    for m in members.iter().skip(1) {
        let omega = *m.level.omegas().last().expect("level ≥ 1");
        for k in 0..5 {
            let s = ONE + omega * k as f64;
            let v = m.eval(s)?;
            rows.push(Row { s, value: v, residual: rel(m.level.eval(s)?, v) });
        }
    }
    Ok(Check::from_rows(name, 1e-10, rows))
}
