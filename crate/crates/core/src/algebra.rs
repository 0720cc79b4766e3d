//! Polynomials with complex coefficients and the difference-equation solvers used
//! for correction terms.
//!
//! Two difference operators appear throughout the crate:
//!
//! * the unit difference `Δp(s) = p(s+1) - p(s)`, diagonalised by the falling
//!   factorials `s(s-1)…(s-k+1)`;
//! * the `ω`-difference `Δ_ω p(s) = p(s+ω) - p(s)`, diagonalised by the
//!   `ω`-descending factorials `s^{[k,ω]} = s(s-ω)…(s-(k-1)ω)`, with
//!   `Δ_ω s^{[k+1,ω]} = (k+1) ω s^{[k,ω]}`.
//!
//! Basis changes are done with exact coefficient recurrences (Stirling numbers and
//! the `B_{n,k}(ω)` triangle) rather than interpolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial in `s` with complex coefficients in ascending degree.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    #[serde(with = "crate::cjson::vec")]
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·s^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * s + c)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// `s ↦ p(λ s)`.
    pub fn compose_scale(&self, lambda: Complex64) -> Self {
        let mut pow = ONE;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let v = a * pow;
                pow *= lambda;
                v
            })
            .collect();
        Self::new(coeffs)
    }

    /// `s ↦ p(s + a)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, a: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let hi = c[j + 1];
                c[j] += a * hi;
            }
        }
        Self::new(c)
    }

    /// Unit forward difference `p(s+1) - p(s)`.
    pub fn difference(&self) -> Self {
        self.omega_difference(ONE)
    }

    /// `p(s+ω) - p(s)`.
    pub fn omega_difference(&self, omega: Complex64) -> Self {
        &self.shift(omega) - self
    }

    /// Real parts of the coefficients; used to symmetrise fits of real analytic data.
    pub fn real_part(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| Complex64::new(c.re, 0.0)).collect())
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            match k {
                0 => {}
                1 => write!(f, "*s")?,
                _ => write!(f, "*s^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `s(s-ω)…(s-(k-1)ω)`; the empty product for `k = 0`.
pub fn omega_descending(s: Complex64, k: usize, omega: Complex64) -> Complex64 {
    (0..k).fold(ONE, |acc, j| acc * (s - omega * j as f64))
}

/// Monomial coefficients of `s^{[k,ω]}`.
fn omega_descending_poly(k: usize, omega: Complex64) -> Poly {
    let mut c = vec![ONE];
    for j in 0..k {
        // multiply by (s - jω)
        let root = omega * j as f64;
        let mut next = vec![ZERO; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * root;
        }
        c = next;
    }
    Poly::new(c)
}

/// The unique `q` with `q(s+1) - q(s) = p(s)` and `q(0) = 0`.
pub fn antidifference(p: &Poly) -> Poly {
    triangular_antidifference(p, ONE)
}

/// Solves `Σ_{j>i} q_j C(j,i) ω^{j-i} = p_i` from the top degree down. Backward
/// stable, unlike the route through factorial bases whose Stirling-sized
/// intermediate coefficients cost several digits at degree 8.
fn triangular_antidifference(p: &Poly, omega: Complex64) -> Poly {
    let Some(n) = p.degree() else {
        return Poly::zero();
    };
    let mut pow = vec![ONE; n + 2];
    for k in 1..pow.len() {
        pow[k] = pow[k - 1] * omega;
    }
    let mut q = vec![ZERO; n + 2];
    for i in (0..=n).rev() {
        let mut rest = p.coeff(i);
        let mut binom = (i + 1) as f64; // C(j, i) for j = i + 1
        for j in i + 2..=n + 1 {
            binom = binom * j as f64 / (j - i) as f64;
            rest -= q[j] * binom * pow[j - i];
        }
        q[i + 1] = rest / (omega * (i + 1) as f64);
    }
    Poly::new(q)
}

/// Coefficients `B_{n,0..n}(ω)` with `s^n = Σ_k B_{n,k}(ω) s^{[k,ω]}`.
pub fn basis_change(n: usize, omega: Complex64) -> Result<Vec<Complex64>> {
    if omega == ZERO {
        return Err(Error::InvalidArgument("omega must be nonzero".into()));
    }
    Ok(basis_table(n, omega).swap_remove(n))
}

// s·s^{[k,ω]} = s^{[k+1,ω]} + kω·s^{[k,ω]}  ⇒  B_{n+1,k} = B_{n,k-1} + kω B_{n,k}
fn basis_table(max_n: usize, omega: Complex64) -> Vec<Vec<Complex64>> {
    let mut t: Vec<Vec<Complex64>> = Vec::with_capacity(max_n + 1);
    t.push(vec![ONE]);
    for n in 1..=max_n {
        let prev = &t[n - 1];
        let mut row = vec![ZERO; n + 1];
        for k in 0..=n {
            let left = if k >= 1 { prev[k - 1] } else { ZERO };
            let here = if k < prev.len() { prev[k] * omega * k as f64 } else { ZERO };
            row[k] = left + here;
        }
        t.push(row);
    }
    t
}

/// A polynomial written on the `ω`-descending factorial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaFactorialBasis {
    pub omega: Complex64,
    /// Coefficient of `s^{[k,ω]}` at index `k`.
    pub coeffs: Vec<Complex64>,
}

impl OmegaFactorialBasis {
    pub fn from_monomial(p: &Poly, omega: Complex64) -> Result<Self> {
        if omega == ZERO {
            return Err(Error::InvalidArgument("omega must be nonzero".into()));
        }
        let Some(n) = p.degree() else {
            return Ok(OmegaFactorialBasis { omega, coeffs: Vec::new() });
        };
        let table = basis_table(n, omega);
        let mut coeffs = vec![ZERO; n + 1];
        for (j, &c) in p.coeffs().iter().enumerate() {
            for (k, b) in table[j].iter().enumerate() {
                coeffs[k] += c * b;
            }
        }
        Ok(OmegaFactorialBasis { omega, coeffs })
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn to_monomial(&self) -> Poly {
        let mut out = Poly::zero();
        for (k, &c) in self.coeffs.iter().enumerate() {
            out = &out + &omega_descending_poly(k, self.omega).scale(c);
        }
        out
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * omega_descending(s, k, self.omega))
            .sum()
    }
}

/// The unique `q` with `q(s+ω) - q(s) = p(s)` and `q(0) = 0`.
pub fn omega_antidifference(p: &Poly, omega: Complex64) -> Result<Poly> {
    if omega == ZERO {
        return Err(Error::InvalidArgument("omega must be nonzero".into()));
    }
    Ok(triangular_antidifference(p, omega))
}

/// The same solution through the `ω`-descending basis, where `Δ_ω s^{[k+1,ω]} =
/// (k+1)ω s^{[k,ω]}`. Exact in exact arithmetic, less accurate in floating point.
pub fn omega_antidifference_factorial(p: &Poly, omega: Complex64) -> Result<Poly> {
    let basis = OmegaFactorialBasis::from_monomial(p, omega)?;
    let mut lifted = vec![ZERO; basis.coeffs.len() + 1];
    for (k, &c) in basis.coeffs.iter().enumerate() {
        lifted[k + 1] = c / (omega * (k + 1) as f64);
    }
    Ok(OmegaFactorialBasis { omega, coeffs: lifted }.to_monomial())
}

/// All levels `Q_0..Q_N` of the chain `Δ_{ω_{n+1}} Q_{n+1} = Q_n`, `Q_n(0) = a_n`.
pub fn solution_family_levels(seeds: &[i64], omegas: &[Complex64]) -> Result<Vec<Poly>> {
    let Some((&a0, rest)) = seeds.split_first() else {
        return Err(Error::InvalidArgument("solution family needs at least one seed".into()));
    };
    if rest.len() != omegas.len() {
        return Err(Error::InvalidArgument(format!(
            "expected {} step parameters for {} seeds, got {}",
            seeds.len() - 1,
            seeds.len(),
            omegas.len()
        )));
    }
    let mut levels = vec![Poly::constant(Complex64::new(a0 as f64, 0.0))];
    for (&a, &w) in rest.iter().zip(omegas) {
        let prev = levels.last().expect("nonempty");
        let next = &omega_antidifference(prev, w)? + &Poly::constant(Complex64::new(a as f64, 0.0));
        levels.push(next);
    }
    Ok(levels)
}

/// The top level `Q_N` of [`solution_family_levels`].
pub fn solution_family(seeds: &[i64], omegas: &[Complex64]) -> Result<Poly> {
    let mut levels = solution_family_levels(seeds, omegas)?;
    Ok(levels.pop().expect("at least one level"))
}
