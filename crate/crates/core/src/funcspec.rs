//! Seed functions `f` as finite products of four atom kinds, with a text grammar,
//! a printer that round-trips through the parser, and exact divisors.
//!
//! ```text
//! expr  := atom (('*' | '/') atom)*
//! atom  := '(s' ('-' | '+') cnum ')' ['^' int]
//!        | 'const(' cnum ')'
//!        | 'exp(' poly ')'
//!        | 'qfac(' real ')'
//! cnum  := real | real 'i' | real ('+' | '-') ureal 'i'
//! poly  := ['+' | '-'] term (('+' | '-') term)*
//! term  := coef ['*' 's' ['^' uint]] | 's' ['^' uint]
//! coef  := ureal | ureal 'i' | '(' cnum ')'
//! ```
//!
//! Dividing by an atom inverts its multiplicity. Specs are kept in a canonical
//! form (constants multiplied together, exponents summed, equal linear factors
//! merged) so that `parse(print(parse(x))) == parse(x)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Poly;
use crate::divisor::{DivisorPoint, DivisorSpec, Generator};
use crate::error::{Error, Result};
use crate::gamma::SeedFunction;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Positions closer than this to a zero or pole of an atom are treated as on it.
const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Atom {
    /// `(s - α)^m`
    Linear {
        #[serde(with = "crate::cjson")]
        alpha: Complex64,
        m: i64,
    },
    /// Nonzero constant `a`.
    Const {
        #[serde(with = "crate::cjson")]
        a: Complex64,
    },
    /// `exp(p(s))`
    Exp { p: Poly },
    /// `((1 - q^s)/(1 - q))^m` with real `0 < q < 1`.
    Qfac {
        q: f64,
        #[serde(default = "one_i64")]
        m: i64,
    },
}

fn one_i64() -> i64 {
    1
}

impl Atom {
    fn rank(&self) -> u8 {
        match self {
            Atom::Const { .. } => 0,
            Atom::Exp { .. } => 1,
            Atom::Linear { .. } => 2,
            Atom::Qfac { .. } => 3,
        }
    }

    fn inverted(&self) -> Atom {
        match self {
            Atom::Linear { alpha, m } => Atom::Linear { alpha: *alpha, m: -m },
            Atom::Const { a } => Atom::Const { a: ONE / a },
            Atom::Exp { p } => Atom::Exp { p: -p },
            Atom::Qfac { q, m } => Atom::Qfac { q: *q, m: -m },
        }
    }

    /// Order of vanishing at `s` and the principal log of the leading coefficient
    /// of the local expansion `c·(s - s₀)^order`; for a regular point `(0, ln value)`.
    fn local_ln(&self, s: Complex64) -> (i64, Complex64) {
        match *self {
            Atom::Linear { alpha, m } => {
                if (s - alpha).norm() <= SINGULAR_TOL {
                    (m, ZERO)
                } else {
                    (0, (s - alpha).ln() * m as f64)
                }
            }
            Atom::Const { a } => (0, a.ln()),
            Atom::Exp { ref p } => (0, p.eval(s)),
            Atom::Qfac { q, m } => {
                let lq = q.ln();
                // zeros at 2πik / ln q
                let k = (s.im * lq / (2.0 * PI)).round();
                let s0 = Complex64::new(0.0, 2.0 * PI * k / lq);
                if (s - s0).norm() <= SINGULAR_TOL {
                    (m, Complex64::new(-lq / (1.0 - q), 0.0).ln() * m as f64)
                } else {
                    (0, qfac_value(q, s).ln() * m as f64)
                }
            }
        }
    }
}

fn qfac_value(q: f64, s: Complex64) -> Complex64 {
    (ONE - (s * q.ln()).exp()) / (1.0 - q)
}

/// A seed function: the product of its atoms.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    atoms: Vec<Atom>,
}

impl FunctionSpec {
    /// Canonicalises and validates a list of atoms.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            match a {
                Atom::Const { a } if *a == ZERO || !a.re.is_finite() || !a.im.is_finite() => {
                    return Err(Error::InvalidArgument("constant must be finite and nonzero".into()));
                }
                Atom::Qfac { q, .. } if !(*q > 0.0 && *q < 1.0) => {
                    return Err(Error::InvalidArgument(format!("q = {q} is outside (0, 1)")));
                }
                _ => {}
            }
        }
        Ok(FunctionSpec { atoms: canonical(atoms) })
    }

    /// The constant function 1.
    pub fn one() -> Self {
        FunctionSpec::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn product(&self, other: &FunctionSpec) -> FunctionSpec {
        FunctionSpec { atoms: canonical(self.atoms.iter().chain(&other.atoms).cloned().collect()) }
    }

    pub fn inverse(&self) -> FunctionSpec {
        FunctionSpec { atoms: canonical(self.atoms.iter().map(Atom::inverted).collect()) }
    }

    /// `f(s)`, with poles reported as [`Error::Pole`] and removable points resolved
    /// by the local expansions of the atoms.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let (order, ln) = self.local(s);
        value_from_local(s, order, ln)
    }

    /// Order of `f` at `s` and the log of the leading coefficient there.
    pub fn local(&self, s: Complex64) -> (i64, Complex64) {
        self.atoms.iter().map(|a| a.local_ln(s)).fold((0, ZERO), |(o, l), (p, m)| (o + p, l + m))
    }

    /// The seed `t ↦ f(ωt)`, written with atoms in `t`. A q-factor needs real `ω > 0`.
    pub fn rescaled(&self, omega: Complex64) -> Result<FunctionSpec> {
        if omega == ZERO {
            return Err(Error::InvalidArgument("scale must be nonzero".into()));
        }
        let mut atoms = Vec::with_capacity(self.atoms.len() + 1);
        for a in &self.atoms {
            match *a {
                Atom::Linear { alpha, m } => {
                    // (ωt - α)^m = ω^m (t - α/ω)^m
                    atoms.push(Atom::Const { a: omega.powi(m as i32) });
                    atoms.push(Atom::Linear { alpha: alpha / omega, m });
                }
                Atom::Const { a } => atoms.push(Atom::Const { a }),
                Atom::Exp { ref p } => atoms.push(Atom::Exp { p: p.compose_scale(omega) }),
                Atom::Qfac { q, m } => {
                    if omega.im != 0.0 || omega.re <= 0.0 {
                        return Err(Error::InvalidArgument(format!(
                            "q-factor can only be rescaled by a positive real, not {omega}"
                        )));
                    }
                    let qw = q.powf(omega.re);
                    atoms.push(Atom::Const { a: Complex64::new(((1.0 - qw) / (1.0 - q)).powi(m as i32), 0.0) });
                    atoms.push(Atom::Qfac { q: qw, m });
                }
            }
        }
        FunctionSpec::new(atoms)
    }

    pub fn divisor_of(&self) -> DivisorSpec {
        let mut points = Vec::new();
        let mut families = Vec::new();
        for a in &self.atoms {
            match *a {
                Atom::Linear { alpha, m } => points.push(DivisorPoint { rho: alpha, n: m }),
                Atom::Qfac { q, m } => {
                    let step = Complex64::new(0.0, 2.0 * PI / q.ln().abs());
                    families.push(Generator::new(ZERO, vec![step], m).expect("vertical step"));
                    families.push(Generator::new(-step, vec![-step], m).expect("vertical step"));
                }
                Atom::Const { .. } | Atom::Exp { .. } => {}
            }
        }
        DivisorSpec::new(points, families)
    }

    /// True when every constant and exponent coefficient is real and the linear
    /// factors are closed under conjugation.
    pub fn is_real_analytic(&self) -> bool {
        let real = |z: &Complex64| z.im.abs() <= 1e-14 * z.norm();
        self.atoms.iter().all(|a| match a {
            Atom::Const { a } => real(a),
            Atom::Exp { p } => p.coeffs().iter().all(real),
            Atom::Linear { alpha, m } => {
                let partner: i64 = self
                    .atoms
                    .iter()
                    .filter_map(|b| match b {
                        Atom::Linear { alpha: beta, m: mb }
                            if (beta - alpha.conj()).norm() <= 1e-12 * alpha.norm().max(1.0) =>
                        {
                            Some(*mb)
                        }
                        _ => None,
                    })
                    .sum();
                real(alpha) || partner == *m
            }
            Atom::Qfac { .. } => true,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FunctionSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("bad spec json: {e}")))?;
        FunctionSpec::new(raw.atoms)
    }
}

/// Turns local data `(order, ln c)` into a value: zero, a pole, or `e^{ln c}`.
pub(crate) fn value_from_local(s: Complex64, order: i64, ln: Complex64) -> Result<Complex64> {
    if order < 0 {
        return Err(Error::Pole { at: s, order: (-order) as u32 });
    }
    if order > 0 || ln.re < -745.2 {
        return Ok(ZERO);
    }
    if ln.re > 709.78 || !ln.re.is_finite() {
        return Err(Error::Overflow { at: s });
    }
    Ok(ln.exp())
}

fn canonical(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut constant = ONE;
    let mut exponent = Poly::zero();
    let mut linear: Vec<(Complex64, i64)> = Vec::new();
    let mut qfac: Vec<(f64, i64)> = Vec::new();
    for a in atoms {
        match a {
            Atom::Const { a } => constant *= a,
            Atom::Exp { p } => exponent = &exponent + &p,
            Atom::Linear { alpha, m } => match linear.iter_mut().find(|(b, _)| *b == alpha) {
                Some(slot) => slot.1 += m,
                None => linear.push((alpha, m)),
            },
            Atom::Qfac { q, m } => match qfac.iter_mut().find(|(r, _)| *r == q) {
                Some(slot) => slot.1 += m,
                None => qfac.push((q, m)),
            },
        }
    }
    let mut out = Vec::new();
    if constant != ONE {
        out.push(Atom::Const { a: constant });
    }
    if !exponent.is_zero() {
        out.push(Atom::Exp { p: exponent });
    }
    linear.retain(|&(_, m)| m != 0);
    linear.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out.extend(linear.into_iter().map(|(alpha, m)| Atom::Linear { alpha: alpha + ZERO, m }));
    qfac.retain(|&(_, m)| m != 0);
    qfac.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.extend(qfac.into_iter().map(|(q, m)| Atom::Qfac { q, m }));
    debug_assert!(out.windows(2).all(|w| w[0].rank() <= w[1].rank()));
    out
}

impl SeedFunction for FunctionSpec {
    fn local(&self, s: Complex64) -> Result<(i64, Complex64)> {
        Ok(FunctionSpec::local(self, s))
    }

    fn ln_value(&self, s: Complex64) -> Result<Complex64> {
        // principal logs of the atoms: continuous on Re s > 0 for left located seeds
        match FunctionSpec::local(self, s) {
            (0, ln) => Ok(ln),
            (order, _) => Err(Error::Pole { at: s, order: order.unsigned_abs() as u32 }),
        }
    }

    fn log_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for a in &self.atoms {
            match a {
                Atom::Exp { p: e } => p = &p + e,
                Atom::Const { a } => p = &p + &Poly::constant(a.ln()),
                _ => {}
            }
        }
        p
    }

    fn divisor(&self) -> DivisorSpec {
        self.divisor_of()
    }

    fn real_analytic(&self) -> bool {
        self.is_real_analytic()
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

// ---------------------------------------------------------------------------
// printing

fn fmt_real(x: f64) -> String {
    format!("{}", x + 0.0)
}

/// `a`, `a+bi` or `a-bi`.
pub fn fmt_cnum(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_real(z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", fmt_real(z.re), fmt_real(z.im))
    } else {
        format!("{}-{}i", fmt_real(z.re), fmt_real(-z.im))
    }
}

fn fmt_linear(alpha: Complex64) -> String {
    if alpha.re < 0.0 {
        format!("(s+{})", fmt_cnum(-alpha))
    } else {
        format!("(s-{})", fmt_cnum(alpha))
    }
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, &c) in p.coeffs().iter().enumerate() {
        if c == ZERO {
            continue;
        }
        let (sign, body) = if c.im == 0.0 {
            (if c.re < 0.0 { "-" } else { "+" }, fmt_real(c.re.abs()))
        } else {
            ("+", format!("({})", fmt_cnum(c)))
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(sign);
        }
        out.push_str(&body);
        match k {
            0 => {}
            1 => out.push_str("*s"),
            _ => out.push_str(&format!("*s^{k}")),
        }
    }
    out
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        for a in &self.atoms {
            match a {
                Atom::Const { a } => num.push(format!("const({})", fmt_cnum(*a))),
                Atom::Exp { p } => num.push(format!("exp({})", fmt_poly(p))),
                Atom::Linear { alpha, m } => {
                    let base = fmt_linear(*alpha);
                    let text = if m.abs() == 1 { base } else { format!("{base}^{}", m.abs()) };
                    if *m > 0 {
                        num.push(text)
                    } else {
                        den.push(text)
                    }
                }
                Atom::Qfac { q, m } => {
                    let side = if *m > 0 { &mut num } else { &mut den };
                    for _ in 0..m.abs() {
                        side.push(format!("qfac({})", fmt_real(*q)));
                    }
                }
            }
        }
        if num.is_empty() {
            num.push("const(1)".into());
        }
        write!(f, "{}", num.join("*"))?;
        for d in den {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// parsing

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse(text)
    }
}

/// Parses the seed grammar described in the module docs.
pub fn parse(text: &str) -> Result<FunctionSpec> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let mut atoms = vec![p.atom()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'*') => {
                p.pos += 1;
                atoms.push(p.atom()?);
            }
            Some(b'/') => {
                p.pos += 1;
                atoms.push(p.atom()?.inverted());
            }
            Some(_) => return Err(p.error("expected '*', '/' or end of input")),
        }
    }
    FunctionSpec::new(atoms).map_err(|e| match e {
        Error::InvalidArgument(msg) => Error::Parse { pos: text.len(), msg },
        other => other,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        if self.keyword("const(") {
            let a = self.cnum()?;
            self.expect(b')')?;
            if a == ZERO {
                return Err(self.error("constant must be nonzero"));
            }
            return Ok(Atom::Const { a });
        }
        if self.keyword("exp(") {
            let p = self.poly()?;
            self.expect(b')')?;
            return Ok(Atom::Exp { p });
        }
        if self.keyword("qfac(") {
            let start = self.pos;
            let q = self.real()?;
            self.expect(b')')?;
            if !(q > 0.0 && q < 1.0) {
                return Err(Error::Parse { pos: start, msg: format!("q = {q} is outside (0, 1)") });
            }
            return Ok(Atom::Qfac { q, m: 1 });
        }
        if self.eat(b'(') {
            if !self.eat(b's') {
                return Err(self.error("expected 's'"));
            }
            self.skip_ws();
            let sign = match self.peek() {
                Some(b'-') => 1.0,
                Some(b'+') => -1.0,
                _ => return Err(self.error("expected '+' or '-'")),
            };
            self.pos += 1;
            let alpha = self.cnum()? * sign;
            self.expect(b')')?;
            let m = if self.eat(b'^') { self.int()? } else { 1 };
            if m == 0 {
                return Err(self.error("exponent must be nonzero"));
            }
            return Ok(Atom::Linear { alpha, m });
        }
        Err(self.error("expected an atom: (s±a), const(..), exp(..) or qfac(..)"))
    }

    fn number_span(&mut self, signed: bool) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let mut end = self.pos;
        let bytes = self.src;
        if signed && matches!(bytes.get(end), Some(b'+') | Some(b'-')) {
            end += 1;
        }
        let digits_start = end;
        while bytes.get(end).is_some_and(|c| c.is_ascii_digit() || *c == b'.') {
            end += 1;
        }
        if end == digits_start {
            return Err(self.error("expected a number"));
        }
        if matches!(bytes.get(end), Some(b'e') | Some(b'E')) {
            let mut e = end + 1;
            if matches!(bytes.get(e), Some(b'+') | Some(b'-')) {
                e += 1;
            }
            if bytes.get(e).is_some_and(|c| c.is_ascii_digit()) {
                while bytes.get(e).is_some_and(|c| c.is_ascii_digit()) {
                    e += 1;
                }
                end = e;
            }
        }
        let text = std::str::from_utf8(&bytes[start..end]).expect("ascii");
        let v: f64 = text.parse().map_err(|_| self.error("malformed number"))?;
        if !v.is_finite() {
            return Err(self.error("number out of range"));
        }
        self.pos = end;
        Ok(v)
    }

    fn real(&mut self) -> Result<f64> {
        self.number_span(true)
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        if matches!(self.src.get(end), Some(b'-') | Some(b'+')) {
            end += 1;
        }
        while self.src.get(end).is_some_and(|c| c.is_ascii_digit()) {
            end += 1;
        }
        let text = std::str::from_utf8(&self.src[start..end]).expect("ascii");
        let v = text.parse().map_err(|_| self.error("expected an integer"))?;
        self.pos = end;
        Ok(v)
    }

    fn cnum(&mut self) -> Result<Complex64> {
        let a = self.real()?;
        if self.eat(b'i') {
            return Ok(Complex64::new(0.0, a));
        }
        self.skip_ws();
        let save = self.pos;
        let sign = match self.peek() {
            Some(b'+') => 1.0,
            Some(b'-') => -1.0,
            _ => return Ok(Complex64::new(a, 0.0)),
        };
        self.pos += 1;
        match self.number_span(false) {
            Ok(b) if self.eat(b'i') => Ok(Complex64::new(a, sign * b)),
            _ => {
                self.pos = save;
                Ok(Complex64::new(a, 0.0))
            }
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        self.skip_ws();
        let mut sign = 1.0;
        if self.peek() == Some(b'-') {
            sign = -1.0;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(Complex64::new(sign, 0.0));
            self.skip_ws();
            match self.peek() {
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        self.skip_ws();
        let coef = if self.peek() == Some(b's') {
            None
        } else if self.eat(b'(') {
            let z = self.cnum()?;
            self.expect(b')')?;
            Some(z)
        } else {
            let x = self.number_span(false)?;
            Some(if self.eat(b'i') { Complex64::new(0.0, x) } else { Complex64::new(x, 0.0) })
        };
        let has_s = match coef {
            None => true,
            Some(_) => {
                self.skip_ws();
                if self.peek() == Some(b'*') && self.src.get(self.pos + 1..).is_some_and(|rest| {
                    rest.iter().find(|c| !c.is_ascii_whitespace()) == Some(&b's')
                }) {
                    self.pos += 1;
                    true
                } else {
                    false
                }
            }
        };
        let c = coef.unwrap_or(ONE);
        if !has_s {
            return Ok(Poly::constant(c));
        }
        self.expect(b's')?;
        let k = if self.eat(b'^') {
            let k = self.int()?;
            if k < 0 {
                return Err(self.error("polynomial exponents must be nonnegative"));
            }
            k as usize
        } else {
            1
        };
        Ok(Poly::monomial(c, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f(text: &str) -> FunctionSpec {
        text.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let spec = f("(s-0)");
        assert_eq!(spec.atoms(), &[Atom::Linear { alpha: c(0.0, 0.0), m: 1 }]);
        assert_eq!(spec.eval(c(2.0, 0.0)).unwrap(), c(2.0, 0.0));

        let spec = f("qfac(0.5)");
        assert_eq!(spec.atoms(), &[Atom::Qfac { q: 0.5, m: 1 }]);
        assert!((spec.eval(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);

        let spec = f("const(2)*(s-1)");
        assert!((spec.eval(c(3.0, 0.0)).unwrap() - c(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(f("(s-0)").eval(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((f("qfac(0.5)").eval(c(2.0, 0.0)).unwrap() - c(1.5, 0.0)).norm() < 1e-15);
        assert_eq!(f("exp(0 + 1*s)").eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn poles_and_zeros() {
        let spec = f("(s+1)/(s+2)");
        assert!(matches!(spec.eval(c(-2.0, 0.0)), Err(Error::Pole { order: 1, .. })));
        assert_eq!(spec.eval(c(-1.0, 0.0)).unwrap(), c(0.0, 0.0));
        // removable: qfac vanishes at 0 like -s·ln q/(1-q)
        let spec = f("qfac(0.5)/(s-0)");
        let v = spec.eval(c(0.0, 0.0)).unwrap();
        assert!((v - c(-(0.5f64).ln() / 0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn overflow_is_signalled() {
        assert!(matches!(f("exp(1000*s)").eval(c(1.0, 0.0)), Err(Error::Overflow { .. })));
    }

    #[test]
    fn divisor_examples() {
        let d = f("(s-0)^1").divisor_of();
        assert_eq!(d, DivisorSpec::from_points(&[(c(0.0, 0.0), 1)]));
        let d = f("(s+1)/(s+2)").divisor_of();
        assert_eq!(d, DivisorSpec::from_points(&[(c(-2.0, 0.0), -1), (c(-1.0, 0.0), 1)]));
        let d = f("qfac(0.5)").divisor_of();
        let spacing = d.families()[0].steps()[0].im;
        assert!((spacing - 2.0 * PI / 2f64.ln()).abs() < 1e-12);
        assert!((spacing - 9.064720283654388).abs() < 1e-12);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match "(s-1)*foo".parse::<FunctionSpec>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!("qfac(1.5)".parse::<FunctionSpec>(), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!("const(0)".parse::<FunctionSpec>(), Err(Error::Parse { .. })));
        assert!(matches!("".parse::<FunctionSpec>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("(s-1".parse::<FunctionSpec>(), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn complex_numbers_and_polynomials() {
        let spec = f("(s+1-2i)^2 * const(2i) * exp(-0.1*s^2 + (1+2i)*s + 3)");
        let atoms = spec.atoms();
        assert_eq!(atoms[0], Atom::Const { a: c(0.0, 2.0) });
        assert_eq!(atoms[1], Atom::Exp { p: Poly::new(vec![c(3.0, 0.0), c(1.0, 2.0), c(-0.1, 0.0)]) });
        assert_eq!(atoms[2], Atom::Linear { alpha: c(-1.0, 2.0), m: 2 });
        let back: FunctionSpec = spec.to_string().parse().unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn canonical_form_merges() {
        let spec = f("(s-0)*(s-0)/(s-0)*const(2)/const(2)");
        assert_eq!(spec.atoms(), &[Atom::Linear { alpha: c(0.0, 0.0), m: 1 }]);
        assert_eq!(f("const(1)").atoms(), &[]);
        assert_eq!(f("const(1)").to_string(), "const(1)");
        assert_eq!(f("(s+2)^-1").to_string(), "const(1)/(s+2)");
    }

    #[test]
    fn real_analytic_flag() {
        assert!(f("(s-0)*const(3)*qfac(0.2)").is_real_analytic());
        assert!(!f("(s+1-1i)").is_real_analytic());
        assert!(f("(s+1-1i)*(s+1+1i)").is_real_analytic());
        assert!(!f("const(1+1i)").is_real_analytic());
    }

    #[test]
    fn json_schema() {
        let spec = f("(s-0)*qfac(0.5)");
        let json = spec.to_json();
        assert_eq!(
            json,
            r#"{"atoms":[{"kind":"linear","alpha":{"re":0.0,"im":0.0},"m":1},{"kind":"qfac","q":0.5,"m":1}]}"#
        );
        let parsed = FunctionSpec::from_json(r#"{"atoms":[{"kind":"qfac","q":0.5},{"kind":"const","a":{"re":2}}]}"#)
            .unwrap();
        assert_eq!(parsed, f("const(2)*qfac(0.5)"));
        assert!(FunctionSpec::from_json(r#"{"atoms":[{"kind":"qfac","q":2.0}]}"#).is_err());
    }
}
