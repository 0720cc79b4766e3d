//! Generalized Gamma functions `Γ^f` characterized by the functional equation
//! `Γ^f(s+1) = f(s) Γ^f(s)` together with finite order, left located divisor and a
//! normalization.
//!
//! The crate is organised bottom-up:
//!
//! | module | contents |
//! |--------|----------|
//! | [`algebra`] | polynomials, unit and `ω`-difference solvers |
//! | [`divisor`] | divisors with infinite generator families, propagation |
//! | [`funcspec`] | the seed expression language, evaluator and exact divisor |
//! | [`gamma`] | Weierstrass construction, correction polynomial, evaluation |
//! | [`closed_forms`] | independent oracles: Euler Gamma, q-Gamma, Mellin, `Γ(s\|ω)` |
//! | [`hierarchy`] | higher and multiple Gamma hierarchies |
//! | [`verify`] | residual suites and CSV reports |
//!
//! ```
//! use fgamma::{funcspec::FunctionSpec, gamma::{build_gamma, Normalization}};
//!
//! let f: FunctionSpec = "(s-0)".parse().unwrap();
//! let gamma = build_gamma(&f, Normalization::Value1).unwrap();
//! let v = gamma.eval(num_complex::Complex64::new(5.0, 0.0)).unwrap();
//! assert!((v.re - 24.0).abs() < 1e-8);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod closed_forms;
pub mod cjson;
pub mod divisor;
pub mod error;
pub mod funcspec;
pub mod gamma;
pub mod hierarchy;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
