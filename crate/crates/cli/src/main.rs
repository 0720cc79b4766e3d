//! `fgamma`: evaluate generalized Gamma functions and run the verification suites.
//!
//! Exit codes: 0 success, 1 failed check or evaluation error, 2 usage error.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use fgamma::closed_forms::{mellin_solve, q_gamma};
use fgamma::divisor::{self, classify};
use fgamma::funcspec::FunctionSpec;
use fgamma::gamma::{build_gamma, Normalization};
use fgamma::hierarchy::{higher_gamma, multiple_gamma};
use fgamma::verify::{run_suite, Suite, SuiteConfig};
use fgamma::Complex64;

#[derive(Parser)]
#[command(name = "fgamma", version, about = "Gamma functions Γ^f with Γ^f(s+1) = f(s)Γ^f(s)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Seed {
    /// Seed expression, e.g. "(s-0)*qfac(0.5)"
    #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
    expr: Option<String>,
    /// JSON seed file, alternative to --f
    #[arg(long, value_name = "PATH", conflicts_with = "expr")]
    spec_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Γ^f(s)
    Eval {
        #[command(flatten)]
        seed: Seed,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        s: Complex64,
        #[arg(long, default_value = "value1")]
        norm: Normalization,
        /// Multiply by e^{2πi·A·s + B}
        #[arg(long, value_parser = parse_variant, allow_hyphen_values = true, value_name = "A,BRE,BIM")]
        variant: Option<(i64, Complex64)>,
    },
    /// List the divisor of f up to a radius
    Divisor {
        #[command(flatten)]
        seed: Seed,
        #[arg(long)]
        radius: f64,
    },
    /// Evaluate level N of the higher or multiple hierarchy
    Hierarchy {
        #[command(flatten)]
        seed: Seed,
        #[arg(long)]
        levels: usize,
        /// Steps ω_1..ω_N; all 1 when omitted
        #[arg(long, value_delimiter = ',')]
        omegas: Option<Vec<f64>>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        s: Complex64,
    },
    /// Print the closed-form solution for a rational seed
    Mellin {
        #[command(flatten)]
        seed: Seed,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        branch: i64,
    },
    /// Evaluate the q-Gamma function or level N of its hierarchy
    Qgamma {
        #[arg(long)]
        q: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, value_name = "RE,IM")]
        s: Complex64,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Run a verification suite
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Tolerance of the functional equation checks
        #[arg(long)]
        tol: Option<f64>,
        /// Report only the negative controls; these fail by design
        #[arg(long)]
        controls_only: bool,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let (re, im) = text.split_once(',').unwrap_or((text, "0"));
    let re: f64 = re.trim().parse().map_err(|e| format!("bad real part '{re}': {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part '{im}': {e}"))?;
    Ok(Complex64::new(re, im))
}

fn parse_variant(text: &str) -> Result<(i64, Complex64), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, bre, bim] = parts[..] else {
        return Err(format!("expected A,BRE,BIM, got '{text}'"));
    };
    let a: i64 = a.parse().map_err(|e| format!("bad integer '{a}': {e}"))?;
    let b = parse_complex(&format!("{bre},{bim}"))?;
    Ok((a, b))
}

/// Failures that are the caller's fault.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn load_seed(seed: &Seed) -> anyhow::Result<FunctionSpec> {
    match (&seed.expr, &seed.spec_file) {
        (Some(expr), None) => expr.parse().map_err(|e| Usage(format!("--f: {e}")).into()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            FunctionSpec::from_json(&text).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
        }
        _ => Err(Usage("one of --f or --spec-file is required".into()).into()),
    }
}

fn fmt_value(z: Complex64) -> String {
    // adding 0.0 folds -0 into +0
    format!("{:.14e} {:.14e}", z.re + 0.0, z.im + 0.0)
}

fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Eval { seed, s, norm, variant } => {
            let spec = load_seed(&seed)?;
            let mut sol = build_gamma(&spec, norm)?;
            if let Some((a, b)) = variant {
                sol = sol.uniqueness_variant(a, b);
            }
            println!("{}", fmt_value(sol.eval(s)?));
        }
        Command::Divisor { seed, radius } => {
            if !(radius > 0.0) {
                return Err(Usage(format!("--radius must be positive, got {radius}")).into());
            }
            let spec = load_seed(&seed)?;
            let div = spec.divisor_of();
            let class = classify(&div);
            println!("# lld={} cld={} exponent={}", class.lld, class.cld, class.exponent);
            for (rho, n) in divisor::enumerate(&div, radius) {
                println!("{} {n}", fmt_value(rho));
            }
        }
        Command::Hierarchy { seed, levels, omegas, s } => {
            let spec = load_seed(&seed)?;
            if levels == 0 {
                return Err(Usage("--levels must be at least 1".into()).into());
            }
            let level = match omegas {
                None => higher_gamma(&spec, levels)?,
                Some(w) if w.len() == levels => multiple_gamma(&spec, &w)?,
                Some(w) => return Err(Usage(format!("--levels {levels} needs {levels} omegas, got {}", w.len())).into()),
            };
            println!("{}", fmt_value(level.eval(s)?));
        }
        Command::Mellin { seed, branch } => {
            let spec = load_seed(&seed)?;
            println!("{}", mellin_solve(&spec, branch)?);
        }
        Command::Qgamma { q, s, level } => {
            if level == 0 {
                return Err(Usage("--level must be at least 1".into()).into());
            }
            let v = if level == 1 {
                q_gamma(q, s)?
            } else {
                let spec: FunctionSpec = format!("qfac({q})").parse().map_err(|e| Usage(format!("--q: {e}")))?;
                higher_gamma(&spec, level)?.eval(s)?
            };
            println!("{}", fmt_value(v));
        }
        Command::Verify { suite, csv, tol, controls_only } => {
            let mut config = SuiteConfig::default();
            if let Some(t) = tol {
                if !(t > 0.0) {
                    return Err(Usage(format!("--tol must be positive, got {t}")).into());
                }
                config.fe_tol = t;
            }
            let mut report = run_suite(suite, &config, None)?;
            if controls_only {
                report = report.controls_only();
            }
            if let Some(path) = csv {
                report.write_csv(&path).map_err(|e| anyhow!(e))?;
            }
            println!("{report}");
            if controls_only {
                // a control that fails has detected its corruption
                return Ok(report.checks.iter().all(|c| c.pass));
            }
            return Ok(report.ok());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
