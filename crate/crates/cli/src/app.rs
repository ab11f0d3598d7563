//! Argument grammar and command dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use qnrforge_core::cyclo::{link_period_coperiod, period_polynomial_of, period_spec, LinkDirection};
use qnrforge_core::irrpoly::binomial_tower;
use qnrforge_core::roots::{cipolla_sum, tonelli_shanks};
use qnrforge_core::symbols::jacobi;
use qnrforge_core::{factor_degrees, parse_poly, qnr_auto, qnr_with, Error, FieldDescriptor, Method};

use crate::bench::bench_randomized;
use crate::conformance::{run_conformance, Check};

#[derive(Debug, Parser)]
#[command(name = "qnrforge", version, about = "Deterministic quadratic nonresidues and related constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QnrMethod {
    Auto,
    Special,
    General,
    Least,
    Class,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SqrtMethod {
    Tonelli,
    Cipolla,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a quadratic nonresidue of F_q.
    Qnr {
        #[arg(long)]
        modulus: u64,
        /// Irreducible odd-degree modulus for F_q = F_p[x]/g, as comma-separated
        /// coefficients, lowest degree first.
        #[arg(long)]
        ext_modulus: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        method: QnrMethod,
        /// Print the full certificate as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Square root modulo a prime; prints `root other_root`.
    Sqrt {
        #[arg(long)]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        value: i64,
        #[arg(long, value_enum, default_value = "tonelli")]
        method: SqrtMethod,
    },
    /// Period polynomial of conductor r and degree d. With --over p, also the
    /// reduction mod p and its factor degrees.
    Period {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        degree: u64,
        /// Print the coperiod polynomial instead.
        #[arg(long)]
        theta: bool,
        #[arg(long)]
        over: Option<u64>,
    },
    /// Jacobi symbol (a/n) for odd n >= 3.
    Symbol {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        n: u64,
    },
    /// Irreducible polynomial of degree 2^e over F_p.
    Irr {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        log2_degree: u32,
    },
    /// Invariant sweeps over all primes up to a bound; exits 3 on anomalies.
    Conformance {
        #[arg(long)]
        max_prime: u64,
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        /// Write the JSON report here and print only a summary.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Mean number of uniform draws needed to hit a nonresidue.
    Bench {
        #[arg(long)]
        bits: u32,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_METHOD_FAILED: i32 = 2;
pub const EXIT_ANOMALIES: i32 = 3;

/// 1 for bad input, 2 when a valid input defeated the chosen method.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoShortcut(_)
        | Error::FallbackExhausted { .. }
        | Error::NoParametersFound { .. }
        | Error::ConstructionFailed { .. }
        | Error::ReduciblePolynomial { .. }
        | Error::SingularTraceMatrix { .. }
        | Error::ZeroDenominator { .. }
        | Error::NonIntegerCoefficients { .. }
        | Error::DegreeDrop => EXIT_METHOD_FAILED,
        _ => EXIT_INVALID,
    }
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure { code: exit_code(&err), message: err.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure { code: EXIT_INVALID, message: err.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

fn field(modulus: u64, ext: Option<&str>) -> Result<FieldDescriptor, Failure> {
    match ext {
        None => Ok(FieldDescriptor::prime(modulus)?),
        Some(text) => {
            FieldDescriptor::prime(modulus)?;
            let g = parse_poly(modulus, text).ok_or_else(|| invalid(format!("cannot parse polynomial {text:?}")))?;
            Ok(FieldDescriptor::extension(modulus, g)?)
        }
    }
}

/// Runs one command, writing its result to `out`. Returns the exit code on success.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Qnr { modulus, ext_modulus, method, json } => {
            let desc = field(*modulus, ext_modulus.as_deref())?;
            let method = match method {
                QnrMethod::Auto => None,
                QnrMethod::Special => Some(Method::Special),
                QnrMethod::General => Some(Method::General),
                QnrMethod::Least => Some(Method::Least),
                QnrMethod::Class => Some(Method::Class),
            };
            let cert = qnr_with(&desc, method)?;
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&cert).expect("certificate serializes"))?;
            } else {
                writeln!(out, "{}", cert.value)?;
            }
        }
        Command::Sqrt { modulus, value, method } => {
            let desc = FieldDescriptor::prime(*modulus)?;
            let a = qnrforge_core::arith::reduce_i64(*value, *modulus);
            let z = qnr_auto(&desc)?.value;
            let result = match method {
                SqrtMethod::Tonelli => tonelli_shanks(a, *modulus, z)?,
                SqrtMethod::Cipolla => {
                    let outcome = cipolla_sum(a, *modulus, z)?;
                    if outcome.fell_back {
                        eprintln!("note: root sum gave {}, fell back to Tonelli-Shanks", outcome.sum_value);
                    }
                    outcome.result
                }
            };
            writeln!(out, "{} {}", result.root, result.other_root)?;
        }
        Command::Period { r, degree, theta, over } => {
            let spec = period_spec(*r, *degree)?;
            let psi = period_polynomial_of(&spec)?;
            let poly = if *theta {
                link_period_coperiod(&psi, *degree, LinkDirection::PeriodToCoperiod)?
            } else {
                psi
            };
            writeln!(out, "{poly}")?;
            if let Some(p) = over {
                qnrforge_core::arith::check_odd_prime(*p)?;
                let reduced = poly.reduce_mod(*p);
                let degrees: Vec<String> = factor_degrees(&reduced).iter().map(|d| d.to_string()).collect();
                writeln!(out, "{reduced}")?;
                writeln!(out, "{}", degrees.join(","))?;
            }
        }
        Command::Symbol { a, n } => {
            writeln!(out, "{}", jacobi(*a, *n)?)?;
        }
        Command::Irr { modulus, log2_degree } => {
            let desc = FieldDescriptor::prime(*modulus)?;
            let z = qnr_auto(&desc)?.value;
            writeln!(out, "{}", binomial_tower(&desc, *log2_degree, z)?)?;
        }
        Command::Conformance { max_prime, checks, report } => {
            if *max_prime < 3 {
                return Err(invalid("--max-prime must be at least 3"));
            }
            let result = run_conformance(*max_prime, checks);
            let text = serde_json::to_string_pretty(&result).expect("report serializes");
            match report {
                Some(path) => {
                    std::fs::write(path, format!("{text}\n"))?;
                    for (key, t) in &result.tallies {
                        writeln!(out, "{key}: {}/{} pass", t.pass, t.total)?;
                    }
                    writeln!(out, "anomalies: {}", result.anomalies.len())?;
                }
                None => writeln!(out, "{text}")?,
            }
            if result.has_anomalies() {
                return Ok(EXIT_ANOMALIES);
            }
        }
        Command::Bench { bits, count, seed } => {
            if !(3..=63).contains(bits) {
                return Err(invalid("--bits must lie in [3, 63]"));
            }
            if *count == 0 {
                return Err(invalid("--count must be positive"));
            }
            let result = bench_randomized(*bits, *count, *seed);
            writeln!(out, "{}", serde_json::to_string_pretty(&result).expect("report serializes"))?;
            for (method, secs) in &result.timings {
                eprintln!("{method}: {secs:.6} s");
            }
        }
    }
    Ok(EXIT_OK)
}
