//! Command-line front end: argument parsing, JSON output and certificate files.
//!
//! Exit codes: 0 for any verdict (including undecided), 2 for usage errors,
//! 3 for scope errors and failed verification, 4 for I/O failures.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algnum::{all_roots_weil, prime_power};
use crate::certifier::{
    classify, classify_audit, classify_tower, transfer_not_kf, verify, Certificate, CertificateInput,
    LubinTateInput, Outcome, Recipe, TowerKind,
};
use crate::factor::is_prime_u64;
use crate::factory::{build_example, find_split_principal, verify_example};
use crate::hondatate::{isogeny_invariants, places_above_p};
use crate::padic::{RootSeed, DEFAULT_PRECISION};
use crate::poly::IntPoly;
use crate::supernat::Supernatural;

/// Directory into which certificates are written when no `--out` is given.
pub const CERT_DIR_ENV: &str = "LT_KUMMER_CERT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCOPE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lt-kummer", version, about = "Kummer-faithfulness certificates for Lubin-Tate extensions")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct FieldArgs {
    /// Residue characteristic.
    #[arg(long)]
    p: u64,
    /// Residue degree of k over Q_p.
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Tame radical: pi is an r-th root of c.
    #[arg(long, default_value_t = 1)]
    r: u64,
    /// Minimal polynomial of c over Q, e.g. "x-5".
    #[arg(long)]
    c: String,
    /// Unit residue of c / p selecting the root, modulo p^digits.
    #[arg(long)]
    residue: Option<u64>,
    #[arg(long, default_value_t = 1)]
    digits: u32,
    /// Starting p-adic precision; escalates by doubling when ambiguous.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RecipeArg {
    NthRoot,
    UnramifiedNormOne,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Unramified,
    TameGalois,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide Kummer-faithfulness of k_pi and emit a certificate.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        /// Record the full candidate sweep even when an earlier clause decides.
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the non-faithful example from the r smallest split principal fields.
    Factory {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify an unramified or tame Galois extension by its degree.
    Tower {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Supernatural degree such as "2^inf" or "prod_all_primes^1".
        #[arg(long)]
        degree: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a field derived from a non-faithful base as non-faithful.
    Transfer {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        recipe: RecipeArg,
        /// Root degree for nth-root, unramified degree for unramified-norm-one.
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate file.
    Verify { path: PathBuf },
    /// Test whether every root of a monic polynomial is a Weil q-integer.
    Weil {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        q: String,
    },
    /// Places above p and isogeny invariants for a Weil q-integer, q = p^f.
    Hondatate {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub enum Request {
    Classify { input: LubinTateInput, audit: bool, out: Option<PathBuf> },
    Factory { p: u64, r: u64, precision: u32, out: Option<PathBuf> },
    Tower { kind: TowerKind, degree: Supernatural, out: Option<PathBuf> },
    Transfer { base: LubinTateInput, recipe: Recipe, out: Option<PathBuf> },
    Verify { path: PathBuf },
    Weil { poly: IntPoly, q: BigInt },
    HondaTate { poly: IntPoly, p: u64, f: u32 },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_poly(flag: &str, s: &str) -> Result<IntPoly, CliError> {
    s.parse().map_err(|e| usage(format!("--{flag} {s:?}: {e}")))
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(usage(format!("--p {p}: NotPrime")))
    }
}

fn field_input(a: &FieldArgs) -> Result<LubinTateInput, CliError> {
    check_prime(a.p)?;
    let c_minpoly = parse_poly("c", &a.c)?;
    let c_seed = match a.residue {
        Some(t) => RootSeed::with_residue(1, t, a.digits),
        None => RootSeed::slope(1),
    };
    Ok(LubinTateInput { p: a.p, f: a.f, r: a.r, c_minpoly, c_seed, precision: a.precision })
}

/// Parse and validate arguments (the first item is the program name).
pub fn parse_request<I, T>(argv: I) -> Result<Request, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| usage(e.to_string()))?;
    Ok(match args.command {
        Command::Classify { field, audit, out } => Request::Classify { input: field_input(&field)?, audit, out },
        Command::Factory { p, r, precision, out } => {
            check_prime(p)?;
            if p == 2 {
                return Err(usage("--p must be odd"));
            }
            Request::Factory { p, r, precision, out }
        }
        Command::Tower { kind, degree, out } => {
            let degree = degree.parse().map_err(|e| usage(format!("--degree {degree:?}: {e}")))?;
            let kind = match kind {
                KindArg::Unramified => TowerKind::Unramified,
                KindArg::TameGalois => TowerKind::TameGalois,
            };
            Request::Tower { kind, degree, out }
        }
        Command::Transfer { field, recipe, n, out } => {
            let recipe = match recipe {
                RecipeArg::NthRoot => Recipe::NthRoot { n },
                RecipeArg::UnramifiedNormOne => {
                    Recipe::UnramifiedNormOne { f_prime: u32::try_from(n).map_err(|_| usage("--n too large"))? }
                }
            };
            Request::Transfer { base: field_input(&field)?, recipe, out }
        }
        Command::Verify { path } => Request::Verify { path },
        Command::Weil { poly, q } => {
            let poly = parse_poly("poly", &poly)?;
            let q: BigInt = q.parse().map_err(|_| usage(format!("--q {q:?} is not an integer")))?;
            if prime_power(&q).is_none() {
                return Err(usage(format!("--q {q} is not a prime power")));
            }
            Request::Weil { poly, q }
        }
        Command::Hondatate { poly, p, f } => {
            check_prime(p)?;
            Request::HondaTate { poly: parse_poly("poly", &poly)?, p, f }
        }
    })
}

/// JSON with object keys sorted at every level.
pub fn canonical_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// 64-bit FNV-1a, used to name certificate files stably.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn write_certificate(cert: &Certificate, out: &Option<PathBuf>) -> Result<Option<PathBuf>, CliError> {
    let path = match out {
        Some(p) => p.clone(),
        None => match std::env::var_os(CERT_DIR_ENV) {
            Some(dir) => {
                let input = serde_json::to_string(&cert.input).expect("input serializes");
                PathBuf::from(dir).join(format!("certificate-{:016x}.json", fnv1a(input.as_bytes())))
            }
            None => return Ok(None),
        },
    };
    std::fs::write(&path, cert.to_json() + "\n")?;
    eprintln!("wrote {}", path.display());
    Ok(Some(path))
}

/// Emit a certificate unless the verdict is a scope error, which carries no
/// replayable witness.
fn emit(cert: Certificate, out: &Option<PathBuf>) -> Result<(i32, Value), CliError> {
    let v = serde_json::to_value(&cert).expect("certificate serializes");
    if cert.outcome == Outcome::ScopeError {
        return Ok((EXIT_SCOPE, v));
    }
    write_certificate(&cert, out)?;
    Ok((EXIT_OK, v))
}

/// Execute a request, returning the exit code and the JSON to print.
pub fn run(req: Request) -> Result<(i32, Value), CliError> {
    match req {
        Request::Classify { input, audit, out } => {
            let v = if audit { classify_audit(&input) } else { classify(&input) };
            emit(Certificate::new(CertificateInput::LubinTate(input), v), &out)
        }
        Request::Factory { p, r, precision, out } => {
            let search = find_split_principal(p, r as usize);
            if (search.witnesses.len() as u64) < r {
                return Ok((EXIT_SCOPE, json!({ "error": "not enough split principal fields", "search": search })));
            }
            let built = build_example(p, r, &search.witnesses).and_then(|mut ex| {
                ex.input.precision = precision;
                let v = verify_example(&ex.input)?;
                Ok((ex, v))
            });
            let (ex, verdict) = match built {
                Ok(x) => x,
                Err(e) => return Ok((EXIT_SCOPE, json!({ "error": e.to_string() }))),
            };
            let cert = Certificate::new(CertificateInput::LubinTate(ex.input.clone()), verdict);
            write_certificate(&cert, &out)?;
            Ok((EXIT_OK, json!({ "search": search, "example": ex, "certificate": cert })))
        }
        Request::Tower { kind, degree, out } => {
            let v = classify_tower(kind, &degree);
            emit(Certificate::new(CertificateInput::Tower { tower_kind: kind, degree }, v), &out)
        }
        Request::Transfer { base, recipe, out } => match transfer_not_kf(&base, recipe) {
            Ok((derived, v)) => emit(Certificate::new(CertificateInput::Transfer { base, recipe, derived }, v), &out),
            Err(e) => Ok((EXIT_SCOPE, json!({ "error": e.to_string() }))),
        },
        Request::Verify { path } => {
            let text = std::fs::read_to_string(&path)?;
            let result = Certificate::from_json(&text).and_then(|c| verify(&c));
            Ok(match result {
                Ok(()) => (EXIT_OK, json!({ "verified": true })),
                Err(e) => (EXIT_SCOPE, json!({ "verified": false, "error": e.to_string() })),
            })
        }
        Request::Weil { poly, q } => Ok((EXIT_OK, json!({ "weil": all_roots_weil(&poly, &q) }))),
        Request::HondaTate { poly, p, f } => {
            let res = places_above_p(&poly, p, f, DEFAULT_PRECISION)
                .and_then(|pl| isogeny_invariants(&pl, poly.degree()));
            Ok(match res {
                Ok(inv) => (EXIT_OK, serde_json::to_value(inv).expect("invariants serialize")),
                Err(e) => (EXIT_SCOPE, json!({ "error": e.to_string() })),
            })
        }
    }
}

/// Entry point shared by the binary: prints JSON to stdout, errors to stderr.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_request(argv).and_then(run);
    match result {
        Ok((code, v)) => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", canonical_json(&v)) {
                Ok(()) => code,
                Err(_) => EXIT_IO,
            }
        }
        Err(CliError::Usage(m)) => {
            eprintln!("{m}");
            EXIT_USAGE
        }
        Err(e @ CliError::Io(_)) => {
            eprintln!("{e}");
            EXIT_IO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(s: &str) -> Result<Request, CliError> {
        parse_request(std::iter::once("lt-kummer").chain(s.split_whitespace()))
    }

    #[test]
    fn parses_documented_invocations() {
        assert!(matches!(req("classify --p 5 --f 1 --r 1 --c x-5"), Ok(Request::Classify { .. })));
        assert!(matches!(req("weil --poly x^2-x+7 --q 7"), Ok(Request::Weil { .. })));
        let e = req("classify --p 4 --c x-4").unwrap_err();
        assert!(e.to_string().contains("NotPrime"));
        assert!(matches!(req("weil --poly x^2+y --q 7"), Err(CliError::Usage(_))));
        assert!(matches!(req("weil --poly x --q 6"), Err(CliError::Usage(_))));
        assert!(matches!(req("frobnicate"), Err(CliError::Usage(_))));
    }

    #[test]
    fn weil_output() {
        let (code, v) = run(req("weil --poly x^2-x+7 --q 7").unwrap()).unwrap();
        assert_eq!((code, v), (0, json!({ "weil": true })));
    }

    #[test]
    fn classify_exit_codes() {
        let (code, v) = run(req("classify --p 5 --c x-5").unwrap()).unwrap();
        assert_eq!(code, EXIT_OK);
        assert_eq!(v["outcome"], "not_kummer_faithful");
        let (code, v) = run(req("classify --p 5 --r 3 --c x-5").unwrap()).unwrap();
        assert_eq!((code, v["outcome"].as_str()), (EXIT_SCOPE, Some("scope_error")));
    }

    #[test]
    fn file_names_are_stable() {
        assert_eq!(fnv1a(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a(b"a"), 0xaf63dc4c8601ec8c);
    }
}
