//! Non-faithful Lubin-Tate inputs built from imaginary quadratic fields in
//! which `p` splits into principal primes.
//!
//! For fields `F_1, ..., F_r` with `p = omega_i * omega_i^c`, the uniformizer
//! `pi_0 = omega_1 * omega_2^c * ... * omega_r^c` of Q_p (embedded so that
//! every `omega_i` lies in the maximal ideal) has an `r`-th root `pi` which is
//! itself a Weil p-integer, and `k_pi` over `k = Q_p(pi)` is not faithful.

use num_bigint::BigInt;
use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::algnum::{AlgError, AlgNum};
use crate::certifier::{classify, identify, CertifierError, Clause, LocalContext, LubinTateInput, Outcome, Verdict};
use crate::factor::is_prime_u64;
use crate::modp::FpPoly;
use crate::padic::{select_padic_root, RootSeed, DEFAULT_PRECISION};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FactoryError {
    #[error("some nonempty product of the discriminants {0:?} is a square, so the fields are not disjoint")]
    DisjointnessFailure(Vec<i64>),
    #[error("r = {r} does not divide p - 1 = {}", p - 1)]
    RadicalNotDividing { p: u64, r: u64 },
    #[error("r = {r} needs {r} witnesses, got {got}")]
    WitnessCount { r: u64, got: usize },
    #[error("witness for d = {0} is not a split principal prime above p")]
    BadWitness(i64),
    #[error("algebraic arithmetic failed: {0}")]
    Arithmetic(#[from] AlgError),
    #[error(transparent)]
    Certifier(#[from] CertifierError),
    #[error("constructed input classified as {outcome:?} via {clause:?}")]
    FactoryContractViolation { outcome: Outcome, clause: Clause },
}

/// A generator `omega = (x + y sqrt(d)) / den` of a prime above `p` in the
/// maximal order of Q(sqrt(d)), with `den = 2` exactly when `d = 1 mod 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPrincipalWitness {
    pub d: i64,
    pub x: i64,
    pub y: i64,
    pub den: i64,
    /// The root of `t^2 - tr(omega) t + p` of valuation 1.
    pub omega: AlgNum,
    /// `p / omega`, the unit root.
    pub conjugate: AlgNum,
}

impl SplitPrincipalWitness {
    pub fn new(p: u64, d: i64, x: i64, y: i64) -> Result<Self, FactoryError> {
        let den = if d.rem_euclid(4) == 1 { 2 } else { 1 };
        if x <= 0 || y <= 0 || x * x - d * y * y != den * den * p as i64 {
            return Err(FactoryError::BadWitness(d));
        }
        let trace = 2 * x / den;
        let f = IntPoly::from_i64(&[p as i64, -trace, 1]);
        let omega = AlgNum::padic_root(&f, p, RootSeed::slope(1), DEFAULT_PRECISION)?;
        let conjugate = AlgNum::padic_root(&f, p, RootSeed::slope(0), DEFAULT_PRECISION)?;
        Ok(SplitPrincipalWitness { d, x, y, den, omega, conjugate })
    }

    /// `omega` written out, e.g. `(3+1√-11)/2`.
    pub fn omega_string(&self) -> String {
        let num = format!("{}+{}√{}", self.x, self.y, self.d);
        if self.den == 2 {
            format!("({num})/2")
        } else {
            num
        }
    }
}

/// Result of the discriminant search: the witnesses found, and the `d` in
/// range for which `p` splits but no principal generator exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSearch {
    pub witnesses: Vec<SplitPrincipalWitness>,
    pub skipped: Vec<i64>,
}

fn is_squarefree(n: u64) -> bool {
    (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k * k))
}

/// Square roots of `a` modulo the odd prime `p`.
fn sqrt_mod(a: i64, p: u64) -> Vec<u64> {
    let a = a.rem_euclid(p as i64);
    FpPoly::from_int(&IntPoly::from_i64(&[-a, 0, 1]), p).roots()
}

/// A solution of `x^2 + D y^2 = m` with `x, y > 0`, where `m` is `p` or
/// `4p`, by Cornacchia's algorithm. Primitive solutions are unique up to
/// sign (and the units of Z[zeta_3] when `D = 3`), so this decides solvability.
pub fn cornacchia(dd: u64, p: u64, four: bool) -> Option<(i64, i64)> {
    let m = if four { 4 * p } else { p };
    let roots = sqrt_mod(-(dd as i64), p);
    let mut r0 = *roots.iter().max()?;
    let (mut a, bound) = if four {
        // the root must have the parity of -D, that is be odd
        if r0 % 2 == 0 {
            r0 = p - r0;
        }
        (2 * p, (4 * p).sqrt())
    } else {
        (p, p.sqrt())
    };
    let mut b = r0;
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = m.checked_sub(b * b)?;
    if rest % dd != 0 {
        return None;
    }
    let c = rest / dd;
    let y = c.sqrt();
    (y > 0 && y * y == c).then_some((b as i64, y as i64))
}

/// The `count` split principal fields `Q(sqrt(d))` of smallest `|d|`, searching
/// squarefree `d < 0` with `(d / p) = 1` down to `-4p`.
pub fn find_split_principal(p: u64, count: usize) -> SplitSearch {
    assert!(p > 2 && is_prime_u64(p), "p must be an odd prime");
    let mut out = SplitSearch { witnesses: Vec::new(), skipped: Vec::new() };
    for dd in 1..=4 * p {
        if out.witnesses.len() == count {
            break;
        }
        let d = -(dd as i64);
        if !is_squarefree(dd) || dd % p == 0 || sqrt_mod(d, p).is_empty() {
            continue;
        }
        match cornacchia(dd, p, d.rem_euclid(4) == 1) {
            Some((x, y)) => out
                .witnesses
                .push(SplitPrincipalWitness::new(p, d, x, y).expect("Cornacchia output is a generator")),
            None => out.skipped.push(d),
        }
    }
    out
}

/// Squarefree kernel of `|n|` as its sorted prime divisors of odd exponent.
fn odd_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        let mut e = 0;
        while n.is_multiple_of(k) {
            n /= k;
            e += 1;
        }
        if e % 2 == 1 {
            out.push(k);
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether no nonempty subproduct of the `d`s is a rational square, so that
/// the compositum has Galois group the product of the `Gal(F_i / Q)`.
pub fn linearly_disjoint(ds: &[i64]) -> bool {
    let kernels: Vec<Vec<u64>> = ds.iter().map(|d| odd_primes(d.unsigned_abs())).collect();
    (1u64..1 << ds.len()).all(|mask| {
        let chosen = (0..ds.len()).filter(|i| mask >> i & 1 == 1);
        let mut negative = false;
        let mut kernel: std::collections::BTreeSet<u64> = Default::default();
        for i in chosen {
            negative ^= ds[i] < 0;
            for &l in &kernels[i] {
                if !kernel.remove(&l) {
                    kernel.insert(l);
                }
            }
        }
        negative || !kernel.is_empty()
    })
}

/// A constructed input together with the data it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example {
    pub input: LubinTateInput,
    pub witnesses: Vec<SplitPrincipalWitness>,
    /// `pi_0 = omega_1 omega_2^c ... omega_r^c` in the fixed embedding.
    pub c: AlgNum,
    /// Minimal polynomial of `pi = pi_0^(1/r)` over Q.
    pub pi_minpoly: IntPoly,
}

pub fn build_example(p: u64, r: u64, witnesses: &[SplitPrincipalWitness]) -> Result<Example, FactoryError> {
    if r == 0 || !(p - 1).is_multiple_of(r) {
        return Err(FactoryError::RadicalNotDividing { p, r });
    }
    if witnesses.len() as u64 != r {
        return Err(FactoryError::WitnessCount { r, got: witnesses.len() });
    }
    let ds: Vec<i64> = witnesses.iter().map(|w| w.d).collect();
    if !linearly_disjoint(&ds) {
        return Err(FactoryError::DisjointnessFailure(ds));
    }
    let mut c = witnesses[0].omega.clone();
    for w in &witnesses[1..] {
        c = c.product(&w.conjugate)?;
    }
    let approx = c.padic().expect("built from p-adic selectors");
    // the fewest unit digits that single out c among the roots of its minimal polynomial
    let c_seed = (1..=DEFAULT_PRECISION)
        .find_map(|k| {
            let digits = BigInt::from(p).pow(k);
            let t = u64::try_from(&approx.residue % &digits).ok()?;
            let seed = RootSeed::with_residue(1, t, k);
            select_padic_root(c.minpoly(), p, seed, 2).is_ok().then_some(seed)
        })
        .ok_or(FactoryError::Certifier(CertifierError::Ambiguous("c is not isolated by its residue".into())))?;
    let input = LubinTateInput {
        p,
        f: 1,
        r,
        c_minpoly: c.minpoly().clone(),
        c_seed,
        precision: DEFAULT_PRECISION,
    };
    let ctx = LocalContext::new(&input, &input.c_at(DEFAULT_PRECISION)?.padic().unwrap().clone());
    let pi_minpoly = identify(&input, &ctx, 0, 1)?;
    Ok(Example { input, witnesses: witnesses.to_vec(), c, pi_minpoly })
}

/// Classify a constructed input, which must come out non-faithful through
/// the norm or through a Weil candidate.
pub fn verify_example(input: &LubinTateInput) -> Result<Verdict, FactoryError> {
    let v = classify(input);
    match (v.outcome, v.clause) {
        (Outcome::NotKummerFaithful, Clause::NormWeil | Clause::Theorem3) => Ok(v),
        (outcome, clause) => Err(FactoryError::FactoryContractViolation { outcome, clause }),
    }
}
