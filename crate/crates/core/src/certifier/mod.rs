//! Kummer-faithfulness verdicts for Lubin-Tate extensions `k_pi`, where `k`
//! is tamely ramified over Q_p with uniformizer `pi = c^(1/r)`.
//!
//! The engine tests, in order: whether `q^-1 Nr(pi)` is a root of unity of
//! order dividing `p - 1`; whether `Nr(pi)` is a Weil q-integer; then sweeps
//! every product of conjugates `pi_hat = prod sigma(pi)^{r_sigma}` for Weil
//! q-integers and tries the sufficient criterion for non-faithfulness on
//! each. Anything the criteria cannot settle is reported as undecided.

mod candidates;
mod certificate;
mod replay;
mod tower;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use candidates::{annihilator, candidate_keys, identify, norm_over_qp, root_of_unity_mod, Candidate, LocalContext};
pub use certificate::{Certificate, CertificateError, CertificateInput};
pub use replay::verify;
pub use tower::{classify_tower, transfer_not_kf, Recipe, TowerKind};

use crate::algnum::{all_roots_weil, AlgError, AlgNum};
use crate::factor::{factor_over_q, is_prime_u64};
use crate::hondatate::{
    check_condition_iii_1, check_condition_iii_2, isogeny_invariants, places_above_p, HondaTateError,
};
use crate::padic::{
    canonical_seed, factor_shape_over_qp, select_padic_root, PadicApprox, PadicError, RootSeed, DEFAULT_PRECISION,
    MAX_PRECISION,
};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifierError {
    #[error("outside the supported scope: {0}")]
    Scope(String),
    #[error("ambiguous at this precision: {0}")]
    Ambiguous(String),
    #[error("local factorization undetermined: {0}")]
    Undetermined(String),
    #[error("root isolation failed: {0}")]
    Isolation(String),
    #[error("inconsistent certificate data: {0}")]
    Inconsistent(String),
    #[error("transfer recipe invalid: {0}")]
    RecipeInvalid(String),
}

impl CertifierError {
    /// Errors that more p-adic digits may resolve.
    fn retryable(&self) -> bool {
        matches!(self, CertifierError::Ambiguous(_) | CertifierError::Undetermined(_))
    }
}

impl From<AlgError> for CertifierError {
    fn from(e: AlgError) -> Self {
        match e {
            AlgError::Padic(p) => p.into(),
            AlgError::Isolation(i) => CertifierError::Isolation(i.to_string()),
            other => CertifierError::Scope(other.to_string()),
        }
    }
}

impl From<PadicError> for CertifierError {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::Ambiguous(_) => CertifierError::Ambiguous(e.to_string()),
            PadicError::Undetermined { .. } => CertifierError::Undetermined(e.to_string()),
            other => CertifierError::Scope(other.to_string()),
        }
    }
}

impl From<HondaTateError> for CertifierError {
    fn from(e: HondaTateError) -> Self {
        match e {
            HondaTateError::FactorizationUndetermined(p) => p.into(),
            other => CertifierError::Scope(other.to_string()),
        }
    }
}

/// `k` has residue degree `f` over Q_p and is generated over `Q_{p^f}` by
/// `pi`, a fixed `r`-th root of `c`. `c` is the root of `c_minpoly` in Q_p
/// picked by `c_seed` and must have valuation 1; its Frobenius orbit is then
/// `f` copies of `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LubinTateInput {
    pub p: u64,
    pub f: u32,
    pub r: u64,
    pub c_minpoly: IntPoly,
    pub c_seed: RootSeed,
    #[serde(default = "default_precision")]
    pub precision: u32,
}

fn default_precision() -> u32 {
    DEFAULT_PRECISION
}

impl LubinTateInput {
    /// `k = Q_p(c^(1/r))` with `c` an integer of valuation 1.
    pub fn rational(p: u64, r: u64, c: i64) -> Self {
        LubinTateInput {
            p,
            f: 1,
            r,
            c_minpoly: IntPoly::from_i64(&[-c, 1]),
            c_seed: RootSeed::slope(1),
            precision: DEFAULT_PRECISION,
        }
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.f)
    }

    /// Checks that the data describes a uniformizer `c^(1/r)` of a finite extension.
    pub fn validate_structure(&self) -> Result<(), CertifierError> {
        let scope = |m: String| Err(CertifierError::Scope(m));
        if !is_prime_u64(self.p) {
            return scope(format!("{} is not prime", self.p));
        }
        if self.f == 0 || self.r == 0 {
            return scope("f and r must be positive".into());
        }
        if self.c_seed.valuation != 1 {
            return scope("c must have valuation 1".into());
        }
        let fac = factor_over_q(&self.c_minpoly);
        if fac.len() != 1 || fac[0].1 != 1 || self.c_minpoly != self.c_minpoly.primitive_part() {
            return scope(format!("minimal polynomial of c {} is not primitive irreducible", self.c_minpoly));
        }
        Ok(())
    }

    /// Structural checks plus `k / Q_p` Galois with its roots of unity in Q_p.
    pub fn validate(&self) -> Result<(), CertifierError> {
        self.validate_structure()?;
        let q_minus_1 = self.q() - 1;
        if &q_minus_1 % self.r != BigInt::from(0) {
            return Err(CertifierError::Scope(format!(
                "r = {} does not divide q - 1, so k is not Galois over Q_p",
                self.r
            )));
        }
        if !(self.p - 1).is_multiple_of(self.r) {
            return Err(CertifierError::Scope(format!(
                "r = {} divides q - 1 but not p - 1; unramified roots of unity are unsupported",
                self.r
            )));
        }
        Ok(())
    }

    pub fn c_at(&self, precision: u32) -> Result<AlgNum, CertifierError> {
        Ok(AlgNum::padic_root(&self.c_minpoly, self.p, self.c_seed, precision)?)
    }

    /// The same input with `c_seed` replaced by the shortest seed selecting
    /// the same root; unchanged if `c` cannot be selected.
    pub fn canonical(&self) -> LubinTateInput {
        let seed = select_padic_root(&self.c_minpoly, self.p, self.c_seed, self.precision.max(1))
            .ok()
            .and_then(|c| canonical_seed(&self.c_minpoly, self.p, &c));
        LubinTateInput { c_seed: seed.unwrap_or(self.c_seed), ..self.clone() }
    }

    fn c_approx(&self, precision: u32) -> Result<PadicApprox, CertifierError> {
        Ok(self.c_at(precision)?.padic().unwrap().clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    NotKummerFaithful,
    KummerFaithful,
    Undecided,
    ScopeError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `q^-1 Nr(pi)` is a root of unity of order dividing `p - 1`.
    TorallyNotKf,
    /// `Nr(pi)` is a Weil q-integer.
    NormWeil,
    /// Some `pi_hat` satisfies the sufficient criterion for non-faithfulness.
    Theorem3,
    /// No `pi_hat` is a Weil q-integer and the norm test fails.
    Contrapositive1,
    /// Weil candidates exist but none meets the sufficient criterion.
    QuestionGap,
    /// Inherited from a non-faithful base field.
    Transfer,
    /// Decided by quasi-finiteness of the degree.
    TowerDegree,
    Scope,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub clause: Clause,
    pub witness: Value,
    pub precision_used: u32,
}

impl Verdict {
    fn scope(e: &CertifierError, precision: u32) -> Verdict {
        Verdict {
            outcome: Outcome::ScopeError,
            clause: Clause::Scope,
            witness: json!({ "reason": e.to_string() }),
            precision_used: precision,
        }
    }
}

/// Facts shared by the clauses, computed once per precision.
struct Analysis {
    norm: AlgNum,
    scaled_norm_order: Option<u64>,
    norm_weil: bool,
    /// Weil status of the annihilator for each `s`.
    weil_by_s: Vec<bool>,
    /// Unit part of `c / p` modulo `p^precision`, naming the embedding used.
    c_residue: String,
}

fn analyze(input: &LubinTateInput, precision: u32) -> Result<Analysis, CertifierError> {
    let c = input.c_at(precision)?;
    let norm = norm_over_qp(input, &c)?;
    let q = input.q();
    let scaled = norm.product(&AlgNum::rational(&BigRational::new(BigInt::from(1), q.clone())))?;
    let scaled_norm_order = scaled.root_of_unity_order();
    let norm_weil = norm.is_weil_q_integer(&q)?;
    let weil_by_s = (0..=input.f as u64 * input.r)
        .map(|s| all_roots_weil(&annihilator(&input.c_minpoly, input.r, s), &q))
        .collect();
    let c_residue = c.padic().expect("p-adic root").residue.to_string();
    Ok(Analysis { norm, scaled_norm_order, norm_weil, weil_by_s, c_residue })
}

/// Outcome of the sufficient criterion on one Weil candidate.
#[derive(Debug, Clone, Serialize)]
struct CandidateCheck {
    a: u64,
    s: u64,
    tuple: Vec<u8>,
    pi_hat_minpoly: IntPoly,
    local_degree: usize,
    local_factors: Vec<crate::padic::LocalFactor>,
    places: Option<Vec<crate::hondatate::PlaceData>>,
    condition_ii: bool,
    condition_iii_1: bool,
    condition_iii_2: bool,
}

fn check_candidate(
    input: &LubinTateInput,
    ctx: &LocalContext,
    cand: &Candidate,
    budget: u32,
) -> Result<CandidateCheck, CertifierError> {
    let g = identify(input, ctx, cand.a, cand.s)?;
    let q = input.q();
    let x2_minus_q = &IntPoly::monomial(BigInt::from(1), 2) - &IntPoly::constant(q);
    if x2_minus_q.div_exact(&g).is_some() {
        // a real Weil candidate forces q^-1 Nr into mu_{p-1}, which was already ruled out
        return Err(CertifierError::Inconsistent(format!(
            "pi_hat with minimal polynomial {g} squares to q but the norm test failed"
        )));
    }
    let t = (cand.s % input.r) as usize;
    let local_degree = input.r as usize / num_integer::gcd(t, input.r as usize);
    let local_factors = factor_shape_over_qp(&g, input.p, budget)?;
    let degrees: Vec<usize> = local_factors.iter().map(|l| l.degree).collect();
    let c_shapes = factor_shape_over_qp(&input.c_minpoly, input.p, budget)?;
    let condition_ii = c_shapes.iter().any(|l| l.degree == 1 && l.slope == BigRational::from_integer(1.into()));
    let places = places_above_p(&g, input.p, input.f, budget)?;
    let condition_iii_1 = check_condition_iii_1(&places, input.f);
    Ok(CandidateCheck {
        a: cand.a,
        s: cand.s,
        tuple: cand.tuple.clone(),
        local_degree,
        condition_iii_2: check_condition_iii_2(&degrees, local_degree),
        local_factors,
        places: Some(places),
        pi_hat_minpoly: g,
        condition_ii,
        condition_iii_1,
    })
}

fn norm_witness(a: &Analysis) -> Value {
    json!({
        "norm_minpoly": a.norm.minpoly(),
        "scaled_norm_root_of_unity_order": a.scaled_norm_order,
        "norm_weil": a.norm_weil,
    })
}

fn classify_at(input: &LubinTateInput, precision: u32, audit: bool) -> Result<Verdict, CertifierError> {
    let budget = precision;
    let an = analyze(input, precision)?;
    let verdict = |outcome, clause, witness| Verdict { outcome, clause, witness, precision_used: precision };
    let keys = candidate_keys(input.f, input.r);
    let weil_keys: Vec<&Candidate> = keys.iter().filter(|c| an.weil_by_s[c.s as usize]).collect();
    let audit_block = || {
        json!({
            "weil_candidates": weil_keys.iter().map(|c| json!([c.a, c.s])).collect::<Vec<_>>(),
            "weil_by_s": an.weil_by_s,
        })
    };
    let with_audit = |mut w: Value| {
        w["c_residue"] = json!(an.c_residue);
        if audit {
            w["audit"] = audit_block();
        }
        w
    };

    if an.scaled_norm_order.is_some_and(|m| (input.p - 1).is_multiple_of(m)) {
        return Ok(verdict(Outcome::NotKummerFaithful, Clause::TorallyNotKf, with_audit(norm_witness(&an))));
    }
    if an.norm_weil {
        return Ok(verdict(Outcome::NotKummerFaithful, Clause::NormWeil, with_audit(norm_witness(&an))));
    }
    if weil_keys.is_empty() {
        let sweep: Vec<Value> = (0..an.weil_by_s.len())
            .map(|s| {
                let a_values: Vec<u64> = keys.iter().filter(|c| c.s == s as u64).map(|c| c.a).collect();
                json!({ "s": s, "a_values": a_values, "weil": false })
            })
            .collect();
        let mut w = norm_witness(&an);
        w["sweep"] = Value::Array(sweep);
        w["candidate_count"] = json!(keys.len());
        return Ok(verdict(Outcome::KummerFaithful, Clause::Contrapositive1, with_audit(w)));
    }
    let ctx = LocalContext::new(input, &input.c_approx(precision)?);
    let mut checked = Vec::new();
    for cand in &weil_keys {
        let chk = check_candidate(input, &ctx, cand, budget)?;
        if chk.condition_ii && chk.condition_iii_1 && chk.condition_iii_2 {
            let places = chk.places.clone().unwrap();
            let inv = isogeny_invariants(&places, chk.pi_hat_minpoly.degree())?;
            let w = json!({
                "tuple": chk.tuple,
                "a": chk.a,
                "s": chk.s,
                "pi_hat_minpoly": chk.pi_hat_minpoly,
                "invariants": inv,
                "local_factors": chk.local_factors,
                "local_degree": chk.local_degree,
                "norm_minpoly": an.norm.minpoly(),
                "conditions": { "ii": true, "iii_1": true, "iii_2": true },
            });
            return Ok(verdict(Outcome::NotKummerFaithful, Clause::Theorem3, with_audit(w)));
        }
        checked.push(chk);
    }
    let w = json!({ "norm_minpoly": an.norm.minpoly(), "weil_candidates": checked });
    Ok(verdict(Outcome::Undecided, Clause::QuestionGap, with_audit(w)))
}

/// Classify `k_pi`, doubling the p-adic precision from `input.precision` up
/// to the ceiling while the local computations are ambiguous.
pub fn classify(input: &LubinTateInput) -> Verdict {
    classify_with(input, false)
}

/// As [`classify`], additionally recording the full candidate sweep even when
/// an earlier clause decides the outcome.
pub fn classify_audit(input: &LubinTateInput) -> Verdict {
    classify_with(input, true)
}

fn classify_with(input: &LubinTateInput, audit: bool) -> Verdict {
    if let Err(e) = input.validate() {
        return Verdict::scope(&e, input.precision);
    }
    let mut precision = input.precision.max(1);
    loop {
        match classify_at(input, precision, audit) {
            Ok(v) => return v,
            Err(e) if e.retryable() && precision < MAX_PRECISION => precision = (precision * 2).min(MAX_PRECISION),
            Err(e) => return Verdict::scope(&e, precision),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qp_with_uniformizer_p_is_torally_not_kf() {
        let v = classify(&LubinTateInput::rational(5, 1, 5));
        assert_eq!((v.outcome, v.clause), (Outcome::NotKummerFaithful, Clause::TorallyNotKf));
    }

    #[test]
    fn qp_with_uniformizer_30_is_kf() {
        let v = classify(&LubinTateInput::rational(5, 1, 30));
        assert_eq!((v.outcome, v.clause), (Outcome::KummerFaithful, Clause::Contrapositive1));
    }

    #[test]
    fn ordinary_weil_uniformizer_is_norm_weil() {
        let input = LubinTateInput {
            p: 7,
            f: 1,
            r: 1,
            c_minpoly: IntPoly::from_i64(&[7, -1, 1]),
            c_seed: RootSeed::slope(1),
            precision: 64,
        };
        let v = classify(&input);
        assert_eq!((v.outcome, v.clause), (Outcome::NotKummerFaithful, Clause::NormWeil));
    }

    #[test]
    fn scope_errors() {
        let mut bad = LubinTateInput::rational(5, 3, 5);
        assert_eq!(classify(&bad).outcome, Outcome::ScopeError);
        bad.r = 2;
        bad.f = 2;
        bad.p = 7;
        bad.c_minpoly = IntPoly::from_i64(&[-7, 1]);
        // r = 2 divides 6, fine
        assert_ne!(classify(&bad).outcome, Outcome::ScopeError);
        let wrong_valuation = LubinTateInput { c_seed: RootSeed::slope(0), ..LubinTateInput::rational(5, 1, 5) };
        assert_eq!(classify(&wrong_valuation).outcome, Outcome::ScopeError);
    }

    #[test]
    fn norm_sign_pattern() {
        let input = LubinTateInput::rational(5, 2, 5);
        let c = input.c_at(32).unwrap();
        assert_eq!(norm_over_qp(&input, &c).unwrap().minpoly(), &IntPoly::from_i64(&[5, 1]));
        let base = LubinTateInput::rational(5, 1, 5);
        assert_eq!(norm_over_qp(&base, &base.c_at(32).unwrap()).unwrap().minpoly(), &IntPoly::from_i64(&[-5, 1]));
    }
}
