//! Independent replay of certificates. Everything here is recomputed from the
//! algebraic primitives (resultants, factorization over Q, p-adic roots, local
//! factor shapes, Honda-Tate data) rather than through the classifier, so a
//! certificate verifies only if the primitives reproduce every field.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{Certificate, CertificateError, CertificateInput, Clause, LubinTateInput, Outcome, Recipe};
use crate::algnum::{all_roots_weil, root_of_unity_order};
use crate::factor::{factor_over_q, is_prime_u64};
use crate::hondatate::{check_condition_iii_1, check_condition_iii_2, isogeny_invariants, places_above_p};
use crate::padic::{
    canonical_seed, factor_shape_over_qp, hensel_lift, select_padic_root, PadicError, PadicZeroTest, RamifiedAlgebra,
    MAX_PRECISION,
};
use crate::poly::IntPoly;
use crate::resultant::{resultant_y, BiPoly};

/// Why a replay at one precision did not produce a verdict.
enum Stop {
    Retry,
    Fail(String),
}

impl From<PadicError> for Stop {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::Ambiguous(_) | PadicError::Undetermined { .. } => Stop::Retry,
            other => Stop::Fail(other.to_string()),
        }
    }
}

impl From<crate::hondatate::HondaTateError> for Stop {
    fn from(e: crate::hondatate::HondaTateError) -> Self {
        match e {
            crate::hondatate::HondaTateError::FactorizationUndetermined(p) => p.into(),
            other => Stop::Fail(other.to_string()),
        }
    }
}

struct Replayed {
    outcome: Outcome,
    clause: Clause,
    witness: Value,
    precision: u32,
}

/// Check a certificate by recomputing its verdict, witness and precision.
pub fn verify(cert: &Certificate) -> Result<(), CertificateError> {
    let got = match &cert.input {
        CertificateInput::Tower { tower_kind, degree } => {
            let qf = degree.is_quasi_finite();
            Replayed {
                outcome: if qf { Outcome::KummerFaithful } else { Outcome::NotKummerFaithful },
                clause: Clause::TowerDegree,
                witness: json!({ "tower_kind": tower_kind, "degree": degree, "quasi_finite": qf }),
                precision: 0,
            }
        }
        CertificateInput::LubinTate(input) => {
            check_seed(input)?;
            let audit = cert.witness.get("audit").is_some();
            ladder(input, audit)?
        }
        CertificateInput::Transfer { base, recipe, derived } => {
            check_seed(base)?;
            replay_transfer(base, *recipe, derived)?
        }
    };
    if cert.outcome == Outcome::ScopeError {
        return Err(CertificateError::Unreplayable("scope errors carry no witness".into()));
    }
    compare("outcome", &cert.outcome, &got.outcome)?;
    compare("clause", &cert.clause, &got.clause)?;
    compare("precision_used", &cert.precision_used, &got.precision)?;
    let claimed = normalize_tuples(&cert.witness, &cert.input)?;
    let actual = normalize_tuples(&got.witness, &cert.input)?;
    if claimed != actual {
        return Err(mismatch("witness", &claimed, &actual));
    }
    Ok(())
}

fn mismatch<T: serde::Serialize>(field: &str, claimed: &T, actual: &T) -> CertificateError {
    let render = |v: &T| serde_json::to_string(v).unwrap_or_default();
    CertificateError::Mismatch { field: field.into(), claimed: render(claimed), actual: render(actual) }
}

fn compare<T: PartialEq + serde::Serialize>(field: &str, claimed: &T, actual: &T) -> Result<(), CertificateError> {
    if claimed == actual {
        Ok(())
    } else {
        Err(mismatch(field, claimed, actual))
    }
}

/// Certificates name `c` by its shortest isolating seed, so that no two
/// seeds describe the same certified field.
fn check_seed(input: &LubinTateInput) -> Result<(), CertificateError> {
    let c = select_padic_root(&input.c_minpoly, input.p, input.c_seed, input.precision.max(1))
        .map_err(|e| CertificateError::Unreplayable(e.to_string()))?;
    let canonical = canonical_seed(&input.c_minpoly, input.p, &c)
        .ok_or_else(|| CertificateError::Unreplayable("c has no isolating seed".into()))?;
    compare("input.c_seed", &input.c_seed, &canonical)
}

/// Replay at each rung `precision * 2^k` and report the first that resolves.
fn ladder(input: &LubinTateInput, audit: bool) -> Result<Replayed, CertificateError> {
    let mut precision = input.precision.max(1);
    loop {
        match replay_at(input, precision, audit) {
            Ok(r) => return Ok(r),
            Err(Stop::Retry) if precision < MAX_PRECISION => precision = (precision * 2).min(MAX_PRECISION),
            Err(Stop::Retry) => return Err(CertificateError::Unreplayable("unresolved at the precision ceiling".into())),
            Err(Stop::Fail(m)) => return Err(CertificateError::Unreplayable(m)),
        }
    }
}

fn replay_transfer(base: &LubinTateInput, recipe: Recipe, derived: &LubinTateInput) -> Result<Replayed, CertificateError> {
    let b = ladder(base, false)?;
    if b.outcome != Outcome::NotKummerFaithful {
        return Err(CertificateError::Unreplayable("the base field is not shown non-faithful".into()));
    }
    let (expect, sign) = match recipe {
        Recipe::NthRoot { n } if n > 0 => (LubinTateInput { r: base.r * n, ..base.clone() }, if n % 2 == 0 { -1 } else { 1 }),
        Recipe::UnramifiedNormOne { f_prime } if f_prime > 0 => {
            (LubinTateInput { f: base.f * f_prime, ..base.clone() }, 1)
        }
        _ => return Err(CertificateError::Unreplayable("degenerate recipe".into())),
    };
    compare("input.derived", derived, &expect)?;
    let ratio = IntPoly::from_i64(&[-sign, 1]);
    Ok(Replayed {
        outcome: Outcome::NotKummerFaithful,
        clause: Clause::Transfer,
        witness: json!({
            "recipe": recipe,
            "base_clause": b.clause,
            "base_witness": b.witness,
            "ratio_minpoly": ratio,
            "ratio_order": root_of_unity_order(&ratio),
        }),
        precision: b.precision,
    })
}

fn in_scope(input: &LubinTateInput) -> Result<(), Stop> {
    let m = &input.c_minpoly;
    let irreducible = matches!(factor_over_q(m).as_slice(), [(_, 1)]) && *m == m.primitive_part();
    let ok = is_prime_u64(input.p)
        && input.f > 0
        && input.r > 0
        && (input.p - 1).is_multiple_of(input.r)
        && input.c_seed.valuation == 1
        && irreducible;
    if ok {
        Ok(())
    } else {
        Err(Stop::Fail("input is outside the certified scope".into()))
    }
}

/// `(s, a)` pairs reachable as `sum r_sigma` and `sum j r_sigma mod r` over
/// all 0/1 choices on the `f r` embeddings.
fn reachable_keys(f: u32, r: u64) -> BTreeSet<(u64, u64)> {
    let mut set = BTreeSet::from([(0u64, 0u64)]);
    for _ in 0..f {
        for j in 0..r {
            let next: Vec<_> = set.iter().map(|&(s, a)| (s + 1, (a + j) % r)).collect();
            set.extend(next);
        }
    }
    set
}

fn zeta_mod(p: u64, r: u64, n: u32) -> BigInt {
    if r == 1 {
        return BigInt::one();
    }
    let pb = BigInt::from(p);
    let exact_order = |z: &BigInt| (1..r).filter(|d| r.is_multiple_of(*d)).all(|d| z.modpow(&BigInt::from(d), &pb) != BigInt::one());
    let z = (2..p)
        .map(|g| BigInt::from(g).modpow(&BigInt::from((p - 1) / r), &pb))
        .find(exact_order)
        .expect("r divides p - 1");
    let xr1 = &IntPoly::monomial(BigInt::one(), r as usize) - &IntPoly::one();
    hensel_lift(&xr1, p, &z, n).expect("x^r - 1 is separable mod p")
}

fn replay_at(input: &LubinTateInput, precision: u32, audit: bool) -> Result<Replayed, Stop> {
    in_scope(input)?;
    let (p, f, r) = (input.p, input.f, input.r);
    let q = BigInt::from(p).pow(f);
    let c = select_padic_root(&input.c_minpoly, p, input.c_seed, precision)?;

    // Nr(pi) = eps c^f with eps = (-1)^((r-1) f)
    let eps = if (r - 1) * f as u64 % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    let norm_ann = resultant_y(&input.c_minpoly, &BiPoly::binomial(1, &eps, f as usize));
    let target = if eps.is_one() { c.pow(f) } else { c.pow(f).neg() };
    let hits: Vec<IntPoly> = factor_over_q(&norm_ann)
        .into_iter()
        .map(|(g, _)| g)
        .filter(|g| target.eval_zero_test(g) == PadicZeroTest::ZeroToPrecision)
        .collect();
    let norm = match hits.as_slice() {
        [g] => g.clone(),
        [] => return Err(Stop::Fail("no factor of the norm annihilator vanishes at the norm".into())),
        _ => return Err(Stop::Retry),
    };
    let scaled_order = root_of_unity_order(&norm.scale_var(&q).primitive_part());
    let norm_weil = all_roots_weil(&norm, &q);
    let ann = |s: u64| resultant_y(&input.c_minpoly, &BiPoly::binomial(r as usize, &BigInt::one(), s as usize)).primitive_part();
    let weil_by_s: Vec<bool> = (0..=f as u64 * r).map(|s| all_roots_weil(&ann(s), &q)).collect();
    let keys = reachable_keys(f, r);
    let weil_keys: Vec<(u64, u64)> = keys.iter().copied().filter(|&(s, _)| weil_by_s[s as usize]).collect();

    let norm_fields = json!({
        "norm_minpoly": norm,
        "scaled_norm_root_of_unity_order": scaled_order,
        "norm_weil": norm_weil,
    });
    let c_residue = c.residue.to_string();
    let finish = |outcome, clause, mut witness: Value| {
        witness["c_residue"] = json!(c_residue);
        if audit {
            witness["audit"] = json!({
                "weil_candidates": weil_keys.iter().map(|&(s, a)| json!([a, s])).collect::<Vec<_>>(),
                "weil_by_s": weil_by_s,
            });
        }
        Ok(Replayed { outcome, clause, witness, precision })
    };

    if scaled_order.is_some_and(|m| (p - 1) % m == 0) {
        return finish(Outcome::NotKummerFaithful, Clause::TorallyNotKf, norm_fields);
    }
    if norm_weil {
        return finish(Outcome::NotKummerFaithful, Clause::NormWeil, norm_fields);
    }
    if weil_keys.is_empty() {
        let sweep: Vec<Value> = (0..weil_by_s.len() as u64)
            .map(|s| {
                let a_values: Vec<u64> = keys.iter().filter(|k| k.0 == s).map(|k| k.1).collect();
                json!({ "s": s, "a_values": a_values, "weil": false })
            })
            .collect();
        let mut w = norm_fields;
        w["sweep"] = Value::Array(sweep);
        w["candidate_count"] = json!(keys.len());
        return finish(Outcome::KummerFaithful, Clause::Contrapositive1, w);
    }

    let n = c.absolute_precision() as u32;
    let modulus = BigInt::from(p).pow(n);
    let c_int = c.to_integer().expect("valuation 1").mod_floor(&modulus);
    let alg = RamifiedAlgebra::new(p, n, r as usize, &c_int);
    let zeta = zeta_mod(p, r, n);
    let one = BigRational::one();
    let condition_ii = factor_shape_over_qp(&input.c_minpoly, p, precision)?
        .iter()
        .any(|l| l.degree == 1 && l.slope == one);
    let x2_minus_q = IntPoly::new(vec![-q.clone(), BigInt::zero(), BigInt::one()]);

    let mut checked = Vec::new();
    for &(s, a) in &weil_keys {
        let factors: Vec<IntPoly> = factor_over_q(&ann(s)).into_iter().map(|(g, _)| g).collect();
        let g = if factors.len() == 1 {
            factors[0].clone()
        } else {
            let coeff = zeta.modpow(&BigInt::from(a), &modulus) * c_int.modpow(&BigInt::from(s / r), &modulus);
            let x = alg.monomial(&coeff, (s % r) as usize);
            let hits: Vec<&IntPoly> = factors.iter().filter(|g| alg.is_zero(&alg.eval(g, &x))).collect();
            match hits.as_slice() {
                [g] => (*g).clone(),
                [] => return Err(Stop::Fail(format!("no factor vanishes at zeta^{a} pi^{s}"))),
                _ => return Err(Stop::Retry),
            }
        };
        if x2_minus_q.div_exact(&g).is_some() {
            return Err(Stop::Fail("a real Weil candidate contradicts the norm test".into()));
        }
        let local_degree = r as usize / (s % r).gcd(&r) as usize;
        let local_factors = factor_shape_over_qp(&g, p, precision)?;
        let degrees: Vec<usize> = local_factors.iter().map(|l| l.degree).collect();
        let places = places_above_p(&g, p, f, precision)?;
        let iii_1 = check_condition_iii_1(&places, f);
        let iii_2 = check_condition_iii_2(&degrees, local_degree);
        if condition_ii && iii_1 && iii_2 {
            let inv = isogeny_invariants(&places, g.degree())?;
            let w = json!({
                "tuple": Value::Null,
                "a": a,
                "s": s,
                "pi_hat_minpoly": g,
                "invariants": inv,
                "local_factors": local_factors,
                "local_degree": local_degree,
                "norm_minpoly": norm,
                "conditions": { "ii": true, "iii_1": true, "iii_2": true },
            });
            return finish(Outcome::NotKummerFaithful, Clause::Theorem3, w);
        }
        checked.push(json!({
            "a": a,
            "s": s,
            "tuple": Value::Null,
            "pi_hat_minpoly": g,
            "local_degree": local_degree,
            "local_factors": local_factors,
            "places": places,
            "condition_ii": condition_ii,
            "condition_iii_1": iii_1,
            "condition_iii_2": iii_2,
        }));
    }
    finish(Outcome::Undecided, Clause::QuestionGap, json!({ "norm_minpoly": norm, "weil_candidates": checked }))
}

/// Check that every candidate's `tuple` realizes its `(a, s)` key, then blank
/// it: any realizing tuple is an equally valid witness.
fn normalize_tuples(w: &Value, input: &CertificateInput) -> Result<Value, CertificateError> {
    let (f, r) = match input {
        CertificateInput::LubinTate(i) => (i.f, i.r),
        CertificateInput::Transfer { base, .. } => (base.f, base.r),
        CertificateInput::Tower { .. } => return Ok(w.clone()),
    };
    let mut w = w.clone();
    blank(&mut w, f, r)?;
    Ok(w)
}

fn blank(v: &mut Value, f: u32, r: u64) -> Result<(), CertificateError> {
    match v {
        Value::Object(map) => {
            if let Some(t) = map.get("tuple") {
                if !t.is_null() {
                    let bad = || CertificateError::Mismatch {
                        field: "tuple".into(),
                        claimed: t.to_string(),
                        actual: "a 0/1 vector realizing (a, s)".into(),
                    };
                    let tuple: Vec<u64> = serde_json::from_value(t.clone()).map_err(|_| bad())?;
                    let a = map.get("a").and_then(Value::as_u64);
                    let s = map.get("s").and_then(Value::as_u64);
                    let ok = tuple.len() as u64 == f as u64 * r
                        && tuple.iter().all(|&x| x <= 1)
                        && Some(tuple.iter().sum::<u64>()) == s
                        && Some(tuple.iter().enumerate().map(|(i, &x)| (i as u64 % r) * x).sum::<u64>() % r) == a;
                    if !ok {
                        return Err(bad());
                    }
                }
                map.insert("tuple".into(), Value::Null);
            }
            for (_, x) in map.iter_mut() {
                blank(x, f, r)?;
            }
        }
        Value::Array(xs) => {
            for x in xs {
                blank(x, f, r)?;
            }
        }
        _ => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::{classify, classify_audit, classify_tower, transfer_not_kf, TowerKind};
    use crate::padic::RootSeed;

    fn cert(input: &LubinTateInput, audit: bool) -> Certificate {
        let v = if audit { classify_audit(input) } else { classify(input) };
        Certificate::new(CertificateInput::LubinTate(input.clone()), v)
    }

    #[test]
    fn emitted_certificates_verify() {
        for c in [5, 30, -5, 10] {
            for audit in [false, true] {
                let ct = cert(&LubinTateInput::rational(5, 1, c), audit);
                verify(&ct).unwrap();
                verify(&Certificate::from_json(&ct.to_json()).unwrap()).unwrap();
            }
        }
        let ct = cert(&LubinTateInput::rational(5, 2, 5), true);
        verify(&ct).unwrap();
    }

    #[test]
    fn keys_agree_with_enumeration() {
        for (f, r) in [(1u32, 3u64), (2, 2), (3, 4)] {
            let a: BTreeSet<_> = crate::certifier::candidate_keys(f, r).into_iter().map(|c| (c.s, c.a)).collect();
            assert_eq!(a, reachable_keys(f, r));
        }
    }

    #[test]
    fn tampering_is_caught() {
        let good = cert(&LubinTateInput::rational(5, 1, 30), false);
        let mut bad = good.clone();
        bad.outcome = Outcome::NotKummerFaithful;
        assert!(verify(&bad).is_err());
        let mut bad = good.clone();
        bad.precision_used = 128;
        assert!(matches!(verify(&bad), Err(CertificateError::Mismatch { .. })));
        let mut bad = good.clone();
        bad.witness["candidate_count"] = json!(3);
        assert!(verify(&bad).is_err());
        let mut bad = good.clone();
        bad.witness["sweep"][0]["weil"] = json!(true);
        assert!(verify(&bad).is_err());
        // the same root named by a longer seed
        let mut bad = good;
        if let CertificateInput::LubinTate(i) = &mut bad.input {
            i.c_seed = RootSeed::with_residue(1, 6, 1);
        }
        assert!(matches!(verify(&bad), Err(CertificateError::Mismatch { .. })));
    }

    #[test]
    fn certificates_store_canonical_seeds() {
        let mut input = LubinTateInput::rational(5, 1, 30);
        input.c_seed = RootSeed::with_residue(1, 6, 3);
        let c = Certificate::new(CertificateInput::LubinTate(input.clone()), classify(&input));
        match &c.input {
            CertificateInput::LubinTate(i) => assert_eq!(i.c_seed, RootSeed::slope(1)),
            _ => unreachable!(),
        }
        verify(&c).unwrap();
        assert_eq!(c.witness["c_residue"], json!(BigInt::from(6).to_string()));
    }

    #[test]
    fn tower_and_transfer_certificates() {
        let deg = "2^inf".parse().unwrap();
        let v = classify_tower(TowerKind::Unramified, &deg);
        let ct = Certificate::new(CertificateInput::Tower { tower_kind: TowerKind::Unramified, degree: deg }, v);
        verify(&ct).unwrap();
        let mut bad = ct;
        bad.input = CertificateInput::Tower { tower_kind: TowerKind::TameGalois, degree: "2^inf".parse().unwrap() };
        assert!(verify(&bad).is_err());

        let base = LubinTateInput::rational(5, 1, 5);
        for recipe in [Recipe::NthRoot { n: 2 }, Recipe::NthRoot { n: 3 }, Recipe::UnramifiedNormOne { f_prime: 2 }] {
            let (derived, v) = transfer_not_kf(&base, recipe).unwrap();
            let ct = Certificate::new(CertificateInput::Transfer { base: base.clone(), recipe, derived }, v);
            verify(&ct).unwrap();
            let mut bad = ct;
            bad.witness["ratio_order"] = json!(5);
            assert!(verify(&bad).is_err());
        }
    }
}
