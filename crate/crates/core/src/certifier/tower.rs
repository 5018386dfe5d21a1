use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{classify, CertifierError, Clause, LubinTateInput, Outcome, Verdict};
use crate::algnum::AlgNum;
use crate::supernat::Supernatural;

/// Shape of a Galois extension `K / Q_p` of possibly infinite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerKind {
    Unramified,
    TameGalois,
}

/// For unramified and for tame Galois extensions of Q_p, Kummer-faithfulness
/// is equivalent to the degree being quasi-finite.
pub fn classify_tower(kind: TowerKind, degree: &Supernatural) -> Verdict {
    let qf = degree.is_quasi_finite();
    Verdict {
        outcome: if qf { Outcome::KummerFaithful } else { Outcome::NotKummerFaithful },
        clause: Clause::TowerDegree,
        witness: json!({ "tower_kind": kind, "degree": degree, "quasi_finite": qf }),
        precision_used: 0,
    }
}

/// Ways to derive a new non-faithful `k_pi` from a non-faithful base `k_0, pi_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "snake_case")]
pub enum Recipe {
    /// `pi = pi_0^(1/n)`, so `r` becomes `r n`.
    NthRoot { n: u64 },
    /// Unramified base change of degree `f_prime` keeping `pi = pi_0`.
    UnramifiedNormOne { f_prime: u32 },
}

/// Derive an input from `base` by `recipe` and certify it non-faithful
/// because `pi_0^{-f'} Nr_{k/k_0}(pi)` is a root of unity, without a new sweep.
pub fn transfer_not_kf(base: &LubinTateInput, recipe: Recipe) -> Result<(LubinTateInput, Verdict), CertifierError> {
    let bv = classify(base);
    if bv.outcome != Outcome::NotKummerFaithful {
        return Err(CertifierError::RecipeInvalid(format!(
            "base verdict is {:?}, not non-faithful",
            bv.outcome
        )));
    }
    let (derived, ratio) = match recipe {
        Recipe::NthRoot { n: 0 } => return Err(CertifierError::RecipeInvalid("n must be positive".into())),
        Recipe::NthRoot { n } => {
            let d = LubinTateInput { r: base.r * n, ..base.clone() };
            // Nr_{k/k_0}(pi_0^(1/n)) is the product of the n conjugates zeta_n^j pi, that is (-1)^(n-1) pi_0
            let sign = if n % 2 == 0 { -1 } else { 1 };
            (d, sign)
        }
        Recipe::UnramifiedNormOne { f_prime: 0 } => {
            return Err(CertifierError::RecipeInvalid("f' must be positive".into()))
        }
        Recipe::UnramifiedNormOne { f_prime } => (LubinTateInput { f: base.f * f_prime, ..base.clone() }, 1),
    };
    derived.validate_structure().map_err(|e| CertifierError::RecipeInvalid(e.to_string()))?;
    let ratio = AlgNum::rational(&BigRational::from_integer(BigInt::from(ratio)));
    let order = ratio
        .root_of_unity_order()
        .ok_or_else(|| CertifierError::RecipeInvalid("norm ratio is not a root of unity".into()))?;
    let v = Verdict {
        outcome: Outcome::NotKummerFaithful,
        clause: Clause::Transfer,
        witness: json!({
            "recipe": recipe,
            "base_clause": bv.clause,
            "base_witness": bv.witness,
            "ratio_minpoly": ratio.minpoly(),
            "ratio_order": order,
        }),
        precision_used: bv.precision_used,
    };
    Ok((derived, v))
}
