use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Clause, LubinTateInput, Outcome, Recipe, TowerKind, Verdict};
use crate::supernat::Supernatural;

/// What a certificate is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateInput {
    LubinTate(LubinTateInput),
    Tower { tower_kind: TowerKind, degree: Supernatural },
    Transfer { base: LubinTateInput, recipe: Recipe, derived: LubinTateInput },
}

/// A verdict together with its input, serialized with canonically sorted keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub input: CertificateInput,
    pub outcome: Outcome,
    pub clause: Clause,
    pub witness: Value,
    pub precision_used: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("replay mismatch in {field}: certificate has {claimed}, replay gives {actual}")]
    Mismatch { field: String, claimed: String, actual: String },
    #[error("certificate cannot be replayed: {0}")]
    Unreplayable(String),
}

impl Certificate {
    /// Lubin-Tate inputs are stored with their canonical seed.
    pub fn new(input: CertificateInput, v: Verdict) -> Self {
        let input = match input {
            CertificateInput::LubinTate(i) => CertificateInput::LubinTate(i.canonical()),
            CertificateInput::Transfer { base, recipe, derived } => {
                CertificateInput::Transfer { base: base.canonical(), recipe, derived: derived.canonical() }
            }
            tower => tower,
        };
        Certificate { input, outcome: v.outcome, clause: v.clause, witness: v.witness, precision_used: v.precision_used }
    }

    /// Pretty JSON with keys in sorted order at every level.
    pub fn to_json(&self) -> String {
        // serde_json::Value stores objects in a sorted map
        let v = serde_json::to_value(self).expect("certificate is serializable");
        serde_json::to_string_pretty(&v).expect("value is serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(s)?)
    }
}
