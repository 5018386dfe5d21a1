//! Supernatural numbers: formal products of prime powers with exponents in
//! `N ∪ {∞}`, used as degrees of infinite algebraic extensions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::factor::is_prime_u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(BigUint),
    Infinite,
}

impl Exponent {
    pub fn zero() -> Self {
        Exponent::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        Exponent::Finite(BigUint::one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exponent::Finite(n) if n.is_zero())
    }

    fn add(&self, o: &Exponent) -> Exponent {
        match (self, o) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

impl From<u64> for Exponent {
    fn from(n: u64) -> Self {
        Exponent::Finite(BigUint::from(n))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
            (Exponent::Finite(_), Exponent::Infinite) => Ordering::Less,
            (Exponent::Infinite, Exponent::Finite(_)) => Ordering::Greater,
            (Exponent::Infinite, Exponent::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// `∏ ℓ^{n_ℓ}` where every prime outside `explicit` carries `default`.
///
/// Canonical form: no explicit entry equals the default. Any constant default
/// is accepted, which keeps the type closed under products
/// (`∏ℓ · ∏ℓ = ∏ℓ²`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Supernatural {
    explicit: BTreeMap<u64, Exponent>,
    default: Exponent,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SupernaturalParseError {
    #[error("empty supernatural number")]
    Empty,
    #[error("malformed factor {0:?}")]
    BadFactor(String),
    #[error("default exponent given twice")]
    DuplicateDefault,
}

impl Supernatural {
    pub fn one() -> Self {
        Supernatural { explicit: BTreeMap::new(), default: Exponent::zero() }
    }

    pub fn new(explicit: impl IntoIterator<Item = (u64, Exponent)>, default: Exponent) -> Self {
        let mut s = Supernatural { explicit: BTreeMap::new(), default };
        for (p, e) in explicit {
            assert!(is_prime_u64(p), "{p} is not prime");
            s.explicit.insert(p, e);
        }
        s.normalize();
        s
    }

    /// The product of all primes raised to `e`.
    pub fn all_primes(e: Exponent) -> Self {
        Supernatural { explicit: BTreeMap::new(), default: e }
    }

    pub fn prime_power(p: u64, e: Exponent) -> Self {
        Self::new([(p, e)], Exponent::zero())
    }

    pub fn from_natural(n: u64) -> Self {
        assert!(n > 0, "zero is not a supernatural number");
        let mut m = n;
        let mut explicit = BTreeMap::new();
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            while m.is_multiple_of(d) {
                m /= d;
                *explicit.entry(d).or_insert(0u64) += 1;
            }
            d += 1;
        }
        if m > 1 {
            *explicit.entry(m).or_insert(0) += 1;
        }
        Self::new(explicit.into_iter().map(|(p, e)| (p, Exponent::from(e))), Exponent::zero())
    }

    fn normalize(&mut self) {
        let d = self.default.clone();
        self.explicit.retain(|_, e| *e != d);
    }

    pub fn exponent(&self, p: u64) -> &Exponent {
        self.explicit.get(&p).unwrap_or(&self.default)
    }

    pub fn default_exponent(&self) -> &Exponent {
        &self.default
    }

    pub fn explicit(&self) -> &BTreeMap<u64, Exponent> {
        &self.explicit
    }

    fn pointwise(&self, o: &Self, op: impl Fn(&Exponent, &Exponent) -> Exponent) -> Self {
        let mut explicit = BTreeMap::new();
        for &p in self.explicit.keys().chain(o.explicit.keys()) {
            explicit.insert(p, op(self.exponent(p), o.exponent(p)));
        }
        let mut s = Supernatural { explicit, default: op(&self.default, &o.default) };
        s.normalize();
        s
    }

    pub fn lcm(&self, o: &Self) -> Self {
        self.pointwise(o, |a, b| a.max(b).clone())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        self.pointwise(o, |a, b| a.min(b).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.pointwise(o, Exponent::add)
    }

    /// Pointwise `self <= o`.
    pub fn divides(&self, o: &Self) -> bool {
        self.default <= o.default
            && self.explicit.keys().chain(o.explicit.keys()).all(|&p| self.exponent(p) <= o.exponent(p))
    }

    /// Every exponent finite.
    pub fn is_quasi_finite(&self) -> bool {
        self.default.is_finite() && self.explicit.values().all(Exponent::is_finite)
    }

    /// Finitely many nonzero exponents, all finite.
    pub fn to_natural(&self) -> Option<BigUint> {
        if !self.default.is_zero() {
            return None;
        }
        let mut n = BigUint::one();
        for (&p, e) in &self.explicit {
            match e {
                Exponent::Finite(k) => n *= BigUint::from(p).pow(u32::try_from(k).ok()?),
                Exponent::Infinite => return None,
            }
        }
        Some(n)
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.default.is_zero() {
            parts.push(format!("prod_all_primes^{}", self.default));
        }
        for (p, e) in &self.explicit {
            if *e == Exponent::one() {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{e}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

fn parse_exponent(s: &str) -> Option<Exponent> {
    if s == "inf" {
        Some(Exponent::Infinite)
    } else {
        s.parse::<BigUint>().ok().map(Exponent::Finite)
    }
}

impl FromStr for Supernatural {
    type Err = SupernaturalParseError;

    /// Factors are joined by `*`. `prod_all_primes^e` sets the default exponent;
    /// other factors are `n` or `n^e` with `n` a positive integer and multiply
    /// together, then override the default at the primes they mention.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(SupernaturalParseError::Empty);
        }
        let mut default = None;
        let mut explicit: BTreeMap<u64, Exponent> = BTreeMap::new();
        for tok in s.split('*') {
            let tok = tok.trim();
            let bad = || SupernaturalParseError::BadFactor(tok.to_string());
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), parse_exponent(e.trim()).ok_or_else(bad)?),
                None => (tok, Exponent::one()),
            };
            if base == "prod_all_primes" {
                if default.replace(exp).is_some() {
                    return Err(SupernaturalParseError::DuplicateDefault);
                }
                continue;
            }
            let n: u64 = base.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            for (&q, e) in &Supernatural::from_natural(n).explicit {
                let e = match (e, &exp) {
                    (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a * b),
                    _ => Exponent::Infinite,
                };
                let slot = explicit.entry(q).or_insert_with(Exponent::zero);
                *slot = slot.add(&e);
            }
        }
        let mut out = Supernatural { explicit, default: default.unwrap_or_else(Exponent::zero) };
        out.normalize();
        Ok(out)
    }
}

impl Serialize for Supernatural {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Supernatural {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
