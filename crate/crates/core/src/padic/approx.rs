use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PadicError;
use crate::poly::IntPoly;

/// `v_p(n)` for nonzero `n`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// A nonzero element of Q_p known to relative precision `precision`:
/// the value is `p^valuation * residue` with `residue` a unit modulo `p^precision`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicApprox {
    pub p: u64,
    pub precision: u32,
    #[serde(with = "crate::serde_text")]
    pub residue: BigInt,
    pub valuation: i64,
}

/// Outcome of evaluating a polynomial at an approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicZeroTest {
    /// The value is certainly nonzero.
    NonZero,
    /// The value vanishes to the available precision.
    ZeroToPrecision,
}

impl PadicApprox {
    /// Build from an integer known modulo `p^abs_precision`. Returns `None` when
    /// the integer vanishes to that precision.
    pub fn from_int_mod(x: &BigInt, p: u64, abs_precision: u32) -> Option<Self> {
        let modulus = BigInt::from(p).pow(abs_precision);
        let x = x.mod_floor(&modulus);
        if x.is_zero() {
            return None;
        }
        let v = valuation(&x, p);
        let unit = &x / BigInt::from(p).pow(v);
        let precision = abs_precision - v;
        Some(PadicApprox {
            p,
            precision,
            residue: unit.mod_floor(&BigInt::from(p).pow(precision)),
            valuation: v as i64,
        })
    }

    /// An exact nonzero integer, recorded to `precision` relative digits.
    pub fn from_int(x: &BigInt, p: u64, precision: u32) -> Self {
        assert!(!x.is_zero(), "zero has no p-adic unit part");
        let v = valuation(x, p);
        let unit = x / BigInt::from(p).pow(v);
        PadicApprox {
            p,
            precision,
            residue: unit.mod_floor(&BigInt::from(p).pow(precision)),
            valuation: v as i64,
        }
    }

    pub fn unit_modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    /// Absolute precision `valuation + precision`.
    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.precision as i64
    }

    pub fn mul(&self, o: &PadicApprox) -> PadicApprox {
        assert_eq!(self.p, o.p, "mixed primes");
        let precision = self.precision.min(o.precision);
        let m = BigInt::from(self.p).pow(precision);
        PadicApprox {
            p: self.p,
            precision,
            residue: (&self.residue * &o.residue).mod_floor(&m),
            valuation: self.valuation + o.valuation,
        }
    }

    pub fn neg(&self) -> PadicApprox {
        let m = self.unit_modulus();
        PadicApprox {
            residue: (-&self.residue).mod_floor(&m),
            ..self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> PadicApprox {
        let m = self.unit_modulus();
        PadicApprox {
            residue: self.residue.modpow(&BigInt::from(e), &m),
            valuation: self.valuation * e as i64,
            ..self.clone()
        }
    }

    pub fn inv(&self) -> PadicApprox {
        let m = self.unit_modulus();
        PadicApprox {
            residue: self.residue.modinv(&m).expect("residue is a unit"),
            valuation: -self.valuation,
            ..self.clone()
        }
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i64) -> PadicApprox {
        PadicApprox {
            valuation: self.valuation + k,
            ..self.clone()
        }
    }

    /// Integral value reduced modulo `p^(valuation + precision)`; `None` when not integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.valuation < 0 {
            return None;
        }
        Some(&self.residue * BigInt::from(self.p).pow(self.valuation as u32))
    }

    /// Decide whether `g(self)` is nonzero from the digits at hand.
    pub fn eval_zero_test(&self, g: &IntPoly) -> PadicZeroTest {
        let p = BigInt::from(self.p);
        let d = g.degree();
        let value = if self.valuation >= 0 {
            let m = p.pow(self.absolute_precision() as u32);
            g.eval_mod(&self.to_integer().unwrap(), &m)
        } else {
            // p^(|v| d) g(x) = sum g_i u^i p^(|v| (d - i)), known modulo p^precision
            let m = self.unit_modulus();
            let w = (-self.valuation) as u32;
            let mut acc = BigInt::zero();
            let mut upow = BigInt::one();
            for (i, c) in g.coeffs().iter().enumerate() {
                let term = c * &upow * p.pow(w * (d - i) as u32);
                acc = (acc + term).mod_floor(&m);
                upow = (&upow * &self.residue).mod_floor(&m);
            }
            acc
        };
        if value.is_zero() {
            PadicZeroTest::ZeroToPrecision
        } else {
            PadicZeroTest::NonZero
        }
    }

    /// Same approximation truncated to fewer relative digits.
    pub fn truncate(&self, precision: u32) -> PadicApprox {
        let precision = precision.min(self.precision);
        let m = BigInt::from(self.p).pow(precision);
        PadicApprox {
            precision,
            residue: self.residue.mod_floor(&m),
            ..self.clone()
        }
    }
}

impl fmt::Debug for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valuation == 0 {
            write!(f, "{} + O({}^{})", self.residue, self.p, self.precision)
        } else {
            write!(
                f,
                "{}^{} * ({} + O({}^{}))",
                self.p, self.valuation, self.residue, self.p, self.precision
            )
        }
    }
}

/// Lift a simple root `seed` of `f` modulo `p` to a root modulo `p^target`
/// by Newton iteration.
pub fn hensel_lift(f: &IntPoly, p: u64, seed: &BigInt, target: u32) -> Result<BigInt, PadicError> {
    let pb = BigInt::from(p);
    if !f.eval(seed).mod_floor(&pb).is_zero() {
        return Err(PadicError::NotARoot {
            seed: seed.to_string(),
            p,
        });
    }
    let df = f.derivative();
    if df.eval(seed).mod_floor(&pb).is_zero() {
        return Err(PadicError::NotSimpleRoot {
            seed: seed.to_string(),
            p,
        });
    }
    let final_mod = pb.pow(target.max(1));
    let mut x = seed.mod_floor(&pb);
    let mut k = 1u32;
    while k < target {
        k = (2 * k).min(target);
        let m = pb.pow(k);
        let fx = f.eval_mod(&x, &m);
        let dfx = df.eval_mod(&x, &m);
        let inv = dfx.modinv(&m).expect("derivative is a unit");
        x = (&x - fx * inv).mod_floor(&m);
    }
    Ok(x.mod_floor(&final_mod))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn documented_lifts() {
        let b = BigInt::from;
        assert_eq!(hensel_lift(&p(&[1, 0, 1]), 5, &b(2), 3).unwrap(), b(57));
        assert_eq!(hensel_lift(&p(&[-3, 1]), 7, &b(3), 4).unwrap(), b(3));
        assert_eq!(hensel_lift(&p(&[-2, 0, 1]), 7, &b(3), 2).unwrap(), b(10));
    }

    #[test]
    fn lift_errors() {
        let b = BigInt::from;
        assert!(matches!(
            hensel_lift(&p(&[1, 0, 1]), 5, &b(1), 3),
            Err(PadicError::NotARoot { .. })
        ));
        assert!(matches!(
            hensel_lift(&p(&[0, 0, 1]), 5, &b(0), 3),
            Err(PadicError::NotSimpleRoot { .. })
        ));
    }

    #[test]
    fn lifted_roots_vanish_to_target_precision() {
        for target in [1u32, 2, 5, 17, 64] {
            let f = p(&[1, 0, 1]);
            let x = hensel_lift(&f, 5, &BigInt::from(3), target).unwrap();
            let v = f.eval(&x);
            assert!(v.is_zero() || valuation(&v, 5) >= target);
        }
    }

    #[test]
    fn approximations_multiply_and_test_zero() {
        let i = PadicApprox::from_int_mod(&hensel_lift(&p(&[1, 0, 1]), 5, &BigInt::from(2), 20).unwrap(), 5, 20).unwrap();
        assert_eq!(i.eval_zero_test(&p(&[1, 0, 1])), PadicZeroTest::ZeroToPrecision);
        assert_eq!(i.eval_zero_test(&p(&[-1, 0, 1])), PadicZeroTest::NonZero);
        let five = PadicApprox::from_int(&BigInt::from(50), 5, 10);
        assert_eq!(five.valuation, 2);
        assert_eq!(five.residue, BigInt::from(2));
        let inv = PadicApprox { valuation: -1, ..PadicApprox::from_int(&BigInt::from(3), 5, 10) };
        // 3/5 is a root of 5x - 3
        assert_eq!(inv.eval_zero_test(&p(&[-3, 5])), PadicZeroTest::ZeroToPrecision);
        assert_eq!(inv.eval_zero_test(&p(&[-3, 1])), PadicZeroTest::NonZero);
    }
}
