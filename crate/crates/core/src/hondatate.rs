//! Places above `p` of the field generated by a Weil q-integer, their local
//! Brauer invariants, and the numerical invariants of the matching isogeny class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::padic::{factor_shape_over_qp, LocalFactor, PadicError};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HondaTateError {
    #[error("the Weil number squares to q, so its field has a real place")]
    RealWeilNumber,
    #[error("local factorization failed: {0}")]
    FactorizationUndetermined(#[from] PadicError),
    #[error("ord_v = e * slope = {e} * {slope} is not an integer")]
    NonIntegralOrder { e: usize, slope: String },
    #[error("d * [Z:Q] = {0} is odd")]
    OddProduct(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceData {
    pub e_v: usize,
    pub f_v: usize,
    pub ord_v_pi_hat: u64,
    #[serde(with = "crate::serde_text")]
    pub invariant: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyInvariants {
    pub d: u64,
    pub g: u64,
    pub places: Vec<PlaceData>,
}

/// `x mod 1` in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

/// Places of `Q(w)` above `p`, where `w` is a root of `minpoly` and `q = p^f`.
///
/// `ord_v` is normalized so that the value group of the completion is Z,
/// and the invariant is `ord_v * f_v / f mod 1`.
pub fn places_above_p(minpoly: &IntPoly, p: u64, f: u32, budget: u32) -> Result<Vec<PlaceData>, HondaTateError> {
    let q = BigInt::from(p).pow(f);
    let x2_minus_q = IntPoly::new(vec![-q, BigInt::zero(), BigInt::one()]);
    if x2_minus_q.div_exact(minpoly).is_some() {
        return Err(HondaTateError::RealWeilNumber);
    }
    factor_shape_over_qp(minpoly, p, budget)?
        .iter()
        .map(|lf| place(lf, f))
        .collect()
}

fn place(lf: &LocalFactor, f: u32) -> Result<PlaceData, HondaTateError> {
    let ord = &lf.slope * BigRational::from_integer(BigInt::from(lf.e));
    if !ord.is_integer() {
        return Err(HondaTateError::NonIntegralOrder { e: lf.e, slope: lf.slope.to_string() });
    }
    let ord = ord.to_integer().to_u64().expect("nonnegative order");
    let inv = BigRational::new(BigInt::from(ord) * BigInt::from(lf.f), BigInt::from(f));
    Ok(PlaceData { e_v: lf.e, f_v: lf.f, ord_v_pi_hat: ord, invariant: frac(&inv) })
}

/// `d` is the lcm of the invariant denominators and `2g = d [Z:Q]`.
pub fn isogeny_invariants(places: &[PlaceData], deg_z: usize) -> Result<IsogenyInvariants, HondaTateError> {
    let d = places
        .iter()
        .map(|pl| pl.invariant.denom().to_u64().unwrap())
        .fold(1u64, |a, b| a.lcm(&b));
    let twice_g = d * deg_z as u64;
    if twice_g % 2 == 1 {
        return Err(HondaTateError::OddProduct(twice_g));
    }
    Ok(IsogenyInvariants { d, g: twice_g / 2, places: places.to_vec() })
}

/// `f` divides `ord_v * f_v` at every place.
pub fn check_condition_iii_1(places: &[PlaceData], f: u32) -> bool {
    places.iter().all(|pl| (pl.ord_v_pi_hat * pl.f_v as u64).is_multiple_of(f as u64))
}

/// No factor has degree `n * local_degree` with `n >= 2`.
pub fn check_condition_iii_2(factor_degrees: &[usize], local_degree: usize) -> bool {
    factor_degrees
        .iter()
        .all(|&d| !(d % local_degree == 0 && d / local_degree >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn pd(e: usize, f: usize, ord: u64) -> PlaceData {
        PlaceData { e_v: e, f_v: f, ord_v_pi_hat: ord, invariant: BigRational::zero() }
    }

    #[test]
    fn documented_places() {
        assert_eq!(places_above_p(&p(&[7, -1, 1]), 7, 1, 64).unwrap(), vec![pd(1, 1, 0), pd(1, 1, 1)]);
        assert_eq!(places_above_p(&p(&[7, 0, 1]), 7, 1, 64).unwrap(), vec![pd(2, 1, 1)]);
        assert_eq!(places_above_p(&p(&[-7, 0, 1]), 7, 1, 64), Err(HondaTateError::RealWeilNumber));
    }

    #[test]
    fn rational_square_root_of_q_is_real() {
        assert_eq!(places_above_p(&p(&[-7, 1]), 7, 2, 64), Err(HondaTateError::RealWeilNumber));
        assert_eq!(places_above_p(&p(&[7, 1]), 7, 2, 64), Err(HondaTateError::RealWeilNumber));
    }

    #[test]
    fn nontrivial_invariants_for_q_49() {
        // x^2 + 7x + 49 = 7^2 (u^2 + u + 1) at x = 7u, and u^2 + u + 1 = (u - 2)(u - 4) mod 7
        let pl = places_above_p(&p(&[49, 7, 1]), 7, 2, 64).unwrap();
        assert_eq!(pl.len(), 2);
        for x in &pl {
            assert_eq!(x.ord_v_pi_hat, 1);
            assert_eq!(x.invariant, BigRational::new(BigInt::from(1), BigInt::from(2)));
        }
        let inv = isogeny_invariants(&pl, 2).unwrap();
        assert_eq!((inv.d, inv.g), (2, 2));
    }

    #[test]
    fn isogeny_numerology() {
        let a = isogeny_invariants(&places_above_p(&p(&[7, -1, 1]), 7, 1, 64).unwrap(), 2).unwrap();
        assert_eq!((a.d, a.g), (1, 1));
        let b = isogeny_invariants(&places_above_p(&p(&[7, 0, 1]), 7, 1, 64).unwrap(), 2).unwrap();
        assert_eq!((b.d, b.g), (1, 1));
        let c = isogeny_invariants(&[], 2).unwrap();
        assert_eq!((c.d, c.g), (1, 1));
        let half = PlaceData { invariant: BigRational::new(BigInt::from(1), BigInt::from(2)), ..pd(1, 1, 1) };
        assert_eq!(isogeny_invariants(&[half], 1).unwrap().d, 2);
        assert_eq!(isogeny_invariants(&[pd(1, 1, 0)], 3), Err(HondaTateError::OddProduct(3)));
    }

    #[test]
    fn condition_checks() {
        assert!(check_condition_iii_1(&[pd(1, 1, 3)], 1));
        assert!(!check_condition_iii_1(&[pd(1, 1, 1)], 2));
        assert!(check_condition_iii_2(&[1, 2, 2, 2, 1], 2));
        assert!(!check_condition_iii_2(&[2, 4], 2));
        assert!(check_condition_iii_2(&[3], 3));
    }

    #[test]
    fn product_formula_on_weil_quadratics() {
        for prime in [5i64, 7, 11, 13] {
            for a in -10i64..=10 {
                if a * a >= 4 * prime {
                    continue;
                }
                let f = p(&[prime, -a, 1]);
                let pl = places_above_p(&f, prime as u64, 1, 64).unwrap();
                let total: u64 = pl.iter().map(|x| x.ord_v_pi_hat * x.f_v as u64).sum();
                assert_eq!(total, 1, "x^2 - {a}x + {prime}");
                if pl.len() == 2 {
                    assert!(frac(&(&pl[0].invariant + &pl[1].invariant)).is_zero());
                }
            }
        }
    }
}
