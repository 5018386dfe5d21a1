//! Algebraic numbers given by a minimal polynomial and a root selector, with
//! resultant-based products and powers, and exact recognition of Weil
//! q-integers and roots of unity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{isolate_roots, refine_disk, IsolationFailure, RootDisk, MAX_REFINEMENT_ROUNDS};
use crate::factor::{factor_over_q, is_prime_u64};
use crate::padic::{select_padic_root, PadicApprox, PadicError, PadicZeroTest, RootSeed};
use crate::poly::IntPoly;
use crate::resultant::{resultant_y, BiPoly};
use crate::sturm::{count_positive_roots, count_real_roots};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error(transparent)]
    Isolation(#[from] IsolationFailure),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("{0} is not a prime power")]
    InvalidPrimePower(BigInt),
    #[error("no common root selector to choose among {0} candidate factors")]
    NoSelector(usize),
    #[error("complex and p-adic selectors pick different factors")]
    RouteMismatch,
    #[error("minimal polynomial {0} is not irreducible")]
    Reducible(String),
}

/// A root of an irreducible primitive integer polynomial, pinned by an
/// isolating complex disk, a Q_p-approximation, or both. Rational numbers
/// need no selector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgNum {
    minpoly: IntPoly,
    disk: Option<RootDisk>,
    padic: Option<PadicApprox>,
}

fn canonical(f: &IntPoly) -> IntPoly {
    f.primitive_part()
}

impl AlgNum {
    pub fn rational(q: &BigRational) -> Self {
        let f = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        AlgNum { minpoly: canonical(&f), disk: None, padic: None }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// One number per complex root of the irreducible polynomial `f`.
    pub fn complex_roots(f: &IntPoly) -> Result<Vec<AlgNum>, AlgError> {
        let f = checked_irreducible(f)?;
        Ok(isolate_roots(&f)?
            .into_iter()
            .map(|d| AlgNum { minpoly: f.clone(), disk: Some(d), padic: None })
            .collect())
    }

    /// The root of the irreducible polynomial `f` in Q_p described by `seed`.
    pub fn padic_root(f: &IntPoly, p: u64, seed: RootSeed, precision: u32) -> Result<AlgNum, AlgError> {
        let f = checked_irreducible(f)?;
        let approx = select_padic_root(&f, p, seed, precision)?;
        Ok(AlgNum { minpoly: f, disk: None, padic: Some(approx) })
    }

    /// Attach a complex disk produced by `isolate_roots` on this minimal polynomial.
    pub fn with_disk(mut self, disk: RootDisk) -> Self {
        self.disk = Some(disk);
        self
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly.is_monic()
    }

    pub fn disk(&self) -> Option<RootDisk> {
        if let Some(q) = self.as_rational() {
            return Some(RootDisk {
                center: crate::complex::Complex::new(q, BigRational::zero()),
                radius: BigRational::zero(),
            });
        }
        self.disk.clone()
    }

    /// The Q_p selector, synthesizing one for nonzero rationals.
    pub fn padic_at(&self, p: u64, precision: u32) -> Option<PadicApprox> {
        if let Some(a) = &self.padic {
            return (a.p == p).then(|| a.clone());
        }
        let q = self.as_rational()?;
        if q.is_zero() {
            return None;
        }
        let num = PadicApprox::from_int(q.numer(), p, precision);
        let den = PadicApprox::from_int(q.denom(), p, precision);
        Some(num.mul(&den.inv()))
    }

    pub fn padic(&self) -> Option<&PadicApprox> {
        self.padic.as_ref()
    }

    pub fn product(&self, o: &AlgNum) -> Result<AlgNum, AlgError> {
        let r = resultant_y(&self.minpoly, &BiPoly::homogenized(&o.minpoly));
        let disk = match (self.disk(), o.disk()) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        };
        let p = self.padic.as_ref().or(o.padic.as_ref()).map(|a| (a.p, a.precision));
        let padic = p.and_then(|(p, n)| Some(self.padic_at(p, n)?.mul(&o.padic_at(p, n)?)));
        let refine = |bits: u32| -> Result<RootDisk, AlgError> {
            let (a, b) = disk.clone().unwrap();
            let a = refine_disk(&self.minpoly, &a, bits)?;
            let b = refine_disk(&o.minpoly, &b, bits)?;
            Ok(a.product(&b))
        };
        select_factor(&r, disk.is_some().then_some(&refine), padic)
    }

    pub fn power(&self, m: u32) -> Result<AlgNum, AlgError> {
        assert!(m >= 1, "exponent must be positive");
        if m == 1 {
            return Ok(self.clone());
        }
        let r = resultant_y(&self.minpoly, &BiPoly::binomial(1, &BigInt::one(), m as usize));
        let disk = self.disk();
        let padic = self.padic.as_ref().map(|a| a.pow(m));
        let refine = |bits: u32| -> Result<RootDisk, AlgError> {
            Ok(refine_disk(&self.minpoly, disk.as_ref().unwrap(), bits)?.power(m))
        };
        select_factor(&r, disk.is_some().then_some(&refine), padic)
    }

    /// `c / self` for a nonzero rational `c`.
    pub fn scaled_inverse(&self, c: &BigRational) -> AlgNum {
        assert!(!self.minpoly.coeff(0).is_zero(), "inverse of zero");
        let d = self.degree();
        // minpoly of c/a is x^d m(c/x), cleared of denominators
        let (n, den) = (c.numer(), c.denom());
        let coeffs: Vec<BigInt> = (0..=d)
            .map(|k| self.minpoly.coeff(d - k) * n.pow((d - k) as u32) * den.pow(k as u32))
            .collect();
        let padic = self.padic.as_ref().and_then(|a| {
            let cp = AlgNum::rational(c).padic_at(a.p, a.precision)?;
            Some(cp.mul(&a.inv()))
        });
        AlgNum { minpoly: canonical(&IntPoly::new(coeffs)), disk: None, padic }
    }

    pub fn is_weil_q_integer(&self, q: &BigInt) -> Result<bool, AlgError> {
        prime_power(q).ok_or_else(|| AlgError::InvalidPrimePower(q.clone()))?;
        Ok(all_roots_weil(&self.minpoly, q))
    }

    /// Least `m` with `self^m = 1`.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        root_of_unity_order(&self.minpoly)
    }

    pub fn is_in_mu(&self, n: u64) -> bool {
        self.root_of_unity_order().is_some_and(|m| n.is_multiple_of(m))
    }
}

fn checked_irreducible(f: &IntPoly) -> Result<IntPoly, AlgError> {
    let f = canonical(f);
    let fac = factor_over_q(&f);
    if fac.len() != 1 || fac[0].1 != 1 {
        return Err(AlgError::Reducible(f.to_string()));
    }
    Ok(f)
}

/// Pick the irreducible factor of `r` vanishing at the number pinned by the
/// selectors. The complex route refines until a single candidate root meets
/// the target disk; the p-adic route needs a single factor vanishing at the
/// approximation. When both are available they must agree.
fn select_factor(
    r: &IntPoly,
    complex: Option<&dyn Fn(u32) -> Result<RootDisk, AlgError>>,
    padic: Option<PadicApprox>,
) -> Result<AlgNum, AlgError> {
    let cands: Vec<IntPoly> = factor_over_q(r).into_iter().map(|(g, _)| canonical(&g)).collect();
    if cands.len() == 1 {
        let disk = match complex {
            Some(target) => Some(complex_pick(&cands, target)?.1),
            None => None,
        };
        return Ok(AlgNum { minpoly: cands[0].clone(), disk, padic });
    }
    let via_padic = match &padic {
        Some(a) => {
            let hits: Vec<usize> = (0..cands.len())
                .filter(|&i| a.eval_zero_test(&cands[i]) == PadicZeroTest::ZeroToPrecision)
                .collect();
            match hits.as_slice() {
                [i] => Some(*i),
                _ if complex.is_none() => {
                    return Err(PadicError::Ambiguous(format!("{} factors vanish at {a}", hits.len())).into())
                }
                _ => None,
            }
        }
        None => None,
    };
    let via_complex = match complex {
        Some(target) => Some(complex_pick(&cands, target)?),
        None => None,
    };
    match (via_padic, via_complex) {
        (Some(i), Some((j, _))) if i != j => Err(AlgError::RouteMismatch),
        (_, Some((j, d))) => Ok(AlgNum { minpoly: cands[j].clone(), disk: Some(d), padic }),
        (Some(i), None) => Ok(AlgNum { minpoly: cands[i].clone(), disk: None, padic }),
        (None, None) => Err(AlgError::NoSelector(cands.len())),
    }
}

fn complex_pick(
    cands: &[IntPoly],
    target: &dyn Fn(u32) -> Result<RootDisk, AlgError>,
) -> Result<(usize, RootDisk), AlgError> {
    let roots: Vec<Vec<RootDisk>> = cands.iter().map(isolate_roots).collect::<Result<_, _>>()?;
    let mut bits = 32u32;
    for round in 0..MAX_REFINEMENT_ROUNDS {
        let d = target(bits)?;
        let mut hits = Vec::new();
        for (i, (g, disks)) in cands.iter().zip(&roots).enumerate() {
            for disk in disks {
                let fine = refine_disk(g, disk, bits)?;
                if !fine.disjoint(&d) {
                    hits.push((i, fine));
                }
            }
        }
        if hits.len() == 1 {
            return Ok(hits.pop().unwrap());
        }
        if bits >= 1 << 14 {
            return Err(IsolationFailure { rounds: round + 1 }.into());
        }
        bits *= 2;
    }
    Err(IsolationFailure { rounds: MAX_REFINEMENT_ROUNDS }.into())
}

/// `q = p^f` with `p` prime.
pub fn prime_power(q: &BigInt) -> Option<(u64, u32)> {
    if q <= &BigInt::one() {
        return None;
    }
    for f in (1..=q.bits() as u32).rev() {
        let r = q.nth_root(f);
        if &r.pow(f) == q {
            if let Some(p) = r.to_u64() {
                if is_prime_u64(p) {
                    return Some((p, f));
                }
            }
        }
    }
    None
}

/// True when every root of `f` is an algebraic integer of absolute value
/// `sqrt(q)` in every complex embedding.
///
/// Each root `a` gives `b = a + q/a`; all `a` have `|a|^2 = q` exactly when
/// every `b` is real with `b^2 <= 4q`. Realness is a Sturm count on the
/// annihilator `h` of the `b`, and the bound is the absence of positive roots
/// of the annihilator of `b^2 - 4q`, which also accepts the boundary `b = ±2 sqrt(q)`.
pub fn all_roots_weil(f: &IntPoly, q: &BigInt) -> bool {
    if f.degree() == 0 || !f.is_monic() || f.coeff(0).is_zero() {
        return false;
    }
    let quad = BiPoly::new(vec![IntPoly::constant(q.clone()), -&IntPoly::x(), IntPoly::one()]);
    let h = resultant_y(f, &quad).squarefree_part();
    if count_real_roots(&h) != h.degree() {
        return false;
    }
    let shifted = BiPoly::new(vec![
        IntPoly::new(vec![BigInt::from(4) * q, BigInt::one()]),
        IntPoly::zero(),
        IntPoly::constant(-BigInt::one()),
    ]);
    let k = resultant_y(&h, &shifted);
    count_positive_roots(&k) == 0
}

fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m >= 1);
    // x^m - 1 divided by all Phi_d for proper divisors d
    let mut f = IntPoly::new({
        let mut c = vec![BigInt::zero(); m as usize + 1];
        c[0] = -BigInt::one();
        c[m as usize] = BigInt::one();
        c
    });
    for d in 1..m {
        if m.is_multiple_of(d) {
            f = f.div_exact(&cyclotomic(d)).expect("cyclotomic divisibility");
        }
    }
    f
}

/// Order of the roots of `f` as roots of unity, if `f` is cyclotomic.
pub fn root_of_unity_order(f: &IntPoly) -> Option<u64> {
    let f = canonical(f);
    let d = f.degree() as u64;
    if d == 0 || !f.is_monic() || f.coeff(0).abs() != BigInt::one() {
        return None;
    }
    // phi(m) >= sqrt(m / 2), so phi(m) = d forces m <= 2 d^2
    (1..=2 * d * d).find(|&m| euler_phi(m) == d && cyclotomic(m) == f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn real_root(f: &IntPoly, positive: bool) -> AlgNum {
        AlgNum::complex_roots(f)
            .unwrap()
            .into_iter()
            .find(|a| {
                let d = a.disk().unwrap();
                d.contains_real_axis_point() && d.center.re.is_positive() == positive
            })
            .unwrap()
    }

    #[test]
    fn sqrt2_times_sqrt3() {
        let s2 = real_root(&p(&[-2, 0, 1]), true);
        let s3 = real_root(&p(&[-3, 0, 1]), true);
        let prod = s2.product(&s3).unwrap();
        assert_eq!(prod.minpoly(), &p(&[-6, 0, 1]));
        assert!(prod.disk().unwrap().center.re.is_positive());
        assert_eq!(s2.product(&AlgNum::integer(1)).unwrap().minpoly(), s2.minpoly());
    }

    #[test]
    fn conjugate_product_and_square() {
        let roots = AlgNum::complex_roots(&p(&[7, -1, 1])).unwrap();
        assert_eq!(roots[0].product(&roots[1]).unwrap().minpoly(), &p(&[-7, 1]));
        assert_eq!(roots[0].product(&roots[0]).unwrap().minpoly(), &p(&[49, 13, 1]));
        assert_eq!(roots[0].power(2).unwrap().minpoly(), &p(&[49, 13, 1]));
        assert_eq!(roots[1].power(1).unwrap(), roots[1]);
        let s2 = real_root(&p(&[-2, 0, 1]), false);
        assert_eq!(s2.power(2).unwrap().minpoly(), &p(&[-2, 1]));
    }

    #[test]
    fn padic_route_selects_products() {
        // roots of x^2 - x + 7 in Q_7: a unit root and a root of valuation 1
        let f = p(&[7, -1, 1]);
        let unit = AlgNum::padic_root(&f, 7, RootSeed::slope(0), 40).unwrap();
        let small = AlgNum::padic_root(&f, 7, RootSeed::slope(1), 40).unwrap();
        assert_eq!(unit.product(&small).unwrap().minpoly(), &p(&[-7, 1]));
        let sq = small.power(2).unwrap();
        assert_eq!(sq.minpoly(), &p(&[49, 13, 1]));
        assert_eq!(sq.padic().unwrap().valuation, 2);
    }

    #[test]
    fn weil_examples() {
        let w = |c: &[i64], q: i64| AlgNum::complex_roots(&p(c)).unwrap()[0].is_weil_q_integer(&b(q)).unwrap();
        assert!(w(&[7, -1, 1], 7));
        assert!(!w(&[-7, 1], 7));
        assert!(w(&[-7, 0, 1], 7));
        assert!(!w(&[7, -6, 1], 7));
        assert!(w(&[49, 13, 1], 49));
        assert!(w(&[5, 0, 1], 5));
        assert!(matches!(
            AlgNum::integer(3).is_weil_q_integer(&b(6)),
            Err(AlgError::InvalidPrimePower(_))
        ));
    }

    #[test]
    fn conjugate_closure_of_weil_numbers() {
        let a = &AlgNum::complex_roots(&p(&[7, -1, 1])).unwrap()[0];
        let inv = a.scaled_inverse(&BigRational::from_integer(b(7)));
        assert_eq!(inv.minpoly(), &p(&[7, -1, 1]));
        assert!(inv.is_weil_q_integer(&b(7)).unwrap());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(&b(49)), Some((7, 2)));
        assert_eq!(prime_power(&b(7)), Some((7, 1)));
        assert_eq!(prime_power(&b(1024)), Some((2, 10)));
        assert_eq!(prime_power(&b(6)), None);
        assert_eq!(prime_power(&b(1)), None);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(AlgNum::integer(1).root_of_unity_order(), Some(1));
        assert_eq!(AlgNum::integer(-1).root_of_unity_order(), Some(2));
        assert_eq!(root_of_unity_order(&p(&[1, 0, 1])), Some(4));
        assert_eq!(root_of_unity_order(&p(&[-1, -1, 1])), None);
        assert_eq!(root_of_unity_order(&cyclotomic(15)), Some(15));
        assert!(AlgNum::integer(-1).is_in_mu(6));
        assert!(AlgNum::integer(1).is_in_mu(5));
        assert!(!AlgNum::integer(2).is_in_mu(6));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }
}
