use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{CertifierError, LubinTateInput};
use crate::algnum::AlgNum;
use crate::factor::factor_over_q;
use crate::padic::{hensel_lift, PadicApprox, RamifiedAlgebra};
use crate::poly::IntPoly;
use crate::resultant::{resultant_y, BiPoly};

/// A candidate `zeta^a * pi^s`, where `zeta` is a fixed primitive `r`-th root
/// of unity in Z_p and `pi^r = c`. `tuple` is one choice of exponents
/// `r_sigma` in {0, 1} over the `f r` embeddings (indexed `i r + j` for the
/// embedding acting as `pi -> zeta^j pi` on the `i`-th Frobenius power) that
/// realizes the key `(a, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub a: u64,
    pub s: u64,
    pub tuple: Vec<u8>,
}

/// Every distinct value `prod sigma(pi)^{r_sigma}` as a key `(a mod r, s)`,
/// ordered by `s` then `a`. Distinct keys give distinct values because
/// `pi^t` is a root of unity only for `t = 0`.
pub fn candidate_keys(f: u32, r: u64) -> Vec<Candidate> {
    let mut found: std::collections::BTreeMap<(u64, u64), Vec<u8>> = Default::default();
    // m[j] = number of Frobenius powers i with r_(i, j) = 1
    let mut m = vec![0u32; r as usize];
    loop {
        let s: u64 = m.iter().map(|&x| x as u64).sum();
        let a = m.iter().enumerate().map(|(j, &x)| j as u64 * x as u64).sum::<u64>() % r;
        found.entry((s, a)).or_insert_with(|| {
            let mut t = vec![0u8; (f as u64 * r) as usize];
            for (j, &mj) in m.iter().enumerate() {
                for i in 0..mj as usize {
                    t[i * r as usize + j] = 1;
                }
            }
            t
        });
        // odometer over {0..f}^r
        let mut k = 0;
        while k < m.len() && m[k] == f {
            m[k] = 0;
            k += 1;
        }
        if k == m.len() {
            break;
        }
        m[k] += 1;
    }
    found.into_iter().map(|((s, a), tuple)| Candidate { a, s, tuple }).collect()
}

/// Primitive polynomial vanishing at every `zeta^a pi^s` as `c` runs over its
/// conjugates: `Res_y(m_c(y), x^r - y^s)`.
pub fn annihilator(c_minpoly: &IntPoly, r: u64, s: u64) -> IntPoly {
    resultant_y(c_minpoly, &BiPoly::binomial(r as usize, &BigInt::one(), s as usize)).primitive_part()
}

/// A primitive `r`-th root of unity in Z_p modulo `p^n`, for `r | p - 1`.
pub fn root_of_unity_mod(p: u64, r: u64, n: u32) -> BigInt {
    assert_eq!((p - 1) % r, 0);
    if r == 1 {
        return BigInt::one();
    }
    let pb = BigInt::from(p);
    let prime_factors: Vec<u64> = (2..=r).filter(|&l| r.is_multiple_of(l) && (2..l).all(|d| l % d != 0)).collect();
    let z0 = (2..p)
        .map(|x| BigInt::from(x).modpow(&BigInt::from((p - 1) / r), &pb))
        .find(|z| prime_factors.iter().all(|&l| z.modpow(&BigInt::from(r / l), &pb) != BigInt::one()))
        .expect("F_p^* is cyclic");
    let xr1 = &IntPoly::monomial(BigInt::one(), r as usize) - &IntPoly::one();
    hensel_lift(&xr1, p, &z0, n).expect("r is prime to p")
}

/// Local data shared by the candidate computations at one precision.
pub struct LocalContext {
    pub alg: RamifiedAlgebra,
    pub c: BigInt,
    pub zeta: BigInt,
    pub modulus: BigInt,
}

impl LocalContext {
    pub fn new(input: &LubinTateInput, c: &PadicApprox) -> Self {
        let n = c.absolute_precision() as u32;
        let modulus = BigInt::from(input.p).pow(n);
        let c_int = c.to_integer().expect("integral").mod_floor(&modulus);
        LocalContext {
            alg: RamifiedAlgebra::new(input.p, n, input.r as usize, &c_int),
            zeta: root_of_unity_mod(input.p, input.r, n),
            c: c_int,
            modulus,
        }
    }

    /// `zeta^a pi^s` in the truncated ring of integers of `Q_p(pi)`.
    pub fn value(&self, r: u64, a: u64, s: u64) -> Vec<BigInt> {
        let coeff = self.zeta.modpow(&BigInt::from(a), &self.modulus);
        let coeff = coeff * self.c.modpow(&BigInt::from(s / r), &self.modulus);
        self.alg.monomial(&coeff, (s % r) as usize)
    }
}

/// Minimal polynomial of `zeta^a pi^s`: the unique irreducible factor of the
/// annihilator that vanishes at it in the local ring.
pub fn identify(
    input: &LubinTateInput,
    ctx: &LocalContext,
    a: u64,
    s: u64,
) -> Result<IntPoly, CertifierError> {
    let ann = annihilator(&input.c_minpoly, input.r, s);
    let factors: Vec<IntPoly> = factor_over_q(&ann).into_iter().map(|(g, _)| g).collect();
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let x = ctx.value(input.r, a, s);
    let hits: Vec<&IntPoly> = factors.iter().filter(|g| ctx.alg.is_zero(&ctx.alg.eval(g, &x))).collect();
    match hits.as_slice() {
        [g] => Ok((*g).clone()),
        [] => Err(CertifierError::Inconsistent(format!("no factor of {ann} vanishes at zeta^{a} pi^{s}"))),
        _ => Err(CertifierError::Ambiguous(format!("{} factors vanish at zeta^{a} pi^{s}", hits.len()))),
    }
}

/// `Nr_{k/Q_p}(pi) = ((-1)^(r-1) c)^f`.
pub fn norm_over_qp(input: &LubinTateInput, c: &AlgNum) -> Result<AlgNum, CertifierError> {
    let cf = c.power(input.f)?;
    if (input.r - 1) * input.f as u64 % 2 == 1 {
        Ok(cf.product(&AlgNum::integer(-1))?)
    } else {
        Ok(cf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_traits::Zero;

    fn is_zero_mod(x: &BigInt, m: &BigInt) -> bool {
        x.mod_floor(m).is_zero()
    }

    #[test]
    fn keys_for_small_shapes() {
        let k = |f, r| candidate_keys(f, r).into_iter().map(|c| (c.a, c.s)).collect::<Vec<_>>();
        assert_eq!(k(1, 1), vec![(0, 0), (0, 1)]);
        assert_eq!(k(1, 2), vec![(0, 0), (0, 1), (1, 1), (1, 2)]);
        assert_eq!(k(2, 1), vec![(0, 0), (0, 1), (0, 2)]);
        // f = 1: s = |J| and a = sum of J over subsets J of {0..r-1}
        let keys = k(1, 3);
        assert_eq!(keys, vec![(0, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2), (0, 3)]);
    }

    #[test]
    fn tuples_realize_their_keys() {
        for (f, r) in [(1u32, 4u64), (2, 3), (3, 2)] {
            for c in candidate_keys(f, r) {
                assert_eq!(c.tuple.len() as u64, f as u64 * r);
                let s: u64 = c.tuple.iter().map(|&x| x as u64).sum();
                let a: u64 = c.tuple.iter().enumerate().map(|(i, &x)| (i as u64 % r) * x as u64).sum::<u64>() % r;
                assert_eq!((a, s), (c.a, c.s));
            }
        }
    }

    #[test]
    fn key_count_matches_brute_force() {
        for (f, r) in [(1u32, 2u64), (2, 2), (1, 4), (2, 3)] {
            let n = (f as u64 * r) as u32;
            let mut set = std::collections::BTreeSet::new();
            for mask in 0u64..(1 << n) {
                let s = mask.count_ones() as u64;
                let a = (0..n as u64).filter(|i| mask >> i & 1 == 1).map(|i| i % r).sum::<u64>() % r;
                set.insert((s, a));
            }
            assert_eq!(candidate_keys(f, r).len(), set.len());
        }
    }

    #[test]
    fn roots_of_unity_mod_prime_powers() {
        let m = BigInt::from(13).pow(10);
        for r in [1u64, 2, 3, 4, 6, 12] {
            let z = root_of_unity_mod(13, r, 10);
            assert!(is_zero_mod(&(z.modpow(&BigInt::from(r), &m) - 1), &m));
            for d in 1..r {
                assert!(!is_zero_mod(&(z.modpow(&BigInt::from(d), &m) - 1), &m));
            }
        }
    }

    #[test]
    fn annihilators() {
        let m = IntPoly::from_i64(&[-5, 1]);
        assert_eq!(annihilator(&m, 2, 1), IntPoly::from_i64(&[-5, 0, 1]));
        assert_eq!(annihilator(&m, 2, 2), IntPoly::from_i64(&[-25, 0, 1]));
        assert_eq!(annihilator(&m, 1, 0), IntPoly::from_i64(&[-1, 1]));
    }
}
