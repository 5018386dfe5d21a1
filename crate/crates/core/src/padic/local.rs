use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::poly::IntPoly;

/// `(Z / p^N)[pi] / (pi^r - c)`: the ring of integers of `Q_p(c^(1/r))` for
/// `v_p(c) = 1`, truncated modulo `p^N`. Elements are coordinate vectors in
/// the basis `1, pi, ..., pi^(r-1)`, which is a Z_p-basis, so an element with
/// a nonzero coordinate is certainly nonzero.
#[derive(Debug, Clone)]
pub struct RamifiedAlgebra {
    pub r: usize,
    modulus: BigInt,
    c: BigInt,
}

impl RamifiedAlgebra {
    /// `c` must already be reduced modulo `p^n`.
    pub fn new(p: u64, n: u32, r: usize, c: &BigInt) -> Self {
        assert!(r >= 1);
        let modulus = BigInt::from(p).pow(n);
        RamifiedAlgebra { r, c: c.mod_floor(&modulus), modulus }
    }

    pub fn scalar(&self, x: &BigInt) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.r];
        v[0] = x.mod_floor(&self.modulus);
        v
    }

    /// `x * pi^k`
    pub fn monomial(&self, x: &BigInt, k: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.r];
        let (q, rem) = (k / self.r, k % self.r);
        v[rem] = (x * self.c.modpow(&BigInt::from(q), &self.modulus)).mod_floor(&self.modulus);
        v
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.modulus)).collect()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let r = self.r;
        let mut out = vec![BigInt::zero(); r];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let k = i + j;
                let t = x * y;
                if k < r {
                    out[k] += t;
                } else {
                    out[k - r] += t * &self.c;
                }
            }
        }
        out.iter().map(|x| x.mod_floor(&self.modulus)).collect()
    }

    pub fn eval(&self, g: &IntPoly, x: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.r];
        for c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = (&acc[0] + c).mod_floor(&self.modulus);
        }
        acc
    }

    pub fn is_zero(&self, a: &[BigInt]) -> bool {
        a.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_satisfies_its_equation() {
        let alg = RamifiedAlgebra::new(5, 20, 4, &BigInt::from(10));
        let pi = alg.monomial(&BigInt::from(1), 1);
        let f = IntPoly::from_i64(&[-10, 0, 0, 0, 1]);
        assert!(alg.is_zero(&alg.eval(&f, &pi)));
        let g = IntPoly::from_i64(&[-10, 0, 1]);
        assert!(!alg.is_zero(&alg.eval(&g, &pi)));
        // pi^2 is a root of x^2 - 10
        let pi2 = alg.mul(&pi, &pi);
        assert!(alg.is_zero(&alg.eval(&g, &pi2)));
        assert_eq!(alg.monomial(&BigInt::from(3), 6), alg.mul(&alg.scalar(&BigInt::from(30)), &pi2));
    }
}
