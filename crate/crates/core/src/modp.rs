//! Polynomials over a prime field F_p with word-sized p.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

/// A polynomial over F_p, coefficients lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {}", p);
    powmod(a, p - 2, p)
}

pub fn reduce_big(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|a| reduce_big(a, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        FpPoly::new(self.p, self.c.iter().map(|&a| mulmod(a, inv, self.p)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| (mulmod(acc, x, self.p) + a) % self.p)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let v = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
            .collect();
        FpPoly::new(p, v)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, v)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| mulmod(a, k, self.p)).collect())
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero in F_p[x]");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = invmod(d.lc(), p);
        let mut r = self.c.clone();
        let dd = d.degree();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = mulmod(r[k + dd], inv, p);
            q[k] = t;
            if t == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(t, b, p)) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, (i as u64) % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut d = 0usize;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&BigUint::from(p), &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.degree() > 0 {
            out.push((f.degree(), f));
        }
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial.
    pub fn irreducible_degrees(&self) -> Vec<usize> {
        let mut degs = Vec::new();
        for (d, g) in self.distinct_degree() {
            for _ in 0..g.degree() / d {
                degs.push(d);
            }
        }
        degs.sort_unstable();
        degs
    }

    /// Full factorization of a monic squarefree polynomial into monic irreducibles (p odd).
    pub fn factor_squarefree(&self) -> Vec<FpPoly> {
        assert!(self.p > 2, "equal-degree splitting requires an odd prime");
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree() {
            equal_degree_split(&g, d, &mut out);
        }
        out.sort_by(|a, b| (a.degree(), &a.c).cmp(&(b.degree(), &b.c)));
        out
    }

    /// All roots in F_p of this polynomial.
    pub fn roots(&self) -> Vec<u64> {
        if self.is_zero() {
            return Vec::new();
        }
        let p = self.p;
        if p < 4096 {
            return (0..p).filter(|&r| self.eval(r) == 0).collect();
        }
        let sq = self.monic();
        let g = FpPoly::x(p).pow_mod(&BigUint::from(p), &sq).sub(&FpPoly::x(p)).gcd(&sq);
        let mut lin = Vec::new();
        if g.degree() > 0 {
            equal_degree_split(&g, 1, &mut lin);
        }
        let mut r: Vec<u64> = lin.iter().map(|l| (p - l.c[0]) % p).collect();
        r.sort_unstable();
        r
    }

    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }
}

/// Cantor-Zassenhaus splitting with deterministic trial polynomials.
fn equal_degree_split(g: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    if g.degree() == d {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    let e: BigUint = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    let mut seed = 1u64;
    loop {
        // trial polynomial x^k + t walked through a fixed sequence
        let t = seed % p;
        let k = 1 + (seed / p) as usize % (2 * d).max(1);
        let mut trial = vec![0u64; k + 1];
        trial[0] = t;
        trial[k] = 1;
        if k > 1 {
            trial[1] = (seed / 7) % p;
        }
        let a = FpPoly::new(p, trial);
        seed += 1;
        let b = a.pow_mod(&e, g).sub(&FpPoly::one(p));
        let h = b.gcd(g);
        if h.degree() > 0 && h.degree() < g.degree() {
            let other = g.div_rem(&h).0;
            equal_degree_split(&h, d, out);
            equal_degree_split(&other, d, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_x4_minus_1_mod_5() {
        let f = FpPoly::new(5, vec![4, 0, 0, 0, 1]);
        let fs = f.factor_squarefree();
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|g| g.degree() == 1));
        assert_eq!(f.roots(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn distinct_degrees_of_x2_plus_1_mod_7() {
        let f = FpPoly::new(7, vec![1, 0, 1]);
        assert_eq!(f.irreducible_degrees(), vec![2]);
        let g = FpPoly::new(7, vec![1, 0, 1]).mul(&FpPoly::new(7, vec![3, 1]));
        assert_eq!(g.irreducible_degrees(), vec![1, 2]);
        assert_eq!(g.factor_squarefree().len(), 2);
    }

    #[test]
    fn squarefree_detection() {
        let f = FpPoly::new(3, vec![1, 2, 1]); // (x+1)^2
        assert!(!f.is_squarefree());
        assert!(FpPoly::new(3, vec![1, 0, 1]).is_squarefree());
    }

    #[test]
    fn char_two_degrees() {
        // x^3 + x + 1 irreducible over F_2
        assert_eq!(FpPoly::new(2, vec![1, 1, 0, 1]).irreducible_degrees(), vec![3]);
    }
}
