//! Factorization of integer polynomials over Q (Zassenhaus: factor modulo a
//! good prime, Hensel lift, recombine by trial division).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp::{invmod, reduce_big, FpPoly};
use crate::poly::IntPoly;

/// Irreducible primitive factors with multiplicities, sorted by (degree, coefficients).
/// Constants and content are dropped.
pub fn factor_over_q(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|(a, _), (b, _)| cmp_poly(a, b));
    out
}

/// Distinct irreducible factors of `f` (multiplicities dropped).
pub fn irreducible_factors(f: &IntPoly) -> Vec<IntPoly> {
    factor_over_q(f).into_iter().map(|(g, _)| g).collect()
}

pub fn is_irreducible(f: &IntPoly) -> bool {
    if f.degree() < 1 {
        return false;
    }
    let fs = factor_over_q(f);
    fs.len() == 1 && fs[0].1 == 1
}

pub(crate) fn cmp_poly(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

fn factor_squarefree(g: &IntPoly) -> Vec<IntPoly> {
    let g = g.primitive_part();
    let d = g.degree();
    if d <= 1 {
        return vec![g];
    }
    if g.coeff(0).is_zero() {
        let rest = g.div_exact(&IntPoly::x()).unwrap();
        let mut v = vec![IntPoly::x()];
        v.extend(factor_squarefree(&rest));
        return v;
    }
    let (p, modular) = choose_prime(&g);
    if modular.len() == 1 {
        return vec![g];
    }
    let bound = coefficient_bound(&g);
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lifted = multifactor_lift(&g, &modular, p, k);
    recombine(g, lifted, &m)
}

/// Pick an odd prime not dividing the leading coefficient with squarefree
/// reduction, preferring the fewest modular factors among the first few candidates.
fn choose_prime(g: &IntPoly) -> (u64, Vec<FpPoly>) {
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p = next_prime(p);
        let gp = FpPoly::from_int(g, p);
        if gp.degree() != g.degree() || !gp.is_squarefree() {
            continue;
        }
        tried += 1;
        let fs = gp.monic().factor_squarefree();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.expect("a good prime exists for a squarefree polynomial")
}

pub(crate) fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime_u64(n) {
            return n;
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = crate::modp::powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = crate::modp::mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Bound on `2 * |lc| * |coefficients of any factor|` (Mignotte).
fn coefficient_bound(g: &IntPoly) -> BigInt {
    let norm2: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    BigInt::from(2) * g.lc().abs() * (BigInt::one() << g.degree()) * norm
}

fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_poly(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric_poly(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| symmetric(c, m)).collect())
}

/// Extended Euclid in F_p[x]: returns (s, t) with s*a + t*b = 1.
fn xgcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let p = a.p;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
    let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.degree(), 0, "xgcd of non-coprime polynomials");
    let inv = invmod(r0.c[0], p);
    (s0.scale(inv), t0.scale(inv))
}

/// Lift `f = a * b (mod p)`, `a` monic, to modulus `p^k`.
fn hensel_pair(f: &IntPoly, a: &FpPoly, b: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (s, t) = xgcd(a, b);
    let pb = BigInt::from(p);
    let mut a_z = a.to_int();
    let mut b_z = b.to_int();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let err = reduce_poly(&(f - &(&a_z * &b_z)), &next);
        // err is divisible by p^j
        let e = IntPoly::new(err.coeffs().iter().map(|c| c / &pj).collect());
        let e_p = FpPoly::from_int(&e, p);
        let te = t.mul(&e_p);
        let (q, alpha) = te.div_rem(a);
        let beta = s.mul(&e_p).add(&q.mul(b));
        a_z = reduce_poly(&(&a_z + &alpha.to_int().scale(&pj)), &next);
        b_z = reduce_poly(&(&b_z + &beta.to_int().scale(&pj)), &next);
        pj = next;
    }
    (a_z, b_z)
}

/// Lift monic modular factors of `g` (with `g = lc * prod(factors) mod p`) to `p^k`.
fn multifactor_lift(g: &IntPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let m = BigInt::from(p).pow(k);
    let mut out = Vec::new();
    let mut target = reduce_poly(g, &m);
    let lc_p = reduce_big(&g.lc(), p);
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            // remaining target is lc * last factor; normalize to monic
            let lc = target.lc();
            let inv = lc.modinv(&m).expect("leading coefficient is a unit");
            out.push(reduce_poly(&target.scale(&inv), &m));
            break;
        }
        let a = &factors[i];
        let mut rest = FpPoly::new(p, vec![lc_p]);
        for f in &factors[i + 1..] {
            rest = rest.mul(f);
        }
        let (a_l, b_l) = hensel_pair(&target, a, &rest, p, k);
        out.push(a_l);
        target = b_l;
    }
    out
}

fn recombine(mut g: IntPoly, mut lifted: Vec<IntPoly>, m: &BigInt) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let lc = g.lc();
            let mut prod = IntPoly::constant(lc.clone());
            for &i in &subset {
                prod = reduce_poly(&(&prod * &lifted[i]), m);
            }
            let cand = symmetric_poly(&prod, m).primitive_part();
            if cand.degree() == 0 {
                continue;
            }
            if let Some(q) = g.div_exact(&cand) {
                found.push(cand);
                g = q.primitive_part();
                hit = Some(subset);
                break;
            }
        }
        match hit {
            Some(subset) => {
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, f)| f)
                    .collect();
            }
            None => size += 1,
        }
    }
    if g.degree() >= 1 {
        found.push(g.primitive_part());
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn product(fs: &[(IntPoly, u32)]) -> IntPoly {
        fs.iter()
            .fold(IntPoly::one(), |acc, (g, m)| &acc * &g.pow(*m))
    }

    #[test]
    fn x4_plus_1_is_irreducible_despite_splitting_mod_every_prime() {
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])));
    }

    #[test]
    fn factors_products_of_cyclotomics() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]); // x^12 - 1
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 6);
        assert_eq!(product(&fs), f);
    }

    #[test]
    fn handles_non_monic_and_multiplicity() {
        let a = p(&[1, 0, 3]);
        let b = p(&[-2, 5]);
        let f = &(&a * &a) * &(&b * &p(&[1, 1, 1]));
        let fs = factor_over_q(&f);
        assert_eq!(product(&fs), f.primitive_part());
        assert!(fs.contains(&(a, 2)));
        assert!(fs.contains(&(b, 1)));
    }

    #[test]
    fn swinnerton_dyer_like_degree_8() {
        // minimal polynomial of sqrt2 + sqrt3 + sqrt5, irreducible of degree 8
        let f = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64(2) && is_prime_u64(7919) && !is_prime_u64(7917));
        assert!(is_prime_u64(1_000_000_007));
    }
}
