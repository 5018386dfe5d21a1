//! Exact real-root counting with Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::IntPoly;

/// Sturm sequence of `f` with every term scaled by a positive constant to
/// stay in Z[x]; sign patterns are unchanged by such scaling.
pub fn sturm_sequence(f: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![f.clone()];
    if f.degree() == 0 {
        return seq;
    }
    seq.push(f.derivative());
    loop {
        let n = seq.len();
        let a = &seq[n - 2];
        let b = &seq[n - 1];
        if b.degree() == 0 {
            break;
        }
        // prem = lc(b)^k * a mod b; we need -(a mod b) up to a positive factor
        let k = a.degree() - b.degree() + 1;
        let mut r = a.pseudo_rem(b);
        if b.lc().is_negative() && k % 2 == 1 {
            r = -&r;
        }
        let r = -&r;
        if r.is_zero() {
            break;
        }
        let c = r.content();
        let r = IntPoly::new(r.coeffs().iter().map(|x| x / &c).collect());
        seq.push(r);
    }
    seq
}

fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn variations_at(seq: &[IntPoly], x: &BigRational) -> usize {
    variations(seq.iter().map(|g| sign(&g.eval_rational(x))))
}

fn variations_at_infinity(seq: &[IntPoly], positive: bool) -> usize {
    variations(seq.iter().map(|g| {
        let s: i8 = if g.lc().is_positive() { 1 } else { -1 };
        if positive || g.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
///
/// `f` need not be squarefree; its squarefree part is used. Endpoints may be roots.
pub fn sturm_count(f: &IntPoly, lo: &BigRational, hi: &BigRational) -> usize {
    assert!(lo < hi, "empty interval");
    let g = f.squarefree_part();
    if g.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(&g);
    variations_at(&seq, lo) - variations_at(&seq, hi)
}

/// Number of distinct real roots of `f`.
pub fn count_real_roots(f: &IntPoly) -> usize {
    let g = f.squarefree_part();
    if g.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(&g);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Number of distinct positive real roots of `f`.
pub fn count_positive_roots(f: &IntPoly) -> usize {
    let mut g = f.squarefree_part();
    if g.degree() == 0 {
        return 0;
    }
    if g.coeff(0).is_zero() {
        g = g.div_exact(&IntPoly::x()).unwrap();
        if g.degree() == 0 {
            return 0;
        }
    }
    let seq = sturm_sequence(&g);
    variations_at(&seq, &BigRational::zero()) - variations_at_infinity(&seq, true)
}

/// Cauchy bound: every complex root has modulus strictly below the returned integer.
pub fn root_bound(f: &IntPoly) -> BigInt {
    let lc = f.lc().abs();
    let m = f
        .coeffs()
        .iter()
        .take(f.degree())
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigInt::from(1) + num_integer::Integer::div_ceil(&m, &lc) + 1
}
