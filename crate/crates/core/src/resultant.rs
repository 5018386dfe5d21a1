//! Resultants of integer polynomials.
//!
//! Univariate resultants are Sylvester determinants computed fraction-free
//! (Bareiss). Resultants eliminating `y` from a bivariate polynomial are
//! obtained by evaluating `x` at enough integer points and interpolating.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::IntPoly;

/// A polynomial in `x` and `y`, stored as coefficients of `y^k` (each a polynomial in `x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    by_y: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut by_y: Vec<IntPoly>) -> Self {
        while by_y.last().is_some_and(IntPoly::is_zero) {
            by_y.pop();
        }
        BiPoly { by_y }
    }

    /// A univariate polynomial in `y`.
    pub fn in_y(f: &IntPoly) -> Self {
        Self::new(f.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect())
    }

    /// `y^deg(f) * f(x / y)`; eliminating `y` against `g(y)` yields products of roots.
    pub fn homogenized(f: &IntPoly) -> Self {
        let d = f.degree();
        let mut by_y = vec![IntPoly::zero(); d + 1];
        for (i, c) in f.coeffs().iter().enumerate() {
            by_y[d - i] = IntPoly::monomial(c.clone(), i);
        }
        Self::new(by_y)
    }

    /// `x^a - c * y^b`
    pub fn binomial(a: usize, c: &BigInt, b: usize) -> Self {
        let mut by_y = vec![IntPoly::zero(); b + 1];
        by_y[0] = IntPoly::monomial(BigInt::one(), a);
        by_y[b] = &by_y[b] - &IntPoly::constant(c.clone());
        Self::new(by_y)
    }

    pub fn degree_y(&self) -> usize {
        self.by_y.len().saturating_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.by_y.iter().map(IntPoly::degree).max().unwrap_or(0)
    }

    /// Coefficients in `y` after substituting `x = t`, untrimmed (nominal degree kept).
    fn at_x(&self, t: &BigInt) -> Vec<BigInt> {
        self.by_y.iter().map(|c| c.eval(t)).collect()
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Sylvester determinant of coefficient vectors (lowest first) with their nominal degrees.
fn sylvester(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let n = a.len() - 1;
    let m = b.len() - 1;
    let size = n + m;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// Resultant of two nonzero univariate integer polynomials.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    sylvester(f.coeffs(), g.coeffs())
}

/// `Res_y(a(y), b(x, y))` as a polynomial in `x`.
pub fn resultant_y(a: &IntPoly, b: &BiPoly) -> IntPoly {
    assert!(!a.is_zero(), "resultant of zero polynomial");
    let bound = a.degree() * b.degree_x();
    let pts: Vec<BigInt> = (0..=bound as i64).map(BigInt::from).collect();
    let vals: Vec<BigInt> = pts
        .iter()
        .map(|t| {
            let bt = b.at_x(t);
            if bt.is_empty() {
                BigInt::zero()
            } else {
                sylvester(a.coeffs(), &bt)
            }
        })
        .collect();
    interpolate(&pts, &vals)
}

/// Newton interpolation through integer points; the result must have integer coefficients.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - j]);
            dd[i] = num / den;
        }
    }
    // expand Newton form into monomial coefficients
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // coeffs = coeffs * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * BigRational::from_integer(xs[k].clone());
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated resultant is not integral");
                c.to_integer()
            })
            .collect(),
    )
}
