//! Dense univariate polynomials with unbounded integer coefficients.
//!
//! Coefficients are stored lowest degree first and trimmed so that the
//! leading coefficient is nonzero; the zero polynomial has no coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl From<IntPoly> for String {
    fn from(f: IntPoly) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for IntPoly {
    type Error = PolyParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(v: Vec<BigInt>) -> Self {
        IntPoly::new(v)
    }
}

impl From<IntPoly> for Vec<BigInt> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// `x - c`
    pub fn linear_root(c: &BigInt) -> Self {
        Self::new(vec![-c.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Evaluation reduced modulo `m`, result in `[0, m)`.
    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `f(g(x))`
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| &(&acc * g) + &IntPoly::constant(c.clone()))
    }

    /// `f(-x)`
    pub fn negate_var(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `f(t * x)`
    pub fn scale_var(&self, t: &BigInt) -> IntPoly {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= t;
        }
        IntPoly::new(out)
    }

    /// `f(x + t)` by Horner composition.
    pub fn shift(&self, t: &BigInt) -> IntPoly {
        self.compose(&IntPoly::new(vec![t.clone(), BigInt::one()]))
    }

    /// `x^deg * f(1/x)`
    pub fn reverse(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        let db = b.degree();
        let lb = b.lc();
        let mut r = self.clone();
        if r.is_zero() || r.degree() < db {
            return r;
        }
        let mut steps = r.degree() - db + 1;
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.lc();
            let t = IntPoly::monomial(lr, shift);
            r = &r.scale(&lb) - &(&t * b);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lb, steps));
        }
        r
    }

    /// Exact division over the integers; `None` when `b` does not divide `self` in Z[x].
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < b.degree() {
            return None;
        }
        let db = b.degree();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - db + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &qk * bc;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor in Z[x], primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Primitive squarefree part `f / gcd(f, f')`.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() < 1 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Squarefree decomposition (Musser): primitive factors with multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let f = self.primitive_part();
        if f.degree() < 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut g = f.gcd(&f.derivative());
        let mut w = rational_exact_quotient(&f, &g);
        let mut i = 1u32;
        while w.degree() >= 1 {
            let y = w.gcd(&g);
            let z = rational_exact_quotient(&w, &y);
            if z.degree() >= 1 {
                out.push((z, i));
            }
            g = rational_exact_quotient(&g, &y);
            w = y;
            i += 1;
        }
        out
    }

    /// True when `f` is a nonzero squarefree polynomial.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Rational root candidates tested exactly; returns all rational roots.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        crate::factor::factor_over_q(self)
            .into_iter()
            .filter(|(g, _)| g.degree() == 1)
            .map(|(g, _)| BigRational::new(-g.coeff(0), g.coeff(1)))
            .collect()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// `a / b` where the quotient is known to exist in Q[x]; returns its primitive part.
fn rational_exact_quotient(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return IntPoly::zero();
    }
    let k = a.degree().saturating_sub(b.degree()) as u32 + 1;
    let scaled = a.scale(&num_traits::pow(b.lc(), k as usize));
    match scaled.div_exact(b) {
        Some(q) => q.primitive_part(),
        None => panic!("polynomial does not divide in Q[x]"),
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 if show_coeff => write!(f, "*x")?,
                1 => write!(f, "x")?,
                _ if show_coeff => write!(f, "*x^{}", i)?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

/// A syntax error at byte offset `pos` of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at position {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parses sums of terms such as `x^2 - 3*x + 7` or `-2*x*x`: integer
/// coefficients, `x`, `^` with a literal exponent, `*`, `+` and `-`.
impl FromStr for IntPoly {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyParseError {
        PolyParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<IntPoly, PolyParseError> {
        let mut acc = IntPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return Err(self.error("empty polynomial")),
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<IntPoly, PolyParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntPoly, PolyParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let start = self.pos;
                    let e = self.integer()?;
                    let e = usize::try_from(&e)
                        .ok()
                        .filter(|&e| e <= 100_000)
                        .ok_or(PolyParseError { pos: start, msg: "exponent out of range".into() })?;
                    Ok(IntPoly::monomial(BigInt::one(), e))
                } else {
                    Ok(IntPoly::x())
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPoly::constant(self.integer()?)),
            Some(_) => Err(self.error("expected an integer or x")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(p(&[7, -1, 1]).to_string(), "x^2 - x + 7");
        assert_eq!(p(&[-5, 1]).to_string(), "x - 5");
        assert_eq!(p(&[0, 0, -3]).to_string(), "-3*x^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_grammar() {
        let f: IntPoly = "x^2-x+7".parse().unwrap();
        assert_eq!(f, p(&[7, -1, 1]));
        assert_eq!("-2*x*x + 3 * x^1 - 0".parse::<IntPoly>().unwrap(), p(&[0, 3, -2]));
        assert_eq!("x - 5".parse::<IntPoly>().unwrap(), p(&[-5, 1]));
        assert_eq!("12345678901234567890".parse::<IntPoly>().unwrap().coeff(0).to_string(), "12345678901234567890");
        let err = |s: &str| s.parse::<IntPoly>().unwrap_err().pos;
        assert_eq!(err("x^2 + y"), 6);
        assert_eq!(err("x^"), 2);
        assert_eq!(err(""), 0);
        assert_eq!(err("x +"), 3);
        assert_eq!(err("2x"), 1);
        assert_eq!(err("x^-1"), 2);
    }

    #[test]
    fn display_round_trips_through_parse() {
        for c in [vec![7i64, -1, 1], vec![0, 0, -3], vec![-1], vec![5, 0, 0, 0, -12, 1]] {
            let f = p(&c);
            assert_eq!(f.to_string().parse::<IntPoly>().unwrap(), f);
        }
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        let g = (&a * &p(&[3, 1])).gcd(&(&a * &p(&[5, 2])));
        assert_eq!(g, a);
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 0, 1])) * &p(&[3, 1]).pow(2);
        let mut dec = f.squarefree_decomposition();
        dec.sort_by_key(|(_, m)| *m);
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (p(&[2, 0, 1]), 1));
        assert_eq!(dec[1], (p(&[3, 1]), 2));
        assert_eq!(dec[2], (p(&[-1, 1]), 3));
        assert_eq!(f.squarefree_part(), &(&p(&[-1, 1]) * &p(&[2, 0, 1])) * &p(&[3, 1]));
    }

    #[test]
    fn pseudo_rem_matches_definition() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 2]);
        // lc(b)^3 * a(-1/2) = 8 * (1 - 1 + 3/4 - 1/2) = 2
        assert_eq!(a.pseudo_rem(&b), p(&[2]));
    }

    #[test]
    fn substitutions() {
        let f = p(&[7, -1, 1]);
        assert_eq!(f.negate_var(), p(&[7, 1, 1]));
        assert_eq!(f.scale_var(&BigInt::from(2)), p(&[7, -2, 4]));
        assert_eq!(f.shift(&BigInt::from(1)), p(&[7, 1, 1]));
        assert_eq!(f.reverse(), p(&[1, -1, 7]));
    }
}
