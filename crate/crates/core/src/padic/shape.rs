use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{valuation, PadicError};
use crate::modp::{reduce_big, FpPoly};
use crate::poly::IntPoly;

/// Degree, ramification index, residue degree and root valuation of one
/// irreducible factor over Q_p.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocalFactor {
    pub degree: usize,
    pub e: usize,
    pub f: usize,
    #[serde(with = "crate::serde_text")]
    pub slope: BigRational,
}


/// Shapes of the irreducible factors of `f` over Q_p, sorted by slope then degree.
///
/// Roots are separated by MacLane's inductive valuations: each cluster of
/// roots sharing a repeated linear residual root gets a sharper key
/// polynomial, either of the same degree (when the segment is unramified)
/// or of degree multiplied by the ramification of the segment. Everything is
/// exact integer arithmetic. `budget` caps the number of sharpening steps;
/// a repeated residual factor of degree above one yields `Undetermined`.
pub fn factor_shape_over_qp(f: &IntPoly, p: u64, budget: u32) -> Result<Vec<LocalFactor>, PadicError> {
    if f.coeff(0).is_zero() {
        return Err(PadicError::ZeroConstantTerm);
    }
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        if g.degree() == 0 {
            continue;
        }
        let mut part = Vec::new();
        let ty = Type { p, levels: Vec::new() };
        ty.split(g.clone(), IntPoly::x(), None, None, budget, &mut part)?;
        if part.iter().map(|l| l.degree).sum::<usize>() != g.degree() {
            return Err(PadicError::Undetermined { slope: "?".into() });
        }
        for _ in 0..m {
            out.extend(part.iter().cloned());
        }
    }
    out.sort_by(|a, b| (&a.slope, a.degree, a.e, a.f).cmp(&(&b.slope, b.degree, b.e, b.f)));
    Ok(out)
}

/// One fixed step of an inductive valuation: key polynomial `phi` with value
/// `v`, relative ramification `e`, and `z` the residue of
/// `phi^e / S(e v)` on the cluster being followed.
#[derive(Clone)]
struct Level {
    phi: IntPoly,
    v: BigRational,
    e: usize,
    z: u64,
}

/// Dominant monomial of a polynomial: `unit * p^exps[0] * prod phi_l^exps[l]`.
struct Lead {
    value: BigRational,
    unit: u64,
    exps: Vec<i64>,
}

#[derive(Clone)]
struct Type {
    p: u64,
    levels: Vec<Level>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients of the `phi`-adic expansion of `f`, for monic `phi`.
fn expand(f: &IntPoly, phi: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = divmod_monic(&rest, phi);
        out.push(r);
        rest = q;
    }
    out
}

fn divmod_monic(f: &IntPoly, phi: &IntPoly) -> (IntPoly, IntPoly) {
    let n = phi.degree();
    let mut r: Vec<BigInt> = f.coeffs().to_vec();
    if r.len() <= n {
        return (IntPoly::zero(), f.clone());
    }
    let mut q = vec![BigInt::zero(); r.len() - n];
    for k in (0..q.len()).rev() {
        let c = r[k + n].clone();
        if c.is_zero() {
            continue;
        }
        for (i, a) in phi.coeffs().iter().enumerate() {
            r[k + i] -= &c * a;
        }
        q[k] = c;
    }
    r.truncate(n);
    (IntPoly::new(q), IntPoly::new(r))
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Type {
    /// Product of the ramification indices of the first `l` levels.
    fn ram(&self, l: usize) -> usize {
        self.levels[..l].iter().map(|x| x.e).product()
    }

    /// Dominant monomial of `g` under the valuation of the first `l` levels;
    /// `deg g` must be below the degree of the next key polynomial.
    fn lead(&self, g: &IntPoly, l: usize) -> Option<Lead> {
        if g.is_zero() {
            return None;
        }
        if l == 0 {
            let c = g.coeff(0);
            let v = valuation(&c, self.p);
            let unit = reduce_big(&(&c / BigInt::from(self.p).pow(v)), self.p);
            return Some(Lead { value: rat(v as i64), unit, exps: vec![v as i64] });
        }
        let lvl = &self.levels[l - 1];
        let mut best: Option<Lead> = None;
        for (t, gt) in expand(g, &lvl.phi).iter().enumerate() {
            if let Some(mut ld) = self.lead(gt, l - 1) {
                ld.value += &lvl.v * rat(t as i64);
                ld.exps.push(t as i64);
                if best.as_ref().is_none_or(|b| ld.value < b.value) {
                    best = Some(ld);
                }
            }
        }
        best
    }

    /// The monomial `p^A prod phi_l^t_l` with `0 <= t_l < e_l` and value `w`.
    fn standard(&self, w: &BigRational, l: usize) -> Vec<i64> {
        let mut w = w.clone();
        let mut exps = vec![0i64; l + 1];
        for k in (1..=l).rev() {
            let lvl = &self.levels[k - 1];
            let below = rat(self.ram(k - 1) as i64);
            let t = (0..lvl.e)
                .find(|&t| ((&w - &lvl.v * rat(t as i64)) * &below).is_integer())
                .expect("value lies in the value group");
            w -= &lvl.v * rat(t as i64);
            exps[k] = t as i64;
        }
        exps[0] = w.to_integer().to_i64().expect("integral value");
        exps
    }

    fn monomial_poly(&self, exps: &[i64]) -> Option<IntPoly> {
        if exps[0] < 0 {
            return None;
        }
        let mut m = IntPoly::constant(BigInt::from(self.p).pow(exps[0] as u32));
        for (k, &t) in exps.iter().enumerate().skip(1) {
            m = &m * &self.levels[k - 1].phi.pow(t as u32);
        }
        Some(m)
    }

    /// Residue in F_p of a value-zero monomial.
    fn reduce(&self, mut exps: Vec<i64>) -> u64 {
        let p = self.p;
        let mut acc = 1u64;
        for k in (1..exps.len()).rev() {
            let lvl = &self.levels[k - 1];
            let n = exps[k] / lvl.e as i64;
            debug_assert_eq!(exps[k] % lvl.e as i64, 0);
            exps.truncate(k);
            let s = self.standard(&(&lvl.v * rat(lvl.e as i64)), k - 1);
            for (x, y) in exps.iter_mut().zip(s) {
                *x += n * y;
            }
            let zn = mod_pow(lvl.z, n.unsigned_abs(), p);
            let zn = if n < 0 { mod_pow(zn, p - 2, p) } else { zn };
            acc = (acc as u128 * zn as u128 % p as u128) as u64;
        }
        acc
    }

    /// Factor shapes of the roots of `f` whose value at `phi` exceeds `floor`.
    fn split(
        &self,
        mut f: IntPoly,
        phi: IntPoly,
        floor: Option<&BigRational>,
        slope: Option<&BigRational>,
        budget: u32,
        out: &mut Vec<LocalFactor>,
    ) -> Result<(), PadicError> {
        let i = self.levels.len();
        let ram = self.ram(i);
        let m = phi.degree();
        let mut coeffs = expand(&f, &phi);
        // a key polynomial dividing f is itself an irreducible factor
        while coeffs[0].is_zero() {
            let s = slope.expect("x does not divide f").clone();
            out.push(LocalFactor { degree: m, e: ram, f: 1, slope: s });
            f = divmod_monic(&f, &phi).0;
            coeffs = expand(&f, &phi);
        }
        let leads: Vec<Option<Lead>> = coeffs.iter().map(|a| self.lead(a, i)).collect();
        let pts: Vec<(usize, BigRational)> =
            leads.iter().enumerate().filter_map(|(j, l)| l.as_ref().map(|l| (j, l.value.clone()))).collect();
        for (ja, jb, v) in lower_hull(&pts) {
            if floor.is_some_and(|fl| v <= *fl) {
                continue;
            }
            let undetermined = || PadicError::Undetermined { slope: slope.unwrap_or(&v).to_string() };
            let reported = slope.unwrap_or(&v).clone();
            // ramification of this segment over the value group so far
            let e = (&v * rat(ram as i64)).denom().to_usize().unwrap();
            let s_exps = self.standard(&(&v * rat(e as i64)), i);
            let base = leads[ja].as_ref().unwrap();
            let height = &base.value + &v * rat(ja as i64);
            let res_coeffs: Vec<u64> = (0..=(jb - ja) / e)
                .map(|k| {
                    let j = ja + k * e;
                    match &leads[j] {
                        Some(ld) if ld.value.clone() + &v * rat(j as i64) == height => {
                            let exps: Vec<i64> = (0..=i)
                                .map(|t| ld.exps[t] + k as i64 * s_exps[t] - base.exps[t])
                                .collect();
                            let r = self.reduce(exps);
                            let u = ld.unit as u128 * mod_pow(base.unit, self.p - 2, self.p) as u128;
                            (u % self.p as u128 * r as u128 % self.p as u128) as u64
                        }
                        _ => 0,
                    }
                })
                .collect();
            let mut res = FpPoly::new(self.p, res_coeffs).monic();
            let mut repeated = Vec::new();
            for z in res.roots() {
                let lin = FpPoly::new(self.p, vec![(self.p - z) % self.p, 1]);
                let mut mult = 0;
                loop {
                    let (q, r) = res.div_rem(&lin);
                    if !r.is_zero() {
                        break;
                    }
                    res = q;
                    mult += 1;
                }
                if mult == 1 {
                    out.push(LocalFactor { degree: m * e, e: ram * e, f: 1, slope: reported.clone() });
                } else {
                    repeated.push(z);
                }
            }
            if res.degree() > 0 {
                if !res.is_squarefree() {
                    return Err(undetermined());
                }
                for t in res.irreducible_degrees() {
                    out.push(LocalFactor { degree: m * e * t, e: ram * e, f: t, slope: reported.clone() });
                }
            }
            if repeated.is_empty() {
                continue;
            }
            if budget == 0 {
                return Err(undetermined());
            }
            let s_poly = self.monomial_poly(&s_exps).ok_or_else(undetermined)?;
            for z in repeated {
                let zt = IntPoly::constant(BigInt::from(z));
                if e == 1 {
                    // same degree, sharper center
                    let next = &phi - &(&zt * &s_poly);
                    self.split(f.clone(), next, Some(&v), Some(&reported), budget - 1, out)?;
                } else {
                    let mut deeper = self.clone();
                    deeper.levels.push(Level { phi: phi.clone(), v: v.clone(), e, z });
                    let next = &phi.pow(e as u32) - &(&zt * &s_poly);
                    let fl = &v * rat(e as i64);
                    deeper.split(f.clone(), next, Some(&fl), Some(&reported), budget - 1, out)?;
                }
            }
        }
        Ok(())
    }
}

/// Edges `(j_a, j_b, v)` of the lower convex hull of the points, where `-v`
/// is the slope of the edge.
fn lower_hull(pts: &[(usize, BigRational)]) -> Vec<(usize, usize, BigRational)> {
    let mut hull: Vec<&(usize, BigRational)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above the segment from a to pt
            let lhs = (&b.1 - &a.1) * rat((pt.0 - a.0) as i64);
            let rhs = (&pt.1 - &a.1) * rat((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let v = (&w[0].1 - &w[1].1) / rat((w[1].0 - w[0].0) as i64);
            (w[0].0, w[1].0, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn lf(degree: usize, e: usize, f: usize, n: i64, d: i64) -> LocalFactor {
        LocalFactor { degree, e, f, slope: BigRational::new(BigInt::from(n), BigInt::from(d)) }
    }

    #[test]
    fn documented_shapes() {
        assert_eq!(factor_shape_over_qp(&p(&[1, 0, 1]), 5, 64).unwrap(), vec![lf(1, 1, 1, 0, 1), lf(1, 1, 1, 0, 1)]);
        assert_eq!(factor_shape_over_qp(&p(&[1, 0, 1]), 3, 64).unwrap(), vec![lf(2, 1, 2, 0, 1)]);
        assert_eq!(factor_shape_over_qp(&p(&[-2, 0, 1]), 2, 64).unwrap(), vec![lf(2, 2, 1, 1, 2)]);
        assert_eq!(
            factor_shape_over_qp(&p(&[7, -1, 1]), 7, 64).unwrap(),
            vec![lf(1, 1, 1, 0, 1), lf(1, 1, 1, 1, 1)]
        );
    }

    #[test]
    fn recentering_separates_clustered_roots() {
        // (x - 1)(x - 1 - 5^3) over Q_5: residual (y - 1)^2 at slope 0
        let f = &p(&[-1, 1]) * &p(&[-126, 1]);
        assert_eq!(factor_shape_over_qp(&f, 5, 64).unwrap(), vec![lf(1, 1, 1, 0, 1), lf(1, 1, 1, 0, 1)]);
        // x^2 - 2x + 1 - 5^3 = (x - 1)^2 - 125: a ramified pair around 1
        let g = p(&[-124, -2, 1]);
        assert_eq!(factor_shape_over_qp(&g, 5, 64).unwrap(), vec![lf(2, 2, 1, 0, 1)]);
    }

    #[test]
    fn budget_exhaustion_is_undetermined() {
        let g = p(&[-124, -2, 1]);
        assert!(matches!(factor_shape_over_qp(&g, 5, 0), Err(PadicError::Undetermined { .. })));
    }

    #[test]
    fn shapes_account_for_every_root() {
        for (c, prime) in [(vec![3i64, 1, 0, 1, 7, 2, 1], 3u64), (vec![25, 0, 5, 0, 1], 5), (vec![-2, 0, 0, 0, 1], 2)] {
            let f = IntPoly::from_i64(&c);
            let sh = factor_shape_over_qp(&f, prime, 64).unwrap();
            assert_eq!(sh.iter().map(|l| l.degree).sum::<usize>(), f.degree());
            assert!(sh.iter().all(|l| l.degree == l.e * l.f));
        }
    }

    #[test]
    fn close_ramified_pairs_separate() {
        // x^2 - 13 c with c = 2 and c = 2 + 13^3: two ramified quadratics whose
        // residual roots agree, so only a second key polynomial splits them
        let c2 = 2 + 13i64.pow(3);
        let f = &p(&[-26, 0, 1]) * &p(&[-13 * c2, 0, 1]);
        assert_eq!(factor_shape_over_qp(&f, 13, 64).unwrap(), vec![lf(2, 2, 1, 1, 2), lf(2, 2, 1, 1, 2)]);
        // 26 and 26 * 14^2 generate the same ramified quadratic
        let g = &p(&[-26, 0, 1]) * &p(&[-26 * 196, 0, 1]);
        assert_eq!(factor_shape_over_qp(&g, 13, 64).unwrap(), vec![lf(2, 2, 1, 1, 2), lf(2, 2, 1, 1, 2)]);
    }

    #[test]
    fn second_order_ramification() {
        // (x^2 - 5)^2 - 5^3 x: roots satisfy x^2 = 5 + O(5^(7/4)), a totally ramified quartic
        let phi2 = p(&[-5, 0, 1]);
        let f = &(&phi2 * &phi2) - &p(&[0, 125]);
        let sh = factor_shape_over_qp(&f, 5, 64).unwrap();
        assert_eq!(sh, vec![lf(4, 4, 1, 1, 2)]);
    }
}
