//! Certified complex root isolation.
//!
//! Every root is enclosed in a disk with a dyadic-rational center and a rational
//! radius. For a polynomial of degree `n` and any point `z`, the closed disk of
//! radius `n |f(z) / f'(z)|` around `z` contains a root; `n` such disks that are
//! pairwise disjoint therefore contain exactly one root each.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::IntPoly;

/// Hard cap on refinement rounds before reporting an isolation failure.
pub const MAX_REFINEMENT_ROUNDS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex {
    #[serde(with = "crate::serde_text")]
    pub re: BigRational,
    #[serde(with = "crate::serde_text")]
    pub im: BigRational,
}

impl Complex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn from_int(n: &BigInt) -> Self {
        Self::new(BigRational::from_integer(n.clone()), BigRational::zero())
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let n = o.norm2();
        let num = self.mul(&Complex::new(o.re.clone(), -o.im.clone()));
        Complex::new(num.re / &n, num.im / n)
    }

    pub fn pow(&self, m: u32) -> Complex {
        let mut acc = Complex::new(BigRational::one(), BigRational::zero());
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn round(&self, bits: u32) -> Complex {
        Complex::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }

    fn from_f64(re: f64, im: f64) -> Option<Complex> {
        Some(Complex::new(
            BigRational::from_float(re)?,
            BigRational::from_float(im)?,
        ))
    }
}

fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x.numer() * &scale).div_floor(x.denom());
    BigRational::new(n, scale)
}

fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x.numer() * &scale).div_ceil(x.denom());
    BigRational::new(n, scale)
}

/// Rational upper bound for the square root of a nonnegative rational.
pub fn sqrt_upper(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    // sqrt(n/d) = sqrt(n d) / d <= (isqrt(n d) + 1) / d
    let nd = x.numer() * x.denom();
    BigRational::new(nd.sqrt() + BigInt::one(), x.denom().clone())
}

/// Complex evaluation of an integer polynomial at a Gaussian-rational point.
pub fn eval_complex(f: &IntPoly, z: &Complex) -> Complex {
    f.coeffs()
        .iter()
        .rev()
        .fold(Complex::zero(), |acc, c| acc.mul(z).add(&Complex::from_int(c)))
}

/// A closed disk known to contain exactly one root of its polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootDisk {
    pub center: Complex,
    #[serde(with = "crate::serde_text")]
    pub radius: BigRational,
}

impl RootDisk {
    /// Certified disjointness of two closed disks.
    pub fn disjoint(&self, o: &RootDisk) -> bool {
        let d2 = self.center.sub(&o.center).norm2();
        let rs = &self.radius + &o.radius;
        d2 > &rs * &rs
    }

    /// True when `self` lies inside `o`.
    pub fn inside(&self, o: &RootDisk) -> bool {
        let slack = &o.radius - &self.radius;
        if slack.is_negative() {
            return false;
        }
        self.center.sub(&o.center).norm2() <= &slack * &slack
    }

    pub fn contains_real_axis_point(&self) -> bool {
        self.center.im.abs() <= self.radius
    }

    /// Disk enclosing `{a * b : a in self, b in o}`.
    pub fn product(&self, o: &RootDisk) -> RootDisk {
        let ma = sqrt_upper(&self.center.norm2());
        let mb = sqrt_upper(&o.center.norm2());
        let radius = &ma * &o.radius + &mb * &self.radius + &self.radius * &o.radius;
        RootDisk {
            center: self.center.mul(&o.center),
            radius,
        }
    }

    /// Disk enclosing `{a^m : a in self}`.
    pub fn power(&self, m: u32) -> RootDisk {
        let ma = sqrt_upper(&self.center.norm2());
        let outer = num_traits::pow(&ma + &self.radius, m as usize);
        let inner = num_traits::pow(ma, m as usize);
        RootDisk {
            center: self.center.pow(m),
            radius: outer - inner,
        }
    }

    /// Disk enclosing `{-a : a in self}`.
    pub fn negate(&self) -> RootDisk {
        RootDisk {
            center: Complex::new(-self.center.re.clone(), -self.center.im.clone()),
            radius: self.radius.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("root isolation failed after {rounds} refinement rounds")]
pub struct IsolationFailure {
    pub rounds: usize,
}

/// Inclusion radius `n |f(z)/f'(z)|`, rounded up to a dyadic with `bits` fractional bits.
fn inclusion_radius(f: &IntPoly, df: &IntPoly, z: &Complex, bits: u32) -> Option<BigRational> {
    let fz = eval_complex(f, z);
    if fz.norm2().is_zero() {
        return Some(BigRational::new(BigInt::one(), BigInt::one() << bits));
    }
    let dz = eval_complex(df, z);
    let dn = dz.norm2();
    if dn.is_zero() {
        return None;
    }
    let n = BigRational::from_integer(BigInt::from(f.degree()));
    let r2 = &n * &n * fz.norm2() / dn;
    Some(ceil_dyadic(&sqrt_upper(&r2), bits))
}

fn newton_step(f: &IntPoly, df: &IntPoly, z: &Complex, bits: u32) -> Complex {
    let dz = eval_complex(df, z);
    if dz.norm2().is_zero() {
        return z.clone();
    }
    z.sub(&eval_complex(f, z).div(&dz)).round(bits)
}

/// Aberth iteration in double precision for starting approximations.
fn aberth(f: &IntPoly) -> Vec<(f64, f64)> {
    let c = f.to_f64_coeffs();
    let n = f.degree();
    let lc = c[n];
    let a: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let bound = 1.0 + a[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            (0.5 * bound * t.cos(), 0.5 * bound * t.sin())
        })
        .collect();
    let cmul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let cdiv = |x: (f64, f64), y: (f64, f64)| {
        let d = y.0 * y.0 + y.1 * y.1;
        ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let zi = z[i];
            let mut pv = (1.0, 0.0);
            let mut dv = (0.0, 0.0);
            for k in (0..n).rev() {
                dv = cmul(dv, zi);
                dv.0 += pv.0;
                dv.1 += pv.1;
                pv = cmul(pv, zi);
                pv.0 += a[k];
            }
            if pv.0 == 0.0 && pv.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(pv, dv);
            let mut s = (0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let r = cdiv((1.0, 0.0), (zi.0 - zj.0, zi.1 - zj.1));
                    s.0 += r.0;
                    s.1 += r.1;
                }
            }
            let denom = (1.0 - (ratio.0 * s.0 - ratio.1 * s.1), -(ratio.0 * s.1 + ratio.1 * s.0));
            let w = cdiv(ratio, denom);
            if w.0.is_finite() && w.1.is_finite() {
                z[i] = (zi.0 - w.0, zi.1 - w.1);
                moved = moved.max((w.0 * w.0 + w.1 * w.1).sqrt());
            }
        }
        if moved < 1e-15 * bound {
            break;
        }
    }
    z
}

/// Isolating disks for all complex roots of the squarefree part of `f`.
pub fn isolate_roots(f: &IntPoly) -> Result<Vec<RootDisk>, IsolationFailure> {
    let g = f.squarefree_part();
    let n = g.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let dg = g.derivative();
    if n == 1 {
        let root = BigRational::new(-g.coeff(0), g.coeff(1));
        return Ok(vec![RootDisk {
            center: Complex::new(root, BigRational::zero()),
            radius: BigRational::zero(),
        }]);
    }
    let mut zs: Vec<Complex> = aberth(&g)
        .into_iter()
        .map(|(re, im)| Complex::from_f64(re, im).unwrap_or_else(Complex::zero))
        .collect();
    let mut bits = 64u32;
    for round in 0..MAX_REFINEMENT_ROUNDS {
        zs = zs.iter().map(|z| z.round(bits)).collect();
        let disks: Option<Vec<RootDisk>> = zs
            .iter()
            .map(|z| {
                inclusion_radius(&g, &dg, z, bits + 8).map(|radius| RootDisk {
                    center: z.clone(),
                    radius,
                })
            })
            .collect();
        if let Some(disks) = disks {
            let separated = (0..n).all(|i| (i + 1..n).all(|j| disks[i].disjoint(&disks[j])));
            if separated {
                return Ok(disks);
            }
        }
        if round % 4 == 3 {
            bits = (bits * 2).min(1 << 14);
        }
        zs = zs.iter().map(|z| newton_step(&g, &dg, z, bits)).collect();
    }
    Err(IsolationFailure {
        rounds: MAX_REFINEMENT_ROUNDS,
    })
}

/// Shrink an isolating disk of `f` (squarefree) to radius at most `2^-target_bits`.
pub fn refine_disk(f: &IntPoly, disk: &RootDisk, target_bits: u32) -> Result<RootDisk, IsolationFailure> {
    let g = f.squarefree_part();
    if g.degree() <= 1 || disk.radius.is_zero() {
        return Ok(disk.clone());
    }
    let dg = g.derivative();
    let goal = BigRational::new(BigInt::one(), BigInt::one() << target_bits);
    if disk.radius <= goal {
        return Ok(disk.clone());
    }
    let mut z = disk.center.clone();
    let mut best = disk.clone();
    let bits = target_bits + 16;
    for _ in 0..MAX_REFINEMENT_ROUNDS {
        z = newton_step(&g, &dg, &z, bits);
        match inclusion_radius(&g, &dg, &z, bits) {
            // a root-containing disk inside the isolating disk holds the isolated root
            Some(radius) => {
                let cand = RootDisk { center: z.clone(), radius };
                if cand.inside(disk) {
                    if cand.radius < best.radius {
                        best = cand;
                    }
                    if best.radius <= goal {
                        return Ok(best);
                    }
                } else {
                    z = best.center.clone();
                }
            }
            None => z = best.center.clone(),
        }
    }
    if best.radius <= goal {
        Ok(best)
    } else {
        Err(IsolationFailure {
            rounds: MAX_REFINEMENT_ROUNDS,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn isolates_all_roots_and_disks_are_disjoint() {
        let f = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        let disks = isolate_roots(&f).unwrap();
        assert_eq!(disks.len(), 8);
        for d in &disks {
            assert!(d.contains_real_axis_point());
        }
    }

    #[test]
    fn weil_quadratic_roots_have_modulus_sqrt7() {
        let disks = isolate_roots(&p(&[7, -1, 1])).unwrap();
        assert_eq!(disks.len(), 2);
        for d in disks {
            let (re, im) = d.center.to_f64();
            assert!(((re * re + im * im) - 7.0).abs() < 1e-9);
        }
    }

    #[test]
    fn refinement_stays_inside() {
        let f = p(&[-2, 0, 1]);
        let disks = isolate_roots(&f).unwrap();
        let fine = refine_disk(&f, &disks[0], 200).unwrap();
        assert!(fine.inside(&disks[0]));
        assert!(fine.radius <= BigRational::new(BigInt::one(), BigInt::one() << 200));
    }

    #[test]
    fn sqrt_upper_is_an_upper_bound() {
        let x = BigRational::new(BigInt::from(2), BigInt::from(1));
        let s = sqrt_upper(&x);
        assert!(&s * &s >= x);
    }
}
