use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{hensel_lift, valuation, PadicApprox, PadicError};
use crate::modp::FpPoly;
use crate::poly::IntPoly;

/// Which Q_p-root to pick: its valuation and optionally the residue of its
/// unit part modulo `p^digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSeed {
    pub valuation: i64,
    pub residue: Option<u64>,
    #[serde(default = "one_digit", skip_serializing_if = "is_one_digit")]
    pub digits: u32,
}

fn one_digit() -> u32 {
    1
}

fn is_one_digit(d: &u32) -> bool {
    *d == 1
}

impl RootSeed {
    pub fn slope(valuation: i64) -> Self {
        RootSeed { valuation, residue: None, digits: 1 }
    }

    pub fn with_residue(valuation: i64, residue: u64, digits: u32) -> Self {
        RootSeed { valuation, residue: Some(residue), digits: digits.max(1) }
    }
}

/// The shortest seed selecting `root`: no residue if the valuation alone
/// isolates it, otherwise its unit part modulo the least power of `p` that does.
pub fn canonical_seed(f: &IntPoly, p: u64, root: &PadicApprox) -> Option<RootSeed> {
    let v = root.valuation;
    let picks = |seed: RootSeed| {
        select_padic_root(f, p, seed, root.precision).is_ok_and(|r| r.residue == root.residue)
    };
    if picks(RootSeed::slope(v)) {
        return Some(RootSeed::slope(v));
    }
    let pb = BigInt::from(p);
    (1..=root.precision).map_while(|k| {
        let t = u64::try_from(root.residue.mod_floor(&pb.pow(k))).ok()?;
        Some(RootSeed::with_residue(v, t, k))
    })
    .find(|&seed| picks(seed))
}

/// `G(u) = f(p^s u) / p^m` with `m` chosen so that `G` is primitive at `p`.
fn rescaled(f: &IntPoly, p: u64, s: i64) -> IntPoly {
    let pb = BigInt::from(p);
    let m = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| valuation(c, p) as i64 + s * i as i64)
        .min()
        .expect("nonzero polynomial");
    IntPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = s * i as i64 - m;
                if c.is_zero() {
                    BigInt::zero()
                } else if k >= 0 {
                    c * pb.pow(k as u32)
                } else {
                    c / pb.pow((-k) as u32)
                }
            })
            .collect(),
    )
}

/// The unique Q_p-root of `f` with valuation `seed.valuation` (and unit residue
/// `seed.residue`, if given), to `precision` relative digits.
///
/// Uniqueness is certified by the selected unit residue being a simple root of
/// the reduced rescaled polynomial, so no other root shares it.
pub fn select_padic_root(f: &IntPoly, p: u64, seed: RootSeed, precision: u32) -> Result<PadicApprox, PadicError> {
    let s = seed.valuation;
    let describe = || format!("valuation {s}, residue {:?} mod p^{}, p = {p}", seed.residue, seed.digits);
    let g = rescaled(f, p, s);
    let pb = BigInt::from(p);
    // unit parts u = rho + p^k w with rho fixed; the roots w of h(w) = g(rho + p^k w)
    let (rho, k) = match seed.residue {
        Some(t) if seed.digits > 1 => {
            if t % p == 0 {
                return Err(PadicError::NoSuchRoot(describe()));
            }
            (BigInt::from(t), seed.digits)
        }
        _ => (BigInt::zero(), 0),
    };
    let h = if k == 0 { g } else { p_primitive(&g.shift(&rho).scale_var(&pb.pow(k)), p) };
    let candidates: Vec<u64> = FpPoly::from_int(&h, p)
        .roots()
        .into_iter()
        .filter(|&w| k > 0 || (w != 0 && seed.residue.is_none_or(|t| t % p == w)))
        .collect();
    let w0 = match candidates.as_slice() {
        [] => return Err(PadicError::NoSuchRoot(describe())),
        [w] => *w,
        _ => return Err(PadicError::Ambiguous(format!("{} unit residues at {}", candidates.len(), describe()))),
    };
    let w = match hensel_lift(&h, p, &BigInt::from(w0), precision.max(1)) {
        Ok(w) => w,
        Err(PadicError::NotSimpleRoot { .. }) => {
            return Err(PadicError::Ambiguous(format!("repeated residue {w0} at {}", describe())))
        }
        Err(e) => return Err(e),
    };
    let u = rho + pb.pow(k) * w;
    let m = pb.pow(precision);
    Ok(PadicApprox { p, precision, residue: u.mod_floor(&m), valuation: s })
}

/// `h / p^v` with `v` the least valuation of a coefficient.
fn p_primitive(h: &IntPoly, p: u64) -> IntPoly {
    let v = h.coeffs().iter().filter(|c| !c.is_zero()).map(|c| valuation(c, p)).min().unwrap_or(0);
    let d = BigInt::from(p).pow(v);
    IntPoly::new(h.coeffs().iter().map(|c| c / &d).collect())
}
