use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{valuation, PadicError};
use crate::poly::IntPoly;

/// One edge of the lower convex hull of `(i, v_p(a_i))`.
///
/// `slope` is the common valuation of the `end - start` roots the edge accounts for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSegment {
    pub start: usize,
    pub end: usize,
    pub start_height: i64,
    pub slope: BigRational,
}

impl NewtonSegment {
    pub fn length(&self) -> usize {
        self.end - self.start
    }

    /// Height of the edge above abscissa `i`.
    pub fn height_at(&self, i: usize) -> BigRational {
        BigRational::from_integer(BigInt::from(self.start_height))
            - &self.slope * BigRational::from_integer(BigInt::from((i - self.start) as i64))
    }
}

/// Hull edges ordered by increasing root valuation.
pub fn newton_segments(f: &IntPoly, p: u64) -> Result<Vec<NewtonSegment>, PadicError> {
    if f.coeff(0).is_zero() {
        return Err(PadicError::ZeroConstantTerm);
    }
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, valuation(c, p) as i64))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (ax, ay) = hull[hull.len() - 2];
            let (bx, by) = hull[hull.len() - 1];
            // drop b unless it lies strictly below segment a -> pt
            let cross = (bx - ax) as i128 * (pt.1 - ay) as i128 - (by - ay) as i128 * (pt.0 - ax) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut segs: Vec<NewtonSegment> = hull
        .windows(2)
        .map(|w| NewtonSegment {
            start: w[0].0 as usize,
            end: w[1].0 as usize,
            start_height: w[0].1,
            slope: BigRational::new(BigInt::from(w[0].1 - w[1].1), BigInt::from(w[1].0 - w[0].0)),
        })
        .collect();
    segs.reverse();
    Ok(segs)
}

/// Slopes of the Newton polygon as `(root valuation, multiplicity)`, ascending.
pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<Vec<(BigRational, usize)>, PadicError> {
    Ok(newton_segments(f, p)?
        .into_iter()
        .map(|s| {
            let len = s.length();
            (s.slope, len)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn documented_polygons() {
        assert_eq!(newton_polygon(&p(&[7, -1, 1]), 7).unwrap(), vec![(r(0, 1), 1), (r(1, 1), 1)]);
        assert_eq!(newton_polygon(&p(&[-2, 0, 1]), 2).unwrap(), vec![(r(1, 2), 2)]);
        assert_eq!(newton_polygon(&p(&[5, 0, 0, 0, 0, 0, 1]), 5).unwrap(), vec![(r(1, 6), 6)]);
        assert_eq!(newton_polygon(&p(&[0, 1]), 5), Err(PadicError::ZeroConstantTerm));
    }

    #[test]
    fn collinear_points_merge() {
        // x^2 + 5x + 25: all points on the line of slope 1
        assert_eq!(newton_polygon(&p(&[25, 5, 1]), 5).unwrap(), vec![(r(1, 1), 2)]);
    }

    #[test]
    fn multiplicities_sum_to_degree() {
        let f = p(&[3 * 49, 7, 14, 1, 0, 1]);
        let np = newton_polygon(&f, 7).unwrap();
        assert_eq!(np.iter().map(|s| s.1).sum::<usize>(), 5);
        assert!(np.windows(2).all(|w| w[0].0 < w[1].0));
        // valuation sum equals v(a_0) - v(lc)
        let total: BigRational = np.iter().map(|(s, m)| s * BigRational::from_integer(BigInt::from(*m as i64))).sum();
        assert_eq!(total, r(2, 1));
    }
}
