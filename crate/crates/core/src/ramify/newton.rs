//! Newton polygons over a discrete valuation.

use crate::arith::gcd;

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slope {
    pub num: i64,
    pub den: u64,
}

impl Slope {
    fn new(num: i64, den: i64) -> Self {
        debug_assert!(den > 0);
        let g = gcd(num.unsigned_abs(), den as u64).max(1) as i64;
        Slope {
            num: num / g,
            den: (den / g) as u64,
        }
    }
}

/// Lower convex hull of `(exponent, valuation)` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
    pub slopes: Vec<Slope>,
}

impl NewtonPolygon {
    /// Builds the polygon. Zero coefficients have no point and must be left
    /// out by the caller.
    pub fn from_points(points: &[(i64, i64)]) -> Self {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup_by_key(|pt| pt.0);
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for &pt in &pts {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let slopes = hull
            .windows(2)
            .map(|w| Slope::new(w[1].1 - w[0].1, w[1].0 - w[0].0))
            .collect();
        NewtonPolygon {
            vertices: hull,
            slopes,
        }
    }

    /// Ramification index forced by each segment: the slope denominator.
    pub fn segment_ramification(&self) -> Vec<u64> {
        self.slopes.iter().map(|s| s.den).collect()
    }
}

/// Ramification index over `P` of a root of `X^n - a` with `v_P(a) = alpha`.
pub fn newton_polygon_e(n: u64, alpha: u64) -> u64 {
    let poly = NewtonPolygon::from_points(&[(0, alpha as i64), (n as i64, 0)]);
    poly.segment_ramification().into_iter().max().unwrap_or(1)
}
