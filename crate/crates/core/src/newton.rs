//! Newton polygons and the Eisenstein-Dumas conditions.
//!
//! Everything here is exact: hull construction uses integer cross products
//! and slopes are rationals.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_arith::{BigInt, Rational};
use crate::poly::FormalPoly;
use crate::valuation::{PAdic, Val};

/// One edge of a Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational,
    /// Horizontal length (difference of indices).
    pub length: usize,
}

/// Lower convex hull of `{(i, v(a_i)) : a_i ≠ 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    points: Vec<(usize, i64)>,
    vertices: Vec<(usize, i64)>,
}

impl NewtonPolygon {
    /// All support points, sorted by index.
    pub fn points(&self) -> &[(usize, i64)] {
        &self.points
    }

    /// Hull vertices with strictly increasing index; collinear points are
    /// dropped.
    pub fn vertices(&self) -> &[(usize, i64)] {
        &self.vertices
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.vertices
            .windows(2)
            .map(|w| {
                let (i0, v0) = w[0];
                let (i1, v1) = w[1];
                Segment {
                    slope: Rational::new(BigInt::from(v1 - v0), BigInt::from(i1 - i0)),
                    length: i1 - i0,
                }
            })
            .collect()
    }

    /// Slope ↦ total horizontal length.
    pub fn slope_multiset(&self) -> BTreeMap<Rational, usize> {
        let mut out = BTreeMap::new();
        for s in self.segments() {
            *out.entry(s.slope).or_insert(0) += s.length;
        }
        out
    }
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

pub fn newton_polygon(poly: &FormalPoly, v: &PAdic) -> Result<NewtonPolygon> {
    let points: Vec<(usize, i64)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| v.val(c).finite().map(|g| (i, g)))
        .collect();
    if points.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    // Monotone chain, lower half only.
    let mut hull: Vec<(usize, i64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    Ok(NewtonPolygon {
        points,
        vertices: hull,
    })
}

/// Outcome of checking the Eisenstein-Dumas conditions at one valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdReport {
    /// `a_0 a_n ≠ 0`.
    pub d0: bool,
    /// `gcd(v(a_0) - v(a_n), n) = 1`.
    pub d1: bool,
    /// The gcd above; `None` when D0 fails.
    pub gcd_value: Option<u64>,
    /// The valuation inequality (weak or strict, see `strict`).
    pub d2: bool,
    /// First index violating the inequality.
    pub failing_index: Option<usize>,
    /// Whether the interior inequality was checked strictly.
    pub strict: bool,
    pub verdict: bool,
}

impl EdReport {
    fn failed_d0(strict: bool) -> Self {
        EdReport {
            d0: false,
            d1: false,
            gcd_value: None,
            d2: false,
            failing_index: None,
            strict,
            verdict: false,
        }
    }
}

/// Eisenstein-Dumas test with the weak inequality
/// `n v(a_i) ≥ (n - i) v(a_0) + i v(a_n)` for every `0 ≤ i ≤ n`.
/// Uses the formal degree for `n`.
pub fn is_ed(poly: &FormalPoly, v: &PAdic) -> EdReport {
    check(poly, v, false)
}

/// Same as [`is_ed`] but with strict inequality on `1 ≤ i ≤ n - 1`. The two
/// verdicts always coincide.
pub fn is_ed_strict(poly: &FormalPoly, v: &PAdic) -> EdReport {
    check(poly, v, true)
}

fn check(poly: &FormalPoly, v: &PAdic, strict: bool) -> EdReport {
    let n = poly.formal_degree();
    let (Val::Finite(v0), Val::Finite(vn)) = (v.val(poly.constant_term()), v.val(poly.leading()))
    else {
        return EdReport::failed_d0(strict);
    };
    let g = (v0 - vn).unsigned_abs().gcd(&(n as u64));
    let d1 = g == 1;

    let (n128, v0, vn) = (n as i128, v0 as i128, vn as i128);
    let range = if strict { 1..n } else { 0..n + 1 };
    let failing_index = range.into_iter().find(|&i| {
        let Val::Finite(vi) = v.val(&poly.coeffs()[i]) else {
            return false;
        };
        let i128_ = i as i128;
        let lhs = n128 * vi as i128;
        let rhs = (n128 - i128_) * v0 + i128_ * vn;
        if strict {
            lhs <= rhs
        } else {
            lhs < rhs
        }
    });
    let d2 = failing_index.is_none();
    EdReport {
        d0: true,
        d1,
        gcd_value: Some(g),
        d2,
        failing_index,
        strict,
        verdict: d1 && d2,
    }
}

/// Whether the Newton polygon of `a·b` is the slope-sorted union of the
/// edges of the polygons of `a` and `b`.
///
/// Both inputs must be nonzero with actual degree equal to formal degree.
pub fn dumas_concat_holds(a: &FormalPoly, b: &FormalPoly, v: &PAdic) -> Result<bool> {
    for f in [a, b] {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_proper() {
            return Err(Error::RootAtInfinity(f.formal_degree()));
        }
    }
    let mut merged = newton_polygon(a, v)?.slope_multiset();
    for (slope, len) in newton_polygon(b, v)?.slope_multiset() {
        *merged.entry(slope).or_insert(0) += len;
    }
    let product = newton_polygon(&(a * b), v)?.slope_multiset();
    Ok(product == merged)
}

/// The ED conditions read off the polygon: a single edge from
/// `(0, v(a_0))` to `(n, v(a_n))` whose height and width are coprime.
pub fn is_ed_geometric(poly: &FormalPoly, v: &PAdic) -> bool {
    let n = poly.formal_degree();
    if poly.constant_term().is_zero() || poly.leading().is_zero() {
        return false;
    }
    let Ok(np) = newton_polygon(poly, v) else {
        return false;
    };
    let verts = np.vertices();
    if verts.len() != 2 && !(n == 0 && verts.len() == 1) {
        return false;
    }
    let (first, last) = (verts[0], verts[verts.len() - 1]);
    if first.0 != 0 || last.0 != n {
        return false;
    }
    (first.1 - last.1).unsigned_abs().gcd(&(n as u64)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rational};

    fn v(p: i64) -> PAdic {
        PAdic::new(p).unwrap()
    }

    fn p(c: &[i64]) -> FormalPoly {
        FormalPoly::from_ints(c)
    }

    #[test]
    fn polygon_examples() {
        let np = newton_polygon(&p(&[8, 4, 1]), &v(2)).unwrap();
        assert_eq!(np.vertices(), &[(0, 3), (2, 0)]);
        assert_eq!(
            np.segments(),
            vec![Segment {
                slope: rational(-3, 2),
                length: 2
            }]
        );

        let np = newton_polygon(&p(&[2, 1]), &v(2)).unwrap();
        assert_eq!(np.vertices(), &[(0, 1), (1, 0)]);
        assert_eq!(np.segments()[0].slope, int(-1));

        let np = newton_polygon(&p(&[8, 6, 1]), &v(2)).unwrap();
        assert_eq!(np.vertices(), &[(0, 3), (1, 1), (2, 0)]);
        let slopes: Vec<_> = np.segments().into_iter().map(|s| s.slope).collect();
        assert_eq!(slopes, vec![int(-2), int(-1)]);
    }

    #[test]
    fn polygon_skips_zero_coefficients_and_collinear_points() {
        // 2 + 4x^2 + 8x^4 at v_2: (0,1), (2,2), (4,3) are collinear.
        let np = newton_polygon(&p(&[2, 0, 4, 0, 8]), &v(2)).unwrap();
        assert_eq!(np.points(), &[(0, 1), (2, 2), (4, 3)]);
        assert_eq!(np.vertices(), &[(0, 1), (4, 3)]);
        assert_eq!(
            np.slope_multiset().into_iter().collect::<Vec<_>>(),
            vec![(rational(1, 2), 4)]
        );
    }

    #[test]
    fn polygon_of_zero_rejected() {
        assert_eq!(
            newton_polygon(&FormalPoly::zero(3), &v(2)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn ed_examples() {
        let r = is_ed(&p(&[8, 4, 1]), &v(2));
        assert!(r.verdict);
        assert_eq!(r.gcd_value, Some(1));

        let r = is_ed(&p(&[4, 0, 1]), &v(2));
        assert!(r.d0 && !r.d1 && r.d2);
        assert_eq!(r.gcd_value, Some(2));
        assert!(!r.verdict);

        let half = FormalPoly::new(vec![int(8), int(0), rational(1, 2)]);
        let r = is_ed(&half, &v(2));
        assert!(!r.d1);
        assert_eq!(r.gcd_value, Some(2));
    }

    #[test]
    fn strict_examples() {
        assert!(is_ed_strict(&p(&[8, 4, 1]), &v(2)).verdict);
        let r = is_ed_strict(&p(&[4, 0, 1]), &v(2));
        assert!(!r.verdict);
        // Weak and strict disagree on D2 alone when D1 fails.
        let r = is_ed_strict(&p(&[4, 2, 1]), &v(2));
        assert!(!r.d2);
        assert_eq!(r.failing_index, Some(1));
        assert!(is_ed(&p(&[4, 2, 1]), &v(2)).d2);
    }

    #[test]
    fn d0_failures() {
        let r = is_ed(&p(&[0, 2, 1]), &v(2));
        assert!(!r.d0 && !r.verdict);
        let a = FormalPoly::with_formal_degree(vec![int(2), int(1)], 2).unwrap();
        assert!(!is_ed(&a, &v(2)).d0);
    }

    #[test]
    fn d2_failure_index() {
        // x^3 + x + 2 at v_2: 3 v(a_1) = 0 < 2 * 1.
        let r = is_ed(&p(&[2, 1, 0, 1]), &v(2));
        assert!(r.d1);
        assert!(!r.d2);
        assert_eq!(r.failing_index, Some(1));
    }

    #[test]
    fn dumas_examples() {
        assert!(dumas_concat_holds(&p(&[2, 1]), &p(&[4, 1]), &v(2)).unwrap());
        assert!(dumas_concat_holds(&p(&[1, 1]), &p(&[1, 1]), &v(2)).unwrap());
        let improper = FormalPoly::with_formal_degree(vec![int(1), int(1)], 2).unwrap();
        assert_eq!(
            dumas_concat_holds(&improper, &p(&[1, 1]), &v(2)),
            Err(Error::RootAtInfinity(2))
        );
        assert_eq!(
            dumas_concat_holds(&FormalPoly::zero(1), &p(&[1, 1]), &v(2)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn geometric_form_matches_examples() {
        assert!(is_ed_geometric(&p(&[8, 4, 1]), &v(2)));
        assert!(!is_ed_geometric(&p(&[4, 0, 1]), &v(2)));
        assert!(!is_ed_geometric(&p(&[8, 6, 1]), &v(2)));
    }
}
