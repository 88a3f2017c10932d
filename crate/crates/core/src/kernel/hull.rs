// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use super::{SphericalPolygon, Tolerance, UnitVector, Vec3};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum HullResult<T> {
    /// Convex hull inside an open hemisphere centred on `center`.
    Polygon { polygon: SphericalPolygon<T>, center: UnitVector<T> },
    /// No open hemisphere holds every point.
    Total,
}

impl<T: Scalar> HullResult<T> {
    pub fn polygon(&self) -> Option<&SphericalPolygon<T>> {
        match self {
            HullResult::Polygon { polygon, .. } => Some(polygon),
            HullResult::Total => None,
        }
    }

    pub fn is_total(&self) -> bool {
        matches!(self, HullResult::Total)
    }
}

/// Minimum-norm point of the convex hull of `pts` in R^3, found by
/// enumerating faces spanned by at most three points.
fn min_norm_point<T: Scalar>(pts: &[Vec3<T>]) -> Vec3<T> {
    let mut best = pts[0];
    let mut best_n = best.norm();
    let mut consider = |p: Vec3<T>| {
        let n = p.norm();
        if n < best_n {
            best = p;
            best_n = n;
        }
    };
    let n = pts.len();
    for i in 0..n {
        consider(pts[i]);
        for j in i + 1..n {
            let (a, b) = (pts[i], pts[j]);
            let d = b - a;
            let dd = d.dot(&d);
            if dd > T::zero() {
                let t = -a.dot(&d) / dd;
                if t > T::zero() && t < T::one() {
                    consider(a + d * t);
                }
            }
            for k in j + 1..n {
                let c = pts[k];
                let (e1, e2) = (b - a, c - a);
                let (m11, m12, m22) = (e1.dot(&e1), e1.dot(&e2), e2.dot(&e2));
                let (r1, r2) = (-a.dot(&e1), -a.dot(&e2));
                let det = m11 * m22 - m12 * m12;
                if det.abs() <= T::epsilon() * m11 * m22 {
                    continue;
                }
                let s = (r1 * m22 - r2 * m12) / det;
                let t = (m11 * r2 - m12 * r1) / det;
                if s > T::zero() && t > T::zero() && s + t < T::one() {
                    consider(a + e1 * s + e2 * t);
                }
            }
        }
    }
    best
}

/// Spherical convex hull. Total when the origin lies in the Euclidean
/// convex hull of the points (within τ), i.e. no open hemisphere holds them.
pub fn spherical_hull<T: Scalar>(points: &[UnitVector<T>], tol: Tolerance<T>) -> HullResult<T> {
    let tau = tol.tau();
    let mut pts: Vec<UnitVector<T>> = Vec::new();
    for p in points {
        if !pts.iter().any(|q| q.approx_eq(p, tau)) {
            pts.push(*p);
        }
    }
    assert!(!pts.is_empty(), "spherical_hull needs at least one point");
    let raw: Vec<Vec3<T>> = pts.iter().map(|p| p.vec()).collect();
    let x = min_norm_point(&raw);
    let r = x.norm();
    if r <= tau {
        return HullResult::Total;
    }
    let center = x.normalize().expect("non-zero");
    if pts.iter().any(|p| p.dot(&center) < r - T::lit(1e3) * T::epsilon().max(tau)) {
        // Optimality check failed: the origin is inside the hull.
        return HullResult::Total;
    }
    let e1 = center.any_orthogonal();
    let e2 = center.cross(&e1).normalize().expect("orthonormal");
    let proj: Vec<(T, T, usize)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let d = p.dot(&center);
            (p.dot(&e1) / d, p.dot(&e2) / d, i)
        })
        .collect();
    let idx = convex_hull_2d(proj, tau);
    HullResult::Polygon {
        polygon: SphericalPolygon::new(idx.into_iter().map(|i| pts[i]).collect()),
        center,
    }
}

/// Andrew's monotone chain; returns indices counterclockwise, dropping
/// collinear points.
fn convex_hull_2d<T: Scalar>(mut p: Vec<(T, T, usize)>, eps: T) -> Vec<usize> {
    p.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.partial_cmp(&b.1).unwrap()));
    if p.len() <= 2 {
        return p.into_iter().map(|q| q.2).collect();
    }
    let cross = |o: &(T, T, usize), a: &(T, T, usize), b: &(T, T, usize)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(T, T, usize)> = Vec::new();
    for q in &p {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], q) <= eps {
            lower.pop();
        }
        lower.push(*q);
    }
    let mut upper: Vec<(T, T, usize)> = Vec::new();
    for q in p.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], q) <= eps {
            upper.pop();
        }
        upper.push(*q);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).map(|q| q.2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{is_spherically_convex, polygon_contains, Location};

    type U = UnitVector<f64>;

    fn u(x: f64, y: f64, z: f64) -> U {
        U::new(x, y, z).unwrap()
    }

    #[test]
    fn octant_hull() {
        let tol = Tolerance::default();
        let pts = [u(1., 0., 0.), u(0., 1., 0.), u(0., 0., 1.)];
        let h = spherical_hull(&pts, tol);
        let poly = h.polygon().unwrap();
        assert_eq!(poly.len(), 3);
        assert!(is_spherically_convex(poly, tol));
        for p in &pts {
            assert!(poly.vertices.iter().any(|v| v.approx_eq(p, 1e-12)));
        }
    }

    #[test]
    fn axis_cross_is_total() {
        let tol = Tolerance::default();
        let pts = [
            u(1., 0., 0.),
            u(-1., 0., 0.),
            u(0., 1., 0.),
            u(0., -1., 0.),
            u(0., 0., 1.),
            u(0., 0., -1.),
        ];
        assert!(spherical_hull(&pts, tol).is_total());
        // tetrahedral spread with no antipodal pair
        let tet = [u(1., 1., 1.), u(1., -1., -1.), u(-1., 1., -1.), u(-1., -1., 1.)];
        assert!(spherical_hull(&tet, tol).is_total());
    }

    #[test]
    fn interior_points_are_dropped() {
        let tol = Tolerance::default();
        let pts = [u(1., 0., 0.), u(0., 1., 0.), u(0., 0., 1.), u(1., 1., 1.)];
        let h = spherical_hull(&pts, tol);
        let poly = h.polygon().unwrap();
        assert_eq!(poly.len(), 3);
        assert_eq!(polygon_contains(poly, &pts[3], tol), Ok(Location::Interior));
    }
}
