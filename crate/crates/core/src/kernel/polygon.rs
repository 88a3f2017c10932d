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

use serde::{Deserialize, Serialize};

use super::{side_of, GreatCircle, KernelError, Side, Tolerance, UnitVector, Vec3};
use crate::scalar::Scalar;

/// A closed chain of geodesic edges. The region it denotes lies to the
/// left of the boundary (counterclockwise seen from outside the sphere).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct SphericalPolygon<T> {
    pub vertices: Vec<UnitVector<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

impl<T: Scalar> SphericalPolygon<T> {
    pub fn new(vertices: Vec<UnitVector<T>>) -> Self {
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The same boundary traversed the other way, i.e. the complementary region.
    pub fn complement(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// Edge circles `v_i × v_{i+1}`, skipping zero-length edges.
    pub fn edge_circles(&self, tol: Tolerance<T>) -> Vec<GreatCircle<T>> {
        let n = self.vertices.len();
        (0..n)
            .filter_map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let c = a.cross(&b);
                if c.norm() <= tol.tau() {
                    None
                } else {
                    c.normalize().ok().map(GreatCircle::from_normal)
                }
            })
            .collect()
    }

    /// Edges as vertex index pairs with their circle, skipping zero-length edges.
    pub fn edges(&self, tol: Tolerance<T>) -> Vec<(usize, usize, GreatCircle<T>)> {
        let n = self.vertices.len();
        (0..n)
            .filter_map(|i| {
                let j = (i + 1) % n;
                let c = self.vertices[i].cross(&self.vertices[j]);
                if c.norm() <= tol.tau() {
                    None
                } else {
                    c.normalize().ok().map(|nrm| (i, j, GreatCircle::from_normal(nrm)))
                }
            })
            .collect()
    }

    /// Signed turning angle at every vertex (left turns positive).
    fn turning_angles(&self) -> Vec<T> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let prev = self.vertices[(i + n - 1) % n];
            let v = self.vertices[i];
            let next = self.vertices[(i + 1) % n];
            let t_in = prev.cross(&v).cross(&v.vec());
            let t_out = v.cross(&next).cross(&v.vec());
            if t_in.norm() == T::zero() || t_out.norm() == T::zero() {
                out.push(T::zero());
                continue;
            }
            let s = t_in.cross(&t_out).dot(&v.vec());
            let c = t_in.dot(&t_out);
            out.push(s.atan2(c));
        }
        out
    }

    /// Area of the region to the left of the boundary (Gauss-Bonnet).
    pub fn area(&self) -> T {
        if self.vertices.len() < 3 {
            return T::zero();
        }
        let turn: T = self.turning_angles().into_iter().fold(T::zero(), |a, b| a + b);
        let two_pi = T::lit(2.0) * T::PI();
        let mut a = two_pi - turn;
        let four_pi = two_pi + two_pi;
        while a < T::zero() {
            a = a + four_pi;
        }
        while a > four_pi {
            a = a - four_pi;
        }
        a
    }

    /// Normalized vertex sum.
    pub fn centroid(&self) -> Option<UnitVector<T>> {
        let s = self.vertices.iter().fold(Vec3::zero(), |acc, v| acc + v.vec());
        s.normalize().ok()
    }

    /// Point-in-region for arbitrary simple polygons, by crossing parity
    /// against a reference point just left of an edge.
    pub fn region_contains(&self, p: &UnitVector<T>, tol: Tolerance<T>) -> Location {
        let n = self.vertices.len();
        if n < 3 {
            return Location::Outside;
        }
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if a.approx_eq(p, tol.tau()) {
                return Location::Boundary;
            }
            if let Ok(arc) = super::GeodesicArc::new(a, b, tol) {
                if arc.contains(p, tol) {
                    return Location::Boundary;
                }
            }
        }
        // Crossing parity along a geodesic to a reference point just left of
        // an edge midpoint; references whose path grazes a vertex are skipped.
        let tau = tol.tau();
        let mut order: Vec<usize> = (0..n).collect();
        let len = |i: usize| self.vertices[i].distance(&self.vertices[(i + 1) % n]);
        order.sort_by(|&a, &b| len(b).partial_cmp(&len(a)).unwrap());
        for &i in &order {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let Ok(edge) = super::GeodesicArc::new(a, b, tol) else { continue };
            let eta = (edge.length() * T::lit(1e-3)).min(T::lit(1e-5)).max(tau * T::lit(100.0));
            let Ok(r) = (edge.midpoint().vec() + edge.circle.normal.vec() * eta).normalize() else {
                continue;
            };
            let Ok(path) = super::GeodesicArc::new(*p, r, tol) else { continue };
            if self.vertices.iter().any(|v| path.contains(v, tol)) {
                continue;
            }
            let mut crossings = 0usize;
            let mut clean = true;
            for j in 0..n {
                let (c, d) = (self.vertices[j], self.vertices[(j + 1) % n]);
                let Ok(e) = super::GeodesicArc::new(c, d, tol) else { continue };
                let sc = side_of(&path.circle, &c, tol);
                let sd = side_of(&path.circle, &d, tol);
                let sp = side_of(&e.circle, p, tol);
                let sr = side_of(&e.circle, &r, tol);
                let strict = |x: Side, y: Side| {
                    matches!((x, y), (Side::Positive, Side::Negative) | (Side::Negative, Side::Positive))
                };
                if strict(sc, sd) && strict(sp, sr) {
                    crossings += 1;
                } else if (sp == Side::On || sr == Side::On) && strict(sc, sd) {
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            return if crossings.is_multiple_of(2) { Location::Interior } else { Location::Outside };
        }
        Location::Outside
    }

    /// Clips a convex polygon by the closed positive side of `c`.
    pub fn clip(&self, c: &GreatCircle<T>, tol: Tolerance<T>) -> Self {
        let n = self.vertices.len();
        let mut out: Vec<UnitVector<T>> = Vec::with_capacity(n + 1);
        let tau = tol.tau();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let (da, db) = (c.signed_distance(&a), c.signed_distance(&b));
            if da >= -tau {
                out.push(a);
            }
            if (da > tau && db < -tau) || (da < -tau && db > tau) {
                let t = da / (da - db);
                if let Ok(q) = (a.vec() * (T::one() - t) + b.vec() * t).normalize() {
                    out.push(q);
                }
            }
        }
        out.dedup_by(|x, y| x.approx_eq(y, tau));
        if out.len() > 1 && out[0].approx_eq(out.last().unwrap(), tau) {
            out.pop();
        }
        Self { vertices: out }
    }

    /// Intersection of two convex polygons (both interior-left).
    pub fn intersect_convex(&self, other: &Self, tol: Tolerance<T>) -> Self {
        let mut acc = self.clone();
        for c in other.edge_circles(tol) {
            if acc.vertices.len() < 3 {
                break;
            }
            acc = acc.clip(&c, tol);
        }
        acc
    }

    /// Equality of vertex cycles up to rotation, within τ.
    pub fn same_cycle(&self, other: &Self, tol: Tolerance<T>) -> bool {
        let strip = |p: &Self| -> Vec<UnitVector<T>> {
            let mut v = p.vertices.clone();
            v.dedup_by(|a, b| a.approx_eq(b, tol.tau()));
            v
        };
        let (a, b) = (strip(self), strip(other));
        if a.len() != b.len() || a.is_empty() {
            return false;
        }
        let n = a.len();
        (0..n).any(|shift| (0..n).all(|i| a[i].approx_eq(&b[(i + shift) % n], tol.tau())))
    }
}

/// True iff, for every edge, all vertices lie on the closed left side of
/// its supporting circle.
pub fn is_spherically_convex<T: Scalar>(poly: &SphericalPolygon<T>, tol: Tolerance<T>) -> bool {
    let circles = poly.edge_circles(tol);
    if circles.len() < 3 {
        return false;
    }
    let mut strict = false;
    for c in &circles {
        for v in &poly.vertices {
            match side_of(c, v, tol) {
                Side::Negative => return false,
                Side::Positive => strict = true,
                Side::On => {}
            }
        }
    }
    strict
}

pub fn polygon_contains<T: Scalar>(
    poly: &SphericalPolygon<T>,
    p: &UnitVector<T>,
    tol: Tolerance<T>,
) -> Result<Location, KernelError> {
    if !is_spherically_convex(poly, tol) {
        return Err(KernelError::NonConvexInput);
    }
    let mut on = false;
    for c in poly.edge_circles(tol) {
        match side_of(&c, p, tol) {
            Side::Negative => return Ok(Location::Outside),
            Side::On => on = true,
            Side::Positive => {}
        }
    }
    Ok(if on { Location::Boundary } else { Location::Interior })
}
