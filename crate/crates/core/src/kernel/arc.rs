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

use super::{GreatCircle, KernelError, Tolerance, UnitVector};
use crate::scalar::Scalar;

/// Shortest great-circle arc between two non-antipodal points, oriented
/// from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct GeodesicArc<T> {
    pub start: UnitVector<T>,
    pub end: UnitVector<T>,
    /// Supporting circle, normal `start × end`.
    pub circle: GreatCircle<T>,
    length: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Intersection<T> {
    Empty,
    Point(UnitVector<T>),
    Overlap(GeodesicArc<T>),
}

impl<T: Scalar> GeodesicArc<T> {
    pub fn new(start: UnitVector<T>, end: UnitVector<T>, tol: Tolerance<T>) -> Result<Self, KernelError> {
        let c = start.cross(&end);
        if c.norm() <= tol.tau() {
            return Err(KernelError::DegeneratePair);
        }
        let normal = c.normalize()?;
        let length = c.norm().atan2(start.dot(&end));
        Ok(Self { start, end, circle: GreatCircle { normal }, length })
    }

    #[inline]
    pub fn length(&self) -> T {
        self.length
    }

    /// Unit tangent at `start` pointing toward `end`.
    pub fn start_tangent(&self) -> UnitVector<T> {
        self.circle.normal.cross(&self.start).normalize().expect("orthonormal")
    }

    /// Unit tangent at `p` in the direction of the arc's orientation.
    pub fn tangent_at(&self, p: &UnitVector<T>) -> UnitVector<T> {
        self.circle.normal.cross(p).normalize().unwrap_or_else(|_| self.start_tangent())
    }

    /// Point at angle `theta` from `start` along the supporting circle.
    pub fn point_at(&self, theta: T) -> UnitVector<T> {
        let t = self.start_tangent();
        let (s, c) = theta.sin_cos();
        (self.start.vec() * c + t.vec() * s).normalize().expect("unit combination")
    }

    /// Signed angle of the projection of `p` onto the circle, in (-π, π].
    pub fn param_of(&self, p: &UnitVector<T>) -> T {
        let t = self.start_tangent();
        p.dot(&t).atan2(p.dot(&self.start))
    }

    pub fn midpoint(&self) -> UnitVector<T> {
        self.point_at(self.length / T::lit(2.0))
    }

    /// Closed containment within tolerance.
    pub fn contains(&self, p: &UnitVector<T>, tol: Tolerance<T>) -> bool {
        if !self.circle.contains(p, tol) {
            return false;
        }
        let s = self.param_of(p);
        s >= -tol.tau() && s <= self.length + tol.tau()
    }

    /// Containment in the relative interior, at distance > τ from both endpoints.
    pub fn interior_contains(&self, p: &UnitVector<T>, tol: Tolerance<T>) -> bool {
        if !self.circle.contains(p, tol) {
            return false;
        }
        let s = self.param_of(p);
        s > tol.tau() && s < self.length - tol.tau()
    }

    pub fn is_endpoint(&self, p: &UnitVector<T>, tol: Tolerance<T>) -> bool {
        self.start.approx_eq(p, tol.tau()) || self.end.approx_eq(p, tol.tau())
    }

    pub fn reversed(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
            circle: self.circle.reversed(),
            length: self.length,
        }
    }

    /// Sub-arc between two parameters `lo < hi`.
    pub fn sub_arc(&self, lo: T, hi: T, tol: Tolerance<T>) -> Result<Self, KernelError> {
        Self::new(self.point_at(lo), self.point_at(hi), tol)
    }
}

/// Classifies the common part of two arcs.
pub fn intersect_arcs<T: Scalar>(
    a: &GeodesicArc<T>,
    b: &GeodesicArc<T>,
    tol: Tolerance<T>,
) -> Intersection<T> {
    let tau = tol.tau();
    if a.circle.coincides(&b.circle, tol) {
        // Collinear: intersect parameter intervals on a's circle.
        let (s0, s1) = (a.param_of(&b.start), a.param_of(&b.end));
        let (mut lo, mut hi) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        // A wrapped interval appears when b straddles a's antipodal start.
        if hi - lo > T::PI() {
            let t = lo + T::lit(2.0) * T::PI();
            lo = hi;
            hi = t;
        }
        let two_pi = T::lit(2.0) * T::PI();
        let mut best: Option<(T, T)> = None;
        for shift in [-two_pi, T::zero(), two_pi] {
            let l = (lo + shift).max(T::zero());
            let h = (hi + shift).min(a.length);
            if h >= l - tau {
                match best {
                    Some((bl, bh)) if bh - bl >= h - l => {}
                    _ => best = Some((l, h)),
                }
            }
        }
        return match best {
            None => Intersection::Empty,
            Some((l, h)) if h - l <= tau => Intersection::Point(a.point_at((l + h) / T::lit(2.0))),
            Some((l, h)) => match a.sub_arc(l, h, tol) {
                Ok(arc) => Intersection::Overlap(arc),
                Err(_) => Intersection::Point(a.point_at((l + h) / T::lit(2.0))),
            },
        };
    }
    let q = match a.circle.intersection(&b.circle) {
        Some(q) => q,
        None => return Intersection::Empty,
    };
    for cand in [q, q.antipode()] {
        if a.contains(&cand, tol) && b.contains(&cand, tol) {
            return Intersection::Point(cand);
        }
    }
    Intersection::Empty
}
