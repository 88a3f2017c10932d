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

//! Spherical geometry primitives: points, great circles, geodesic arcs,
//! convex polygons and hulls.
//!
//! Every discrete predicate is decided against a single absolute angular
//! tolerance and routes through [`side_of`].

mod arc;
mod hull;
mod polygon;
mod vector;

pub use arc::{intersect_arcs, GeodesicArc, Intersection};
pub use hull::{spherical_hull, HullResult};
pub use polygon::{is_spherically_convex, polygon_contains, Location, SphericalPolygon};
pub use vector::{UnitVector, Vec3};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("vector has zero length")]
    ZeroVector,
    #[error("points are coincident or antipodal")]
    DegeneratePair,
    #[error("polygon is not spherically convex")]
    NonConvexInput,
    #[error("tolerance {0} outside (0, 1e-3)")]
    BadTolerance(f64),
}

/// Absolute angular tolerance, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance<T> {
    tau: T,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl<T: Scalar> Tolerance<T> {
    pub fn new(tau: T) -> Result<Self, KernelError> {
        if tau > T::zero() && tau < T::lit(1e-3) {
            Ok(Self { tau })
        } else {
            Err(KernelError::BadTolerance(tau.to_f64().unwrap_or(f64::NAN)))
        }
    }

    #[inline]
    pub fn tau(&self) -> T {
        self.tau
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        // f32 cannot resolve 1e-9; fall back to a few ulps of the type.
        let tau = T::lit(DEFAULT_TOLERANCE).max(T::epsilon() * T::lit(64.0));
        Self { tau }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Positive,
    Negative,
    On,
}

/// A great circle with an oriented normal; the positive side is the open
/// hemisphere the normal points into.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct GreatCircle<T> {
    pub normal: UnitVector<T>,
}

impl<T: Scalar> GreatCircle<T> {
    pub fn from_normal(normal: UnitVector<T>) -> Self {
        Self { normal }
    }

    pub fn reversed(&self) -> Self {
        Self { normal: self.normal.antipode() }
    }

    /// Signed sine of the angular distance from the circle.
    #[inline]
    pub fn signed_distance(&self, p: &UnitVector<T>) -> T {
        self.normal.dot(p)
    }

    pub fn contains(&self, p: &UnitVector<T>, tol: Tolerance<T>) -> bool {
        side_of(self, p, tol) == Side::On
    }

    /// Whether both circles are the same point set.
    pub fn coincides(&self, o: &Self, tol: Tolerance<T>) -> bool {
        self.normal.cross(&o.normal).norm() <= tol.tau()
    }

    /// The two intersection points `±q` of distinct circles, `q = n1 × n2`.
    pub fn intersection(&self, o: &Self) -> Option<UnitVector<T>> {
        self.normal.cross(&o.normal).normalize().ok()
    }
}

/// Circle through `p` and `q`, oriented by `p × q`.
pub fn great_circle_through<T: Scalar>(
    p: &UnitVector<T>,
    q: &UnitVector<T>,
    tol: Tolerance<T>,
) -> Result<GreatCircle<T>, KernelError> {
    let c = p.cross(q);
    if c.norm() <= tol.tau() {
        return Err(KernelError::DegeneratePair);
    }
    Ok(GreatCircle { normal: c.normalize()? })
}

pub fn side_of<T: Scalar>(c: &GreatCircle<T>, p: &UnitVector<T>, tol: Tolerance<T>) -> Side {
    let d = c.signed_distance(p);
    if d > tol.tau() {
        Side::Positive
    } else if d < -tol.tau() {
        Side::Negative
    } else {
        Side::On
    }
}

/// The interior point where `a` crosses `c` transversally, if any.
pub fn crosses_circle<T: Scalar>(
    a: &GeodesicArc<T>,
    c: &GreatCircle<T>,
    tol: Tolerance<T>,
) -> Option<UnitVector<T>> {
    let s = side_of(c, &a.start, tol);
    let e = side_of(c, &a.end, tol);
    let opposite = matches!(
        (s, e),
        (Side::Positive, Side::Negative) | (Side::Negative, Side::Positive)
    );
    if !opposite {
        return None;
    }
    let q = a.circle.intersection(c)?;
    let (ds, de) = (c.signed_distance(&a.start), c.signed_distance(&a.end));
    // Linear interpolation of the signed distance along the chord picks the side.
    let t = ds / (ds - de);
    let chord = a.start.vec() * (T::one() - t) + a.end.vec() * t;
    let p = chord.normalize().ok()?;
    Some(if p.dot(&q) >= T::zero() { q } else { q.antipode() })
}

/// Whether `p` lies on the supporting circle of `a`.
pub fn collinear_with<T: Scalar>(a: &GeodesicArc<T>, p: &UnitVector<T>, tol: Tolerance<T>) -> bool {
    a.circle.contains(p, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    type U = UnitVector<f64>;

    fn u(x: f64, y: f64, z: f64) -> U {
        U::new(x, y, z).unwrap()
    }

    #[test]
    fn circle_through_axes() {
        let tol = Tolerance::default();
        let c = great_circle_through(&u(1., 0., 0.), &u(0., 1., 0.), tol).unwrap();
        assert!(c.normal.approx_eq(&u(0., 0., 1.), 1e-12));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = great_circle_through(&u(1., 0., 0.), &u(h, h, 0.), tol).unwrap();
        assert!(c.normal.approx_eq(&u(0., 0., 1.), 1e-12));
        assert_eq!(
            great_circle_through(&u(1., 0., 0.), &u(-1., 0., 0.), tol),
            Err(KernelError::DegeneratePair)
        );
        assert_eq!(
            great_circle_through(&u(1., 0., 0.), &u(1., 0., 0.), tol),
            Err(KernelError::DegeneratePair)
        );
    }

    #[test]
    fn side_classification() {
        let tol = Tolerance::default();
        let c = GreatCircle::from_normal(u(0., 0., 1.));
        assert_eq!(side_of(&c, &u(0., 0., 1.), tol), Side::Positive);
        assert_eq!(side_of(&c, &u(1., 0., 0.), tol), Side::On);
        assert_eq!(side_of(&c, &u(0., 0.6, -0.8), tol), Side::Negative);
    }

    #[test]
    fn crossing_of_meridian_plane() {
        let tol = Tolerance::default();
        let a = GeodesicArc::new(u(0.5, 0., 0.866), u(-0.5, 0., 0.866), tol).unwrap();
        let c = GreatCircle::from_normal(u(1., 0., 0.));
        let p = crosses_circle(&a, &c, tol).unwrap();
        assert!(p.approx_eq(&u(0., 0., 1.), 1e-12));
        assert!(crosses_circle(&a, &a.circle, tol).is_none());
        // touching only at an endpoint is not a crossing
        let b = GeodesicArc::new(u(0., 0., 1.), u(0.5, 0., 0.866), tol).unwrap();
        assert!(crosses_circle(&b, &c, tol).is_none());
    }

    #[test]
    fn collinearity_with_pole() {
        let tol = Tolerance::default();
        let a = GeodesicArc::new(u(1., 1., 0.), u(-1., 1., 0.), tol).unwrap();
        assert!(collinear_with(&a, &u(1., 0., 0.), tol));
        assert!(!collinear_with(&a, &u(0., 0., 1.), tol));
    }

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::<f64>::new(0.0).is_err());
        assert!(Tolerance::<f64>::new(1e-3).is_err());
        assert!(Tolerance::<f64>::new(1e-6).is_ok());
        assert!(Tolerance::<f32>::default().tau() > 0.0);
    }
}
