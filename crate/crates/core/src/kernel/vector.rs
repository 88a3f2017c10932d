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

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::KernelError;
use crate::scalar::Scalar;

/// A free vector in R^3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Normalizes to a [`UnitVector`], failing on (near-)zero input. Input
    /// already unit to within a few ulps is kept bit-for-bit, so that
    /// written and re-read vectors are unchanged.
    pub fn normalize(&self) -> Result<UnitVector<T>, KernelError> {
        let n = self.norm();
        if !(n > T::epsilon() * T::lit(16.0)) || !n.is_finite() {
            return Err(KernelError::ZeroVector);
        }
        if (n - T::one()).abs() <= T::epsilon() * T::lit(4.0) {
            return Ok(UnitVector(*self));
        }
        Ok(UnitVector(Vec3::new(self.x / n, self.y / n, self.z / n)))
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// A point on the unit sphere.
///
/// Construction always renormalizes, so `|v| = 1` up to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[T; 3]", try_from = "[T; 3]")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct UnitVector<T>(Vec3<T>);

impl<T: Scalar> UnitVector<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self, KernelError> {
        Vec3::new(x, y, z).normalize()
    }

    pub fn from_f64(x: f64, y: f64, z: f64) -> Result<Self, KernelError> {
        Self::new(T::lit(x), T::lit(y), T::lit(z))
    }

    #[inline]
    pub fn x(&self) -> T {
        self.0.x
    }
    #[inline]
    pub fn y(&self) -> T {
        self.0.y
    }
    #[inline]
    pub fn z(&self) -> T {
        self.0.z
    }

    #[inline]
    pub fn vec(&self) -> Vec3<T> {
        self.0
    }

    #[inline]
    pub fn dot(&self, o: &Self) -> T {
        self.0.dot(&o.0)
    }

    #[inline]
    pub fn cross(&self, o: &Self) -> Vec3<T> {
        self.0.cross(&o.0)
    }

    #[inline]
    pub fn antipode(&self) -> Self {
        UnitVector(-self.0)
    }

    /// Geodesic (great-circle) distance in radians.
    pub fn distance(&self, o: &Self) -> T {
        self.cross(o).norm().atan2(self.dot(o))
    }

    pub fn approx_eq(&self, o: &Self, tau: T) -> bool {
        self.distance(o) <= tau
    }

    pub fn to_array(&self) -> [T; 3] {
        self.0.to_array()
    }

    /// Rotates about `axis` by `angle` (right-hand rule).
    pub fn rotate_about(&self, axis: &UnitVector<T>, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let k = axis.0;
        let v = self.0;
        let r = v * c + k.cross(&v) * s + k * (k.dot(&v) * (T::one() - c));
        r.normalize().unwrap_or(*self)
    }

    /// Any unit vector orthogonal to this one.
    pub fn any_orthogonal(&self) -> Self {
        let a = self.0;
        let pick = if a.x.abs() <= a.y.abs() && a.x.abs() <= a.z.abs() {
            Vec3::new(T::one(), T::zero(), T::zero())
        } else if a.y.abs() <= a.z.abs() {
            Vec3::new(T::zero(), T::one(), T::zero())
        } else {
            Vec3::new(T::zero(), T::zero(), T::one())
        };
        a.cross(&pick).normalize().expect("non-parallel pick")
    }
}

impl<T: Scalar> From<UnitVector<T>> for [T; 3] {
    fn from(u: UnitVector<T>) -> Self {
        u.to_array()
    }
}

impl<T: Scalar> TryFrom<[T; 3]> for UnitVector<T> {
    type Error = KernelError;
    fn try_from(a: [T; 3]) -> Result<Self, Self::Error> {
        Self::new(a[0], a[1], a[2])
    }
}
