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

//! Spherical diagrams (arrangements of internally disjoint geodesic arcs
//! blocked at both endpoints) and the analyses built on them.

pub mod catalog;
pub mod diagram;
pub mod kernel;
pub mod orientation;
pub mod scalar;
pub mod scene;
pub mod swirls;
pub mod transforms;
pub mod walks;

pub use scalar::Scalar;

/// Double-precision kernel types used by every analysis module.
pub type UnitVector = kernel::UnitVector<f64>;
pub type Vec3 = kernel::Vec3<f64>;
pub type GreatCircle = kernel::GreatCircle<f64>;
pub type GeodesicArc = kernel::GeodesicArc<f64>;
pub type SphericalPolygon = kernel::SphericalPolygon<f64>;
pub type Tolerance = kernel::Tolerance<f64>;
pub type HullResult = kernel::HullResult<f64>;
pub type Intersection = kernel::Intersection<f64>;
