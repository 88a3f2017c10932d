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

//! Polygonal scenes in 3-space and the radial projection of what a
//! viewpoint sees onto the unit sphere around it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::canonical_pole;
use crate::diagram::Diagram;
use crate::{GeodesicArc, Tolerance, Vec3};

pub type Point3 = [f64; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub polygons: Vec<Vec<Point3>>,
}

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("scene json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("polygon {0} has fewer than three vertices or is not planar")]
    BadPolygon(usize),
    #[error("viewpoint lies on polygon {0}")]
    ViewpointOnPolygon(usize),
    #[error("vertex {vertex} of polygon {polygon} is visible")]
    NotVertexHidden { polygon: usize, vertex: usize },
    #[error("visible portions do not form a valid diagram: {0}")]
    DegenerateView(String),
}

fn v3(p: &Point3) -> Vec3 {
    Vec3::new(p[0], p[1], p[2])
}

struct Plane {
    normal: Vec3,
    offset: f64,
    /// Coordinate dropped when projecting to 2-D.
    drop: usize,
}

fn plane_of(poly: &[Point3]) -> Option<Plane> {
    if poly.len() < 3 {
        return None;
    }
    // Newell's method.
    let mut n = Vec3::zero();
    for i in 0..poly.len() {
        let (a, b) = (v3(&poly[i]), v3(&poly[(i + 1) % poly.len()]));
        n = n + Vec3::new((a.y - b.y) * (a.z + b.z), (a.z - b.z) * (a.x + b.x), (a.x - b.x) * (a.y + b.y));
    }
    let len = n.norm();
    if len < 1e-12 {
        return None;
    }
    let normal = n * (1.0 / len);
    let offset = normal.dot(&v3(&poly[0]));
    let a = normal.to_array().map(f64::abs);
    let drop = if a[0] >= a[1] && a[0] >= a[2] {
        0
    } else if a[1] >= a[2] {
        1
    } else {
        2
    };
    Some(Plane { normal, offset, drop })
}

fn flat(p: &Vec3, drop: usize) -> (f64, f64) {
    let a = p.to_array();
    match drop {
        0 => (a[1], a[2]),
        1 => (a[2], a[0]),
        _ => (a[0], a[1]),
    }
}

/// Strict interior test for a point in the polygon's plane.
fn strictly_inside(poly: &[Point3], plane: &Plane, p: &Vec3, eps: f64) -> bool {
    let q = flat(p, plane.drop);
    let pts: Vec<(f64, f64)> = poly.iter().map(|x| flat(&v3(x), plane.drop)).collect();
    let n = pts.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = (dx * dx + dy * dy).sqrt();
        let cross = dx * (q.1 - a.1) - dy * (q.0 - a.0);
        let along = dx * (q.0 - a.0) + dy * (q.1 - a.1);
        if cross.abs() <= eps * len && along >= -eps * len && along <= len * len + eps * len {
            return false;
        }
        if (a.1 > q.1) != (b.1 > q.1) && q.0 < a.0 + (q.1 - a.1) * dx / dy {
            inside = !inside;
        }
    }
    inside
}

impl Scene {
    pub fn from_json(s: &str) -> Result<Self, SceneError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        let polys: Vec<String> = self
            .polygons
            .iter()
            .map(|p| {
                let pts: Vec<String> = p.iter().map(|q| crate::diagram::fmt_point(*q)).collect();
                format!("    [{}]", pts.join(", "))
            })
            .collect();
        format!("{{\n  \"polygons\": [\n{}\n  ]\n}}\n", polys.join(",\n"))
    }

    pub fn check(&self, tol: Tolerance) -> Result<(), SceneError> {
        for (i, p) in self.polygons.iter().enumerate() {
            let plane = plane_of(p).ok_or(SceneError::BadPolygon(i))?;
            let scale = p.iter().map(|q| v3(q).norm()).fold(1.0, f64::max);
            if p.iter().any(|q| (plane.normal.dot(&v3(q)) - plane.offset).abs() > tol.tau() * scale * 1e3) {
                return Err(SceneError::BadPolygon(i));
            }
        }
        Ok(())
    }

    /// True iff the open segment from `a` to `b` meets the interior of polygon `i`.
    fn segment_hits(&self, i: usize, a: &Vec3, b: &Vec3, eps: f64) -> bool {
        let poly = &self.polygons[i];
        let Some(plane) = plane_of(poly) else { return false };
        let da = plane.normal.dot(a) - plane.offset;
        let db = plane.normal.dot(b) - plane.offset;
        if !((da > eps && db < -eps) || (da < -eps && db > eps)) {
            return false;
        }
        let t = da / (da - db);
        let x = *a + (*b - *a) * t;
        strictly_inside(poly, &plane, &x, eps)
    }

    fn blocked(&self, v: &Vec3, w: &Vec3, skip: usize, eps: f64) -> bool {
        (0..self.polygons.len()).any(|j| j != skip && self.segment_hits(j, v, w, eps))
    }
}

/// True iff every polygon vertex is hidden from `v` by some polygon interior.
pub fn is_vertex_hidden(s: &Scene, v: Point3) -> bool {
    first_visible_vertex(s, v, Tolerance::default()).is_none()
}

fn first_visible_vertex(s: &Scene, v: Point3, tol: Tolerance) -> Option<(usize, usize)> {
    let vp = v3(&v);
    for (i, p) in s.polygons.iter().enumerate() {
        for (k, w) in p.iter().enumerate() {
            if !s.blocked(&vp, &v3(w), i, tol.tau()) {
                return Some((i, k));
            }
        }
    }
    None
}

/// Parameter along the edge from `a` to `b` where the ray from `v` through it meets `x`,
/// for `x` in the plane of `v`, `a`, `b`.
fn edge_param(v: &Vec3, a: &Vec3, b: &Vec3, x: &Vec3) -> Option<f64> {
    // Solve v + t (x - v) = a + s (b - a) in the least-squares sense.
    let d = *x - *v;
    let e = *b - *a;
    let n = d.cross(&e);
    let nn = n.dot(&n);
    if nn < 1e-24 {
        return None;
    }
    Some((*a - *v).cross(&d).dot(&n) / nn)
}

/// Visible parameter intervals of the edge from `a` to `b` of polygon `own`.
pub fn visible_intervals(s: &Scene, v: Point3, own: usize, a: Point3, b: Point3, tol: Tolerance) -> Vec<(f64, f64)> {
    let (vp, ap, bp) = (v3(&v), v3(&a), v3(&b));
    let eps = tol.tau();
    let Ok(wedge) = (ap - vp).cross(&(bp - vp)).normalize() else { return Vec::new() };
    let wn = wedge.vec();
    let mut cuts = vec![0.0, 1.0];
    for (j, poly) in s.polygons.iter().enumerate() {
        if j == own {
            continue;
        }
        // Rays through occluder edges crossing the wedge plane.
        for k in 0..poly.len() {
            let (c, d) = (v3(&poly[k]), v3(&poly[(k + 1) % poly.len()]));
            let (dc, dd) = (wn.dot(&(c - vp)), wn.dot(&(d - vp)));
            let mut pts = Vec::new();
            if dc.abs() <= eps {
                pts.push(c);
            }
            if (dc > eps && dd < -eps) || (dc < -eps && dd > eps) {
                pts.push(c + (d - c) * (dc / (dc - dd)));
            }
            for x in pts {
                if let Some(t) = edge_param(&vp, &ap, &bp, &x) {
                    if t > 0.0 && t < 1.0 {
                        cuts.push(t);
                    }
                }
            }
        }
        // Where the edge itself crosses the occluder's plane.
        if let Some(plane) = plane_of(poly) {
            let (da, db) = (plane.normal.dot(&ap) - plane.offset, plane.normal.dot(&bp) - plane.offset);
            if (da > 0.0) != (db > 0.0) && (da - db).abs() > 0.0 {
                cuts.push(da / (da - db));
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
    let mut out: Vec<(f64, f64)> = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = ap + (bp - ap) * (0.5 * (lo + hi));
        if s.blocked(&vp, &mid, own, eps) {
            continue;
        }
        match out.last_mut() {
            Some(last) if (last.1 - lo).abs() < 1e-15 => last.1 = hi,
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// The visibility map of `v`: visible portions of polygon edges, projected
/// onto the unit sphere centred at `v`. Arcs carry the edge direction as
/// their pole.
pub fn project_visibility(s: &Scene, v: Point3, tol: Tolerance) -> Result<Diagram, SceneError> {
    s.check(tol)?;
    let vp = v3(&v);
    for (i, p) in s.polygons.iter().enumerate() {
        if let Some(plane) = plane_of(p) {
            if (plane.normal.dot(&vp) - plane.offset).abs() <= tol.tau() && strictly_inside(p, &plane, &vp, 0.0) {
                return Err(SceneError::ViewpointOnPolygon(i));
            }
        }
    }
    if let Some((polygon, vertex)) = first_visible_vertex(s, v, tol) {
        return Err(SceneError::NotVertexHidden { polygon, vertex });
    }
    let dir = |p: Vec3| (p - vp).normalize();
    let mut arcs = Vec::new();
    let mut poles = Vec::new();
    for (i, poly) in s.polygons.iter().enumerate() {
        for k in 0..poly.len() {
            let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
            let (ap, bp) = (v3(&a), v3(&b));
            let Ok(pole) = (bp - ap).normalize() else { continue };
            for (lo, hi) in visible_intervals(s, v, i, a, b, tol) {
                let (Ok(x), Ok(y)) = (dir(ap + (bp - ap) * lo), dir(ap + (bp - ap) * hi)) else { continue };
                if x.distance(&y) < 10.0 * tol.tau() {
                    log::warn!("dropping a visible sliver on polygon {i}, edge {k}");
                    continue;
                }
                let arc = GeodesicArc::new(x, y, tol).map_err(|e| SceneError::DegenerateView(e.to_string()))?;
                arcs.push(arc);
                poles.push(Some(canonical_pole(pole)));
            }
        }
    }
    let d = Diagram::build(arcs, None, tol).map_err(|e| SceneError::DegenerateView(e.to_string()))?;
    Ok(d.with_poles(poles))
}

/// Half-length and half-width of the fixture's rectangles.
pub const PLANK_HALF_LENGTH: f64 = 2.0;
pub const PLANK_HALF_WIDTH: f64 = 0.75;

/// Six axis-aligned rectangles, one in each face plane of the cube
/// `[-1, 1]^3`, each long enough that its corners hide behind its
/// neighbours as seen from the origin.
pub fn six_rectangle_scene() -> Scene {
    let (h, w) = (PLANK_HALF_LENGTH, PLANK_HALF_WIDTH);
    let base: Vec<Point3> = vec![[-h, -w, 1.0], [h, -w, 1.0], [h, w, 1.0], [-h, w, 1.0]];
    let cycle = |p: &Point3| [p[1], p[2], p[0]];
    let mut polygons = Vec::new();
    let mut cur = base;
    for _ in 0..3 {
        polygons.push(cur.clone());
        polygons.push(cur.iter().map(|p| [-p[0], -p[1], -p[2]]).collect());
        cur = cur.iter().map(cycle).collect();
    }
    Scene { polygons }
}
