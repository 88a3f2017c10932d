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

//! Arc/hull incidence analysis: intersect, cross and thrust points, and
//! the connectivity of the diagram inside a hull.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AttractorHull, PoleAssignment};
use crate::diagram::Diagram;
use crate::kernel::{crosses_circle, polygon_contains, Location};
use crate::swirls::Swirl;
use crate::{GeodesicArc, GreatCircle, SphericalPolygon, UnitVector};

/// A point where an arc meets the hull boundary, with the hull edges
/// (indexed from each vertex to the next) that contain it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub arc: usize,
    pub point: UnitVector,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    /// Arcs meeting the open interior of the hull.
    pub interior_hits: Vec<usize>,
    pub boundary_crossings: Vec<BoundaryPoint>,
    pub thrust_points: Vec<BoundaryPoint>,
    pub edges_touched: Vec<usize>,
    /// Index into the swirl list of an eye lying in the open interior.
    pub eye_inside: Option<usize>,
    /// Names of the checks that failed.
    pub failed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("hull check failed: {}", .0.failed.join(", "))]
pub struct HullViolation(pub Box<HullReport>);

struct Clip {
    lo: f64,
    hi: f64,
    interior: bool,
}

fn slack(d: &Diagram) -> f64 {
    4.0 * d.tol().tau()
}

fn gvals(circles: &[GreatCircle], p: &UnitVector) -> Vec<f64> {
    circles.iter().map(|c| c.signed_distance(p)).collect()
}

/// Parameter interval of `arc` inside the closed convex region bounded by
/// `circles` (interior on the positive sides).
fn clip_arc(arc: &GeodesicArc, circles: &[GreatCircle], eps: f64) -> Option<Clip> {
    let s = arc.start.vec();
    let t = arc.start_tangent().vec();
    let len = arc.length();
    let (mut lo, mut hi) = (0.0f64, len);
    for c in circles {
        let m = c.normal.vec();
        let (a, b) = (m.dot(&s), m.dot(&t));
        if a.abs() <= eps && b.abs() <= eps {
            continue;
        }
        let g = |th: f64| a * th.cos() + b * th.sin();
        let mut z = (-a).atan2(b);
        if z < 0.0 {
            z += std::f64::consts::PI;
        }
        let mut cuts = vec![0.0];
        if z > 0.0 && z < len {
            cuts.push(z);
        }
        cuts.push(len);
        let mut flo = f64::INFINITY;
        let mut fhi = f64::NEG_INFINITY;
        for w in cuts.windows(2) {
            if g(0.5 * (w[0] + w[1])) >= -eps {
                flo = flo.min(w[0]);
                fhi = fhi.max(w[1]);
            }
        }
        if flo > fhi {
            // Only isolated touches remain possible; check the cut points.
            let touch: Vec<f64> = cuts.iter().copied().filter(|&th| g(th) >= -eps).collect();
            match touch.first() {
                Some(&th) => {
                    flo = th;
                    fhi = th;
                }
                None => return None,
            }
        }
        lo = lo.max(flo);
        hi = hi.min(fhi);
        if lo > hi + eps {
            return None;
        }
    }
    let mid = arc.point_at(0.5 * (lo + hi));
    let interior = hi - lo > eps && gvals(circles, &mid).iter().all(|&v| v > eps);
    Some(Clip { lo, hi: hi.max(lo), interior })
}

fn edges_at(circles: &[GreatCircle], p: &UnitVector, eps: f64) -> Vec<usize> {
    gvals(circles, p).iter().enumerate().filter(|(_, v)| v.abs() <= eps).map(|(i, _)| i).collect()
}

fn strictly_inside(circles: &[GreatCircle], p: &UnitVector, eps: f64) -> bool {
    gvals(circles, p).iter().all(|&v| v > eps)
}

fn closed_inside(circles: &[GreatCircle], p: &UnitVector, eps: f64) -> bool {
    gvals(circles, p).iter().all(|&v| v >= -eps)
}

/// Whether the hull boundary passes from one side of `arc` to the other at `x`.
fn boundary_crosses(arc: &GeodesicArc, poly: &SphericalPolygon, x: &UnitVector, eps: f64) -> bool {
    let n = poly.len();
    let mut nbrs = Vec::new();
    for i in 0..n {
        let (v, w) = (poly.vertices[i], poly.vertices[(i + 1) % n]);
        let on_edge = {
            let c = v.cross(&w);
            c.norm() > 0.0 && c.dot(&x.vec()).abs() <= eps * c.norm()
                && v.distance(x) + x.distance(&w) <= v.distance(&w) + 1e-9
        };
        if on_edge {
            if v.distance(x) > eps {
                nbrs.push(v);
            }
            if w.distance(x) > eps {
                nbrs.push(w);
            }
        }
    }
    let nrm = arc.circle.normal.vec();
    let signs: Vec<f64> = nbrs
        .iter()
        .map(|q| {
            let dir = q.vec() - x.vec() * x.dot(q);
            dir.dot(&nrm)
        })
        .filter(|s| s.abs() > 1e-12)
        .collect();
    signs.iter().any(|&s| s > 0.0) && signs.iter().any(|&s| s < 0.0)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let nx = self.0[c];
            self.0[c] = r;
            c = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

pub fn hull_report(
    d: &Diagram,
    _pa: &PoleAssignment,
    h: &AttractorHull,
    swirls: &[Swirl],
) -> Result<HullReport, HullViolation> {
    let eps = slack(d);
    let tol = d.tol();
    let empty = || HullReport {
        interior_hits: vec![],
        boundary_crossings: vec![],
        thrust_points: vec![],
        edges_touched: vec![],
        eye_inside: None,
        failed: vec![],
    };
    let Some(poly) = h.polygon() else {
        let mut r = empty();
        r.failed.push("hull is total".into());
        return Err(HullViolation(Box::new(r)));
    };
    let circles: Vec<GreatCircle> = poly.edge_circles(tol);
    let mut r = empty();

    let mut internal = Dsu::new(d.len());
    let mut closed = Dsu::new(d.len());
    for (i, e, b) in d.blocking() {
        let x = d.endpoint(i, e);
        if strictly_inside(&circles, &x, eps) {
            internal.union(i, b);
        }
        if closed_inside(&circles, &x, eps) {
            closed.union(i, b);
        }
    }

    let mut touches: Vec<BoundaryPoint> = Vec::new();
    let mut two_cross_ok = true;
    for a in 0..d.len() {
        let arc = d.arc(a);
        let Some(c) = clip_arc(arc, &circles, eps) else { continue };
        let mut bpts: Vec<UnitVector> = Vec::new();
        for th in [c.lo, c.hi] {
            let p = arc.point_at(th);
            if !strictly_inside(&circles, &p, eps) && !bpts.iter().any(|q| q.approx_eq(&p, eps)) {
                bpts.push(p);
            }
        }
        if c.interior {
            r.interior_hits.push(a);
            if bpts.len() > 1 {
                two_cross_ok = false;
            }
        }
        for p in bpts {
            let bp = BoundaryPoint { arc: a, point: p, edges: edges_at(&circles, &p, eps) };
            let internal_pt = !arc.is_endpoint(&p, tol);
            if internal_pt && boundary_crosses(arc, poly, &p, eps) {
                r.boundary_crossings.push(bp.clone());
            }
            if c.interior {
                r.thrust_points.push(bp.clone());
            }
            for &e in &bp.edges {
                if !r.edges_touched.contains(&e) {
                    r.edges_touched.push(e);
                }
            }
            touches.push(bp);
        }
    }
    r.edges_touched.sort_unstable();

    r.eye_inside = swirls.iter().position(|s| {
        s.eye.vertices.iter().all(|v| {
            matches!(polygon_contains(poly, v, tol), Ok(Location::Interior))
        })
    });

    if r.interior_hits.is_empty() {
        r.failed.push("no arc meets the interior".into());
    }
    if !two_cross_ok {
        r.failed.push("arc meets the boundary twice".into());
    }
    let touches_ok = touches.iter().all(|t| {
        r.boundary_crossings.iter().any(|c| {
            closed.find(c.arc) == closed.find(t.arc) && t.edges.iter().any(|e| c.edges.contains(e))
        })
    });
    if !touches_ok {
        r.failed.push("boundary touch not connected to a crossing".into());
    }
    // Thrust points grouped by internal connectivity of their arcs.
    let mut groups: Vec<(usize, Vec<&BoundaryPoint>)> = Vec::new();
    for &a in &r.interior_hits {
        let root = internal.find(a);
        if !groups.iter().any(|g| g.0 == root) {
            groups.push((root, Vec::new()));
        }
    }
    for tp in &r.thrust_points {
        let root = internal.find(tp.arc);
        if let Some(g) = groups.iter_mut().find(|g| g.0 == root) {
            g.1.push(tp);
        }
    }
    let m = circles.len();
    for (_, pts) in &groups {
        let covered_by = |es: &[usize]| pts.iter().all(|p| p.edges.iter().any(|e| es.contains(e)));
        if pts.len() < 3 || (0..m).any(|e| covered_by(&[e])) {
            r.failed.push("fewer than three thrust points off a single edge".into());
            break;
        }
        if h.void && (0..m).any(|e| (e + 1..m).any(|f| covered_by(&[e, f]))) {
            r.failed.push("void hull thrust points within two edges".into());
            break;
        }
    }
    if r.eye_inside.is_none() {
        r.failed.push("no eye inside".into());
    }
    if r.failed.is_empty() {
        Ok(r)
    } else {
        Err(HullViolation(Box::new(r)))
    }
}

/// Number of distinct arcs crossing `c` transversally at interior points.
pub fn circle_crossing_count(d: &Diagram, c: &GreatCircle) -> usize {
    (0..d.len()).filter(|&a| crosses_circle(d.arc(a), c, d.tol()).is_some()).count()
}

/// Number of arcs crossing the open great semicircle from `from` toward
/// `from`'s antipode in the direction `c.normal × from`.
pub fn semicircle_crossing_count(d: &Diagram, c: &GreatCircle, from: &UnitVector) -> usize {
    let dir = c.normal.cross(from);
    (0..d.len())
        .filter(|&a| {
            crosses_circle(d.arc(a), c, d.tol()).is_some_and(|x| x.vec().dot(&dir) > d.tol().tau())
        })
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VanishingError {
    #[error("arcs {0} and {1} are collinear")]
    Collinear(usize, usize),
    #[error("arcs {0} and {1} have different poles")]
    DifferentPoles(usize, usize),
}

/// For two non-collinear arcs sharing a pole: neither meets the other's
/// supporting circle.
pub fn common_vanishing_check(d: &Diagram, pa: &PoleAssignment, a: usize, b: usize) -> Result<bool, VanishingError> {
    let tol = d.tol();
    let (x, y) = (d.arc(a), d.arc(b));
    if x.circle.coincides(&y.circle, tol) {
        return Err(VanishingError::Collinear(a, b));
    }
    if pa.f[a] != pa.f[b] {
        return Err(VanishingError::DifferentPoles(a, b));
    }
    let misses = |arc: &GeodesicArc, c: &GreatCircle| {
        let (s, e) = (c.signed_distance(&arc.start), c.signed_distance(&arc.end));
        (s > tol.tau() && e > tol.tau()) || (s < -tol.tau() && e < -tol.tau())
    };
    Ok(misses(y, &x.circle) && misses(x, &y.circle))
}

