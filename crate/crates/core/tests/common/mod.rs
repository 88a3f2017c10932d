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


#![allow(dead_code)]

use spherical_diagrams::catalog;
use spherical_diagrams::diagram::Diagram;
use spherical_diagrams::orientation::PoleAssignment;
use spherical_diagrams::swirls::Chirality;
use spherical_diagrams::transforms::{default_delta, default_eps, epsilon_double, perturb_poles, DoublingSpec};
use spherical_diagrams::UnitVector;

pub struct Case {
    pub name: String,
    pub diagram: Diagram,
    pub poles: PoleAssignment,
}

pub fn catalog_cases() -> Vec<Case> {
    catalog::list_entries()
        .into_iter()
        .map(|e| {
            let (diagram, poles) = catalog::construct(&e.name).expect("catalog entry builds");
            Case { name: e.name, diagram, poles }
        })
        .collect()
}

/// Every catalog diagram, one ε-doubled copy and one pole-perturbed copy.
pub fn catalog_and_variants() -> Vec<Case> {
    let mut out = Vec::new();
    for c in catalog_cases() {
        let eps = default_eps(&c.diagram);
        let doubled = epsilon_double(&c.diagram, DoublingSpec { arc: 0, eps }).expect("doubling");
        let dp = PoleAssignment::from_diagram(&doubled).expect("doubling keeps poles");
        let (moved, mp) =
            perturb_poles(&c.diagram, &c.poles, default_delta(&c.diagram), 7).expect("perturbation");
        out.push(Case { name: format!("{} doubled", c.name), diagram: doubled, poles: dp });
        out.push(Case { name: format!("{} perturbed", c.name), diagram: moved, poles: mp });
        out.push(c);
    }
    out
}

/// A swirl as seen by the oracle: arc cycle starting at its smallest index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawSwirl {
    pub cycle: Vec<usize>,
    pub clockwise: bool,
}

fn canonical(mut cycle: Vec<usize>) -> Vec<usize> {
    let m = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(m);
    cycle
}

/// Endpoint of `a` lying in the relative interior of `b`, by direct
/// geometric test.
fn hit(d: &Diagram, a: usize, b: usize) -> Option<(UnitVector, bool)> {
    let tol = d.tol();
    let (arc, host) = (d.arc(a), d.arc(b));
    [(arc.start, false), (arc.end, true)].into_iter().find(|(p, _)| host.interior_contains(p, tol))
}

/// Direction of travel along `a` at `p` when heading to its end (or start).
fn heading(d: &Diagram, a: usize, p: &UnitVector, to_end: bool) -> spherical_diagrams::Vec3 {
    let t = d.arc(a).tangent_at(p).vec();
    if to_end {
        t
    } else {
        t * -1.0
    }
}

/// Brute force: all simple cycles of the hit digraph whose consecutive
/// turns agree and whose corner points bound a convex region.
pub fn brute_force_swirls(d: &Diagram) -> Vec<RawSwirl> {
    let n = d.len();
    let tau = d.tol().tau();
    let hits: Vec<Vec<Option<(UnitVector, bool)>>> =
        (0..n).map(|a| (0..n).map(|b| if a == b { None } else { hit(d, a, b) }).collect()).collect();

    let mut cycles: Vec<Vec<usize>> = Vec::new();
    fn extend(
        path: &mut Vec<usize>,
        on: &mut [bool],
        hits: &[Vec<Option<(UnitVector, bool)>>],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        let first = path[0];
        for next in 0..hits.len() {
            if hits[last][next].is_none() {
                continue;
            }
            if next == first && path.len() >= 2 {
                out.push(path.clone());
            } else if next > first && !on[next] {
                on[next] = true;
                path.push(next);
                extend(path, on, hits, out);
                path.pop();
                on[next] = false;
            }
        }
    }
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        extend(&mut vec![s], &mut on, &hits, &mut cycles);
    }

    let mut out = Vec::new();
    'cycle: for c in cycles {
        let k = c.len();
        let corner: Vec<(UnitVector, bool)> = (0..k).map(|i| hits[c[i]][c[(i + 1) % k]].unwrap()).collect();
        let mut sign = 0.0;
        for i in 0..k {
            let (p, to_end) = corner[i];
            let next = c[(i + 1) % k];
            let incoming = heading(d, c[i], &p, to_end);
            let outgoing = heading(d, next, &p, corner[(i + 1) % k].1);
            let s = incoming.cross(&outgoing).dot(&p.vec());
            if s.abs() <= tau || (sign != 0.0 && s.signum() != sign) {
                continue 'cycle;
            }
            sign = s.signum();
        }
        // Left turns put the region on the left of every edge.
        let pts: Vec<UnitVector> = corner.iter().map(|(p, _)| *p).collect();
        if k >= 3 {
            for i in 0..k {
                let e = pts[i].cross(&pts[(i + 1) % k]);
                if pts.iter().any(|q| sign * e.dot(&q.vec()) < -tau) {
                    continue 'cycle;
                }
            }
        }
        out.push(RawSwirl { cycle: canonical(c), clockwise: sign < 0.0 });
    }
    out.sort();
    out
}

pub fn as_raw(swirls: &[spherical_diagrams::swirls::Swirl]) -> Vec<RawSwirl> {
    let mut v: Vec<RawSwirl> = swirls
        .iter()
        .map(|s| RawSwirl { cycle: canonical(s.cycle.clone()), clockwise: s.chirality == Chirality::Clockwise })
        .collect();
    v.sort();
    v
}

pub const EPS: f64 = 1e-9;

/// Inward edge normals of a convex polygon, whichever way it is wound.
pub fn inward_normals(vertices: &[UnitVector]) -> Vec<spherical_diagrams::Vec3> {
    let n = vertices.len();
    let mut normals: Vec<_> = (0..n).map(|i| vertices[i].cross(&vertices[(i + 1) % n])).collect();
    let mut c = spherical_diagrams::Vec3::zero();
    for v in vertices {
        c = c + v.vec();
    }
    if normals.iter().any(|m| m.dot(&c) < 0.0) {
        for m in &mut normals {
            *m = *m * -1.0;
        }
    }
    normals.into_iter().map(|m| m * (1.0 / m.norm())).collect()
}

pub fn strictly_inside(normals: &[spherical_diagrams::Vec3], p: &UnitVector) -> bool {
    normals.iter().all(|m| m.dot(&p.vec()) > EPS)
}

/// Edges (by index) whose closed segment carries `p`, for a point already
/// known to lie in the closed polygon.
pub fn edges_through(normals: &[spherical_diagrams::Vec3], p: &UnitVector) -> Vec<usize> {
    (0..normals.len()).filter(|&i| normals[i].dot(&p.vec()).abs() <= EPS).collect()
}

/// Part of arc `a` inside the closed convex polygon, as a parameter range.
/// Each edge constraint is a sinusoid in the arc parameter whose zeros are
/// π apart, and an arc is shorter than π, so it changes sign at most once.
pub fn clip_arc(d: &Diagram, a: usize, normals: &[spherical_diagrams::Vec3]) -> Option<(f64, f64)> {
    use std::f64::consts::{FRAC_PI_2, TAU};
    let arc = d.arc(a);
    let len = arc.length();
    let s = arc.start.vec();
    let u = arc.start_tangent().vec();
    let (mut lo, mut hi) = (0.0f64, len);
    for m in normals {
        let (ca, sb) = (m.dot(&s), m.dot(&u));
        let phi = sb.atan2(ca);
        let zero = [phi + FRAC_PI_2, phi - FRAC_PI_2]
            .into_iter()
            .map(|z| z.rem_euclid(TAU))
            .find(|&z| z > 0.0 && z < len);
        let value = |t: f64| ca * t.cos() + sb * t.sin();
        match zero {
            None => {
                if value(0.5 * len) < -EPS {
                    return None;
                }
            }
            Some(z) => {
                if value(0.5 * z) >= 0.0 {
                    hi = hi.min(z);
                } else {
                    lo = lo.max(z);
                }
            }
        }
    }
    (hi >= lo).then_some((lo, hi))
}

pub struct Contact {
    pub interior: bool,
    /// Distinct points where the arc meets the boundary.
    pub boundary: Vec<UnitVector>,
}

pub fn contact(d: &Diagram, a: usize, normals: &[spherical_diagrams::Vec3]) -> Contact {
    let Some((lo, hi)) = clip_arc(d, a, normals) else {
        return Contact { interior: false, boundary: Vec::new() };
    };
    let arc = d.arc(a);
    let mid = arc.point_at(0.5 * (lo + hi));
    let interior = hi - lo > 1e-7 && strictly_inside(normals, &mid);
    let mut boundary: Vec<UnitVector> = Vec::new();
    for t in [lo, hi] {
        let p = arc.point_at(t);
        let on_edge = normals.iter().any(|m| m.dot(&p.vec()).abs() <= 1e-7);
        if on_edge && !boundary.iter().any(|q| q.approx_eq(&p, 1e-7)) {
            boundary.push(p);
        }
    }
    Contact { interior, boundary }
}

/// Whether arc `a` crosses the great circle with normal `n` at an interior point.
pub fn crosses(d: &Diagram, a: usize, n: &spherical_diagrams::Vec3) -> bool {
    let arc = d.arc(a);
    let (s, e) = (n.dot(&arc.start.vec()), n.dot(&arc.end.vec()));
    (s > EPS && e < -EPS) || (s < -EPS && e > EPS)
}

pub fn random_unit(rng: &mut impl rand::Rng) -> UnitVector {
    loop {
        let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0f64..1.0)];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 > 1e-4 && n2 <= 1.0 {
            return UnitVector::new(v[0], v[1], v[2]).unwrap();
        }
    }
}

/// Three distinct arcs thrusting at three distinct points, not all on one edge.
pub fn three_spread_thrusts(t: &[(usize, UnitVector, Vec<usize>)]) -> bool {
    let n = t.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&t[i], &t[j], &t[k]);
                if a.0 == b.0 || a.0 == c.0 || b.0 == c.0 {
                    continue;
                }
                if a.1.approx_eq(&b.1, 1e-7) || a.1.approx_eq(&c.1, 1e-7) || b.1.approx_eq(&c.1, 1e-7) {
                    continue;
                }
                if !a.2.iter().any(|e| b.2.contains(e) && c.2.contains(e)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Samples `per_edge` points on every polygon edge and compares the
/// computed visible intervals with a direct segment-rectangle test.
/// Returns the number of samples compared and the disagreements.
pub fn ray_oracle(
    s: &spherical_diagrams::scene::Scene,
    v: [f64; 3],
    per_edge: usize,
    seed: u64,
) -> (usize, Vec<(usize, usize, f64)>) {
    use rand::{Rng, SeedableRng};
    let tol = spherical_diagrams::Tolerance::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let hidden = |w: [f64; 3], own: usize| -> bool {
        s.polygons.iter().enumerate().any(|(j, p)| j != own && segment_meets_rectangle(v, w, p))
    };
    let (mut checked, mut bad) = (0, Vec::new());
    for (i, poly) in s.polygons.iter().enumerate() {
        for k in 0..poly.len() {
            let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
            let vis = spherical_diagrams::scene::visible_intervals(s, v, i, a, b, tol);
            for _ in 0..per_edge {
                let t: f64 = rng.gen_range(0.0..1.0);
                if vis.iter().any(|&(lo, hi)| (t - lo).abs() < 1e-9 || (t - hi).abs() < 1e-9) {
                    continue;
                }
                let inside = vis.iter().any(|&(lo, hi)| t > lo && t < hi);
                let w = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])];
                checked += 1;
                if inside == hidden(w, i) {
                    bad.push((i, k, t));
                }
            }
        }
    }
    (checked, bad)
}

/// Independent test for axis-aligned rectangles: intersect the segment
/// with the rectangle's plane and compare coordinates.
pub fn segment_meets_rectangle(v: [f64; 3], w: [f64; 3], rect: &[[f64; 3]]) -> bool {
    let axis = (0..3).find(|&c| rect.iter().all(|p| (p[c] - rect[0][c]).abs() < 1e-12)).unwrap();
    let level = rect[0][axis];
    let (dv, dw) = (v[axis] - level, w[axis] - level);
    if dv * dw >= 0.0 {
        return false;
    }
    let t = dv / (dv - dw);
    let x: Vec<f64> = (0..3).map(|c| v[c] + t * (w[c] - v[c])).collect();
    (0..3).filter(|&c| c != axis).all(|c| {
        let lo = rect.iter().map(|p| p[c]).fold(f64::INFINITY, f64::min);
        let hi = rect.iter().map(|p| p[c]).fold(f64::NEG_INFINITY, f64::max);
        x[c] > lo && x[c] < hi
    })
}
