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

//! Diagram surgery: ε-doubling, SD to SOD conversion, pole perturbation
//! and dummy poles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Endpoint};
use crate::kernel::{intersect_arcs, Intersection, Side};
use crate::orientation::{alignment, PoleAssignment};
use crate::swirls::enumerate;
use crate::{GeodesicArc, GreatCircle, Tolerance, UnitVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("epsilon {eps} must lie in (0, {limit})")]
    EpsilonTooLarge { eps: f64, limit: f64 },
    #[error("arc index {0} out of range")]
    NoSuchArc(usize),
    #[error("doubling produced an invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
    #[error("incidence structure not preserved at this delta")]
    ReembedFailed,
    #[error("no great circle carries two or more poles")]
    NoHostCircle,
    #[error("diagram carries no pole assignment")]
    MissingPoles,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoublingSpec {
    pub arc: usize,
    pub eps: f64,
}

/// Default doubling width: an eighth of the feature separation.
pub fn default_eps(d: &Diagram) -> f64 {
    d.feature_separation() / 8.0
}

/// Default perturbation size: a sixteenth of the feature separation.
pub fn default_delta(d: &Diagram) -> f64 {
    d.feature_separation() / 16.0
}

/// Point at geodesic distance `dist` from `x` along `arc`'s circle, on the
/// positive side of `c` when `positive`.
fn slide_off(arc: &GeodesicArc, x: &UnitVector, dist: f64, c: &GreatCircle, positive: bool) -> UnitVector {
    let t = arc.tangent_at(x);
    let (s, co) = dist.sin_cos();
    let p = (x.vec() * co + t.vec() * s).normalize().expect("unit combination");
    let q = (x.vec() * co - t.vec() * s).normalize().expect("unit combination");
    let p_pos = c.signed_distance(&p) > c.signed_distance(&q);
    if p_pos == positive {
        p
    } else {
        q
    }
}

/// Intersection of two circles nearest to `near`.
fn meet_near(n1: &UnitVector, n2: &UnitVector, near: &UnitVector) -> Option<UnitVector> {
    let q = n1.cross(n2).normalize().ok()?;
    Some(if q.dot(near) >= 0.0 { q } else { q.antipode() })
}

/// One copy of arc `a`, offset to one side, hitting the original blockers.
fn offset_copy(d: &Diagram, a: usize, eps: f64, positive: bool) -> Result<GeodesicArc, TransformError> {
    let tol = d.tol();
    let arc = d.arc(a);
    let c = arc.circle;
    let bs = d.blocker(a, Endpoint::Start);
    let be = d.blocker(a, Endpoint::End);
    let s = slide_off(d.arc(bs), &arc.start, eps / 2.0, &c, positive);
    let e = match d.poles()[a] {
        // Keep the copy collinear with the pole.
        Some(p) => {
            let mut n = s.cross(&p).normalize().map_err(|_| TransformError::ReembedFailed)?;
            if n.dot(&c.normal) < 0.0 {
                n = n.antipode();
            }
            meet_near(&n, &d.arc(be).circle.normal, &arc.end).ok_or(TransformError::ReembedFailed)?
        }
        None => slide_off(d.arc(be), &arc.end, eps / 2.0, &c, positive),
    };
    GeodesicArc::new(s, e, tol).map_err(|_| TransformError::ReembedFailed)
}

/// Side from which `a` is hit, if all hits agree.
fn hit_side(d: &Diagram, a: usize) -> Option<Side> {
    let sides: Vec<Side> = d.hitting(a).into_iter().map(|(h, _)| d.approach_side(h, a)).collect();
    match sides.first() {
        Some(&s) if sides.iter().all(|&x| x == s) => Some(s),
        _ => None,
    }
}

/// Replaces arc `a` by two disjoint copies `eps` apart. The copy on the
/// side from which `a` is hit (the positive side when `a` is hit from both
/// sides or not at all) keeps index `a`; the other copy is appended.
pub fn epsilon_double(d: &Diagram, spec: DoublingSpec) -> Result<Diagram, TransformError> {
    let a = spec.arc;
    if a >= d.len() {
        return Err(TransformError::NoSuchArc(a));
    }
    let limit = d.feature_separation() / 2.0;
    if !(spec.eps > 0.0 && spec.eps < limit) {
        return Err(TransformError::EpsilonTooLarge { eps: spec.eps, limit });
    }
    let tol = d.tol();
    let first_positive = hit_side(d, a) != Some(Side::Negative);
    let near = offset_copy(d, a, spec.eps, first_positive)?;
    let far = offset_copy(d, a, spec.eps, !first_positive)?;
    let old = *d.arc(a);

    let mut arcs: Vec<GeodesicArc> = d.arcs().to_vec();
    arcs[a] = near;
    arcs.push(far);
    for h in 0..d.len() {
        if h == a {
            continue;
        }
        let mut arc = *d.arc(h);
        for e in Endpoint::BOTH {
            let y = d.endpoint(h, e);
            if !old.contains(&y, tol) {
                continue;
            }
            // Shorten toward the far end until the first copy is met.
            let from = d.endpoint(h, e.other());
            let mut best: Option<(f64, UnitVector)> = None;
            for copy in [&near, &far] {
                if let Intersection::Point(q) = intersect_arcs(&arc, copy, tol) {
                    let dist = from.distance(&q);
                    if dist > tol.tau() && best.is_none_or(|(b, _)| dist < b) {
                        best = Some((dist, q));
                    }
                }
            }
            if let Some((_, q)) = best {
                arc = match e {
                    Endpoint::Start => GeodesicArc::new(q, arc.end, tol),
                    Endpoint::End => GeodesicArc::new(arc.start, q, tol),
                }
                .map_err(|_| TransformError::ReembedFailed)?;
            }
        }
        arcs[h] = arc;
    }
    let mut poles = d.poles().to_vec();
    poles.push(poles[a]);
    Ok(Diagram::build(arcs, None, tol)?.with_poles(poles))
}

/// Arcs whose doubling is still required: two-sided arcs and overlap hosts.
fn pending(d: &Diagram) -> Option<usize> {
    let two = d.two_sided_arcs();
    if let Some(&a) = two.first() {
        return Some(a);
    }
    d.overlaps().first().map(|o| o.host)
}

/// Doubles two-sided arcs and overlap hosts until the diagram is a
/// one-sided, overlap-free SOD. Each step uses the smaller of `eps` and an
/// eighth of the current feature separation.
pub fn to_sod(d: &Diagram, eps: Option<f64>) -> Result<Diagram, TransformError> {
    let limit = d.feature_separation() / 2.0;
    let eps = eps.unwrap_or_else(|| default_eps(d));
    if !(eps > 0.0 && eps < limit) {
        return Err(TransformError::EpsilonTooLarge { eps, limit });
    }
    let mut cur = d.clone();
    while let Some(a) = pending(&cur) {
        let step = eps.min(default_eps(&cur));
        cur = epsilon_double(&cur, DoublingSpec { arc: a, eps: step })?;
    }
    Ok(cur)
}

/// Adds `count` poles on the great circle carrying the most poles (at
/// least two). New poles bisect the widest gaps between existing poles
/// modulo antipodes.
pub fn add_dummy_poles(pa: &PoleAssignment, count: usize, tol: Tolerance) -> Result<PoleAssignment, TransformError> {
    if count == 0 {
        return Ok(pa.clone());
    }
    let k = pa.k();
    let mut host: Option<(usize, UnitVector)> = None;
    for i in 0..k {
        for j in i + 1..k {
            let Ok(n) = pa.poles[i].cross(&pa.poles[j]).normalize() else { continue };
            let on = pa.poles.iter().filter(|p| n.dot(p).abs() <= tol.tau()).count();
            if host.is_none_or(|(b, _)| on > b) {
                host = Some((on, n));
            }
        }
    }
    let (_, n) = host.ok_or(TransformError::NoHostCircle)?;
    let e1 = pa.poles.iter().find(|p| n.dot(p).abs() <= tol.tau()).copied().ok_or(TransformError::NoHostCircle)?;
    let e2 = n.cross(&e1).normalize().map_err(|_| TransformError::NoHostCircle)?;
    let pi = std::f64::consts::PI;
    let mut angles: Vec<f64> = pa
        .poles
        .iter()
        .filter(|p| n.dot(p).abs() <= tol.tau())
        .map(|p| p.dot(&e2).atan2(p.dot(&e1)).rem_euclid(pi))
        .collect();
    let mut out = pa.clone();
    for _ in 0..count {
        angles.sort_by(f64::total_cmp);
        let m = angles.len();
        let (gap, at) = (0..m)
            .map(|i| {
                let next = if i + 1 < m { angles[i + 1] } else { angles[0] + pi };
                (next - angles[i], angles[i])
            })
            .fold((f64::NEG_INFINITY, 0.0), |b, x| if x.0 > b.0 { x } else { b });
        let th = (at + gap / 2.0).rem_euclid(pi);
        angles.push(th);
        let p = (e1.vec() * th.cos() + e2.vec() * th.sin()).normalize().expect("unit combination");
        out.poles.push(p);
    }
    Ok(out)
}

/// Moves every pole by at most `delta` into general position and re-solves
/// arc endpoints so that the blocking map, hit sides and swirl cycles are
/// unchanged. Arc circles are rotated minimally to pass through their new
/// pole; endpoints are the circle intersections nearest the old ones.
pub fn perturb_poles(
    d: &Diagram,
    pa: &PoleAssignment,
    delta: f64,
    seed: u64,
) -> Result<(Diagram, PoleAssignment), TransformError> {
    if delta == 0.0 {
        return Ok((d.clone(), pa.clone()));
    }
    let tol = d.tol();
    let before = enumerate(d);
    let sides: Vec<Side> = d.blocking().iter().map(|&(i, _, b)| d.approach_side(i, b)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..32 {
        let poles: Vec<UnitVector> = pa
            .poles
            .iter()
            .map(|p| {
                let u = p.any_orthogonal();
                let axis = u.rotate_about(p, rng.gen_range(0.0..std::f64::consts::TAU));
                p.rotate_about(&axis, delta * rng.gen_range(0.5..1.0))
            })
            .collect();
        let npa = PoleAssignment::new(poles, pa.f.clone());
        if alignment(&npa.poles, tol).degenerate {
            continue;
        }
        if let Some(nd) = reembed(d, &npa, &sides, &before) {
            return Ok((nd, npa));
        }
    }
    Err(TransformError::ReembedFailed)
}

fn reembed(d: &Diagram, pa: &PoleAssignment, sides: &[Side], before: &[crate::swirls::Swirl]) -> Option<Diagram> {
    let tol = d.tol();
    let normals: Vec<UnitVector> = (0..d.len())
        .map(|a| {
            let n = d.arc(a).circle.normal;
            let p = pa.pole_of(a);
            (n.vec() - p.vec() * n.dot(&p)).normalize().ok()
        })
        .collect::<Option<_>>()?;
    let mut arcs = Vec::with_capacity(d.len());
    for a in 0..d.len() {
        let s = meet_near(&normals[a], &normals[d.blocker(a, Endpoint::Start)], &d.arc(a).start)?;
        let e = meet_near(&normals[a], &normals[d.blocker(a, Endpoint::End)], &d.arc(a).end)?;
        arcs.push(GeodesicArc::new(s, e, tol).ok()?);
    }
    let hint = d.blocking();
    let nd = pa.attach(Diagram::build(arcs, Some(&hint), tol).ok()?);
    if nd.blocking() != hint {
        return None;
    }
    let nsides: Vec<Side> = nd.blocking().iter().map(|&(i, _, b)| nd.approach_side(i, b)).collect();
    if nsides != sides {
        return None;
    }
    let after = enumerate(&nd);
    let cycles = |s: &[crate::swirls::Swirl]| s.iter().map(|x| (x.chirality, x.cycle.clone())).collect::<Vec<_>>();
    (cycles(&after) == cycles(before)).then_some(nd)
}
