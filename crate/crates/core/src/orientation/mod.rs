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

//! k-orientation: pole assignments, alignment, attractors and their hulls.

mod hulls;
mod infer;
mod partition;

pub use hulls::{
    circle_crossing_count, common_vanishing_check, hull_report, semicircle_crossing_count, BoundaryPoint, HullReport,
    HullViolation, VanishingError,
};
pub use infer::infer_assignments;
pub use partition::{attractor_partition, partition_bounds, PartitionBounds};

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::kernel::{spherical_hull, Side};
use crate::{HullResult, Tolerance, UnitVector};

/// Poles `P` and the map `f` from arcs to pole indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleAssignment {
    pub poles: Vec<UnitVector>,
    pub f: Vec<usize>,
}

impl PoleAssignment {
    pub fn new(poles: Vec<UnitVector>, f: Vec<usize>) -> Self {
        Self { poles, f }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.poles.len()
    }

    pub fn pole_of(&self, arc: usize) -> UnitVector {
        self.poles[self.f[arc]]
    }

    /// Collects the per-arc poles recorded on a diagram, merging poles
    /// that agree up to sign.
    pub fn from_diagram(d: &Diagram) -> Option<Self> {
        let tau = d.tol().tau();
        let mut poles: Vec<UnitVector> = Vec::new();
        let mut f = Vec::with_capacity(d.len());
        for p in d.poles() {
            let p = (*p)?;
            let idx = match poles.iter().position(|q| q.approx_eq(&p, tau) || q.approx_eq(&p.antipode(), tau)) {
                Some(i) => i,
                None => {
                    poles.push(p);
                    poles.len() - 1
                }
            };
            f.push(idx);
        }
        Some(Self { poles, f })
    }

    /// Records the assignment on the diagram's arcs.
    pub fn attach(&self, d: Diagram) -> Diagram {
        let poles = self.f.iter().map(|&i| Some(self.poles[i])).collect();
        d.with_poles(poles)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentIssue {
    TooFewPoles,
    AntipodalPoles,
    AllPolesCollinear,
    ArcCountMismatch,
    BadPoleIndex,
    NotCollinear,
    ContainsVanishingPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentViolation {
    pub kind: AssignmentIssue,
    pub arcs: Vec<usize>,
    pub poles: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AssignmentReport {
    pub valid: bool,
    pub violations: Vec<AssignmentViolation>,
}

pub fn check_assignment(d: &Diagram, pa: &PoleAssignment) -> AssignmentReport {
    let tol = d.tol();
    let tau = tol.tau();
    let mut v = Vec::new();
    let mut push = |kind, arcs: Vec<usize>, poles: Vec<usize>| v.push(AssignmentViolation { kind, arcs, poles });
    if pa.k() < 3 {
        push(AssignmentIssue::TooFewPoles, vec![], (0..pa.k()).collect());
    }
    for i in 0..pa.k() {
        for j in i + 1..pa.k() {
            if pa.poles[i].approx_eq(&pa.poles[j].antipode(), tau) {
                push(AssignmentIssue::AntipodalPoles, vec![], vec![i, j]);
            }
        }
    }
    if pa.k() >= 2 && all_collinear(&pa.poles, tol) {
        push(AssignmentIssue::AllPolesCollinear, vec![], (0..pa.k()).collect());
    }
    if pa.f.len() != d.len() {
        push(AssignmentIssue::ArcCountMismatch, vec![], vec![]);
    } else {
        for (a, &pi) in pa.f.iter().enumerate() {
            if pi >= pa.k() {
                push(AssignmentIssue::BadPoleIndex, vec![a], vec![pi]);
                continue;
            }
            let p = pa.poles[pi];
            let arc = d.arc(a);
            if !arc.circle.contains(&p, tol) {
                push(AssignmentIssue::NotCollinear, vec![a], vec![pi]);
            } else if arc.contains(&p, tol) || arc.contains(&p.antipode(), tol) {
                push(AssignmentIssue::ContainsVanishingPoint, vec![a], vec![pi]);
            }
        }
    }
    AssignmentReport { valid: v.is_empty(), violations: v }
}

fn all_collinear(p: &[UnitVector], tol: Tolerance) -> bool {
    let Some(n) = (1..p.len()).find_map(|j| p[0].cross(&p[j]).normalize().ok()) else {
        return true;
    };
    p.iter().all(|q| n.dot(q).abs() <= tol.tau())
}

/// Sorted alignment vector and its degeneracy flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentVector {
    pub d: Vec<usize>,
    pub degenerate: bool,
}

/// Number of distinct great circles through pole `i` and some other pole.
fn circles_through(poles: &[UnitVector], i: usize, tol: Tolerance) -> usize {
    let mut reps: Vec<usize> = Vec::new();
    for j in 0..poles.len() {
        if j == i {
            continue;
        }
        let on_rep = reps.iter().any(|&r| {
            let n = poles[i].cross(&poles[r]);
            n.dot(&poles[j].vec()).abs() <= tol.tau() * n.norm().max(tol.tau())
        });
        if !on_rep {
            reps.push(j);
        }
    }
    reps.len()
}

pub fn alignment(poles: &[UnitVector], tol: Tolerance) -> AlignmentVector {
    let k = poles.len();
    let mut d: Vec<usize> = (0..k).map(|i| circles_through(poles, i, tol)).collect();
    d.sort_unstable();
    let degenerate = d.iter().any(|&x| x + 1 < k);
    AlignmentVector { d, degenerate }
}

/// A choice of pole or anti-pole for every pole; `signs[i]` is true for
/// the pole itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attractor {
    pub signs: Vec<bool>,
    pub points: Vec<UnitVector>,
}

pub fn attractor(poles: &[UnitVector], signs: Vec<bool>) -> Attractor {
    let points = poles.iter().zip(&signs).map(|(p, &s)| if s { *p } else { p.antipode() }).collect();
    Attractor { signs, points }
}

/// All `2^k` attractors; bit `i` of the index selects the pole itself.
pub fn attractors(poles: &[UnitVector]) -> Vec<Attractor> {
    let k = poles.len();
    (0..1usize << k)
        .map(|m| attractor(poles, (0..k).map(|i| m >> i & 1 == 1).collect()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttractorHull {
    pub attractor: Attractor,
    #[serde(skip)]
    pub hull: Option<HullResult>,
    pub vertices: Vec<UnitVector>,
    pub total: bool,
    pub void: bool,
}

impl AttractorHull {
    pub fn polygon(&self) -> Option<&crate::SphericalPolygon> {
        self.hull.as_ref().and_then(|h| h.polygon())
    }
}

pub fn attractor_hull(a: &Attractor, tol: Tolerance) -> AttractorHull {
    let hull = spherical_hull(&a.points, tol);
    let (total, void, vertices) = match &hull {
        HullResult::Total => (true, false, Vec::new()),
        HullResult::Polygon { polygon, .. } => {
            let strict = strict_vertices(polygon, tol);
            (false, strict == a.points.len(), polygon.vertices.clone())
        }
    };
    AttractorHull { attractor: a.clone(), hull: Some(hull), vertices, total, void }
}

/// Vertices where the boundary actually turns.
fn strict_vertices(poly: &crate::SphericalPolygon, tol: Tolerance) -> usize {
    let n = poly.len();
    (0..n)
        .filter(|&i| {
            let prev = poly.vertices[(i + n - 1) % n];
            let next = poly.vertices[(i + 1) % n];
            match prev.cross(&next).normalize() {
                Ok(nrm) => {
                    let c = crate::GreatCircle::from_normal(nrm);
                    crate::kernel::side_of(&c, &poly.vertices[i], tol) != Side::On
                }
                Err(_) => true,
            }
        })
        .count()
}
