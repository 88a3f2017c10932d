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

//! The diagram data model: arcs, the blocking map, validation and the
//! derived combinatorial structure.

mod io;
mod tiles;

pub use io::{fmt17, fmt_point, ArcRecord, BlockingRecord, DiagramFile, FormatError};
pub use tiles::Tile;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{intersect_arcs, side_of, Intersection, KernelError, Side};
use crate::{GeodesicArc, Tolerance, UnitVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Start,
    End,
}

impl Endpoint {
    pub const BOTH: [Endpoint; 2] = [Endpoint::Start, Endpoint::End];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Endpoint::Start => 0,
            Endpoint::End => 1,
        }
    }

    #[inline]
    pub fn other(self) -> Self {
        match self {
            Endpoint::Start => Endpoint::End,
            Endpoint::End => Endpoint::Start,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("diagram has no arcs")]
    Empty,
    #[error("endpoint {endpoint:?} of arc {arc} is not blocked")]
    UnblockedEndpoint { arc: usize, endpoint: Endpoint },
    #[error("arcs {a} and {b} intersect at an interior point")]
    InteriorIntersection { a: usize, b: usize, point: [f64; 3] },
    #[error("endpoint at {point:?} lies in the interior of several arcs")]
    AmbiguousBlocking { point: [f64; 3] },
    #[error("invalid diagram: {0:?}")]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnblockedEndpoint,
    AmbiguousBlocking,
    SelfBlocking,
    /// Both endpoints hit the same arc; every arc must hit two distinct arcs.
    HitsSameArcTwice,
    InteriorIntersection,
    /// Two arcs share more than one point.
    MultipleIntersection,
    /// A blocker does not contain the endpoint in its relative interior.
    BlockerMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub arcs: Vec<usize>,
    pub witness: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self { valid: violations.is_empty(), violations }
    }
}

/// An endpoint shared by two or more arcs, lying inside a host arc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapPoint {
    pub point: UnitVector,
    pub arcs: Vec<usize>,
    pub host: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneSidedness {
    pub one_sided: bool,
    /// For each arc, the side of its oriented circle from which each
    /// hitting arc arrives.
    pub per_arc: Vec<Vec<Side>>,
}

/// A spherical diagram. Immutable once assembled; transforms build new ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram {
    arcs: Vec<GeodesicArc>,
    blockers: Vec<[Option<usize>; 2]>,
    poles: Vec<Option<UnitVector>>,
    tol: Tolerance,
}

impl Diagram {
    /// Builds and validates a diagram. The blocking map is inferred from
    /// geometry; `hint` only disambiguates endpoints lying in several arcs.
    pub fn build(
        arcs: Vec<GeodesicArc>,
        hint: Option<&[(usize, Endpoint, usize)]>,
        tol: Tolerance,
    ) -> Result<Self, DiagramError> {
        if arcs.is_empty() {
            return Err(DiagramError::Empty);
        }
        let d = Self::assemble(arcs, hint, tol);
        let report = d.validate();
        if report.valid {
            return Ok(d);
        }
        let first = &report.violations[0];
        let point = first.witness.unwrap_or([f64::NAN; 3]);
        Err(match first.kind {
            ViolationKind::UnblockedEndpoint => {
                let arc = first.arcs[0];
                let endpoint = if d.blockers[arc][0].is_none() { Endpoint::Start } else { Endpoint::End };
                DiagramError::UnblockedEndpoint { arc, endpoint }
            }
            ViolationKind::InteriorIntersection => {
                DiagramError::InteriorIntersection { a: first.arcs[0], b: first.arcs[1], point }
            }
            ViolationKind::AmbiguousBlocking => DiagramError::AmbiguousBlocking { point },
            _ => DiagramError::Invalid(report.violations),
        })
    }

    /// Assembles a diagram without rejecting invalid geometry; unresolved
    /// endpoints are left without a blocker and reported by [`Self::validate`].
    pub fn assemble(arcs: Vec<GeodesicArc>, hint: Option<&[(usize, Endpoint, usize)]>, tol: Tolerance) -> Self {
        let mut blockers = vec![[None, None]; arcs.len()];
        for (i, a) in arcs.iter().enumerate() {
            for e in Endpoint::BOTH {
                let p = endpoint_of(a, e);
                let cands: Vec<usize> = (0..arcs.len())
                    .filter(|&j| j != i && arcs[j].interior_contains(&p, tol))
                    .collect();
                let hinted = hint.and_then(|h| {
                    h.iter().find(|(arc, ep, _)| *arc == i && *ep == e).map(|(_, _, b)| *b)
                });
                blockers[i][e.index()] = match (cands.len(), hinted) {
                    (1, _) => Some(cands[0]),
                    (_, Some(b)) if cands.contains(&b) => Some(b),
                    _ => None,
                };
            }
        }
        let n = arcs.len();
        Self { arcs, blockers, poles: vec![None; n], tol }
    }

    pub fn with_poles(mut self, poles: Vec<Option<UnitVector>>) -> Self {
        assert_eq!(poles.len(), self.arcs.len());
        self.poles = poles;
        self
    }

    #[inline]
    pub fn arcs(&self) -> &[GeodesicArc] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, i: usize) -> &GeodesicArc {
        &self.arcs[i]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    #[inline]
    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn poles(&self) -> &[Option<UnitVector>] {
        &self.poles
    }

    /// The arc blocking endpoint `e` of arc `i`. Panics on unresolved
    /// endpoints, which only exist in diagrams that failed validation.
    #[inline]
    pub fn blocker(&self, i: usize, e: Endpoint) -> usize {
        self.blockers[i][e.index()].expect("diagram endpoint has a blocker")
    }

    pub fn try_blocker(&self, i: usize, e: Endpoint) -> Option<usize> {
        self.blockers[i][e.index()]
    }

    pub fn endpoint(&self, i: usize, e: Endpoint) -> UnitVector {
        endpoint_of(&self.arcs[i], e)
    }

    /// The blocking map as `(arc, endpoint, blocker)` triples.
    pub fn blocking(&self) -> Vec<(usize, Endpoint, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for e in Endpoint::BOTH {
                if let Some(b) = self.blockers[i][e.index()] {
                    out.push((i, e, b));
                }
            }
        }
        out
    }

    /// Arcs hitting arc `j`, with the endpoint that lands on it.
    pub fn hitting(&self, j: usize) -> Vec<(usize, Endpoint)> {
        self.blocking().into_iter().filter(|&(_, _, b)| b == j).map(|(i, e, _)| (i, e)).collect()
    }

    /// Side of arc `host`'s oriented circle on which arc `i` lies.
    pub fn approach_side(&self, i: usize, host: usize) -> Side {
        side_of(&self.arcs[host].circle, &self.arcs[i].midpoint(), self.tol)
    }

    pub fn validate(&self) -> ValidationReport {
        let tol = self.tol;
        let mut v = Vec::new();
        let wit = |p: &UnitVector| Some(p.to_array());
        for (i, a) in self.arcs.iter().enumerate() {
            for e in Endpoint::BOTH {
                let p = endpoint_of(a, e);
                match self.blockers[i][e.index()] {
                    None => {
                        let n = (0..self.len())
                            .filter(|&j| j != i && self.arcs[j].interior_contains(&p, tol))
                            .count();
                        let kind = if n >= 2 { ViolationKind::AmbiguousBlocking } else { ViolationKind::UnblockedEndpoint };
                        v.push(Violation { kind, arcs: vec![i], witness: wit(&p) });
                    }
                    Some(b) if b == i => {
                        v.push(Violation { kind: ViolationKind::SelfBlocking, arcs: vec![i], witness: wit(&p) })
                    }
                    Some(b) if !self.arcs[b].interior_contains(&p, tol) => v.push(Violation {
                        kind: ViolationKind::BlockerMismatch,
                        arcs: vec![i, b],
                        witness: wit(&p),
                    }),
                    Some(_) => {}
                }
            }
            if let [Some(s), Some(t)] = self.blockers[i] {
                if s == t {
                    v.push(Violation { kind: ViolationKind::HitsSameArcTwice, arcs: vec![i, s], witness: None });
                }
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let (a, b) = (&self.arcs[i], &self.arcs[j]);
                match intersect_arcs(a, b, tol) {
                    Intersection::Empty => {}
                    Intersection::Point(p) => {
                        if !a.is_endpoint(&p, tol) && !b.is_endpoint(&p, tol) {
                            v.push(Violation {
                                kind: ViolationKind::InteriorIntersection,
                                arcs: vec![i, j],
                                witness: wit(&p),
                            });
                        }
                    }
                    Intersection::Overlap(o) => v.push(Violation {
                        kind: ViolationKind::MultipleIntersection,
                        arcs: vec![i, j],
                        witness: wit(&o.midpoint()),
                    }),
                }
            }
        }
        ValidationReport::from_violations(v)
    }

    pub fn is_one_sided(&self) -> OneSidedness {
        let mut per_arc = vec![Vec::new(); self.len()];
        for (i, _, b) in self.blocking() {
            per_arc[b].push(self.approach_side(i, b));
        }
        let one_sided = per_arc.iter().all(|s| s.windows(2).all(|w| w[0] == w[1]));
        OneSidedness { one_sided, per_arc }
    }

    /// Arcs hit from both sides.
    pub fn two_sided_arcs(&self) -> Vec<usize> {
        self.is_one_sided()
            .per_arc
            .iter()
            .enumerate()
            .filter(|(_, s)| s.windows(2).any(|w| w[0] != w[1]))
            .map(|(i, _)| i)
            .collect()
    }

    /// Incidence points: distinct arc endpoints, each with the endpoints
    /// landing there. Ids are stable for a given diagram.
    pub fn incidence_points(&self) -> Vec<(UnitVector, Vec<(usize, Endpoint)>)> {
        let mut pts: Vec<(UnitVector, Vec<(usize, Endpoint)>)> = Vec::new();
        for i in 0..self.len() {
            for e in Endpoint::BOTH {
                let p = self.endpoint(i, e);
                match pts.iter_mut().find(|(q, _)| q.approx_eq(&p, self.tol.tau())) {
                    Some((_, list)) => list.push((i, e)),
                    None => pts.push((p, vec![(i, e)])),
                }
            }
        }
        pts
    }

    pub fn overlaps(&self) -> Vec<OverlapPoint> {
        self.incidence_points()
            .into_iter()
            .filter(|(_, ends)| ends.len() >= 2)
            .map(|(point, ends)| {
                let (i, e) = ends[0];
                OverlapPoint {
                    point,
                    arcs: ends.iter().map(|x| x.0).collect(),
                    host: self.blocker(i, e),
                }
            })
            .collect()
    }

    /// Whether the union of the arcs (minus `removed`) is connected.
    pub fn connectivity(&self, removed: Option<usize>) -> bool {
        let n = self.len();
        let keep: Vec<usize> = (0..n).filter(|&i| Some(i) != removed).collect();
        if keep.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        for (ii, &i) in keep.iter().enumerate() {
            for &j in &keep[ii + 1..] {
                if intersect_arcs(&self.arcs[i], &self.arcs[j], self.tol) != Intersection::Empty {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let root = find(&mut parent, keep[0]);
        keep.iter().all(|&i| find(&mut parent, i) == root)
    }

    /// Smallest geodesic distance between distinct incidence points on a
    /// common arc, or between any two distinct incidence points.
    pub fn feature_separation(&self) -> f64 {
        let pts = self.incidence_points();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.min(pts[i].0.distance(&pts[j].0));
            }
        }
        best
    }
}

#[inline]
pub(crate) fn endpoint_of(a: &GeodesicArc, e: Endpoint) -> UnitVector {
    match e {
        Endpoint::Start => a.start,
        Endpoint::End => a.end,
    }
}
