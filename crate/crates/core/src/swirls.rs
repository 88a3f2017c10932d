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

//! Swirl enumeration, eyes, the swirl multigraph and pairwise relations.

use std::collections::{HashSet, VecDeque};

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, Endpoint};
use crate::kernel::is_spherically_convex;
use crate::{SphericalPolygon, UnitVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    #[serde(rename = "CW")]
    Clockwise,
    #[serde(rename = "CCW")]
    Counterclockwise,
}

impl Chirality {
    pub fn opposite(self) -> Self {
        match self {
            Chirality::Clockwise => Chirality::Counterclockwise,
            Chirality::Counterclockwise => Chirality::Clockwise,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwirlError {
    #[error("neither side of the cycle is spherically convex")]
    NeitherSideConvex,
    #[error("consecutive arcs {0} and {1} do not hit")]
    NotACycle(usize, usize),
}

/// A cycle of arcs, each hitting the next, all turning the same way.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Swirl {
    /// Arc indices in hitting order, rotated to start at the smallest index.
    pub cycle: Vec<usize>,
    pub chirality: Chirality,
    /// Convex eye, interior on the left of its boundary.
    pub eye: SphericalPolygon,
    pub degree: usize,
}

impl Swirl {
    pub fn contains_arc(&self, a: usize) -> bool {
        self.cycle.contains(&a)
    }
}

/// Direction of travel along an arc: toward its end or toward its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Heading {
    Forward,
    Backward,
}

impl Heading {
    #[inline]
    pub fn target(self) -> Endpoint {
        match self {
            Heading::Forward => Endpoint::End,
            Heading::Backward => Endpoint::Start,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Heading::Forward => 0,
            Heading::Backward => 1,
        }
    }
}

/// Unit travel direction along arc `a` at point `x` with the given heading.
pub fn travel_direction(d: &Diagram, a: usize, x: &UnitVector, h: Heading) -> UnitVector {
    let t = d.arc(a).tangent_at(x);
    match h {
        Heading::Forward => t,
        Heading::Backward => t.antipode(),
    }
}

/// Heading on `b` after arriving at `x` travelling along `u` and turning
/// the given way.
pub fn turn_heading(d: &Diagram, b: usize, x: &UnitVector, u: &UnitVector, turn: Chirality) -> Heading {
    let right = u.cross(x);
    let tb = d.arc(b).tangent_at(x);
    let goes_right = tb.vec().dot(&right) > 0.0;
    match (turn, goes_right) {
        (Chirality::Clockwise, true) | (Chirality::Counterclockwise, false) => Heading::Forward,
        _ => Heading::Backward,
    }
}

/// Successor of state `(a, h)` under a uniform turn: travel to the end of
/// `a`, turn onto its blocker.
pub fn successor(d: &Diagram, a: usize, h: Heading, turn: Chirality) -> (usize, Heading) {
    let e = h.target();
    let x = d.endpoint(a, e);
    let u = travel_direction(d, a, &x, h);
    let b = d.blocker(a, e);
    (b, turn_heading(d, b, &x, &u, turn))
}

/// The point where `a` hits `b`, if it does.
pub fn hit_point(d: &Diagram, a: usize, b: usize) -> Option<UnitVector> {
    Endpoint::BOTH.into_iter().find(|&e| d.try_blocker(a, e) == Some(b)).map(|e| d.endpoint(a, e))
}

/// The convex region bounded by a cycle of arcs.
pub fn eye_of(d: &Diagram, cycle: &[usize]) -> Result<SphericalPolygon, SwirlError> {
    let n = cycle.len();
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        pts.push(hit_point(d, a, b).ok_or(SwirlError::NotACycle(a, b))?);
    }
    let fwd = SphericalPolygon::new(pts);
    if is_spherically_convex(&fwd, d.tol()) {
        return Ok(fwd);
    }
    let rev = fwd.complement();
    if is_spherically_convex(&rev, d.tol()) {
        return Ok(rev);
    }
    Err(SwirlError::NeitherSideConvex)
}

fn canonical(cycle: &[usize]) -> Vec<usize> {
    let k = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle[k..].iter().chain(&cycle[..k]).copied().collect()
}

/// Outcome of enumeration, including successor cycles that failed the
/// swirl checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    pub swirls: Vec<Swirl>,
    pub rejected: Vec<Vec<usize>>,
}

pub fn enumerate(d: &Diagram) -> Vec<Swirl> {
    enumerate_report(d).swirls
}

pub fn enumerate_report(d: &Diagram) -> Enumeration {
    let mut out = Enumeration::default();
    for turn in [Chirality::Clockwise, Chirality::Counterclockwise] {
        let n = d.len();
        let id = |a: usize, h: Heading| 2 * a + h.index();
        let heading = |s: usize| if s.is_multiple_of(2) { Heading::Forward } else { Heading::Backward };
        let next: Vec<usize> = (0..2 * n)
            .map(|s| {
                let (b, h) = successor(d, s / 2, heading(s), turn);
                id(b, h)
            })
            .collect();
        // 0 unvisited, 1 on current path, 2 done
        let mut mark = vec![0u8; 2 * n];
        for s0 in 0..2 * n {
            let mut path = Vec::new();
            let mut s = s0;
            while mark[s] == 0 {
                mark[s] = 1;
                path.push(s);
                s = next[s];
            }
            if mark[s] == 1 {
                let k = path.iter().position(|&x| x == s).expect("on path");
                let arcs: Vec<usize> = path[k..].iter().map(|&x| x / 2).collect();
                let distinct: HashSet<usize> = arcs.iter().copied().collect();
                let ok = distinct.len() == arcs.len() && arcs.len() >= 3;
                let eye = if ok { eye_of(d, &arcs).ok() } else { None };
                match eye {
                    Some(eye) => {
                        let degree = arcs.len();
                        out.swirls.push(Swirl { cycle: canonical(&arcs), chirality: turn, eye, degree });
                    }
                    None => out.rejected.push(canonical(&arcs)),
                }
            }
            for x in path {
                mark[x] = 2;
            }
        }
    }
    out.swirls.sort_by(|a, b| (a.chirality as u8, &a.cycle).cmp(&(b.chirality as u8, &b.cycle)));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwirlEdge {
    pub a: usize,
    pub b: usize,
    pub arc: usize,
}

/// Multigraph on swirls with one edge per shared arc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwirlGraph {
    pub nodes: usize,
    pub edges: Vec<SwirlEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProperties {
    pub simple: bool,
    pub planar: bool,
    pub bipartite: bool,
}

pub fn swirl_graph(swirls: &[Swirl]) -> SwirlGraph {
    let mut edges = Vec::new();
    for i in 0..swirls.len() {
        for j in i + 1..swirls.len() {
            for &arc in &swirls[i].cycle {
                if swirls[j].contains_arc(arc) {
                    edges.push(SwirlEdge { a: i, b: j, arc });
                }
            }
        }
    }
    SwirlGraph { nodes: swirls.len(), edges }
}

pub fn graph_properties(g: &SwirlGraph) -> GraphProperties {
    let mut pairs = HashSet::new();
    let mut simple = true;
    for e in &g.edges {
        let key = (e.a.min(e.b), e.a.max(e.b));
        if e.a == e.b || !pairs.insert(key) {
            simple = false;
        }
    }
    let mut ug: UnGraph<(), ()> = UnGraph::default();
    let nodes: Vec<_> = (0..g.nodes).map(|_| ug.add_node(())).collect();
    for &(a, b) in &pairs {
        if a != b {
            ug.add_edge(nodes[a], nodes[b], ());
        }
    }
    let planar = is_planar(&ug);

    let mut adj = vec![Vec::new(); g.nodes];
    for e in &g.edges {
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    let mut color = vec![None; g.nodes];
    let mut bipartite = true;
    'outer: for s in 0..g.nodes {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let cu = color[u].expect("colored");
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        q.push_back(v);
                    }
                    Some(cv) if cv == cu => {
                        bipartite = false;
                        break 'outer;
                    }
                    Some(_) => {}
                }
            }
        }
    }
    GraphProperties { simple, planar, bipartite }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwirlRelation {
    pub pair: (usize, usize),
    pub contiguous: bool,
    pub concordant: bool,
    pub shared_arcs: Vec<usize>,
    pub antipodal_eye_interiors: bool,
}

/// Area below which a clipped region counts as empty.
const EMPTY_AREA: f64 = 1e-12;

/// Whether some interior point of `e1` is antipodal to an interior point of `e2`.
pub fn antipodal_interiors(d: &Diagram, e1: &SphericalPolygon, e2: &SphericalPolygon) -> bool {
    let neg = SphericalPolygon::new(e2.vertices.iter().rev().map(|v| v.antipode()).collect());
    let clipped = e1.intersect_convex(&neg, d.tol());
    clipped.len() >= 3 && clipped.area() > EMPTY_AREA
}

pub fn relation(d: &Diagram, swirls: &[Swirl], i: usize, j: usize) -> SwirlRelation {
    let (s1, s2) = (&swirls[i], &swirls[j]);
    let shared_arcs: Vec<usize> = s1.cycle.iter().copied().filter(|a| s2.contains_arc(*a)).collect();
    let tau = d.tol().tau();
    let contiguous = s1
        .eye
        .vertices
        .iter()
        .any(|p| s2.eye.vertices.iter().any(|q| p.approx_eq(q, tau)));
    SwirlRelation {
        pair: (i, j),
        contiguous,
        concordant: s1.chirality == s2.chirality,
        shared_arcs,
        antipodal_eye_interiors: antipodal_interiors(d, &s1.eye, &s2.eye),
    }
}
