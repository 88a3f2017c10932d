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

//! Faces of the planar subdivision induced by a diagram.

use serde::{Deserialize, Serialize};

use super::Diagram;
use crate::{SphericalPolygon, UnitVector};

/// A connected component of the sphere minus the arcs. The boundary is
/// listed with the tile on its left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tile {
    pub boundary: SphericalPolygon,
    /// Incidence point ids along the boundary, parallel to `boundary`.
    pub vertices: Vec<usize>,
    /// Arcs contributing a boundary edge, in boundary order without repeats.
    pub arcs: Vec<usize>,
    pub area: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct HalfEdge {
    pub from: usize,
    pub to: usize,
    pub arc: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Subdivision {
    pub points: Vec<UnitVector>,
    pub half_edges: Vec<HalfEdge>,
    /// Outgoing half-edges at each vertex, counterclockwise seen from outside.
    pub around: Vec<Vec<usize>>,
}

impl Subdivision {
    pub fn new(d: &Diagram) -> Self {
        let inc = d.incidence_points();
        let points: Vec<UnitVector> = inc.iter().map(|(p, _)| *p).collect();
        let mut vid = vec![[0usize; 2]; d.len()];
        for (k, (_, ends)) in inc.iter().enumerate() {
            for &(i, e) in ends {
                vid[i][e.index()] = k;
            }
        }
        let mut half_edges = Vec::new();
        for a in 0..d.len() {
            let arc = d.arc(a);
            let mut stops: Vec<(f64, usize)> =
                vec![(0.0, vid[a][0]), (arc.length(), vid[a][1])];
            for (h, e) in d.hitting(a) {
                stops.push((arc.param_of(&d.endpoint(h, e)), vid[h][e.index()]));
            }
            stops.sort_by(|x, y| x.0.total_cmp(&y.0));
            stops.dedup_by_key(|s| s.1);
            for w in stops.windows(2) {
                half_edges.push(HalfEdge { from: w[0].1, to: w[1].1, arc: a });
                half_edges.push(HalfEdge { from: w[1].1, to: w[0].1, arc: a });
            }
        }
        let mut around: Vec<Vec<(f64, usize)>> = vec![Vec::new(); points.len()];
        for (h, he) in half_edges.iter().enumerate() {
            let v = points[he.from];
            let w = points[he.to];
            let t = w.vec() - v.vec() * v.dot(&w);
            let e1 = v.any_orthogonal();
            let e2 = v.cross(&e1);
            let ang = t.dot(&e2).atan2(t.dot(&e1.vec()));
            around[he.from].push((ang, h));
        }
        let around = around
            .into_iter()
            .map(|mut l| {
                l.sort_by(|x, y| x.0.total_cmp(&y.0));
                l.into_iter().map(|x| x.1).collect()
            })
            .collect();
        Self { points, half_edges, around }
    }

    /// Twin of half-edge `h`; half-edges are created in pairs.
    #[inline]
    pub fn twin(&self, h: usize) -> usize {
        h ^ 1
    }

    /// Next half-edge around the face on the left of `h`.
    pub fn next(&self, h: usize) -> usize {
        let t = self.twin(h);
        let at = &self.around[self.half_edges[h].to];
        let k = at.iter().position(|&x| x == t).expect("twin is outgoing at target");
        at[(k + at.len() - 1) % at.len()]
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.half_edges.len()];
        let mut faces = Vec::new();
        for s in 0..self.half_edges.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = s;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = self.next(h);
            }
            faces.push(cyc);
        }
        faces
    }
}

impl Diagram {
    /// Tiles of the diagram. Requires a valid diagram.
    pub fn tiles(&self) -> Vec<Tile> {
        let sub = Subdivision::new(self);
        sub.faces()
            .into_iter()
            .map(|cyc| {
                let vertices: Vec<usize> = cyc.iter().map(|&h| sub.half_edges[h].from).collect();
                let boundary = SphericalPolygon::new(vertices.iter().map(|&v| sub.points[v]).collect());
                let mut arcs: Vec<usize> = Vec::new();
                for &h in &cyc {
                    let a = sub.half_edges[h].arc;
                    if !arcs.contains(&a) {
                        arcs.push(a);
                    }
                }
                let area = boundary.area();
                Tile { boundary, vertices, arcs, area }
            })
            .collect()
    }

    /// Incidence point id of each arc endpoint.
    pub fn endpoint_ids(&self) -> Vec<[usize; 2]> {
        let mut vid = vec![[0usize; 2]; self.len()];
        for (k, (_, ends)) in self.incidence_points().iter().enumerate() {
            for &(i, e) in ends {
                vid[i][e.index()] = k;
            }
        }
        vid
    }
}

