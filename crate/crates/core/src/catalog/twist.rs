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

//! Pinwheel-twisted polyhedra: radially projected edges whose circles are
//! rotated about their poles so that each degree-3 vertex opens into a
//! small swirl.

use crate::diagram::Diagram;
use crate::orientation::PoleAssignment;
use crate::{GeodesicArc, Tolerance, UnitVector, Vec3};

/// Representative of `{p, -p}` with the first significant coordinate positive.
pub(crate) fn canonical_pole(p: UnitVector) -> UnitVector {
    for c in p.to_array() {
        if c.abs() > 1e-12 {
            return if c > 0.0 { p } else { p.antipode() };
        }
    }
    p
}

/// Twists every edge circle of a polyhedron with degree-3 vertices by
/// `delta` about its pole (the edge direction); bit `i` of `mask` flips
/// the sense of edge `i`. Each arc ends at the vertex of its pinwheel
/// triangle farthest from its other end.
pub(crate) fn twisted_polyhedron(
    verts: &[[f64; 3]],
    edges: &[(usize, usize)],
    delta: f64,
    mask: u64,
    tol: Tolerance,
) -> Option<(Diagram, PoleAssignment)> {
    let v: Vec<UnitVector> = verts.iter().map(|p| UnitVector::new(p[0], p[1], p[2]).expect("nonzero")).collect();
    let mut poles: Vec<UnitVector> = Vec::new();
    let mut f = Vec::new();
    let mut normals = Vec::new();
    for (k, &(i, j)) in edges.iter().enumerate() {
        let dir = Vec3::new(verts[i][0] - verts[j][0], verts[i][1] - verts[j][1], verts[i][2] - verts[j][2]);
        let p = canonical_pole(dir.normalize().ok()?);
        let idx = match poles.iter().position(|q| q.approx_eq(&p, 1e-12)) {
            Some(x) => x,
            None => {
                poles.push(p);
                poles.len() - 1
            }
        };
        f.push(idx);
        let n0 = v[i].cross(&v[j]).normalize().ok()?;
        let s = if mask >> k & 1 == 1 { -delta } else { delta };
        normals.push(n0.rotate_about(&p, s));
    }
    let corner = |e: usize, at: usize, other: usize| -> Option<UnitVector> {
        // Candidate endpoints: where edge e's circle meets the other circles at `at`.
        let mut best: Option<(f64, UnitVector)> = None;
        for (g, &(i, j)) in edges.iter().enumerate() {
            if g == e || (i != at && j != at) {
                continue;
            }
            let q = normals[e].cross(&normals[g]).normalize().ok()?;
            let q = if q.dot(&v[at]) > 0.0 { q } else { q.antipode() };
            let dist = q.distance(&v[other]);
            if best.is_none_or(|(b, _)| dist > b) {
                best = Some((dist, q));
            }
        }
        best.map(|b| b.1)
    };
    let mut arcs = Vec::new();
    for (e, &(i, j)) in edges.iter().enumerate() {
        let a = corner(e, i, j)?;
        let b = corner(e, j, i)?;
        arcs.push(GeodesicArc::new(a, b, tol).ok()?);
    }
    let pa = PoleAssignment::new(poles, f);
    let d = Diagram::build(arcs, None, tol).ok()?;
    Some((pa.attach(d), pa))
}

pub(crate) const CUBE: [[f64; 3]; 8] = [
    [1., 1., 1.],
    [1., 1., -1.],
    [1., -1., 1.],
    [1., -1., -1.],
    [-1., 1., 1.],
    [-1., 1., -1.],
    [-1., -1., 1.],
    [-1., -1., -1.],
];

pub(crate) fn cube_edges() -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            let diff = (0..3).filter(|&c| CUBE[i][c] != CUBE[j][c]).count();
            if diff == 1 {
                e.push((i, j));
            }
        }
    }
    e
}

pub(crate) const TETRA: [[f64; 3]; 4] = [[1., 1., 1.], [1., -1., -1.], [-1., 1., -1.], [-1., -1., 1.]];

pub(crate) fn tetra_edges() -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            e.push((i, j));
        }
    }
    e
}
