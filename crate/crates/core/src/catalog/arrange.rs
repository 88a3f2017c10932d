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

//! Diagrams realized on a fixed arrangement of great circles.
//!
//! Each circle passes through its pole. An arc on circle `i` lies in one
//! of the two open semicircles between the pole and its antipode and runs
//! between two arrangement vertices there. Validity of a choice of arcs
//! reduces to pairwise conditions at shared vertices, so all diagrams on
//! an arrangement are enumerated by backtracking with forward checking.

use crate::diagram::Diagram;
use crate::orientation::PoleAssignment;
use crate::{GeodesicArc, Tolerance, UnitVector};

struct Circle {
    pole: UnitVector,
    normal: UnitVector,
    perp: UnitVector,
    /// Vertices in each semicircle, sorted by angle from the pole:
    /// `(angle, other circle, point)`.
    verts: [Vec<(f64, usize, UnitVector)>; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Choice {
    half: u8,
    lo: u8,
    hi: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum At {
    Interior,
    End,
    Out,
}

pub(crate) struct Arrangement {
    circles: Vec<Circle>,
    poles: Vec<UnitVector>,
    f: Vec<usize>,
    /// `slot[i][h][j]`: index of circle `j`'s vertex in semicircle `h` of `i`.
    slot: Vec<[Vec<Option<u8>>; 2]>,
}

impl Arrangement {
    /// Circle `i` is the great circle through `poles[f[i]]` with the given normal.
    pub(crate) fn new(poles: &[UnitVector], f: &[usize], normals: &[UnitVector]) -> Self {
        let n = f.len();
        let tau = std::f64::consts::TAU;
        let mut circles: Vec<Circle> = (0..n)
            .map(|i| {
                let pole = poles[f[i]];
                let normal = normals[i];
                let perp = normal.cross(&pole).normalize().expect("pole on circle");
                Circle { pole, normal, perp, verts: [Vec::new(), Vec::new()] }
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i == j || f[i] == f[j] {
                    continue;
                }
                let Ok(q) = circles[i].normal.cross(&circles[j].normal).normalize() else { continue };
                let c = &circles[i];
                let th = q.dot(&c.perp).atan2(q.dot(&c.pole)).rem_euclid(tau);
                let (th, q) = if th < std::f64::consts::PI { (th, q) } else { (th - std::f64::consts::PI, q.antipode()) };
                circles[i].verts[0].push((th, j, q));
                circles[i].verts[1].push((th + std::f64::consts::PI, j, q.antipode()));
            }
            for h in 0..2 {
                circles[i].verts[h].sort_by(|a, b| a.0.total_cmp(&b.0));
            }
        }
        let slot = (0..n)
            .map(|i| {
                let mk = |h: usize| {
                    let mut s = vec![None; n];
                    for (k, v) in circles[i].verts[h].iter().enumerate() {
                        s[v.1] = Some(k as u8);
                    }
                    s
                };
                [mk(0), mk(1)]
            })
            .collect();
        Self { circles, poles: poles.to_vec(), f: f.to_vec(), slot }
    }

    fn domain(&self, i: usize) -> Vec<Choice> {
        let mut out = Vec::new();
        for h in 0..2u8 {
            let m = self.circles[i].verts[h as usize].len() as u8;
            for lo in 0..m {
                for hi in lo + 1..m {
                    out.push(Choice { half: h, lo, hi });
                }
            }
        }
        out
    }

    fn status(&self, i: usize, c: Choice, j: usize) -> (At, Option<&UnitVector>) {
        let Some(k) = self.slot[i][c.half as usize][j] else { return (At::Out, None) };
        let p = &self.circles[i].verts[c.half as usize][k as usize].2;
        let at = if k == c.lo || k == c.hi {
            At::End
        } else if k > c.lo && k < c.hi {
            At::Interior
        } else {
            At::Out
        };
        (at, Some(p))
    }

    fn consistent(&self, i: usize, ci: Choice, j: usize, cj: Choice) -> bool {
        let (si, pi) = self.status(i, ci, j);
        let (sj, pj) = self.status(j, cj, i);
        let same = match (pi, pj) {
            (Some(a), Some(b)) => a.dot(b) > 0.0,
            _ => false,
        };
        if !same {
            return si != At::End && sj != At::End;
        }
        !matches!(
            (si, sj),
            (At::Interior, At::Interior) | (At::End, At::End) | (At::End, At::Out) | (At::Out, At::End)
        )
    }

    /// Calls `visit` on every diagram realizable on the arrangement until
    /// it returns true. Returns whether the search was stopped.
    pub(crate) fn search(&self, tol: Tolerance, visit: &mut dyn FnMut(Diagram, PoleAssignment) -> bool) -> bool {
        let n = self.circles.len();
        let mut domains: Vec<Vec<Choice>> = (0..n).map(|i| self.domain(i)).collect();
        let ok = self.propagate(&mut domains);
        ok && self.rec(&domains, tol, visit)
    }

    /// Removes values without support in some other domain until stable.
    /// Returns false if a domain empties.
    fn propagate(&self, domains: &mut [Vec<Choice>]) -> bool {
        let n = domains.len();
        let mut dirty = vec![true; n];
        while let Some(j) = dirty.iter().position(|&x| x) {
            dirty[j] = false;
            for i in 0..n {
                if i == j || self.f[i] == self.f[j] {
                    continue;
                }
                let before = domains[i].len();
                let dj = std::mem::take(&mut domains[j]);
                domains[i].retain(|&ci| dj.iter().any(|&cj| self.consistent(i, ci, j, cj)));
                domains[j] = dj;
                if domains[i].is_empty() {
                    return false;
                }
                if domains[i].len() != before {
                    dirty[i] = true;
                }
            }
        }
        true
    }

    fn rec(
        &self,
        domains: &[Vec<Choice>],
        tol: Tolerance,
        visit: &mut dyn FnMut(Diagram, PoleAssignment) -> bool,
    ) -> bool {
        let next = (0..domains.len()).filter(|&i| domains[i].len() > 1).min_by_key(|&i| domains[i].len());
        let Some(i) = next else {
            let assigned: Vec<Option<Choice>> = domains.iter().map(|d| Some(d[0])).collect();
            return match self.realize(&assigned, tol) {
                Some((d, pa)) => visit(d, pa),
                None => false,
            };
        };
        for &c in &domains[i] {
            let mut sub = domains.to_vec();
            sub[i] = vec![c];
            if self.propagate(&mut sub) && self.rec(&sub, tol, visit) {
                return true;
            }
        }
        false
    }

    fn realize(&self, assigned: &[Option<Choice>], tol: Tolerance) -> Option<(Diagram, PoleAssignment)> {
        let arcs: Vec<GeodesicArc> = assigned
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = c.expect("complete assignment");
                let v = &self.circles[i].verts[c.half as usize];
                GeodesicArc::new(v[c.lo as usize].2, v[c.hi as usize].2, tol).ok()
            })
            .collect::<Option<_>>()?;
        let pa = PoleAssignment::new(self.poles.clone(), self.f.clone());
        let d = Diagram::build(arcs, None, tol).ok()?;
        Some((pa.attach(d), pa))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::twist::{cube_edges, twisted_polyhedron, CUBE};

    #[test]
    fn twisted_cube_circles_carry_the_twisted_cube() {
        let tol = Tolerance::default();
        let (d, pa) = twisted_polyhedron(&CUBE, &cube_edges(), 0.1, 328, tol).unwrap();
        let normals: Vec<_> = d.arcs().iter().map(|a| a.circle.normal).collect();
        let arr = Arrangement::new(&pa.poles, &pa.f, &normals);
        let mut same = false;
        arr.search(tol, &mut |e, _| {
            same = e.arcs().iter().zip(d.arcs()).all(|(x, y)| {
                x.start.approx_eq(&y.start, 1e-12) && x.end.approx_eq(&y.end, 1e-12)
                    || x.start.approx_eq(&y.end, 1e-12) && x.end.approx_eq(&y.start, 1e-12)
            });
            same
        });
        assert!(same);
    }
}
