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

//! Minimum pole assignments by exact set cover.

use super::PoleAssignment;
use crate::diagram::Diagram;
use crate::UnitVector;

/// Representative of `{p, -p}`: the first non-negligible coordinate is positive.
fn canonical(p: UnitVector) -> UnitVector {
    for c in p.to_array() {
        if c.abs() > 1e-12 {
            return if c > 0.0 { p } else { p.antipode() };
        }
    }
    p
}

/// Candidate poles with the set of arcs each one can serve.
fn candidates(d: &Diagram) -> Vec<(UnitVector, Vec<usize>)> {
    let tol = d.tol();
    let tau = tol.tau();
    let mut pts: Vec<UnitVector> = Vec::new();
    let mut add = |p: UnitVector| {
        let p = canonical(p);
        if !pts.iter().any(|q| q.approx_eq(&p, 1e3 * tau)) {
            pts.push(p);
        }
    };
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (a, b) = (d.arc(i), d.arc(j));
            if let Ok(q) = a.circle.normal.cross(&b.circle.normal).normalize() {
                if !a.circle.coincides(&b.circle, tol) {
                    add(q);
                }
            }
        }
    }
    // A private pole for each arc: the point a quarter turn past its midpoint.
    for i in 0..d.len() {
        let a = d.arc(i);
        if let Ok(q) = a.circle.normal.cross(&a.midpoint()).normalize() {
            add(q);
        }
    }
    pts.into_iter()
        .map(|p| {
            let serves = (0..d.len())
                .filter(|&a| {
                    let arc = d.arc(a);
                    arc.circle.normal.dot(&p).abs() <= 1e3 * tau
                        && !arc.contains(&p, tol)
                        && !arc.contains(&p.antipode(), tol)
                })
                .collect();
            (p, serves)
        })
        .collect()
}

struct Search<'a> {
    sets: &'a [(UnitVector, Vec<usize>)],
    by_arc: Vec<Vec<usize>>,
    best: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn go(&mut self, covered: &mut Vec<u32>, chosen: &mut Vec<usize>) {
        if chosen.len() > self.best {
            return;
        }
        let Some(arc) = (0..covered.len())
            .filter(|&a| covered[a] == 0)
            .min_by_key(|&a| self.by_arc[a].len())
        else {
            if chosen.len() < self.best {
                self.best = chosen.len();
                self.found.clear();
            }
            let mut s = chosen.clone();
            s.sort_unstable();
            if !self.found.contains(&s) {
                self.found.push(s);
            }
            return;
        };
        if chosen.len() == self.best {
            return;
        }
        for &c in &self.by_arc[arc].clone() {
            for &a in &self.sets[c].1 {
                covered[a] += 1;
            }
            chosen.push(c);
            self.go(covered, chosen);
            chosen.pop();
            for &a in &self.sets[c].1 {
                covered[a] -= 1;
            }
        }
    }
}

/// All minimum-size pole assignments with at most `k_max` poles. Each arc
/// is assigned the lowest-indexed chosen pole that serves it.
pub fn infer_assignments(d: &Diagram, k_max: usize) -> Vec<PoleAssignment> {
    let sets = candidates(d);
    let mut by_arc = vec![Vec::new(); d.len()];
    for (ci, (_, arcs)) in sets.iter().enumerate() {
        for &a in arcs {
            by_arc[a].push(ci);
        }
    }
    if by_arc.iter().any(|v| v.is_empty()) {
        return Vec::new();
    }
    let mut s = Search { sets: &sets, by_arc, best: k_max, found: Vec::new() };
    s.go(&mut vec![0; d.len()], &mut Vec::new());
    s.found
        .into_iter()
        .map(|cover| {
            let poles: Vec<UnitVector> = cover.iter().map(|&c| sets[c].0).collect();
            let f = (0..d.len())
                .map(|a| cover.iter().position(|&c| sets[c].1.contains(&a)).expect("cover serves every arc"))
                .collect();
            PoleAssignment { poles, f }
        })
        .collect()
}
