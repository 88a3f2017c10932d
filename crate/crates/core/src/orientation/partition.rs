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

//! Attractor partitions and the arc/swirl bounds they imply.

use serde::{Deserialize, Serialize};

use super::{alignment, attractor_hull, attractors, hull_report, AttractorHull, PoleAssignment};
use crate::diagram::Diagram;
use crate::kernel::{polygon_contains, Location};
use crate::swirls::Swirl;
use crate::Tolerance;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Expected partition size for the alignments that admit one.
fn partition_size(d: &[usize]) -> Option<usize> {
    match d {
        [2, 2, 2] => Some(8),
        [3, 3, 3, 3] => Some(6),
        [2, 3, 3, 3, 3] => Some(5),
        _ => None,
    }
}

fn overlap_area(a: &AttractorHull, b: &AttractorHull, tol: Tolerance) -> f64 {
    match (a.polygon(), b.polygon()) {
        (Some(p), Some(q)) => {
            let c = p.intersect_convex(q, tol);
            if c.len() < 3 {
                0.0
            } else {
                c.area()
            }
        }
        _ => f64::INFINITY,
    }
}

/// Internally disjoint non-total attractor hulls covering the sphere, for
/// the supported alignments; `None` otherwise.
pub fn attractor_partition(pa: &PoleAssignment, tol: Tolerance) -> Option<Vec<AttractorHull>> {
    let m = partition_size(&alignment(&pa.poles, tol).d)?;
    let hulls: Vec<AttractorHull> = attractors(&pa.poles)
        .iter()
        .map(|a| attractor_hull(a, tol))
        .filter(|h| !h.total)
        .collect();
    let areas: Vec<f64> = hulls.iter().map(|h| h.polygon().map_or(0.0, |p| p.area())).collect();

    fn dfs(
        i: usize,
        m: usize,
        hulls: &[AttractorHull],
        areas: &[f64],
        tol: Tolerance,
        chosen: &mut Vec<usize>,
        area: f64,
    ) -> bool {
        if chosen.len() == m {
            return (area - FOUR_PI).abs() < 1e-6;
        }
        if i == hulls.len() || area > FOUR_PI + 1e-6 {
            return false;
        }
        let disjoint = chosen.iter().all(|&j| overlap_area(&hulls[i], &hulls[j], tol) < 1e-9);
        if disjoint {
            chosen.push(i);
            if dfs(i + 1, m, hulls, areas, tol, chosen, area + areas[i]) {
                return true;
            }
            chosen.pop();
        }
        dfs(i + 1, m, hulls, areas, tol, chosen, area)
    }

    let mut chosen = Vec::new();
    if dfs(0, m, &hulls, &areas, tol, &mut chosen, 0.0) {
        Some(chosen.into_iter().map(|i| hulls[i].clone()).collect())
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionBounds {
    pub m: usize,
    /// At least `m` swirls with eyes inside distinct hulls.
    pub swirl_count_ok: bool,
    pub thrust_arc_count: usize,
    pub thrust_bound_ok: bool,
    /// Largest number of hulls whose boundary a single arc thrusts.
    pub max_hulls_per_arc: usize,
}

impl PartitionBounds {
    pub fn ok(&self) -> bool {
        self.swirl_count_ok && self.thrust_bound_ok && self.max_hulls_per_arc <= 2
    }
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
            owner[v] = Some(u);
            return true;
        }
    }
    false
}

pub fn partition_bounds(
    d: &Diagram,
    pa: &PoleAssignment,
    partition: &[AttractorHull],
    swirls: &[Swirl],
) -> PartitionBounds {
    let tol = d.tol();
    let m = partition.len();
    // hull -> swirls whose eye lies in its interior
    let adj: Vec<Vec<usize>> = partition
        .iter()
        .map(|h| {
            let Some(poly) = h.polygon() else { return Vec::new() };
            (0..swirls.len())
                .filter(|&s| {
                    swirls[s]
                        .eye
                        .vertices
                        .iter()
                        .all(|v| matches!(polygon_contains(poly, v, tol), Ok(Location::Interior)))
                })
                .collect()
        })
        .collect();
    let mut owner = vec![None; swirls.len()];
    let matched = (0..m).filter(|&u| augment(u, &adj, &mut vec![false; swirls.len()], &mut owner)).count();

    let mut per_arc = vec![0usize; d.len()];
    for h in partition {
        let rep = match hull_report(d, pa, h, swirls) {
            Ok(r) => r,
            Err(e) => *e.0,
        };
        let mut arcs: Vec<usize> = rep.thrust_points.iter().map(|t| t.arc).collect();
        arcs.sort_unstable();
        arcs.dedup();
        for a in arcs {
            per_arc[a] += 1;
        }
    }
    let thrust_arc_count = per_arc.iter().filter(|&&c| c > 0).count();
    PartitionBounds {
        m,
        swirl_count_ok: matched == m,
        thrust_arc_count,
        thrust_bound_ok: thrust_arc_count >= (3 * m).div_ceil(2),
        max_hulls_per_arc: per_arc.into_iter().max().unwrap_or(0),
    }
}
