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


//! Summary of everything the library can say about one diagram.

use serde::{Deserialize, Serialize};
use spherical_diagrams::diagram::Diagram;
use spherical_diagrams::orientation::{
    alignment, attractor_hull, attractors, check_assignment, hull_report, infer_assignments, PoleAssignment,
};
use spherical_diagrams::swirls::{enumerate, graph_properties, swirl_graph, Chirality, GraphProperties};

/// Largest pole count searched when the file carries no poles.
pub const DEFAULT_KMAX: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwirlSummary {
    pub chirality: Chirality,
    pub degree: usize,
    pub arcs: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleSource {
    File,
    Inferred,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentSummary {
    pub source: PoleSource,
    pub k: usize,
    pub f: Vec<usize>,
    pub alignment: Vec<usize>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullSummary {
    /// One character per pole: `+` for the pole, `-` for its antipode.
    pub signs: String,
    pub total: bool,
    pub void: bool,
    pub vertices: usize,
    pub eye_inside: Option<usize>,
    pub failed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub arcs: usize,
    pub tiles: usize,
    pub swirls: Vec<SwirlSummary>,
    pub clockwise: usize,
    pub counterclockwise: usize,
    pub swirl_graph: GraphProperties,
    pub one_sided: bool,
    pub two_sided_arcs: Vec<usize>,
    pub assignment: Option<AssignmentSummary>,
    pub attractor_hulls: Vec<HullSummary>,
}

pub fn sign_string(signs: &[bool]) -> String {
    signs.iter().map(|&s| if s { '+' } else { '-' }).collect()
}

/// The poles carried by the file when they form a valid assignment,
/// otherwise the first minimum assignment found with at most `k_max` poles.
pub fn pole_assignment(d: &Diagram, k_max: usize) -> Option<(PoleAssignment, PoleSource)> {
    if let Some(pa) = PoleAssignment::from_diagram(d) {
        if check_assignment(d, &pa).valid {
            return Some((pa, PoleSource::File));
        }
    }
    infer_assignments(d, k_max).into_iter().next().map(|pa| (pa, PoleSource::Inferred))
}

/// Analyzes a diagram already known to be valid.
pub fn analyze(d: &Diagram, k_max: usize) -> AnalysisReport {
    let tol = d.tol();
    let swirls = enumerate(d);
    let props = graph_properties(&swirl_graph(&swirls));
    let count = |c: Chirality| swirls.iter().filter(|s| s.chirality == c).count();
    let summaries = swirls
        .iter()
        .map(|s| SwirlSummary { chirality: s.chirality, degree: s.degree, arcs: s.cycle.clone() })
        .collect();

    let pa = pole_assignment(d, k_max);
    let assignment = pa.as_ref().map(|(pa, source)| {
        let al = alignment(&pa.poles, tol);
        AssignmentSummary { source: *source, k: pa.k(), f: pa.f.clone(), alignment: al.d, degenerate: al.degenerate }
    });
    let attractor_hulls = match &pa {
        None => Vec::new(),
        Some((pa, _)) => attractors(&pa.poles)
            .iter()
            .map(|a| {
                let h = attractor_hull(a, tol);
                let (eye_inside, failed) = if h.total {
                    (None, Vec::new())
                } else {
                    match hull_report(d, pa, &h, &swirls) {
                        Ok(r) => (r.eye_inside, r.failed),
                        Err(v) => (v.0.eye_inside, v.0.failed),
                    }
                };
                HullSummary {
                    signs: sign_string(&a.signs),
                    total: h.total,
                    void: h.void,
                    vertices: h.vertices.len(),
                    eye_inside,
                    failed,
                }
            })
            .collect(),
    };

    AnalysisReport {
        arcs: d.len(),
        tiles: d.tiles().len(),
        clockwise: count(Chirality::Clockwise),
        counterclockwise: count(Chirality::Counterclockwise),
        swirls: summaries,
        swirl_graph: props,
        one_sided: d.is_one_sided().one_sided,
        two_sided_arcs: d.two_sided_arcs(),
        assignment,
        attractor_hulls,
    }
}

impl AnalysisReport {
    /// Human-readable table.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        s += &format!("arcs          {}\n", self.arcs);
        s += &format!("tiles         {}\n", self.tiles);
        s += &format!("swirls        {} ({} CW, {} CCW)\n", self.swirls.len(), self.clockwise, self.counterclockwise);
        s += &format!("one-sided     {}\n", yn(self.one_sided));
        s += &format!(
            "swirl graph   simple {}, planar {}, bipartite {}\n",
            yn(self.swirl_graph.simple),
            yn(self.swirl_graph.planar),
            yn(self.swirl_graph.bipartite)
        );
        match &self.assignment {
            Some(a) => {
                s += &format!("k             {} ({:?})\n", a.k, a.source);
                s += &format!("alignment     {:?}{}\n", a.alignment, if a.degenerate { " degenerate" } else { "" });
            }
            None => s += "k             none found\n",
        }
        s += "\n  #  chir  deg  arcs\n";
        for (i, w) in self.swirls.iter().enumerate() {
            let c = match w.chirality {
                Chirality::Clockwise => "CW",
                Chirality::Counterclockwise => "CCW",
            };
            s += &format!("{i:>3}  {c:<4}  {:>3}  {:?}\n", w.degree, w.arcs);
        }
        if !self.attractor_hulls.is_empty() {
            s += "\n  attractor  hull     eye  failed\n";
            for h in &self.attractor_hulls {
                let kind = if h.total {
                    "total".to_string()
                } else if h.void {
                    format!("void/{}", h.vertices)
                } else {
                    format!("{} verts", h.vertices)
                };
                let eye = h.eye_inside.map_or("-".to_string(), |e| e.to_string());
                s += &format!("  {:<9}  {:<7}  {:>3}  {}\n", h.signs, kind, eye, h.failed.join(","));
            }
        }
        s
    }
}
