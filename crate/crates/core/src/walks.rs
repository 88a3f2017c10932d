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

//! Sliding walks: travel along an arc to its endpoint, then turn onto the
//! blocking arc one way or the other.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::Diagram;
use crate::kernel::GeodesicArc;
use crate::swirls::{enumerate, travel_direction, turn_heading, Chirality, Heading, Swirl};
use crate::{SphericalPolygon, UnitVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkState {
    pub arc: usize,
    pub position: UnitVector,
    pub heading: Heading,
}

/// What to do on a circle through the fulcrum, where azimuth is constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PoleRule {
    #[default]
    TowardFulcrum,
    AwayFromFulcrum,
    Either,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TurnPolicy {
    AlwaysRight,
    AlwaysLeft,
    Fulcrum { p: UnitVector, chirality: Chirality, pole_rule: PoleRule },
    /// Follow each arc toward the point of the list lying on its circle.
    TowardAttractor(Vec<UnitVector>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkStep {
    pub arc: usize,
    pub heading: Heading,
    pub entry: UnitVector,
    pub exit: UnitVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkTrace {
    pub steps: Vec<WalkStep>,
    pub loop_start: usize,
    /// Vertices of the closed loop, in travel order.
    pub loop_curve: Vec<UnitVector>,
    pub right_region: SphericalPolygon,
    pub left_region: SphericalPolygon,
}

impl WalkTrace {
    pub fn loop_steps(&self) -> &[WalkStep] {
        &self.steps[self.loop_start..]
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("no loop within {0} steps")]
    StepLimitExceeded(usize),
    #[error("walk touches the fulcrum or its antipode on arc {0}")]
    FulcrumTouched(usize),
    #[error("start is not interior to arc {0}")]
    BadStart(usize),
    #[error("no arc circle passes through an attractor point at arc {0}")]
    NoAttractorPoint(usize),
    #[error("no second clockwise swirl found")]
    NotFound,
}

pub fn default_max_steps(d: &Diagram) -> usize {
    16 * d.len()
}

fn choose_heading(d: &Diagram, b: usize, x: &UnitVector, u: &UnitVector, policy: &TurnPolicy) -> Result<Heading, WalkError> {
    let tol = d.tol();
    let arc = d.arc(b);
    let t = arc.tangent_at(x);
    let toward = |q: &UnitVector| if t.dot(q) > 0.0 { Heading::Forward } else { Heading::Backward };
    match policy {
        TurnPolicy::AlwaysRight => Ok(turn_heading(d, b, x, u, Chirality::Clockwise)),
        TurnPolicy::AlwaysLeft => Ok(turn_heading(d, b, x, u, Chirality::Counterclockwise)),
        TurnPolicy::Fulcrum { p, chirality, pole_rule } => {
            if arc.circle.contains(p, tol) {
                return Ok(match pole_rule {
                    PoleRule::TowardFulcrum | PoleRule::Either => toward(p),
                    PoleRule::AwayFromFulcrum => toward(&p.antipode()),
                });
            }
            let w = p.vec().dot(&x.cross(&t));
            let ccw = if w > 0.0 { Heading::Forward } else { Heading::Backward };
            Ok(match chirality {
                Chirality::Counterclockwise => ccw,
                Chirality::Clockwise => match ccw {
                    Heading::Forward => Heading::Backward,
                    Heading::Backward => Heading::Forward,
                },
            })
        }
        TurnPolicy::TowardAttractor(points) => {
            let n = arc.circle.normal;
            let a = points
                .iter()
                .min_by(|p, q| n.dot(p).abs().total_cmp(&n.dot(q).abs()))
                .filter(|a| n.dot(a).abs() <= 1e3 * tol.tau())
                .ok_or(WalkError::NoAttractorPoint(b))?;
            Ok(toward(a))
        }
    }
}

fn check_fulcrum(d: &Diagram, policy: &TurnPolicy, step: &WalkStep) -> Result<(), WalkError> {
    let TurnPolicy::Fulcrum { p, .. } = policy else { return Ok(()) };
    let tol = d.tol();
    let touched = match GeodesicArc::new(step.entry, step.exit, tol) {
        Ok(seg) => seg.contains(p, tol) || seg.contains(&p.antipode(), tol),
        Err(_) => step.entry.approx_eq(p, tol.tau()) || step.entry.approx_eq(&p.antipode(), tol.tau()),
    };
    if touched {
        Err(WalkError::FulcrumTouched(step.arc))
    } else {
        Ok(())
    }
}

/// Walks from `start` until an (arc, heading) state repeats. The start
/// heading is used by the turn policies only; fulcrum and attractor
/// policies pick the first direction themselves.
pub fn run_walk(d: &Diagram, start: WalkState, policy: &TurnPolicy, max_steps: usize) -> Result<WalkTrace, WalkError> {
    let tol = d.tol();
    if start.arc >= d.len() || !d.arc(start.arc).interior_contains(&start.position, tol) {
        return Err(WalkError::BadStart(start.arc));
    }
    let n = d.len();
    let mut seen = vec![[usize::MAX; 2]; n];
    let mut steps: Vec<WalkStep> = Vec::new();
    let (mut arc, mut heading, mut entry) = (start.arc, start.heading, start.position);
    // Fulcrum and attractor policies fix a direction on every arc, the first included.
    if matches!(policy, TurnPolicy::Fulcrum { .. } | TurnPolicy::TowardAttractor(_)) {
        let t = d.arc(arc).tangent_at(&entry);
        heading = choose_heading(d, arc, &entry, &t, policy)?;
    }
    loop {
        if steps.len() > max_steps {
            return Err(WalkError::StepLimitExceeded(max_steps));
        }
        let k = steps.len();
        if k > 0 {
            let prev = seen[arc][heading.index()];
            if prev != usize::MAX {
                return Ok(close(steps, prev));
            }
            seen[arc][heading.index()] = k;
        }
        let e = heading.target();
        let exit = d.endpoint(arc, e);
        let step = WalkStep { arc, heading, entry, exit };
        check_fulcrum(d, policy, &step)?;
        steps.push(step);
        let u = travel_direction(d, arc, &exit, heading);
        let b = d.blocker(arc, e);
        heading = choose_heading(d, b, &exit, &u, policy)?;
        arc = b;
        entry = exit;
    }
}

fn close(steps: Vec<WalkStep>, loop_start: usize) -> WalkTrace {
    // The first loop step may have been entered from outside the loop; the
    // last exit is where the loop re-enters it.
    let mut loop_curve: Vec<UnitVector> = steps[loop_start..].iter().map(|s| s.exit).collect();
    loop_curve.rotate_right(1);
    let left = SphericalPolygon::new(loop_curve.clone());
    let right = left.complement();
    WalkTrace { steps, loop_start, loop_curve, right_region: right, left_region: left }
}

/// The regions to the right and to the left of the detected loop.
pub fn side_regions(trace: &WalkTrace) -> (SphericalPolygon, SphericalPolygon) {
    (trace.right_region.clone(), trace.left_region.clone())
}

/// Finds a clockwise swirl other than `s`: a counterclockwise walk around
/// a point of the eye of `s`, then a right-handed walk inside its
/// right-side region.
pub fn second_clockwise_swirl(d: &Diagram, s: &Swirl) -> Result<Swirl, WalkError> {
    let tol = d.tol();
    let p = s.eye.centroid().ok_or(WalkError::NotFound)?;
    let m = s.eye.len();
    let mut start = None;
    for i in 0..m {
        let (a, b) = (s.eye.vertices[i], s.eye.vertices[(i + 1) % m]);
        let Ok(mid) = (a.vec() + b.vec()).normalize() else { continue };
        if let Some(&arc) = s.cycle.iter().find(|&&c| d.arc(c).interior_contains(&mid, tol)) {
            let t = d.arc(arc).tangent_at(&mid);
            let heading = if p.vec().dot(&mid.cross(&t)) > 0.0 { Heading::Forward } else { Heading::Backward };
            start = Some(WalkState { arc, position: mid, heading });
            break;
        }
    }
    let start = start.ok_or(WalkError::NotFound)?;
    let policy = TurnPolicy::Fulcrum { p, chirality: Chirality::Counterclockwise, pole_rule: PoleRule::TowardFulcrum };
    let outer = run_walk(d, start, &policy, default_max_steps(d))?;
    let swirls = enumerate(d);
    let m = outer.loop_curve.len();
    for (i, step) in outer.loop_steps().iter().enumerate() {
        let Ok(seg) = GeodesicArc::new(outer.loop_curve[i], outer.loop_curve[(i + 1) % m], tol) else { continue };
        let inner_start = WalkState { arc: step.arc, position: seg.midpoint(), heading: step.heading };
        let Ok(inner) = run_walk(d, inner_start, &TurnPolicy::AlwaysRight, default_max_steps(d)) else { continue };
        let found = swirls.iter().find(|w| {
            w.chirality == Chirality::Clockwise
                && (w.eye.same_cycle(&inner.right_region, tol) || w.eye.same_cycle(&inner.left_region, tol))
        });
        if let Some(w) = found {
            if w.cycle != s.cycle {
                return Ok(w.clone());
            }
        }
    }
    Err(WalkError::NotFound)
}
