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


mod common;

use std::f64::consts::TAU;

use common::*;
use spherical_diagrams::diagram::Diagram;
use spherical_diagrams::orientation::{attractor_hull, attractors};
use spherical_diagrams::swirls::{enumerate, Chirality, Heading};
use spherical_diagrams::walks::{
    default_max_steps, run_walk, second_clockwise_swirl, PoleRule, TurnPolicy, WalkError, WalkState,
};
use spherical_diagrams::UnitVector;

fn starts(d: &Diagram) -> Vec<WalkState> {
    let mut v = Vec::new();
    for arc in 0..d.len() {
        for heading in [Heading::Forward, Heading::Backward] {
            for t in [0.3, 0.5, 0.8] {
                let a = d.arc(arc);
                v.push(WalkState { arc, position: a.point_at(t * a.length()), heading });
            }
        }
    }
    v
}

#[test]
fn right_walks_close_around_clockwise_eyes() {
    for c in catalog_and_variants() {
        let d = &c.diagram;
        let tol = d.tol();
        let swirls = enumerate(d);
        for st in starts(d) {
            let t = run_walk(d, st, &TurnPolicy::AlwaysRight, default_max_steps(d))
                .unwrap_or_else(|e| panic!("{} from arc {}: {e}", c.name, st.arc));
            let eye = swirls.iter().find(|s| s.eye.same_cycle(&t.right_region, tol));
            let eye = eye.unwrap_or_else(|| panic!("{} from arc {}: right region is no eye", c.name, st.arc));
            assert_eq!(eye.chirality, Chirality::Clockwise, "{}", c.name);

            let l = run_walk(d, st, &TurnPolicy::AlwaysLeft, default_max_steps(d)).unwrap();
            let eye = swirls.iter().find(|s| s.eye.same_cycle(&l.left_region.complement(), tol) || s.eye.same_cycle(&l.left_region, tol));
            assert!(eye.is_some_and(|s| s.chirality == Chirality::Counterclockwise), "{} from arc {}", c.name, st.arc);
        }
    }
}

#[test]
fn walks_are_deterministic_and_loops_minimal() {
    for c in catalog_cases() {
        let d = &c.diagram;
        for st in starts(d) {
            let a = run_walk(d, st, &TurnPolicy::AlwaysRight, default_max_steps(d)).unwrap();
            let b = run_walk(d, st, &TurnPolicy::AlwaysRight, default_max_steps(d)).unwrap();
            assert_eq!(a, b);
            let states: Vec<(usize, Heading)> = a.loop_steps().iter().map(|s| (s.arc, s.heading)).collect();
            for i in 0..states.len() {
                assert!(!states[i + 1..].contains(&states[i]), "{}: loop repeats a state", c.name);
            }
            assert_eq!(a.loop_curve.len(), states.len());
        }
    }
}

fn azimuth(p: &UnitVector, x: &UnitVector) -> f64 {
    let e1 = p.any_orthogonal();
    let e2 = p.cross(&e1);
    x.vec().dot(&e2).atan2(x.vec().dot(&e1.vec()))
}

fn wrap(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > std::f64::consts::PI {
        r - TAU
    } else {
        r
    }
}

#[test]
fn fulcrum_walks_turn_monotonically_once() {
    let mut walked = 0;
    for c in catalog_cases() {
        let d = &c.diagram;
        for s in enumerate(d) {
            let p = s.eye.centroid().unwrap();
            for chirality in [Chirality::Clockwise, Chirality::Counterclockwise] {
                let policy = TurnPolicy::Fulcrum { p, chirality, pole_rule: PoleRule::TowardFulcrum };
                let st = WalkState { arc: s.cycle[0], position: d.arc(s.cycle[0]).midpoint(), heading: Heading::Forward };
                let t = match run_walk(d, st, &policy, default_max_steps(d)) {
                    Ok(t) => t,
                    Err(WalkError::FulcrumTouched(_)) => continue,
                    Err(e) => panic!("{}: {e}", c.name),
                };
                let sign = if chirality == Chirality::Clockwise { -1.0 } else { 1.0 };
                for step in &t.steps {
                    let delta = wrap(azimuth(&p, &step.exit) - azimuth(&p, &step.entry));
                    assert!(sign * delta >= -1e-9, "{}: azimuth moved the wrong way by {delta}", c.name);
                }
                let winding: f64 = t
                    .loop_steps()
                    .iter()
                    .map(|step| wrap(azimuth(&p, &step.exit) - azimuth(&p, &step.entry)))
                    .sum::<f64>()
                    + {
                        // Closing hop from the last exit to the first loop entry lies on one arc.
                        let steps = t.loop_steps();
                        wrap(azimuth(&p, &steps[0].entry) - azimuth(&p, &steps[steps.len() - 1].exit))
                    };
                assert!((winding.abs() - TAU).abs() < 1e-6, "{}: winding {winding}", c.name);
                walked += 1;
            }
        }
    }
    assert!(walked >= 40, "only {walked} fulcrum walks ran");
}

#[test]
fn attractor_walks_stay_in_their_hull() {
    let mut walked = 0;
    for c in catalog_cases() {
        let d = &c.diagram;
        for a in attractors(&c.poles.poles) {
            let h = attractor_hull(&a, d.tol());
            if h.total {
                continue;
            }
            let normals = inward_normals(&h.vertices);
            let policy = TurnPolicy::TowardAttractor(a.points.clone());
            for arc in 0..d.len() {
                let Some((lo, hi)) = clip_arc(d, arc, &normals) else { continue };
                let x = d.arc(arc).point_at(0.5 * (lo + hi));
                if hi - lo < 1e-6 || !strictly_inside(&normals, &x) {
                    continue;
                }
                for heading in [Heading::Forward, Heading::Backward] {
                    let st = WalkState { arc, position: x, heading };
                    let t = run_walk(d, st, &policy, default_max_steps(d)).unwrap();
                    for step in &t.steps {
                        for q in [step.entry, step.exit] {
                            assert!(normals.iter().all(|m| m.dot(&q.vec()) > -1e-9), "{}: walk left its hull", c.name);
                        }
                    }
                    walked += 1;
                }
            }
        }
    }
    assert!(walked > 100, "only {walked} attractor walks ran");
}

#[test]
fn second_clockwise_swirl_is_a_different_clockwise_swirl() {
    for c in catalog_and_variants() {
        let d = &c.diagram;
        let swirls = enumerate(d);
        for s in swirls.iter().filter(|s| s.chirality == Chirality::Clockwise) {
            let other = second_clockwise_swirl(d, s).unwrap_or_else(|e| panic!("{}: {e}", c.name));
            assert_eq!(other.chirality, Chirality::Clockwise, "{}", c.name);
            assert_ne!(other.cycle, s.cycle, "{}", c.name);
            assert!(swirls.iter().any(|w| w.cycle == other.cycle), "{}", c.name);
        }
    }
}
