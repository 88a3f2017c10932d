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

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spherical_diagrams::catalog;
use spherical_diagrams::orientation::{
    alignment, attractor_hull, attractor_partition, attractors, check_assignment, hull_report, infer_assignments,
    partition_bounds, AssignmentIssue, PoleAssignment,
};
use spherical_diagrams::swirls::enumerate;
use spherical_diagrams::UnitVector;

#[test]
fn every_attractor_hull_holds_an_eye_and_is_thrust_three_times() {
    for c in catalog_and_variants() {
        let d = &c.diagram;
        let swirls = enumerate(d);
        for a in attractors(&c.poles.poles) {
            let h = attractor_hull(&a, d.tol());
            if h.total {
                continue;
            }
            let normals = inward_normals(&h.vertices);
            let label = format!("{} attractor {:?}", c.name, a.signs);
            assert!(
                swirls.iter().any(|s| s.eye.vertices.iter().all(|v| strictly_inside(&normals, v))),
                "{label}: no eye inside"
            );

            let mut thrusts: Vec<(usize, UnitVector, Vec<usize>)> = Vec::new();
            for arc in 0..d.len() {
                let ct = contact(d, arc, &normals);
                if !ct.interior {
                    continue;
                }
                assert!(ct.boundary.len() <= 1, "{label}: arc {arc} meets the boundary twice");
                for p in ct.boundary {
                    thrusts.push((arc, p, edges_through(&normals, &p)));
                }
            }
            assert!(three_spread_thrusts(&thrusts), "{label}: thrusts {:?}", thrusts.len());

            let r = hull_report(d, &c.poles, &h, &swirls).unwrap_or_else(|v| panic!("{label}: {:?}", v.0.failed));
            assert!(r.eye_inside.is_some(), "{label}");
        }
    }
}

#[test]
fn attractor_partitions_meet_the_arc_bound() {
    let mut seen = 0;
    for c in catalog_cases() {
        let tol = c.diagram.tol();
        let Some(partition) = attractor_partition(&c.poles, tol) else { continue };
        seen += 1;
        let m = partition.len();
        let area: f64 = partition.iter().map(|h| h.polygon().unwrap().area()).sum();
        assert!((area - 4.0 * std::f64::consts::PI).abs() < 1e-6, "{}: area {area}", c.name);

        let swirls = enumerate(&c.diagram);
        let b = partition_bounds(&c.diagram, &c.poles, &partition, &swirls);
        assert!(b.swirl_count_ok && b.thrust_bound_ok, "{}: {b:?}", c.name);
        assert!(b.max_hulls_per_arc <= 2, "{}: {b:?}", c.name);

        // Independent count of arcs thrusting some hull of the partition.
        let thrusting = (0..c.diagram.len())
            .filter(|&a| {
                partition.iter().any(|h| {
                    let ct = contact(&c.diagram, a, &inward_normals(&h.vertices));
                    ct.interior && !ct.boundary.is_empty()
                })
            })
            .count();
        assert!(thrusting >= (3 * m).div_ceil(2), "{}: {thrusting} arcs for m = {m}", c.name);
    }
    assert!(seen >= 5, "only {seen} catalog entries have a partition");
}

#[test]
fn random_great_circles_are_crossed_three_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in catalog_cases() {
        for _ in 0..1000 {
            let n = random_unit(&mut rng).vec();
            let count = (0..c.diagram.len()).filter(|&a| crosses(&c.diagram, a, &n)).count();
            assert!(count >= 3, "{}: circle {n:?} crossed {count} times", c.name);
        }
    }
}

#[test]
fn random_hemispheres_contain_an_eye() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for c in catalog_cases() {
        let swirls = enumerate(&c.diagram);
        for _ in 0..200 {
            let n = random_unit(&mut rng);
            let found = swirls.iter().any(|s| s.eye.vertices.iter().all(|v| v.dot(&n) > EPS));
            assert!(found, "{}: hemisphere {:?} holds no eye", c.name, n.to_array());
        }
    }
}

#[test]
fn inference_finds_valid_assignments_no_larger_than_the_catalog() {
    for c in catalog_cases() {
        let found = infer_assignments(&c.diagram, c.poles.k());
        let pa = found.first().unwrap_or_else(|| panic!("{}: nothing inferred", c.name));
        assert!(pa.k() <= c.poles.k(), "{}", c.name);
        assert!(check_assignment(&c.diagram, pa).valid, "{}", c.name);
        assert!(found.iter().all(|p| p.k() == pa.k()), "{}", c.name);
    }
    let (d, _) = catalog::construct("octant-sod-12").unwrap();
    assert_eq!(infer_assignments(&d, 6)[0].k(), 3);
}

#[test]
fn check_assignment_flags_bad_poles() {
    let (d, pa) = catalog::construct("octant-sod-12").unwrap();
    let tilted = PoleAssignment::new(
        vec![
            UnitVector::new(1.0, 0.1, 0.0).unwrap(),
            pa.poles[1],
            pa.poles[2],
        ],
        pa.f.clone(),
    );
    let r = check_assignment(&d, &tilted);
    assert!(!r.valid);
    assert!(r.violations.iter().any(|v| v.kind == AssignmentIssue::NotCollinear));

    let collinear = PoleAssignment::new(
        vec![UnitVector::new(1.0, 0.0, 0.0).unwrap(), UnitVector::new(0.0, 1.0, 0.0).unwrap()],
        vec![0; d.len()],
    );
    let r = check_assignment(&d, &collinear);
    assert!(r.violations.iter().any(|v| v.kind == AssignmentIssue::AllPolesCollinear || v.kind == AssignmentIssue::TooFewPoles));
}

#[test]
fn alignment_of_standard_pole_sets() {
    let tol = spherical_diagrams::Tolerance::default();
    let u = |x: f64, y: f64, z: f64| UnitVector::new(x, y, z).unwrap();
    let axes = [u(1.0, 0.0, 0.0), u(0.0, 1.0, 0.0), u(0.0, 0.0, 1.0)];
    assert_eq!(alignment(&axes, tol).d, vec![2, 2, 2]);
    assert!(!alignment(&axes, tol).degenerate);
    let mut four = axes.to_vec();
    four.push(u(1.0, 1.0, 0.0));
    let a = alignment(&four, tol);
    assert_eq!(a.d, vec![2, 2, 2, 3]);
    assert!(a.degenerate);
}
