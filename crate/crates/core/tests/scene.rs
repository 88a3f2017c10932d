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

use spherical_diagrams::orientation::infer_assignments;
use spherical_diagrams::scene::{is_vertex_hidden, project_visibility, six_rectangle_scene, Scene, SceneError};
use spherical_diagrams::swirls::{enumerate, Chirality};
use spherical_diagrams::Tolerance;

const CENTER: [f64; 3] = [0.0, 0.0, 0.0];

#[test]
fn fixture_center_is_vertex_hidden() {
    let s = six_rectangle_scene();
    assert_eq!(s.polygons.len(), 6);
    assert!(is_vertex_hidden(&s, CENTER));
    assert!(!is_vertex_hidden(&s, [10.0, 0.3, 0.2]));
}

#[test]
fn single_rectangle_shows_its_corners() {
    let s = Scene { polygons: vec![vec![[-1., -1., 1.], [1., -1., 1.], [1., 1., 1.], [-1., 1., 1.]]] };
    assert!(!is_vertex_hidden(&s, CENTER));
    assert!(matches!(project_visibility(&s, CENTER, Tolerance::default()), Err(SceneError::NotVertexHidden { .. })));
}

#[test]
fn fixture_projects_to_an_octant_like_sod() {
    let tol = Tolerance::default();
    let d = project_visibility(&six_rectangle_scene(), CENTER, tol).unwrap();
    assert!(d.validate().valid);
    assert!(d.len() >= 8);
    assert!(d.is_one_sided().one_sided);
    let sw = enumerate(&d);
    let cw = sw.iter().filter(|s| s.chirality == Chirality::Clockwise).count();
    let ccw = sw.iter().filter(|s| s.chirality == Chirality::Counterclockwise).count();
    assert_eq!((cw, ccw), (4, 4));
    assert!(sw.iter().all(|s| s.degree == 3));
    let inferred = infer_assignments(&d, 4);
    assert_eq!(inferred.first().map(|pa| pa.k()), Some(3));
}

#[test]
fn sampled_rays_agree_with_intervals() {
    let (checked, mismatches) = common::ray_oracle(&six_rectangle_scene(), CENTER, 1000, 17);
    assert!(checked > 20_000, "{checked}");
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn projected_edges_stay_on_one_great_circle() {
    let tol = Tolerance::default();
    let d = project_visibility(&six_rectangle_scene(), CENTER, tol).unwrap();
    for (arc, pole) in d.arcs().iter().zip(d.poles()) {
        let p = pole.unwrap();
        assert!(arc.circle.normal.dot(&p).abs() < 1e-12);
        assert!(arc.circle.normal.dot(&arc.midpoint()).abs() < 1e-12);
    }
}

#[test]
fn scene_json_round_trip() {
    let s = six_rectangle_scene();
    let back = Scene::from_json(&s.to_json()).unwrap();
    assert_eq!(back, s);
}
