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


use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use sdtool::report::{analyze, AnalysisReport, DEFAULT_KMAX};
use serde_json::Value;
use spherical_diagrams::catalog;
use spherical_diagrams::scene::six_rectangle_scene;

fn sdtool(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sdtool"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn sdtool");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&[u8]>) -> Vec<u8> {
    let out = sdtool(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("stdout is json")
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, bytes).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn catalog_piped_into_analyze() {
    let d = ok(&["catalog", "octant-sod-12"], None);
    let r: AnalysisReport = serde_json::from_slice(&ok(&["analyze", "-"], Some(&d))).unwrap();
    assert_eq!(r.arcs, 12);
    assert_eq!(r.tiles, 14);
    assert_eq!(r.swirls.len(), 8);
    assert!(r.swirls.iter().all(|s| s.degree == 3));
}

#[test]
fn reloaded_catalog_entries_analyze_identically() {
    let dir = tempfile::tempdir().unwrap();
    for e in catalog::list_entries() {
        let file = write(dir.path(), &format!("{}.json", e.name), &ok(&["catalog", &e.name], None));
        let from_cli: AnalysisReport = serde_json::from_slice(&ok(&["analyze", &file], None)).unwrap();
        let (d, pa) = catalog::construct(&e.name).unwrap();
        let direct = analyze(&pa.attach(d), DEFAULT_KMAX);
        assert_eq!(from_cli, direct, "{}", e.name);
        assert_eq!(from_cli.tiles, from_cli.arcs + 2, "{}", e.name);
        assert_eq!(from_cli.swirls.len(), e.expected_swirls, "{}", e.name);
        let a = from_cli.assignment.as_ref().expect("assignment");
        assert_eq!(a.alignment, e.alignment, "{}", e.name);
    }
}

#[test]
fn unblocked_endpoint_fails_validation() {
    let mut v = json(&ok(&["catalog", "octant-sod-12"], None));
    v["arcs"].as_array_mut().unwrap().remove(0);
    v["blocking"] = Value::Null;
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "broken.json", v.to_string().as_bytes());
    let out = sdtool(&["validate", &file], None);
    assert_eq!(out.status.code(), Some(1));
    let err = json(&out.stderr);
    assert_eq!(err["error"], "invalid_diagram");
    let kinds: Vec<&str> =
        err["report"]["violations"].as_array().unwrap().iter().map(|x| x["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"unblocked_endpoint"), "{kinds:?}");

    let out = sdtool(&["analyze", &file], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    let out = sdtool(&["analyze", "-"], Some(b"{ not json"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "format");

    let out = sdtool(&["catalog", "no-such-entry"], None);
    assert_eq!(out.status.code(), Some(2));

    let out = sdtool(&["frobnicate"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "usage");
}

#[test]
fn hexpole_sod_swirl_graph() {
    let d = ok(&["catalog", "hexpole-sod-8"], None);
    let r = json(&ok(&["analyze", "-"], Some(&d)));
    assert_eq!(r["swirl_graph"]["simple"], true);
    assert_eq!(r["swirl_graph"]["planar"], true);
    assert_eq!(r["swirl_graph"]["bipartite"], true);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "d.json", &ok(&["catalog", "sextant-sod-10"], None));
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    ok(&["render", &file, "-o", a.to_str().unwrap()], None);
    ok(&["render", &file, "-o", b.to_str().unwrap()], None);
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<?xml"));
    assert!(text.contains(r#"version="1.1""#));
    assert!(text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<circle").count(), 2);
}

#[test]
fn transforms_emit_valid_diagrams() {
    let d = ok(&["catalog", "deg223-sd-9"], None);
    let sod = ok(&["to-sod", "-"], Some(&d));
    let r = json(&ok(&["analyze", "-"], Some(&sod)));
    assert_eq!(r["one_sided"], true);
    assert_eq!(r["swirls"].as_array().unwrap().len(), 6);

    let doubled = ok(&["double", "-", "--arc", "0"], Some(&d));
    assert_eq!(json(&ok(&["validate", "-"], Some(&doubled)))["valid"], true);

    let moved = ok(&["perturb", "-", "--delta", "0.0005"], Some(&d));
    let r = json(&ok(&["analyze", "-"], Some(&moved)));
    assert_eq!(r["assignment"]["degenerate"], false);
    assert_eq!(r["swirls"].as_array().unwrap().len(), 6);
}

#[test]
fn project_fixture_scene() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "scene.json", six_rectangle_scene().to_json().as_bytes());
    let d = ok(&["project", &scene, "--viewpoint", "0,0,0"], None);
    let r = json(&ok(&["analyze", "-"], Some(&d)));
    assert_eq!(r["one_sided"], true);
    assert_eq!(r["clockwise"], 4);
    assert_eq!(r["counterclockwise"], 4);

    let out = sdtool(&["project", &scene, "--viewpoint", "0,0"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn attractors_of_file_poles() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "d.json", &ok(&["catalog", "octant-sod-12"], None));
    let poles = write(dir.path(), "p.json", br#"{"poles": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let v = json(&ok(&["attractors", &file, "--poles", &poles], None));
    assert_eq!(v["assignment"]["valid"], true);
    let hulls = v["hulls"].as_array().unwrap();
    assert_eq!(hulls.len(), 8);
    for h in hulls {
        assert_eq!(h["void"], true);
        assert!(h["report"]["failed"].as_array().unwrap().is_empty());
        assert!(!h["report"]["eye_inside"].is_null());
    }
}

#[test]
fn walk_closes_on_an_eye() {
    let d = ok(&["catalog", "hexpole-sd-6"], None);
    let t = json(&ok(&["walk", "-", "--arc", "2", "--policy", "left"], Some(&d)));
    assert!(t["loop_curve"].as_array().unwrap().len() >= 3);
    let out = sdtool(&["walk", "-", "--arc", "99"], Some(&d));
    assert_eq!(out.status.code(), Some(2));
}
