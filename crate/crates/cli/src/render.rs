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


//! Static SVG figures: the +z and -z hemispheres in orthographic
//! projection, side by side.

use std::fmt::Write;

use spherical_diagrams::diagram::Diagram;
use spherical_diagrams::orientation::PoleAssignment;
use spherical_diagrams::swirls::{enumerate, Chirality};
use spherical_diagrams::{GeodesicArc, GreatCircle, SphericalPolygon, UnitVector};

const RADIUS: f64 = 180.0;
const MARGIN: f64 = 20.0;
const STEP: f64 = 0.01;

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];
const UNASSIGNED: &str = "#444444";

#[derive(Clone, Copy)]
enum Half {
    Upper,
    Lower,
}

impl Half {
    fn sign(self) -> f64 {
        match self {
            Half::Upper => 1.0,
            Half::Lower => -1.0,
        }
    }

    fn center_x(self) -> f64 {
        match self {
            Half::Upper => MARGIN + RADIUS,
            Half::Lower => 3.0 * MARGIN + 3.0 * RADIUS,
        }
    }

    /// Screen position. The lower view is seen from below, so x is mirrored.
    fn project(self, p: [f64; 3]) -> (f64, f64) {
        (self.center_x() + self.sign() * p[0] * RADIUS, MARGIN + RADIUS - p[1] * RADIUS)
    }
}

fn samples(a: &GeodesicArc) -> Vec<[f64; 3]> {
    let len = a.length();
    let n = ((len / STEP).ceil() as usize).max(1);
    (0..=n).map(|i| a.point_at(len * i as f64 / n as f64).to_array()).collect()
}

/// Splits a sampled curve into runs lying in one hemisphere, cutting each
/// crossing at the equator.
fn split(points: &[[f64; 3]], half: Half) -> Vec<Vec<[f64; 3]>> {
    let s = half.sign();
    let mut runs = Vec::new();
    let mut cur: Vec<[f64; 3]> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let inside = s * p[2] >= 0.0;
        if i > 0 {
            let q = points[i - 1];
            let was = s * q[2] >= 0.0;
            if inside != was {
                let t = q[2] / (q[2] - p[2]);
                let mut m = [0.0; 3];
                for k in 0..3 {
                    m[k] = q[k] + t * (p[k] - q[k]);
                }
                m[2] = 0.0;
                let n = (m[0] * m[0] + m[1] * m[1]).sqrt();
                if n > 0.0 {
                    m[0] /= n;
                    m[1] /= n;
                }
                cur.push(m);
                if was {
                    runs.push(std::mem::take(&mut cur));
                }
            }
        }
        if inside {
            cur.push(*p);
        }
    }
    if cur.len() > 1 {
        runs.push(cur);
    }
    runs.retain(|r| r.len() > 1);
    runs
}

fn path(points: &[[f64; 3]], half: Half, close: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = half.project(*p);
        let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, x, y);
    }
    if close {
        d.push_str(" Z");
    }
    d
}

fn polygon_samples(poly: &SphericalPolygon, d: &Diagram) -> Vec<[f64; 3]> {
    let n = poly.vertices.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (poly.vertices[i], poly.vertices[(i + 1) % n]);
        match GeodesicArc::new(a, b, d.tol()) {
            Ok(arc) => {
                let s = samples(&arc);
                out.extend_from_slice(&s[..s.len() - 1]);
            }
            Err(_) => out.push(a.to_array()),
        }
    }
    out
}

/// Renders `d`; arcs are coloured by pole index when `pa` is given.
pub fn render_svg(d: &Diagram, pa: Option<&PoleAssignment>) -> String {
    let width = 4.0 * (MARGIN + RADIUS);
    let height = 2.0 * (MARGIN + RADIUS) + MARGIN;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let tol = d.tol();
    let swirls = enumerate(d);
    for half in [Half::Upper, Half::Lower] {
        let (cx, cy) = (half.center_x(), MARGIN + RADIUS);
        let _ = writeln!(
            out,
            r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{RADIUS:.2}" fill="none" stroke="#999999" stroke-width="1"/>"##
        );
        let label = match half {
            Half::Upper => "+z",
            Half::Lower => "-z",
        };
        let _ = writeln!(
            out,
            r#"<text x="{cx:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{label}</text>"#,
            2.0 * (MARGIN + RADIUS) + 8.0
        );

        let cap = GreatCircle::from_normal(UnitVector::new(0.0, 0.0, half.sign()).expect("axis"));
        for s in &swirls {
            let clipped = s.eye.clip(&cap, tol);
            if clipped.vertices.len() < 3 {
                continue;
            }
            let fill = match s.chirality {
                Chirality::Clockwise => "#9ecae1",
                Chirality::Counterclockwise => "#fdd0a2",
            };
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="{fill}" fill-opacity="0.6" stroke="none"/>"#,
                path(&polygon_samples(&clipped, d), half, true)
            );
        }

        for (i, a) in d.arcs().iter().enumerate() {
            let colour = pa.map_or(UNASSIGNED, |pa| PALETTE[pa.f[i] % PALETTE.len()]);
            for run in split(&samples(a), half) {
                let _ = writeln!(
                    out,
                    r#"<path d="{}" fill="none" stroke="{colour}" stroke-width="2" stroke-linecap="round"/>"#,
                    path(&run, half, false)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
