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


use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use spherical_diagrams::catalog;
use spherical_diagrams::diagram::Diagram;
use spherical_diagrams::orientation::{
    alignment, attractor_hull, attractors, check_assignment, hull_report, infer_assignments, PoleAssignment,
};
use spherical_diagrams::scene::{project_visibility, Scene};
use spherical_diagrams::swirls::{enumerate, Heading};
use spherical_diagrams::transforms::{default_delta, default_eps, epsilon_double, perturb_poles, to_sod, DoublingSpec};
use spherical_diagrams::walks::{default_max_steps, run_walk, TurnPolicy, WalkState};
use spherical_diagrams::{Tolerance, UnitVector};

use sdtool::render::render_svg;
use sdtool::report::{analyze, pole_assignment, sign_string, DEFAULT_KMAX};
use sdtool::{load_valid, parse_diagram, parse_point, read_input, Failure};

#[derive(Parser)]
#[command(name = "sdtool", version, about = "Construct, validate and analyze spherical diagrams")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeadingArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Right,
    Left,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the diagram axioms; exit 1 on violation.
    Validate { file: PathBuf },
    /// Full analysis report (`-` reads stdin).
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
    },
    /// All swirls with their eyes.
    Swirls { file: PathBuf },
    /// Tiles of the diagram.
    Tiles { file: PathBuf },
    /// Minimum pole assignments and their alignment vectors.
    Align {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
    },
    /// Attractor hulls of the given poles and their hull checks.
    Attractors {
        file: PathBuf,
        #[arg(long)]
        poles: PathBuf,
    },
    /// Replace one arc by two close parallel copies.
    Double {
        file: PathBuf,
        #[arg(long)]
        arc: usize,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Double every two-sided arc.
    ToSod {
        file: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Move the poles into general position.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Visibility map of a polygonal scene seen from a viewpoint.
    Project {
        scene: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        viewpoint: [f64; 3],
    },
    /// Two-hemisphere SVG figure.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// List the catalog, or emit one entry's diagram.
    Catalog { name: Option<String> },
    /// Walk from the midpoint of an arc until the path closes.
    Walk {
        file: PathBuf,
        #[arg(long)]
        arc: usize,
        #[arg(long, value_enum, default_value_t = HeadingArg::Forward)]
        heading: HeadingArg,
        #[arg(long, value_enum, default_value_t = PolicyArg::Right)]
        policy: PolicyArg,
        #[arg(long)]
        max_steps: Option<usize>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolesFile {
    Bare(Vec<[f64; 3]>),
    Object { poles: Vec<[f64; 3]> },
}

#[derive(Serialize)]
struct HullEntry {
    signs: String,
    total: bool,
    void: bool,
    vertices: Vec<[f64; 3]>,
    report: Option<spherical_diagrams::orientation::HullReport>,
}

enum Output {
    Json(serde_json::Value),
    Text(String),
    Diagram(Diagram),
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("output serializes")
}

fn unit(p: [f64; 3]) -> Result<UnitVector, Failure> {
    UnitVector::new(p[0], p[1], p[2]).map_err(|e| Failure::bad("format", e))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.cmd {
        Cmd::Validate { file } => {
            let d = parse_diagram(&read_input(file)?)?;
            let report = d.validate();
            if !report.valid {
                return Err(Failure::Invalid(to_value(&report)));
            }
            Ok(Output::Json(to_value(&report)))
        }
        Cmd::Analyze { file, kmax } => {
            let r = analyze(&load_valid(file)?, *kmax);
            Ok(if cli.pretty { Output::Text(r.pretty()) } else { Output::Json(to_value(&r)) })
        }
        Cmd::Swirls { file } => Ok(Output::Json(to_value(&enumerate(&load_valid(file)?)))),
        Cmd::Tiles { file } => Ok(Output::Json(to_value(&load_valid(file)?.tiles()))),
        Cmd::Align { file, kmax } => {
            let d = load_valid(file)?;
            let found: Vec<serde_json::Value> = infer_assignments(&d, *kmax)
                .iter()
                .map(|pa| {
                    let al = alignment(&pa.poles, d.tol());
                    json!({ "poles": pa.poles, "f": pa.f, "alignment": al.d, "degenerate": al.degenerate })
                })
                .collect();
            let k = found.first().map(|v| v["poles"].as_array().map_or(0, Vec::len));
            Ok(Output::Json(json!({ "k": k, "assignments": found })))
        }
        Cmd::Attractors { file, poles } => {
            let d = load_valid(file)?;
            let pf: PolesFile =
                serde_json::from_str(&read_input(poles)?).map_err(|e| Failure::bad("format", e))?;
            let raw = match pf {
                PolesFile::Bare(p) | PolesFile::Object { poles: p } => p,
            };
            let poles = raw.into_iter().map(unit).collect::<Result<Vec<_>, _>>()?;
            if poles.is_empty() {
                return Err(Failure::bad("format", "no poles given"));
            }
            let tol = d.tol();
            // Each arc goes to the first pole on its circle.
            let f = d
                .arcs()
                .iter()
                .map(|a| poles.iter().position(|p| a.circle.contains(p, tol)).unwrap_or(0))
                .collect();
            let pa = PoleAssignment::new(poles, f);
            let check = check_assignment(&d, &pa);
            let swirls = enumerate(&d);
            let hulls: Vec<HullEntry> = attractors(&pa.poles)
                .iter()
                .map(|a| {
                    let h = attractor_hull(a, tol);
                    let report = (!h.total).then(|| match hull_report(&d, &pa, &h, &swirls) {
                        Ok(r) => r,
                        Err(v) => *v.0,
                    });
                    HullEntry {
                        signs: sign_string(&a.signs),
                        total: h.total,
                        void: h.void,
                        vertices: h.vertices.iter().map(|v| v.to_array()).collect(),
                        report,
                    }
                })
                .collect();
            Ok(Output::Json(json!({ "assignment": check, "f": pa.f, "hulls": hulls })))
        }
        Cmd::Double { file, arc, eps } => {
            let d = load_valid(file)?;
            let eps = eps.unwrap_or_else(|| default_eps(&d));
            epsilon_double(&d, DoublingSpec { arc: *arc, eps })
                .map(Output::Diagram)
                .map_err(|e| Failure::bad("transform", e))
        }
        Cmd::ToSod { file, eps } => {
            let d = load_valid(file)?;
            to_sod(&d, *eps).map(Output::Diagram).map_err(|e| Failure::bad("transform", e))
        }
        Cmd::Perturb { file, delta, seed } => {
            let d = load_valid(file)?;
            let (pa, _) =
                pole_assignment(&d, DEFAULT_KMAX).ok_or_else(|| Failure::bad("transform", "no pole assignment found"))?;
            let delta = delta.unwrap_or_else(|| default_delta(&d));
            let (d2, pa2) = perturb_poles(&d, &pa, delta, *seed).map_err(|e| Failure::bad("transform", e))?;
            Ok(Output::Diagram(pa2.attach(d2)))
        }
        Cmd::Project { scene, viewpoint } => {
            let s = Scene::from_json(&read_input(scene)?).map_err(|e| Failure::bad("format", e))?;
            project_visibility(&s, *viewpoint, Tolerance::default())
                .map(Output::Diagram)
                .map_err(|e| Failure::bad("scene", e))
        }
        Cmd::Render { file, output } => {
            let d = load_valid(file)?;
            let pa = pole_assignment(&d, DEFAULT_KMAX).map(|(pa, _)| pa);
            std::fs::write(output, render_svg(&d, pa.as_ref()))
                .map_err(|e| Failure::bad("io", format!("{}: {e}", output.display())))?;
            Ok(Output::Json(json!({ "written": output.display().to_string() })))
        }
        Cmd::Catalog { name: None } => {
            let entries = catalog::list_entries();
            if cli.pretty {
                let mut s = String::new();
                for e in &entries {
                    s += &format!(
                        "{:<16} {:<4} arcs {:>2}  swirls {}  alignment {:?}\n",
                        e.name,
                        to_value(&e.kind).as_str().unwrap_or(""),
                        e.expected_arcs,
                        e.expected_swirls,
                        e.alignment
                    );
                }
                return Ok(Output::Text(s));
            }
            Ok(Output::Json(to_value(&entries)))
        }
        Cmd::Catalog { name: Some(name) } => {
            let (d, pa) = catalog::construct(name).map_err(|e| match e {
                catalog::CatalogError::UnknownEntry(_) => Failure::bad("unknown_entry", e),
                _ => Failure::bad("catalog", e),
            })?;
            Ok(Output::Diagram(pa.attach(d)))
        }
        Cmd::Walk { file, arc, heading, policy, max_steps } => {
            let d = load_valid(file)?;
            if *arc >= d.len() {
                return Err(Failure::bad("argument", format!("no arc {arc}")));
            }
            let start = WalkState {
                arc: *arc,
                position: d.arc(*arc).midpoint(),
                heading: match heading {
                    HeadingArg::Forward => Heading::Forward,
                    HeadingArg::Backward => Heading::Backward,
                },
            };
            let policy = match policy {
                PolicyArg::Right => TurnPolicy::AlwaysRight,
                PolicyArg::Left => TurnPolicy::AlwaysLeft,
            };
            let limit = max_steps.unwrap_or_else(|| default_max_steps(&d));
            run_walk(&d, start, &policy, limit)
                .map(|t| Output::Json(to_value(&t)))
                .map_err(|e| Failure::bad("walk", e))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = json!({ "error": "usage", "message": e.to_string() });
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(Output::Json(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Diagram(d)) => {
            println!("{}", d.to_json());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
