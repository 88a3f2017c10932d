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


//! Library half of `sdtool`: reports, rendering and input helpers shared
//! by the binary and its tests.

pub mod render;
pub mod report;

use std::io::Read;
use std::path::Path;

use serde_json::json;
use spherical_diagrams::diagram::Diagram;

/// A failed command, mapped to an exit code and a JSON error on stderr.
#[derive(Debug)]
pub enum Failure {
    /// The input parsed but is not a valid diagram (exit 1).
    Invalid(serde_json::Value),
    /// Unreadable or malformed input, or bad arguments (exit 2).
    BadInput { kind: &'static str, message: String },
}

impl Failure {
    pub fn bad(kind: &'static str, message: impl ToString) -> Self {
        Failure::BadInput { kind, message: message.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::BadInput { .. } => 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Failure::Invalid(report) => json!({ "error": "invalid_diagram", "report": report }),
            Failure::BadInput { kind, message } => json!({ "error": kind, "message": message }),
        }
    }
}

/// Reads a file, or stdin when `path` is `-`.
pub fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::bad("io", e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::bad("io", format!("{}: {e}", path.display())))
}

pub fn parse_diagram(text: &str) -> Result<Diagram, Failure> {
    Diagram::from_json(text).map_err(|e| Failure::bad("format", e))
}

/// Loads a diagram and rejects it with its validation report when invalid.
pub fn load_valid(path: &Path) -> Result<Diagram, Failure> {
    let d = parse_diagram(&read_input(path)?)?;
    let report = d.validate();
    if !report.valid {
        return Err(Failure::Invalid(serde_json::to_value(&report).expect("report serializes")));
    }
    Ok(d)
}

/// Parses `x,y,z`.
pub fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    let mut p = [0.0; 3];
    for (slot, part) in p.iter_mut().zip(&parts) {
        *slot = part.parse::<f64>().map_err(|e| format!("{part:?}: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("{part:?} is not finite"));
        }
    }
    Ok(p)
}
