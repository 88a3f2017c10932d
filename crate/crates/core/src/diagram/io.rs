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

//! JSON interchange format for diagrams.
//!
//! ```json
//! {"tolerance": 1e-9,
//!  "arcs": [{"start": [x, y, z], "end": [x, y, z], "pole": [x, y, z]}],
//!  "blocking": [{"arc": 0, "endpoint": "start", "blocker": 3}]}
//! ```
//!
//! `pole` and `blocking` are optional. Coordinates need not be normalized
//! on input; output always carries 17 significant digits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Diagram, Endpoint};
use crate::kernel::{KernelError, DEFAULT_TOLERANCE};
use crate::{GeodesicArc, Tolerance, UnitVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub start: [f64; 3],
    pub end: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockingRecord {
    pub arc: usize,
    pub endpoint: Endpoint,
    pub blocker: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramFile {
    #[serde(default)]
    pub tolerance: Option<f64>,
    pub arcs: Vec<ArcRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocking: Option<Vec<BlockingRecord>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("arc {arc}: {source}")]
    Geometry { arc: usize, source: KernelError },
    #[error(transparent)]
    Tolerance(KernelError),
    #[error("blocking entry refers to arc {0}, which does not exist")]
    BadIndex(usize),
    #[error("diagram has no arcs")]
    Empty,
}

fn unit(p: [f64; 3], arc: usize) -> Result<UnitVector, FormatError> {
    UnitVector::new(p[0], p[1], p[2]).map_err(|source| FormatError::Geometry { arc, source })
}

impl DiagramFile {
    /// Assembles the recorded diagram without validating it.
    pub fn into_diagram(self) -> Result<Diagram, FormatError> {
        let tol = Tolerance::new(self.tolerance.unwrap_or(DEFAULT_TOLERANCE)).map_err(FormatError::Tolerance)?;
        if self.arcs.is_empty() {
            return Err(FormatError::Empty);
        }
        let mut arcs = Vec::with_capacity(self.arcs.len());
        let mut poles = Vec::with_capacity(self.arcs.len());
        for (i, r) in self.arcs.iter().enumerate() {
            let a = GeodesicArc::new(unit(r.start, i)?, unit(r.end, i)?, tol)
                .map_err(|source| FormatError::Geometry { arc: i, source })?;
            arcs.push(a);
            poles.push(r.pole.map(|p| unit(p, i)).transpose()?);
        }
        let hint: Option<Vec<(usize, Endpoint, usize)>> = match &self.blocking {
            None => None,
            Some(bs) => {
                for b in bs {
                    if b.arc >= arcs.len() || b.blocker >= arcs.len() {
                        return Err(FormatError::BadIndex(b.arc.max(b.blocker)));
                    }
                }
                Some(bs.iter().map(|b| (b.arc, b.endpoint, b.blocker)).collect())
            }
        };
        Ok(Diagram::assemble(arcs, hint.as_deref(), tol).with_poles(poles))
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        let arcs = d
            .arcs()
            .iter()
            .zip(d.poles())
            .map(|(a, p)| ArcRecord { start: a.start.to_array(), end: a.end.to_array(), pole: p.map(|p| p.to_array()) })
            .collect();
        let blocking = d
            .blocking()
            .into_iter()
            .map(|(arc, endpoint, blocker)| BlockingRecord { arc, endpoint, blocker })
            .collect();
        Self { tolerance: Some(d.tol().tau()), arcs, blocking: Some(blocking) }
    }
}

/// A float with 17 significant digits, which round-trips every `f64`.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 && x.is_sign_positive() {
        return "0.0".into();
    }
    format!("{x:.16e}")
}

pub fn fmt_point(p: [f64; 3]) -> String {
    format!("[{}, {}, {}]", fmt17(p[0]), fmt17(p[1]), fmt17(p[2]))
}

impl Diagram {
    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        let f: DiagramFile = serde_json::from_str(s)?;
        f.into_diagram()
    }

    pub fn to_json(&self) -> String {
        let f = DiagramFile::from_diagram(self);
        let mut s = String::new();
        let _ = writeln!(s, "{{\n  \"tolerance\": {},\n  \"arcs\": [", f.tolerance.map_or("null".into(), fmt17));
        for (i, a) in f.arcs.iter().enumerate() {
            let _ = write!(s, "    {{\"start\": {}, \"end\": {}", fmt_point(a.start), fmt_point(a.end));
            if let Some(p) = a.pole {
                let _ = write!(s, ", \"pole\": {}", fmt_point(p));
            }
            s.push('}');
            s.push_str(if i + 1 < f.arcs.len() { ",\n" } else { "\n" });
        }
        s.push_str("  ],\n  \"blocking\": [\n");
        let bs = f.blocking.unwrap_or_default();
        for (i, b) in bs.iter().enumerate() {
            let ep = match b.endpoint {
                Endpoint::Start => "start",
                Endpoint::End => "end",
            };
            let _ = write!(s, "    {{\"arc\": {}, \"endpoint\": \"{}\", \"blocker\": {}}}", b.arc, ep, b.blocker);
            s.push_str(if i + 1 < bs.len() { ",\n" } else { "\n" });
        }
        s.push_str("  ]\n}\n");
        s
    }
}
