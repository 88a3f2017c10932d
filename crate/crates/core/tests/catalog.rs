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

use common::catalog_cases;
use spherical_diagrams::catalog::{self, Kind};
use spherical_diagrams::orientation::{alignment, check_assignment};
use spherical_diagrams::swirls::enumerate;

#[test]
fn entries_match_their_declared_counts() {
    let entries = catalog::list_entries();
    assert_eq!(entries.len(), 10);
    for e in entries {
        let (d, pa) = catalog::construct(&e.name).unwrap();
        assert!(d.validate().valid, "{}", e.name);
        assert_eq!(d.len(), e.expected_arcs, "{}", e.name);
        assert_eq!(enumerate(&d).len(), e.expected_swirls, "{}", e.name);
        assert_eq!(d.is_one_sided().one_sided, e.kind == Kind::Sod, "{}", e.name);
        let report = check_assignment(&d, &pa);
        assert!(report.valid, "{}: {:?}", e.name, report.violations);
        assert_eq!(alignment(&pa.poles, d.tol()).d, e.alignment, "{}", e.name);
    }
}

#[test]
fn golden_files_match_rebuilt_constructions() {
    for e in catalog::list_entries() {
        let (golden, gp) = catalog::construct(&e.name).unwrap();
        let (fresh, fp) = catalog::rebuild(&e.name).unwrap();
        assert_eq!(golden.len(), fresh.len(), "{}", e.name);
        let tau = golden.tol().tau();
        for i in 0..golden.len() {
            assert!(gp.pole_of(i).approx_eq(&fp.pole_of(i), tau), "{} arc {i}", e.name);
        }
        for (a, b) in golden.arcs().iter().zip(fresh.arcs()) {
            assert!(a.start.approx_eq(&b.start, tau) && a.end.approx_eq(&b.end, tau), "{}", e.name);
        }
        assert_eq!(golden.blocking(), fresh.blocking(), "{}", e.name);
    }
}

#[test]
fn frozen_parameters_reproduce_nondeg5() {
    let (f, angle) = catalog::frozen_parameters("nondeg5-sd-9").unwrap();
    assert_eq!(f.len(), 9);
    assert_eq!(angle.len(), 9);
    assert!(catalog::frozen_parameters("octant-sod-12").is_none());
}

#[test]
fn unknown_names_are_rejected() {
    assert!(catalog::entry("octant-sod-13").is_none());
    assert!(matches!(catalog::construct("nope"), Err(catalog::CatalogError::UnknownEntry(_))));
}

#[test]
fn constructions_keep_features_apart() {
    for c in catalog_cases() {
        let sep = c.diagram.feature_separation();
        assert!(sep > 100.0 * c.diagram.tol().tau(), "{}: separation {sep}", c.name);
    }
}
