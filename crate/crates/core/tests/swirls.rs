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

use common::{as_raw, brute_force_swirls, catalog_and_variants, catalog_cases};
use spherical_diagrams::swirls::{enumerate, graph_properties, relation, swirl_graph, Chirality};

#[test]
fn enumeration_matches_brute_force() {
    for c in catalog_and_variants() {
        let fast = as_raw(&enumerate(&c.diagram));
        let slow = brute_force_swirls(&c.diagram);
        assert_eq!(fast, slow, "{}", c.name);
    }
}

#[test]
fn both_chiralities_at_least_twice() {
    for c in catalog_and_variants() {
        let s = enumerate(&c.diagram);
        let cw = s.iter().filter(|w| w.chirality == Chirality::Clockwise).count();
        assert!(cw >= 2 && s.len() - cw >= 2, "{}: {cw} CW of {}", c.name, s.len());
        assert!(s.len() >= 4, "{}", c.name);
    }
}

#[test]
fn sod_swirl_graphs_are_simple_planar_bipartite() {
    for c in catalog_and_variants() {
        if !c.diagram.is_one_sided().one_sided {
            continue;
        }
        let p = graph_properties(&swirl_graph(&enumerate(&c.diagram)));
        assert!(p.simple && p.planar && p.bipartite, "{}: {p:?}", c.name);
    }
}

#[test]
fn swirl_pair_relations() {
    for c in catalog_and_variants() {
        let s = enumerate(&c.diagram);
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let r = relation(&c.diagram, &s, i, j);
                let shared = r.shared_arcs.len();
                if r.contiguous {
                    assert_eq!(shared, 2, "{} swirls {i},{j}", c.name);
                } else {
                    assert!(shared <= s[i].degree.min(s[j].degree) / 2, "{} swirls {i},{j}", c.name);
                }
                if shared >= 2 {
                    assert_eq!(r.concordant, !r.contiguous, "{} swirls {i},{j}", c.name);
                }
            }
        }
    }
}

#[test]
fn eyes_are_bounded_by_their_arcs() {
    let tol = spherical_diagrams::Tolerance::default();
    for c in catalog_cases() {
        for s in enumerate(&c.diagram) {
            assert_eq!(s.eye.len(), s.degree, "{}", c.name);
            for (i, v) in s.eye.vertices.iter().enumerate() {
                let on = s.cycle.iter().filter(|&&a| c.diagram.arc(a).contains(v, tol)).count();
                assert!(on >= 2, "{}: eye vertex {i} lies on {on} cycle arcs", c.name);
            }
        }
    }
}
