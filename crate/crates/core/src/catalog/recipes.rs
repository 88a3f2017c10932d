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

//! Deterministic searches that produce catalog diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arrange::Arrangement;
use crate::diagram::Diagram;
use crate::orientation::PoleAssignment;
use crate::swirls::enumerate;
use crate::{Tolerance, UnitVector};

/// What a search accepts.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Target {
    pub swirls: usize,
    /// Inclusive bounds on the number of two-sided arcs.
    pub two_sided: (usize, usize),
    pub min_separation: f64,
}

impl Target {
    fn accepts(&self, d: &Diagram) -> bool {
        let t = d.two_sided_arcs().len();
        t >= self.two_sided.0
            && t <= self.two_sided.1
            && enumerate(d).len() == self.swirls
            && d.feature_separation() >= self.min_separation
    }
}

/// Circle `i` through pole `f[i]`, at angle `angle[i]` from a fixed
/// reference circle through that pole.
pub(crate) fn circle_normals(poles: &[UnitVector], f: &[usize], angle: &[f64]) -> Vec<UnitVector> {
    f.iter().zip(angle).map(|(&pi, &a)| poles[pi].any_orthogonal().rotate_about(&poles[pi], a)).collect()
}

fn shuffle<T>(v: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..v.len()).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
}

/// Random great circles through the poles, `n` of them, each pole used at
/// least once.
pub(crate) fn random_circles(
    poles: &[UnitVector],
    n: usize,
    seed: u64,
    max_tries: usize,
    target: Target,
    tol: Tolerance,
) -> Option<(Diagram, PoleAssignment)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = poles.len();
    for _ in 0..max_tries {
        let mut f: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect();
        shuffle(&mut f, &mut rng);
        let angle: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        let found = fixed_circles(poles, &f, &angle, target, tol);
        if found.is_some() {
            return found;
        }
    }
    None
}

/// First diagram with the target counts on the given circles.
pub(crate) fn fixed_circles(
    poles: &[UnitVector],
    f: &[usize],
    angle: &[f64],
    target: Target,
    tol: Tolerance,
) -> Option<(Diagram, PoleAssignment)> {
    let normals = circle_normals(poles, f, angle);
    let mut found = None;
    Arrangement::new(poles, f, &normals).search(tol, &mut |d, pa| {
        if target.accepts(&d) {
            found = Some((d, pa));
            true
        } else {
            false
        }
    });
    found
}

/// Fewest swirls over the diagrams on the given circles, and how many
/// diagrams were seen (capped).
fn fewest_swirls(poles: &[UnitVector], f: &[usize], angle: &[f64], tol: Tolerance) -> (usize, usize) {
    let normals = circle_normals(poles, f, angle);
    let mut best = usize::MAX;
    let mut count = 0;
    Arrangement::new(poles, f, &normals).search(tol, &mut |d, _| {
        count += 1;
        best = best.min(enumerate(&d).len());
        count > 5000
    });
    (best, count)
}

/// Local search over circle angles and pole choices, descending on the
/// fewest swirls realizable on the arrangement. Returns the pole choice
/// and angles of the first arrangement carrying a target diagram.
pub(crate) fn anneal(
    poles: &[UnitVector],
    n: usize,
    seed: u64,
    restarts: usize,
    target: Target,
    tol: Tolerance,
) -> Option<(Vec<usize>, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = poles.len();
    let uses_all = |f: &[usize]| (0..k).all(|p| f.contains(&p));
    for _ in 0..restarts {
        let (mut f, mut angle, mut score) = loop {
            let mut f: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect();
            shuffle(&mut f, &mut rng);
            let angle: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            let (s, c) = fewest_swirls(poles, &f, &angle, tol);
            if c > 0 {
                break (f, angle, s);
            }
        };
        for _ in 0..3000 {
            let mut f2 = f.clone();
            let mut a2 = angle.clone();
            let i = rng.gen_range(0..n);
            if rng.gen_bool(0.8) {
                let sigma: f64 = if rng.gen_bool(0.5) { 0.05 } else { 0.4 };
                a2[i] += rng.gen_range(-sigma..sigma);
            } else {
                f2[i] = rng.gen_range(0..k);
                if !uses_all(&f2) {
                    continue;
                }
            }
            let (s2, c2) = fewest_swirls(poles, &f2, &a2, tol);
            if c2 > 0 && s2 <= score {
                f = f2;
                angle = a2;
                score = s2;
            }
            if score <= target.swirls && fixed_circles(poles, &f, &angle, target, tol).is_some() {
                return Some((f, angle));
            }
        }
    }
    None
}

