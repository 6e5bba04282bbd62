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

#![allow(dead_code)]

use geodesics_core::bench::{random_graph, BenchConfig};
use geodesics_core::{Graph, Path, VertexId, Weight};

/// Random instance families used by the equivalence tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    UndirectedUnit,
    DirectedUnit,
    DirectedWeighted,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::UndirectedUnit,
        Family::DirectedUnit,
        Family::DirectedWeighted,
    ];
}

/// Deterministic random graph with `n` vertices and density picked from
/// the seed.
pub fn instance(family: Family, n: usize, seed: u64) -> Graph {
    let directed = family != Family::UndirectedUnit;
    let cap = if directed { n * (n - 1) } else { n * (n - 1) / 2 };
    // between roughly n/2 and 3n arcs, capped at the complete graph
    let m = (n / 2 + (seed % (3 * n as u64)) as usize).min(cap);
    random_graph(&BenchConfig {
        n,
        m,
        seed,
        directed,
        wmax: if family == Family::DirectedWeighted { 3 } else { 1 },
        ..BenchConfig::default()
    })
    .expect("valid config")
}

/// Acyclic digraph (arcs only go from lower to higher id) with nonzero
/// weights in -3..=3, so negative arcs never form a circuit.
pub fn acyclic_signed(n: usize, seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            if rng.gen_bool(0.5) {
                let mut w = rng.gen_range(-3i64..=2);
                if w >= 0 {
                    w += 1;
                }
                arcs.push((u, v, Weight::from_integer(w)));
            }
        }
    }
    Graph::new(n, true, true, arcs).unwrap()
}

pub fn seqs(paths: impl IntoIterator<Item = Path>) -> Vec<Vec<VertexId>> {
    paths.into_iter().map(Path::into_vertices).collect()
}

pub fn sorted(mut v: Vec<Vec<VertexId>>) -> Vec<Vec<VertexId>> {
    v.sort();
    v
}

pub fn strictly_increasing(paths: &[Path]) -> bool {
    paths.windows(2).all(|w| w[0].vertices() < w[1].vertices())
}
