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

//! Small graphs used throughout the tests, the CLI and the demo page.

use crate::graph::{parse_graph, Graph, VertexId};

/// Weighted digraph on `a..f` (ids 1..6) whose geodesic levels are
/// `Geo[1]..Geo[7]` with sizes 4, 6, 4, 5, 3, 0, 1.
pub const G2_TEXT: &str = include_str!("../fixtures/g2.graph");

/// Path graph `1 - 2 - 3`.
pub const P3_TEXT: &str = include_str!("../fixtures/p3.graph");

pub fn g2() -> Graph {
    parse_graph(G2_TEXT).expect("G2 fixture parses")
}

pub fn p3() -> Graph {
    parse_graph(P3_TEXT).expect("P3 fixture parses")
}

/// Vertex of G2 by its letter name.
///
/// # Panics
///
/// Panics if `name` is not one of `a..=f`.
pub fn g2_vertex(name: char) -> VertexId {
    assert!(('a'..='f').contains(&name), "G2 has vertices a..f");
    VertexId::new(name as u32 - 'a' as u32 + 1)
}

/// G2 vertex sequence from its compact name, e.g. `"adbc"`.
pub fn g2_path(word: &str) -> Vec<VertexId> {
    word.chars().map(g2_vertex).collect()
}

/// Letter name of a G2 vertex sequence.
pub fn g2_word(vertices: &[VertexId]) -> String {
    vertices
        .iter()
        .map(|v| char::from(b'a' + (v.get() - 1) as u8))
        .collect()
}
