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

//! One geodesic between two vertices by greedy descent on the distance
//! matrix.

use crate::distances::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};

/// Walks from `s` towards `t`, each time stepping to the smallest-id
/// out-neighbour `x` of the current vertex `u` with
/// `w(u, x) + D(x, t) = D(u, t)`.
///
/// At unit weights this is the rule "pick a neighbour one step closer to
/// `t`". Requires `d` to be the distance matrix of `g` and, for the walk to
/// be simple, positive arc weights.
pub fn one_geodesic(g: &Graph, d: &DistanceMatrix, s: VertexId, t: VertexId) -> Result<Path> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    let d = d.aligned_to(g)?;
    let (si, ti) = (s.index(), t.index());
    let total = d.raw(si, ti).ok_or(Error::Unreachable { s, t })?;

    let mut vertices = vec![s];
    let mut u = si;
    let mut remaining = total;
    while u != ti {
        let (x, w) = g
            .scaled_out(u)
            .find(|&(x, w)| d.raw(x, ti).is_some_and(|dx| w + dx == remaining))
            .ok_or_else(|| {
                Error::InvalidPath(format!(
                    "no descent step from {}; distance matrix does not match the graph",
                    VertexId::from_index(u)
                ))
            })?;
        if vertices.len() > g.n() {
            return Err(Error::InvalidPath("descent revisits a vertex".into()));
        }
        vertices.push(VertexId::from_index(x));
        remaining -= w;
        u = x;
    }
    Ok(Path::from_scaled(vertices, total, g.scale()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::{distance_matrix_bfs, floyd_warshall};
    use crate::fixtures::{g2, g2_path, g2_vertex as v, p3};
    use crate::graph::{vertex_seq, Weight};

    #[test]
    fn g2_a_to_c() {
        let g = g2();
        let d = floyd_warshall(&g).unwrap();
        let p = one_geodesic(&g, &d, v('a'), v('c')).unwrap();
        assert_eq!(p.vertices(), g2_path("adbc"));
        assert_eq!(p.weight(), Weight::from_integer(5));
    }

    #[test]
    fn trivial_and_path_graph() {
        let g = p3();
        let d = distance_matrix_bfs(&g);
        let one = VertexId::new(1);
        let p = one_geodesic(&g, &d, one, one).unwrap();
        assert_eq!(p.vertices(), [one]);
        assert_eq!(p.weight(), Weight::from_integer(0));
        let p = one_geodesic(&g, &d, one, VertexId::new(3)).unwrap();
        assert_eq!(p.vertices(), vertex_seq(&[1, 2, 3]));
    }

    #[test]
    fn unreachable() {
        let g = g2();
        let d = floyd_warshall(&g).unwrap();
        assert!(matches!(
            one_geodesic(&g, &d, v('c'), v('a')),
            Err(Error::Unreachable { .. })
        ));
    }

    #[test]
    fn weight_matches_distance_for_all_pairs() {
        let g = g2();
        let d = floyd_warshall(&g).unwrap();
        for s in g.vertices() {
            for t in g.vertices() {
                if let Some(dist) = d.get(s, t) {
                    let p = one_geodesic(&g, &d, s, t).unwrap();
                    assert_eq!(p.weight(), dist);
                    // re-validate through the checked constructor
                    let checked = Path::new(&g, p.vertices().to_vec()).unwrap();
                    assert_eq!(checked.weight(), dist);
                }
            }
        }
    }
}
