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

//! Walk counts and distance matrices.
//!
//! Three independent routes to the distance matrix are provided:
//!
//! - [`distance_matrix_power`]: powers of the adjacency matrix; the distance
//!   of `(x, y)` is the first `k` with a nonzero `(x, y)` entry in `A^k`.
//! - [`distance_matrix_bfs`]: one breadth-first search per source.
//! - [`floyd_warshall`]: vertex elimination in ascending id order, for
//!   arbitrary rational weights without negative directed circuits.
//!
//! The power and BFS routes measure hop distance and ignore arc weights.

use std::borrow::Cow;
use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, Weight};

/// `n x n` matrix of walk counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMatrix {
    n: usize,
    data: Vec<BigUint>,
}

impl CountMatrix {
    fn zeros(n: usize) -> Self {
        CountMatrix {
            n,
            data: vec![BigUint::zero(); n * n],
        }
    }

    /// The 0/1 adjacency matrix.
    pub fn adjacency(g: &Graph) -> Self {
        let mut a = CountMatrix::zeros(g.n());
        for arc in g.arcs() {
            a.data[arc.from.index() * g.n() + arc.to.index()] = BigUint::one();
        }
        a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: VertexId, y: VertexId) -> &BigUint {
        &self.data[x.index() * self.n + y.index()]
    }

    /// Multiplies on the right by the adjacency matrix of `g`:
    /// `c[x][y] = sum_z b[x][z] * a[z][y]`. Only the nonzero `a[z][y]`
    /// (the arcs) contribute.
    pub fn times_adjacency(&self, g: &Graph) -> CountMatrix {
        let n = self.n;
        let mut c = CountMatrix::zeros(n);
        for x in 0..n {
            let row = &self.data[x * n..(x + 1) * n];
            let out = &mut c.data[x * n..(x + 1) * n];
            for (z, b) in row.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for y in g.out_indices(z) {
                    out[y] += b;
                }
            }
        }
        c
    }
}

/// Number of walks of length exactly `k` between every ordered pair.
pub fn walk_counts(g: &Graph, k: usize) -> Result<CountMatrix> {
    if k < 1 {
        return Err(Error::InvalidWalkLength(k));
    }
    let mut b = CountMatrix::adjacency(g);
    for _ in 1..k {
        b = b.times_adjacency(g);
    }
    Ok(b)
}

/// Matrix of shortest-path weights. Unreachable pairs hold a distinguished
/// sentinel (`None`), never a large number.
///
/// Entries are stored as integers in units of `1 / scale`.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    scale: i64,
    data: Vec<Option<i64>>,
}

impl PartialEq for DistanceMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.data.iter().zip(&other.data).all(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => {
                    i128::from(*x) * i128::from(other.scale) == i128::from(*y) * i128::from(self.scale)
                }
                (None, None) => true,
                _ => false,
            })
    }
}

impl Eq for DistanceMatrix {}

impl DistanceMatrix {
    /// Builds a matrix from rows of optional rational entries.
    pub fn from_rows(rows: &[Vec<Option<Weight>>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let mut scale: i64 = 1;
        for w in rows.iter().flatten().flatten() {
            scale = num_integer::lcm(scale, *w.denom());
        }
        let data = rows
            .iter()
            .flatten()
            .map(|e| match e {
                Some(w) => w
                    .numer()
                    .checked_mul(scale / w.denom())
                    .map(Some)
                    .ok_or(Error::Overflow),
                None => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DistanceMatrix { n, scale, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// `dist(s, t)`, or `None` when `t` is unreachable from `s`.
    pub fn get(&self, s: VertexId, t: VertexId) -> Option<Weight> {
        self.raw(s.index(), t.index())
            .map(|r| Weight::new(r, self.scale))
    }

    pub fn is_reachable(&self, s: VertexId, t: VertexId) -> bool {
        self.raw(s.index(), t.index()).is_some()
    }

    #[inline]
    pub(crate) fn raw(&self, s: usize, t: usize) -> Option<i64> {
        self.data[s * self.n + t]
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<Option<Weight>>> + '_ {
        self.data.chunks(self.n.max(1)).take(self.n).map(move |row| {
            row.iter()
                .map(|e| e.map(|r| Weight::new(r, self.scale)))
                .collect()
        })
    }

    /// Largest finite entry (the weighted diameter restricted to reachable
    /// pairs); `None` only for an empty matrix.
    pub fn max_finite(&self) -> Option<Weight> {
        self.data
            .iter()
            .flatten()
            .max()
            .map(|&r| Weight::new(r, self.scale))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.raw(i, j) == self.raw(j, i)))
    }

    /// Checks zero diagonal and the triangle inequality on finite entries.
    pub fn is_metric_like(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| self.raw(i, i) == Some(0))
            && (0..n).all(|i| {
                (0..n).all(|k| match self.raw(i, k) {
                    None => true,
                    Some(ik) => (0..n).all(|j| match (self.raw(k, j), self.raw(i, j)) {
                        (Some(kj), Some(ij)) => ij <= ik + kj,
                        (Some(_), None) => false,
                        (None, _) => true,
                    }),
                })
            })
    }

    /// Returns this matrix expressed in units of `1 / scale`.
    ///
    /// # Panics
    ///
    /// Panics if some entry is not a multiple of `1 / scale`, which means the
    /// matrix does not belong to a graph with that scale.
    pub(crate) fn with_scale(&self, scale: i64) -> Cow<'_, DistanceMatrix> {
        if scale == self.scale {
            return Cow::Borrowed(self);
        }
        let data = self
            .data
            .iter()
            .map(|e| {
                e.map(|r| {
                    let num = i128::from(r) * i128::from(scale);
                    assert!(
                        num % i128::from(self.scale) == 0,
                        "distance matrix is incompatible with the graph's weights"
                    );
                    i64::try_from(num / i128::from(self.scale)).expect("distance overflow")
                })
            })
            .collect();
        Cow::Owned(DistanceMatrix {
            n: self.n,
            scale,
            data,
        })
    }

    /// Aligns the matrix with `g`'s scale after checking dimensions.
    pub(crate) fn aligned_to(&self, g: &Graph) -> Result<Cow<'_, DistanceMatrix>> {
        if self.n != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                found: self.n,
            });
        }
        Ok(self.with_scale(g.scale()))
    }

    /// `n` lines of tab-separated entries, `inf` for unreachable pairs.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|e| e.map_or_else(|| "inf".to_string(), |w| w.to_string()))
                .collect();
            let _ = writeln!(out, "{}", cells.join("\t"));
        }
        out
    }

    /// `{"n": n, "matrix": [[...]]}` with integers as numbers, other
    /// rationals as `"p/q"` strings and `null` for unreachable pairs.
    pub fn to_json(&self) -> Value {
        let matrix: Vec<Value> = self
            .rows()
            .map(|row| {
                Value::Array(
                    row.into_iter()
                        .map(|e| e.map_or(Value::Null, |w| weight_json(&w)))
                        .collect(),
                )
            })
            .collect();
        json!({ "n": self.n, "matrix": matrix })
    }
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn weight_json(w: &Weight) -> Value {
    if w.is_integer() {
        json!(w.to_integer())
    } else {
        json!(w.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct PowerMethodResult {
    pub distances: DistanceMatrix,
    /// Largest power needed to resolve every finite distance.
    pub delta: usize,
    /// `A^dist(x,y)` entry for every pair: the number of shortest walks,
    /// which is the number of geodesics. 1 on the diagonal, 0 when
    /// unreachable.
    pub geodesic_counts: CountMatrix,
}

/// Hop distances from powers of the adjacency matrix.
///
/// Powers `A, A^2, ...` are taken until every pair is resolved or `k = n`;
/// pairs still unresolved are unreachable.
pub fn distance_matrix_power(g: &Graph) -> PowerMethodResult {
    let n = g.n();
    let mut data = vec![None; n * n];
    let mut counts = CountMatrix::zeros(n);
    for i in 0..n {
        data[i * n + i] = Some(0);
        counts.data[i * n + i] = BigUint::one();
    }
    let mut unresolved = n * n - n;
    let mut delta = 0;
    let mut power = CountMatrix::adjacency(g);
    let mut k = 1;
    loop {
        for (idx, c) in power.data.iter().enumerate() {
            if data[idx].is_none() && !c.is_zero() {
                data[idx] = Some(k as i64);
                counts.data[idx] = c.clone();
                unresolved -= 1;
                delta = k;
            }
        }
        if unresolved == 0 || k >= n {
            break;
        }
        power = power.times_adjacency(g);
        k += 1;
    }
    PowerMethodResult {
        distances: DistanceMatrix { n, scale: 1, data },
        delta,
        geodesic_counts: counts,
    }
}

/// Hop distances by one breadth-first search per source.
pub fn distance_matrix_bfs(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut data = vec![None; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for (s, row) in data.chunks_mut(n).enumerate() {
        row[s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let next = row[u].map(|d| d + 1);
            for v in g.out_indices(u) {
                if row[v].is_none() {
                    row[v] = next;
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceMatrix { n, scale: 1, data }
}

/// Weighted distances by Floyd–Warshall.
///
/// `d_0(s, t)` is the arc weight (or unreachable), and step `k` allows vertex
/// `k` as an intermediate:
/// `d_k(s, t) = min(d_{k-1}(s, t), d_{k-1}(s, k) + d_{k-1}(k, t))`.
/// After every sweep the diagonal is checked, and the first vertex with a
/// negative entry is reported as [`Error::NegativeCycle`].
pub fn floyd_warshall(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut d = vec![None; n * n];
    for u in 0..n {
        d[u * n + u] = Some(0);
        for (v, w) in g.scaled_out(u) {
            d[u * n + v] = Some(w);
        }
    }
    for k in 0..n {
        let row_k: Vec<Option<i64>> = d[k * n..(k + 1) * n].to_vec();
        for i in 0..n {
            let Some(ik) = d[i * n + k] else { continue };
            let row_i = &mut d[i * n..(i + 1) * n];
            for (j, kj) in row_k.iter().enumerate() {
                let Some(kj) = *kj else { continue };
                let via = ik.checked_add(kj).ok_or(Error::Overflow)?;
                match row_i[j] {
                    Some(ij) if ij <= via => {}
                    _ => row_i[j] = Some(via),
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| d[v * n + v].is_some_and(|x| x < 0)) {
            return Err(Error::NegativeCycle {
                vertex: VertexId::from_index(v),
            });
        }
    }
    Ok(DistanceMatrix {
        n,
        scale: g.scale(),
        data: d,
    })
}

/// Distance matrix by the cheapest applicable route: BFS when every arc has
/// weight 1, Floyd–Warshall otherwise.
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    if g.arcs().iter().all(|a| a.weight.is_one()) {
        Ok(distance_matrix_bfs(g))
    } else {
        floyd_warshall(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g2, g2_vertex as v, p3};
    use crate::graph::parse_graph;

    fn id(i: u32) -> VertexId {
        VertexId::new(i)
    }

    /// Counts walks of length `k` from `x` to `y` by exhaustive extension.
    fn brute_walks(g: &Graph, x: usize, y: usize, k: usize) -> u64 {
        if k == 0 {
            return u64::from(x == y);
        }
        g.arcs()
            .iter()
            .filter(|a| a.from.index() == x)
            .map(|a| brute_walks(g, a.to.index(), y, k - 1))
            .sum()
    }

    fn k3() -> Graph {
        Graph::unweighted(3, false, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn walk_counts_small() {
        let g = p3();
        let c = walk_counts(&g, 2).unwrap();
        assert_eq!(*c.get(id(1), id(3)), BigUint::from(1u32));
        assert_eq!(*c.get(id(1), id(1)), BigUint::from(1u32));
        assert_eq!(*c.get(id(1), id(2)), BigUint::zero());
        let c = walk_counts(&k3(), 2).unwrap();
        assert_eq!(*c.get(id(1), id(1)), BigUint::from(2u32));
        assert_eq!(walk_counts(&g, 1).unwrap(), CountMatrix::adjacency(&g));
        assert!(matches!(walk_counts(&g, 0), Err(Error::InvalidWalkLength(0))));
    }

    #[test]
    fn walk_counts_match_enumeration() {
        let g = parse_graph("5 7 directed unweighted\n1 2\n2 3\n3 1\n3 4\n4 5\n5 3\n2 5").unwrap();
        for k in 1..=5 {
            let c = walk_counts(&g, k).unwrap();
            for x in 0..5 {
                for y in 0..5 {
                    let expected = brute_walks(&g, x, y, k);
                    assert_eq!(
                        *c.get(VertexId::from_index(x), VertexId::from_index(y)),
                        BigUint::from(expected),
                        "k={k} ({x},{y})"
                    );
                }
            }
        }
    }

    #[test]
    fn power_method_path_and_cycle() {
        let r = distance_matrix_power(&p3());
        let expected: Vec<Vec<Option<i64>>> =
            vec![vec![Some(0), Some(1), Some(2)], vec![Some(1), Some(0), Some(1)], vec![Some(2), Some(1), Some(0)]];
        for (row, exp) in r.distances.rows().zip(expected) {
            let exp: Vec<_> = exp.into_iter().map(|e| e.map(Weight::from_integer)).collect();
            assert_eq!(row, exp);
        }
        assert_eq!(r.delta, 2);
        assert_eq!(r.distances, distance_matrix_bfs(&p3()));

        let c5 = Graph::unweighted(5, false, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        let r = distance_matrix_power(&c5);
        assert_eq!(r.delta, 2);
        for s in c5.vertices() {
            for t in c5.vertices().filter(|&t| t != s) {
                let d = r.distances.get(s, t).unwrap();
                assert!(d == Weight::from_integer(1) || d == Weight::from_integer(2));
            }
        }
        assert_eq!(r.distances, distance_matrix_bfs(&c5));
    }

    #[test]
    fn power_method_disconnected() {
        let g = Graph::unweighted(4, false, [(1, 2), (3, 4)]).unwrap();
        let r = distance_matrix_power(&g);
        assert_eq!(r.distances.get(id(1), id(3)), None);
        assert_eq!(r.distances.get(id(4), id(3)), Some(Weight::from_integer(1)));
        assert_eq!(r.delta, 1);
        assert_eq!(r.distances, distance_matrix_bfs(&g));
        assert_eq!(*r.geodesic_counts.get(id(1), id(3)), BigUint::zero());
    }

    #[test]
    fn floyd_warshall_g2() {
        let d = floyd_warshall(&g2()).unwrap();
        let w = Weight::from_integer;
        assert_eq!(d.get(v('a'), v('c')), Some(w(5)));
        assert_eq!(d.get(v('e'), v('a')), Some(w(4)));
        assert_eq!(d.get(v('d'), v('e')), Some(w(2)));
        for x in "abdef".chars() {
            assert_eq!(d.get(v('c'), v(x)), None);
        }
        assert_eq!(d.max_finite(), Some(w(7)));
        assert!(d.is_metric_like());
        assert!(!d.is_symmetric());
    }

    #[test]
    fn floyd_warshall_negative_arc() {
        // the two a-c dipaths weigh 2 + (-1) = 1 and 3
        let g = parse_graph("3 3 directed weighted\n1 2 2\n2 3 -1\n1 3 3").unwrap();
        let d = floyd_warshall(&g).unwrap();
        assert_eq!(d.get(id(1), id(3)), Some(Weight::from_integer(1)));
        assert!(d.is_metric_like());
    }

    #[test]
    fn floyd_warshall_negative_cycle() {
        // the diagonal first turns negative at vertex 3, after eliminating 1 and 2
        let g = parse_graph("3 3 directed weighted\n1 2 1\n2 3 1\n3 1 -3").unwrap();
        assert!(matches!(
            floyd_warshall(&g),
            Err(Error::NegativeCycle { vertex }) if vertex == id(3)
        ));
    }

    #[test]
    fn floyd_warshall_rational_weights() {
        let g = parse_graph("3 2 directed weighted\n1 2 1/2\n2 3 1/3").unwrap();
        let d = floyd_warshall(&g).unwrap();
        assert_eq!(d.get(id(1), id(3)), Some(Weight::new(5, 6)));
        assert_eq!(d.to_tsv(), "0\t1/2\t5/6\ninf\t0\t1/3\ninf\tinf\t0\n");
        assert_eq!(d.to_json()["matrix"][0][2], json!("5/6"));
        assert_eq!(d.to_json()["matrix"][1][0], Value::Null);
    }

    #[test]
    fn from_rows_and_scaling() {
        let w = Weight::from_integer;
        let d = DistanceMatrix::from_rows(&[vec![Some(w(0)), Some(Weight::new(3, 2))], vec![None, Some(w(0))]]).unwrap();
        assert_eq!(d.scale(), 2);
        let scaled = d.with_scale(6);
        assert_eq!(*scaled, d);
        assert_eq!(scaled.raw(0, 1), Some(9));
        assert!(DistanceMatrix::from_rows(&[vec![None, None]]).is_err());
    }
}
