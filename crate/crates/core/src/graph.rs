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

//! Graph representation shared by every algorithm in the crate.
//!
//! Undirected graphs are stored as digraphs with a mirror arc for every
//! edge, so the algorithms are written once for digraphs. Weights are exact
//! rationals; internally each arc also carries its weight multiplied by the
//! least common denominator of all weights (the graph's *scale*), which lets
//! the hot loops work on plain integers without losing exactness.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact arc and path weight.
pub type Weight = Rational64;

/// A vertex, numbered from 1 as in every file and CLI interface.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct VertexId(u32);

impl VertexId {
    /// # Panics
    ///
    /// Panics if `id` is zero.
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "vertex ids are 1-based");
        VertexId(id)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn index(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub(crate) fn from_index(index: usize) -> Self {
        VertexId(index as u32 + 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: Weight,
}

/// An immutable simple (di)graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    weighted: bool,
    /// Sorted by `(from, to)`; undirected edges appear twice.
    arcs: Vec<Arc>,
    /// CSR offsets into `arcs`, length `n + 1`.
    offsets: Vec<usize>,
    scale: i64,
    scaled: Vec<i64>,
}

impl Graph {
    /// Builds a graph from `(from, to, weight)` triples with 1-based ids.
    ///
    /// For undirected graphs each triple is one edge and is expanded into a
    /// mirror pair of arcs. Unweighted graphs must use weight 1 throughout.
    pub fn new<I>(n: usize, directed: bool, weighted: bool, arcs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (u32, u32, Weight)>,
    {
        let entries = arcs
            .into_iter()
            .enumerate()
            .map(|(i, (u, v, w))| (i + 1, u64::from(u), u64::from(v), w))
            .collect();
        build(n, directed, weighted, entries)
    }

    /// Builds an unweighted graph from 1-based vertex pairs.
    pub fn unweighted<I>(n: usize, directed: bool, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        Graph::new(
            n,
            directed,
            false,
            pairs.into_iter().map(|(u, v)| (u, v, Weight::one())),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// All internal arcs, sorted by `(from, to)`. Undirected edges appear as
    /// two mirror arcs.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Number of edges (undirected) or arcs (directed), i.e. the `m` of the
    /// text format.
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.arcs.len()
        } else {
            self.arcs.len() / 2
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId::from_index)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.n
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u64::from(v.get()),
                n: self.n,
            })
        }
    }

    /// Out-arcs of `v`, in ascending order of their head.
    pub fn out_arcs(&self, v: VertexId) -> &[Arc] {
        let u = v.index();
        &self.arcs[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Out-neighbours of `v` in ascending id order, each with its arc weight.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, Weight)> + '_ {
        self.out_arcs(v).iter().map(|a| (a.to, a.weight))
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        let u = v.index();
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn max_out_degree(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    /// Weight of the arc `u -> v`, if present.
    pub fn arc_weight(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        let out = self.out_arcs(u);
        out.binary_search_by_key(&v, |a| a.to)
            .ok()
            .map(|i| out[i].weight)
    }

    /// Least common denominator of all arc weights.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Out-arcs of vertex index `u` as `(head index, weight * scale)`.
    #[inline]
    pub(crate) fn scaled_out(&self, u: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.arcs[range.clone()]
            .iter()
            .zip(&self.scaled[range])
            .map(|(a, &w)| (a.to.index(), w))
    }

    /// Heads of the out-arcs of vertex index `u`.
    #[inline]
    pub(crate) fn out_indices(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs[self.offsets[u]..self.offsets[u + 1]]
            .iter()
            .map(|a| a.to.index())
    }

    pub fn has_negative_weights(&self) -> bool {
        self.arcs.iter().any(|a| a.weight.is_negative())
    }

    pub fn has_nonpositive_weights(&self) -> bool {
        self.arcs.iter().any(|a| !a.weight.is_positive())
    }

    /// Maximum arc weight.
    pub fn max_arc_weight(&self) -> Result<Weight> {
        self.arcs
            .iter()
            .map(|a| a.weight)
            .max()
            .ok_or(Error::EmptyArcSet)
    }

    /// Weak connectivity for digraphs, ordinary connectivity for graphs.
    pub fn is_connected(&self) -> bool {
        let mut undirected = vec![Vec::new(); self.n];
        for a in &self.arcs {
            undirected[a.from.index()].push(a.to.index());
            undirected[a.to.index()].push(a.from.index());
        }
        reaches_all(self.n, |u| undirected[u].iter().copied())
    }

    pub fn is_strongly_connected(&self) -> bool {
        if !reaches_all(self.n, |u| self.out_indices(u)) {
            return false;
        }
        let mut reverse = vec![Vec::new(); self.n];
        for a in &self.arcs {
            reverse[a.to.index()].push(a.from.index());
        }
        reaches_all(self.n, |u| reverse[u].iter().copied())
    }

    /// Serialises to the line-oriented text format read by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.n,
            self.edge_count(),
            if self.directed { "directed" } else { "undirected" },
            if self.weighted { "weighted" } else { "unweighted" }
        );
        for a in &self.arcs {
            if !self.directed && a.from > a.to {
                continue;
            }
            if self.weighted {
                out.push_str(&format!("{} {} {}\n", a.from, a.to, a.weight));
            } else {
                out.push_str(&format!("{} {}\n", a.from, a.to));
            }
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        parse_graph(s)
    }
}

fn reaches_all<F, I>(n: usize, mut next: F) -> bool
where
    F: FnMut(usize) -> I,
    I: Iterator<Item = usize>,
{
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in next(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == n
}

fn build(
    n: usize,
    directed: bool,
    weighted: bool,
    entries: Vec<(usize, u64, u64, Weight)>,
) -> Result<Graph> {
    if n == 0 || n > u32::MAX as usize {
        return Err(Error::Parse {
            line: 1,
            msg: format!("vertex count {n} out of range"),
        });
    }
    let mut arcs = Vec::with_capacity(if directed { entries.len() } else { 2 * entries.len() });
    // (from, to) -> line of first occurrence, for duplicate reporting
    let mut lines = Vec::with_capacity(arcs.capacity());
    for (line, u, v, w) in entries {
        for x in [u, v] {
            if x == 0 || x > n as u64 {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop {
                line,
                vertex: u as u32,
            });
        }
        if !weighted && !w.is_one() {
            return Err(Error::Parse {
                line,
                msg: format!("unweighted graph with arc weight {w}"),
            });
        }
        let (from, to) = (VertexId(u as u32), VertexId(v as u32));
        arcs.push(Arc { from, to, weight: w });
        lines.push(line);
        if !directed {
            arcs.push(Arc {
                from: to,
                to: from,
                weight: w,
            });
            lines.push(line);
        }
    }

    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&i| (arcs[i].from, arcs[i].to, lines[i]));
    for pair in order.windows(2) {
        let (a, b) = (&arcs[pair[0]], &arcs[pair[1]]);
        if a.from == b.from && a.to == b.to {
            let (from, to) = if directed || a.from < a.to {
                (a.from, a.to)
            } else {
                (a.to, a.from)
            };
            return Err(Error::DuplicateArc {
                line: lines[pair[1]],
                from: from.0,
                to: to.0,
            });
        }
    }
    let arcs: Vec<Arc> = order.into_iter().map(|i| arcs[i].clone()).collect();

    let mut offsets = vec![0usize; n + 1];
    for a in &arcs {
        offsets[a.from.index() + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }

    let mut scale: i64 = 1;
    for a in &arcs {
        scale = scale
            .checked_mul(*a.weight.denom() / scale.gcd(a.weight.denom()))
            .ok_or(Error::Overflow)?;
    }
    let scaled = arcs
        .iter()
        .map(|a| {
            a.weight
                .numer()
                .checked_mul(scale / a.weight.denom())
                .ok_or(Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Graph {
        n,
        directed,
        weighted,
        arcs,
        offsets,
        scale,
        scaled,
    })
}

/// Parses the text format
///
/// ```text
/// n m {undirected|directed} {unweighted|weighted}
/// u v        # unweighted
/// u v w      # weighted, w an integer or p/q
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header = |msg: &str| Error::Parse {
        line: hline,
        msg: format!("{msg} in header `{header}`"),
    };
    if fields.len() != 4 {
        return Err(bad_header("expected `n m directedness weightedness`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| bad_header("invalid vertex count"))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| bad_header("invalid arc count"))?;
    let directed = match fields[2] {
        "directed" => true,
        "undirected" => false,
        _ => return Err(bad_header("expected `directed` or `undirected`")),
    };
    let weighted = match fields[3] {
        "weighted" => true,
        "unweighted" => false,
        _ => return Err(bad_header("expected `weighted` or `unweighted`")),
    };
    if n == 0 {
        return Err(bad_header("graph needs at least one vertex"));
    }

    let mut entries = Vec::with_capacity(m);
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let expected = if weighted { 3 } else { 2 };
        if parts.len() != expected {
            return Err(Error::Parse {
                line,
                msg: format!("expected {expected} fields, found {}", parts.len()),
            });
        }
        let vertex = |s: &str| {
            s.parse::<u64>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid vertex `{s}`"),
            })
        };
        let (u, v) = (vertex(parts[0])?, vertex(parts[1])?);
        let w = if weighted {
            parse_weight(parts[2]).ok_or_else(|| Error::Parse {
                line,
                msg: format!("invalid weight `{}`", parts[2]),
            })?
        } else {
            Weight::one()
        };
        entries.push((line, u, v, w));
    }
    if entries.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} arcs, found {}", entries.len()),
        });
    }
    build(n, directed, weighted, entries)
}

/// Like [`parse_graph`] but rejects zero and negative weights.
pub fn parse_positive_graph(text: &str) -> Result<Graph> {
    let g = parse_graph(text)?;
    if let Some(a) = g.arcs.iter().find(|a| !a.weight.is_positive()) {
        return Err(Error::NonPositiveWeight {
            from: a.from,
            to: a.to,
            weight: a.weight.to_string(),
        });
    }
    Ok(g)
}

fn parse_weight(s: &str) -> Option<Weight> {
    let (numer, denom) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<i64>().ok()?, q.parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    if denom <= 0 {
        return None;
    }
    Some(Weight::new(numer, denom))
}

/// A simple path (or dipath) with its total weight.
///
/// Values are validated on construction: consecutive vertices are joined by
/// an arc, no vertex repeats, and the weight is the sum of the arc weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    vertices: Vec<VertexId>,
    weight: Weight,
}

impl Path {
    pub fn new(g: &Graph, vertices: Vec<VertexId>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; g.n()];
        let mut weight = Weight::zero();
        for (i, &v) in vertices.iter().enumerate() {
            g.check_vertex(v)?;
            if std::mem::replace(&mut seen[v.index()], true) {
                return Err(Error::InvalidPath(format!("vertex {v} repeats")));
            }
            if i > 0 {
                let u = vertices[i - 1];
                weight += g
                    .arc_weight(u, v)
                    .ok_or_else(|| Error::InvalidPath(format!("no arc {u} -> {v}")))?;
            }
        }
        Ok(Path { vertices, weight })
    }

    /// The zero-length path `(v)`.
    pub fn trivial(v: VertexId) -> Path {
        Path {
            vertices: vec![v],
            weight: Weight::zero(),
        }
    }

    /// Trusted constructor for paths produced by the algorithms. The raw
    /// weight is in units of `1 / scale`.
    pub(crate) fn from_scaled(vertices: Vec<VertexId>, raw: i64, scale: i64) -> Path {
        Path {
            vertices,
            weight: Weight::new(raw, scale),
        }
    }

    /// Unchecked constructor; `weight` must be the sum of the arc weights.
    pub(crate) fn from_parts(vertices: Vec<VertexId>, weight: Weight) -> Path {
        Path { vertices, weight }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.vertices
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    /// Number of arcs.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Shorthand for building vertex sequences in tests and examples.
pub fn vertex_seq(ids: &[u32]) -> Vec<VertexId> {
    ids.iter().map(|&i| VertexId::new(i)).collect()
}
