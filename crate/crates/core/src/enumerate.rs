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

//! Per-pair path enumeration driven by a LIFO stack of partial paths.
//!
//! A partial path `(s, ..., u)` is popped and replaced by its one-arc
//! extensions, pushed in decreasing order of the new vertex so that they are
//! popped, and completed paths emitted, in increasing lexicographic order.
//! Paths reaching `t` are emitted immediately and never re-enter the stack.
//!
//! For geodesics the distance matrix weeds out duds: `(s, ..., u)` of weight
//! `w` is extended by `(u, x)` only if `w + w(u, x) + D(x, t) = D(s, t)`.

use std::borrow::Cow;

use crate::distances::DistanceMatrix;
use crate::error::Result;
use crate::graph::{Graph, Path, VertexId, Weight};

/// Upper bound on the paths produced by [`enumerate_paths_upto`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EnumerationBound {
    /// At most this many arcs.
    Length(usize),
    /// Total weight at most this value. At unit weights this is the same as
    /// [`EnumerationBound::Length`].
    Weight(Weight),
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    /// Length of the stacked path's prefix already held in `path`.
    depth: u32,
    vertex: u32,
    weight: i64,
}

#[derive(Clone, Debug)]
enum Mode<'a> {
    Geodesics(Cow<'a, DistanceMatrix>),
    MaxLength(usize),
    /// Raw (scaled) weight limit; `prune` is false when negative arcs make
    /// partial weights meaningless as a cut-off.
    MaxWeight { limit: i64, prune: bool },
}

/// Reusable LIFO-stack DFS from `s` to `t`.
///
/// Each stack entry stands for the partial path `path[..depth] + vertex`;
/// the shared `path` buffer holds the partial path last popped, so an entry
/// costs constant space while the stack still holds whole partial paths.
#[derive(Debug)]
pub struct StackDfs<'a> {
    g: &'a Graph,
    mode: Mode<'a>,
    target: usize,
    goal: Option<i64>,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
    stack: Vec<Entry>,
    children: Vec<Entry>,
    peak_stack: usize,
}

impl<'a> StackDfs<'a> {
    /// Enumerator for the geodesics of `g` under distance matrix `d`.
    pub fn geodesics(g: &'a Graph, d: &'a DistanceMatrix) -> Result<Self> {
        let d = d.aligned_to(g)?;
        Ok(Self::with_mode(g, Mode::Geodesics(d)))
    }

    /// Enumerator for all simple paths within `bound`.
    pub fn bounded(g: &'a Graph, bound: EnumerationBound) -> Self {
        let mode = match bound {
            EnumerationBound::Length(k) => Mode::MaxLength(k),
            EnumerationBound::Weight(w) => {
                let raw = (w * Weight::from_integer(g.scale())).floor().to_integer();
                Mode::MaxWeight {
                    limit: raw,
                    prune: !g.has_negative_weights(),
                }
            }
        };
        Self::with_mode(g, mode)
    }

    fn with_mode(g: &'a Graph, mode: Mode<'a>) -> Self {
        StackDfs {
            g,
            mode,
            target: 0,
            goal: None,
            on_path: vec![false; g.n()],
            path: Vec::new(),
            stack: Vec::new(),
            children: Vec::new(),
            peak_stack: 0,
        }
    }

    /// Restarts the enumeration for the pair `(s, t)`.
    pub fn reset(&mut self, s: VertexId, t: VertexId) -> Result<()> {
        self.g.check_vertex(s)?;
        self.g.check_vertex(t)?;
        for v in self.path.drain(..) {
            self.on_path[v.index()] = false;
        }
        self.stack.clear();
        self.target = t.index();
        self.goal = match &self.mode {
            Mode::Geodesics(d) => d.raw(s.index(), t.index()),
            _ => None,
        };
        if matches!(self.mode, Mode::Geodesics(_)) && self.goal.is_none() {
            return Ok(());
        }
        self.stack.push(Entry {
            depth: 0,
            vertex: s.index() as u32,
            weight: 0,
        });
        self.peak_stack = self.peak_stack.max(1);
        Ok(())
    }

    /// Largest stack size seen since construction.
    pub fn peak_stack(&self) -> usize {
        self.peak_stack
    }

    /// Next completed path and its raw weight (in units of `1 / scale`).
    /// The slice is valid until the next call.
    pub fn next_raw(&mut self) -> Option<(&[VertexId], i64)> {
        while let Some(e) = self.stack.pop() {
            for v in self.path.drain(e.depth as usize..) {
                self.on_path[v.index()] = false;
            }
            let u = e.vertex as usize;
            self.path.push(VertexId::from_index(u));
            self.on_path[u] = true;

            if u == self.target {
                if self.accepts_complete(e.weight) {
                    return Some((&self.path, e.weight));
                }
                continue;
            }
            self.push_children(u, e);
        }
        None
    }

    fn accepts_complete(&self, weight: i64) -> bool {
        match self.mode {
            Mode::Geodesics(_) => Some(weight) == self.goal,
            Mode::MaxLength(k) => self.path.len() - 1 <= k,
            Mode::MaxWeight { limit, .. } => weight <= limit,
        }
    }

    fn push_children(&mut self, u: usize, e: Entry) {
        let depth = self.path.len();
        let t = self.target;
        self.children.clear();
        for (x, w) in self.g.scaled_out(u) {
            if self.on_path[x] {
                continue;
            }
            let weight = e.weight + w;
            let keep = match &self.mode {
                Mode::Geodesics(d) => {
                    d.raw(x, t).is_some_and(|rest| Some(weight + rest) == self.goal)
                }
                Mode::MaxLength(k) => depth <= *k,
                Mode::MaxWeight { limit, prune } => !*prune || weight <= *limit,
            };
            if keep {
                self.children.push(Entry {
                    depth: depth as u32,
                    vertex: x as u32,
                    weight,
                });
            }
        }
        self.stack.extend(self.children.drain(..).rev());
        self.peak_stack = self.peak_stack.max(self.stack.len());
    }

    fn collect(&mut self) -> Vec<Path> {
        let scale = self.g.scale();
        let mut out = Vec::new();
        while let Some((p, w)) = self.next_raw() {
            out.push(Path::from_scaled(p.to_vec(), w, scale));
        }
        out
    }
}

/// All simple `s`–`t` paths within `bound`, in increasing lexicographic
/// order. An empty result is a valid answer (for instance when the bound is
/// below `dist(s, t)`).
pub fn enumerate_paths_upto(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    bound: EnumerationBound,
) -> Result<Vec<Path>> {
    let mut dfs = StackDfs::bounded(g, bound);
    dfs.reset(s, t)?;
    Ok(dfs.collect())
}

/// All `s`–`t` geodesics in increasing lexicographic order; `[(s)]` when
/// `s = t` and empty when `t` is unreachable.
pub fn enumerate_geodesics_st(
    g: &Graph,
    d: &DistanceMatrix,
    s: VertexId,
    t: VertexId,
) -> Result<Vec<Path>> {
    let mut dfs = StackDfs::geodesics(g, d)?;
    dfs.reset(s, t)?;
    Ok(dfs.collect())
}

/// Streams the geodesics of every ordered pair `s != t`, pairs in ascending
/// `(s, t)` order.
pub struct AllPairs<'a> {
    dfs: StackDfs<'a>,
    n: usize,
    s: usize,
    t: usize,
}

impl<'a> AllPairs<'a> {
    /// Advances to the next ordered pair; false when exhausted.
    fn advance(&mut self) -> bool {
        loop {
            self.t += 1;
            if self.t >= self.n {
                self.t = 0;
                self.s += 1;
            }
            if self.s >= self.n {
                return false;
            }
            if self.s != self.t {
                self.dfs
                    .reset(VertexId::from_index(self.s), VertexId::from_index(self.t))
                    .expect("indices in range");
                return true;
            }
        }
    }

    /// Calls `f` for every geodesic without allocating a [`Path`]. The raw
    /// weight is in units of `1 / scale`.
    pub fn for_each_raw<F>(mut self, mut f: F)
    where
        F: FnMut(&[VertexId], i64),
    {
        loop {
            while let Some((p, w)) = self.dfs.next_raw() {
                f(p, w);
            }
            if !self.advance() {
                return;
            }
        }
    }

    pub fn peak_stack(&self) -> usize {
        self.dfs.peak_stack()
    }
}

impl Iterator for AllPairs<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        let scale = self.dfs.g.scale();
        loop {
            if let Some((p, w)) = self.dfs.next_raw() {
                return Some(Path::from_scaled(p.to_vec(), w, scale));
            }
            if !self.advance() {
                return None;
            }
        }
    }
}

/// The iterated per-pair baseline: geodesics of all ordered pairs.
pub fn iterate_all_pairs<'a>(g: &'a Graph, d: &'a DistanceMatrix) -> Result<AllPairs<'a>> {
    // the stack starts empty at pair (0, 0), so the first advance lands on (0, 1)
    Ok(AllPairs {
        dfs: StackDfs::geodesics(g, d)?,
        n: g.n(),
        s: 0,
        t: 0,
    })
}
