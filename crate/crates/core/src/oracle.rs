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

//! Brute-force reference implementations for small graphs.
//!
//! Nothing here reuses the traversal code of the other modules: paths are
//! found by plain recursion over the arc list and weights are summed as
//! rationals. Results are sorted, so they do not depend on traversal order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId, Weight};

pub const DEFAULT_CAP: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap }
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if g.n() > self.cap {
            return Err(Error::CapExceeded {
                n: g.n(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Every simple `s`–`t` path, sorted lexicographically.
    pub fn all_paths(&self, g: &Graph, s: VertexId, t: VertexId) -> Result<Vec<Path>> {
        self.check(g)?;
        let adj = adjacency(g);
        let mut found = Vec::new();
        let mut trail = vec![s];
        walk(&adj, t, &mut trail, Weight::zero(), &mut found);
        found.sort();
        Ok(found)
    }

    /// For every ordered pair `s != t`, the minimum-weight simple paths,
    /// sorted lexicographically.
    pub fn geodesics(&self, g: &Graph) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        for (_, paths) in self.geodesics_by_pair(g)? {
            out.extend(paths);
        }
        out.sort();
        Ok(out)
    }

    /// Geodesics grouped by ordered pair; unreachable pairs are absent.
    pub fn geodesics_by_pair(&self, g: &Graph) -> Result<BTreeMap<(VertexId, VertexId), Vec<Path>>> {
        self.check(g)?;
        let mut out = BTreeMap::new();
        for s in g.vertices() {
            for t in g.vertices().filter(|&t| t != s) {
                let paths = self.all_paths(g, s, t)?;
                let Some(best) = paths.iter().map(Path::weight).min() else {
                    continue;
                };
                out.insert(
                    (s, t),
                    paths.into_iter().filter(|p| p.weight() == best).collect(),
                );
            }
        }
        Ok(out)
    }

    /// Minimum simple-path weight for every pair (`None` if unreachable).
    pub fn distances(&self, g: &Graph) -> Result<Vec<Vec<Option<Weight>>>> {
        self.check(g)?;
        let mut rows = vec![vec![None; g.n()]; g.n()];
        for s in g.vertices() {
            for t in g.vertices() {
                rows[s.index()][t.index()] = if s == t {
                    Some(Weight::zero())
                } else {
                    self.all_paths(g, s, t)?.iter().map(Path::weight).min()
                };
            }
        }
        Ok(rows)
    }
}

pub fn brute_force_all_paths(g: &Graph, s: VertexId, t: VertexId) -> Result<Vec<Path>> {
    Oracle::default().all_paths(g, s, t)
}

pub fn brute_force_geodesics(g: &Graph) -> Result<Vec<Path>> {
    Oracle::default().geodesics(g)
}

fn adjacency(g: &Graph) -> Vec<Vec<(VertexId, Weight)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for a in g.arcs() {
        adj[(a.from.get() - 1) as usize].push((a.to, a.weight));
    }
    adj
}

fn walk(
    adj: &[Vec<(VertexId, Weight)>],
    t: VertexId,
    trail: &mut Vec<VertexId>,
    weight: Weight,
    found: &mut Vec<Path>,
) {
    let u = *trail.last().unwrap();
    if u == t {
        found.push(Path::from_parts(trail.clone(), weight));
        return;
    }
    for &(x, w) in &adj[(u.get() - 1) as usize] {
        if !trail.contains(&x) {
            trail.push(x);
            walk(adj, t, trail, weight + w, found);
            trail.pop();
        }
    }
}
