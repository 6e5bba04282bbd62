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

//! All geodesics of a digraph with positive integer arc weights, built by
//! weight level.
//!
//! `Geo[k]` is the set of geodesics of weight exactly `k`. Every geodesic
//! with at least two arcs is the unique right-extension `Q + (c)` of the
//! geodesic `Q` obtained by dropping its last vertex, and `Q` lies in some
//! `Geo[h]` with `k - mu <= h < k`, `mu` being the largest arc weight. So
//! `Geo[k]` is built by scanning `Geo[k-1]`, `Geo[k-2]`, ..., `Geo[k-mu]`
//! in that order, extending each `Q = (s, ..., b)` by every out-arc `(b, c)`
//! of weight `k - h` with `D(s, c) = k`, and finally seeding with the arcs
//! `(s, t)` of weight `k` that are geodesics themselves. Once `mu`
//! consecutive levels are empty no later level can be populated.
//!
//! Only the last `mu` levels are kept; finished geodesics stream to a
//! [`GeodesicSink`].

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::distances::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId, Weight};

/// Receives geodesics as they are produced.
pub trait GeodesicSink {
    fn accept(&mut self, path: &[VertexId], weight: u64);

    /// Called once per level after its geodesics were passed to
    /// [`accept`](GeodesicSink::accept). `retained_levels` is the number of
    /// levels held in memory at that point, this one included.
    fn level_finished(&mut self, _k: u64, _size: usize, _retained_levels: usize) {}
}

impl<F> GeodesicSink for F
where
    F: FnMut(&[VertexId], u64),
{
    fn accept(&mut self, path: &[VertexId], weight: u64) {
        self(path, weight)
    }
}

/// Counts and discards.
#[derive(Clone, Debug, Default)]
pub struct CountingSink {
    pub count: u64,
}

impl GeodesicSink for CountingSink {
    fn accept(&mut self, _path: &[VertexId], _weight: u64) {
        self.count += 1;
    }
}

/// Keeps every level, empty ones included, in order of `k`.
#[derive(Clone, Debug, Default)]
pub struct LevelCollector {
    levels: Vec<GeoLevel>,
    pending: Option<GeoLevel>,
}

impl LevelCollector {
    pub fn levels(&self) -> &[GeoLevel] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<GeoLevel> {
        self.levels
    }

    /// `Geo[k]`, if level `k` was built.
    pub fn level(&self, k: u64) -> Option<&GeoLevel> {
        self.levels.iter().find(|l| l.k == k)
    }
}

impl GeodesicSink for LevelCollector {
    fn accept(&mut self, path: &[VertexId], weight: u64) {
        self.pending
            .get_or_insert_with(|| GeoLevel::new(weight))
            .push(path);
    }

    fn level_finished(&mut self, k: u64, _size: usize, _retained_levels: usize) {
        let level = self.pending.take().unwrap_or_else(|| GeoLevel::new(k));
        debug_assert_eq!(level.k, k);
        self.levels.push(level);
    }
}

/// `Geo[k]`: geodesics of weight exactly `k`, in construction order.
///
/// Paths are stored back to back in one buffer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoLevel {
    k: u64,
    vertices: Vec<VertexId>,
    starts: Vec<usize>,
}

impl GeoLevel {
    pub fn new(k: u64) -> Self {
        GeoLevel {
            k,
            vertices: Vec::new(),
            starts: vec![0],
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> &[VertexId] {
        &self.vertices[self.starts[i]..self.starts[i + 1]]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[VertexId]> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn push(&mut self, path: &[VertexId]) {
        self.vertices.extend_from_slice(path);
        self.starts.push(self.vertices.len());
    }

    fn push_extended(&mut self, prefix: &[VertexId], next: VertexId) {
        self.vertices.extend_from_slice(prefix);
        self.vertices.push(next);
        self.starts.push(self.vertices.len());
    }

    fn append(&mut self, other: GeoLevel) {
        let base = self.vertices.len();
        self.vertices.extend(other.vertices);
        self.starts
            .extend(other.starts[1..].iter().map(|&s| s + base));
    }

    pub fn to_paths(&self) -> Vec<Path> {
        self.iter()
            .map(|p| Path::from_scaled(p.to_vec(), self.k as i64, 1))
            .collect()
    }

    /// Total number of stored vertices, a proxy for memory use.
    pub fn stored_vertices(&self) -> usize {
        self.vertices.len()
    }
}

/// A level split into blocks `Geo[s, t]` by endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeoPartition {
    blocks: BTreeMap<(VertexId, VertexId), Vec<Path>>,
}

impl GeoPartition {
    /// `Geo[s, t]`; empty when the pair has no geodesic in this level.
    pub fn get(&self, s: VertexId, t: VertexId) -> &[Path] {
        self.blocks.get(&(s, t)).map_or(&[], Vec::as_slice)
    }

    /// Number of nonempty blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(VertexId, VertexId), &Vec<Path>)> {
        self.blocks.iter()
    }
}

/// Groups a level by `(first, last)` vertex. Blocks keep construction order.
pub fn partition_by_endpoints(level: &GeoLevel) -> GeoPartition {
    let mut blocks: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    for p in level.iter() {
        blocks
            .entry((p[0], p[p.len() - 1]))
            .or_default()
            .push(Path::from_scaled(p.to_vec(), level.k as i64, 1));
    }
    GeoPartition { blocks }
}

#[derive(Clone, Debug, Default)]
pub struct ApagOptions {
    /// Extend the parents of a level on the rayon pool. Output order is the
    /// same as the sequential run.
    pub parallel: bool,
    /// Keep every level instead of the last `mu` (debugging aid; the
    /// recursion still reads only the last `mu`).
    pub retain_all_levels: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApagReport {
    /// Number of geodesics `N` (trivial one-vertex paths excluded).
    pub total: u64,
    /// Levels built, trailing empty ones included.
    pub levels_built: u64,
    /// Heaviest nonempty level (0 if there is none).
    pub max_level_nonempty: u64,
    /// Largest arc weight.
    pub mu: u64,
    /// Most levels held in memory after any level was finished.
    pub peak_retained_levels: usize,
    n: usize,
    pair_counts: Vec<u64>,
}

impl ApagReport {
    /// `N_st`, the number of `s`–`t` geodesics.
    pub fn pair_count(&self, s: VertexId, t: VertexId) -> u64 {
        self.pair_counts[s.index() * self.n + t.index()]
    }

    /// Nonzero `N_st` in ascending `(s, t)` order.
    pub fn pair_counts(&self) -> impl Iterator<Item = ((VertexId, VertexId), u64)> + '_ {
        self.pair_counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(i, &c)| {
                (
                    (VertexId::from_index(i / self.n), VertexId::from_index(i % self.n)),
                    c,
                )
            })
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .pair_counts()
            .map(|((s, t), c)| json!({ "s": s, "t": t, "count": c }))
            .collect();
        json!({
            "geodesics": self.total,
            "levels_built": self.levels_built,
            "max_level_nonempty": self.max_level_nonempty,
            "mu": self.mu,
            "peak_retained_levels": self.peak_retained_levels,
            "pairs": pairs,
        })
    }
}

/// Positive integer arc weights, or the first offending arc.
fn integer_weights(g: &Graph) -> Result<()> {
    for a in g.arcs() {
        if !a.weight.is_positive() {
            return Err(Error::NonPositiveWeight {
                from: a.from,
                to: a.to,
                weight: a.weight.to_string(),
            });
        }
        if !a.weight.is_integer() {
            return Err(Error::NonIntegerWeight {
                from: a.from,
                to: a.to,
                weight: a.weight.to_string(),
            });
        }
    }
    Ok(())
}

/// Enumerates every geodesic of `g` once, streaming them to `sink` level by
/// level. `d` must be the weighted distance matrix of `g`.
pub fn fast_apag<S: GeodesicSink>(g: &Graph, d: &DistanceMatrix, sink: &mut S) -> Result<ApagReport> {
    fast_apag_with(g, d, sink, &ApagOptions::default())
}

pub fn fast_apag_with<S: GeodesicSink>(
    g: &Graph,
    d: &DistanceMatrix,
    sink: &mut S,
    opts: &ApagOptions,
) -> Result<ApagReport> {
    integer_weights(g)?;
    let d = d.aligned_to(g)?;
    let n = g.n();
    let mu = g
        .max_arc_weight()
        .map_or(1, |w| w.to_integer().to_u64().expect("positive weight"));
    let max_dist = d.max_finite().map_or(0, |w: Weight| w.to_integer()) as u64;

    let mut seeds: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
    for a in g.arcs() {
        let (s, t) = (a.from.index(), a.to.index());
        let w = a.weight.to_integer();
        if d.raw(s, t) == Some(w) {
            seeds.entry(w as u64).or_default().push((s, t));
        }
    }

    let mut window: VecDeque<GeoLevel> = VecDeque::with_capacity(mu as usize + 1);
    let mut pair_counts = vec![0u64; n * n];
    let mut total = 0u64;
    let mut max_level_nonempty = 0;
    let mut peak_retained_levels = 0;
    let mut empty_run = 0;
    let mut k = 0u64;

    while empty_run < mu {
        k += 1;
        debug_assert!(k <= max_dist + mu, "level index outran the distance bound");
        let mut level = GeoLevel::new(k);
        for h in (k.saturating_sub(mu).max(1)..k).rev() {
            let parent = &window[window.len() - (k - h) as usize];
            let step = (k - h) as i64;
            if opts.parallel {
                level.append(extend_parallel(g, &d, parent, step, k as i64));
            } else {
                extend_level(g, &d, parent, 0..parent.len(), step, k as i64, &mut level);
            }
        }
        if let Some(arcs) = seeds.get(&k) {
            for &(s, t) in arcs {
                level.push(&[VertexId::from_index(s), VertexId::from_index(t)]);
            }
        }

        for p in level.iter() {
            sink.accept(p, k);
            pair_counts[p[0].index() * n + p[p.len() - 1].index()] += 1;
        }
        total += level.len() as u64;
        let size = level.len();
        if size == 0 {
            empty_run += 1;
        } else {
            empty_run = 0;
            max_level_nonempty = k;
        }

        if !opts.retain_all_levels && window.len() as u64 == mu {
            window.pop_front();
        }
        window.push_back(level);
        peak_retained_levels = peak_retained_levels.max(window.len());
        sink.level_finished(k, size, window.len());
    }

    debug_assert_eq!(max_level_nonempty, max_dist);
    Ok(ApagReport {
        total,
        levels_built: k,
        max_level_nonempty,
        mu,
        peak_retained_levels,
        n,
        pair_counts,
    })
}

/// Right-extends the parents `range` of `parent` by arcs of weight `step`,
/// keeping the extensions that reach distance `k`.
fn extend_level(
    g: &Graph,
    d: &DistanceMatrix,
    parent: &GeoLevel,
    range: std::ops::Range<usize>,
    step: i64,
    k: i64,
    out: &mut GeoLevel,
) {
    for i in range {
        let q = parent.get(i);
        let s = q[0].index();
        let b = q[q.len() - 1].index();
        for (c, w) in g.scaled_out(b) {
            if w == step && d.raw(s, c) == Some(k) {
                let c = VertexId::from_index(c);
                // positive weights: D(s, c) = k rules out c already on q
                debug_assert!(!q.contains(&c), "extension repeats a vertex");
                out.push_extended(q, c);
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn extend_parallel(g: &Graph, d: &DistanceMatrix, parent: &GeoLevel, step: i64, k: i64) -> GeoLevel {
    use rayon::prelude::*;

    const CHUNK: usize = 4096;
    let chunks: Vec<GeoLevel> = (0..parent.len().div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut out = GeoLevel::new(k as u64);
            let range = c * CHUNK..((c + 1) * CHUNK).min(parent.len());
            extend_level(g, d, parent, range, step, k, &mut out);
            out
        })
        .collect();
    let mut level = GeoLevel::new(k as u64);
    for c in chunks {
        level.append(c);
    }
    level
}

#[cfg(not(feature = "parallel"))]
fn extend_parallel(g: &Graph, d: &DistanceMatrix, parent: &GeoLevel, step: i64, k: i64) -> GeoLevel {
    let mut level = GeoLevel::new(k as u64);
    extend_level(g, d, parent, 0..parent.len(), step, k, &mut level);
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::{distance_matrix_bfs, floyd_warshall};
    use crate::fixtures::{g2, g2_vertex as v, g2_word, p3};
    use crate::graph::{parse_graph, vertex_seq};

    fn g2_levels() -> (Vec<GeoLevel>, ApagReport) {
        let g = g2();
        let d = floyd_warshall(&g).unwrap();
        let mut c = LevelCollector::default();
        let report = fast_apag(&g, &d, &mut c).unwrap();
        (c.into_levels(), report)
    }

    fn words(level: &GeoLevel) -> Vec<String> {
        level.iter().map(g2_word).collect()
    }

    #[test]
    fn g2_levels_in_construction_order() {
        let (levels, report) = g2_levels();
        let expected: [&[&str]; 10] = [
            &["bc", "db", "ed", "fc"],
            &["dbc", "edb", "ba", "de", "ec", "ef"],
            &["dba", "ad", "be", "da"],
            &["adb", "bed", "edba", "def", "eda"],
            &["adbc", "ade", "bef"],
            &[],
            &["adef"],
            &[],
            &[],
            &[],
        ];
        assert_eq!(levels.len(), 10);
        for (level, exp) in levels.iter().zip(expected) {
            assert_eq!(words(level), exp, "Geo[{}]", level.k());
        }
        assert_eq!(report.total, 23);
        assert_eq!(report.levels_built, 10);
        assert_eq!(report.max_level_nonempty, 7);
        assert_eq!(report.mu, 3);
        assert_eq!(report.peak_retained_levels, 3);
        assert_eq!(report.pair_count(v('e'), v('a')), 2);
        assert_eq!(report.pair_count(v('c'), v('a')), 0);
        assert_eq!(report.pair_counts().map(|(_, c)| c).sum::<u64>(), 23);
    }

    #[test]
    fn p3_levels() {
        let g = p3();
        let d = distance_matrix_bfs(&g);
        let mut c = LevelCollector::default();
        let report = fast_apag(&g, &d, &mut c).unwrap();
        let seqs: Vec<Vec<Vec<VertexId>>> = c
            .levels()
            .iter()
            .map(|l| l.iter().map(<[VertexId]>::to_vec).collect())
            .collect();
        assert_eq!(
            seqs,
            vec![
                vec![vertex_seq(&[1, 2]), vertex_seq(&[2, 1]), vertex_seq(&[2, 3]), vertex_seq(&[3, 2])],
                vec![vertex_seq(&[1, 2, 3]), vertex_seq(&[3, 2, 1])],
                vec![],
            ]
        );
        assert_eq!(report.total, 6);
        assert_eq!(report.levels_built, 3);
    }

    #[test]
    fn isolated_edges() {
        let g = Graph::unweighted(4, false, [(1, 2), (3, 4)]).unwrap();
        let d = distance_matrix_bfs(&g);
        let mut c = LevelCollector::default();
        let report = fast_apag(&g, &d, &mut c).unwrap();
        assert_eq!(report.total, 4);
        assert_eq!(c.levels()[0].len(), 4);
        assert!(c.levels()[1].is_empty());
    }

    #[test]
    fn no_arcs() {
        let g = Graph::unweighted(3, true, []).unwrap();
        let d = distance_matrix_bfs(&g);
        let report = fast_apag(&g, &d, &mut CountingSink::default()).unwrap();
        assert_eq!(report.total, 0);
        assert_eq!(report.levels_built, 1);
    }

    #[test]
    fn rejects_bad_weights() {
        let g = parse_graph("2 1 directed weighted\n1 2 1/2").unwrap();
        let d = floyd_warshall(&g).unwrap();
        assert!(matches!(
            fast_apag(&g, &d, &mut CountingSink::default()),
            Err(Error::NonIntegerWeight { .. })
        ));
        let g = parse_graph("2 1 directed weighted\n1 2 -2").unwrap();
        let d = floyd_warshall(&g).unwrap();
        assert!(matches!(
            fast_apag(&g, &d, &mut CountingSink::default()),
            Err(Error::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn partitions() {
        let (levels, _) = g2_levels();
        let p = partition_by_endpoints(&levels[3]);
        assert_eq!(p.len(), 4);
        let block = |s, t| -> Vec<String> {
            p.get(v(s), v(t)).iter().map(|p| g2_word(p.vertices())).collect()
        };
        assert_eq!(block('a', 'b'), ["adb"]);
        assert_eq!(block('b', 'd'), ["bed"]);
        assert_eq!(block('e', 'a'), ["edba", "eda"]);
        assert_eq!(block('d', 'f'), ["def"]);
        assert!(partition_by_endpoints(&levels[5]).is_empty());

        let g = p3();
        let d = distance_matrix_bfs(&g);
        let mut c = LevelCollector::default();
        fast_apag(&g, &d, &mut c).unwrap();
        let p = partition_by_endpoints(c.level(2).unwrap());
        let one = VertexId::new(1);
        let three = VertexId::new(3);
        assert_eq!(p.len(), 2);
        assert_eq!(p.get(one, three)[0].vertices(), vertex_seq(&[1, 2, 3]));
        assert_eq!(p.get(three, one)[0].vertices(), vertex_seq(&[3, 2, 1]));
    }

    #[test]
    fn parallel_and_retained_runs_match() {
        let g = g2();
        let d = floyd_warshall(&g).unwrap();
        let mut base = LevelCollector::default();
        let r0 = fast_apag(&g, &d, &mut base).unwrap();
        for opts in [
            ApagOptions { parallel: true, retain_all_levels: false },
            ApagOptions { parallel: false, retain_all_levels: true },
        ] {
            let mut c = LevelCollector::default();
            let r = fast_apag_with(&g, &d, &mut c, &opts).unwrap();
            assert_eq!(c.levels(), base.levels());
            assert_eq!(r.total, r0.total);
        }
    }

    #[test]
    fn closure_sink() {
        let g = g2();
        let d = floyd_warshall(&g).unwrap();
        let mut heaviest = 0;
        let mut sink = |_: &[VertexId], w: u64| heaviest = heaviest.max(w);
        fast_apag(&g, &d, &mut sink).unwrap();
        assert_eq!(heaviest, 7);
    }
}
