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

//! Seeded random graphs and the benchmark comparing the level recursion
//! against iterated per-pair enumeration.
//!
//! Random graphs use ChaCha8 (`rand_chacha`) seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`. The `m` edges are drawn with
//! `rand::seq::index::sample` over the candidate pairs listed in
//! lexicographic order (`u < v` for graphs, `u != v` for digraphs), sorted,
//! and then given weights `gen_range(1..=wmax)` in that order.

use std::io::Write;
use std::time::Instant;

use num_traits::One;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apag::{fast_apag_with, ApagOptions, CountingSink};
use crate::distances::{distance_matrix, DistanceMatrix};
use crate::enumerate::iterate_all_pairs;
use crate::error::{Error, Result};
use crate::graph::{Graph, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Level recursion over `Geo[k]`.
    Apag,
    /// Per-pair stack enumeration over all ordered pairs.
    Pairs,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "apag" => Ok(Method::Apag),
            "pairs" => Ok(Method::Pairs),
            other => Err(Error::InvalidConfig(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub directed: bool,
    /// Largest arc weight; 1 gives an unweighted graph.
    pub wmax: u32,
    pub methods: Vec<Method>,
    /// Resample until the graph is (strongly) connected.
    pub connected: bool,
    pub max_retries: usize,
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n: 100,
            m: 300,
            seed: 0,
            directed: false,
            wmax: 1,
            methods: vec![Method::Apag, Method::Pairs],
            connected: false,
            max_retries: 100,
            parallel: false,
        }
    }
}

impl BenchConfig {
    pub fn max_edges(&self) -> usize {
        let pairs = self.n * self.n.saturating_sub(1);
        if self.directed {
            pairs
        } else {
            pairs / 2
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        if self.m > self.max_edges() {
            return Err(Error::InvalidConfig(format!(
                "m = {} exceeds {} possible {}",
                self.m,
                self.max_edges(),
                if self.directed { "arcs" } else { "edges" }
            )));
        }
        if self.wmax < 1 {
            return Err(Error::InvalidConfig("wmax must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no method selected".into()));
        }
        Ok(())
    }
}

/// Uniformly random simple (di)graph with exactly `m` arcs or edges.
pub fn random_graph(cfg: &BenchConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let attempts = if cfg.connected { cfg.max_retries.max(1) } else { 1 };
    for _ in 0..attempts {
        let g = sample_graph(cfg, &mut rng)?;
        if !cfg.connected {
            return Ok(g);
        }
        let ok = if cfg.directed {
            g.is_strongly_connected()
        } else {
            g.is_connected()
        };
        if ok {
            return Ok(g);
        }
    }
    Err(Error::RetriesExhausted(attempts))
}

fn sample_graph(cfg: &BenchConfig, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let n = cfg.n;
    let mut picked = index::sample(rng, cfg.max_edges(), cfg.m).into_vec();
    picked.sort_unstable();
    let mut arcs = Vec::with_capacity(cfg.m);
    for i in picked {
        let (u, v) = if cfg.directed {
            let u = i / (n - 1);
            let r = i % (n - 1);
            (u, if r < u { r } else { r + 1 })
        } else {
            undirected_pair(n, i)
        };
        let w = if cfg.wmax > 1 {
            Weight::from_integer(i64::from(rng.gen_range(1..=cfg.wmax)))
        } else {
            Weight::one()
        };
        arcs.push((u as u32 + 1, v as u32 + 1, w));
    }
    Graph::new(n, cfg.directed, cfg.wmax > 1, arcs)
}

/// The `i`-th pair `(u, v)`, `u < v`, in lexicographic order (0-based).
fn undirected_pair(n: usize, mut i: usize) -> (usize, usize) {
    let mut u = 0;
    while i >= n - 1 - u {
        i -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + i)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    /// Largest finite distance.
    pub maxdist: Weight,
    pub geodesics: u64,
    pub t_apag_s: Option<f64>,
    pub t_pairs_s: Option<f64>,
    /// Set only when both methods ran.
    pub agree: Option<bool>,
    /// Most `Geo[k]` levels held at once by the level recursion.
    pub peak_retained_levels: Option<usize>,
    pub mu: Option<u64>,
}

impl BenchRow {
    pub const CSV_HEADER: [&'static str; 7] =
        ["n", "m", "maxdist", "geodesics", "t_apag_s", "t_pairs_s", "agree"];

    pub fn csv_record(&self) -> [String; 7] {
        let secs = |t: Option<f64>| t.map_or_else(String::new, |t| format!("{t:.6}"));
        [
            self.n.to_string(),
            self.m.to_string(),
            self.maxdist.to_string(),
            self.geodesics.to_string(),
            secs(self.t_apag_s),
            secs(self.t_pairs_s),
            self.agree.map_or_else(String::new, |a| a.to_string()),
        ]
    }

    /// Writes a header line and this row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER).map_err(csv_err)?;
        w.write_record(self.csv_record()).map_err(csv_err)?;
        w.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Generates the configured graph and benchmarks it.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchRow> {
    let g = random_graph(cfg)?;
    run_on_graph(&g, &cfg.methods, cfg.parallel)
}

/// Benchmarks the selected methods on `g`, timing each one separately.
/// Geodesics are counted and discarded.
pub fn run_on_graph(g: &Graph, methods: &[Method], parallel: bool) -> Result<BenchRow> {
    let d: DistanceMatrix = distance_matrix(g)?;
    let mut row = BenchRow {
        n: g.n(),
        m: g.edge_count(),
        maxdist: d.max_finite().unwrap_or_default(),
        geodesics: 0,
        t_apag_s: None,
        t_pairs_s: None,
        agree: None,
        peak_retained_levels: None,
        mu: None,
    };
    let mut apag_count = None;
    let mut pairs_count = None;
    for method in methods {
        match method {
            Method::Apag => {
                let opts = ApagOptions {
                    parallel,
                    ..ApagOptions::default()
                };
                let start = Instant::now();
                let mut sink = CountingSink::default();
                let report = fast_apag_with(g, &d, &mut sink, &opts)?;
                row.t_apag_s = Some(start.elapsed().as_secs_f64());
                debug_assert_eq!(sink.count, report.total);
                row.peak_retained_levels = Some(report.peak_retained_levels);
                row.mu = Some(report.mu);
                apag_count = Some(report.total);
            }
            Method::Pairs => {
                let start = Instant::now();
                let mut count = 0u64;
                iterate_all_pairs(g, &d)?.for_each_raw(|_, _| count += 1);
                row.t_pairs_s = Some(start.elapsed().as_secs_f64());
                pairs_count = Some(count);
            }
        }
    }
    row.geodesics = apag_count.or(pairs_count).unwrap_or(0);
    if let (Some(a), Some(p)) = (apag_count, pairs_count) {
        row.agree = Some(a == p);
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g2, p3};

    fn cfg(n: usize, m: usize, seed: u64) -> BenchConfig {
        BenchConfig {
            n,
            m,
            seed,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn random_graph_parameters() {
        let g = random_graph(&cfg(5, 4, 1)).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 4);
        assert!(!g.is_directed());
        assert_eq!(g, random_graph(&cfg(5, 4, 1)).unwrap());
        assert!(matches!(random_graph(&cfg(3, 4, 1)), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn complete_graphs() {
        let g = random_graph(&cfg(6, 15, 3)).unwrap();
        assert_eq!(g.arcs().len(), 30);
        let d = random_graph(&BenchConfig {
            directed: true,
            ..cfg(5, 20, 3)
        })
        .unwrap();
        assert_eq!(d.arcs().len(), 20);
        assert!(d.is_strongly_connected());
    }

    #[test]
    fn undirected_pair_enumeration() {
        let n = 5;
        let mut expected = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                expected.push((u, v));
            }
        }
        let got: Vec<_> = (0..expected.len()).map(|i| undirected_pair(n, i)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn weighted_and_connected() {
        let c = BenchConfig {
            directed: true,
            wmax: 3,
            connected: true,
            ..cfg(8, 30, 9)
        };
        let g = random_graph(&c).unwrap();
        assert!(g.is_strongly_connected());
        assert!(g.arcs().iter().all(|a| (1..=3).contains(&a.weight.to_integer())));
        let sparse = BenchConfig {
            connected: true,
            max_retries: 5,
            ..cfg(10, 3, 1)
        };
        assert!(matches!(random_graph(&sparse), Err(Error::RetriesExhausted(5))));
    }

    #[test]
    fn fixtures() {
        let both = [Method::Apag, Method::Pairs];
        let row = run_on_graph(&p3(), &both, false).unwrap();
        assert_eq!(row.geodesics, 6);
        assert_eq!(row.agree, Some(true));
        let row = run_on_graph(&g2(), &both, false).unwrap();
        assert_eq!(row.geodesics, 23);
        assert_eq!(row.maxdist, Weight::from_integer(7));
        assert_eq!(row.peak_retained_levels, Some(3));
    }

    #[test]
    fn csv_output() {
        let row = run_on_graph(&p3(), &[Method::Pairs], false).unwrap();
        let mut buf = Vec::new();
        row.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,m,maxdist,geodesics,t_apag_s,t_pairs_s,agree"));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&fields[..5], ["3", "2", "2", "6", ""]);
        assert_eq!(fields[6], "");
    }

    #[test]
    fn method_parsing() {
        assert_eq!("apag".parse::<Method>().unwrap(), Method::Apag);
        assert!("dfs".parse::<Method>().is_err());
    }
}
