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

//! Geodesic (shortest path) enumeration for graphs, digraphs and
//! positive-integer-weighted digraphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: graph representation, text format, structural queries.
//! - [`distances`]: walk counts, distance matrices by matrix powers, BFS and
//!   Floyd–Warshall.
//! - [`single`]: one geodesic by greedy descent on a distance matrix.
//! - [`enumerate`]: LIFO-stack enumeration of bounded s–t paths and s–t
//!   geodesics, plus the iterated all-pairs baseline.
//! - [`apag`]: all geodesics of a digraph built level by level (`Geo[k]`).
//! - [`oracle`]: brute-force reference implementations for testing.
//! - [`bench`]: random graphs and the benchmark harness.

pub mod apag;
pub mod bench;
pub mod distances;
pub mod enumerate;
mod error;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod single;

pub use apag::{
    fast_apag, fast_apag_with, partition_by_endpoints, ApagOptions, ApagReport, CountingSink,
    GeoLevel, GeoPartition, GeodesicSink, LevelCollector,
};
pub use distances::{
    distance_matrix, distance_matrix_bfs, distance_matrix_power, floyd_warshall, walk_counts, CountMatrix,
    DistanceMatrix, PowerMethodResult,
};
pub use enumerate::{
    enumerate_geodesics_st, enumerate_paths_upto, iterate_all_pairs, EnumerationBound,
};
pub use error::{Error, Result};
pub use graph::{parse_graph, Arc, Graph, Path, VertexId, Weight};
pub use single::one_geodesic;
