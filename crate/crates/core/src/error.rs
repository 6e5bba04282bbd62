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

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("line {line}: duplicate arc {from} -> {to}")]
    DuplicateArc { line: usize, from: u32, to: u32 },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("arc {from} -> {to} has non-positive weight {weight}")]
    NonPositiveWeight { from: VertexId, to: VertexId, weight: String },
    #[error("arc {from} -> {to} has non-integer weight {weight}")]
    NonIntegerWeight { from: VertexId, to: VertexId, weight: String },
    #[error("graph has no arcs")]
    EmptyArcSet,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("walk length must be at least 1, got {0}")]
    InvalidWalkLength(usize),
    #[error("negative directed circuit through vertex {vertex}")]
    NegativeCycle { vertex: VertexId },
    #[error("{t} is not reachable from {s}")]
    Unreachable { s: VertexId, t: VertexId },
    #[error("distance matrix has {found} vertices, graph has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no connected instance after {0} attempts")]
    RetriesExhausted(usize),
    #[error("weight arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
