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

//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes graph text in the usual line format and returns a JSON
//! string; the page parses it and draws. The `*_json` functions are the
//! plain-Rust versions, usable (and tested) off the browser.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use geodesics_core::bench::{random_graph, BenchConfig};
use geodesics_core::distances::{distance_matrix, weight_json};
use geodesics_core::{
    enumerate_geodesics_st, fast_apag, parse_graph, Graph, LevelCollector, VertexId,
};

/// Upper bound on paths shipped to the page; larger runs are counted but
/// truncated.
pub const MAX_PATHS: usize = 20_000;

fn graph_json(g: &Graph) -> Value {
    let arcs: Vec<Value> = g
        .arcs()
        .iter()
        .filter(|a| g.is_directed() || a.from < a.to)
        .map(|a| json!([a.from, a.to, weight_json(&a.weight)]))
        .collect();
    json!({ "n": g.n(), "directed": g.is_directed(), "weighted": g.is_weighted(), "arcs": arcs })
}

/// Graph, its `Geo[k]` levels (trailing empty ones included) and the run
/// report.
pub fn levels_json(text: &str) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    let d = distance_matrix(&g).map_err(|e| e.to_string())?;
    let mut levels = LevelCollector::default();
    let report = fast_apag(&g, &d, &mut levels).map_err(|e| e.to_string())?;
    let mut budget = MAX_PATHS;
    let mut truncated = false;
    let levels: Vec<Value> = levels
        .levels()
        .iter()
        .map(|level| {
            let take = level.len().min(budget);
            budget -= take;
            truncated |= take < level.len();
            let paths: Vec<&[VertexId]> = level.iter().take(take).collect();
            json!({ "k": level.k(), "size": level.len(), "paths": paths })
        })
        .collect();
    Ok(json!({
        "graph": graph_json(&g),
        "levels": levels,
        "geodesics": report.total,
        "mu": report.mu,
        "levels_built": report.levels_built,
        "truncated": truncated,
    })
    .to_string())
}

/// All `s`–`t` geodesics with their common weight.
pub fn st_json(text: &str, s: u32, t: u32) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    for v in [s, t] {
        if v == 0 || v as usize > g.n() {
            return Err(format!("vertex {v} out of range 1..={}", g.n()));
        }
    }
    let (s, t) = (VertexId::new(s), VertexId::new(t));
    let d = distance_matrix(&g).map_err(|e| e.to_string())?;
    let paths = enumerate_geodesics_st(&g, &d, s, t).map_err(|e| e.to_string())?;
    let total = paths.len();
    let shown: Vec<&[VertexId]> = paths.iter().take(MAX_PATHS).map(|p| p.vertices()).collect();
    Ok(json!({
        "s": s,
        "t": t,
        "distance": d.get(s, t).map_or(Value::Null, |w| weight_json(&w)),
        "count": total,
        "paths": shown,
    })
    .to_string())
}

/// Seeded random graph in the text format.
pub fn random_graph_text(n: usize, m: usize, seed: u64, directed: bool, wmax: u32) -> Result<String, String> {
    let cfg = BenchConfig {
        n,
        m,
        seed,
        directed,
        wmax,
        ..BenchConfig::default()
    };
    random_graph(&cfg)
        .map(|g| g.to_text())
        .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn apag_levels(text: &str) -> Result<String, JsError> {
    levels_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn st_geodesics(text: &str, s: u32, t: u32) -> Result<String, JsError> {
    st_json(text, s, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn random_graph_demo(n: usize, m: usize, seed: u64, directed: bool, wmax: u32) -> Result<String, JsError> {
    random_graph_text(n, m, seed, directed, wmax).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn g2_fixture() -> String {
    geodesics_core::fixtures::G2_TEXT.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use geodesics_core::fixtures::G2_TEXT;

    #[test]
    fn levels_for_g2() {
        let v: Value = serde_json::from_str(&levels_json(G2_TEXT).unwrap()).unwrap();
        assert_eq!(v["geodesics"], 23);
        assert_eq!(v["mu"], 3);
        let sizes: Vec<u64> = v["levels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l["size"].as_u64().unwrap())
            .collect();
        assert_eq!(sizes, [4, 6, 4, 5, 3, 0, 1, 0, 0, 0]);
        assert_eq!(v["levels"][6]["paths"][0], json!([1, 4, 5, 6]));
        assert_eq!(v["graph"]["arcs"].as_array().unwrap().len(), 11);
        assert_eq!(v["truncated"], false);
    }

    #[test]
    fn st_for_g2() {
        let v: Value = serde_json::from_str(&st_json(G2_TEXT, 5, 1).unwrap()).unwrap();
        assert_eq!(v["distance"], 4);
        assert_eq!(v["paths"], json!([[5, 4, 1], [5, 4, 2, 1]]));
        let none: Value = serde_json::from_str(&st_json(G2_TEXT, 3, 1).unwrap()).unwrap();
        assert_eq!(none["distance"], Value::Null);
        assert_eq!(none["count"], 0);
        assert!(st_json(G2_TEXT, 0, 1).is_err());
    }

    #[test]
    fn random_text_round_trips() {
        let text = random_graph_text(12, 20, 4, false, 1).unwrap();
        let g = parse_graph(&text).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 20));
        let v: Value = serde_json::from_str(&levels_json(&text).unwrap()).unwrap();
        assert_eq!(v["graph"]["arcs"].as_array().unwrap().len(), 20);
        assert!(random_graph_text(3, 9, 0, false, 1).is_err());
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(levels_json("2 1 undirected unweighted\n1 1").is_err());
        assert!(levels_json("2 1 directed weighted\n1 2 1/2").is_err());
    }
}
