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

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use geodesics_core::apag::{fast_apag_with, ApagOptions, CountingSink, GeodesicSink};
use geodesics_core::bench::{run_benchmark, BenchConfig, Method};
use geodesics_core::distances::{distance_matrix, weight_json};
use geodesics_core::oracle::Oracle;
use geodesics_core::{
    distance_matrix_bfs, distance_matrix_power, enumerate_geodesics_st, enumerate_paths_upto,
    floyd_warshall, iterate_all_pairs, one_geodesic, parse_graph, EnumerationBound, Error, Graph,
    Path, VertexId, Weight,
};

#[derive(Parser)]
#[command(name = "geodesics", version, about = "Enumerate geodesics (shortest paths) of graphs and digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the distance matrix.
    Dist {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DistMethod::Fw)]
        method: DistMethod,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Print one s-t geodesic and its weight.
    One { file: PathBuf, s: u32, t: u32 },
    /// Enumerate s-t geodesics, or all s-t paths within a bound.
    St {
        file: PathBuf,
        s: u32,
        t: u32,
        #[arg(long, conflicts_with = "maxweight")]
        maxlen: Option<usize>,
        #[arg(long)]
        maxweight: Option<String>,
        /// All simple paths within the bound (default bound: n - 1 arcs).
        #[arg(long)]
        all_paths: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the geodesics of all ordered pairs by per-pair search.
    Pairs {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all geodesics level by level.
    Apag {
        file: PathBuf,
        /// Write JSON-lines records to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print `k=<k> size=<n>` before each level.
        #[arg(long)]
        levels: bool,
        /// Print only the report as JSON.
        #[arg(long)]
        counts_only: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Brute-force reference output (small graphs only).
    Oracle {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        pair: Option<Vec<u32>>,
        #[arg(long, default_value_t = geodesics_core::oracle::DEFAULT_CAP)]
        cap: usize,
    },
    /// Time the level recursion against per-pair enumeration on a random graph.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 1)]
        wmax: u32,
        #[arg(long, default_value = "apag,pairs")]
        methods: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Resample until the graph is (strongly) connected.
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 100)]
        retries: usize,
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DistMethod {
    Power,
    Bfs,
    Fw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NegativeCycle { .. } => 2,
        Error::CapExceeded { .. } | Error::RetriesExhausted(_) => 3,
        _ => 1,
    }
}

fn load(file: &FsPath) -> Result<Graph, Error> {
    parse_graph(&fs::read_to_string(file)?)
}

fn vertex(g: &Graph, id: u32) -> Result<VertexId, Error> {
    if id == 0 || id as usize > g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: u64::from(id),
            n: g.n(),
        });
    }
    Ok(VertexId::new(id))
}

fn record(path: &[VertexId], w: &Weight) -> serde_json::Value {
    json!({
        "s": path[0],
        "t": path[path.len() - 1],
        "w": weight_json(w),
        "path": path,
    })
}

fn write_path<W: Write>(out: &mut W, p: &Path, as_json: bool) -> io::Result<()> {
    if as_json {
        writeln!(out, "{}", record(p.vertices(), &p.weight()))
    } else {
        writeln!(out, "{p}")
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cmd {
        Command::Dist { file, method, format } => {
            let g = load(&file)?;
            let d = match method {
                DistMethod::Power => distance_matrix_power(&g).distances,
                DistMethod::Bfs => distance_matrix_bfs(&g),
                DistMethod::Fw => floyd_warshall(&g)?,
            };
            match format {
                Format::Tsv => write!(out, "{}", d.to_tsv())?,
                Format::Json => writeln!(out, "{}", d.to_json())?,
            }
        }
        Command::One { file, s, t } => {
            let g = load(&file)?;
            let d = distance_matrix(&g)?;
            let p = one_geodesic(&g, &d, vertex(&g, s)?, vertex(&g, t)?)?;
            writeln!(out, "{p}")?;
            writeln!(out, "{}", p.weight())?;
        }
        Command::St {
            file,
            s,
            t,
            maxlen,
            maxweight,
            all_paths,
            json,
        } => {
            let g = load(&file)?;
            let (s, t) = (vertex(&g, s)?, vertex(&g, t)?);
            let paths = if all_paths || maxlen.is_some() || maxweight.is_some() {
                let bound = match (maxlen, maxweight) {
                    (Some(k), _) => EnumerationBound::Length(k),
                    (None, Some(w)) => EnumerationBound::Weight(w.parse().map_err(|_| {
                        Error::InvalidConfig(format!("invalid weight bound `{w}`"))
                    })?),
                    (None, None) => EnumerationBound::Length(g.n() - 1),
                };
                enumerate_paths_upto(&g, s, t, bound)?
            } else {
                let d = distance_matrix(&g)?;
                enumerate_geodesics_st(&g, &d, s, t)?
            };
            for p in &paths {
                write_path(&mut out, p, json)?;
            }
        }
        Command::Pairs { file, json } => {
            let g = load(&file)?;
            let d = distance_matrix(&g)?;
            for p in iterate_all_pairs(&g, &d)? {
                write_path(&mut out, &p, json)?;
            }
        }
        Command::Apag {
            file,
            out: out_file,
            levels,
            counts_only,
            parallel,
        } => {
            let g = load(&file)?;
            let d = distance_matrix(&g)?;
            let opts = ApagOptions {
                parallel,
                ..ApagOptions::default()
            };
            let report = if counts_only {
                fast_apag_with(&g, &d, &mut CountingSink::default(), &opts)?
            } else if let Some(path) = out_file {
                let mut sink = WriterSink::new(BufWriter::new(File::create(path)?), true, false);
                let report = fast_apag_with(&g, &d, &mut sink, &opts)?;
                sink.finish()?;
                report
            } else {
                let mut sink = WriterSink::new(&mut out, false, levels);
                let report = fast_apag_with(&g, &d, &mut sink, &opts)?;
                sink.finish()?;
                report
            };
            if counts_only {
                writeln!(out, "{}", report.to_json())?;
            }
        }
        Command::Oracle { file, pair, cap } => {
            let g = load(&file)?;
            let oracle = Oracle::with_cap(cap);
            let paths = match pair.as_deref() {
                Some([s, t]) => oracle.all_paths(&g, vertex(&g, *s)?, vertex(&g, *t)?)?,
                _ => oracle.geodesics(&g)?,
            };
            for p in &paths {
                write_path(&mut out, p, false)?;
            }
        }
        Command::Bench {
            n,
            m,
            seed,
            directed,
            wmax,
            methods,
            csv,
            connected,
            retries,
            parallel,
        } => {
            let methods = methods
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<Method>, _>>()?;
            let cfg = BenchConfig {
                n,
                m,
                seed,
                directed,
                wmax,
                methods,
                connected,
                max_retries: retries,
                parallel,
            };
            let row = run_benchmark(&cfg)?;
            match csv {
                Some(path) => row.write_csv(File::create(path)?)?,
                None => row.write_csv(&mut out)?,
            }
            if row.agree == Some(false) {
                out.flush()?;
                eprintln!("error: methods report different geodesic counts");
                return Ok(ExitCode::from(1));
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

/// Streams geodesics as plain lines or JSON-lines, optionally with level
/// headers. Write errors are kept and reported by `finish`.
struct WriterSink<W: Write> {
    out: W,
    json: bool,
    levels: bool,
    pending: Vec<String>,
    error: Option<io::Error>,
}

impl<W: Write> WriterSink<W> {
    fn new(out: W, json: bool, levels: bool) -> Self {
        WriterSink {
            out,
            json,
            levels,
            pending: Vec::new(),
            error: None,
        }
    }

    fn emit(&mut self, line: &str) {
        if self.error.is_none() {
            if let Err(e) = writeln!(self.out, "{line}") {
                self.error = Some(e);
            }
        }
    }

    fn finish(mut self) -> io::Result<()> {
        match self.error.take() {
            Some(e) => Err(e),
            None => self.out.flush(),
        }
    }
}

impl<W: Write> GeodesicSink for WriterSink<W> {
    fn accept(&mut self, path: &[VertexId], weight: u64) {
        let line = if self.json {
            record(path, &Weight::from_integer(weight as i64)).to_string()
        } else {
            path.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        };
        if self.levels {
            // the header needs the level size, so hold the level back
            self.pending.push(line);
        } else {
            self.emit(&line);
        }
    }

    fn level_finished(&mut self, k: u64, size: usize, _retained_levels: usize) {
        if self.levels {
            self.emit(&format!("k={k} size={size}"));
            for line in std::mem::take(&mut self.pending) {
                self.emit(&line);
            }
        }
    }
}
