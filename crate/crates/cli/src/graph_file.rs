//! The `.pa` graph file: a text header `#pa n=<n> m=<m> seed=<seed>`
//! followed by one line per distinct edge, `u v mult`, with `u < v`, sorted
//! lexicographically. Degrees are recomputed and cross-checked on load.

use std::fmt::Write as _;
use std::path::Path;

use paspectra_core::graph::{Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum GraphFileError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed edge on line {line}: {msg}")]
    MalformedEdge { line: usize, msg: String },
    #[error("self-loop forbidden at vertex {vertex} (line {line})")]
    SelfLoop { vertex: u32, line: usize },
    #[error("inconsistent graph file: {0}")]
    Inconsistent(GraphError),
}

pub fn encode_graph(graph: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "#pa n={} m={} seed={}",
        graph.vertex_count(),
        graph.edges_per_vertex(),
        graph.seed()
    );
    for (u, v, mult) in graph.edges() {
        let _ = writeln!(out, "{u} {v} {mult}");
    }
    out
}

pub fn decode_graph(text: &str) -> Result<Graph, GraphFileError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| GraphFileError::MalformedHeader("empty file".into()))?;
    let rest = header.strip_prefix("#pa ").ok_or_else(|| {
        GraphFileError::MalformedHeader(format!("expected `#pa ...`: `{header}`"))
    })?;
    let mut n = None;
    let mut m = None;
    let mut seed = None;
    for field in rest.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| GraphFileError::MalformedHeader(format!("bad field `{field}`")))?;
        let bad = |_| GraphFileError::MalformedHeader(format!("bad value in `{field}`"));
        match key {
            "n" => n = Some(value.parse::<u32>().map_err(bad)?),
            "m" => m = Some(value.parse::<u32>().map_err(bad)?),
            "seed" => seed = Some(value.parse::<u64>().map_err(bad)?),
            other => {
                return Err(GraphFileError::MalformedHeader(format!(
                    "unknown field `{other}`"
                )))
            }
        }
    }
    let (n, m, seed) = match (n, m, seed) {
        (Some(n), Some(m), Some(seed)) => (n, m, seed),
        _ => {
            return Err(GraphFileError::MalformedHeader(
                "header must carry n=, m= and seed=".into(),
            ))
        }
    };

    let mut edges = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>, what: &str| -> Result<u64, GraphFileError> {
            tok.ok_or_else(|| GraphFileError::MalformedEdge {
                line: idx + 1,
                msg: format!("missing {what}"),
            })?
            .parse::<u64>()
            .map_err(|_| GraphFileError::MalformedEdge {
                line: idx + 1,
                msg: format!("non-integer {what}"),
            })
        };
        let u = parse(it.next(), "source")?;
        let v = parse(it.next(), "target")?;
        let mult = parse(it.next(), "multiplicity")?;
        if it.next().is_some() {
            return Err(GraphFileError::MalformedEdge {
                line: idx + 1,
                msg: "trailing tokens".into(),
            });
        }
        if u == v {
            return Err(GraphFileError::SelfLoop {
                vertex: u as u32,
                line: idx + 1,
            });
        }
        let narrow = |x: u64, what: &str| -> Result<u32, GraphFileError> {
            u32::try_from(x).map_err(|_| GraphFileError::MalformedEdge {
                line: idx + 1,
                msg: format!("{what} out of range"),
            })
        };
        edges.push((
            narrow(u, "source")?,
            narrow(v, "target")?,
            narrow(mult, "multiplicity")?,
        ));
    }

    Graph::from_edges(n, m, seed, &edges).map_err(|e| match e {
        GraphError::SelfLoop(v) => GraphFileError::SelfLoop { vertex: v, line: 0 },
        other => GraphFileError::Inconsistent(other),
    })
}

pub fn write_graph_file(path: &Path, graph: &Graph) -> std::io::Result<()> {
    std::fs::write(path, encode_graph(graph))
}

pub fn read_graph_file(path: &Path) -> Result<Graph, crate::error::CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(decode_graph(&text)?)
}
