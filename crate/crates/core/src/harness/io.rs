//! Edge-list text format.
//!
//! ```text
//! #pa-graph v1 variant=fpa(m=2,delta=-1) t=5 seed=7 weights=yes
//! 2 2 1 4.3210000000000002e-1
//! ...
//! ```
//!
//! One `born src dst [weight]` record per line, whitespace separated.
//! Weights are written with 17 significant digits so they reload bit for
//! bit. Either every record carries a weight or none does; the header's
//! `weights=` field says which, so an edgeless graph keeps its weights flag.
//! Files without the field are read by looking at the first record.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{Edge, GrowthGraph, ModelParams, Vertex};

pub const HEADER_MAGIC: &str = "#pa-graph";
pub const FORMAT_VERSION: &str = "v1";

/// Writes `graph` in the edge-list format.
pub fn write_graph<W: Write>(graph: &GrowthGraph, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "{HEADER_MAGIC} {FORMAT_VERSION} variant={} t={} seed={} weights={}",
        graph.variant(),
        graph.t(),
        graph.seed(),
        if graph.has_weights() { "yes" } else { "no" }
    )?;
    let weights = graph.weights();
    for (i, e) in graph.edges().iter().enumerate() {
        match weights {
            Some(w) => writeln!(out, "{} {} {} {:.16e}", e.born, e.src, e.dst, w[i])?,
            None => writeln!(out, "{} {} {}", e.born, e.src, e.dst)?,
        }
    }
    out.flush()
}

pub fn save_graph(graph: &GrowthGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_graph(graph, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<GrowthGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_graph(BufReader::new(file), path)
}

struct Header {
    variant: String,
    t: Vertex,
    seed: u64,
    weighted: Option<bool>,
}

fn parse_header(line: &str, path: &Path) -> Result<Header> {
    let err = |msg: String| Error::Parse {
        path: path.to_path_buf(),
        line: 1,
        msg,
    };
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(HEADER_MAGIC) {
        return Err(err(format!("missing '{HEADER_MAGIC}' header")));
    }
    match tokens.next() {
        Some(FORMAT_VERSION) => {}
        other => return Err(err(format!("unsupported format version {other:?}"))),
    }
    let (mut variant, mut t, mut seed, mut weighted) = (None, None, None, None);
    for token in tokens {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| err(format!("malformed header field '{token}'")))?;
        match key {
            "variant" => variant = Some(value.to_string()),
            "t" => t = Some(value.parse().map_err(|_| err(format!("bad vertex count '{value}'")))?),
            "seed" => seed = Some(value.parse().map_err(|_| err(format!("bad seed '{value}'")))?),
            "weights" => {
                weighted = Some(match value {
                    "yes" => true,
                    "no" => false,
                    _ => return Err(err(format!("weights= must be yes or no, got '{value}'"))),
                })
            }
            _ => return Err(err(format!("unknown header field '{key}'"))),
        }
    }
    Ok(Header {
        variant: variant.ok_or_else(|| err("header lacks variant=".into()))?,
        t: t.ok_or_else(|| err("header lacks t=".into()))?,
        seed: seed.ok_or_else(|| err("header lacks seed=".into()))?,
        weighted,
    })
}

/// `m` of an `fpa(m=..,delta=..)` label.
fn fpa_outdegree(variant: &str) -> Option<usize> {
    let inner = variant.strip_prefix("fpa(")?.strip_suffix(')')?;
    inner
        .split(',')
        .find_map(|kv| kv.strip_prefix("m="))
        .and_then(|m| m.parse().ok())
}

/// Parses the edge-list format; `path` only labels errors.
pub fn read_graph<R: BufRead>(reader: R, path: &Path) -> Result<GrowthGraph> {
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = reader.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => parse_header(&line.map_err(|e| Error::io(path, e))?, path)?,
        None => return Err(parse_err(1, "empty file".into())),
    };

    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut weighted = header.weighted;
    let mut last_line = 1;
    let mut last_born = 0;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        last_line = lineno;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 && fields.len() != 4 {
            return Err(parse_err(lineno, format!("expected 'born src dst [weight]', got {} fields", fields.len())));
        }
        let has_weight = fields.len() == 4;
        match weighted {
            None => weighted = Some(has_weight),
            Some(w) if w != has_weight => {
                let msg = if header.weighted.is_some() {
                    format!("weight column does not match header weights={}", if w { "yes" } else { "no" })
                } else {
                    "weight column present on some records only".to_string()
                };
                return Err(parse_err(lineno, msg));
            }
            _ => {}
        }
        let num = |s: &str, what: &str| -> Result<Vertex> {
            s.parse().map_err(|_| parse_err(lineno, format!("bad {what} '{s}'")))
        };
        let e = Edge {
            born: num(fields[0], "born")?,
            src: num(fields[1], "src")?,
            dst: num(fields[2], "dst")?,
        };
        if e.born != e.src || e.dst == 0 || e.dst >= e.src || e.src > header.t {
            return Err(parse_err(lineno, format!("record violates 1 <= dst < src = born <= t = {}", header.t)));
        }
        if e.born < last_born {
            return Err(parse_err(lineno, "records out of birth order".into()));
        }
        last_born = e.born;
        if has_weight {
            let w: f64 = fields[3]
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad weight '{}'", fields[3])))?;
            if !(w >= 0.0) {
                return Err(parse_err(lineno, format!("negative weight {w}")));
            }
            weights.push(w);
        }
        edges.push(e);
    }

    if let Some(m) = fpa_outdegree(&header.variant) {
        let expected = m * (header.t as usize - 1);
        if edges.len() != expected {
            return Err(parse_err(
                last_line,
                format!("file ends after {} of {expected} records (truncated?)", edges.len()),
            ));
        }
    }
    let weights = (weighted == Some(true)).then_some(weights);
    GrowthGraph::from_edges(header.t, edges, weights, header.variant, header.seed)
}

/// Warns (and returns the message) when the graph's header variant differs
/// from the requested model.
pub fn check_variant(graph: &GrowthGraph, expected: &ModelParams) -> Option<String> {
    let label = expected.label();
    if graph.variant() == label {
        None
    } else {
        let msg = format!("graph variant '{}' differs from requested '{label}'", graph.variant());
        warn!("{msg}");
        Some(msg)
    }
}
