//! graph6 text encoding, short form only (n <= 62).
//!
//! Layout: one byte `n + 63`, then the upper triangle of the adjacency matrix
//! in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per
//! byte, most significant first, zero padded, each byte offset by 63.

use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_MAX_VERTICES: usize = 62;

/// A graph6 string. Construction through [`Graph6::parse`] validates it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Graph6(String);

impl Graph6 {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Validates and wraps `text` (surrounding whitespace is trimmed).
    pub fn parse(text: &str) -> Result<Graph6> {
        let text = text.trim();
        decode(text)?;
        Ok(Graph6(text.to_string()))
    }

    pub fn to_graph(&self) -> Graph {
        decode(&self.0).expect("validated graph6")
    }
}

impl fmt::Display for Graph6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn encode(g: &Graph) -> Result<Graph6> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::Graph6(format!(
            "{n} vertices needs the long form, which is unsupported"
        )));
    }
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut len = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            len += 1;
            if len == 6 {
                out.push(acc + 63);
                acc = 0;
                len = 0;
            }
        }
    }
    if len > 0 {
        out.push((acc << (6 - len)) + 63);
    }
    Ok(Graph6(String::from_utf8(out).expect("printable ascii")))
}

pub fn decode(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::Graph6("empty input".into()));
    };
    if let Some(b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Graph6(format!("byte {b:#04x} outside 63..=126")));
    }
    if first == 126 {
        return Err(Error::Graph6("long form (n > 62) is unsupported".into()));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let body = &bytes[1..];
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::Graph6(format!(
            "expected {} data bytes for n = {n}, found {}",
            nbits.div_ceil(6),
            body.len()
        )));
    }
    let bit_at = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (nbits..body.len() * 6).any(bit_at) {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit_at(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

/// One parsed line of a newline-separated graph6 corpus. Blank lines and
/// lines starting with `#` are skipped; `line` is 1-based.
#[derive(Debug)]
pub struct CorpusEntry {
    pub line: usize,
    pub text: String,
    pub graph: Result<Graph>,
}

/// Streams a graph6 corpus without loading it whole.
pub fn read_corpus<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<CorpusEntry>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(e)),
            Ok(l) => {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    Some(Ok(CorpusEntry {
                        line: i + 1,
                        text: t.to_string(),
                        graph: decode(t),
                    }))
                }
            }
        })
}
