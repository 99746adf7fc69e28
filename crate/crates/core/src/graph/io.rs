//! Edge-list text format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v      (m lines, 1 <= u < v <= n)
//! ```

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("{what} '{tok}' is not a nonnegative integer"),
        })
    };
    let pair = (next("first field")?, next("second field")?);
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: "expected exactly two fields".into(),
        });
    }
    Ok(pair)
}

/// Parses the edge-list format. Edges must satisfy `1 <= u < v <= n` and the
/// declared edge count must match.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input, expected header 'n m'".into(),
    })?;
    let (n, m) = parse_pair(header, hline)?;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let (u, v) = parse_pair(line, lineno)?;
        if !(1 <= u && u < v && v <= n) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("edge '{u} {v}' violates 1 <= u < v <= {n}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges).map_err(|e| match e {
        Error::Domain(msg) => Error::Parse { line: hline, msg },
        other => other,
    })
}

/// Writes the canonical edge list (sorted pairs).
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String cannot fail");
    }
    out
}
