//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! 0-based ids. `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next = |what: &str| -> Result<usize> {
            let tok = fields
                .next()
                .ok_or_else(|| Error::parse(line_no, format!("missing {what}")))?;
            tok.parse()
                .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a nonnegative integer")))
        };
        let pair = if header.is_none() {
            (next("vertex count")?, next("edge count")?)
        } else {
            (next("edge endpoint")?, next("edge endpoint")?)
        };
        if fields.next().is_some() {
            return Err(Error::parse(line_no, "expected exactly two integers"));
        }
        match header {
            None => header = Some(pair),
            Some((n, _)) => {
                if pair.0 >= n || pair.1 >= n {
                    return Err(Error::parse(
                        line_no,
                        format!("edge {} {} out of range for {n} vertices", pair.0, pair.1),
                    ));
                }
                if pair.0 == pair.1 {
                    return Err(Error::parse(line_no, format!("self-loop on {}", pair.0)));
                }
                edges.push(pair);
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `n m` header"))?;
    if edges.len() != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

/// Writes the graph with edges sorted as `(min, max)` pairs.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{bowtie, cycle};

    #[test]
    fn round_trip() {
        for g in [cycle(5), bowtie(), Graph::empty(1)] {
            assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }

    #[test]
    fn comments_and_order() {
        let g = parse_edge_list("# triangle\n3 3\n2 1\n0 2 # back edge\n\n1 0\n").unwrap();
        assert_eq!(write_edge_list(&g), "3 3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 1\n1 1\n"), Err(Error::Parse { .. })));
    }
}
