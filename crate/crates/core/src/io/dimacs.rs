//! DIMACS edge format: `c` comment lines, one `p edge <n> <m>` line, then
//! `e <u> <v>` lines with 1-based vertices.

use std::fmt::Write as _;

use crate::model::GraphInstance;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn number(line: usize, token: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| err(line, format!("missing {what}")))?;
    token.parse().map_err(|_| err(line, format!("{what} {token:?} is not a nonnegative integer")))
}

pub fn parse_dimacs(text: &str) -> Result<GraphInstance, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, "duplicate problem line"));
                }
                match tokens.next() {
                    Some("edge" | "col") => {}
                    other => return Err(err(line, format!("expected `p edge`, found format {other:?}"))),
                }
                let n = number(line, tokens.next(), "vertex count")?;
                let m = number(line, tokens.next(), "edge count")?;
                header = Some((n, m, line));
            }
            Some("e") => {
                let (n, _, _) = header.ok_or_else(|| err(line, "edge before the problem line"))?;
                let u = number(line, tokens.next(), "endpoint")?;
                let v = number(line, tokens.next(), "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(err(line, format!("edge {u} {v} is outside 1..={n}")));
                }
                if u == v {
                    return Err(err(line, format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(err(line, format!("unknown line type {other:?}"))),
        }
        if tokens.next().is_some() {
            return Err(err(line, "trailing tokens"));
        }
    }
    let (n, m, header_line) = header.ok_or_else(|| err(text.lines().count().max(1), "missing problem line"))?;
    let edges_listed = edges.len();
    let g = GraphInstance::new(n, edges).map_err(|e| err(header_line, e.to_string()))?;
    // some corpora list each edge in both directions and count both
    if g.num_edges() != m && edges_listed != m {
        return Err(err(header_line, format!("header declares {m} edges, found {} distinct", g.num_edges())));
    }
    Ok(g)
}

pub fn write_dimacs(g: &GraphInstance) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.num_edges());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, GraphInstance::complete(3));
        assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(parse_dimacs("p edge 3 1\ne 1 4\n").unwrap_err().line, 2);
        assert_eq!(parse_dimacs("e 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_dimacs("c x\np edge 2 1\n\ne 1 x\n").unwrap_err().line, 4);
        assert_eq!(parse_dimacs("p edge 2 2\ne 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_dimacs("p edge 2 1\ne 2 2\n").unwrap_err().line, 2);
        assert!(parse_dimacs("c only\n").is_err());
    }
}
