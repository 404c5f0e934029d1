//! Whitespace-separated `u v` edge lists with `#` comments.
//!
//! The writer emits a `# vertices <n> edges <m>` comment first so trailing
//! isolated vertices survive a round trip through [`load_edge_list_declared`].

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, MAX_VERTICES};

struct Parsed {
    edges: Vec<(VertexId, VertexId)>,
    max_id: Option<VertexId>,
    declared: Option<usize>,
}

fn parse<R: BufRead>(reader: R) -> Result<Parsed> {
    let mut parsed = Parsed {
        edges: Vec::new(),
        max_id: None,
        declared: None,
    };
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if parsed.declared.is_none() {
                parsed.declared = declared_vertices(comment);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<VertexId> {
            let token = tokens
                .next()
                .ok_or_else(|| Error::parse(lineno, "expected two vertex ids"))?;
            let id: u64 = token
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid vertex id `{token}`")))?;
            if id >= MAX_VERTICES as u64 {
                return Err(Error::VertexOutOfRange {
                    vertex: id,
                    num_vertices: MAX_VERTICES,
                });
            }
            Ok(id as VertexId)
        };
        let u = next_id()?;
        let v = next_id()?;
        if tokens.next().is_some() {
            return Err(Error::parse(lineno, "expected exactly two vertex ids"));
        }
        parsed.max_id = parsed.max_id.max(Some(u.max(v)));
        parsed.edges.push((u, v));
    }
    Ok(parsed)
}

fn declared_vertices(comment: &str) -> Option<usize> {
    let mut tokens = comment.split_whitespace();
    match tokens.next() {
        Some("vertices") | Some("vertices:") => tokens.next()?.parse().ok(),
        _ => None,
    }
}

/// Loads an edge list. With `num_vertices == None` the vertex count is one
/// more than the largest id seen, or zero for an input without edges.
pub fn load_edge_list<R: BufRead>(reader: R, num_vertices: Option<usize>) -> Result<Graph> {
    let parsed = parse(reader)?;
    let n = num_vertices.unwrap_or_else(|| parsed.max_id.map_or(0, |m| m as usize + 1));
    Graph::from_edges(n, parsed.edges)
}

/// Like [`load_edge_list`] in auto mode, but honors a leading
/// `# vertices <n>` comment when one is present.
pub fn load_edge_list_declared<R: BufRead>(reader: R) -> Result<Graph> {
    let parsed = parse(reader)?;
    let auto = parsed.max_id.map_or(0, |m| m as usize + 1);
    Graph::from_edges(parsed.declared.unwrap_or(auto), parsed.edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# vertices {} edges {}", g.num_vertices(), g.num_edges())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path() {
        let g = load_edge_list("0 1\n1 2".as_bytes(), None).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = load_edge_list("# comment\n\n0 1".as_bytes(), None).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn bad_token_reports_line() {
        assert!(matches!(
            load_edge_list("0 x".as_bytes(), None),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_edge_list("0 1\n\n3".as_bytes(), None),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            load_edge_list("0 1 2".as_bytes(), None),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn empty_input() {
        let g = load_edge_list("".as_bytes(), None).unwrap();
        assert_eq!(g.num_vertices(), 0);
    }

    #[test]
    fn explicit_vertex_count() {
        let g = load_edge_list("0 1".as_bytes(), Some(5)).unwrap();
        assert_eq!(g.num_vertices(), 5);
        assert!(load_edge_list("0 5".as_bytes(), Some(5)).is_err());
    }

    #[test]
    fn declared_header_keeps_isolated_vertices() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(load_edge_list_declared(buf.as_slice()).unwrap(), g);
        assert_eq!(load_edge_list(buf.as_slice(), None).unwrap().num_vertices(), 4);
    }
}
