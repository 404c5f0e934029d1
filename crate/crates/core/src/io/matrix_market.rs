//! Matrix Market coordinate reader. Only the sparsity pattern is kept: values
//! are parsed for well-formedness and then discarded, the diagonal is dropped,
//! and `general` matrices are symmetrized.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Pattern,
    Real,
    Integer,
}

impl Field {
    fn value_tokens(self) -> usize {
        match self {
            Field::Pattern => 0,
            Field::Real | Field::Integer => 1,
        }
    }
}

fn parse_header(line: &str) -> Result<Field> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(Error::parse(1, "missing %%MatrixMarket banner"));
    }
    if tokens.len() != 5 {
        return Err(Error::parse(
            1,
            "banner must read `%%MatrixMarket matrix <format> <field> <symmetry>`",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(Error::UnsupportedFormat(format!("object `{}`", tokens[1])));
    }
    match tokens[2].as_str() {
        "coordinate" => {}
        "array" => return Err(Error::UnsupportedFormat("dense `array` format".into())),
        other => return Err(Error::parse(1, format!("unknown format `{other}`"))),
    }
    let field = match tokens[3].as_str() {
        "pattern" => Field::Pattern,
        "real" => Field::Real,
        "integer" => Field::Integer,
        "complex" => return Err(Error::UnsupportedFormat("`complex` field".into())),
        other => return Err(Error::parse(1, format!("unknown field `{other}`"))),
    };
    match tokens[4].as_str() {
        // Both yield the same undirected graph once the pattern is symmetrized.
        "general" | "symmetric" => {}
        other => return Err(Error::UnsupportedFormat(format!("symmetry `{other}`"))),
    }
    Ok(field)
}

fn parse_u64(token: &str, line: usize, what: &str) -> Result<u64> {
    token
        .parse::<u64>()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

/// Loads a Matrix Market coordinate file as an undirected graph.
pub fn load_matrix_market<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let field = match lines.next() {
        Some((_, line)) => parse_header(&line?)?,
        None => return Err(Error::parse(1, "empty input")),
    };

    let mut dims = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut seen = 0u64;
    let mut last_line = 1;

    for (lineno, line) in lines {
        let line = line?;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((rows, cols, nnz)) = dims else {
            if tokens.len() != 3 {
                return Err(Error::parse(lineno, "size line must be `rows cols entries`"));
            }
            let rows = parse_u64(tokens[0], lineno, "row count")?;
            let cols = parse_u64(tokens[1], lineno, "column count")?;
            let nnz = parse_u64(tokens[2], lineno, "entry count")?;
            if rows != cols {
                return Err(Error::UnsupportedFormat(format!(
                    "non-square {rows}x{cols} matrix cannot be read as a graph"
                )));
            }
            if rows as u128 > MAX_VERTICES as u128 {
                return Err(Error::Capacity(format!("{rows} rows")));
            }
            edges.reserve(nnz.min(1 << 24) as usize);
            dims = Some((rows, cols, nnz));
            continue;
        };

        if tokens.len() != 2 + field.value_tokens() {
            return Err(Error::parse(
                lineno,
                format!(
                    "expected {} tokens per entry, found {}",
                    2 + field.value_tokens(),
                    tokens.len()
                ),
            ));
        }
        if seen == nnz {
            return Err(Error::parse(lineno, format!("more than the declared {nnz} entries")));
        }
        let row = parse_u64(tokens[0], lineno, "row index")?;
        let col = parse_u64(tokens[1], lineno, "column index")?;
        if let Some(value) = tokens.get(2) {
            let ok = match field {
                Field::Integer => value.parse::<i64>().is_ok(),
                _ => value.parse::<f64>().is_ok(),
            };
            if !ok {
                return Err(Error::parse(lineno, format!("invalid value `{value}`")));
            }
        }
        if row == 0 || col == 0 || row > rows || col > cols {
            return Err(Error::EntryOutOfBounds {
                line: lineno,
                row,
                col,
                rows,
                cols,
            });
        }
        seen += 1;
        if row != col {
            edges.push(((row - 1) as VertexId, (col - 1) as VertexId));
        }
    }

    let Some((rows, _, nnz)) = dims else {
        return Err(Error::parse(last_line, "missing size line"));
    };
    if seen != nnz {
        return Err(Error::parse(
            last_line,
            format!("declared {nnz} entries but found {seen}"),
        ));
    }
    Graph::from_edges(rows as usize, edges)
}
