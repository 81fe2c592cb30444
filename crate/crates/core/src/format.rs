//! Plain-text graph format.
//!
//! ```text
//! # comment
//! n m directed unit|weighted
//! u v        (unit)
//! u v w      (weighted)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::weight::Weight;

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Header kind of a graph file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Unit,
    Weighted,
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parses a graph, returning it together with the declared weight kind.
pub fn parse_graph<W: Weight>(text: &str) -> Result<(Graph<W>, WeightKind), FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(syntax(hline, "header must be `n m directed unit|weighted`"));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| syntax(hline, format!("bad vertex count `{}`", fields[0])))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| syntax(hline, format!("bad edge count `{}`", fields[1])))?;
    if fields[2] != "directed" {
        return Err(syntax(hline, format!("only directed graphs are supported, got `{}`", fields[2])));
    }
    let kind = match fields[3] {
        "unit" => WeightKind::Unit,
        "weighted" => WeightKind::Weighted,
        other => return Err(syntax(hline, format!("unknown weight kind `{other}`"))),
    };

    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let expected = if kind == WeightKind::Unit { 2 } else { 3 };
        if toks.len() != expected {
            return Err(syntax(ln, format!("expected {expected} fields, got {}", toks.len())));
        }
        let u: usize = toks[0]
            .parse()
            .map_err(|_| syntax(ln, format!("bad vertex `{}`", toks[0])))?;
        let v: usize = toks[1]
            .parse()
            .map_err(|_| syntax(ln, format!("bad vertex `{}`", toks[1])))?;
        let w = match kind {
            WeightKind::Unit => W::one(),
            WeightKind::Weighted => toks[2]
                .parse::<W>()
                .ok()
                .filter(|w| w.is_comparable())
                .ok_or_else(|| syntax(ln, format!("bad weight `{}`", toks[2])))?,
        };
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok((Graph::from_edges(n, edges)?, kind))
}

/// Serialises a graph. `kind` picks whether weights are written.
pub fn write_graph<W: Weight>(g: &Graph<W>, kind: WeightKind) -> String {
    let mut out = String::new();
    let label = match kind {
        WeightKind::Unit => "unit",
        WeightKind::Weighted => "weighted",
    };
    writeln!(out, "{} {} directed {}", g.n(), g.m(), label).expect("writing to a String");
    for (u, v, w) in g.edges() {
        match kind {
            WeightKind::Unit => writeln!(out, "{u} {v}"),
            WeightKind::Weighted => writeln!(out, "{u} {v} {w}"),
        }
        .expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_weighted() {
        let text = "# tiny\n3 2 directed weighted\n0 1 2.5\n1 2 3\n";
        let (g, kind) = parse_graph::<f64>(text).unwrap();
        assert_eq!(kind, WeightKind::Weighted);
        assert_eq!(g.edge_weight(0, 1), Some(2.5));
        let again = write_graph(&g, kind);
        let (h, _) = parse_graph::<f64>(&again).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn unit_header_and_empty_graph() {
        let (g, kind) = parse_graph::<u64>("1 0 directed unit\n").unwrap();
        assert_eq!((g.n(), g.m(), kind), (1, 0, WeightKind::Unit));
        assert_eq!(write_graph(&g, kind), "1 0 directed unit\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse_graph::<f64>("# only\n"), Err(FormatError::MissingHeader));
        assert!(matches!(
            parse_graph::<f64>("2 1 undirected unit\n0 1\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph::<f64>("2 2 directed unit\n0 1\n"),
            Err(FormatError::EdgeCount { declared: 2, found: 1 })
        ));
        assert!(matches!(
            parse_graph::<f64>("2 1 directed weighted\n0 1 NaN\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph::<f64>("2 1 directed unit\n0 5\n"),
            Err(FormatError::Graph(GraphError::VertexOutOfRange { .. }))
        ));
    }
}
