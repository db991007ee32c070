use std::collections::HashMap;

use super::{Graph, GraphError, Vertex};

/// Parses an edge list: one edge per line as two whitespace-separated labels.
///
/// Blank lines and lines starting with `#` are skipped. Labels are numbered
/// densely in order of first appearance; edge ids follow line order.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, Vertex> = HashMap::new();
    let mut edges = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line: lineno + 1,
                message: format!("expected two vertex labels, found {}", tokens.len()),
            });
        }
        let mut ends = [0; 2];
        for (slot, token) in ends.iter_mut().zip(&tokens) {
            *slot = *index.entry((*token).to_owned()).or_insert_with(|| {
                labels.push((*token).to_owned());
                labels.len() - 1
            });
        }
        edges.push((ends[0], ends[1]));
    }

    Graph::with_labels(labels, &edges)
}
