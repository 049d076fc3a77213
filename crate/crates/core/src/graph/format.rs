//! The `.gbs` text format and its JSON mirror.
//!
//! Declarations are separated by newlines or `;`:
//!
//! ```text
//! # a comment
//! vertices: v0 v1
//! edge e: v0 v1 2 3
//! f: v1 v1 4 6
//! ```
//!
//! A declaration without a colon lists vertices. Edge endpoints that were not
//! declared are added in order of first mention. Text starting with `{` is
//! read as JSON of the form
//! `{"vertices": [...], "edges": [{"name", "origin", "terminus", "labels": [a, b]}]}`.

use serde::{Deserialize, Serialize};

use super::{Edge, LabeledGraph};
use crate::error::{GbsError, Result};

/// Largest accepted label magnitude (18 decimal digits).
const LABEL_LIMIT: i64 = 999_999_999_999_999_999;

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<JsonEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    name: String,
    origin: String,
    terminus: String,
    labels: [i64; 2],
}

fn syntax(line: usize, message: impl Into<String>) -> GbsError {
    GbsError::Syntax { line, message: message.into() }
}

struct Builder {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Builder {
    fn vertex(&mut self, name: &str) -> usize {
        match self.vertices.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vertices.push(name.to_string());
                self.vertices.len() - 1
            }
        }
    }

    fn edge(&mut self, line: usize, name: &str, fields: &[&str]) -> Result<()> {
        let [o, t, a, b] = fields else {
            return Err(syntax(line, format!("edge `{name}` needs: origin terminus label label")));
        };
        let label = |s: &str| -> Result<i64> {
            let v: i64 = s.parse().map_err(|_| syntax(line, format!("`{s}` is not an integer label")))?;
            match v {
                0 => Err(GbsError::ZeroLabel),
                v if v.abs() > LABEL_LIMIT => Err(syntax(line, format!("label `{s}` exceeds 18 digits"))),
                v => Ok(v),
            }
        };
        let labels = [label(a)?, label(b)?];
        let origin = self.vertex(o);
        let terminus = self.vertex(t);
        self.edges.push(Edge { name: name.to_string(), origin, terminus, labels });
        Ok(())
    }
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut b = Builder { vertices: Vec::new(), edges: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        for decl in body.split(';').map(str::trim).filter(|d| !d.is_empty()) {
            match decl.split_once(':') {
                None => {
                    for v in decl.split_whitespace() {
                        b.vertex(v);
                    }
                }
                Some((head, rest)) => {
                    let head: Vec<&str> = head.split_whitespace().collect();
                    let fields: Vec<&str> = rest.split_whitespace().collect();
                    match head.as_slice() {
                        ["vertices"] => fields.iter().for_each(|v| {
                            b.vertex(v);
                        }),
                        ["edge", name] | [name] => b.edge(line, name, &fields)?,
                        _ => return Err(syntax(line, format!("cannot parse `{decl}`"))),
                    }
                }
            }
        }
    }
    if b.vertices.is_empty() {
        return Err(syntax(0, "no vertices declared"));
    }
    LabeledGraph::new(b.vertices, b.edges).map_err(|e| match e {
        GbsError::Syntax { line: 0, message } => syntax(0, message),
        other => other,
    })
}

fn parse_json(text: &str) -> Result<LabeledGraph> {
    let j: JsonGraph = serde_json::from_str(text).map_err(|e| GbsError::Json(e.to_string()))?;
    let mut b = Builder { vertices: j.vertices, edges: Vec::new() };
    for e in j.edges {
        let labels = [e.labels[0].to_string(), e.labels[1].to_string()];
        b.edge(0, &e.name, &[&e.origin, &e.terminus, &labels[0], &labels[1]])?;
    }
    LabeledGraph::new(b.vertices, b.edges)
}

fn declarations(g: &LabeledGraph) -> impl Iterator<Item = String> + '_ {
    g.edges.iter().map(|e| {
        format!("{}: {} {} {} {}", e.name, g.vertices[e.origin], g.vertices[e.terminus], e.labels[0], e.labels[1])
    })
}

/// Canonical one-line form, e.g. `v0; e: v0 v0 2 3`.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    std::iter::once(g.vertices.join(" ")).chain(declarations(g)).collect::<Vec<_>>().join("; ")
}

/// One declaration per line, as written to `.gbs` files.
pub fn serialize_graph_lines(g: &LabeledGraph) -> String {
    let mut out = format!("vertices: {}\n", g.vertices.join(" "));
    for d in declarations(g) {
        out.push_str("edge ");
        out.push_str(&d);
        out.push('\n');
    }
    out
}

impl LabeledGraph {
    pub fn to_json(&self) -> serde_json::Value {
        let j = JsonGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| JsonEdge {
                    name: e.name.clone(),
                    origin: self.vertices[e.origin].clone(),
                    terminus: self.vertices[e.terminus].clone(),
                    labels: e.labels,
                })
                .collect(),
        };
        serde_json::to_value(j).expect("graph json is infallible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: &str = "v0; f1: v0 v0 7 30; f2: v0 v0 6 15; f3: v0 v0 10 8";

    #[test]
    fn parses_e1() {
        let g = parse_graph(E1).unwrap();
        assert_eq!(g, LabeledGraph::rose(&[(7, 30), (6, 15), (10, 8)]).unwrap());
        assert_eq!(serialize_graph(&g), E1);
    }

    #[test]
    fn parses_segment_and_long_form() {
        let g = parse_graph("v0 v1; e: v0 v1 1 5").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        let long = "# segment\nvertices: v0 v1\nedge e: v0 v1 1 5  # unit end\n";
        assert_eq!(parse_graph(long).unwrap(), g);
        assert_eq!(parse_graph(&serialize_graph_lines(&g)).unwrap(), g);
    }

    #[test]
    fn bs23_and_negative_labels() {
        let g = parse_graph("v0; e: v0 v0 2 3").unwrap();
        assert_eq!(serialize_graph(&g), "v0; e: v0 v0 2 3");
        let n = parse_graph("v0; e: v0 v0 -2 3").unwrap();
        assert!(serialize_graph(&n).contains("-2"));
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_graph("v0\ne: v0 v0 2"), Err(syntax(2, "edge `e` needs: origin terminus label label")));
        assert_eq!(parse_graph("v0; e: v0 v0 0 3"), Err(GbsError::ZeroLabel));
        assert!(matches!(parse_graph("v0; e: v0 v0 x 3"), Err(GbsError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("v0; a b c: v0 v0 1 3"), Err(GbsError::Syntax { .. })));
    }

    #[test]
    fn json_mirror() {
        let g = parse_graph(E1).unwrap();
        let text = g.to_json().to_string();
        assert_eq!(parse_graph(&text).unwrap(), g);
    }
}
