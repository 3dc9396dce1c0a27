use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{GraphError, WeightedGraph};

/// JSON form of a graph: `{"vertices": [labels], "edges": [{u, v, sigma}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDump {
    pub vertices: Vec<String>,
    pub edges: Vec<JsonEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub u: usize,
    pub v: usize,
    pub sigma: f64,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl WeightedGraph {
    /// Graphviz `graph` with vertex labels; unit weights are omitted.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", quote(name)).unwrap();
        for (v, label) in self.labels().iter().enumerate() {
            writeln!(out, "  {v} [label={}];", quote(label)).unwrap();
        }
        for e in self.edges() {
            if e.sigma == 1.0 {
                writeln!(out, "  {} -- {};", e.u, e.v).unwrap();
            } else {
                writeln!(
                    out,
                    "  {} -- {} [weight={}, label=\"{}\"];",
                    e.u, e.v, e.sigma, e.sigma
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_dump(&self) -> GraphDump {
        GraphDump {
            vertices: self.labels().to_vec(),
            edges: self
                .edges()
                .iter()
                .map(|e| JsonEdge {
                    u: e.u,
                    v: e.v,
                    sigma: e.sigma,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_dump()).expect("graph dump serializes")
    }

    pub fn from_dump(dump: &GraphDump) -> Result<Self, GraphError> {
        WeightedGraph::from_edges(
            dump.vertices.len(),
            dump.edges.iter().map(|e| (e.u, e.v, e.sigma)),
        )?
        .with_labels(dump.vertices.clone())
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let dump: GraphDump =
            serde_json::from_str(text).map_err(|e| GraphError::Dump(e.to_string()))?;
        Self::from_dump(&dump)
    }
}
