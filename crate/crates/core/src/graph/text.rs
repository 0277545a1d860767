//! Line-based graph format.
//!
//! ```text
//! # triangle with one source
//! v 0
//! e 0 1
//! e 1 2
//! e 2 0
//! s 0
//! ```
//!
//! `e u u` is a self-loop. Vertices named by `e` or `s` are added implicitly.
//! Edges are numbered in order of appearance.

use std::fmt::Write;

use super::{Graph, SourcedGraph, VertexId, VertexSet};
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<SourcedGraph> {
    let mut graph = Graph::new();
    let mut sources = VertexSet::new();
    let mut next_edge = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let directive = words.next().unwrap_or("");
        let args: Vec<VertexId> = words
            .map(|w| w.parse::<VertexId>().map_err(|_| Error::Parse { line, msg: format!("bad vertex id `{w}`") }))
            .collect::<Result<_>>()?;
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse { line, msg: format!("`{directive}` takes {n} id(s), got {}", args.len()) })
            }
        };
        match directive {
            "v" => {
                arity(1)?;
                graph.add_vertex(args[0]);
            }
            "e" => {
                arity(2)?;
                graph.add_vertex(args[0]);
                graph.add_vertex(args[1]);
                graph.add_edge(next_edge, args[0], args[1]).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
                next_edge += 1;
            }
            "s" => {
                arity(1)?;
                graph.add_vertex(args[0]);
                sources.insert(args[0]);
            }
            other => return Err(Error::Parse { line, msg: format!("unknown directive `{other}`") }),
        }
    }
    SourcedGraph::new(graph, sources)
}

pub fn write_graph(g: &SourcedGraph) -> String {
    let mut out = String::new();
    for v in g.graph.vertices() {
        writeln!(out, "v {v}").unwrap();
    }
    for (_, ends) in g.graph.edges() {
        writeln!(out, "e {} {}", ends.first(), ends.second()).unwrap();
    }
    for s in &g.sources {
        writeln!(out, "s {s}").unwrap();
    }
    out
}
