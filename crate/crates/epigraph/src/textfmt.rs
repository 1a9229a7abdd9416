//! Line-oriented text format for graphs, relations, and maps.
//!
//! ```text
//! # comments run to the end of the line
//! graph A plain 4
//! rel A 1 3
//! rel A 3 1
//! graph B signed 2
//! rel B antidiagonal
//! map f A B
//! 1 -> -1
//! 2 -> -1
//! 3 -> 1
//! 4 -> 2
//! ```
//!
//! Relations are optional per graph; a graph without `rel` lines denotes a
//! structure with no distinguished relation. The parser rejects unknown
//! vertices, duplicate assignments, and maps missing assignments.

use indexmap::IndexMap;
use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::LinearGraph;
use crate::morphism::StructureMap;
use crate::structure::{antidiagonal, RelStructure, Relation};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct TextError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> TextError {
    TextError {
        line,
        message: message.into(),
    }
}

/// A named map together with the names of its endpoint graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMap {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub map: StructureMap,
}

/// A parsed file: graphs with optional relations, plus maps, in declaration
/// order.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Document {
    pub graphs: IndexMap<String, LinearGraph>,
    pub rels: IndexMap<String, Relation>,
    pub maps: Vec<NamedMap>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, TextError> {
        let mut parser = Parser::new();
        for (idx, line) in text.lines().enumerate() {
            parser.feed(idx + 1, line)?;
        }
        parser.finish()
    }

    pub fn graph(&self, name: &str) -> Option<LinearGraph> {
        self.graphs.get(name).copied()
    }

    /// The structure a graph declares: its graph plus its relation, if any.
    pub fn structure(&self, name: &str) -> Option<RelStructure> {
        let graph = self.graph(name)?;
        Some(RelStructure {
            graph,
            s: self.rels.get(name).cloned(),
        })
    }

    /// All declared structures in declaration order.
    pub fn structures(&self) -> Vec<(String, RelStructure)> {
        self.graphs
            .keys()
            .map(|name| {
                (
                    name.clone(),
                    self.structure(name).expect("name comes from the index"),
                )
            })
            .collect()
    }

    pub fn map(&self, name: &str) -> Option<&NamedMap> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, graph) in &self.graphs {
            out.push_str(&graph_line(name, *graph));
            out.push('\n');
            if let Some(rel) = self.rels.get(name) {
                for line in relation_lines(name, rel) {
                    out.push_str(&line);
                    out.push('\n');
                }
            }
            out.push('\n');
        }
        for named in &self.maps {
            for line in map_lines(&named.name, &named.src, &named.dst, &named.map) {
                out.push_str(&line);
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }
}

pub fn graph_line(name: &str, graph: LinearGraph) -> String {
    let kind = if graph.is_signed() { "signed" } else { "plain" };
    format!("graph {name} {kind} {}", graph.max_vertex())
}

pub fn relation_lines(name: &str, rel: &Relation) -> Vec<String> {
    if rel.is_antidiagonal() {
        vec![format!("rel {name} antidiagonal")]
    } else {
        rel.pairs()
            .iter()
            .map(|(a, b)| format!("rel {name} {a} {b}"))
            .collect()
    }
}

pub fn map_lines(name: &str, src: &str, dst: &str, map: &StructureMap) -> Vec<String> {
    let mut lines = vec![format!("map {name} {src} {dst}")];
    for v in map.domain().vertices() {
        lines.push(format!("{v} -> {}", map.apply(v)));
    }
    lines
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

#[derive(Debug)]
enum RelForm {
    Antidiagonal,
    Pairs(BTreeSet<(i32, i32)>),
}

#[derive(Debug)]
struct OpenMap {
    name: String,
    src: String,
    dst: String,
    header_line: usize,
    images: BTreeMap<i32, i32>,
}

/// Incremental line parser; `Document::parse` drives it over a whole file.
#[derive(Debug, Default)]
pub struct Parser {
    graphs: IndexMap<String, LinearGraph>,
    rels: IndexMap<String, RelForm>,
    maps: Vec<NamedMap>,
    open_map: Option<OpenMap>,
}

impl Parser {
    pub fn new() -> Parser {
        Parser::default()
    }

    pub fn feed(&mut self, lineno: usize, raw: &str) -> Result<(), TextError> {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            return Ok(());
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "graph" => {
                self.close_open_map()?;
                let [_, name, kind, size] = tokens.as_slice() else {
                    return Err(err(lineno, "expected: graph <name> plain|signed <size>"));
                };
                if self.graphs.contains_key(*name) {
                    return Err(err(lineno, format!("graph {name} is already defined")));
                }
                let size: i64 = size
                    .parse()
                    .map_err(|_| err(lineno, format!("bad size {size:?}")))?;
                let graph = match *kind {
                    "plain" => LinearGraph::plain(size),
                    "signed" => LinearGraph::signed(size),
                    other => return Err(err(lineno, format!("unknown graph kind {other:?}"))),
                }
                .map_err(|e| err(lineno, e.to_string()))?;
                self.graphs.insert(name.to_string(), graph);
                Ok(())
            }
            "rel" => {
                self.close_open_map()?;
                match tokens.as_slice() {
                    [_, name, "antidiagonal"] => {
                        let Some(_) = self.graphs.get(*name) else {
                            return Err(err(lineno, format!("unknown graph {name}")));
                        };
                        match self.rels.get(*name) {
                            None => {
                                self.rels.insert(name.to_string(), RelForm::Antidiagonal);
                                Ok(())
                            }
                            Some(_) => Err(err(
                                lineno,
                                format!("relation for {name} is already specified"),
                            )),
                        }
                    }
                    [_, name, a, b] => {
                        let Some(graph) = self.graphs.get(*name).copied() else {
                            return Err(err(lineno, format!("unknown graph {name}")));
                        };
                        let a: i32 = a
                            .parse()
                            .map_err(|_| err(lineno, format!("bad vertex {a:?}")))?;
                        let b: i32 = b
                            .parse()
                            .map_err(|_| err(lineno, format!("bad vertex {b:?}")))?;
                        for v in [a, b] {
                            if !graph.contains(v) {
                                return Err(err(
                                    lineno,
                                    format!("vertex {v} is not in graph {name} ({graph})"),
                                ));
                            }
                        }
                        match self
                            .rels
                            .entry(name.to_string())
                            .or_insert_with(|| RelForm::Pairs(BTreeSet::new()))
                        {
                            RelForm::Pairs(pairs) => {
                                pairs.insert((a, b));
                                Ok(())
                            }
                            RelForm::Antidiagonal => Err(err(
                                lineno,
                                format!("relation for {name} is already the antidiagonal"),
                            )),
                        }
                    }
                    _ => Err(err(
                        lineno,
                        "expected: rel <graph> <a> <b>  or  rel <graph> antidiagonal",
                    )),
                }
            }
            "map" => {
                self.close_open_map()?;
                let [_, name, src, dst] = tokens.as_slice() else {
                    return Err(err(lineno, "expected: map <name> <src> <dst>"));
                };
                for g in [src, dst] {
                    if !self.graphs.contains_key(*g) {
                        return Err(err(lineno, format!("unknown graph {g}")));
                    }
                }
                if self.maps.iter().any(|m| m.name == **name) {
                    return Err(err(lineno, format!("map {name} is already defined")));
                }
                self.open_map = Some(OpenMap {
                    name: name.to_string(),
                    src: src.to_string(),
                    dst: dst.to_string(),
                    header_line: lineno,
                    images: BTreeMap::new(),
                });
                Ok(())
            }
            _ => {
                if let [v, "->", w] = tokens.as_slice() {
                    let Some(open) = self.open_map.as_mut() else {
                        return Err(err(lineno, "assignment outside of a map block"));
                    };
                    let v: i32 = v
                        .parse()
                        .map_err(|_| err(lineno, format!("bad vertex {v:?}")))?;
                    let w: i32 = w
                        .parse()
                        .map_err(|_| err(lineno, format!("bad vertex {w:?}")))?;
                    let src = self.graphs[&open.src];
                    let dst = self.graphs[&open.dst];
                    if !src.contains(v) {
                        return Err(err(
                            lineno,
                            format!("vertex {v} is not in graph {} ({src})", open.src),
                        ));
                    }
                    if !dst.contains(w) {
                        return Err(err(
                            lineno,
                            format!("vertex {w} is not in graph {} ({dst})", open.dst),
                        ));
                    }
                    if open.images.insert(v, w).is_some() {
                        return Err(err(lineno, format!("duplicate assignment for {v}")));
                    }
                    Ok(())
                } else {
                    Err(err(lineno, format!("unknown directive {:?}", tokens[0])))
                }
            }
        }
    }

    fn close_open_map(&mut self) -> Result<(), TextError> {
        let Some(open) = self.open_map.take() else {
            return Ok(());
        };
        let src = self.graphs[&open.src];
        let dst = self.graphs[&open.dst];
        let missing: Vec<i32> = src
            .vertices()
            .filter(|v| !open.images.contains_key(v))
            .collect();
        if !missing.is_empty() {
            return Err(err(
                open.header_line,
                format!("map {} is missing assignments for {missing:?}", open.name),
            ));
        }
        let images: Vec<i32> = src.vertices().map(|v| open.images[&v]).collect();
        let map = StructureMap::new(src, dst, images)
            .map_err(|e| err(open.header_line, e.to_string()))?;
        self.maps.push(NamedMap {
            name: open.name,
            src: open.src,
            dst: open.dst,
            map,
        });
        Ok(())
    }

    pub fn finish(mut self) -> Result<Document, TextError> {
        self.close_open_map()?;
        let mut rels = IndexMap::new();
        for (name, form) in self.rels {
            let graph = self.graphs[&name];
            let rel = match form {
                RelForm::Antidiagonal => antidiagonal(graph),
                RelForm::Pairs(pairs) => {
                    Relation::new(graph, pairs).expect("pairs were validated per line")
                }
            };
            rels.insert(name, rel);
        }
        Ok(Document {
            graphs: self.graphs,
            rels,
            maps: self.maps,
        })
    }
}

/// Renders structures and maps the way the parser reads them; convenience
/// for building output documents incrementally.
#[derive(Debug, Default)]
pub struct DocumentBuilder {
    doc: Document,
}

impl DocumentBuilder {
    pub fn new() -> DocumentBuilder {
        DocumentBuilder::default()
    }

    pub fn push_structure(&mut self, name: &str, structure: &RelStructure) -> &mut Self {
        self.doc.graphs.insert(name.to_string(), structure.graph);
        if let Some(s) = &structure.s {
            self.doc.rels.insert(name.to_string(), s.clone());
        }
        self
    }

    pub fn push_map(&mut self, name: &str, src: &str, dst: &str, map: &StructureMap) -> &mut Self {
        self.doc.maps.push(NamedMap {
            name: name.to_string(),
            src: src.to_string(),
            dst: dst.to_string(),
            map: map.clone(),
        });
        self
    }

    pub fn build(self) -> Document {
        self.doc
    }

    pub fn to_text(&self) -> String {
        self.doc.to_text()
    }
}

impl std::fmt::Display for Document {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample document
graph A plain 4
rel A 1 3
rel A 3 1

graph B signed 2
rel B antidiagonal

map f B A   # a map with a comment
-2 -> 1
-1 -> 2
1 -> 3
2 -> 4
";

    #[test]
    fn parses_graphs_relations_and_maps() {
        let doc = Document::parse(SAMPLE).unwrap();
        assert_eq!(doc.graphs.len(), 2);
        assert_eq!(doc.graph("A"), Some(LinearGraph::plain(4).unwrap()));
        let a = doc.structure("A").unwrap();
        let s = a.s.unwrap();
        assert!(s.contains(1, 3) && s.contains(3, 1) && !s.contains(1, 1));
        let b = doc.structure("B").unwrap();
        assert!(b.s.unwrap().is_antidiagonal());
        let f = doc.map("f").unwrap();
        assert_eq!(f.map.apply(-2), 1);
        assert_eq!(f.map.apply(2), 4);
    }

    #[test]
    fn round_trips_through_text() {
        let doc = Document::parse(SAMPLE).unwrap();
        let again = Document::parse(&doc.to_text()).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn rejects_unknown_vertices_with_line_numbers() {
        let bad = "graph A plain 2\nrel A 1 5\n";
        let e = Document::parse(bad).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("not in graph A"));

        let bad_map = "graph A plain 2\nmap f A A\n1 -> 9\n";
        let e = Document::parse(bad_map).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn rejects_duplicate_assignments_and_partial_maps() {
        let dup = "graph A plain 2\nmap f A A\n1 -> 1\n1 -> 2\n";
        let e = Document::parse(dup).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("duplicate assignment"));

        let partial = "graph A plain 3\nmap f A A\n1 -> 1\n";
        let e = Document::parse(partial).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("missing assignments"));
    }

    #[test]
    fn rejects_mixing_antidiagonal_with_pairs() {
        let mixed = "graph A plain 2\nrel A antidiagonal\nrel A 1 1\n";
        let e = Document::parse(mixed).unwrap_err();
        assert_eq!(e.line, 3);

        let reversed = "graph A plain 2\nrel A 1 1\nrel A antidiagonal\n";
        let e = Document::parse(reversed).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn rejects_strays_and_unknown_directives() {
        let stray = "graph A plain 2\n1 -> 2\n";
        let e = Document::parse(stray).unwrap_err();
        assert!(e.message.contains("outside of a map block"));

        let unknown = "widget A plain 2\n";
        let e = Document::parse(unknown).unwrap_err();
        assert!(e.message.contains("unknown directive"));
    }

    #[test]
    fn antidiagonal_shorthand_round_trips() {
        let doc = Document::parse("graph B signed 3\nrel B antidiagonal\n").unwrap();
        let text = doc.to_text();
        assert!(text.contains("rel B antidiagonal"));
        // A relation that happens to equal the antidiagonal also uses the
        // shorthand when rendered.
        let expanded = "graph C plain 2\nrel C 1 2\nrel C 2 1\n";
        let doc = Document::parse(expanded).unwrap();
        assert!(doc.to_text().contains("rel C antidiagonal"));
    }

    #[test]
    fn builder_output_parses_back() {
        let g = LinearGraph::signed(2).unwrap();
        let structure = RelStructure::antidiagonal_on(g);
        let mut b = DocumentBuilder::new();
        b.push_structure("D", &structure);
        b.push_map("id", "D", "D", &StructureMap::identity(g));
        let text = b.to_text();
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.map("id").unwrap().map, StructureMap::identity(g));
    }
}
