//! Simple undirected graphs, their text formats and per-node class labels.
//!
//! Nodes carry a dense index (`0..node_count`) used everywhere inside the
//! library and an external string id used only at the I/O boundary. Index
//! order is deterministic: first appearance for edge lists, vertex index for
//! Pajek files.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop on node {id:?}")]
    SelfLoop { line: usize, id: String },
    #[error("line {line}: expected two node ids, found {found} token(s)")]
    MalformedLine { line: usize, found: usize },
    #[error("missing *Vertices header")]
    MissingVertices,
    #[error("line {line}: malformed Pajek line: {reason}")]
    MalformedPajek { line: usize, reason: String },
    #[error("line {line}: vertex index {index} out of range 1..{n}")]
    VertexOutOfRange { line: usize, index: i64, n: usize },
    #[error("duplicate node id {0:?}")]
    DuplicateNodeId(String),
    #[error("node index {index} out of range (graph has {n} nodes)")]
    NodeOutOfRange { index: usize, n: usize },
    #[error("line {line}: class file references unknown node {id:?}")]
    UnknownClassNode { line: usize, id: String },
    #[error("line {line}: expected `id,class`")]
    MalformedClassLine { line: usize },
    #[error("graph invariant violated: {0}")]
    Invariant(String),
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
    node_ids: Vec<String>,
    id_index: HashMap<String, usize>,
}

impl Graph {
    /// Graph without nodes.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a graph from external ids and index pairs. Duplicate edges are
    /// collapsed.
    pub fn from_edges<S: Into<String>>(
        ids: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut builder = GraphBuilder::default();
        for id in ids {
            let id = id.into();
            if builder.index_of(&id).is_some() {
                return Err(GraphError::DuplicateNodeId(id));
            }
            builder.node(&id);
        }
        let n = builder.len();
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(GraphError::NodeOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    line: 0,
                    id: builder.ids[u].clone(),
                });
            }
            builder.edge(u, v);
        }
        Ok(builder.finish())
    }

    /// Builds a graph whose node ids are `"0".."n-1"`.
    pub fn from_index_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::from_edges((0..n).map(|i| i.to_string()), edges)
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    /// Sorted neighbor indices of `v`.
    ///
    /// Panics if `v` is out of range; use [`Graph::degree`] for a checked
    /// lookup.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.neighbors
            .get(v)
            .map(Vec::len)
            .ok_or(GraphError::NodeOutOfRange {
                index: v,
                n: self.node_count(),
            })
    }

    /// Degree of every node, in index order.
    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    pub fn node_id(&self, v: usize) -> &str {
        &self.node_ids[v]
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.id_index.get(id).copied()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.node_count();
        if self.node_ids.len() != n || self.id_index.len() != n {
            return Err(GraphError::Invariant("node id table size mismatch".into()));
        }
        for (v, id) in self.node_ids.iter().enumerate() {
            if self.id_index.get(id) != Some(&v) {
                return Err(GraphError::Invariant(format!("id {id:?} not indexed")));
            }
        }
        for (u, list) in self.neighbors.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Invariant(format!(
                    "neighbors of {u} not strictly ascending"
                )));
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::Invariant(format!("neighbor {v} out of range")));
                }
                if v == u {
                    return Err(GraphError::Invariant(format!("self-loop on {u}")));
                }
                if self.neighbors[v].binary_search(&u).is_err() {
                    return Err(GraphError::Invariant(format!(
                        "edge {u}-{v} is not symmetric"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct GraphBuilder {
    adjacency: Vec<BTreeSet<usize>>,
    ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl GraphBuilder {
    fn len(&self) -> usize {
        self.ids.len()
    }

    fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    fn node(&mut self, id: &str) -> usize {
        if let Some(v) = self.index_of(id) {
            return v;
        }
        let v = self.ids.len();
        self.ids.push(id.to_owned());
        self.index.insert(id.to_owned(), v);
        self.adjacency.push(BTreeSet::new());
        v
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    fn finish(self) -> Graph {
        let graph = Graph {
            neighbors: self
                .adjacency
                .into_iter()
                .map(|set| set.into_iter().collect())
                .collect(),
            node_ids: self.ids,
            id_index: self.index,
        };
        debug_assert_eq!(graph.validate(), Ok(()));
        graph
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` are
/// comments; node order is order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut builder = GraphBuilder::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let &[a, b] = tokens.as_slice() else {
            return Err(GraphError::MalformedLine {
                line: lineno + 1,
                found: tokens.len(),
            });
        };
        if a == b {
            return Err(GraphError::SelfLoop {
                line: lineno + 1,
                id: a.to_owned(),
            });
        }
        let u = builder.node(a);
        let v = builder.node(b);
        builder.edge(u, v);
    }
    Ok(builder.finish())
}

/// Writes one `u v` line per edge. Isolated nodes cannot be represented.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.node_id(u), g.node_id(v));
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PajekSection {
    Preamble,
    Vertices,
    Links,
    Ignored,
}

/// Parses the subset of the Pajek `.net` format made of a `*Vertices n`
/// section followed by `*Edges` and/or `*Arcs` sections. Arcs are read as
/// undirected edges and anything after the two endpoints (weights, drawing
/// attributes) is ignored. Vertices without a label line get their index
/// as id.
pub fn parse_pajek(text: &str) -> Result<Graph, GraphError> {
    let mut section = PajekSection::Preamble;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut links: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_vertices = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(header) = line.strip_prefix('*') {
            let mut parts = header.split_whitespace();
            let name = parts.next().unwrap_or("").to_ascii_lowercase();
            section = match name.as_str() {
                "vertices" => {
                    if seen_vertices {
                        return Err(malformed(line_no, "repeated *Vertices header"));
                    }
                    let n = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| malformed(line_no, "*Vertices needs a node count"))?;
                    seen_vertices = true;
                    labels = vec![None; n];
                    PajekSection::Vertices
                }
                "edges" | "arcs" => {
                    if !seen_vertices {
                        return Err(GraphError::MissingVertices);
                    }
                    PajekSection::Links
                }
                "network" => PajekSection::Preamble,
                _ => PajekSection::Ignored,
            };
            continue;
        }
        match section {
            PajekSection::Preamble => {
                return Err(malformed(line_no, "data before *Vertices header"));
            }
            PajekSection::Ignored => {}
            PajekSection::Vertices => {
                let (index, rest) = split_first_token(line);
                let index = parse_vertex_index(index, line_no, labels.len())?;
                labels[index] = Some(parse_label(rest, line_no)?.unwrap_or_else(|| (index + 1).to_string()));
            }
            PajekSection::Links => {
                let mut tokens = line.split_whitespace();
                let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
                    return Err(malformed(line_no, "link needs two vertex indices"));
                };
                let u = parse_vertex_index(a, line_no, labels.len())?;
                let v = parse_vertex_index(b, line_no, labels.len())?;
                links.push((u, v, line_no));
            }
        }
    }
    if !seen_vertices {
        return Err(GraphError::MissingVertices);
    }

    let mut builder = GraphBuilder::default();
    for (i, label) in labels.into_iter().enumerate() {
        let id = label.unwrap_or_else(|| (i + 1).to_string());
        if builder.index_of(&id).is_some() {
            return Err(GraphError::DuplicateNodeId(id));
        }
        builder.node(&id);
    }
    for (u, v, line) in links {
        if u == v {
            return Err(GraphError::SelfLoop {
                line,
                id: builder.ids[u].clone(),
            });
        }
        builder.edge(u, v);
    }
    Ok(builder.finish())
}

fn malformed(line: usize, reason: &str) -> GraphError {
    GraphError::MalformedPajek {
        line,
        reason: reason.to_owned(),
    }
}

fn split_first_token(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(pos) => (&line[..pos], line[pos..].trim_start()),
        None => (line, ""),
    }
}

fn parse_vertex_index(token: &str, line: usize, n: usize) -> Result<usize, GraphError> {
    let index: i64 = token
        .parse()
        .map_err(|_| malformed(line, &format!("bad vertex index {token:?}")))?;
    if index < 1 || index as u64 > n as u64 {
        return Err(GraphError::VertexOutOfRange { line, index, n });
    }
    Ok(index as usize - 1)
}

fn parse_label(rest: &str, line: usize) -> Result<Option<String>, GraphError> {
    if rest.is_empty() {
        return Ok(None);
    }
    if let Some(quoted) = rest.strip_prefix('"') {
        let end = quoted
            .find('"')
            .ok_or_else(|| malformed(line, "unterminated vertex label"))?;
        return Ok(Some(quoted[..end].to_owned()));
    }
    Ok(rest.split_whitespace().next().map(str::to_owned))
}

/// Writes the graph as `*Vertices` plus one `*Edges` section.
pub fn to_pajek(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "*Vertices {}", g.node_count());
    for (i, id) in g.node_ids().iter().enumerate() {
        let _ = writeln!(out, "{} \"{}\"", i + 1, id);
    }
    out.push_str("*Edges\n");
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Prefix given to the first operand's ids by [`disjoint_union`].
pub const LEFT_PREFIX: &str = "A:";
/// Prefix given to the second operand's ids by [`disjoint_union`].
pub const RIGHT_PREFIX: &str = "B:";

/// Places `g2` next to `g1`: its indices are shifted by `g1.node_count()`
/// and ids are prefixed with `A:` / `B:` to stay unique.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let offset = g1.node_count();
    let mut neighbors = g1.neighbors.clone();
    neighbors.extend(
        g2.neighbors
            .iter()
            .map(|list| list.iter().map(|&v| v + offset).collect()),
    );
    let node_ids: Vec<String> = g1
        .node_ids
        .iter()
        .map(|id| format!("{LEFT_PREFIX}{id}"))
        .chain(g2.node_ids.iter().map(|id| format!("{RIGHT_PREFIX}{id}")))
        .collect();
    let id_index = node_ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), i))
        .collect();
    Graph {
        neighbors,
        node_ids,
        id_index,
    }
}

/// Class label per external node id. Used only for evaluation output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeClassMap {
    class_of: BTreeMap<String, String>,
}

impl NodeClassMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns a class, rejecting ids that are not nodes of `g`.
    pub fn insert(&mut self, g: &Graph, id: &str, class: &str) -> Result<(), GraphError> {
        if g.index_of(id).is_none() {
            return Err(GraphError::UnknownClassNode {
                line: 0,
                id: id.to_owned(),
            });
        }
        self.class_of.insert(id.to_owned(), class.to_owned());
        Ok(())
    }

    pub fn class_of(&self, id: &str) -> Option<&str> {
        self.class_of.get(id).map(String::as_str)
    }

    /// Distinct class labels, sorted.
    pub fn classes(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.class_of.values().map(String::as_str).collect();
        set.into_iter().collect()
    }

    /// Node indices of `g` carrying `class`, ascending.
    pub fn members(&self, g: &Graph, class: &str) -> Vec<usize> {
        let mut members: Vec<usize> = self
            .class_of
            .iter()
            .filter(|(_, c)| c.as_str() == class)
            .filter_map(|(id, _)| g.index_of(id))
            .collect();
        members.sort_unstable();
        members
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.class_of.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// Parses `id,class` rows. The first row is taken as a header when its id
/// is not a node of `g`; any later unknown id is an error.
pub fn parse_classes(text: &str, g: &Graph) -> Result<NodeClassMap, GraphError> {
    let mut map = NodeClassMap::new();
    let mut first = true;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let is_first = std::mem::replace(&mut first, false);
        let Some((id, class)) = line.split_once(',') else {
            return Err(GraphError::MalformedClassLine { line: lineno + 1 });
        };
        let (id, class) = (id.trim(), class.trim());
        if class.is_empty() || class.contains(',') {
            return Err(GraphError::MalformedClassLine { line: lineno + 1 });
        }
        if g.index_of(id).is_none() {
            if is_first {
                continue;
            }
            return Err(GraphError::UnknownClassNode {
                line: lineno + 1,
                id: id.to_owned(),
            });
        }
        map.class_of.insert(id.to_owned(), class.to_owned());
    }
    Ok(map)
}

/// Parses a Pajek partition (`.clu`): a `*Vertices n` line followed by one
/// class value per vertex, in vertex order. Values become class labels
/// verbatim.
pub fn parse_pajek_partition(text: &str, g: &Graph) -> Result<NodeClassMap, GraphError> {
    let mut values = Vec::new();
    let mut declared = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(header) = line.strip_prefix('*') {
            let mut parts = header.split_whitespace();
            if parts.next().is_some_and(|p| p.eq_ignore_ascii_case("vertices")) {
                declared = parts.next().and_then(|t| t.parse::<usize>().ok());
            }
            continue;
        }
        values.push((lineno + 1, line.to_owned()));
    }
    let n = declared.ok_or(GraphError::MissingVertices)?;
    if n != g.node_count() || values.len() != n {
        return Err(GraphError::MalformedPajek {
            line: values.last().map_or(1, |v| v.0),
            reason: format!(
                "partition lists {} values for {n} vertices, graph has {} nodes",
                values.len(),
                g.node_count()
            ),
        });
    }
    let mut map = NodeClassMap::new();
    for (v, (_, value)) in values.into_iter().enumerate() {
        map.class_of.insert(g.node_id(v).to_owned(), value);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pajek_partition() {
        let g = parse_pajek("*Vertices 3\n1 \"a\"\n2 \"b\"\n3 \"c\"\n*Edges\n1 2\n").unwrap();
        let classes = parse_pajek_partition("*Vertices 3\n1\n2\n2\n", &g).unwrap();
        assert_eq!(classes.class_of("c"), Some("2"));
        assert_eq!(classes.classes(), ["1", "2"]);
        assert!(parse_pajek_partition("*Vertices 3\n1\n2\n", &g).is_err());
        assert_eq!(
            parse_pajek_partition("1\n2\n3\n", &g),
            Err(GraphError::MissingVertices)
        );
    }

    #[test]
    fn edge_list_basic() {
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(g.index_of("b").unwrap()), Ok(2));
        assert_eq!(g.node_ids(), ["a", "b", "c"]);
    }

    #[test]
    fn edge_list_collapses_duplicates() {
        let g = parse_edge_list("a b\nb a\na b").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_rejects_self_loop_and_bad_lines() {
        assert_eq!(
            parse_edge_list("a a"),
            Err(GraphError::SelfLoop {
                line: 1,
                id: "a".into()
            })
        );
        assert_eq!(
            parse_edge_list("# c\n\na b\na b c\n"),
            Err(GraphError::MalformedLine { line: 4, found: 3 })
        );
        assert!(matches!(
            parse_edge_list("x\n"),
            Err(GraphError::MalformedLine { line: 1, found: 1 })
        ));
    }

    #[test]
    fn edge_list_empty_input() {
        let g = parse_edge_list("# nothing here\n\n").unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn pajek_arcs_are_symmetrized() {
        let g = parse_pajek("*Vertices 2\n1 \"x\"\n2 \"y\"\n*Arcs\n1 2\n2 1").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_ids(), ["x", "y"]);
    }

    #[test]
    fn pajek_errors() {
        assert_eq!(
            parse_pajek("*Vertices 1\n1 \"x\"\n*Edges\n1 2"),
            Err(GraphError::VertexOutOfRange {
                line: 4,
                index: 2,
                n: 1
            })
        );
        assert_eq!(parse_pajek("*Edges\n1 2"), Err(GraphError::MissingVertices));
        assert_eq!(parse_pajek(""), Err(GraphError::MissingVertices));
        assert!(matches!(
            parse_pajek("*Vertices 2\n0 \"x\""),
            Err(GraphError::VertexOutOfRange { index: 0, .. })
        ));
    }

    #[test]
    fn pajek_tolerates_weights_attributes_and_case() {
        let text = "*Network trade\n*vertices 3\n1 \"New Zealand\" 0.1 0.2 0.5\n2 \"Chad\"\n\
                    *ARCS\n1 2 3.5\n% comment\n*Edges\n2 3 1\n";
        let g = parse_pajek(text).unwrap();
        assert_eq!(g.node_ids(), ["New Zealand", "Chad", "3"]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degrees(), [1, 2, 1]);
    }

    #[test]
    fn union_offsets_and_prefixes() {
        let k2 = Graph::from_index_edges(2, [(0, 1)]).unwrap();
        let u = disjoint_union(&k2, &k2);
        assert_eq!(u.node_count(), 4);
        assert_eq!(u.edge_count(), 2);
        assert!(u.has_edge(2, 3) && !u.has_edge(1, 2));
        assert_eq!(u.node_ids(), ["A:0", "A:1", "B:0", "B:1"]);
        u.validate().unwrap();

        let tri = Graph::from_index_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let single = Graph::from_index_edges(1, []).unwrap();
        let u = disjoint_union(&tri, &single);
        assert_eq!(u.node_count(), 4);
        assert_eq!(u.degrees(), [2, 2, 2, 0]);

        let u = disjoint_union(&Graph::empty(), &tri);
        assert_eq!(u.degrees(), tri.degrees());
        assert_eq!(u.edges().collect::<Vec<_>>(), tri.edges().collect::<Vec<_>>());
        assert_eq!(u.node_id(0), "B:0");
    }

    #[test]
    fn degree_lookup() {
        let star = Graph::from_index_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.degree(0), Ok(4));
        let lone = Graph::from_index_edges(1, []).unwrap();
        assert_eq!(lone.degree(0), Ok(0));
        assert_eq!(
            lone.degree(1),
            Err(GraphError::NodeOutOfRange { index: 1, n: 1 })
        );
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_index_edges(2, [(1, 1)]),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            Graph::from_index_edges(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange { index: 2, n: 2 })
        ));
        assert!(matches!(
            Graph::from_edges(["a", "a"], []),
            Err(GraphError::DuplicateNodeId(_))
        ));
    }

    #[test]
    fn classes_with_and_without_header() {
        let g = parse_edge_list("a b\nb c").unwrap();
        let with_header = parse_classes("id,class\na,x\nb,y\n", &g).unwrap();
        let without = parse_classes("a,x\nb,y\n", &g).unwrap();
        assert_eq!(with_header, without);
        assert_eq!(with_header.class_of("b"), Some("y"));
        assert_eq!(with_header.classes(), ["x", "y"]);
        assert_eq!(with_header.members(&g, "x"), [0]);

        assert_eq!(
            parse_classes("a,x\nzz,y\n", &g),
            Err(GraphError::UnknownClassNode {
                line: 2,
                id: "zz".into()
            })
        );
        assert!(matches!(
            parse_classes("a;x\n", &g),
            Err(GraphError::MalformedClassLine { line: 1 })
        ));
    }

    #[test]
    fn validate_catches_asymmetry() {
        let mut g = Graph::from_index_edges(3, [(0, 1)]).unwrap();
        g.neighbors[2].push(0);
        assert!(matches!(g.validate(), Err(GraphError::Invariant(_))));
    }
}
