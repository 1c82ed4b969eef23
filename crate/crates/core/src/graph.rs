//! Simple undirected graphs with stable string identifiers.
//!
//! Vertices are kept sorted by identifier and edges are stored as index
//! pairs `(a, b)` with `a < b`, sorted lexicographically. Every iteration
//! order exposed here follows that sorting, so everything built on top of a
//! [`Graph`] is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Stable identifier of a vertex.
pub type VertexId = String;

/// Separator used in edge keys (`"u--v"`), so it is forbidden inside ids.
pub const EDGE_KEY_SEPARATOR: &str = "--";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(VertexId),
    #[error("duplicate edge `{0}`--`{1}`")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge `{0}`--`{1}` has an endpoint that is not a vertex")]
    DanglingEndpoint(VertexId, VertexId),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(VertexId),
    #[error("invalid vertex id `{0}` (must be non-empty and must not contain `--`)")]
    InvalidVertexId(VertexId),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("no edge `{0}`--`{1}`")]
    MissingEdge(VertexId, VertexId),
    #[error("malformed edge key `{0}`")]
    MalformedEdgeKey(String),
    #[error("graphs share vertex `{0}`")]
    SharedVertex(VertexId),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Simple undirected graph with optional vertex roles and edge tags.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    roles: BTreeMap<usize, BTreeSet<String>>,
    edge_tags: BTreeMap<usize, BTreeSet<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names.len())
            .field("edges", &self.edges.len())
            .finish()
    }
}

/// Accumulates vertices, edges and labels before validation.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    roles: Vec<(VertexId, String)>,
    edge_tags: Vec<(VertexId, VertexId, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<VertexId>) -> &mut Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertex_with_role(&mut self, id: impl Into<VertexId>, role: impl Into<String>) -> &mut Self {
        let id = id.into();
        self.roles.push((id.clone(), role.into()));
        self.vertices.push(id);
        self
    }

    pub fn role(&mut self, id: impl Into<VertexId>, role: impl Into<String>) -> &mut Self {
        self.roles.push((id.into(), role.into()));
        self
    }

    pub fn edge(&mut self, a: impl Into<VertexId>, b: impl Into<VertexId>) -> &mut Self {
        self.edges.push((a.into(), b.into()));
        self
    }

    pub fn tagged_edge(
        &mut self,
        a: impl Into<VertexId>,
        b: impl Into<VertexId>,
        tag: impl Into<String>,
    ) -> &mut Self {
        let (a, b) = (a.into(), b.into());
        self.edge_tags.push((a.clone(), b.clone(), tag.into()));
        self.edges.push((a, b));
        self
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        let mut graph = Graph::build(self.vertices.iter().cloned(), self.edges.iter().cloned())?;
        for (id, role) in &self.roles {
            let v = graph.require_vertex(id)?;
            graph.roles.entry(v).or_default().insert(role.clone());
        }
        for (a, b, tag) in &self.edge_tags {
            let e = graph.require_edge(a, b)?;
            graph.edge_tags.entry(e).or_default().insert(tag.clone());
        }
        Ok(graph)
    }
}

/// Which endpoints are identified when two edges are glued.
///
/// With edges `(a, b)` and `(c, d)`, `Parallel` merges `a~c`, `b~d` and
/// `Crossed` merges `a~d`, `b~c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Parallel,
    Crossed,
}

/// Bipartiteness certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `side[v]` is `false` for one class and `true` for the other.
    Sides(Vec<bool>),
    /// Vertex indices of an odd cycle, in cycle order.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Sides(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub degrees: Vec<usize>,
    pub is_connected: bool,
    pub bipartition: Bipartition,
}

impl Graph {
    /// Builds a graph from explicit vertex and edge lists.
    pub fn build<V, A, B>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Graph, GraphError>
    where
        V: Into<VertexId>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        let mut names: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        for name in &names {
            if name.is_empty() || name.contains(EDGE_KEY_SEPARATOR) {
                return Err(GraphError::InvalidVertexId(name.clone()));
            }
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let index: HashMap<VertexId, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();

        let mut pairs = Vec::new();
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            let (a, b): (VertexId, VertexId) = (a.into(), b.into());
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
                return Err(GraphError::DanglingEndpoint(a, b));
            };
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            pairs.push(key);
        }
        pairs.sort_unstable();
        Ok(Self::from_parts(names, index, pairs))
    }

    fn from_parts(names: Vec<VertexId>, index: HashMap<VertexId, usize>, edges: Vec<(usize, usize)>) -> Graph {
        let mut adjacency = vec![Vec::new(); names.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (e, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
            edge_index.insert((a, b), e);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            names,
            index,
            edges,
            edge_index,
            adjacency,
            roles: BTreeMap::new(),
            edge_tags: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[VertexId] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize, GraphError> {
        self.vertex(id).ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    /// Edges as sorted index pairs; the position is the edge index.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn edge(&self, a: &str, b: &str) -> Option<usize> {
        self.edge_between(self.vertex(a)?, self.vertex(b)?)
    }

    pub fn require_edge(&self, a: &str, b: &str) -> Result<usize, GraphError> {
        self.edge(a, b)
            .ok_or_else(|| GraphError::MissingEdge(a.to_string(), b.to_string()))
    }

    /// `"a--b"` with the endpoints in identifier order.
    pub fn edge_key(&self, e: usize) -> String {
        let (a, b) = self.edges[e];
        format!("{}{}{}", self.names[a], EDGE_KEY_SEPARATOR, self.names[b])
    }

    pub fn edge_from_key(&self, key: &str) -> Result<usize, GraphError> {
        let (a, b) = key
            .split_once(EDGE_KEY_SEPARATOR)
            .ok_or_else(|| GraphError::MalformedEdgeKey(key.to_string()))?;
        self.require_edge(a, b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// `(neighbor, edge)` pairs sorted by neighbor.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(n, _)| n)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn roles(&self, v: usize) -> impl Iterator<Item = &str> {
        self.roles.get(&v).into_iter().flatten().map(String::as_str)
    }

    pub fn has_role(&self, v: usize, role: &str) -> bool {
        self.roles.get(&v).is_some_and(|r| r.contains(role))
    }

    /// Vertices carrying `role`, in index order.
    pub fn vertices_with_role(&self, role: &str) -> Vec<usize> {
        self.roles
            .iter()
            .filter(|(_, r)| r.contains(role))
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn edge_tags(&self, e: usize) -> impl Iterator<Item = &str> {
        self.edge_tags.get(&e).into_iter().flatten().map(String::as_str)
    }

    pub fn has_edge_tag(&self, e: usize, tag: &str) -> bool {
        self.edge_tags.get(&e).is_some_and(|t| t.contains(tag))
    }

    pub fn edges_with_tag(&self, tag: &str) -> Vec<usize> {
        self.edge_tags
            .iter()
            .filter(|(_, t)| t.contains(tag))
            .map(|(&e, _)| e)
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertex_count()];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &(n, _) in &self.adjacency[v] {
                    if comp[n] == usize::MAX {
                        comp[n] = id;
                        members.push(n);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// BFS 2-coloring, or an odd cycle when none exists.
    pub fn bipartition(&self) -> Bipartition {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &(w, _) in &self.adjacency[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => {
                            return Bipartition::OddCycle(tree_cycle(&parent, &depth, v, w));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Sides(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_bipartite()
    }

    pub fn structural_report(&self) -> StructuralReport {
        StructuralReport {
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            max_degree: self.max_degree(),
            degrees: (0..self.vertex_count()).map(|v| self.degree(v)).collect(),
            is_connected: self.is_connected(),
            bipartition: self.bipartition(),
        }
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.vertex_count()
    }

    /// Subgraph formed by the given edges and their endpoints. Labels are kept.
    /// Returns the subgraph and, for each of its edges, the source edge index.
    pub fn edge_subgraph(&self, edges: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: BTreeSet<usize> = BTreeSet::new();
        for &e in edges {
            let (a, b) = self.edges[e];
            keep.insert(a);
            keep.insert(b);
        }
        self.restricted(&keep, edges)
    }

    /// Subgraph induced by a vertex set.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let edges: Vec<usize> = (0..self.edge_count())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                keep.contains(&a) && keep.contains(&b)
            })
            .collect();
        self.restricted(&keep, &edges)
    }

    fn restricted(&self, keep: &BTreeSet<usize>, edges: &[usize]) -> (Graph, Vec<usize>) {
        // `keep` is sorted by old index, which is identifier order, so the new
        // indices preserve it.
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let names: Vec<VertexId> = keep.iter().map(|&v| self.names[v].clone()).collect();
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut pairs: Vec<((usize, usize), usize)> = edges
            .iter()
            .map(|&e| {
                let (a, b) = self.edges[e];
                ((remap[&a], remap[&b]), e)
            })
            .collect();
        pairs.sort_unstable();
        let origin: Vec<usize> = pairs.iter().map(|&(_, e)| e).collect();
        let mut g = Graph::from_parts(names, index, pairs.into_iter().map(|(p, _)| p).collect());
        for (&old, &new) in &remap {
            if let Some(r) = self.roles.get(&old) {
                g.roles.insert(new, r.clone());
            }
        }
        for (new, &old) in origin.iter().enumerate() {
            if let Some(t) = self.edge_tags.get(&old) {
                g.edge_tags.insert(new, t.clone());
            }
        }
        (g, origin)
    }

    /// Copy with every identifier, role and tag prefixed by `prefix`.
    pub fn namespaced(&self, prefix: &str) -> Graph {
        let names: Vec<VertexId> = self.names.iter().map(|n| format!("{prefix}{n}")).collect();
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut g = Graph::from_parts(names, index, self.edges.clone());
        g.roles = prefix_labels(&self.roles, prefix);
        g.edge_tags = prefix_labels(&self.edge_tags, prefix);
        g
    }

    /// Vertex-disjoint union; fails when an identifier occurs in both graphs.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        self.merge(other, &HashMap::new())
    }

    /// Union of `self` and `other` where each vertex of `other` listed in
    /// `identify` is replaced by the given vertex of `self`.
    fn merge(&self, other: &Graph, identify: &HashMap<usize, usize>) -> Result<Graph, GraphError> {
        for (i, name) in other.names.iter().enumerate() {
            if !identify.contains_key(&i) && self.index.contains_key(name) {
                return Err(GraphError::SharedVertex(name.clone()));
            }
        }
        let other_name = |v: usize| -> &str {
            match identify.get(&v) {
                Some(&w) => &self.names[w],
                None => &other.names[v],
            }
        };
        let vertices = self
            .names
            .iter()
            .cloned()
            .chain((0..other.vertex_count()).filter(|v| !identify.contains_key(v)).map(|v| other.names[v].clone()));
        let mut seen = BTreeSet::new();
        let mut edge_list = Vec::new();
        let mut tags = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let pair = (self.names[a].clone(), self.names[b].clone());
            seen.insert(sorted_pair(&pair.0, &pair.1));
            for t in self.edge_tags(e) {
                tags.push((pair.0.clone(), pair.1.clone(), t.to_string()));
            }
            edge_list.push(pair);
        }
        for (e, &(a, b)) in other.edges.iter().enumerate() {
            let pair = (other_name(a).to_string(), other_name(b).to_string());
            for t in other.edge_tags(e) {
                tags.push((pair.0.clone(), pair.1.clone(), t.to_string()));
            }
            // An identified edge collapses onto the existing one.
            if seen.insert(sorted_pair(&pair.0, &pair.1)) {
                edge_list.push(pair);
            }
        }
        let mut builder = GraphBuilder::new();
        for v in vertices {
            builder.vertex(v);
        }
        for (a, b) in edge_list {
            builder.edge(a, b);
        }
        for (v, roles) in &self.roles {
            for r in roles {
                builder.role(self.names[*v].clone(), r.clone());
            }
        }
        for (v, roles) in &other.roles {
            for r in roles {
                builder.role(other_name(*v).to_string(), r.clone());
            }
        }
        for (a, b, t) in tags {
            builder.edges_tag_only(a, b, t);
        }
        builder.build()
    }

    /// Identifies edge `e1 = (a, b)` of `self` with edge `e2 = (c, d)` of
    /// `other` so that they become a single edge. The merged vertices keep the
    /// identifiers from `self`.
    pub fn glue_edges(
        &self,
        e1: (&str, &str),
        other: &Graph,
        e2: (&str, &str),
        orientation: Orientation,
    ) -> Result<Graph, GraphError> {
        for name in &other.names {
            if self.index.contains_key(name) {
                return Err(GraphError::SharedVertex(name.clone()));
            }
        }
        self.require_edge(e1.0, e1.1)?;
        other.require_edge(e2.0, e2.1)?;
        let (a, b) = (self.require_vertex(e1.0)?, self.require_vertex(e1.1)?);
        let (c, d) = (other.require_vertex(e2.0)?, other.require_vertex(e2.1)?);
        let identify = match orientation {
            Orientation::Parallel => HashMap::from([(c, a), (d, b)]),
            Orientation::Crossed => HashMap::from([(d, a), (c, b)]),
        };
        self.merge(other, &identify)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
            roles: self
                .roles
                .iter()
                .map(|(&v, r)| (self.names[v].clone(), Labels(r.iter().cloned().collect())))
                .collect(),
            edge_tags: self
                .edge_tags
                .iter()
                .map(|(&e, t)| (self.edge_key(e), Labels(t.iter().cloned().collect())))
                .collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph, GraphError> {
        let mut builder = GraphBuilder::new();
        for v in &json.vertices {
            builder.vertex(v.clone());
        }
        for [a, b] in &json.edges {
            builder.edge(a.clone(), b.clone());
        }
        for (v, labels) in &json.roles {
            for r in &labels.0 {
                builder.role(v.clone(), r.clone());
            }
        }
        for (key, labels) in &json.edge_tags {
            let (a, b) = key
                .split_once(EDGE_KEY_SEPARATOR)
                .ok_or_else(|| GraphError::MalformedEdgeKey(key.clone()))?;
            for t in &labels.0 {
                builder.edges_tag_only(a.to_string(), b.to_string(), t.clone());
            }
        }
        builder.build()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph JSON serialization")
    }

    pub fn from_json_str(s: &str) -> Result<Graph, GraphError> {
        let json: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::from_json(&json)
    }

    /// Graphviz rendering. Node shapes follow roles (hubs are boxes, pendant
    /// leaves diamonds), edges tagged `pendant` are dashed and `labels`, if
    /// given, become edge labels.
    pub fn to_dot(&self, labels: Option<&[i64]>) -> String {
        let mut out = String::from("graph G {\n  node [shape=ellipse];\n");
        for (v, name) in self.names.iter().enumerate() {
            let roles: Vec<&str> = self.roles(v).map(base_label).collect();
            let shape = if roles.iter().any(|r| matches!(*r, "v" | "v'" | "u" | "parent")) {
                "box"
            } else if roles.contains(&"U_d") {
                "diamond"
            } else if roles.iter().any(|r| matches!(*r, "v_l" | "v_r" | "u_r" | "w_l" | "w_r" | "x" | "y")) {
                "doublecircle"
            } else {
                "ellipse"
            };
            out.push_str(&format!("  {} [shape={shape}];\n", dot_id(name)));
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let mut attrs = Vec::new();
            if self.edge_tags(e).any(|t| base_label(t) == "pendant") {
                attrs.push("style=dashed".to_string());
            }
            if let Some(c) = labels.and_then(|l| l.get(e)) {
                attrs.push(format!("label=\"{c}\""));
            }
            let attrs = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
            out.push_str(&format!("  {} -- {}{attrs};\n", dot_id(&self.names[a]), dot_id(&self.names[b])));
        }
        out.push_str("}\n");
        out
    }
}

/// Role or tag without a namespace prefix such as `F0.`.
fn base_label(label: &str) -> &str {
    match label.split_once('.') {
        Some((head, rest)) if head.starts_with('F') && head[1..].chars().all(|c| c.is_ascii_digit()) => rest,
        _ => label,
    }
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

impl GraphBuilder {
    /// Tags an edge that is added separately.
    fn edges_tag_only(&mut self, a: VertexId, b: VertexId, tag: String) -> &mut Self {
        self.edge_tags.push((a, b, tag));
        self
    }
}

fn sorted_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn prefix_labels(labels: &BTreeMap<usize, BTreeSet<String>>, prefix: &str) -> BTreeMap<usize, BTreeSet<String>> {
    labels
        .iter()
        .map(|(&k, set)| (k, set.iter().map(|s| format!("{prefix}{s}")).collect()))
        .collect()
}

fn tree_cycle(parent: &[usize], depth: &[usize], mut a: usize, mut b: usize) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    right.reverse();
    left.extend(right);
    left
}

/// Labels in JSON: a single string or a list of strings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labels(pub Vec<String>);

impl Serialize for Labels {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Labels {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum OneOrMany {
            One(String),
            Many(Vec<String>),
        }
        Ok(match OneOrMany::deserialize(d)? {
            OneOrMany::One(s) => Labels(vec![s]),
            OneOrMany::Many(v) => Labels(v),
        })
    }
}

/// Wire format: `{"vertices": [...], "edges": [["u","v"], ...], "roles": {...}, "edge_tags": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default)]
    pub roles: BTreeMap<VertexId, Labels>,
    #[serde(default)]
    pub edge_tags: BTreeMap<String, Labels>,
}

/// Small named graphs used by tests, examples and the CLI.
pub mod named {
    use super::Graph;

    fn numbered(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub fn path(n: usize) -> Graph {
        let v = numbered(n);
        let edges: Vec<_> = (1..n).map(|i| (v[i - 1].clone(), v[i].clone())).collect();
        Graph::build(v, edges).expect("path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let v = numbered(n);
        let edges: Vec<_> = (0..n).map(|i| (v[i].clone(), v[(i + 1) % n].clone())).collect();
        Graph::build(v, edges).expect("cycle")
    }

    pub fn triangle() -> Graph {
        cycle(3)
    }

    /// `K_{1,leaves}` with center `c` and leaves `l0`, `l1`, ...
    pub fn star(leaves: usize) -> Graph {
        let mut v = vec!["c".to_string()];
        v.extend((0..leaves).map(|i| format!("l{i}")));
        let edges: Vec<_> = (0..leaves).map(|i| ("c".to_string(), format!("l{i}"))).collect();
        Graph::build(v, edges).expect("star")
    }

    pub fn complete(n: usize) -> Graph {
        let v = numbered(n);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((v[i].clone(), v[j].clone()));
            }
        }
        Graph::build(v, edges).expect("complete")
    }

    /// `K_{p,q}` with sides `a0..` and `b0..`.
    pub fn complete_bipartite(p: usize, q: usize) -> Graph {
        let a: Vec<String> = (0..p).map(|i| format!("a{i}")).collect();
        let b: Vec<String> = (0..q).map(|i| format!("b{i}")).collect();
        let mut edges = Vec::new();
        for x in &a {
            for y in &b {
                edges.push((x.clone(), y.clone()));
            }
        }
        Graph::build(a.into_iter().chain(b), edges).expect("complete bipartite")
    }

    pub fn petersen() -> Graph {
        let v = numbered(10);
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((v[i].clone(), v[(i + 1) % 5].clone()));
            edges.push((v[i].clone(), v[i + 5].clone()));
            edges.push((v[5 + i].clone(), v[5 + (i + 2) % 5].clone()));
        }
        Graph::build(v, edges).expect("petersen")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn builds_path_on_three_vertices() {
        let g = Graph::build(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(g.vertex("b").unwrap()), 2);
        assert!(g.is_connected());
        assert!(g.is_forest());
    }

    #[test]
    fn rejects_self_loop() {
        let err = Graph::build(["a"], [("a", "a")]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop("a".into()));
    }

    #[test]
    fn rejects_duplicate_after_normalization() {
        let err = Graph::build(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge("b".into(), "a".into()));
    }

    #[test]
    fn rejects_dangling_endpoint_and_bad_ids() {
        assert!(matches!(
            Graph::build(["a"], [("a", "z")]),
            Err(GraphError::DanglingEndpoint(_, _))
        ));
        assert!(matches!(
            Graph::build(["a--b"], Vec::<(String, String)>::new()),
            Err(GraphError::InvalidVertexId(_))
        ));
    }

    #[test]
    fn triangle_has_odd_cycle_witness() {
        match triangle().bipartition() {
            Bipartition::OddCycle(c) => {
                assert_eq!(c.len(), 3);
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        let g = cycle(7);
        let Bipartition::OddCycle(c) = g.bipartition() else { panic!() };
        assert_eq!(c.len() % 2, 1);
        for i in 0..c.len() {
            assert!(g.edge_between(c[i], c[(i + 1) % c.len()]).is_some());
        }
    }

    #[test]
    fn bipartite_sides_are_proper() {
        let g = complete_bipartite(3, 4);
        let Bipartition::Sides(s) = g.bipartition() else { panic!() };
        for &(a, b) in g.edges() {
            assert_ne!(s[a], s[b]);
        }
    }

    #[test]
    fn glue_two_single_edges() {
        let g1 = Graph::build(["a", "b"], [("a", "b")]).unwrap();
        let g2 = Graph::build(["c", "d"], [("c", "d")]).unwrap();
        let g = g1.glue_edges(("a", "b"), &g2, ("c", "d"), Orientation::Parallel).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn glue_merges_degrees_and_tags() {
        let mut b1 = GraphBuilder::new();
        b1.vertex("h").vertex("l").vertex("x").tagged_edge("h", "l", "p1").edge("h", "x");
        let g1 = b1.build().unwrap();
        let g2 = star(3).namespaced("S.");
        let g = g1
            .glue_edges(("h", "l"), &g2, ("S.c", "S.l0"), Orientation::Crossed)
            .unwrap();
        assert_eq!(g.vertex_count(), g1.vertex_count() + g2.vertex_count() - 2);
        assert_eq!(g.edge_count(), g1.edge_count() + g2.edge_count() - 1);
        // l (degree 1) merged with S.c (degree 3)
        assert_eq!(g.degree(g.vertex("l").unwrap()), 3);
        // h (degree 2) merged with S.l0 (degree 1)
        assert_eq!(g.degree(g.vertex("h").unwrap()), 2);
        let e = g.edge("h", "l").unwrap();
        let tags: Vec<_> = g.edge_tags(e).collect();
        assert_eq!(tags, vec!["p1"]);
        assert!(g.has_role(g.vertex("l").unwrap(), "S.c") || g.roles(g.vertex("l").unwrap()).count() == 0);
    }

    #[test]
    fn glue_rejects_shared_ids_and_missing_edges() {
        let g1 = Graph::build(["a", "b"], [("a", "b")]).unwrap();
        let g2 = Graph::build(["a", "c"], [("a", "c")]).unwrap();
        assert_eq!(
            g1.glue_edges(("a", "b"), &g2, ("a", "c"), Orientation::Parallel).unwrap_err(),
            GraphError::SharedVertex("a".into())
        );
        let g3 = Graph::build(["c", "d", "e"], [("c", "d")]).unwrap();
        assert!(matches!(
            g1.glue_edges(("a", "b"), &g3, ("d", "e"), Orientation::Parallel),
            Err(GraphError::MissingEdge(_, _))
        ));
    }

    #[test]
    fn json_round_trip_keeps_labels() {
        let mut b = GraphBuilder::new();
        b.vertex_with_role("u", "hub").vertex("w").tagged_edge("u", "w", "pendant");
        let g = b.build().unwrap();
        let back = Graph::from_json_str(&g.to_json_string()).unwrap();
        assert_eq!(g, back);
        let loose: GraphJson =
            serde_json::from_str(r#"{"vertices":["a","b"],"edges":[["a","b"]],"roles":{"a":"x"}}"#).unwrap();
        let g = Graph::from_json(&loose).unwrap();
        assert!(g.has_role(0, "x"));
    }

    #[test]
    fn structural_report_is_deterministic() {
        let g = petersen();
        assert_eq!(g.structural_report(), g.structural_report());
        let r = g.structural_report();
        assert_eq!(r.max_degree, 3);
        assert!(!r.bipartition.is_bipartite());
    }

    #[test]
    fn edge_subgraph_maps_back() {
        let g = complete(4);
        let (sub, origin) = g.edge_subgraph(&[0, 5]);
        assert_eq!(sub.edge_count(), 2);
        for (i, &e) in origin.iter().enumerate() {
            let (a, b) = sub.endpoints(i);
            let (x, y) = g.endpoints(e);
            assert_eq!((sub.name(a), sub.name(b)), (g.name(x), g.name(y)));
        }
    }

    #[test]
    fn dot_output_labels_edges() {
        let g = Graph::build(["a", "b \"q\"", "c"], [("a", "b \"q\""), ("a", "c")]).unwrap();
        let plain = g.to_dot(None);
        assert!(plain.starts_with("graph"));
        assert!(plain.contains(r#""b \"q\"""#));
        assert!(!plain.contains("label="));
        let labelled = g.to_dot(Some(&[4, 5]));
        assert!(labelled.contains("label=\"4\"") || labelled.contains("label=4"));
        assert!(labelled.contains("label=\"5\"") || labelled.contains("label=5"));
    }
}
