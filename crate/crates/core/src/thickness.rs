//! Constructive upper bounds on interval thickness: edge decompositions into
//! parts that each come with a certified interval coloring.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, Limits};
use crate::coloring::{verify_interval, ColoringJson, EdgeColoring};
use crate::graph::{Bipartition, Graph};
use crate::spectrum::{any_interval_coloring, Decision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThicknessError {
    #[error("graph contains a cycle")]
    Cyclic,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not regular")]
    NotRegular,
    #[error("edge {0} is covered {1} times")]
    NotAPartition(usize, usize),
    #[error("part {part} is not interval colored: {detail}")]
    InvalidPart { part: usize, detail: String },
    #[error("exact search supports at most 64 edges, got {0}")]
    TooLarge(usize),
}

/// How a decomposition was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Empty,
    Forest,
    RegularBipartite,
    Solver,
    Degeneracy { degeneracy: usize },
}

/// One part: sorted source edge indices and a coloring indexed like them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub edges: Vec<usize>,
    pub coloring: EdgeColoring,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Part>,
    pub method: Method,
}

impl Decomposition {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Checks that the parts partition `E(g)` and that every part's coloring
    /// is an interval coloring of the subgraph formed by its edges.
    pub fn verify(&self, g: &Graph) -> Result<(), ThicknessError> {
        let mut cover = vec![0usize; g.edge_count()];
        for part in &self.parts {
            for &e in &part.edges {
                cover[e] += 1;
            }
        }
        if let Some((e, &n)) = cover.iter().enumerate().find(|(_, &n)| n != 1) {
            return Err(ThicknessError::NotAPartition(e, n));
        }
        for (i, part) in self.parts.iter().enumerate() {
            if !part.edges.windows(2).all(|w| w[0] < w[1]) {
                return Err(ThicknessError::InvalidPart { part: i, detail: "edges not sorted".into() });
            }
            let (sub, _) = g.edge_subgraph(&part.edges);
            let violations = verify_interval(&sub, &part.coloring)
                .map_err(|e| ThicknessError::InvalidPart { part: i, detail: e.to_string() })?;
            if let Some(v) = violations.first() {
                return Err(ThicknessError::InvalidPart { part: i, detail: v.describe(&sub) });
            }
        }
        Ok(())
    }

    pub fn to_json(&self, g: &Graph) -> DecompositionJson {
        DecompositionJson {
            part_count: self.parts.len(),
            method: self.method,
            parts: self
                .parts
                .iter()
                .map(|p| {
                    let (sub, _) = g.edge_subgraph(&p.edges);
                    PartJson {
                        edges: p
                            .edges
                            .iter()
                            .map(|&e| {
                                let (a, b) = g.endpoints(e);
                                [g.name(a).to_string(), g.name(b).to_string()]
                            })
                            .collect(),
                        coloring: p.coloring.to_json(&sub),
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartJson {
    pub edges: Vec<[String; 2]>,
    pub coloring: ColoringJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub part_count: usize,
    pub method: Method,
    pub parts: Vec<PartJson>,
}

/// Interval coloring of a forest: the root's edges get `1..=deg`, and below
/// a vertex whose parent edge has color `c` the child edges get
/// `c + 1, c + 2, …`. Each tree starts at color 1.
pub fn color_forest(g: &Graph) -> Result<EdgeColoring, ThicknessError> {
    if !g.is_forest() {
        return Err(ThicknessError::Cyclic);
    }
    let mut colors = vec![0; g.edge_count()];
    let mut parent_color: Vec<Option<i64>> = vec![None; g.vertex_count()];
    let mut visited = vec![false; g.vertex_count()];
    for root in 0..g.vertex_count() {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let mut next = parent_color[v].map_or(1, |c| c + 1);
            for &(w, e) in g.incident(v) {
                if visited[w] {
                    continue;
                }
                visited[w] = true;
                colors[e] = next;
                parent_color[w] = Some(next);
                next += 1;
                stack.push(w);
            }
        }
    }
    Ok(EdgeColoring::new(colors))
}

/// Colors a `Δ`-regular bipartite graph by peeling off `Δ` perfect
/// matchings; matching `i` gets color `i`.
pub fn color_regular_bipartite(g: &Graph) -> Result<EdgeColoring, ThicknessError> {
    let Bipartition::Sides(side) = g.bipartition() else {
        return Err(ThicknessError::NotBipartite);
    };
    let delta = g.max_degree();
    if (0..g.vertex_count()).any(|v| g.degree(v) != delta) {
        return Err(ThicknessError::NotRegular);
    }
    let left: Vec<usize> = (0..g.vertex_count()).filter(|&v| !side[v]).collect();
    let mut alive = vec![true; g.edge_count()];
    let mut colors = vec![0i64; g.edge_count()];
    for color in 1..=delta as i64 {
        let matching = perfect_matching(g, &left, &alive);
        for e in matching {
            alive[e] = false;
            colors[e] = color;
        }
    }
    debug_assert!(alive.iter().all(|a| !a));
    Ok(EdgeColoring::new(colors))
}

/// Maximum matching on the live edges by augmenting paths (Kuhn). On a
/// regular bipartite graph this is perfect. Returns matched edge indices.
fn perfect_matching(g: &Graph, left: &[usize], alive: &[bool]) -> Vec<usize> {
    // mate[right vertex] = edge currently matching it
    let mut mate: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for &l in left {
        let mut seen = vec![false; g.vertex_count()];
        augment(g, l, alive, &mut mate, &mut seen);
    }
    let mut edges: Vec<usize> = mate.into_iter().flatten().collect();
    edges.sort_unstable();
    edges
}

fn augment(g: &Graph, l: usize, alive: &[bool], mate: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &(r, e) in g.incident(l) {
        if !alive[e] || seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match mate[r] {
            None => true,
            Some(me) => {
                let (a, b) = g.endpoints(me);
                let other = if a == r { b } else { a };
                augment(g, other, alive, mate, seen)
            }
        };
        if free {
            mate[r] = Some(e);
            return true;
        }
    }
    false
}

/// Smallest-degree-first elimination order and the degeneracy (largest
/// degree at removal). Ties go to the smaller vertex index.
pub fn degeneracy_order(g: &Graph) -> (usize, Vec<usize>) {
    let mut degree: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = degree.iter().enumerate().map(|(v, &d)| (d, v)).collect();
    let mut removed = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    (degeneracy, order)
}

pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_order(g).0
}

/// Forest partition from a degeneracy order: every edge points from its
/// earlier to its later endpoint, and the `i`-th out-edge of each vertex
/// goes to class `i`. Each class has out-degree at most one under an acyclic
/// orientation, so it has no cycle.
pub fn degeneracy_forests(g: &Graph) -> (usize, Vec<Vec<usize>>) {
    let (deg, order) = degeneracy_order(g);
    let mut position = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); deg];
    for v in 0..g.vertex_count() {
        let mut slot = 0;
        for &(w, e) in g.incident(v) {
            if position[w] > position[v] {
                classes[slot].push(e);
                slot += 1;
            }
        }
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.retain(|c| !c.is_empty());
    (deg, classes)
}

/// Colors each component independently and joins the results, which is an
/// interval coloring of the vertex-disjoint union.
pub fn union_coloring(
    g: &Graph,
    mut color_component: impl FnMut(&Graph) -> Option<EdgeColoring>,
) -> Option<EdgeColoring> {
    let mut colors = vec![0; g.edge_count()];
    for comp in g.components() {
        let (sub, origin) = g.induced_subgraph(&comp);
        if sub.edge_count() == 0 {
            continue;
        }
        let c = color_component(&sub)?.normalized();
        for (i, &e) in origin.iter().enumerate() {
            colors[e] = c.color(i);
        }
    }
    Some(EdgeColoring::new(colors))
}

/// Solver-backed colorability of a possibly disconnected graph.
fn solve_union(g: &Graph, limits: &mut Limits) -> Decision {
    let mut timed_out = false;
    let result = union_coloring(g, |sub| match any_interval_coloring(sub, limits) {
        Ok(Decision::Found(c)) => Some(c),
        Ok(Decision::Timeout) => {
            timed_out = true;
            None
        }
        _ => None,
    });
    match (result, timed_out) {
        (Some(c), _) => Decision::Found(c),
        (None, true) => Decision::Timeout,
        (None, false) => Decision::NotColorable,
    }
}

fn single_part(g: &Graph, coloring: EdgeColoring, method: Method) -> Decomposition {
    Decomposition { parts: vec![Part { edges: (0..g.edge_count()).collect(), coloring }], method }
}

/// Decomposes `g` into interval colorable parts.
///
/// Forests and regular bipartite graphs are colored directly. Otherwise the
/// solver gets `solver_budget` to color `g` whole; failing that, `g` is split
/// into at most `degeneracy(g)` forests.
pub fn decompose(g: &Graph, solver_budget: Budget) -> Decomposition {
    if g.edge_count() == 0 {
        return Decomposition { parts: Vec::new(), method: Method::Empty };
    }
    if let Ok(c) = color_forest(g) {
        return single_part(g, c, Method::Forest);
    }
    if let Ok(c) = color_regular_bipartite(g) {
        return single_part(g, c, Method::RegularBipartite);
    }
    if let Decision::Found(c) = solve_union(g, &mut solver_budget.start()) {
        return single_part(g, c, Method::Solver);
    }
    let (deg, classes) = degeneracy_forests(g);
    let parts = classes
        .into_iter()
        .map(|edges| {
            let (sub, _) = g.edge_subgraph(&edges);
            let coloring = color_forest(&sub).expect("degeneracy classes are forests");
            Part { edges, coloring }
        })
        .collect();
    Decomposition { parts, method: Method::Degeneracy { degeneracy: deg } }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theta {
    Exact(usize),
    /// No partition into at most `k_max` parts was certified, and some part
    /// ran out of budget.
    Undecided,
    /// Every partition into at most `k_max` parts was refuted.
    AboveMax,
}

/// Smallest `k ≤ k_max` such that `E(g)` splits into `k` interval colorable
/// parts, by trying every set partition. Meant for graphs with few edges.
pub fn exact_theta_small(g: &Graph, k_max: usize, budget: Budget) -> Result<Theta, ThicknessError> {
    let m = g.edge_count();
    if m > 64 {
        return Err(ThicknessError::TooLarge(m));
    }
    if m == 0 {
        return Ok(Theta::Exact(0));
    }
    let mut limits = budget.start();
    // Verdicts per connected edge set, shared by every part containing it.
    let mut cache: HashMap<u64, bool> = HashMap::new();
    let mut undecided = false;
    let mut part_ok = |mask: u64, limits: &mut Limits, undecided: &mut bool| -> bool {
        edge_components(g, mask).into_iter().all(|comp| {
            if let Some(&ok) = cache.get(&comp) {
                return ok;
            }
            let edges: Vec<usize> = (0..m).filter(|&e| comp >> e & 1 == 1).collect();
            let (sub, _) = g.edge_subgraph(&edges);
            match any_interval_coloring(&sub, limits) {
                Ok(Decision::Found(_)) => {
                    cache.insert(comp, true);
                    true
                }
                Ok(Decision::NotColorable) => {
                    cache.insert(comp, false);
                    false
                }
                _ => {
                    *undecided = true;
                    false
                }
            }
        })
    };
    for k in 1..=k_max.min(m) {
        // Restricted growth strings: label[0] = 0, label[i] ≤ 1 + max(label[..i]).
        let mut labels = vec![0usize; m];
        loop {
            let blocks = labels.iter().max().unwrap() + 1;
            if blocks == k {
                let mut masks = vec![0u64; k];
                for (e, &l) in labels.iter().enumerate() {
                    masks[l] |= 1 << e;
                }
                if masks.iter().all(|&mk| part_ok(mk, &mut limits, &mut undecided)) {
                    return Ok(Theta::Exact(k));
                }
            }
            if !next_growth_string(&mut labels, k) {
                break;
            }
        }
    }
    Ok(if undecided { Theta::Undecided } else { Theta::AboveMax })
}

/// Connected pieces of the edge set `mask`, as edge masks.
fn edge_components(g: &Graph, mask: u64) -> Vec<u64> {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let edges: Vec<usize> = (0..g.edge_count()).filter(|&e| mask >> e & 1 == 1).collect();
    for &e in &edges {
        let (a, b) = g.endpoints(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut by_root: HashMap<usize, u64> = HashMap::new();
    for &e in &edges {
        let r = find(&mut parent, g.endpoints(e).0);
        *by_root.entry(r).or_default() |= 1 << e;
    }
    let mut out: Vec<u64> = by_root.into_values().collect();
    out.sort_unstable();
    out
}

fn next_growth_string(labels: &mut [usize], k: usize) -> bool {
    for i in (1..labels.len()).rev() {
        let prefix_max = labels[..i].iter().copied().max().unwrap();
        if labels[i] < k - 1 && labels[i] <= prefix_max {
            labels[i] += 1;
            for l in &mut labels[i + 1..] {
                *l = 0;
            }
            return true;
        }
    }
    false
}
