//! Test-only oracles and generators. Nothing here calls the solver.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use interval_coloring::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

pub type EdgeList = Vec<(usize, usize)>;

/// Vertex `i` is named `v{i:05}`, so for `n ≤ 100000` and a sorted edge list
/// with `a < b` the graph's edge `e` is `edges[e]`.
pub fn to_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    debug_assert!(edges.windows(2).all(|w| w[0] < w[1]) && edges.iter().all(|&(a, b)| a < b));
    let names: Vec<String> = (0..n).map(|i| format!("v{i:05}")).collect();
    Graph::build(names.iter().cloned(), edges.iter().map(|&(a, b)| (names[a].clone(), names[b].clone()))).unwrap()
}

/// Interval check written from the definition: at every vertex the incident
/// colors are pairwise distinct and `max - min + 1` equals the degree.
pub fn is_interval_naive(n: usize, edges: &[(usize, usize)], colors: &[i64]) -> bool {
    let mut at: Vec<Vec<i64>> = vec![Vec::new(); n];
    for (&(a, b), &c) in edges.iter().zip(colors) {
        at[a].push(c);
        at[b].push(c);
    }
    at.into_iter().all(|mut cs| {
        if cs.is_empty() {
            return true;
        }
        cs.sort_unstable();
        cs.windows(2).all(|w| w[0] != w[1]) && (cs[cs.len() - 1] - cs[0] + 1) as usize == cs.len()
    })
}

/// Every map `E -> {1..m}` that could be an interval coloring. A partial map
/// is dropped once some vertex sees a repeated color or colors spanning
/// more than its degree.
fn for_each_candidate_map(n: usize, edges: &[(usize, usize)], mut visit: impl FnMut(&[i64])) {
    let m = edges.len();
    let mut deg = vec![0i64; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    fn fits(v: usize, c: i64, i: usize, edges: &[(usize, usize)], colors: &[i64], deg: &[i64]) -> bool {
        let (mut lo, mut hi) = (c, c);
        for j in 0..i {
            let (x, y) = edges[j];
            if x == v || y == v {
                if colors[j] == c {
                    return false;
                }
                lo = lo.min(colors[j]);
                hi = hi.max(colors[j]);
            }
        }
        hi - lo < deg[v]
    }
    fn rec(i: usize, edges: &[(usize, usize)], deg: &[i64], colors: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        if i == edges.len() {
            visit(colors);
            return;
        }
        let (a, b) = edges[i];
        for c in 1..=edges.len() as i64 {
            if fits(a, c, i, edges, colors, deg) && fits(b, c, i, edges, colors, deg) {
                colors[i] = c;
                rec(i + 1, edges, deg, colors, visit);
            }
        }
        colors[i] = 0;
    }
    if m == 0 {
        visit(&[]);
        return;
    }
    let mut colors = vec![0i64; m];
    rec(0, edges, &deg, &mut colors, &mut visit);
}

/// Brute-force interval spectrum: the palette sizes of all interval maps
/// `E -> {1..m}`.
pub fn brute_spectrum(n: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for_each_candidate_map(n, edges, |c| {
        if is_interval_naive(n, edges, c) {
            out.insert(c.iter().collect::<BTreeSet<_>>().len());
        }
    });
    out
}

/// All interval colorings with min color 1, grouped by number of colors.
pub fn brute_normalized(n: usize, edges: &[(usize, usize)]) -> BTreeMap<usize, BTreeSet<Vec<i64>>> {
    let mut out: BTreeMap<usize, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for_each_candidate_map(n, edges, |c| {
        if c.iter().min() == Some(&1) && is_interval_naive(n, edges, c) {
            out.entry(c.iter().collect::<BTreeSet<_>>().len()).or_default().insert(c.to_vec());
        }
    });
    out
}

/// Canonical form: lexicographically least sorted edge list over all
/// relabelings that keep vertices ordered by degree.
fn canonical(n: usize, edges: &[(usize, usize)]) -> EdgeList {
    let mut deg = vec![0; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if deg[g[0]] == deg[v] => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best: Option<EdgeList> = None;
    let mut label = vec![0; n];
    fn permute(groups: &mut [Vec<usize>], gi: usize, base: usize, label: &mut Vec<usize>, edges: &[(usize, usize)], best: &mut Option<EdgeList>) {
        if gi == groups.len() {
            let mut e: EdgeList = edges.iter().map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b]))).collect();
            e.sort_unstable();
            if best.as_ref().map_or(true, |b| e < *b) {
                *best = Some(e);
            }
            return;
        }
        let mut group = groups[gi].clone();
        group.sort_unstable();
        loop {
            for (i, &v) in group.iter().enumerate() {
                label[v] = base + i;
            }
            permute(groups, gi + 1, base + group.len(), label, edges, best);
            if !next_permutation(&mut group) {
                break;
            }
        }
    }
    permute(&mut groups, 0, 0, &mut label, edges, &mut best);
    best.unwrap_or_default()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All connected graphs with `1..=max_edges` edges up to isomorphism, grown
/// one edge at a time. Vertices are `0..n`.
pub fn connected_graphs(max_edges: usize) -> Vec<(usize, EdgeList)> {
    let mut layer: BTreeSet<(usize, EdgeList)> = BTreeSet::from([(2, vec![(0, 1)])]);
    let mut all: Vec<(usize, EdgeList)> = layer.iter().cloned().collect();
    for _ in 1..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &layer {
            let present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            for a in 0..*n {
                for b in a + 1..*n {
                    if !present.contains(&(a, b)) {
                        let mut e = edges.clone();
                        e.push((a, b));
                        next.insert((*n, canonical(*n, &e)));
                    }
                }
                let mut e = edges.clone();
                e.push((a, *n));
                next.insert((n + 1, canonical(n + 1, &e)));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Connected graphs with at most `max_vertices` vertices (and at least 2),
/// up to isomorphism.
pub fn connected_graphs_on(max_vertices: usize) -> Vec<(usize, EdgeList)> {
    let max_edges = max_vertices * (max_vertices - 1) / 2;
    let mut layer: BTreeSet<(usize, EdgeList)> = BTreeSet::from([(2, vec![(0, 1)])]);
    let mut all: Vec<(usize, EdgeList)> = layer.iter().cloned().collect();
    for _ in 1..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &layer {
            let present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            for a in 0..*n {
                for b in a + 1..*n {
                    if !present.contains(&(a, b)) {
                        let mut e = edges.clone();
                        e.push((a, b));
                        next.insert((*n, canonical(*n, &e)));
                    }
                }
                if *n < max_vertices {
                    let mut e = edges.clone();
                    e.push((a, *n));
                    next.insert((n + 1, canonical(n + 1, &e)));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Random forest on `n` vertices: each vertex after the first joins a
/// random earlier vertex with probability `attach`, else starts a new tree.
pub fn random_forest(rng: &mut impl Rng, n: usize, attach: f64) -> (usize, EdgeList) {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(attach) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    edges.sort_unstable();
    (n, edges)
}

/// Random `delta`-regular bipartite graph with `half` vertices per side:
/// a circulant, scrambled by degree-preserving edge switches, with the
/// vertex labels shuffled. Left side is `0..half`.
pub fn random_regular_bipartite(rng: &mut impl Rng, half: usize, delta: usize) -> (usize, EdgeList) {
    assert!(delta <= half);
    let mut adj: BTreeSet<(usize, usize)> = (0..half).flat_map(|i| (0..delta).map(move |j| (i, (i + j) % half))).collect();
    for _ in 0..10 * half * delta {
        let edges: Vec<(usize, usize)> = adj.iter().copied().collect();
        let (a, b) = *edges.choose(rng).unwrap();
        let (c, d) = *edges.choose(rng).unwrap();
        if a != c && b != d && !adj.contains(&(a, d)) && !adj.contains(&(c, b)) {
            adj.remove(&(a, b));
            adj.remove(&(c, d));
            adj.insert((a, d));
            adj.insert((c, b));
        }
    }
    let mut perm: Vec<usize> = (0..2 * half).collect();
    perm.shuffle(rng);
    let mut edges: EdgeList = adj.into_iter().map(|(l, r)| (perm[l].min(perm[half + r]), perm[l].max(perm[half + r]))).collect();
    edges.sort_unstable();
    (2 * half, edges)
}

/// Erdős–Rényi graph.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> (usize, EdgeList) {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    (n, edges)
}

/// Random connected graph: a random tree plus extra random edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize) -> (usize, EdgeList) {
    let mut set: BTreeSet<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    }
    (n, set.into_iter().collect())
}

/// Degeneracy by repeatedly deleting a minimum-degree vertex, recomputing
/// degrees from scratch each time.
pub fn naive_degeneracy(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let deg = |v: usize, alive: &[bool]| edges.iter().filter(|&&(a, b)| (a == v && alive[b]) || (b == v && alive[a])).count();
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| deg(v, &alive)).unwrap();
        best = best.max(deg(v, &alive));
        alive[v] = false;
    }
    best
}
