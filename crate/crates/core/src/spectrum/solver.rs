//! Backtracking search for interval colorings with exactly `t` colors.
//!
//! Colors `1..=t` are stored as bits `0..t`. Each edge keeps a bitset domain
//! and each vertex `z` of degree `k` keeps the range of feasible starts `s`
//! for its window `[s, s + k - 1]`. Propagation per vertex:
//!
//! * window bounds: every incident domain must meet the window;
//! * domains are cut to the union of feasible windows;
//! * all-different inside the star;
//! * colors in every feasible window (the core) need a supporting edge, and
//!   a color with a single supporting edge is forced onto it.
//!
//! Twins (vertices with equal neighborhoods) are interchangeable. When a twin
//! class has a neighbor outside every twin class, the colors of the edges to
//! that neighbor are forced to increase along the class. Solutions found
//! under this ordering are canonical representatives; the full orbit is
//! recovered with [`expand_orbit`].

use std::collections::BTreeMap;

use crate::budget::Limits;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchEnd {
    /// The tree was exhausted.
    Complete,
    /// The callback asked to stop.
    Stopped,
    Timeout,
}

pub(crate) struct Problem {
    t: usize,
    words: usize,
    inc: Vec<Vec<usize>>,
    ends: Vec<(usize, usize)>,
    rank: Vec<usize>,
    chains: Vec<Vec<usize>>,
    edge_chain: Vec<Option<usize>>,
    twin_classes: Vec<Vec<usize>>,
}

enum Undo {
    Word(usize, u64),
    Window(usize, usize, usize),
}

struct State {
    dom: Vec<u64>,
    win_lo: Vec<usize>,
    win_hi: Vec<usize>,
    trail: Vec<Undo>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    chain_dirty: Vec<bool>,
}

struct Frame {
    edge: usize,
    values: Vec<usize>,
    next: usize,
    mark: usize,
}

type Fail = ();

impl Problem {
    pub(crate) fn new(graph: &Graph, t: usize, break_twins: bool) -> Self {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        let inc: Vec<Vec<usize>> = (0..n).map(|v| graph.incident(v).iter().map(|&(_, e)| e).collect()).collect();
        let ends = graph.edges().to_vec();

        // Static order: vertices by decreasing degree, then each star's edges
        // by decreasing neighbor degree.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        let mut rank = vec![usize::MAX; m];
        let mut next = 0;
        for &v in &order {
            let mut star: Vec<(usize, usize)> = graph.incident(v).to_vec();
            star.sort_by_key(|&(w, _)| (std::cmp::Reverse(graph.degree(w)), w));
            for (_, e) in star {
                if rank[e] == usize::MAX {
                    rank[e] = next;
                    next += 1;
                }
            }
        }

        let mut chains = Vec::new();
        let mut twin_classes = Vec::new();
        if break_twins {
            let classes = twin_classes_of(graph);
            let in_class: Vec<bool> = {
                let mut f = vec![false; n];
                for c in &classes {
                    for &v in c {
                        f[v] = true;
                    }
                }
                f
            };
            for class in classes {
                let anchor = graph.neighbors(class[0]).find(|&w| !in_class[w]);
                if let Some(anchor) = anchor {
                    chains.push(
                        class
                            .iter()
                            .map(|&a| graph.edge_between(a, anchor).expect("twin edge"))
                            .collect(),
                    );
                    twin_classes.push(class);
                }
            }
        }
        let mut edge_chain = vec![None; m];
        for (i, chain) in chains.iter().enumerate() {
            for &e in chain {
                edge_chain[e] = Some(i);
            }
        }
        Problem {
            t,
            words: t.div_ceil(64).max(1),
            inc,
            ends,
            rank,
            chains,
            edge_chain,
            twin_classes,
        }
    }

    /// Twin classes whose ordering is enforced.
    pub(crate) fn broken_classes(&self) -> &[Vec<usize>] {
        &self.twin_classes
    }

    /// Runs the search, calling `on_solution` with colors in `1..=t` for
    /// every solution until it returns `false`.
    pub(crate) fn search(&self, limits: &mut Limits, mut on_solution: impl FnMut(Vec<i64>) -> bool) -> SearchEnd {
        let m = self.ends.len();
        let n = self.inc.len();
        let t = self.t;
        if m == 0 || t == 0 || t > m || (0..n).any(|v| self.inc[v].len() > t) {
            return SearchEnd::Complete;
        }
        let mut st = State {
            dom: vec![0; m * self.words],
            win_lo: vec![0; n],
            win_hi: (0..n).map(|v| t - self.inc[v].len().max(1)).collect(),
            trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; n],
            chain_dirty: vec![true; self.chains.len()],
        };
        for e in 0..m {
            for x in 0..t {
                st.dom[e * self.words + x / 64] |= 1 << (x % 64);
            }
        }
        for v in 0..n {
            self.enqueue(&mut st, v);
        }
        let mut nodes: u64 = 0;
        if !limits.tick(nodes) {
            return SearchEnd::Timeout;
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut consistent = self.propagate(&mut st).is_ok();
        loop {
            if consistent {
                match self.select(&st) {
                    None => {
                        let colors = (0..m).map(|e| self.min(&st, e).unwrap() as i64 + 1).collect();
                        if !on_solution(colors) {
                            return SearchEnd::Stopped;
                        }
                    }
                    Some(e) => {
                        let values = self.values(&st, e);
                        stack.push(Frame { edge: e, values, next: 0, mark: st.trail.len() });
                    }
                }
            }
            // Advance to the next untried value, backtracking as needed.
            loop {
                let Some(frame) = stack.last_mut() else {
                    return SearchEnd::Complete;
                };
                let mark = frame.mark;
                if frame.next == frame.values.len() {
                    stack.pop();
                    continue;
                }
                let (e, x) = (frame.edge, frame.values[frame.next]);
                frame.next += 1;
                self.undo(&mut st, mark);
                nodes += 1;
                if !limits.tick(nodes) {
                    return SearchEnd::Timeout;
                }
                st.queue.clear();
                st.queued.iter_mut().for_each(|q| *q = false);
                st.chain_dirty.iter_mut().for_each(|d| *d = false);
                consistent = self.assign(&mut st, e, x).is_ok() && self.propagate(&mut st).is_ok();
                break;
            }
        }
    }

    // ---- domain primitives -------------------------------------------------

    fn slice<'a>(&self, st: &'a State, e: usize) -> &'a [u64] {
        &st.dom[e * self.words..(e + 1) * self.words]
    }

    fn count(&self, st: &State, e: usize) -> u32 {
        self.slice(st, e).iter().map(|w| w.count_ones()).sum()
    }

    fn contains(&self, st: &State, e: usize, x: usize) -> bool {
        st.dom[e * self.words + x / 64] >> (x % 64) & 1 == 1
    }

    fn min(&self, st: &State, e: usize) -> Option<usize> {
        self.next_at_or_above(st, e, 0)
    }

    fn max(&self, st: &State, e: usize) -> Option<usize> {
        self.prev_at_or_below(st, e, self.t - 1)
    }

    fn next_at_or_above(&self, st: &State, e: usize, x: usize) -> Option<usize> {
        let words = self.slice(st, e);
        let mut w = x / 64;
        if w >= words.len() {
            return None;
        }
        let mut bits = words[w] & (u64::MAX << (x % 64));
        loop {
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
            w += 1;
            if w == words.len() {
                return None;
            }
            bits = words[w];
        }
    }

    fn prev_at_or_below(&self, st: &State, e: usize, x: usize) -> Option<usize> {
        let words = self.slice(st, e);
        let x = x.min(self.words * 64 - 1);
        let mut w = x / 64;
        let shift = 63 - (x % 64);
        let mut bits = words[w] & (u64::MAX >> shift);
        loop {
            if bits != 0 {
                return Some(w * 64 + 63 - bits.leading_zeros() as usize);
            }
            if w == 0 {
                return None;
            }
            w -= 1;
            bits = words[w];
        }
    }

    fn values(&self, st: &State, e: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = 0;
        while let Some(v) = self.next_at_or_above(st, e, x) {
            out.push(v);
            x = v + 1;
        }
        out
    }

    fn set_word(&self, st: &mut State, idx: usize, value: u64) {
        let old = st.dom[idx];
        if old != value {
            st.trail.push(Undo::Word(idx, old));
            st.dom[idx] = value;
        }
    }

    fn undo(&self, st: &mut State, mark: usize) {
        while st.trail.len() > mark {
            match st.trail.pop().unwrap() {
                Undo::Word(i, w) => st.dom[i] = w,
                Undo::Window(v, lo, hi) => {
                    st.win_lo[v] = lo;
                    st.win_hi[v] = hi;
                }
            }
        }
    }

    fn enqueue(&self, st: &mut State, v: usize) {
        if !st.queued[v] {
            st.queued[v] = true;
            st.queue.push(v);
        }
    }

    fn touched(&self, st: &mut State, e: usize) {
        let (a, b) = self.ends[e];
        self.enqueue(st, a);
        self.enqueue(st, b);
        if let Some(c) = self.edge_chain[e] {
            st.chain_dirty[c] = true;
        }
    }

    /// Intersects `dom(e)` with `[lo, hi]`.
    fn restrict(&self, st: &mut State, e: usize, lo: usize, hi: usize) -> Result<bool, Fail> {
        if lo > hi {
            return Err(());
        }
        let base = e * self.words;
        let mut changed = false;
        let mut any = false;
        for w in 0..self.words {
            let wlo = w * 64;
            let whi = wlo + 63;
            let mask = if hi < wlo || lo > whi {
                0
            } else {
                let from = lo.max(wlo) - wlo;
                let to = hi.min(whi) - wlo;
                (u64::MAX << from) & (u64::MAX >> (63 - to))
            };
            let old = st.dom[base + w];
            let new = old & mask;
            if new != old {
                self.set_word(st, base + w, new);
                changed = true;
            }
            any |= new != 0;
        }
        if !any {
            return Err(());
        }
        if changed {
            self.touched(st, e);
        }
        Ok(changed)
    }

    fn assign(&self, st: &mut State, e: usize, x: usize) -> Result<(), Fail> {
        if !self.contains(st, e, x) {
            return Err(());
        }
        self.restrict(st, e, x, x).map(|_| ())
    }

    fn remove_mask(&self, st: &mut State, e: usize, mask: &[u64]) -> Result<bool, Fail> {
        let base = e * self.words;
        let mut changed = false;
        let mut any = false;
        for w in 0..self.words {
            let old = st.dom[base + w];
            let new = old & !mask[w];
            if new != old {
                self.set_word(st, base + w, new);
                changed = true;
            }
            any |= new != 0;
        }
        if !any {
            return Err(());
        }
        if changed {
            self.touched(st, e);
        }
        Ok(changed)
    }

    // ---- propagation -------------------------------------------------------

    fn propagate(&self, st: &mut State) -> Result<(), Fail> {
        loop {
            while let Some(v) = st.queue.pop() {
                st.queued[v] = false;
                self.propagate_vertex(st, v)?;
            }
            let mut again = false;
            for c in 0..self.chains.len() {
                if st.chain_dirty[c] {
                    st.chain_dirty[c] = false;
                    again |= self.propagate_chain(st, c)?;
                }
            }
            if again || !st.queue.is_empty() {
                continue;
            }
            // The palette must reach both 1 and t.
            for x in [0, self.t - 1] {
                let mut support = None;
                let mut count = 0;
                for e in 0..self.ends.len() {
                    if self.contains(st, e, x) {
                        count += 1;
                        support = Some(e);
                        if count > 1 {
                            break;
                        }
                    }
                }
                match (count, support) {
                    (0, _) => return Err(()),
                    (1, Some(e)) => {
                        self.assign(st, e, x)?;
                    }
                    _ => {}
                }
            }
            if st.queue.is_empty() {
                return Ok(());
            }
        }
    }

    fn propagate_chain(&self, st: &mut State, c: usize) -> Result<bool, Fail> {
        let chain = &self.chains[c];
        let mut changed = false;
        for i in 1..chain.len() {
            let lo = self.min(st, chain[i - 1]).ok_or(())? + 1;
            changed |= self.restrict(st, chain[i], lo, self.t - 1)?;
        }
        for i in (0..chain.len() - 1).rev() {
            let hi = self.max(st, chain[i + 1]).ok_or(())?;
            if hi == 0 {
                return Err(());
            }
            changed |= self.restrict(st, chain[i], 0, hi - 1)?;
        }
        Ok(changed)
    }

    fn propagate_vertex(&self, st: &mut State, z: usize) -> Result<(), Fail> {
        let star = &self.inc[z];
        let k = star.len();
        if k == 0 {
            return Ok(());
        }
        let span = k - 1;
        let (mut lo, mut hi) = (st.win_lo[z], st.win_hi[z]);
        for &e in star {
            let (a, b) = (self.min(st, e).ok_or(())?, self.max(st, e).ok_or(())?);
            lo = lo.max(a.saturating_sub(span));
            hi = hi.min(b);
        }
        if lo > hi {
            return Err(());
        }
        // Every incident domain must meet the window at both extremes.
        loop {
            let mut moved = false;
            for &e in star {
                match self.next_at_or_above(st, e, lo) {
                    None => return Err(()),
                    Some(x) if x > lo + span => {
                        lo = x - span;
                        moved = true;
                    }
                    _ => {}
                }
                if lo > hi {
                    return Err(());
                }
            }
            if !moved {
                break;
            }
        }
        loop {
            let mut moved = false;
            for &e in star {
                match self.prev_at_or_below(st, e, hi + span) {
                    None => return Err(()),
                    Some(x) if x < hi => {
                        hi = x;
                        moved = true;
                    }
                    _ => {}
                }
                if lo > hi {
                    return Err(());
                }
            }
            if !moved {
                break;
            }
        }
        if (lo, hi) != (st.win_lo[z], st.win_hi[z]) {
            st.trail.push(Undo::Window(z, st.win_lo[z], st.win_hi[z]));
            st.win_lo[z] = lo;
            st.win_hi[z] = hi;
        }
        for &e in star {
            self.restrict(st, e, lo, hi + span)?;
        }

        // All-different over fixed colors.
        let mut fixed = vec![0u64; self.words];
        loop {
            let mut newly = false;
            fixed.iter_mut().for_each(|w| *w = 0);
            for &e in star {
                if self.count(st, e) == 1 {
                    let x = self.min(st, e).unwrap();
                    let (w, bit) = (x / 64, 1u64 << (x % 64));
                    if fixed[w] & bit != 0 {
                        return Err(());
                    }
                    fixed[w] |= bit;
                }
            }
            for &e in star {
                if self.count(st, e) > 1 && self.remove_mask(st, e, &fixed)? && self.count(st, e) == 1 {
                    newly = true;
                }
            }
            if !newly {
                break;
            }
        }

        // Hall: the star needs k distinct colors.
        let mut union = vec![0u64; self.words];
        for &e in star {
            for (u, d) in union.iter_mut().zip(self.slice(st, e)) {
                *u |= d;
            }
        }
        if union.iter().map(|w| w.count_ones() as usize).sum::<usize>() < k {
            return Err(());
        }

        // Every color in the core [hi, lo + span] must be used at z.
        for x in hi..=lo + span {
            let mut support = None;
            let mut count = 0;
            for &e in star {
                if self.contains(st, e, x) {
                    count += 1;
                    support = Some(e);
                    if count > 1 {
                        break;
                    }
                }
            }
            match (count, support) {
                (0, _) => return Err(()),
                (1, Some(e)) => {
                    if self.count(st, e) > 1 {
                        self.assign(st, e, x)?;
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn select(&self, st: &State) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for e in 0..self.ends.len() {
            let c = self.count(st, e);
            if c > 1 {
                let key = (c, self.rank[e], e);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, e)| e)
    }
}

/// Vertices with identical neighborhoods, grouped; only groups of size ≥ 2.
pub(crate) fn twin_classes_of(graph: &Graph) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..graph.vertex_count() {
        let nbrs: Vec<usize> = graph.neighbors(v).collect();
        if !nbrs.is_empty() {
            groups.entry(nbrs).or_default().push(v);
        }
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().filter(|c| c.len() > 1).collect();
    classes.sort();
    classes
}

/// All colorings obtained from `colors` by permuting vertices inside each
/// class, excluding the identity. Classes advance like an odometer, the last
/// class fastest, each through its permutations in lexicographic order.
pub(crate) fn expand_orbit<'a>(
    graph: &'a Graph,
    classes: &'a [Vec<usize>],
    colors: &'a [i64],
) -> impl Iterator<Item = Vec<i64>> + 'a {
    let mut perms: Vec<Vec<usize>> = classes.iter().map(|c| (0..c.len()).collect()).collect();
    std::iter::from_fn(move || {
        // Advance the odometer; `false` once it wraps back to the identity.
        let mut advanced = false;
        for p in perms.iter_mut().rev() {
            if next_permutation(p) {
                advanced = true;
                break;
            }
        }
        if !advanced {
            return None;
        }
        let mut map: Vec<usize> = (0..graph.vertex_count()).collect();
        for (class, perm) in classes.iter().zip(&perms) {
            for (&from, &to) in class.iter().zip(perm) {
                map[from] = class[to];
            }
        }
        let mut out = vec![0; colors.len()];
        for (e, &(a, b)) in graph.edges().iter().enumerate() {
            let image = graph.edge_between(map[a], map[b]).expect("twin permutation is an automorphism");
            out[image] = colors[e];
        }
        Some(out)
    })
}

/// Rearranges `p` into its lexicographic successor; on the last permutation
/// it wraps to the first and returns `false`.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn next_permutation_cycles_through_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![0, 1, 2, 3]);
    }
}
