//! Exact `t`-interval colorability and interval spectra of small graphs.

mod solver;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, Limits};
use crate::coloring::{ColoringJson, EdgeColoring};
use crate::graph::Graph;

use solver::{expand_orbit, Problem, SearchEnd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("graph is disconnected ({0} components); spectra are defined for connected graphs")]
    Disconnected(usize),
    #[error("the number of colors must be at least 1")]
    ZeroColors,
}

/// Outcome of a single `t`-interval colorability question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// A normalized interval coloring using exactly `t` colors.
    Found(EdgeColoring),
    /// Exhaustive search proved that no such coloring exists.
    NotColorable,
    /// The budget ran out before an answer was found.
    Timeout,
}

impl Decision {
    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            Decision::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// A maximal run of missing values strictly inside the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub members: (usize, usize),
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub achievable: Vec<usize>,
    pub searched_range: (usize, usize),
    pub gaps: Vec<Gap>,
    pub witnesses: BTreeMap<usize, EdgeColoring>,
    /// Values of `t` the budget did not decide. Non-empty means partial.
    pub undecided: Vec<usize>,
}

impl SpectrumReport {
    pub fn from_achievable(achievable: Vec<usize>, searched_range: (usize, usize)) -> Self {
        let gaps = gaps_of(&achievable);
        SpectrumReport { achievable, searched_range, gaps, witnesses: BTreeMap::new(), undecided: Vec::new() }
    }

    pub fn is_partial(&self) -> bool {
        !self.undecided.is_empty()
    }

    pub fn to_json(&self, g: &Graph) -> SpectrumJson {
        SpectrumJson {
            achievable: self.achievable.clone(),
            searched_range: [self.searched_range.0, self.searched_range.1],
            gaps: self.gaps.clone(),
            partial: self.is_partial(),
            undecided: self.undecided.clone(),
            witnesses: self.witnesses.iter().map(|(&t, c)| (t.to_string(), c.to_json(g))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub achievable: Vec<usize>,
    pub searched_range: [usize; 2],
    pub gaps: Vec<Gap>,
    pub partial: bool,
    pub undecided: Vec<usize>,
    pub witnesses: BTreeMap<String, ColoringJson>,
}

/// Gaps of a sorted set of integers.
pub fn gaps_of(sorted: &[usize]) -> Vec<Gap> {
    sorted
        .windows(2)
        .filter(|w| w[1] > w[0] + 1)
        .map(|w| Gap { members: (w[0] + 1, w[1] - 1), size: w[1] - w[0] - 1 })
        .collect()
}

fn check_connected(g: &Graph) -> Result<(), SpectrumError> {
    let comps = g.components().len();
    if comps > 1 {
        return Err(SpectrumError::Disconnected(comps));
    }
    Ok(())
}

/// Necessary condition for any interval coloring. Colors reduced mod `Δ`
/// give a proper `Δ`-edge-coloring, whose classes are matchings of at most
/// `⌊n/2⌋` edges, so `‖G‖ ≤ Δ·⌊n/2⌋`.
pub fn passes_matching_count(g: &Graph) -> bool {
    g.edge_count() <= g.max_degree() * (g.vertex_count() / 2)
}

/// Decides whether `g` has an interval coloring with exactly `t` colors.
pub fn find_coloring(g: &Graph, t: usize, budget: Budget) -> Result<Decision, SpectrumError> {
    find_coloring_within(g, t, &mut budget.start())
}

/// [`find_coloring`] charging an already running set of limits.
pub fn find_coloring_within(g: &Graph, t: usize, limits: &mut Limits) -> Result<Decision, SpectrumError> {
    check_connected(g)?;
    if t == 0 {
        return Err(SpectrumError::ZeroColors);
    }
    if !passes_matching_count(g) {
        return Ok(Decision::NotColorable);
    }
    let problem = Problem::new(g, t, true);
    let mut found = None;
    let end = problem.search(limits, |colors| {
        found = Some(colors);
        false
    });
    Ok(match (found, end) {
        (Some(colors), _) => Decision::Found(EdgeColoring::new(colors)),
        (None, SearchEnd::Timeout) => Decision::Timeout,
        (None, _) => Decision::NotColorable,
    })
}

/// Every `t ∈ [Δ(G), t_hi]` for which `g` is `t`-interval colorable, with a
/// witness for each. `t_hi` defaults to `‖G‖`.
pub fn compute_spectrum(g: &Graph, t_hi: Option<usize>, budget: Budget) -> Result<SpectrumReport, SpectrumError> {
    check_connected(g)?;
    let lo = g.max_degree().max(1);
    let hi = t_hi.unwrap_or(g.edge_count()).min(g.edge_count());
    let mut limits = budget.start();
    let mut achievable = Vec::new();
    let mut witnesses = BTreeMap::new();
    let mut undecided = Vec::new();
    for t in lo..=hi {
        match find_coloring_within(g, t, &mut limits)? {
            Decision::Found(c) => {
                achievable.push(t);
                witnesses.insert(t, c);
            }
            Decision::NotColorable => {}
            Decision::Timeout => undecided.push(t),
        }
    }
    let mut report = SpectrumReport::from_achievable(achievable, (lo, hi));
    report.witnesses = witnesses;
    report.undecided = undecided;
    Ok(report)
}

/// Searches `t = Δ(G), Δ(G)+1, …, ‖G‖` for any interval coloring.
///
/// Returns `Found` with the coloring for the smallest `t` that works,
/// `NotColorable` if every `t` was refuted and `Timeout` otherwise.
pub fn any_interval_coloring(g: &Graph, limits: &mut Limits) -> Result<Decision, SpectrumError> {
    check_connected(g)?;
    if g.edge_count() == 0 {
        return Ok(Decision::Found(EdgeColoring::new(Vec::new())));
    }
    let mut timed_out = false;
    for t in g.max_degree()..=g.edge_count() {
        match find_coloring_within(g, t, limits)? {
            Decision::Found(c) => return Ok(Decision::Found(c)),
            Decision::NotColorable => {}
            Decision::Timeout => timed_out = true,
        }
        if limits.is_exhausted() {
            timed_out = true;
            break;
        }
    }
    Ok(if timed_out { Decision::Timeout } else { Decision::NotColorable })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub colorings: Vec<EdgeColoring>,
    /// `true` when every coloring was listed (fewer than the limit exist).
    pub exhaustive: bool,
    pub timed_out: bool,
}

/// Up to `limit` distinct normalized interval colorings with exactly `t`
/// colors. Canonical representatives (twins ordered) come first, followed by
/// their images under twin permutations.
pub fn enumerate_colorings(g: &Graph, t: usize, limit: usize, budget: Budget) -> Result<Enumeration, SpectrumError> {
    check_connected(g)?;
    if t == 0 {
        return Err(SpectrumError::ZeroColors);
    }
    let mut limits = budget.start();
    let problem = Problem::new(g, t, true);
    let mut canonical: Vec<Vec<i64>> = Vec::new();
    let end = if limit == 0 {
        SearchEnd::Stopped
    } else {
        problem.search(&mut limits, |colors| {
            canonical.push(colors);
            canonical.len() < limit
        })
    };
    let mut out: Vec<EdgeColoring> = canonical.iter().cloned().map(EdgeColoring::new).collect();
    'expand: for colors in &canonical {
        for image in expand_orbit(g, problem.broken_classes(), colors) {
            if out.len() >= limit {
                break 'expand;
            }
            out.push(EdgeColoring::new(image));
        }
    }
    let exhaustive = end == SearchEnd::Complete && out.len() < limit;
    Ok(Enumeration { colorings: out, exhaustive, timed_out: end == SearchEnd::Timeout })
}
