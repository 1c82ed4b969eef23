//! Edge colorings and the interval (consecutive) property.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub type Color = i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} colors but the graph has {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("edge `{0}` has no color")]
    MissingEdge(String),
    #[error("edge `{0}` is colored twice")]
    DuplicateEdge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid coloring JSON: {0}")]
    Json(String),
}

/// Total map from the edges of a graph (by edge index) to integer colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Two edges at `vertex` share a color.
    ImproperPair,
    /// The distinct colors at `vertex` are not consecutive.
    NonIntervalVertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalViolation {
    pub kind: ViolationKind,
    pub vertex: usize,
    /// The clashing pair, or every edge at the vertex.
    pub edges: Vec<usize>,
    /// Sorted color multiset at the vertex.
    pub colors: Vec<Color>,
}

impl IntervalViolation {
    pub fn describe(&self, g: &Graph) -> String {
        match self.kind {
            ViolationKind::ImproperPair => format!(
                "improper pair at `{}`: {} and {} share color {}",
                g.name(self.vertex),
                g.edge_key(self.edges[0]),
                g.edge_key(self.edges[1]),
                self.colors[0]
            ),
            ViolationKind::NonIntervalVertex => format!(
                "colors at `{}` are not consecutive: {:?}",
                g.name(self.vertex),
                self.colors
            ),
        }
    }
}

/// The color set `c(G)` together with its span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    pub colors: BTreeSet<Color>,
    pub span: Option<(Color, Color)>,
}

impl Palette {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_consecutive(&self) -> bool {
        match self.span {
            Some((lo, hi)) => (hi - lo + 1) as usize == self.colors.len(),
            None => true,
        }
    }
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    /// Checks totality against `g`.
    pub fn for_graph(g: &Graph, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if colors.len() != g.edge_count() {
            return Err(ColoringError::WrongLength { expected: g.edge_count(), got: colors.len() });
        }
        Ok(EdgeColoring { colors })
    }

    pub fn color(&self, e: usize) -> Color {
        self.colors[e]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn min_color(&self) -> Option<Color> {
        self.colors.iter().copied().min()
    }

    pub fn max_color(&self) -> Option<Color> {
        self.colors.iter().copied().max()
    }

    pub fn palette(&self) -> Palette {
        let colors: BTreeSet<Color> = self.colors.iter().copied().collect();
        let span = colors.first().zip(colors.last()).map(|(&a, &b)| (a, b));
        Palette { colors, span }
    }

    pub fn shift(&self, q: Color) -> Self {
        EdgeColoring { colors: self.colors.iter().map(|c| c + q).collect() }
    }

    /// Reflects every color inside the span: `c ↦ (min + max) − c`.
    pub fn mirror(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_color(), self.max_color()) else {
            return self.clone();
        };
        EdgeColoring { colors: self.colors.iter().map(|c| lo + hi - c).collect() }
    }

    /// Shifted so the smallest color is 1.
    pub fn normalized(&self) -> Self {
        match self.min_color() {
            Some(lo) => self.shift(1 - lo),
            None => self.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.min_color().map_or(true, |c| c == 1)
    }

    /// Colors restricted to the listed edges, in the given order.
    pub fn restrict(&self, edges: &[usize]) -> Self {
        EdgeColoring { colors: edges.iter().map(|&e| self.colors[e]).collect() }
    }

    /// Colors reduced to `0..modulus`.
    pub fn residues(&self, modulus: Color) -> Self {
        EdgeColoring { colors: self.colors.iter().map(|c| c.rem_euclid(modulus)).collect() }
    }

    pub fn to_json(&self, g: &Graph) -> ColoringJson {
        ColoringJson {
            colors: (0..g.edge_count()).map(|e| (g.edge_key(e), self.colors[e])).collect(),
        }
    }

    pub fn from_json(g: &Graph, json: &ColoringJson) -> Result<Self, ColoringError> {
        let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
        for (key, &c) in &json.colors {
            let e = g.edge_from_key(key)?;
            if colors[e].replace(c).is_some() {
                return Err(ColoringError::DuplicateEdge(g.edge_key(e)));
            }
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(e, c)| c.ok_or_else(|| ColoringError::MissingEdge(g.edge_key(e))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EdgeColoring { colors })
    }

    pub fn to_json_string(&self, g: &Graph) -> String {
        serde_json::to_string_pretty(&self.to_json(g)).expect("coloring JSON serialization")
    }

    pub fn from_json_str(g: &Graph, s: &str) -> Result<Self, ColoringError> {
        let json: ColoringJson = serde_json::from_str(s).map_err(|e| ColoringError::Json(e.to_string()))?;
        Self::from_json(g, &json)
    }
}

/// Wire format: `{"colors": {"u--v": 9, ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub colors: BTreeMap<String, Color>,
}

/// Every improper pair and every vertex whose colors are not consecutive.
/// An empty list means `c` is an interval coloring of `g`.
pub fn verify_interval(g: &Graph, c: &EdgeColoring) -> Result<Vec<IntervalViolation>, ColoringError> {
    if c.len() != g.edge_count() {
        return Err(ColoringError::WrongLength { expected: g.edge_count(), got: c.len() });
    }
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let mut star: Vec<(Color, usize)> = g.incident(v).iter().map(|&(_, e)| (c.color(e), e)).collect();
        if star.is_empty() {
            continue;
        }
        star.sort_unstable();
        let multiset: Vec<Color> = star.iter().map(|&(col, _)| col).collect();
        for i in 0..star.len() {
            for j in i + 1..star.len() {
                if star[i].0 != star[j].0 {
                    break;
                }
                out.push(IntervalViolation {
                    kind: ViolationKind::ImproperPair,
                    vertex: v,
                    edges: vec![star[i].1, star[j].1],
                    colors: vec![star[i].0, star[j].0],
                });
            }
        }
        let mut distinct = multiset.clone();
        distinct.dedup();
        let span = distinct[distinct.len() - 1] - distinct[0] + 1;
        if span as usize != distinct.len() {
            out.push(IntervalViolation {
                kind: ViolationKind::NonIntervalVertex,
                vertex: v,
                edges: star.iter().map(|&(_, e)| e).collect(),
                colors: multiset,
            });
        }
    }
    Ok(out)
}

pub fn is_interval(g: &Graph, c: &EdgeColoring) -> bool {
    matches!(verify_interval(g, c), Ok(v) if v.is_empty())
}

/// No two edges sharing a vertex have the same color.
pub fn is_proper(g: &Graph, c: &EdgeColoring) -> bool {
    (0..g.vertex_count()).all(|v| {
        let mut seen: Vec<Color> = g.incident(v).iter().map(|&(_, e)| c.color(e)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    })
}
