//! The rigid gadget `F(b, T)` and the gap graph `F(k, d)` built from copies
//! of it, with explicit colorings realizing every point of the latter's
//! spectrum.
//!
//! `F(b, T)` (with `D = T − 25` even and `1 ≤ b ≤ D`) is the union of the
//! complete bipartite graphs `({v, v'}, V_0)`, `({v, v_r}, V_r)`,
//! `({v, v_l}, V_l)`, `({u, u_r}, U_r)` and `({u}, U_d)` plus the edges
//! `w_l v'`, `w_r v'`, `w_l v_l`, `w_r v_r`, `w_l x`, `w_r y` and `x u`, where
//! `y ∈ U_r`. `|V_0| = D + 12`, `|V_l| = |V_r| = 7`, `|U_r| = D − b + 2` and
//! `|U_d| = b`. Edges at `U_d` are the pendant edges.
//!
//! Every interval coloring of `F(b, T)` uses exactly `T + 1` colors and puts
//! the pendant colors either right after the 12th color used or right before
//! the 12th-from-last one.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{Graph, GraphBuilder, GraphError, Orientation, VertexId};
use crate::spectrum::{Gap, SpectrumReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("invalid gadget parameters: {0}")]
    InvalidParameters(String),
    #[error("t = {t} is not in the predicted spectrum {pieces:?}")]
    NotInSpectrum { t: usize, pieces: Vec<(usize, usize)> },
    #[error("coloring violates the pendant law: {0}")]
    PendantLawViolated(String),
    #[error("coloring does not cover gadget edge `{0}`--`{1}`")]
    MissingEdge(VertexId, VertexId),
    #[error("component colorings disagree on shared edge `{0}`--`{1}`")]
    Inconsistent(VertexId, VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Names of every role in one copy of `F(b, T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FBlueprint {
    pub b: usize,
    /// The top color offset `T`; colorings use `T + 1` colors.
    pub top: usize,
    /// `D = T − 25`.
    pub d: usize,
    pub v: VertexId,
    pub v_prime: VertexId,
    pub v_l: VertexId,
    pub v_r: VertexId,
    pub u: VertexId,
    pub u_r: VertexId,
    pub w_l: VertexId,
    pub w_r: VertexId,
    pub x: VertexId,
    /// The distinguished member of `U_r` adjacent to `w_r`.
    pub y: VertexId,
    pub set_v0: Vec<VertexId>,
    pub set_vl: Vec<VertexId>,
    pub set_vr: Vec<VertexId>,
    pub set_ur: Vec<VertexId>,
    pub set_ud: Vec<VertexId>,
    /// `(u, U_d member)` in `U_d` order.
    pub pendant_edges: Vec<(VertexId, VertexId)>,
}

/// `F(k, d)`: `F_0 = F(k, 3k²d + 1)` and `F_j = F(1, 2jdk + 1)`, with the
/// `j`-th pendant edge of `F_0` identified with the pendant edge of `F_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoldFBlueprint {
    pub k: usize,
    pub d: usize,
    /// `F_0, F_1, …, F_k` with identifiers as they appear in the glued graph.
    pub components: Vec<FBlueprint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetBlueprint {
    F(FBlueprint),
    BoldF(BoldFBlueprint),
}

impl FBlueprint {
    fn rename(&mut self, from: &str, to: &str) {
        let fix = |s: &mut VertexId| {
            if s == from {
                *s = to.to_string();
            }
        };
        for s in [
            &mut self.v,
            &mut self.v_prime,
            &mut self.v_l,
            &mut self.v_r,
            &mut self.u,
            &mut self.u_r,
            &mut self.w_l,
            &mut self.w_r,
            &mut self.x,
            &mut self.y,
        ] {
            fix(s);
        }
        for set in [
            &mut self.set_v0,
            &mut self.set_vl,
            &mut self.set_vr,
            &mut self.set_ur,
            &mut self.set_ud,
        ] {
            set.iter_mut().for_each(fix);
        }
        for (a, b) in &mut self.pendant_edges {
            fix(a);
            fix(b);
        }
    }

    /// Every edge of this copy, as `(a, b, color)` under the explicit
    /// coloring on `{1, …, T + 1}` with the given pendant colors.
    fn explicit_assignments(&self, pendant_colors: &[Color]) -> Vec<(VertexId, VertexId, Color)> {
        let d = self.d as Color;
        let mut out: Vec<(VertexId, VertexId, Color)> = Vec::with_capacity(4 * self.d + 63);
        let mut put = |a: &VertexId, b: &VertexId, c: Color| out.push((a.clone(), b.clone(), c));
        put(&self.v_l, &self.w_l, 9);
        put(&self.w_l, &self.v_prime, 10);
        put(&self.w_l, &self.x, 11);
        put(&self.x, &self.u, 12);
        put(&self.u, &self.y, d + 14);
        put(&self.y, &self.u_r, d + 15);
        put(&self.y, &self.w_r, d + 16);
        put(&self.v_prime, &self.w_r, d + 17);
        put(&self.v_r, &self.w_r, d + 18);
        for (leaf, &c) in self.set_ud.iter().zip(pendant_colors) {
            put(&self.u, leaf, c);
        }
        for (i, z) in self.set_vl.iter().enumerate() {
            let i = i as Color;
            put(&self.v, z, i + 1);
            put(&self.v_l, z, i + 2);
        }
        for (i, z) in self.set_vr.iter().enumerate() {
            let i = i as Color;
            put(&self.v, z, d + 20 + i);
            put(&self.v_r, z, d + 19 + i);
        }
        // y = U_r[0] takes (D+14, D+15); the rest step down to (13+b, 14+b).
        for (i, z) in self.set_ur.iter().enumerate() {
            let i = i as Color;
            put(&self.u, z, d + 14 - i);
            put(&self.u_r, z, d + 15 - i);
        }
        for (z, (cv, cvp)) in self.set_v0.iter().zip(v0_staircase(self.d)) {
            put(&self.v, z, cv);
            put(&self.v_prime, z, cvp);
        }
        out
    }

    /// The explicit assignment with pendant colors `13, …, 12 + b`.
    fn default_assignments(&self) -> Vec<(VertexId, VertexId, Color)> {
        let pendants: Vec<Color> = (0..self.b as Color).map(|i| 13 + i).collect();
        self.explicit_assignments(&pendants)
    }

    /// Edges of this copy, in the order used by [`FBlueprint::explicit_assignments`].
    pub fn edge_names(&self) -> Vec<(VertexId, VertexId)> {
        self.default_assignments().into_iter().map(|(a, b, _)| (a, b)).collect()
    }
}

/// `(color at v, color at v')` for each `V_0` member: three rising pairs,
/// `D + 6` members in swapped consecutive pairs, three rising pairs.
pub fn v0_staircase(d: usize) -> Vec<(Color, Color)> {
    let dd = d as Color;
    let mut pairs = vec![(8, 7), (9, 8), (10, 9)];
    for m in 0..(d as Color + 6) / 2 {
        let a = 11 + 2 * m;
        pairs.push((a, a + 1));
        pairs.push((a + 1, a));
    }
    pairs.extend([(dd + 17, dd + 18), (dd + 18, dd + 19), (dd + 19, dd + 20)]);
    pairs
}

fn check_f_params(b: usize, top: usize) -> Result<usize, GadgetError> {
    if top < 25 {
        return Err(GadgetError::InvalidParameters(format!("T = {top} must be at least 26 (D = T − 25 ≥ 1)")));
    }
    let d = top - 25;
    if d % 2 != 0 {
        return Err(GadgetError::InvalidParameters(format!("D = T − 25 = {d} must be even")));
    }
    if b < 1 || b > d {
        return Err(GadgetError::InvalidParameters(format!("need 1 ≤ b ≤ D, got b = {b}, D = {d}")));
    }
    Ok(d)
}

/// Builds `F(b, T)` with plain identifiers (`v`, `v'`, `V_0.1`, `U_d.1`, …).
pub fn build_f(b: usize, top: usize) -> Result<(Graph, FBlueprint), GadgetError> {
    build_f_named(b, top, "")
}

/// Builds `F(b, T)` with every identifier and role prefixed by `prefix`.
pub fn build_f_named(b: usize, top: usize, prefix: &str) -> Result<(Graph, FBlueprint), GadgetError> {
    let d = check_f_params(b, top)?;
    let name = |s: &str| format!("{prefix}{s}");
    let set = |s: &str, n: usize| (1..=n).map(|i| format!("{prefix}{s}.{i}")).collect::<Vec<_>>();
    let set_ur = set("U_r", d - b + 2);
    let set_ud = set("U_d", b);
    let bp = FBlueprint {
        b,
        top,
        d,
        v: name("v"),
        v_prime: name("v'"),
        v_l: name("v_l"),
        v_r: name("v_r"),
        u: name("u"),
        u_r: name("u_r"),
        w_l: name("w_l"),
        w_r: name("w_r"),
        x: name("x"),
        y: set_ur[0].clone(),
        set_v0: set("V_0", d + 12),
        set_vl: set("V_l", 7),
        set_vr: set("V_r", 7),
        pendant_edges: set_ud.iter().map(|z| (name("u"), z.clone())).collect(),
        set_ur,
        set_ud,
    };

    let mut g = GraphBuilder::new();
    for (id, role) in [
        (&bp.v, "v"),
        (&bp.v_prime, "v'"),
        (&bp.v_l, "v_l"),
        (&bp.v_r, "v_r"),
        (&bp.u, "u"),
        (&bp.u_r, "u_r"),
        (&bp.w_l, "w_l"),
        (&bp.w_r, "w_r"),
        (&bp.x, "x"),
    ] {
        g.vertex_with_role(id.clone(), name(role));
    }
    g.role(bp.y.clone(), name("y"));
    for (members, role, hubs) in [
        (&bp.set_v0, "V_0", vec![&bp.v, &bp.v_prime]),
        (&bp.set_vl, "V_l", vec![&bp.v, &bp.v_l]),
        (&bp.set_vr, "V_r", vec![&bp.v, &bp.v_r]),
        (&bp.set_ur, "U_r", vec![&bp.u, &bp.u_r]),
    ] {
        for z in members {
            g.vertex_with_role(z.clone(), name(role));
            for hub in &hubs {
                g.edge((*hub).clone(), z.clone());
            }
        }
    }
    for z in &bp.set_ud {
        g.vertex_with_role(z.clone(), name("U_d"));
        g.tagged_edge(bp.u.clone(), z.clone(), name("pendant"));
    }
    for (a, b) in [
        (&bp.w_l, &bp.v_prime),
        (&bp.w_r, &bp.v_prime),
        (&bp.w_l, &bp.v_l),
        (&bp.w_r, &bp.v_r),
        (&bp.w_l, &bp.x),
        (&bp.w_r, &bp.y),
        (&bp.x, &bp.u),
    ] {
        g.edge(a.clone(), b.clone());
    }
    Ok((g.build()?, bp))
}

fn fill(g: &Graph, assignments: &[(VertexId, VertexId, Color)]) -> Result<EdgeColoring, GadgetError> {
    let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
    for (a, b, c) in assignments {
        let e = g.edge(a, b).ok_or_else(|| GadgetError::MissingEdge(a.clone(), b.clone()))?;
        match colors[e] {
            Some(old) if old != *c => return Err(GadgetError::Inconsistent(a.clone(), b.clone())),
            _ => colors[e] = Some(*c),
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(e, c)| {
            c.ok_or_else(|| {
                let (a, b) = g.endpoints(e);
                GadgetError::MissingEdge(g.name(a).to_string(), g.name(b).to_string())
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EdgeColoring::new(colors))
}

/// The explicit interval coloring of `F(b, T)` on `{1, …, T + 1}`, with
/// pendant colors `13, …, 12 + b`.
pub fn explicit_coloring_f(g: &Graph, bp: &FBlueprint) -> Result<EdgeColoring, GadgetError> {
    fill(g, &bp.default_assignments())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PendantSide {
    /// Pendant colors `c_1 + 12, …, c_1 + 11 + b` and `c(w_l v_l) = c_1 + 8`.
    Low,
    /// Pendant colors `c_1 + T − 11 − b, …, c_1 + T − 12` and `c(w_l v_l) = c_1 + T − 8`.
    High,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantLaw {
    pub side: PendantSide,
    /// Smallest color on the copy.
    pub first_color: Color,
    pub pendant_colors: BTreeSet<Color>,
    pub w_l_v_l: Color,
}

/// Classifies an interval coloring of a copy of `F(b, T)` by where its
/// pendant colors sit. `g` may be any graph containing the copy.
pub fn pendant_color_law(g: &Graph, bp: &FBlueprint, c: &EdgeColoring) -> Result<PendantLaw, GadgetError> {
    let edge_color = |a: &str, b: &str| -> Result<Color, GadgetError> {
        let e = g.edge(a, b).ok_or_else(|| GadgetError::MissingEdge(a.into(), b.into()))?;
        Ok(c.color(e))
    };
    let mut palette = BTreeSet::new();
    for (a, b) in bp.edge_names() {
        palette.insert(edge_color(&a, &b)?);
    }
    let c1 = *palette.first().expect("gadget has edges");
    let top = bp.top as Color;
    let expected: BTreeSet<Color> = (c1..=c1 + top).collect();
    if palette != expected {
        return Err(GadgetError::PendantLawViolated(format!(
            "copy uses {} colors in [{}, {}], expected exactly {}",
            palette.len(),
            c1,
            palette.last().unwrap(),
            top + 1
        )));
    }
    let pendant_colors = bp
        .pendant_edges
        .iter()
        .map(|(a, b)| edge_color(a, b))
        .collect::<Result<BTreeSet<_>, _>>()?;
    let w_l_v_l = edge_color(&bp.w_l, &bp.v_l)?;
    let b = bp.b as Color;
    let low: BTreeSet<Color> = (c1 + 12..=c1 + 11 + b).collect();
    let high: BTreeSet<Color> = (c1 + top - 11 - b..=c1 + top - 12).collect();
    let side = if pendant_colors == low {
        PendantSide::Low
    } else if pendant_colors == high {
        PendantSide::High
    } else {
        return Err(GadgetError::PendantLawViolated(format!(
            "pendant colors {pendant_colors:?} are neither {low:?} nor {high:?}"
        )));
    };
    let want = match side {
        PendantSide::Low => c1 + 8,
        PendantSide::High => c1 + top - 8,
    };
    if w_l_v_l != want {
        return Err(GadgetError::PendantLawViolated(format!(
            "c(w_l v_l) = {w_l_v_l}, expected {want} on the {side:?} side"
        )));
    }
    Ok(PendantLaw { side, first_color: c1, pendant_colors, w_l_v_l })
}

fn check_boldf_params(k: usize, d: usize) -> Result<(), GadgetError> {
    if k < 1 {
        return Err(GadgetError::InvalidParameters(format!("k = {k} must be at least 1")));
    }
    if d < 24 || d % 2 != 0 {
        return Err(GadgetError::InvalidParameters(format!("d = {d} must be even and at least 24")));
    }
    Ok(())
}

/// `T_0 = 3k²d + 1`.
pub fn top_zero(k: usize, d: usize) -> usize {
    3 * k * k * d + 1
}

/// `T_j = 2jdk + 1`.
pub fn top_j(j: usize, k: usize, d: usize) -> usize {
    2 * j * d * k + 1
}

/// Builds `F(k, d)`. Component `j` is prefixed `F{j}.`; a glued vertex keeps
/// its `F_0` identifier and carries both components' roles.
pub fn build_boldf(k: usize, d: usize) -> Result<(Graph, BoldFBlueprint), GadgetError> {
    check_boldf_params(k, d)?;
    let (mut g, f0) = build_f_named(k, top_zero(k, d), "F0.")?;
    let mut components = vec![f0];
    for j in 1..=k {
        let (gj, mut fj) = build_f_named(1, top_j(j, k, d), &format!("F{j}."))?;
        let (u0, leaf0) = components[0].pendant_edges[j - 1].clone();
        let (uj, leafj) = fj.pendant_edges[0].clone();
        // leaf of F_0's pendant ~ u_j, and u_0 ~ leaf of F_j's pendant.
        g = g.glue_edges((&u0, &leaf0), &gj, (&uj, &leafj), Orientation::Crossed)?;
        fj.rename(&uj, &leaf0);
        fj.rename(&leafj, &u0);
        components.push(fj);
    }
    Ok((g, BoldFBlueprint { k, d, components }))
}

/// `{T_0 + 1}` followed by `[T_0 + T_j − 22 − k, T_0 + T_j − 23]` for each `j`.
pub fn predicted_pieces(k: usize, d: usize) -> Result<Vec<(usize, usize)>, GadgetError> {
    check_boldf_params(k, d)?;
    let t0 = top_zero(k, d);
    let mut pieces = vec![(t0 + 1, t0 + 1)];
    for j in 1..=k {
        let tj = top_j(j, k, d);
        pieces.push((t0 + tj - 22 - k, t0 + tj - 23));
    }
    Ok(pieces)
}

/// The spectrum of `F(k, d)` as given by the construction. The report has no
/// witnesses; [`realize_t`] produces them on demand.
pub fn predicted_spectrum(k: usize, d: usize) -> Result<SpectrumReport, GadgetError> {
    let pieces = predicted_pieces(k, d)?;
    let achievable: Vec<usize> = pieces.iter().flat_map(|&(a, b)| a..=b).collect();
    let range = (achievable[0], *achievable.last().unwrap());
    let report = SpectrumReport::from_achievable(achievable, range);
    let min_gap = 2 * d * k - k - 23;
    debug_assert_eq!(report.gaps.len(), k);
    debug_assert!(report.gaps.iter().all(|g: &Gap| g.size >= min_gap && g.size >= d));
    Ok(report)
}

/// A coloring of `F(k, d)` with a known number of colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub coloring: EdgeColoring,
    pub t: usize,
    /// The component colored mirrored (its pendant is 13th from its last color), if any.
    pub mirrored_component: Option<usize>,
    /// `pendant_colors[j-1]` is the color of the edge shared by `F_0` and `F_j`,
    /// before normalization.
    pub pendant_colors: Vec<Color>,
}

/// Colors `F(k, d)` with exactly `t` colors for any `t` in its predicted
/// spectrum.
///
/// `F_0` gets its explicit coloring on `{1, …, T_0 + 1}` with pendant colors
/// a permutation of `13, …, 12 + k`. For `t = T_0 + 1` every `F_j` is shifted
/// so its 13th color meets its pendant. For `t` in the `j`-th piece, `F_j` is
/// mirrored and shifted so its 13th-from-last color lands on pendant color
/// `p = T_0 + T_j − 10 − t`, which reaches below 1; the result is normalized.
pub fn realize_t(g: &Graph, bp: &BoldFBlueprint, t: usize) -> Result<Realization, GadgetError> {
    let (k, d) = (bp.k, bp.d);
    let pieces = predicted_pieces(k, d)?;
    let piece = pieces
        .iter()
        .position(|&(a, b)| a <= t && t <= b)
        .ok_or_else(|| GadgetError::NotInSpectrum { t, pieces: pieces.clone() })?;
    let t0 = top_zero(k, d) as Color;
    let mirrored = (piece > 0).then_some(piece);

    let mut pendant_colors: Vec<Color> = (1..=k as Color).map(|j| 12 + j).collect();
    if let Some(j) = mirrored {
        let tj = top_j(j, k, d) as Color;
        let p = t0 + tj - 10 - t as Color;
        // Route p to pendant j and keep the other colors in increasing order.
        let mut rest: Vec<Color> = pendant_colors.iter().copied().filter(|&c| c != p).collect();
        rest.insert(j - 1, p);
        pendant_colors = rest;
    }

    let mut all: Vec<(VertexId, VertexId, Color)> = bp.components[0].explicit_assignments(&pendant_colors);
    for j in 1..=k {
        let comp = &bp.components[j];
        let base = comp.default_assignments();
        let p = pendant_colors[j - 1];
        let tj = comp.top as Color;
        if mirrored == Some(j) {
            // Mirrored pendant color is (T_j + 2) − 13.
            let q = p - (tj - 11);
            all.extend(base.into_iter().map(|(a, b, c)| (a, b, tj + 2 - c + q)));
        } else {
            let q = p - 13;
            all.extend(base.into_iter().map(|(a, b, c)| (a, b, c + q)));
        }
    }
    let coloring = fill(g, &all)?.normalized();
    Ok(Realization { t: coloring.palette().len(), coloring, mirrored_component: mirrored, pendant_colors })
}

/// Convenience: build `F(k, d)` and realize `t` on it.
pub fn realize(k: usize, d: usize, t: usize) -> Result<(Graph, BoldFBlueprint, Realization), GadgetError> {
    let (g, bp) = build_boldf(k, d)?;
    let r = realize_t(&g, &bp, t)?;
    Ok((g, bp, r))
}

/// Color sets per component of a coloring on `F(k, d)`.
pub fn component_palettes(g: &Graph, bp: &BoldFBlueprint, c: &EdgeColoring) -> Vec<BTreeSet<Color>> {
    bp.components
        .iter()
        .map(|comp| {
            comp.edge_names()
                .iter()
                .filter_map(|(a, b)| g.edge(a, b))
                .map(|e| c.color(e))
                .collect()
        })
        .collect()
}

/// Degree each named role must have in `F(b, T)`.
pub fn degree_certificate(bp: &FBlueprint) -> BTreeMap<VertexId, usize> {
    let d = bp.d;
    let mut out = BTreeMap::new();
    for (id, deg) in [
        (&bp.v, d + 26),
        (&bp.u, d + 3),
        (&bp.v_prime, d + 14),
        (&bp.v_l, 8),
        (&bp.v_r, 8),
        (&bp.w_l, 3),
        (&bp.w_r, 3),
        (&bp.y, 3),
        (&bp.x, 2),
        (&bp.u_r, d - bp.b + 2),
    ] {
        out.insert(id.clone(), deg);
    }
    for z in bp.set_v0.iter().chain(&bp.set_vl).chain(&bp.set_vr).chain(bp.set_ur.iter().skip(1)) {
        out.insert(z.clone(), 2);
    }
    for z in &bp.set_ud {
        out.insert(z.clone(), 1);
    }
    out
}
