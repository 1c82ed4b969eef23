//! No-wait parent–teacher conference scheduling.
//!
//! Participants are vertices, meetings are edges and slots are colors: a
//! timetable in which nobody waits between meetings is exactly an interval
//! edge coloring of the meeting graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, Limits};
use crate::coloring::{Color, EdgeColoring};
use crate::gadgets::{build_boldf, predicted_pieces, realize_t, GadgetError};
use crate::graph::{Bipartition, Graph, GraphBuilder, GraphError, EDGE_KEY_SEPARATOR};
use crate::spectrum::{find_coloring_within, gaps_of, Decision, Gap};
use crate::thickness::{color_regular_bipartite, decompose, Method};

pub const PARENT: &str = "parent";
pub const TEACHER: &str = "teacher";

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("{0:?} appears both as a parent and as a teacher")]
    BothSides(String),
    #[error("line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error("invalid participant name {0:?}")]
    InvalidName(String),
    #[error("meeting graph is not bipartite")]
    NotBipartite,
    #[error("slot colors must be positive, edge {0} has {1}")]
    NonPositiveSlot(String, Color),
    #[error("timetable failed the no-wait check: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ScheduleError + '_ {
    move |source| ScheduleError::Io { path: path.to_path_buf(), source }
}

/// Meeting requests between two disjoint groups of participants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConferenceInstance {
    pub parents: BTreeSet<String>,
    pub teachers: BTreeSet<String>,
    /// Sorted, without repeats.
    pub meetings: Vec<(String, String)>,
    pub slot_duration: Option<String>,
    /// Notes produced while loading, such as dropped duplicate rows.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(default)]
    pub parents: Vec<String>,
    #[serde(default)]
    pub teachers: Vec<String>,
    pub meetings: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot_duration: Option<String>,
}

fn check_name(name: &str) -> Result<(), ScheduleError> {
    if name.is_empty() || name.contains(EDGE_KEY_SEPARATOR) {
        return Err(ScheduleError::InvalidName(name.to_string()));
    }
    Ok(())
}

impl ConferenceInstance {
    /// Builds an instance from meeting pairs. Repeated pairs are dropped with
    /// a warning; `extra_parents`/`extra_teachers` may list people without
    /// meetings.
    pub fn new(
        meetings: impl IntoIterator<Item = (String, String)>,
        extra_parents: impl IntoIterator<Item = String>,
        extra_teachers: impl IntoIterator<Item = String>,
    ) -> Result<Self, ScheduleError> {
        let mut inst = ConferenceInstance::default();
        let mut seen = BTreeSet::new();
        for (p, t) in meetings {
            check_name(&p)?;
            check_name(&t)?;
            if !seen.insert((p.clone(), t.clone())) {
                inst.warnings.push(format!("duplicate meeting {p},{t} ignored"));
                continue;
            }
            inst.parents.insert(p);
            inst.teachers.insert(t);
        }
        for p in extra_parents {
            check_name(&p)?;
            inst.parents.insert(p);
        }
        for t in extra_teachers {
            check_name(&t)?;
            inst.teachers.insert(t);
        }
        if let Some(name) = inst.parents.intersection(&inst.teachers).next() {
            return Err(ScheduleError::BothSides(name.clone()));
        }
        inst.meetings = seen.into_iter().collect();
        Ok(inst)
    }

    /// Reads CSV with header `parent,teacher`.
    pub fn from_csv_reader(reader: impl Read) -> Result<Self, ScheduleError> {
        let mut rdr = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.len() != 2 || &header[0] != PARENT || &header[1] != TEACHER {
            return Err(ScheduleError::Malformed { line: 1, reason: "expected header `parent,teacher`".into() });
        }
        let mut pairs = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != 2 {
                return Err(ScheduleError::Malformed { line, reason: format!("expected 2 fields, found {}", record.len()) });
            }
            let (p, t) = (record[0].to_string(), record[1].to_string());
            if p.is_empty() || t.is_empty() {
                return Err(ScheduleError::Malformed { line, reason: "empty name".into() });
            }
            if p == t {
                return Err(ScheduleError::BothSides(p));
            }
            pairs.push((p, t));
        }
        Self::new(pairs, [], [])
    }

    pub fn from_json(json: &InstanceJson) -> Result<Self, ScheduleError> {
        let mut inst = Self::new(
            json.meetings.iter().map(|[p, t]| (p.clone(), t.clone())),
            json.parents.iter().cloned(),
            json.teachers.iter().cloned(),
        )?;
        inst.slot_duration = json.slot_duration.clone();
        Ok(inst)
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            parents: self.parents.iter().cloned().collect(),
            teachers: self.teachers.iter().cloned().collect(),
            meetings: self.meetings.iter().map(|(p, t)| [p.clone(), t.clone()]).collect(),
            slot_duration: self.slot_duration.clone(),
        }
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([PARENT, TEACHER]).expect("in-memory csv");
        for (p, t) in &self.meetings {
            w.write_record([p, t]).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }

    /// Loads `.json` files as JSON and anything else as CSV.
    pub fn load(path: &Path) -> Result<Self, ScheduleError> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&serde_json::from_str(&text)?)
        } else {
            Self::from_csv_reader(text.as_bytes())
        }
    }

    /// Parents on one side, teachers on the other.
    pub fn from_bipartite_graph(g: &Graph) -> Result<Self, ScheduleError> {
        let Bipartition::Sides(side) = g.bipartition() else {
            return Err(ScheduleError::NotBipartite);
        };
        let orient = |a: usize, b: usize| if side[a] { (b, a) } else { (a, b) };
        let meetings = g.edges().iter().map(|&(a, b)| {
            let (p, t) = orient(a, b);
            (g.name(p).to_string(), g.name(t).to_string())
        });
        let (ps, ts): (Vec<usize>, Vec<usize>) = (0..g.vertex_count()).partition(|&v| !side[v]);
        Self::new(meetings, ps.into_iter().map(|v| g.name(v).to_string()), ts.into_iter().map(|v| g.name(v).to_string()))
    }

    /// Meeting graph: participants are vertices with role `parent` or
    /// `teacher`, meetings are edges.
    pub fn graph(&self) -> Graph {
        let mut b = GraphBuilder::new();
        for p in &self.parents {
            b.vertex_with_role(p.clone(), PARENT);
        }
        for t in &self.teachers {
            b.vertex_with_role(t.clone(), TEACHER);
        }
        for (p, t) in &self.meetings {
            b.edge(p.clone(), t.clone());
        }
        b.build().expect("validated instance")
    }

    /// Edge of the meeting graph for each meeting, in meeting order.
    fn meeting_edges(&self, g: &Graph) -> Vec<usize> {
        self.meetings.iter().map(|(p, t)| g.edge(p, t).expect("meeting edge")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimetableEntry {
    /// 1-based index into the instance's meetings.
    pub meeting: usize,
    pub parent: String,
    pub teacher: String,
    pub session: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Timetable {
    pub entries: Vec<TimetableEntry>,
}

impl Timetable {
    /// Largest slot used.
    pub fn horizon(&self) -> usize {
        self.entries.iter().map(|e| e.slot).max().unwrap_or(0)
    }

    pub fn session_count(&self) -> usize {
        self.entries.iter().map(|e| e.session).collect::<BTreeSet<_>>().len()
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            w.serialize(e).expect("in-memory csv");
        }
        let bytes = w.into_inner().expect("in-memory csv");
        if self.entries.is_empty() {
            return "meeting,parent,teacher,session,slot\n".into();
        }
        String::from_utf8(bytes).expect("utf-8 csv")
    }

    pub fn from_csv_reader(reader: impl Read) -> Result<Self, ScheduleError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let entries = rdr.deserialize().collect::<Result<Vec<TimetableEntry>, _>>()?;
        Ok(Timetable { entries })
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), ScheduleError> {
        std::fs::write(path, self.to_csv_string()).map_err(io_err(path))
    }

    /// Builds a single-session timetable reading each meeting's slot off
    /// its edge color.
    pub fn from_coloring(
        instance: &ConferenceInstance,
        g: &Graph,
        coloring: &EdgeColoring,
        session: usize,
    ) -> Result<Self, ScheduleError> {
        let mut entries = Vec::with_capacity(instance.meetings.len());
        for (i, ((p, t), e)) in instance.meetings.iter().zip(instance.meeting_edges(g)).enumerate() {
            let c = coloring.color(e);
            if c < 1 {
                return Err(ScheduleError::NonPositiveSlot(g.edge_key(e), c));
            }
            entries.push(TimetableEntry { meeting: i + 1, parent: p.clone(), teacher: t.clone(), session, slot: c as usize });
        }
        Ok(Timetable { entries })
    }

    /// Edge coloring of the instance's graph with the slot of each meeting,
    /// ignoring sessions.
    pub fn to_coloring(&self, instance: &ConferenceInstance, g: &Graph) -> EdgeColoring {
        let edges = instance.meeting_edges(g);
        let mut colors = vec![0; g.edge_count()];
        for entry in &self.entries {
            colors[edges[entry.meeting - 1]] = entry.slot as Color;
        }
        EdgeColoring::new(colors)
    }
}

/// A breach of the no-wait rules found by [`check_no_wait`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoWaitViolation {
    /// A participant has two meetings in the same slot.
    DoubleBooked { participant: String, session: usize, slot: usize },
    /// A participant's busy slots have a hole.
    Waiting { participant: String, session: usize, slots: Vec<usize> },
    ZeroSlot { meeting: usize },
}

impl std::fmt::Display for NoWaitViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoWaitViolation::DoubleBooked { participant, session, slot } => {
                write!(f, "{participant} has two meetings in session {session}, slot {slot}")
            }
            NoWaitViolation::Waiting { participant, session, slots } => {
                write!(f, "{participant} waits in session {session}: busy slots {slots:?}")
            }
            NoWaitViolation::ZeroSlot { meeting } => write!(f, "meeting {meeting} has slot 0"),
        }
    }
}

/// Checks the timetable directly: per session and participant, the busy
/// slots must be distinct and form one unbroken run.
pub fn check_no_wait(timetable: &Timetable) -> Vec<NoWaitViolation> {
    let mut busy: BTreeMap<(usize, &str, &str), Vec<usize>> = BTreeMap::new();
    let mut out = Vec::new();
    for e in &timetable.entries {
        if e.slot == 0 {
            out.push(NoWaitViolation::ZeroSlot { meeting: e.meeting });
        }
        busy.entry((e.session, PARENT, &e.parent)).or_default().push(e.slot);
        busy.entry((e.session, TEACHER, &e.teacher)).or_default().push(e.slot);
    }
    for ((session, _, who), mut slots) in busy {
        slots.sort_unstable();
        if let Some(w) = slots.windows(2).find(|w| w[0] == w[1]) {
            out.push(NoWaitViolation::DoubleBooked { participant: who.to_string(), session, slot: w[0] });
        } else if slots[slots.len() - 1] - slots[0] + 1 != slots.len() {
            out.push(NoWaitViolation::Waiting { participant: who.to_string(), session, slots });
        }
    }
    out
}

/// Checks that every meeting of `instance` appears exactly once with the
/// right participants, then runs [`check_no_wait`].
pub fn validate_timetable(instance: &ConferenceInstance, timetable: &Timetable) -> Result<(), ScheduleError> {
    let mut seen = vec![false; instance.meetings.len()];
    for e in &timetable.entries {
        let Some((p, t)) = e.meeting.checked_sub(1).and_then(|i| instance.meetings.get(i)) else {
            return Err(ScheduleError::Invalid(format!("unknown meeting {}", e.meeting)));
        };
        if (p, t) != (&e.parent, &e.teacher) {
            return Err(ScheduleError::Invalid(format!("meeting {} is {p},{t}", e.meeting)));
        }
        if std::mem::replace(&mut seen[e.meeting - 1], true) {
            return Err(ScheduleError::Invalid(format!("meeting {} listed twice", e.meeting)));
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(ScheduleError::Invalid(format!("meeting {} is not scheduled", i + 1)));
    }
    match check_no_wait(timetable).first() {
        Some(v) => Err(ScheduleError::Invalid(v.to_string())),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleOutcome {
    Scheduled {
        timetable: Timetable,
        /// `true` when every shorter horizon was refuted (only meaningful
        /// without a requested horizon).
        proven_minimal: bool,
    },
    /// No no-wait timetable exists with the requested horizon.
    NoSchedule,
    Timeout,
}

enum ComponentResult {
    Found { coloring: EdgeColoring, t: usize, minimal: bool },
    None,
    Timeout,
}

/// Smallest `t ≤ cap` with a `t`-interval coloring of `g`.
fn smallest_horizon(g: &Graph, cap: usize, limits: &mut Limits) -> ComponentResult {
    let delta = g.max_degree();
    if let Ok(c) = color_regular_bipartite(g) {
        return if delta <= cap { ComponentResult::Found { coloring: c, t: delta, minimal: true } } else { ComponentResult::None };
    }
    let mut minimal = true;
    for t in delta..=cap.min(g.edge_count()) {
        match find_coloring_within(g, t, limits).expect("connected, t ≥ 1") {
            Decision::Found(coloring) => return ComponentResult::Found { coloring, t, minimal },
            Decision::NotColorable => {}
            Decision::Timeout => minimal = false,
        }
        if limits.is_exhausted() {
            return ComponentResult::Timeout;
        }
    }
    if minimal { ComponentResult::None } else { ComponentResult::Timeout }
}

/// No-wait timetable in one session.
///
/// Each connected part of the meeting graph is scheduled on its own,
/// starting at slot 1. Without `horizon` each part gets the fewest slots the
/// budget can find. With `horizon = h` every part must fit in `h` slots and
/// at least one must use exactly `h`; for a connected instance that is
/// exactly `h`-interval colorability.
pub fn schedule_no_wait(
    instance: &ConferenceInstance,
    horizon: Option<usize>,
    budget: Budget,
) -> Result<ScheduleOutcome, ScheduleError> {
    let g = instance.graph();
    let mut limits = budget.start();
    let mut colors = vec![0; g.edge_count()];
    let mut proven_minimal = true;
    let mut reaches_horizon = horizon.is_none() || g.edge_count() == 0 && horizon == Some(0);
    let mut timed_out = false;
    for comp in g.components() {
        let (sub, origin) = g.induced_subgraph(&comp);
        if sub.edge_count() == 0 {
            continue;
        }
        let mut result = None;
        if let Some(h) = horizon {
            if !reaches_horizon && h >= 1 {
                match find_coloring_within(&sub, h, &mut limits).expect("connected, t ≥ 1") {
                    Decision::Found(c) => {
                        reaches_horizon = true;
                        result = Some(ComponentResult::Found { coloring: c, t: h, minimal: false });
                    }
                    Decision::NotColorable => {}
                    Decision::Timeout => timed_out = true,
                }
            }
        }
        let result = match result {
            Some(r) => r,
            None => smallest_horizon(&sub, horizon.unwrap_or(usize::MAX), &mut limits),
        };
        match result {
            ComponentResult::Found { coloring, t, minimal } => {
                proven_minimal &= minimal;
                if horizon == Some(t) {
                    reaches_horizon = true;
                }
                for (i, &e) in origin.iter().enumerate() {
                    colors[e] = coloring.color(i);
                }
            }
            ComponentResult::None => return Ok(ScheduleOutcome::NoSchedule),
            ComponentResult::Timeout => return Ok(ScheduleOutcome::Timeout),
        }
    }
    if !reaches_horizon {
        return Ok(if timed_out { ScheduleOutcome::Timeout } else { ScheduleOutcome::NoSchedule });
    }
    let timetable = Timetable::from_coloring(instance, &g, &EdgeColoring::new(colors), 1)?;
    validate_timetable(instance, &timetable)?;
    Ok(ScheduleOutcome::Scheduled { timetable, proven_minimal: horizon.is_none() && proven_minimal })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSession {
    pub timetable: Timetable,
    pub sessions: usize,
    pub method: Method,
}

/// Splits the meetings into sessions, each with its own no-wait timetable,
/// using [`decompose`] on the meeting graph.
pub fn schedule_multi_session(instance: &ConferenceInstance, solver_budget: Budget) -> Result<MultiSession, ScheduleError> {
    let g = instance.graph();
    let dec = decompose(&g, solver_budget);
    let edges = instance.meeting_edges(&g);
    let mut slot_of = vec![(0, 0); g.edge_count()];
    for (s, part) in dec.parts.iter().enumerate() {
        for (i, &e) in part.edges.iter().enumerate() {
            slot_of[e] = (s + 1, part.coloring.color(i));
        }
    }
    let entries = instance
        .meetings
        .iter()
        .zip(edges)
        .enumerate()
        .map(|(i, ((p, t), e))| {
            let (session, slot) = slot_of[e];
            TimetableEntry { meeting: i + 1, parent: p.clone(), teacher: t.clone(), session, slot: slot as usize }
        })
        .collect();
    let timetable = Timetable { entries };
    validate_timetable(instance, &timetable)?;
    Ok(MultiSession { timetable, sessions: dec.part_count(), method: dec.method })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeStatus {
    NoSchedule,
    Timeout,
    /// Would contradict the construction; recorded if it ever happens.
    Scheduled,
}

#[derive(Debug, Clone)]
pub struct DemoReport {
    pub pieces: Vec<(usize, usize)>,
    pub gaps: Vec<Gap>,
    pub instance_path: PathBuf,
    /// `(horizon, path)` for each realized border timetable.
    pub timetables: Vec<(usize, PathBuf)>,
    pub report_path: PathBuf,
    /// Solver attempt at the middle of the first gap.
    pub probe: Option<(usize, ProbeStatus)>,
}

impl DemoReport {
    pub fn artifacts(&self) -> Vec<PathBuf> {
        let mut out = vec![self.instance_path.clone()];
        out.extend(self.timetables.iter().map(|(_, p)| p.clone()));
        out.push(self.report_path.clone());
        out
    }
}

/// Writes the conference built on the gadget graph `F(k, d)` together with
/// timetables at both ends of every gap of its spectrum and a Markdown
/// report. `probe_budget` bounds one solver attempt inside the first gap.
pub fn demo_instability(k: usize, d: usize, out_dir: &Path, probe_budget: Budget) -> Result<DemoReport, ScheduleError> {
    let (g, bp) = build_boldf(k, d)?;
    let pieces = predicted_pieces(k, d)?;
    let mut spectrum: Vec<usize> = Vec::new();
    for &(a, b) in &pieces {
        spectrum.extend(a..=b);
    }
    spectrum.sort_unstable();
    let gaps = gaps_of(&spectrum);

    let instance = ConferenceInstance::from_bipartite_graph(&g)?;
    let ig = instance.graph();
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let instance_path = out_dir.join("instance.csv");
    std::fs::write(&instance_path, instance.to_csv_string()).map_err(io_err(&instance_path))?;

    let borders: BTreeSet<usize> = gaps.iter().flat_map(|gap| [gap.members.0 - 1, gap.members.1 + 1]).collect();
    let mut timetables = Vec::new();
    for &t in &borders {
        let r = realize_t(&g, &bp, t)?;
        // Same vertex names, so re-read the coloring through edge keys.
        let coloring = EdgeColoring::new(ig.edges().iter().map(|&(a, b)| r.coloring.color(g.edge(ig.name(a), ig.name(b)).expect("same edges"))).collect());
        let tt = Timetable::from_coloring(&instance, &ig, &coloring, 1)?;
        validate_timetable(&instance, &tt)?;
        if tt.horizon() != t {
            return Err(ScheduleError::Invalid(format!("realized horizon {} instead of {t}", tt.horizon())));
        }
        let path = out_dir.join(format!("timetable_t{t}.csv"));
        tt.write_csv(&path)?;
        timetables.push((t, path));
    }

    let probe = gaps.first().map(|gap| {
        let mid = (gap.members.0 + gap.members.1) / 2;
        let status = match schedule_no_wait(&instance, Some(mid), probe_budget) {
            Ok(ScheduleOutcome::NoSchedule) => ProbeStatus::NoSchedule,
            Ok(ScheduleOutcome::Scheduled { .. }) => ProbeStatus::Scheduled,
            _ => ProbeStatus::Timeout,
        };
        (mid, status)
    });

    let report_path = out_dir.join("report.md");
    let text = render_report(k, d, &instance, &pieces, &gaps, &timetables, probe.as_ref(), probe_budget);
    std::fs::write(&report_path, text).map_err(io_err(&report_path))?;
    Ok(DemoReport { pieces, gaps, instance_path, timetables, report_path, probe })
}

#[allow(clippy::too_many_arguments)]
fn render_report(
    k: usize,
    d: usize,
    instance: &ConferenceInstance,
    pieces: &[(usize, usize)],
    gaps: &[Gap],
    timetables: &[(usize, PathBuf)],
    probe: Option<&(usize, ProbeStatus)>,
    probe_budget: Budget,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Schedule length instability, k = {k}, d = {d}\n");
    let _ = writeln!(
        s,
        "Conference: {} parents, {} teachers, {} meetings (`instance.csv`).\n",
        instance.parents.len(),
        instance.teachers.len(),
        instance.meetings.len()
    );
    let _ = writeln!(s, "## Possible no-wait schedule lengths\n");
    for &(a, b) in pieces {
        if a == b {
            let _ = writeln!(s, "- {a} slots");
        } else {
            let _ = writeln!(s, "- {a} to {b} slots");
        }
    }
    let _ = writeln!(s, "\n## Gaps\n");
    for gap in gaps {
        let _ = writeln!(
            s,
            "- no no-wait schedule lasts {} to {} slots ({} values), although {} and {} both work",
            gap.members.0,
            gap.members.1,
            gap.size,
            gap.members.0 - 1,
            gap.members.1 + 1
        );
    }
    let _ = writeln!(s, "\n## Timetables\n");
    for (t, path) in timetables {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let _ = writeln!(s, "- `{name}`: {t} slots, checked for double bookings and waiting");
    }
    let _ = writeln!(s, "\n## What is verified\n");
    let _ = writeln!(
        s,
        "Every timetable above was checked mechanically. That the gaps are empty follows from the \
         construction of the gadget and is not machine-verified at this size."
    );
    if let Some((mid, status)) = probe {
        let budget = match (probe_budget.time, probe_budget.nodes) {
            (Some(t), _) => format!("{} ms", t.as_millis()),
            (None, Some(n)) => format!("{n} nodes"),
            (None, None) => "no limit".into(),
        };
        let outcome = match status {
            ProbeStatus::NoSchedule => "refuted: no schedule exists",
            ProbeStatus::Timeout => "timeout, undecided",
            ProbeStatus::Scheduled => "found a schedule, contradicting the predicted gap",
        };
        let _ = writeln!(s, "\nSolver probe at {mid} slots ({budget}): {outcome}.");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(csv: &str) -> ConferenceInstance {
        ConferenceInstance::from_csv_reader(csv.as_bytes()).unwrap()
    }

    #[test]
    fn k22_from_csv() {
        let i = inst("parent,teacher\na,x\na,y\nb,x\nb,y\n");
        let g = i.graph();
        assert_eq!((g.vertex_count(), g.edge_count(), g.max_degree()), (4, 4, 2));
        assert!(i.warnings.is_empty());
    }

    #[test]
    fn same_name_both_sides() {
        let err = ConferenceInstance::from_csv_reader("parent,teacher\nalice,alice\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ScheduleError::BothSides(n) if n == "alice"));
        let err = ConferenceInstance::from_csv_reader("parent,teacher\na,b\nb,c\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ScheduleError::BothSides(n) if n == "b"));
    }

    #[test]
    fn duplicates_are_dropped_with_warning() {
        let i = inst("parent,teacher\na,x\na,x\n");
        assert_eq!(i.meetings.len(), 1);
        assert_eq!(i.warnings.len(), 1);
    }

    #[test]
    fn malformed_rows_report_lines() {
        let err = ConferenceInstance::from_csv_reader("parent,teacher\na,x\nb\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ScheduleError::Malformed { line: 3, .. }), "{err}");
        let err = ConferenceInstance::from_csv_reader("p,t\na,x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ScheduleError::Malformed { line: 1, .. }));
    }

    #[test]
    fn json_round_trip() {
        let i = inst("parent,teacher\na,x\nb,x\n");
        let json = serde_json::to_string(&i.to_json()).unwrap();
        let back = ConferenceInstance::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.meetings, i.meetings);
    }

    #[test]
    fn k22_two_slots() {
        let i = inst("parent,teacher\na,x\na,y\nb,x\nb,y\n");
        let ScheduleOutcome::Scheduled { timetable, proven_minimal } = schedule_no_wait(&i, None, Budget::unlimited()).unwrap() else {
            panic!()
        };
        assert_eq!(timetable.horizon(), 2);
        assert!(proven_minimal);
    }

    #[test]
    fn star_needs_five_slots() {
        let i = inst("parent,teacher\np1,t\np2,t\np3,t\np4,t\np5,t\n");
        let ScheduleOutcome::Scheduled { timetable, .. } = schedule_no_wait(&i, None, Budget::unlimited()).unwrap() else {
            panic!()
        };
        assert_eq!(timetable.horizon(), 5);
        assert_eq!(schedule_no_wait(&i, Some(6), Budget::unlimited()).unwrap(), ScheduleOutcome::NoSchedule);
    }

    #[test]
    fn requested_horizon_is_met() {
        // a path p1-t1-p2-t2: 3 slots possible
        let i = inst("parent,teacher\np1,t1\np2,t1\np2,t2\n");
        let ScheduleOutcome::Scheduled { timetable, .. } = schedule_no_wait(&i, Some(3), Budget::unlimited()).unwrap() else {
            panic!()
        };
        assert_eq!(timetable.horizon(), 3);
    }

    #[test]
    fn disconnected_parts_start_at_one() {
        let i = inst("parent,teacher\na,x\nb,y\nb,z\n");
        let ScheduleOutcome::Scheduled { timetable, .. } = schedule_no_wait(&i, None, Budget::unlimited()).unwrap() else {
            panic!()
        };
        let slot_ax = timetable.entries.iter().find(|e| e.parent == "a").unwrap().slot;
        assert_eq!(slot_ax, 1);
        assert_eq!(timetable.horizon(), 2);
    }

    #[test]
    fn checker_flags_waiting_and_clashes() {
        let e = |m, p: &str, t: &str, slot| TimetableEntry { meeting: m, parent: p.into(), teacher: t.into(), session: 1, slot };
        let tt = Timetable { entries: vec![e(1, "a", "x", 1), e(2, "a", "y", 3)] };
        assert!(matches!(check_no_wait(&tt)[..], [NoWaitViolation::Waiting { .. }]));
        let tt = Timetable { entries: vec![e(1, "a", "x", 1), e(2, "b", "x", 1)] };
        assert!(matches!(check_no_wait(&tt)[..], [NoWaitViolation::DoubleBooked { .. }]));
        let mut tt = Timetable { entries: vec![e(1, "a", "x", 1), e(2, "a", "y", 3)] };
        tt.entries[1].session = 2;
        assert!(check_no_wait(&tt).is_empty());
    }

    #[test]
    fn timetable_csv_round_trip() {
        let i = inst("parent,teacher\na,x\na,y\n");
        let ScheduleOutcome::Scheduled { timetable, .. } = schedule_no_wait(&i, None, Budget::unlimited()).unwrap() else {
            panic!()
        };
        let text = timetable.to_csv_string();
        assert!(text.starts_with("meeting,parent,teacher,session,slot\n"));
        assert_eq!(Timetable::from_csv_reader(text.as_bytes()).unwrap(), timetable);
    }

    #[test]
    fn k33_one_session_three_slots() {
        let rows: String = (0..3).flat_map(|p| (0..3).map(move |t| format!("p{p},t{t}\n"))).collect();
        let i = inst(&format!("parent,teacher\n{rows}"));
        let m = schedule_multi_session(&i, Budget::millis(1000)).unwrap();
        assert_eq!(m.sessions, 1);
        assert_eq!(m.timetable.horizon(), 3);
    }
}
