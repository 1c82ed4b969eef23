//! The `intcol` command line.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::Budget;
use crate::coloring::{verify_interval, EdgeColoring};
use crate::gadgets::{build_boldf, build_f, explicit_coloring_f, pendant_color_law, predicted_spectrum, realize_t};
use crate::graph::Graph;
use crate::scheduler::{demo_instability, schedule_multi_session, schedule_no_wait, ConferenceInstance, ScheduleOutcome};
use crate::spectrum::compute_spectrum;
use crate::thickness::{decompose, degeneracy, exact_theta_small, Theta};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A definite negative answer: not interval, no schedule, empty spectrum.
    None,
    Timeout,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::None => 0,
            Status::Error => 1,
            Status::Timeout => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::None => "none",
            Status::Timeout => "timeout",
            Status::Error => "error",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CommandResult {
    pub status: Status,
    pub artifacts: Vec<PathBuf>,
    pub summary: Vec<String>,
    /// Payload for standard output when no output file was requested.
    pub output: Option<String>,
}

impl CommandResult {
    fn new(status: Status) -> Self {
        CommandResult { status, artifacts: Vec::new(), summary: Vec::new(), output: None }
    }

    fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.summary.push(s.into());
        self
    }

    fn error(message: String) -> Self {
        let mut r = CommandResult::new(Status::Error);
        r.line(message);
        r
    }
}

#[derive(Parser, Debug)]
#[command(name = "intcol", version, about = "Interval edge colorings, spectra, gadgets and no-wait schedules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a coloring is an interval coloring of a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exact interval spectrum of a small connected graph.
    Spectrum {
        #[arg(long)]
        graph: PathBuf,
        /// Largest number of colors to try (default: number of edges).
        #[arg(long)]
        t_max: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
        /// Write the report JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a gadget graph.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Split a graph into interval colorable parts.
    Thickness {
        #[arg(long)]
        graph: PathBuf,
        /// Also search for the exact minimum number of parts (small graphs).
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// No-wait timetable for a conference instance (CSV or JSON).
    Schedule {
        #[arg(long)]
        instance: PathBuf,
        /// Demand exactly this many slots.
        #[arg(long)]
        horizon: Option<usize>,
        /// Allow several sessions, each without waiting.
        #[arg(long)]
        multi_session: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a gadget conference, timetables around its spectrum gaps and a report.
    DemoGaps {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "demo-gaps")]
        out_dir: PathBuf,
        /// Time for the solver probe inside the first gap, in milliseconds.
        #[arg(long, default_value_t = 2000)]
        budget: u64,
    },
    /// Graphviz rendering of a graph, optionally labelled by a coloring.
    ExportDot {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetCommand {
    /// The rigid gadget F(b, T).
    #[command(name = "F")]
    F {
        #[arg(long)]
        b: usize,
        #[arg(long = "T")]
        top: usize,
        /// Attach the explicit coloring with T + 1 colors.
        #[arg(long)]
        color: bool,
        /// Mirror the explicit coloring.
        #[arg(long, requires = "color")]
        mirror: bool,
        #[command(flatten)]
        out: GadgetOut,
    },
    /// The glued gadget with k spectrum gaps of size at least d.
    #[command(name = "boldF")]
    BoldF {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Attach a coloring with exactly this many colors.
        #[arg(long)]
        realize: Option<usize>,
        #[command(flatten)]
        out: GadgetOut,
    },
}

#[derive(Args, Debug)]
struct GadgetOut {
    /// Write graph.json, coloring.json and graph.dot here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// What to print when no directory is given.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct BudgetArg {
    /// Solver time limit in milliseconds.
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArg {
    fn get(&self, default: Budget) -> Budget {
        self.budget.map_or(default, Budget::millis)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Csv,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok,
                _ => Status::Error,
            };
            let mut r = CommandResult::new(status);
            r.output = Some(e.render().to_string());
            return r;
        }
    };
    dispatch(cli.command).unwrap_or_else(|e| CommandResult::error(format!("error: {e:#}")))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str, result: &mut CommandResult) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    result.artifacts.push(path.to_path_buf());
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::from_json_str(&read(path)?).with_context(|| format!("invalid graph {}", path.display()))
}

fn load_coloring(g: &Graph, path: &Path) -> Result<EdgeColoring> {
    EdgeColoring::from_json_str(g, &read(path)?).with_context(|| format!("invalid coloring {}", path.display()))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("JSON serialization")
}

fn set_text(values: &[usize]) -> String {
    let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

/// Writes `payload` to `out` or keeps it for standard output.
fn emit(out: Option<&Path>, payload: String, result: &mut CommandResult) -> Result<()> {
    match out {
        Some(p) => write(p, &payload, result),
        None => {
            result.output = Some(payload);
            Ok(())
        }
    }
}

fn dispatch(command: Command) -> Result<CommandResult> {
    match command {
        Command::Verify { graph, coloring } => {
            let g = load_graph(&graph)?;
            let c = load_coloring(&g, &coloring)?;
            let violations = verify_interval(&g, &c)?;
            let mut r = CommandResult::new(if violations.is_empty() { Status::Ok } else { Status::None });
            if violations.is_empty() {
                r.line(format!("interval: yes, colors: {}", c.palette().len()));
            } else {
                r.line(format!("interval: no, {} violation(s)", violations.len()));
                for v in &violations {
                    r.line(format!("  {}", v.describe(&g)));
                }
            }
            Ok(r)
        }
        Command::Spectrum { graph, t_max, budget, out } => {
            let g = load_graph(&graph)?;
            let report = compute_spectrum(&g, t_max, budget.get(Budget::unlimited()))?;
            let mut r = CommandResult::new(if report.is_partial() {
                Status::Timeout
            } else if report.achievable.is_empty() {
                Status::None
            } else {
                Status::Ok
            });
            let note = if report.achievable.is_empty() && !report.is_partial() { " (not interval colorable)" } else { "" };
            r.line(format!("spectrum: {}{note}", set_text(&report.achievable)));
            for gap in &report.gaps {
                r.line(format!("gap: {}..{} (size {})", gap.members.0, gap.members.1, gap.size));
            }
            if report.is_partial() {
                r.line(format!("undecided (budget exhausted): {}", set_text(&report.undecided)));
            }
            emit(out.as_deref(), pretty(&report.to_json(&g)), &mut r)?;
            if report.searched_range.1 < g.edge_count() {
                r.line(format!("searched t in [{}, {}]", report.searched_range.0, report.searched_range.1));
            }
            Ok(r)
        }
        Command::Gadget(cmd) => gadget(cmd),
        Command::Thickness { graph, exact, k_max, budget, out } => {
            let g = load_graph(&graph)?;
            let budget = budget.get(Budget::millis(1000));
            let dec = decompose(&g, budget);
            dec.verify(&g)?;
            let mut r = CommandResult::new(Status::Ok);
            r.line(format!("parts: {} ({:?}), degeneracy: {}", dec.part_count(), dec.method, degeneracy(&g)));
            if exact {
                match exact_theta_small(&g, k_max, budget)? {
                    Theta::Exact(k) => r.line(format!("thickness: {k}")),
                    Theta::AboveMax => r.line(format!("thickness: > {k_max}")),
                    Theta::Undecided => {
                        r.status = Status::Timeout;
                        r.line(format!("thickness: undecided within the budget (at most {})", dec.part_count()))
                    }
                };
            }
            emit(out.as_deref(), pretty(&dec.to_json(&g)), &mut r)?;
            Ok(r)
        }
        Command::Schedule { instance, horizon, multi_session, budget, format, out } => {
            let inst = ConferenceInstance::load(&instance)?;
            let budget = budget.get(Budget::unlimited());
            let mut r = CommandResult::new(Status::Ok);
            for w in &inst.warnings {
                r.line(format!("warning: {w}"));
            }
            let timetable = if multi_session {
                if horizon.is_some() {
                    bail!("--horizon cannot be combined with --multi-session");
                }
                let m = schedule_multi_session(&inst, budget)?;
                r.line(format!("sessions: {}, longest session: {} slots", m.sessions, m.timetable.horizon()));
                m.timetable
            } else {
                match schedule_no_wait(&inst, horizon, budget)? {
                    ScheduleOutcome::Scheduled { timetable, proven_minimal } => {
                        let how = if proven_minimal { " (minimum)" } else { "" };
                        r.line(format!("horizon: {}{how}", timetable.horizon()));
                        timetable
                    }
                    ScheduleOutcome::NoSchedule => {
                        r.status = Status::None;
                        r.line("no no-wait schedule exists at this horizon");
                        return Ok(r);
                    }
                    ScheduleOutcome::Timeout => {
                        r.status = Status::Timeout;
                        r.line("budget exhausted before a schedule was found");
                        return Ok(r);
                    }
                }
            };
            r.line("no-wait check: passed");
            let payload = match format {
                Format::Json => pretty(&timetable.entries),
                Format::Csv => timetable.to_csv_string(),
                Format::Dot => bail!("timetables are written as csv or json"),
            };
            emit(out.as_deref(), payload, &mut r)?;
            Ok(r)
        }
        Command::DemoGaps { k, d, out_dir, budget } => {
            let report = demo_instability(k, d, &out_dir, Budget::millis(budget))?;
            let mut r = CommandResult::new(Status::Ok);
            let lengths: Vec<String> =
                report.pieces.iter().map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}..{b}") }).collect();
            r.line(format!("schedule lengths: {}", lengths.join(", ")));
            for gap in &report.gaps {
                r.line(format!("gap: {}..{} (size {})", gap.members.0, gap.members.1, gap.size));
            }
            if let Some((mid, status)) = &report.probe {
                r.line(format!("solver probe at {mid}: {status:?}"));
            }
            r.artifacts = report.artifacts();
            Ok(r)
        }
        Command::ExportDot { graph, coloring, out } => {
            let g = load_graph(&graph)?;
            let c = coloring.map(|p| load_coloring(&g, &p)).transpose()?;
            let mut r = CommandResult::new(Status::Ok);
            r.line(format!("{} vertices, {} edges", g.vertex_count(), g.edge_count()));
            emit(out.as_deref(), g.to_dot(c.as_ref().map(|c| c.colors())), &mut r)?;
            Ok(r)
        }
    }
}

fn write_gadget(g: &Graph, c: Option<&EdgeColoring>, out: &GadgetOut, r: &mut CommandResult) -> Result<()> {
    if let Some(dir) = &out.out_dir {
        write(&dir.join("graph.json"), &g.to_json_string(), r)?;
        if let Some(c) = c {
            write(&dir.join("coloring.json"), &c.to_json_string(g), r)?;
        }
        write(&dir.join("graph.dot"), &g.to_dot(c.map(|c| c.colors())), r)?;
        return Ok(());
    }
    r.output = Some(match out.format {
        Format::Dot => g.to_dot(c.map(|c| c.colors())),
        _ => g.to_json_string(),
    });
    Ok(())
}

fn gadget(cmd: GadgetCommand) -> Result<CommandResult> {
    let mut r = CommandResult::new(Status::Ok);
    match cmd {
        GadgetCommand::F { b, top, color, mirror, out } => {
            let (g, bp) = build_f(b, top)?;
            r.line(format!("F({b}, {top}): {} vertices, {} edges", g.vertex_count(), g.edge_count()));
            let coloring = if color {
                let c = explicit_coloring_f(&g, &bp)?;
                let c = if mirror { c.mirror() } else { c };
                if !verify_interval(&g, &c)?.is_empty() {
                    bail!("internal error: explicit coloring failed verification");
                }
                let law = pendant_color_law(&g, &bp, &c)?;
                r.line(format!("interval: yes, colors: {}", c.palette().len()));
                let pendants: Vec<String> = law.pendant_colors.iter().map(|c| c.to_string()).collect();
                r.line(format!("pendant colors: {{{}}}, c(w_l v_l) = {}", pendants.join(", "), law.w_l_v_l));
                Some(c)
            } else {
                None
            };
            write_gadget(&g, coloring.as_ref(), &out, &mut r)?;
        }
        GadgetCommand::BoldF { k, d, realize, out } => {
            let (g, bp) = build_boldf(k, d)?;
            r.line(format!("boldF({k}, {d}): {} vertices, {} edges", g.vertex_count(), g.edge_count()));
            let predicted = predicted_spectrum(k, d)?;
            let pieces: Vec<String> = {
                let mut runs = Vec::new();
                let mut start = predicted.achievable[0];
                for w in predicted.achievable.windows(2) {
                    if w[1] != w[0] + 1 {
                        runs.push((start, w[0]));
                        start = w[1];
                    }
                }
                runs.push((start, *predicted.achievable.last().unwrap()));
                runs.iter().map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}..{b}") }).collect()
            };
            r.line(format!("predicted spectrum: {}", pieces.join(", ")));
            let coloring = match realize {
                Some(t) => {
                    let real = realize_t(&g, &bp, t)?;
                    if !verify_interval(&g, &real.coloring)?.is_empty() {
                        bail!("internal error: realized coloring failed verification");
                    }
                    r.line(format!("interval: yes, colors: {}", real.t));
                    Some(real.coloring)
                }
                None => None,
            };
            write_gadget(&g, coloring.as_ref(), &out, &mut r)?;
        }
    }
    Ok(r)
}
