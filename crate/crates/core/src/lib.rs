//! Interval edge colorings.
//!
//! An edge coloring is an *interval coloring* when the colors at every
//! vertex are distinct and consecutive. This crate verifies such colorings,
//! computes interval spectra exactly on small graphs, builds the rigid gadget
//! graphs whose spectra have large gaps, decomposes graphs into interval
//! colorable parts and turns all of it into no-wait conference timetables.

pub mod budget;
pub mod cli;
pub mod coloring;
pub mod gadgets;
pub mod graph;
pub mod scheduler;
pub mod spectrum;
pub mod thickness;

pub use budget::{Budget, Limits};
pub use coloring::{verify_interval, Color, EdgeColoring, IntervalViolation, ViolationKind};
pub use graph::{Graph, GraphBuilder, GraphError, Orientation, VertexId};
pub use spectrum::{compute_spectrum, enumerate_colorings, find_coloring, Decision, Gap, SpectrumReport};
pub use thickness::{decompose, Decomposition};
pub use scheduler::{schedule_no_wait, ConferenceInstance, Timetable};
