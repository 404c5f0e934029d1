//! Shared-memory graph coloring.
//!
//! * [`graph`]: immutable CSR graphs.
//! * [`io`]: Matrix Market and edge-list loaders, R-MAT and mesh generators,
//!   vertex shuffling.
//! * [`coloring`]: sequential First-Fit, conflict detection, verification,
//!   and the two speculative parallel algorithms in [`coloring::parallel`].
//! * [`lockstep`]: a lockstep execution model showing how simultaneous
//!   commits keep speculative coloring from converging.
//! * [`bench`]: instrumentation and the benchmark harness.

pub mod bench;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod io;
pub mod lockstep;

pub use bench::{
    color_graph, color_sequential, relative_speedup, run_benchmark, run_benchmark_with, write_csv, Algorithm,
    BenchReport, ColoringStats,
};
pub use coloring::parallel::{color_catalyurek, color_rsoc, ParallelConfig};
pub use coloring::{
    count_colors, detect_conflicts, first_fit_sequential, smallest_available_color, verify_coloring, Color, Coloring,
    ConflictReport, ForbiddenMarks, Violation, Worklist, UNCOLORED,
};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use lockstep::{lockstep_color, LockstepOutcome};
