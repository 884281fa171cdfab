//! Problem specs in, reports and graph files out.

mod render;
mod report;
mod spec;

pub use render::{chambers_text, describe, knit_text, skeleton_dot, wall_fan_svg};
pub use report::{
    build_report, coverage, run_report, write_atomic, Artifacts, BoundsRow, ChamberRow, ClassRow, Counts, Coverage,
    EdgeRow, ExchangeRow, Files, GraphRow, InequalityRow, InputEcho, Report, WallRow, COVERAGE_SAMPLES, DOT_FILE,
    REPORT_FILE, SVG_FILE,
};
pub use spec::{
    aliases, parse_spec, Options, ProblemSpec, VertexRef, E_DIAGRAM, E_DUPLICATE, E_EMPTY, E_EXTENDED, E_FIELD,
    E_JSON, E_SHAPE, E_VERTEX,
};
