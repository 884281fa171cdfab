//! The report pipeline and its JSON shape.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::render::{skeleton_dot, wall_fan_svg};
use super::spec::{Options, ProblemSpec};
use crate::chambers::{enumerate_chambers_with, ChamberStructure, EnumerateOptions, OracleComparison};
use crate::dynkin::{DualGraph, DynkinDiagram};
use crate::error::{Error, Result};
use crate::knitting::knit;
use crate::linalg::{eval_rational, linear_form, Covector};

pub const REPORT_FILE: &str = "report.json";
pub const DOT_FILE: &str = "skeleton.dot";
pub const SVG_FILE: &str = "chambers.svg";

/// Random generic points tested for coverage.
pub const COVERAGE_SAMPLES: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub input: InputEcho,
    pub exchanges: Vec<ExchangeRow>,
    pub walls: Vec<WallRow>,
    pub chambers: Vec<ChamberRow>,
    pub skeleton: Vec<EdgeRow>,
    pub counts: Counts,
    pub bounds: BoundsRow,
    pub config_classes: Vec<ClassRow>,
    pub automorphism_classes: usize,
    pub oracle: Option<OracleComparison>,
    pub coverage: Coverage,
    pub files: Files,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    pub diagram: String,
    pub retained: Vec<String>,
    pub vertices: Vec<usize>,
    pub labels: Vec<String>,
    pub deltas: Vec<u32>,
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExchangeRow {
    /// 1-based.
    pub slot: usize,
    pub pivot: String,
    /// Multiplicity of each summand in the approximation, zeros omitted.
    pub b: BTreeMap<String, u32>,
    pub new_vertex: String,
    pub configuration_changing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallRow {
    pub covector: Covector,
    pub form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityRow {
    pub covector: Covector,
    pub sign: i8,
    pub form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberRow {
    pub index: usize,
    /// Mutation word, 1-based slots, applied left to right.
    pub word: Vec<usize>,
    /// Vertex label in each slot.
    pub slots: Vec<String>,
    pub inequalities: Vec<InequalityRow>,
    pub dual_graph: GraphRow,
    #[serde(with = "crate::rational::vec")]
    pub interior_point: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRow {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRow {
    pub a: usize,
    pub b: usize,
    pub wall: Covector,
    /// 1-based mutation slot crossing this wall from `a`.
    pub slot: Option<usize>,
    pub configuration_changing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counts {
    pub chambers: usize,
    pub walls: usize,
    pub skeleton_edges: usize,
    pub config_classes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsRow {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassRow {
    pub vertices: Vec<String>,
    pub dual_graph: GraphRow,
    pub chambers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coverage {
    pub seed: u64,
    pub samples: usize,
    /// Samples landing in exactly one chamber.
    pub covered: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Files {
    pub report: String,
    pub dot: Option<String>,
    pub svg: Option<String>,
    pub svg_notice: Option<String>,
}

/// Everything `run_report` writes, before it touches the disk.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub report: Report,
    pub json: String,
    pub dot: Option<String>,
    pub svg: Option<String>,
}

fn graph_row(d: &DynkinDiagram, g: &DualGraph) -> GraphRow {
    GraphRow {
        vertices: g.vertices.iter().map(|&v| d.label(v).to_string()).collect(),
        edges: g
            .edges
            .iter()
            .map(|&(a, b)| (d.label(a).to_string(), d.label(b).to_string()))
            .collect(),
    }
}

/// Exact random points in `[-1000, 1000]^r` off every wall, each checked to
/// lie in exactly one chamber.
pub fn coverage(structure: &ChamberStructure, seed: u64, samples: usize) -> Coverage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = structure.dim();
    let mut covered = 0;
    let mut drawn = 0;
    while drawn < samples {
        let point: Vec<BigRational> = (0..r)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-1000i64..=1000))))
            .collect();
        if structure
            .walls
            .iter()
            .any(|w| num_traits::Zero::is_zero(&eval_rational(w.coeffs(), &point)))
        {
            continue;
        }
        drawn += 1;
        if structure.chambers.iter().filter(|c| c.contains(&point)).count() == 1 {
            covered += 1;
        }
    }
    Coverage {
        seed,
        samples,
        covered,
    }
}

pub fn build_report(spec: &ProblemSpec) -> Result<Artifacts> {
    let config = spec.configuration();
    let d = config.diagram();
    let label = |v: usize| d.label(v).to_string();

    let mut exchanges = Vec::with_capacity(config.len());
    for slot in 0..config.len() {
        let x = knit(&config, slot)?;
        exchanges.push(ExchangeRow {
            slot: slot + 1,
            pivot: label(x.pivot_vertex),
            b: x
                .b
                .iter()
                .filter(|(_, &m)| m > 0)
                .map(|(&v, &m)| (label(v), m))
                .collect(),
            new_vertex: label(x.new_vertex),
            configuration_changing: x.changes_configuration(),
        });
    }

    let structure = enumerate_chambers_with(
        &config,
        EnumerateOptions {
            oracle: spec.options.oracle,
        },
    )?;
    let cov = coverage(&structure, spec.options.seed, COVERAGE_SAMPLES);
    if cov.covered != cov.samples {
        return Err(Error::Consistency(format!(
            "{} of {} generic points are not in exactly one chamber",
            cov.samples - cov.covered,
            cov.samples
        )));
    }

    let chambers: Vec<ChamberRow> = structure
        .chambers
        .iter()
        .enumerate()
        .map(|(index, c)| ChamberRow {
            index,
            word: c.word.iter().map(|s| s + 1).collect(),
            slots: c.slots.iter().map(|&v| label(v)).collect(),
            inequalities: c
                .inequalities
                .iter()
                .map(|q| InequalityRow {
                    covector: q.covector.clone(),
                    sign: q.sign,
                    form: format!(
                        "{} {} 0",
                        linear_form(q.covector.coeffs()),
                        if q.sign > 0 { ">" } else { "<" }
                    ),
                })
                .collect(),
            dual_graph: graph_row(d, &c.dual_graph),
            interior_point: c.interior_point.clone(),
        })
        .collect();

    let (dot, svg, svg_notice) = {
        let dot = spec.options.dot.then(|| skeleton_dot(&structure));
        let (svg, notice) = if !spec.options.svg {
            (None, None)
        } else if structure.dim() == 2 {
            (Some(wall_fan_svg(&structure)), None)
        } else {
            (
                None,
                Some(format!(
                    "svg skipped: fans are drawn only for 2 retained curves, this configuration has {}",
                    structure.dim()
                )),
            )
        };
        (dot, svg, notice)
    };

    let report = Report {
        input: InputEcho {
            diagram: spec.diagram.to_string(),
            retained: spec.retained_input.iter().map(|r| r.to_string()).collect(),
            vertices: config.slots().to_vec(),
            labels: config.slots().iter().map(|&v| label(v)).collect(),
            deltas: config.slot_deltas(),
            options: spec.options,
        },
        exchanges,
        walls: structure
            .walls
            .iter()
            .map(|w| WallRow {
                covector: w.clone(),
                form: linear_form(w.coeffs()),
            })
            .collect(),
        counts: Counts {
            chambers: chambers.len(),
            walls: structure.walls.len(),
            skeleton_edges: structure.skeleton.len(),
            config_classes: structure.config_classes.len(),
        },
        chambers,
        skeleton: structure
            .skeleton
            .iter()
            .map(|e| EdgeRow {
                a: e.a,
                b: e.b,
                wall: e.wall.clone(),
                slot: e.slot.map(|s| s + 1),
                configuration_changing: e.configuration_changing,
            })
            .collect(),
        bounds: BoundsRow {
            lower: structure.bounds.lower,
            upper: structure.bounds.upper,
        },
        config_classes: structure
            .config_classes
            .iter()
            .map(|k| ClassRow {
                vertices: k.vertices.iter().map(|&v| label(v)).collect(),
                dual_graph: graph_row(d, &k.dual_graph),
                chambers: k.chambers,
            })
            .collect(),
        automorphism_classes: structure.automorphism_classes,
        oracle: structure.oracle.clone(),
        coverage: cov,
        files: Files {
            report: REPORT_FILE.into(),
            dot: dot.as_ref().map(|_| DOT_FILE.into()),
            svg: svg.as_ref().map(|_| SVG_FILE.into()),
            svg_notice,
        },
    };
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    Ok(Artifacts { report, json, dot, svg })
}

/// Builds the report and writes `report.json` plus the requested graph
/// files into `out`.
pub fn run_report(spec: &ProblemSpec, out: &Path) -> Result<Artifacts> {
    let artifacts = build_report(spec)?;
    fs::create_dir_all(out).map_err(|e| io_error(out, e))?;
    if let Some(dot) = &artifacts.dot {
        write_atomic(&out.join(DOT_FILE), dot)?;
    }
    if let Some(svg) = &artifacts.svg {
        write_atomic(&out.join(SVG_FILE), svg)?;
    }
    write_atomic(&out.join(REPORT_FILE), &artifacts.json)?;
    Ok(artifacts)
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp: PathBuf = path.with_file_name(format!(".{name}.tmp"));
    let mut f = fs::File::create(&tmp).map_err(|e| io_error(&tmp, e))?;
    f.write_all(contents.as_bytes())
        .and_then(|_| f.sync_all())
        .map_err(|e| io_error(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_error(path, e))
}
