//! Full GIT chamber decomposition by breadth-first search over single-slot
//! mutations, tracking `C_+` of every mutated algebra back to the original
//! coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{count_regions, restricted_walls, sign_vectors, WHITNEY_BUDGET};
use crate::dynkin::{DualGraph, Vertex};
use crate::error::{Error, Result};
use crate::knitting::Configuration;
use crate::linalg::{eval_rational, Covector, IntMatrix};
use crate::mutation::{mutate, MutationState};

/// States allowed per oracle region.
pub const STATE_CAP_FACTOR: usize = 16;

/// State cap used when the oracle is switched off.
pub const UNCHECKED_STATE_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub oracle: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self { oracle: true }
    }
}

/// `sign · (covector · θ) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub covector: Covector,
    pub sign: i8,
}

impl Inequality {
    pub fn signed_coeffs(&self) -> Vec<i64> {
        self.covector
            .coeffs()
            .iter()
            .map(|&c| c * self.sign as i64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Facet inequalities, one per row of the state's inverse chart.
    pub inequalities: Vec<Inequality>,
    /// Vertex in each slot for the mutated algebra whose `C_+` this is.
    pub slots: Vec<Vertex>,
    pub dual_graph: DualGraph,
    /// Shortest (then lexicographically first) mutation word, 0-based slots.
    pub word: Vec<usize>,
    pub interior_point: Vec<BigRational>,
    pub chart: IntMatrix,
    pub inverse: IntMatrix,
}

impl Chamber {
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut v = self.slots.clone();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, theta: &[BigRational]) -> bool {
        self.inequalities
            .iter()
            .all(|q| eval_rational(&q.signed_coeffs(), theta).is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    pub a: usize,
    pub b: usize,
    pub wall: Covector,
    /// 0-based slot whose mutation crosses this wall from `a`, if any.
    pub slot: Option<usize>,
    pub configuration_changing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigClass {
    pub vertices: Vec<Vertex>,
    pub dual_graph: DualGraph,
    pub chambers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    /// Subset-sum count; absent above the subset-sum budget.
    pub whitney_count: Option<u64>,
    pub sign_vector_count: u64,
    pub region_count: u64,
    pub bfs_count: u64,
    pub walls_match: bool,
    pub counts_match: bool,
}

#[derive(Debug, Clone)]
pub struct ChamberStructure {
    pub config: Configuration,
    pub chambers: Vec<Chamber>,
    pub walls: Vec<Covector>,
    pub skeleton: Vec<SkeletonEdge>,
    pub config_classes: Vec<ConfigClass>,
    /// Orbits of the configuration classes under diagram automorphisms fixing 0.
    pub automorphism_classes: usize,
    pub bounds: Bounds,
    pub oracle: Option<OracleComparison>,
}

impl ChamberStructure {
    pub fn dim(&self) -> usize {
        self.config.len()
    }

    /// Index of the chamber containing `theta`, if it avoids every wall.
    pub fn locate(&self, theta: &[BigRational]) -> Option<usize> {
        if self.walls.iter().any(|w| eval_rational(w.coeffs(), theta).is_zero()) {
            return None;
        }
        self.chambers.iter().position(|c| c.contains(theta))
    }

    pub fn neighbors(&self, chamber: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .skeleton
            .iter()
            .filter_map(|e| {
                if e.a == chamber {
                    Some(e.b)
                } else if e.b == chamber {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn enumerate_chambers(config: &Configuration) -> Result<ChamberStructure> {
    enumerate_chambers_with(config, EnumerateOptions::default())
}

pub fn enumerate_chambers_with(config: &Configuration, options: EnumerateOptions) -> Result<ChamberStructure> {
    let oracle_input = if options.oracle {
        let arr = restricted_walls(config);
        let whitney = if arr.len() <= WHITNEY_BUDGET {
            Some(count_regions(&arr)?)
        } else {
            None
        };
        let signs = sign_vectors(&arr)?.len() as u64;
        if whitney.is_some_and(|w| w != signs) {
            return Err(Error::Consistency(format!(
                "{config:?}: subset-sum count {} disagrees with {signs} sign vectors",
                whitney.unwrap_or_default()
            )));
        }
        Some((arr, whitney, signs))
    } else {
        None
    };
    let cap = match &oracle_input {
        Some((_, _, count)) => STATE_CAP_FACTOR * (*count as usize),
        None => UNCHECKED_STATE_CAP,
    };

    let (states, mutation_edges) = explore(config, cap)?;
    let chambers = states
        .iter()
        .map(chamber_of)
        .collect::<Result<Vec<_>>>()?;

    let walls: Vec<Covector> = chambers
        .iter()
        .flat_map(|c| c.inequalities.iter().map(|q| q.covector.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let r = config.len();
    for k in 0..r {
        if !walls.contains(&Covector::unit(r, k)) {
            return Err(Error::Consistency(format!("coordinate wall t{} missing", k + 1)));
        }
    }

    let signs = chamber_signs(&chambers, &walls)?;
    let skeleton = skeleton_edges(&chambers, &walls, &signs, &mutation_edges)?;

    let oracle = oracle_input.map(|(arr, whitney, count)| OracleComparison {
        whitney_count: whitney,
        sign_vector_count: count,
        region_count: count,
        bfs_count: chambers.len() as u64,
        walls_match: arr.covectors == walls,
        counts_match: count == chambers.len() as u64,
    });
    if let Some(o) = &oracle {
        if !o.walls_match || !o.counts_match {
            return Err(Error::Consistency(format!(
                "{config:?}: BFS found {} chambers and {} walls, oracle has {} regions (walls match: {})",
                o.bfs_count,
                walls.len(),
                o.region_count,
                o.walls_match
            )));
        }
    }

    let mut structure = ChamberStructure {
        config: config.clone(),
        chambers,
        walls,
        skeleton,
        config_classes: Vec::new(),
        automorphism_classes: 0,
        bounds: Bounds { lower: 0, upper: 0 },
        oracle,
    };
    let (classes, orbits) = enhanced_report(&structure);
    structure.config_classes = classes;
    structure.automorphism_classes = orbits;
    structure.bounds = bounds(&structure);
    Ok(structure)
}

type Key = (Vec<Vertex>, IntMatrix);
type Edge = (usize, usize, usize);

fn explore(config: &Configuration, cap: usize) -> Result<(Vec<MutationState>, Vec<Edge>)> {
    let start = MutationState::initial(config.clone());
    let mut index: HashMap<Key, usize> = HashMap::new();
    index.insert((start.config.slots().to_vec(), start.chart.clone()), 0);
    let mut states = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    while let Some(i) = queue.pop_front() {
        for slot in 0..config.len() {
            let next = mutate(&states[i], slot)?;
            let key = (next.config.slots().to_vec(), next.chart.clone());
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if states.len() >= cap {
                        return Err(Error::Resource(format!(
                            "{config:?}: more than {cap} mutation states"
                        )));
                    }
                    let j = states.len();
                    index.insert(key, j);
                    states.push(next);
                    queue.push_back(j);
                    j
                }
            };
            edges.push((i, j, slot));
        }
    }
    // BFS with ascending slots discovers states in (length, lexicographic) word order
    debug_assert!(states
        .windows(2)
        .all(|w| (w[0].word.len(), &w[0].word) < (w[1].word.len(), &w[1].word)));
    Ok((states, edges))
}

fn chamber_of(state: &MutationState) -> Result<Chamber> {
    let r = state.config.len();
    if !state.chart.is_unimodular() || state.inverse.mul(&state.chart) != IntMatrix::identity(r) {
        return Err(Error::Consistency(format!("chart of word {:?} is not unimodular", state.word)));
    }
    // a unimodular simplicial cone: every row of the inverse is a facet
    let inequalities = state
        .inverse
        .rows()
        .iter()
        .map(|row| {
            let (covector, sign) = Covector::normalize(row).expect("invertible rows are nonzero");
            Inequality {
                covector,
                sign: sign as i8,
            }
        })
        .collect();
    // the sum of the rays
    let interior_point = state
        .chart
        .apply(&vec![1; r])
        .into_iter()
        .map(|x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    Ok(Chamber {
        inequalities,
        slots: state.config.slots().to_vec(),
        dual_graph: state.config.dual_graph(),
        word: state.word.clone(),
        interior_point,
        chart: state.chart.clone(),
        inverse: state.inverse.clone(),
    })
}

/// Sign of every wall on every chamber; fails if a wall slices through a
/// chamber or two chambers coincide.
fn chamber_signs(chambers: &[Chamber], walls: &[Covector]) -> Result<Vec<Vec<i8>>> {
    let mut out = Vec::with_capacity(chambers.len());
    let mut seen: HashMap<Vec<i8>, usize> = HashMap::new();
    for (idx, c) in chambers.iter().enumerate() {
        let r = c.chart.dim();
        let rays: Vec<Vec<i64>> = (0..r).map(|j| c.chart.column(j)).collect();
        let mut signs = Vec::with_capacity(walls.len());
        for w in walls {
            let values: Vec<i64> = rays.iter().map(|ray| w.eval(ray)).collect();
            let pos = values.iter().any(|&v| v > 0);
            let neg = values.iter().any(|&v| v < 0);
            if pos && neg {
                return Err(Error::Consistency(format!(
                    "wall {w} cuts through the chamber of word {:?}",
                    c.word
                )));
            }
            signs.push(if pos { 1 } else { -1 });
        }
        if let Some(prev) = seen.insert(signs.clone(), idx) {
            return Err(Error::Consistency(format!(
                "chambers of words {:?} and {:?} overlap",
                chambers[prev].word, c.word
            )));
        }
        out.push(signs);
    }
    Ok(out)
}

fn skeleton_edges(
    chambers: &[Chamber],
    walls: &[Covector],
    signs: &[Vec<i8>],
    mutation_edges: &[(usize, usize, usize)],
) -> Result<Vec<SkeletonEdge>> {
    let lookup: HashMap<&[i8], usize> = signs.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let via_mutation: BTreeMap<(usize, usize), usize> = mutation_edges
        .iter()
        .filter(|(a, b, _)| a < b)
        .map(|&(a, b, slot)| ((a, b), slot))
        .collect();
    let mut edges = Vec::new();
    for (a, chamber) in chambers.iter().enumerate() {
        let r = chamber.chart.dim();
        for (k, q) in chamber.inequalities.iter().enumerate() {
            let w = walls.binary_search(&q.covector).expect("facet covectors are walls");
            let mut flipped = signs[a].clone();
            flipped[w] = -flipped[w];
            let Some(&b) = lookup.get(flipped.as_slice()) else {
                continue;
            };
            if b < a {
                continue;
            }
            // the facet's relative interior must lie on the boundary of b too
            let facet_point: Vec<i64> = (0..r)
                .filter(|&j| j != k)
                .map(|j| chamber.chart.column(j))
                .fold(vec![0; r], |acc, ray| acc.iter().zip(&ray).map(|(x, y)| x + y).collect());
            if chambers[b].inverse.apply(&facet_point).iter().any(|&v| v < 0) {
                return Err(Error::Consistency(format!(
                    "chambers {a} and {b} differ only across {} but share no facet",
                    q.covector
                )));
            }
            edges.push(SkeletonEdge {
                a,
                b,
                wall: q.covector.clone(),
                slot: via_mutation.get(&(a, b)).copied(),
                configuration_changing: chamber.vertex_set() != chambers[b].vertex_set(),
            });
        }
    }
    edges.sort_by_key(|e| (e.a, e.b));
    Ok(edges)
}

/// Undirected skeleton as adjacency lists.
pub fn skeleton(structure: &ChamberStructure) -> Vec<Vec<usize>> {
    (0..structure.chambers.len())
        .map(|c| structure.neighbors(c))
        .collect()
}

/// Distinct retained-vertex sets across the chambers, with the number of
/// chambers carrying each, plus the number of automorphism orbits among them.
pub fn enhanced_report(structure: &ChamberStructure) -> (Vec<ConfigClass>, usize) {
    let mut classes: BTreeMap<Vec<Vertex>, ConfigClass> = BTreeMap::new();
    for c in &structure.chambers {
        classes
            .entry(c.vertex_set())
            .and_modify(|k| k.chambers += 1)
            .or_insert_with(|| ConfigClass {
                vertices: c.vertex_set(),
                dual_graph: c.dual_graph.clone(),
                chambers: 1,
            });
    }
    let autos = structure.config.diagram().automorphisms();
    let mut orbits: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    for set in classes.keys() {
        let canonical = autos
            .iter()
            .map(|p| {
                let mut img: Vec<Vertex> = set.iter().map(|&v| p[v]).collect();
                img.sort_unstable();
                img
            })
            .min()
            .expect("identity automorphism present");
        orbits.insert(canonical);
    }
    (classes.into_values().collect(), orbits.len())
}

pub fn bounds(structure: &ChamberStructure) -> Bounds {
    Bounds {
        lower: structure.config_classes.len(),
        upper: structure.chambers.len(),
    }
}
