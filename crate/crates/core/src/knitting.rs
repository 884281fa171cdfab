//! Knitting on the AR quiver of an ADE surface singularity.
//!
//! The AR quiver is the affine diagram doubled; walking it "to the left"
//! one half-column at a time is the two-term recurrence
//! `x[k+1] = A x̄[k] - x̄[k-1]`, where `A` is the adjacency matrix with edge
//! multiplicities and `x̄` is `x` with the circled entries zeroed. Values
//! landing on circled vertices are tallied into the approximation
//! coefficients. The walk ends when a negative value appears, which must be
//! a single `-1` sitting on the summand that replaces the pivot.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dynkin::{induced_dual_graph, DualGraph, DynkinDiagram, DynkinType, Vertex};
use crate::error::{Error, Result};

/// The retained curves of a partial resolution, in Θ-coordinate order.
#[derive(Clone)]
pub struct Configuration {
    diagram: Arc<DynkinDiagram>,
    slots: Vec<Vertex>,
}

impl Configuration {
    pub fn new(diagram: Arc<DynkinDiagram>, slots: Vec<Vertex>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::Argument("a configuration needs at least one slot".into()));
        }
        for (k, &v) in slots.iter().enumerate() {
            if v == 0 {
                return Err(Error::Argument("the extending vertex 0 cannot occupy a slot".into()));
            }
            if v >= diagram.vertex_count() {
                return Err(Error::Argument(format!(
                    "vertex {v} does not exist in affine {}",
                    diagram.ty()
                )));
            }
            if slots[..k].contains(&v) {
                return Err(Error::Argument(format!("vertex {v} appears twice")));
            }
        }
        Ok(Self { diagram, slots })
    }

    pub fn of_type(ty: DynkinType, slots: Vec<Vertex>) -> Result<Self> {
        Self::new(Arc::new(DynkinDiagram::build(ty)), slots)
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn diagram_arc(&self) -> &Arc<DynkinDiagram> {
        &self.diagram
    }

    pub fn slots(&self) -> &[Vertex] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn vertex(&self, slot: usize) -> Vertex {
        self.slots[slot]
    }

    pub fn slot_of(&self, v: Vertex) -> Option<usize> {
        self.slots.iter().position(|&s| s == v)
    }

    /// δ of the vertex in each slot.
    pub fn slot_deltas(&self) -> Vec<u32> {
        self.slots.iter().map(|&v| self.diagram.delta(v)).collect()
    }

    /// The configuration with the vertex in `slot` replaced.
    pub fn with_vertex(&self, slot: usize, v: Vertex) -> Result<Self> {
        let mut slots = self.slots.clone();
        slots[slot] = v;
        Self::new(self.diagram.clone(), slots)
    }

    /// Retained vertices as a sorted set.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut v = self.slots.clone();
        v.sort_unstable();
        v
    }

    pub fn dual_graph(&self) -> DualGraph {
        induced_dual_graph(&self.diagram, &self.slots).expect("slots validated on construction")
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.slots.len() {
            return Err(Error::Argument(format!(
                "slot {} out of range (configuration has {} slots)",
                slot + 1,
                self.slots.len()
            )));
        }
        Ok(())
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.diagram.ty() == other.diagram.ty() && self.slots == other.slots
    }
}

impl Eq for Configuration {}

impl Hash for Configuration {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.diagram.ty().hash(state);
        self.slots.hash(state);
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.slots.iter().map(|&v| self.diagram.label(v)).collect();
        write!(f, "{}[{}]", self.diagram.ty(), labels.join(","))
    }
}

/// One exchange sequence `0 -> new -> ⊕ M_j^{b_j} -> pivot -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeData {
    pub pivot_slot: usize,
    pub pivot_vertex: Vertex,
    /// Keyed by vertex 0 and every retained vertex other than the pivot.
    pub b: BTreeMap<Vertex, u32>,
    pub new_vertex: Vertex,
}

impl ExchangeData {
    pub fn coefficient(&self, v: Vertex) -> u32 {
        self.b.get(&v).copied().unwrap_or(0)
    }

    /// Coefficients in slot order for `config` (zero at the pivot slot).
    pub fn slot_coefficients(&self, config: &Configuration) -> Vec<u32> {
        config
            .slots()
            .iter()
            .enumerate()
            .map(|(k, &v)| if k == self.pivot_slot { 0 } else { self.coefficient(v) })
            .collect()
    }

    pub fn changes_configuration(&self) -> bool {
        self.new_vertex != self.pivot_vertex
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnitTrace {
    /// Column `k` is `x[k]` before circled entries were zeroed.
    pub columns: Vec<Vec<i64>>,
    /// Circled entries harvested from each column.
    pub harvested: Vec<Vec<(Vertex, i64)>>,
    pub exchange: ExchangeData,
}

pub fn step_cap(diagram: &DynkinDiagram) -> usize {
    let max_delta = diagram.deltas().iter().copied().max().unwrap_or(1) as usize;
    64 * diagram.vertex_count() * max_delta
}

pub fn knit(config: &Configuration, pivot_slot: usize) -> Result<ExchangeData> {
    knit_trace(config, pivot_slot).map(|t| t.exchange)
}

pub fn knit_trace(config: &Configuration, pivot_slot: usize) -> Result<KnitTrace> {
    config.check_slot(pivot_slot)?;
    let diagram = config.diagram();
    let n = diagram.vertex_count();
    let pivot = config.vertex(pivot_slot);
    let mut circled = vec![false; n];
    circled[0] = true;
    for &v in config.slots() {
        if v != pivot {
            circled[v] = true;
        }
    }

    let mut tally: BTreeMap<Vertex, u32> = (0..n).filter(|&v| circled[v]).map(|v| (v, 0)).collect();
    let mut prev = vec![0i64; n];
    let mut cur = vec![0i64; n];
    cur[pivot] = 1;
    let mut columns = vec![cur.clone()];
    let mut harvested = vec![Vec::new()];
    let cap = step_cap(diagram);
    let adjacency = diagram.adjacency();

    for _ in 0..cap {
        let next: Vec<i64> = (0..n)
            .map(|v| {
                let mesh: i64 = (0..n).map(|w| adjacency[v][w] as i64 * cur[w]).sum();
                mesh - prev[v]
            })
            .collect();
        columns.push(next.clone());

        if next.iter().any(|&x| x < 0) {
            let negatives: Vec<Vertex> = (0..n).filter(|&v| next[v] < 0).collect();
            let clean = negatives.len() == 1
                && next[negatives[0]] == -1
                && next.iter().filter(|&&x| x != 0).count() == 1;
            if !clean {
                return Err(Error::Consistency(format!(
                    "knitting {config:?} at slot {} ended in column {next:?}, expected a single -1",
                    pivot_slot + 1
                )));
            }
            let new_vertex = negatives[0];
            if circled[new_vertex] {
                return Err(Error::Consistency(format!(
                    "knitting {config:?} at slot {} ended on circled vertex {new_vertex}",
                    pivot_slot + 1
                )));
            }
            let exchange = ExchangeData {
                pivot_slot,
                pivot_vertex: pivot,
                b: tally,
                new_vertex,
            };
            return Ok(KnitTrace {
                columns,
                harvested,
                exchange,
            });
        }

        let mut zeroed = next;
        let mut picked = Vec::new();
        for v in 0..n {
            if circled[v] && zeroed[v] != 0 {
                picked.push((v, zeroed[v]));
                *tally.get_mut(&v).unwrap() += zeroed[v] as u32;
                zeroed[v] = 0;
            }
        }
        harvested.push(picked);
        prev = std::mem::replace(&mut cur, zeroed);
    }

    let tail: Vec<String> = columns
        .iter()
        .rev()
        .take(4)
        .map(|c| format!("{c:?}"))
        .collect();
    Err(Error::Nontermination {
        cap,
        trace: tail.join(" <- "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(ty: &str, slots: &[Vertex]) -> Configuration {
        Configuration::of_type(ty.parse().unwrap(), slots.to_vec()).unwrap()
    }

    fn b(pairs: &[(Vertex, u32)]) -> BTreeMap<Vertex, u32> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn d5_exchange_sequence() {
        // R = 0, A1 = 1, B1 = 2, B2 = 3, A2 = 4, A3 = 5
        let c = config("D5", &[1, 3]);
        let t = knit_trace(&c, 1).unwrap();
        assert_eq!(t.exchange.b, b(&[(0, 2), (1, 2)]));
        assert_eq!(t.exchange.new_vertex, 3);
        assert_eq!(t.columns[1], vec![0, 0, 1, 0, 1, 1]);
        assert_eq!(t.columns[2], vec![1, 1, 0, 2, 0, 0]);
        assert_eq!(t.harvested[2], vec![(0, 1), (1, 1)]);
        assert_eq!(t.columns.last().unwrap(), &vec![0, 0, 0, -1, 0, 0]);
    }

    #[test]
    fn e7_exchange_sequences() {
        // B2 = 5 in slot 1, D = 3 in slot 2
        let c = config("E7", &[5, 3]);
        let first = knit(&c, 0).unwrap();
        assert_eq!(first.b, b(&[(0, 0), (3, 1)]));
        assert_eq!(first.new_vertex, 5);
        let second = knit(&c, 1).unwrap();
        assert_eq!(second.b, b(&[(0, 2), (5, 3)]));
        assert_eq!(second.new_vertex, 3);
    }

    #[test]
    fn d4_outer_pivot_brings_in_the_hub() {
        let c = config("D4", &[1, 3, 4]);
        let e = knit(&c, 2).unwrap();
        assert_eq!(e.b, b(&[(0, 1), (1, 1), (3, 1)]));
        assert_eq!(e.new_vertex, 2);
        assert!(e.changes_configuration());
    }

    #[test]
    fn full_a3_middle_pivot() {
        let c = config("A3", &[1, 2, 3]);
        let t = knit_trace(&c, 1).unwrap();
        assert_eq!(t.exchange.b, b(&[(0, 0), (1, 1), (3, 1)]));
        assert_eq!(t.exchange.new_vertex, 2);
        assert!(t.columns.len() <= 4);
    }

    #[test]
    fn a1_uses_the_double_edge() {
        let c = config("A1", &[1]);
        let e = knit(&c, 0).unwrap();
        assert_eq!(e.b, b(&[(0, 2)]));
        assert_eq!(e.new_vertex, 1);
    }

    #[test]
    fn bad_slot_is_an_argument_error() {
        let c = config("A2", &[1]);
        assert!(matches!(knit(&c, 3), Err(Error::Argument(_))));
    }

    #[test]
    fn invalid_configurations() {
        let ty: DynkinType = "D4".parse().unwrap();
        assert!(Configuration::of_type(ty, vec![]).is_err());
        assert!(Configuration::of_type(ty, vec![0]).is_err());
        assert!(Configuration::of_type(ty, vec![1, 1]).is_err());
        assert!(Configuration::of_type(ty, vec![7]).is_err());
    }
}
