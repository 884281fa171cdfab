//! Affine ADE Dynkin diagrams with their canonical labeling, multiplicities
//! and the positive roots of the underlying finite root system.
//!
//! Canonical labeling (vertex 0 is always the extending vertex):
//!
//! * `A_n`: path `1 - 2 - ... - n`, vertex 0 joined to 1 and n. For `A_1`
//!   the single edge `0 = 1` has multiplicity 2.
//! * `D_n`: vertex 1 (`f1`) and vertex 0 hang off `h2`, the chain
//!   `h2 - ... - h{n-2}` occupies vertices `2..=n-2`, and `f2 = n-1`,
//!   `f3 = n` hang off `h{n-2}`.
//! * `E_6`: chain `1 - 2 - 3 - 4 - 5`, branch 6 on 3, vertex 0 on 6.
//! * `E_7`: chain `1 - ... - 6` starting next to vertex 0, branch 7 on 3.
//! * `E_8`: chain `1 - ... - 7` starting next to vertex 0, branch 8 on 5.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a diagram vertex; 0 is the extending vertex.
pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every type with rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<DynkinType> {
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            out.push(DynkinType { family: Family::A, rank });
        }
        for rank in 4..=max_rank {
            out.push(DynkinType { family: Family::D, rank });
        }
        for rank in 6..=max_rank.min(8) {
            out.push(DynkinType { family: Family::E, rank });
        }
        out
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest
            .parse::<usize>()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An affine ADE diagram (the McKay quiver with arrows forgotten).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    ty: DynkinType,
    labels: Vec<String>,
    adjacency: Vec<Vec<u32>>,
    delta: Vec<u32>,
}

impl DynkinDiagram {
    pub fn build(ty: DynkinType) -> Self {
        let n = ty.rank;
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        let labels: Vec<String>;
        let delta: Vec<u32>;
        match ty.family {
            Family::A => {
                labels = (0..=n).map(|v| v.to_string()).collect();
                delta = vec![1; n + 1];
                for v in 0..n {
                    edges.push((v, v + 1));
                }
                // closes the cycle; for n = 1 this doubles the edge 0 - 1
                edges.push((n, 0));
            }
            Family::D => {
                let mut l = vec!["0".to_string(), "f1".to_string()];
                for h in 2..=n - 2 {
                    l.push(format!("h{h}"));
                }
                l.push("f2".to_string());
                l.push("f3".to_string());
                labels = l;
                let mut d = vec![1u32; n + 1];
                for v in d.iter_mut().take(n - 1).skip(2) {
                    *v = 2;
                }
                delta = d;
                edges.push((0, 2));
                edges.push((1, 2));
                for h in 2..n - 2 {
                    edges.push((h, h + 1));
                }
                edges.push((n - 2, n - 1));
                edges.push((n - 2, n));
            }
            Family::E => {
                labels = (0..=n).map(|v| v.to_string()).collect();
                match n {
                    6 => {
                        delta = vec![1, 1, 2, 3, 2, 1, 2];
                        edges.extend([(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 0)]);
                    }
                    7 => {
                        delta = vec![1, 2, 3, 4, 3, 2, 1, 2];
                        edges.extend([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)]);
                    }
                    _ => {
                        delta = vec![1, 2, 3, 4, 5, 6, 4, 2, 3];
                        edges.extend([
                            (0, 1),
                            (1, 2),
                            (2, 3),
                            (3, 4),
                            (4, 5),
                            (5, 6),
                            (6, 7),
                            (5, 8),
                        ]);
                    }
                }
            }
        }
        let mut adjacency = vec![vec![0u32; n + 1]; n + 1];
        for (a, b) in edges {
            adjacency[a][b] += 1;
            adjacency[b][a] += 1;
        }
        Self {
            ty,
            labels,
            adjacency,
            delta,
        }
    }

    pub fn ty(&self) -> DynkinType {
        self.ty
    }

    /// Number of vertices including the extending vertex.
    pub fn vertex_count(&self) -> usize {
        self.delta.len()
    }

    /// Number of non-extended vertices.
    pub fn rank(&self) -> usize {
        self.delta.len() - 1
    }

    pub fn delta(&self, v: Vertex) -> u32 {
        self.delta[v]
    }

    pub fn deltas(&self) -> &[u32] {
        &self.delta
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn edge_multiplicity(&self, a: Vertex, b: Vertex) -> u32 {
        self.adjacency[a][b]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.adjacency[v]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(w, &m)| (w, m))
    }

    /// Looks up a vertex by canonical label or by its decimal index.
    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        if let Some(v) = self.labels.iter().position(|l| l == label) {
            return Some(v);
        }
        label.parse::<usize>().ok().filter(|&v| v < self.vertex_count())
    }

    /// Cartan matrix of the finite diagram, indexed by `v - 1`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| if i == j { 2 } else { -(self.adjacency[i][j] as i64) })
                    .collect()
            })
            .collect()
    }

    /// Vertex permutations preserving all edge multiplicities and fixing 0.
    /// The identity is always first.
    pub fn automorphisms(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        perm[0] = 0;
        used[0] = true;
        self.extend_automorphism(1, &mut perm, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend_automorphism(
        &self,
        v: Vertex,
        perm: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let n = self.vertex_count();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for image in 1..n {
            if used[image] || self.delta[image] != self.delta[v] {
                continue;
            }
            let consistent =
                (0..v).all(|u| self.adjacency[u][v] == self.adjacency[perm[u]][image]);
            if !consistent {
                continue;
            }
            perm[v] = image;
            used[image] = true;
            self.extend_automorphism(v + 1, perm, used, out);
            used[image] = false;
            perm[v] = usize::MAX;
        }
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "affine {} ({} vertices, 0 = extending vertex)", self.ty, self.vertex_count())?;
        writeln!(f, "vertex  label  delta  neighbours")?;
        for v in 0..self.vertex_count() {
            let nbrs: Vec<String> = self
                .neighbors(v)
                .map(|(w, m)| {
                    if m > 1 {
                        format!("{}(x{m})", self.labels[w])
                    } else {
                        self.labels[w].clone()
                    }
                })
                .collect();
            writeln!(
                f,
                "{:>6}  {:<5}  {:>5}  {}",
                v,
                self.labels[v],
                self.delta[v],
                nbrs.join(", ")
            )?;
        }
        for a in 0..self.vertex_count() {
            for b in a + 1..self.vertex_count() {
                if self.adjacency[a][b] > 1 {
                    writeln!(
                        f,
                        "note: double edge {} = {} (multiplicity {})",
                        self.labels[a], self.labels[b], self.adjacency[a][b]
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// A positive root in the simple-root basis; entry `k` is the coefficient
/// of the simple root at vertex `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<u32>);

impl RootVector {
    pub fn coefficient(&self, v: Vertex) -> u32 {
        assert!(v >= 1, "the extending vertex has no simple root");
        self.0[v - 1]
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All positive roots of the finite root system, by reflection closure
/// from the simple roots. Sorted by height, then lexicographically.
pub fn positive_roots(ty: DynkinType) -> Vec<RootVector> {
    let diagram = DynkinDiagram::build(ty);
    let cartan = diagram.cartan_matrix();
    let n = diagram.rank();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(root) = queue.pop_front() {
        for i in 0..n {
            // <root, alpha_i> via the symmetric Cartan form
            let pairing: i64 = (0..n).map(|j| root[j] * cartan[j][i]).sum();
            if pairing == 0 {
                continue;
            }
            let mut image = root.clone();
            image[i] -= pairing;
            if image.iter().all(|&c| c >= 0) && image.iter().any(|&c| c > 0) && seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut roots: Vec<RootVector> = seen
        .into_iter()
        .map(|r| RootVector(r.into_iter().map(|c| c as u32).collect()))
        .collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    roots
}

/// Dual graph of a partial resolution: the finite-diagram edges among the
/// retained vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl DualGraph {
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let ia = self.vertices.iter().position(|&v| v == a).unwrap();
            let ib = self.vertices.iter().position(|&v| v == b).unwrap();
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            parent[ra] = rb;
        }
        (0..self.vertices.len())
            .filter(|&i| find(&mut parent, i) == i)
            .count()
    }
}

pub fn induced_dual_graph(diagram: &DynkinDiagram, retained: &[Vertex]) -> Result<DualGraph> {
    let mut set = BTreeSet::new();
    for &v in retained {
        if v == 0 {
            return Err(Error::Argument(
                "the extending vertex 0 cannot be a retained curve".into(),
            ));
        }
        if v >= diagram.vertex_count() {
            return Err(Error::Argument(format!(
                "vertex {v} is not in affine {}",
                diagram.ty()
            )));
        }
        set.insert(v);
    }
    let vertices: Vec<Vertex> = set.into_iter().collect();
    let mut edges = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if diagram.edge_multiplicity(a, b) > 0 {
                edges.push((a, b));
            }
        }
    }
    Ok(DualGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    #[test]
    fn a1_has_a_double_edge() {
        let d = DynkinDiagram::build(ty("A1"));
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_multiplicity(0, 1), 2);
        assert_eq!(d.deltas(), &[1, 1]);
    }

    #[test]
    fn d5_shape_matches_two_forks() {
        let d = DynkinDiagram::build(ty("D5"));
        assert_eq!(d.deltas(), &[1, 1, 2, 2, 1, 1]);
        let nb = |v| d.neighbors(v).map(|(w, _)| w).collect::<Vec<_>>();
        assert_eq!(nb(2), vec![0, 1, 3]);
        assert_eq!(nb(3), vec![2, 4, 5]);
        assert_eq!(d.label(3), "h3");
    }

    #[test]
    fn e7_multiplicities() {
        let d = DynkinDiagram::build(ty("E7"));
        assert_eq!(d.deltas(), &[1, 2, 3, 4, 3, 2, 1, 2]);
        assert_eq!(d.edge_multiplicity(3, 7), 1);
    }

    #[test]
    fn invalid_ranks_rejected() {
        for bad in ["A0", "D3", "E5", "E9", "F4", "D", ""] {
            assert!(bad.parse::<DynkinType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn null_vector_identity_and_tree() {
        for t in DynkinType::all_up_to(9) {
            let d = DynkinDiagram::build(t);
            assert_eq!(d.delta(0), 1);
            for v in 1..d.vertex_count() {
                let s: u32 = d.neighbors(v).map(|(w, m)| m * d.delta(w)).sum();
                assert_eq!(2 * d.delta(v), s, "{t} vertex {v}");
            }
            for a in 0..d.vertex_count() {
                for b in 0..d.vertex_count() {
                    assert_eq!(d.edge_multiplicity(a, b), d.edge_multiplicity(b, a));
                }
            }
            let all: Vec<Vertex> = (1..d.vertex_count()).collect();
            let g = induced_dual_graph(&d, &all).unwrap();
            assert_eq!(g.edges.len(), g.vertices.len() - 1, "{t}");
            assert_eq!(g.component_count(), 1, "{t}");
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(
            positive_roots(ty("A2")),
            vec![RootVector(vec![0, 1]), RootVector(vec![1, 0]), RootVector(vec![1, 1])]
        );
        assert_eq!(positive_roots(ty("D4")).len(), 12);
        assert_eq!(positive_roots(ty("E6")).len(), 36);
        assert_eq!(positive_roots(ty("E7")).len(), 63);
        assert_eq!(positive_roots(ty("E8")).len(), 120);
    }

    #[test]
    fn highest_root_is_delta() {
        for t in DynkinType::all_up_to(8) {
            let d = DynkinDiagram::build(t);
            let top = positive_roots(t).pop().unwrap();
            let delta: Vec<u32> = d.deltas()[1..].to_vec();
            assert_eq!(top.0, delta, "{t}");
        }
    }

    #[test]
    fn dual_graph_examples() {
        let d4 = DynkinDiagram::build(ty("D4"));
        let g = induced_dual_graph(&d4, &[1, 3, 4]).unwrap();
        assert!(g.edges.is_empty());
        let e7 = DynkinDiagram::build(ty("E7"));
        let g = induced_dual_graph(&e7, &[5, 3]).unwrap();
        assert_eq!(g.vertices, vec![3, 5]);
        assert!(g.edges.is_empty());
        assert!(induced_dual_graph(&d4, &[0, 1]).is_err());
        assert!(induced_dual_graph(&d4, &[5]).is_err());
    }

    #[test]
    fn automorphism_groups() {
        let count = |s| DynkinDiagram::build(ty(s)).automorphisms().len();
        assert_eq!(count("D4"), 6);
        assert_eq!(count("D5"), 2);
        assert_eq!(count("E6"), 2);
        assert_eq!(count("E7"), 1);
        assert_eq!(count("E8"), 1);
        assert_eq!(count("A3"), 2);
        assert_eq!(count("A1"), 1);
    }
}
