//! Graphs with two terminals, x,y-paths, edge cuts, and the constructions
//! linking them to covers and selections.

mod reduction;
mod repair;

pub use reduction::{
    build_a_double_prime, build_a_prime, column_vertex, cover_to_cut, cut_to_cover,
    paths_to_selection, row_vertex, selection_to_paths,
};
pub use repair::{paths_cut_incidence, repair_beta_gamma, PathsCutIncidence};

use std::collections::BTreeSet;
use std::collections::VecDeque;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::oracle::{enumerate_paths, OracleBudget};

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

/// A simple undirected graph with distinguished, non-adjacent vertices `x`
/// and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalGraph {
    adjacency: BoolMatrix,
    x: usize,
    y: usize,
}

impl TerminalGraph {
    pub fn new(adjacency: BoolMatrix, x: usize, y: usize) -> Result<Self> {
        let n = adjacency.square_dim()?;
        if x >= n || y >= n || x == y {
            return Err(Error::InvalidGraph(format!(
                "terminals {} and {} must be distinct vertices of a {n}-vertex graph",
                x + 1,
                y + 1
            )));
        }
        for i in 0..n {
            if adjacency.get(i, i) {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", i + 1)));
            }
            for j in i + 1..n {
                if adjacency.get(i, j) != adjacency.get(j, i) {
                    return Err(Error::InvalidGraph(format!(
                        "adjacency is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if adjacency.get(x, y) {
            return Err(Error::InvalidGraph("x and y must not be adjacent".into()));
        }
        Ok(TerminalGraph { adjacency, x, y })
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        x: usize,
        y: usize,
    ) -> Result<Self> {
        let mut adjacency = BoolMatrix::zeros(n, n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) outside {n} vertices",
                    u + 1,
                    v + 1
                )));
            }
            adjacency.set(u, v, true);
            adjacency.set(v, u, true);
        }
        Self::new(adjacency, x, y)
    }

    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn adjacency(&self) -> &BoolMatrix {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adjacency.get(u, v)
    }

    /// Neighbors in increasing order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| self.adjacency.get(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adjacency.get(u, v))
            .map(|(u, v)| Edge(u, v))
            .collect()
    }

    /// Whether `y` is reachable from `x` once `removed` is deleted.
    pub fn connected_without(&self, removed: &EdgeCut) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.x]);
        seen[self.x] = true;
        while let Some(u) = queue.pop_front() {
            if u == self.y {
                return true;
            }
            for v in self.neighbors(u) {
                if !seen[v] && !removed.contains(Edge::new(u, v)) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        false
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
    x: usize,
    y: usize,
}

impl Serialize for TerminalGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self.edges().iter().map(|e| [e.0 + 1, e.1 + 1]).collect(),
            x: self.x + 1,
            y: self.y + 1,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TerminalGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GraphRepr::deserialize(deserializer)?;
        let dec = |v: usize| v.checked_sub(1).ok_or_else(|| D::Error::custom("vertices are 1-based"));
        let edges = repr
            .edges
            .iter()
            .map(|&[u, v]| Ok((dec(u)?, dec(v)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        TerminalGraph::from_edges(repr.n, edges, dec(repr.x)?, dec(repr.y)?).map_err(D::Error::custom)
    }
}

/// A list of x,y-paths, each a vertex sequence from `x` to `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathCollection {
    paths: Vec<Vec<usize>>,
}

impl PathCollection {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        PathCollection { paths }
    }

    /// Builds a collection and checks it against `g`.
    pub fn checked(g: &TerminalGraph, paths: Vec<Vec<usize>>) -> Result<Self> {
        let c = PathCollection { paths };
        c.validate(g)?;
        Ok(c)
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Every member is an x,y-path and members are pairwise internally
    /// disjoint.
    pub fn validate(&self, g: &TerminalGraph) -> Result<()> {
        for (k, p) in self.paths.iter().enumerate() {
            if !is_path(g, p) {
                return Err(Error::InvalidCertificate(format!("member {} is not an x,y-path", k + 1)));
            }
        }
        for (k, p) in self.paths.iter().enumerate() {
            for (l, q) in self.paths.iter().enumerate().skip(k + 1) {
                if !internally_disjoint(p, q) {
                    return Err(Error::InvalidCertificate(format!(
                        "paths {} and {} share an internal vertex",
                        k + 1,
                        l + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.paths.iter().any(|p| path_edges(p).any(|f| f == e))
    }
}

impl Serialize for PathCollection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<Vec<usize>> = self
            .paths
            .iter()
            .map(|p| p.iter().map(|v| v + 1).collect())
            .collect();
        one_based.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PathCollection {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let paths = raw
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|v| v.checked_sub(1).ok_or_else(|| serde::de::Error::custom("vertices are 1-based")))
                    .collect()
            })
            .collect::<std::result::Result<_, D::Error>>()?;
        Ok(PathCollection { paths })
    }
}

/// A set of edges proposed as an x,y-cut.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeCut {
    edges: BTreeSet<Edge>,
}

impl EdgeCut {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        EdgeCut {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub(crate) fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub(crate) fn remove(&mut self, e: Edge) -> bool {
        self.edges.remove(&e)
    }
}

impl Serialize for EdgeCut {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[usize; 2]> = self.edges.iter().map(|e| [e.0 + 1, e.1 + 1]).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EdgeCut {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<[usize; 2]>::deserialize(deserializer)?;
        let mut edges = BTreeSet::new();
        for [u, v] in raw {
            if u == 0 || v == 0 {
                return Err(serde::de::Error::custom("vertices are 1-based"));
            }
            edges.insert(Edge::new(u - 1, v - 1));
        }
        Ok(EdgeCut { edges })
    }
}

/// Consecutive vertex pairs of a sequence, as edges.
pub fn path_edges(seq: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    seq.windows(2).map(|w| Edge::new(w[0], w[1]))
}

/// True iff `seq` runs from `x` to `y` through distinct vertices along edges.
pub fn is_path(g: &TerminalGraph, seq: &[usize]) -> bool {
    if seq.len() < 2 || seq[0] != g.x() || seq[seq.len() - 1] != g.y() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in seq {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// No vertex other than the endpoints is shared.
pub fn internally_disjoint(p: &[usize], q: &[usize]) -> bool {
    let inner = |s: &[usize]| -> Vec<usize> { s[1..s.len().saturating_sub(1)].to_vec() };
    let (a, b) = (inner(p), inner(q));
    !a.iter().any(|v| b.contains(v))
}

/// True iff every listed edge is in `g` and removing them separates `x`
/// from `y`.
pub fn is_cut(g: &TerminalGraph, cut: &EdgeCut) -> bool {
    cut.edges().all(|e| g.has_edge(e.0, e.1)) && !g.connected_without(cut)
}

/// The non-terminal vertices in increasing order; they label the columns
/// of the path matrix.
fn inner_vertices(g: &TerminalGraph) -> Vec<usize> {
    (0..g.n()).filter(|&v| v != g.x() && v != g.y()).collect()
}

/// The `(n-2) x (n-2)` matrix of a path: row `l` marks the `l`-th internal
/// vertex, and the last internal vertex is repeated down to the bottom row.
pub fn encode_path_matrix(g: &TerminalGraph, seq: &[usize]) -> Result<BoolMatrix> {
    if !is_path(g, seq) {
        return Err(Error::InvalidCertificate("not an x,y-path".into()));
    }
    let cols = inner_vertices(g);
    let inner = &seq[1..seq.len() - 1];
    if inner.is_empty() {
        return Err(Error::InvalidCertificate(
            "a path without internal vertices has no matrix encoding".into(),
        ));
    }
    let k = cols.len();
    let mut m = BoolMatrix::zeros(k, k);
    for l in 0..k {
        let v = inner[l.min(inner.len() - 1)];
        let c = cols.binary_search(&v).expect("internal vertices are non-terminals");
        m.set(l, c, true);
    }
    Ok(m)
}

/// Inverse of [`encode_path_matrix`]. Rejects matrices that are not the
/// encoding of some path.
pub fn decode_path_matrix(g: &TerminalGraph, m: &BoolMatrix) -> Result<Vec<usize>> {
    let cols = inner_vertices(g);
    let k = cols.len();
    if m.rows() != k || m.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "path matrix must be {k}x{k}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut seq = vec![g.x()];
    for l in 0..k {
        let ones: Vec<usize> = (0..k).filter(|&c| m.get(l, c)).collect();
        let [c] = ones[..] else {
            return Err(Error::InvalidCertificate(format!(
                "row {} of a path matrix must hold exactly one 1",
                l + 1
            )));
        };
        if seq.last() != Some(&cols[c]) {
            seq.push(cols[c]);
        }
    }
    seq.push(g.y());
    if encode_path_matrix(g, &seq).ok().as_ref() != Some(m) {
        return Err(Error::InvalidCertificate("matrix does not encode an x,y-path".into()));
    }
    Ok(seq)
}

/// True iff every x,y-path shares an edge with at most one other x,y-path.
pub fn is_restricted_pair(g: &TerminalGraph, budget: &OracleBudget) -> Result<bool> {
    let paths = enumerate_paths(g, budget)?;
    let index: Vec<Edge> = g.edges();
    let masks: Vec<u128> = paths
        .iter()
        .map(|p| {
            path_edges(p).fold(0u128, |acc, e| {
                acc | 1u128 << index.binary_search(&e).expect("path edges are graph edges")
            })
        })
        .collect();
    Ok(masks.iter().enumerate().all(|(k, &m)| {
        masks
            .iter()
            .enumerate()
            .filter(|&(l, &o)| l != k && m & o != 0)
            .take(2)
            .count()
            <= 1
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// x=0, y=2, single middle vertex 1, plus an isolated vertex 3.
    fn gadget() -> TerminalGraph {
        TerminalGraph::from_edges(4, [(0, 1), (1, 2)], 0, 2).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(TerminalGraph::from_edges(2, [(0, 1)], 0, 1).is_err());
        assert!(TerminalGraph::from_edges(2, [], 0, 0).is_err());
        let mut asym = BoolMatrix::zeros(3, 3);
        asym.set(0, 1, true);
        assert!(TerminalGraph::new(asym, 0, 2).is_err());
        assert!(TerminalGraph::new(BoolMatrix::identity(3), 0, 2).is_err());
    }

    #[test]
    fn path_examples() {
        let g = gadget();
        assert!(!is_path(&g, &[0, 2]));
        assert!(is_path(&g, &[0, 1, 2]));
        assert!(!is_path(&g, &[0, 1, 0, 1, 2]));
        assert!(!is_path(&g, &[0, 3, 2]));
        assert!(!is_path(&g, &[1, 2]));
    }

    #[test]
    fn padding_repeats_last_row() {
        let g = gadget();
        let m = encode_path_matrix(&g, &[0, 1, 2]).unwrap();
        // Non-terminals are 1 and 3; both rows mark vertex 1.
        assert_eq!(m, BoolMatrix::from_rows(&[[1, 0], [1, 0]]).unwrap());
        assert_eq!(decode_path_matrix(&g, &m).unwrap(), vec![0, 1, 2]);
        let bad = BoolMatrix::from_rows(&[[0, 1], [0, 1]]).unwrap();
        assert!(decode_path_matrix(&g, &bad).is_err());
    }

    #[test]
    fn full_length_path_is_a_permutation() {
        // x=0 - 1 - 2 - 3 - y=4
        let g = TerminalGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)], 0, 4).unwrap();
        let m = encode_path_matrix(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(m, BoolMatrix::identity(3));
        let m = encode_path_matrix(&g, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(decode_path_matrix(&g, &m).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn cuts_and_reachability() {
        let g = gadget();
        assert!(!is_cut(&g, &EdgeCut::default()));
        assert!(is_cut(&g, &EdgeCut::new([Edge::new(1, 2)])));
        assert!(!is_cut(&g, &EdgeCut::new([Edge::new(1, 3)])));
        let empty = TerminalGraph::from_edges(3, [], 0, 2).unwrap();
        assert!(is_cut(&empty, &EdgeCut::default()));
    }

    #[test]
    fn restricted_pair_examples() {
        let b = OracleBudget::default();
        assert!(is_restricted_pair(&gadget(), &b).unwrap());
        // Vertex-disjoint paths 0-1-4 and 0-2-3-4.
        let two = TerminalGraph::from_edges(5, [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)], 0, 4).unwrap();
        assert!(is_restricted_pair(&two, &b).unwrap());
        // Three paths through one shared edge (0,1).
        let fan = TerminalGraph::from_edges(
            6,
            [(0, 1), (1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)],
            0,
            5,
        )
        .unwrap();
        assert!(!is_restricted_pair(&fan, &b).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let g = gadget();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[1,2],[2,3]],"x":1,"y":3}"#);
        assert_eq!(serde_json::from_str::<TerminalGraph>(&s).unwrap(), g);
        let c = EdgeCut::new([Edge::new(2, 1)]);
        assert_eq!(serde_json::to_string(&c).unwrap(), "[[2,3]]");
        let p = PathCollection::new(vec![vec![0, 1, 2]]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,2,3]]");
        assert_eq!(serde_json::from_str::<PathCollection>("[[1,2,3]]").unwrap(), p);
    }

    #[test]
    fn collection_validation() {
        let g = TerminalGraph::from_edges(5, [(0, 1), (1, 4), (0, 2), (2, 4), (1, 2)], 0, 4).unwrap();
        assert!(PathCollection::checked(&g, vec![vec![0, 1, 4], vec![0, 2, 4]]).is_ok());
        assert!(PathCollection::checked(&g, vec![vec![0, 1, 4], vec![0, 2, 1, 4]]).is_err());
        assert!(PathCollection::checked(&g, vec![vec![0, 3, 4]]).is_err());
    }
}
