//! Loop-free connected multigraphs and the structural queries the rest of the
//! engine is built on.
//!
//! Vertices are the indices `0..n`. Edge multiplicities live in a dense
//! symmetric matrix; every workload here has at most a few dozen vertices.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flow::Network;

/// An undirected, connected multigraph without loops.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
    adj: Vec<Vec<(usize, u32)>>,
    valence: Vec<u64>,
}

impl Multigraph {
    /// Builds a graph from `(u, v, multiplicity)` triples.
    ///
    /// A pair may be listed more than once only with the same multiplicity
    /// (either orientation); the listings then describe the same bundle.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut mult = vec![0u32; n * n];
        for &(u, v, m) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if m == 0 {
                return Err(Error::ZeroMultiplicity { u, v });
            }
            let prev = mult[u * n + v];
            if prev != 0 && prev != m {
                return Err(Error::AsymmetricDuplicate {
                    u: u.min(v),
                    v: u.max(v),
                    first: prev,
                    second: m,
                });
            }
            mult[u * n + v] = m;
            mult[v * n + u] = m;
        }
        Self::from_matrix(n, mult)
    }

    /// Builds a graph from a row-major `n * n` multiplicity matrix.
    pub fn from_matrix(n: usize, mult: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if mult.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "matrix has {} entries, expected {}",
                mult.len(),
                n * n
            )));
        }
        for u in 0..n {
            if mult[u * n + u] != 0 {
                return Err(Error::Loop(u));
            }
            for v in (u + 1)..n {
                let (a, b) = (mult[u * n + v], mult[v * n + u]);
                if a != b {
                    return Err(Error::AsymmetricDuplicate {
                        u,
                        v,
                        first: a,
                        second: b,
                    });
                }
            }
        }
        let adj: Vec<Vec<(usize, u32)>> = (0..n)
            .map(|u| {
                (0..n)
                    .filter_map(|v| {
                        let m = mult[u * n + v];
                        (m > 0).then_some((v, m))
                    })
                    .collect()
            })
            .collect();
        let valence = adj
            .iter()
            .map(|row| row.iter().map(|&(_, m)| u64::from(m)).sum())
            .collect();
        let g = Multigraph {
            n,
            mult,
            adj,
            valence,
        };
        if !g.is_connected_subset(&vec![true; n]) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn mult(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    /// Neighbors of `v` with the multiplicity of each connecting bundle.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.adj[v]
    }

    /// Distinct pairs `u < v` with their multiplicity.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&&(v, _)| v > u)
                .map(move |&(v, m)| (u, v, m))
        })
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.valence.iter().sum::<u64>() / 2
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    #[inline]
    pub fn valence(&self, v: usize) -> u64 {
        self.valence[v]
    }

    pub fn min_valence(&self) -> u64 {
        self.valence.iter().copied().min().unwrap_or(0)
    }

    /// Shortest cycle length. A bundle of two or more parallel edges is a
    /// 2-cycle.
    pub fn girth(&self) -> Girth {
        if self.mult.iter().any(|&m| m >= 2) {
            return Girth::Finite(2);
        }
        let mut best: Option<u32> = None;
        let mut dist = vec![u32::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.fill(u32::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adj[u] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best.map_or(Girth::Infinite, Girth::Finite)
    }

    /// Hop distances from `source`; multiplicities are ignored.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distance matrix.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.distances_from(v)).collect()
    }

    /// Laplacian matrix: valences on the diagonal, negated multiplicities
    /// elsewhere.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| {
                (0..self.n)
                    .map(|v| {
                        if u == v {
                            self.valence[u] as i64
                        } else {
                            -i64::from(self.mult(u, v))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Total multiplicity of edges from `v` to the complement of `set`.
    pub fn outdeg(&self, set: &VertexSet, v: usize) -> Result<u64> {
        self.check_vertex(v)?;
        if !set.contains(v) {
            return Err(Error::NotInSet(v));
        }
        let mask = set.mask(self.n);
        Ok(self.outdeg_mask(&mask, v))
    }

    #[inline]
    pub(crate) fn outdeg_mask(&self, mask: &[bool], v: usize) -> u64 {
        self.adj[v]
            .iter()
            .filter(|&&(w, _)| !mask[w])
            .map(|&(_, m)| u64::from(m))
            .sum()
    }

    /// Total multiplicity of edges between the disjoint sets `a` and `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> u64 {
        a.iter()
            .flat_map(|u| b.iter().map(move |v| (u, v)))
            .map(|(u, v)| u64::from(self.mult(u, v)))
            .sum()
    }

    /// Minimum total multiplicity of an edge set whose removal separates every
    /// vertex of `a` from every vertex of `b`.
    pub fn min_cut_between(&self, a: &VertexSet, b: &VertexSet) -> Result<u64> {
        self.min_cut_with_witness(a, b).map(|cut| cut.size)
    }

    /// Like [`Multigraph::min_cut_between`], also returning the cut edges. The
    /// witness is the cut nearest `a` (source side of the final residual graph).
    pub fn min_cut_with_witness(&self, a: &VertexSet, b: &VertexSet) -> Result<Cut> {
        self.check_set(a)?;
        self.check_set(b)?;
        if let Some(v) = a.iter().find(|&v| b.contains(v)) {
            return Err(Error::Overlap(v));
        }
        let (source, sink) = (self.n, self.n + 1);
        let mut net = Network::new(self.n + 2);
        for (u, v, m) in self.edges() {
            net.add_undirected(u, v, u64::from(m));
        }
        for v in a.iter() {
            net.add_arc(source, v, Network::INFINITE);
        }
        for v in b.iter() {
            net.add_arc(v, sink, Network::INFINITE);
        }
        let size = net.max_flow(source, sink);
        let side = net.source_side(source);
        let edges = self
            .edges()
            .filter(|&(u, v, _)| side[u] != side[v])
            .collect();
        Ok(Cut { size, edges })
    }

    /// Global edge connectivity λ(G). A single vertex has no finite cut and
    /// reports `u64::MAX`.
    pub fn edge_connectivity(&self) -> u64 {
        let all = vec![true; self.n];
        self.induced_edge_connectivity(&all)
    }

    /// Whether `G[set]` is a single vertex or is `k`-edge-connected.
    pub fn is_k_edge_connected(&self, set: &VertexSet, k: u64) -> Result<bool> {
        self.check_set(set)?;
        if set.len() == 1 {
            return Ok(true);
        }
        let mask = set.mask(self.n);
        Ok(self.induced_edge_connectivity(&mask) >= k)
    }

    /// Global min cut of the subgraph induced by `mask`: minimum over the
    /// `s`-`t` cuts from a fixed member `s` to every other member `t`.
    fn induced_edge_connectivity(&self, mask: &[bool]) -> u64 {
        let members: Vec<usize> = (0..self.n).filter(|&v| mask[v]).collect();
        if members.len() <= 1 {
            return u64::MAX;
        }
        if !self.is_connected_subset(mask) {
            return 0;
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let mut base = Network::new(members.len());
        for &u in &members {
            for &(v, m) in &self.adj[u] {
                if mask[v] && v > u {
                    base.add_undirected(local[u], local[v], u64::from(m));
                }
            }
        }
        (1..members.len())
            .map(|t| base.clone().max_flow(0, t))
            .min()
            .unwrap_or(u64::MAX)
    }

    /// Whether the vertices flagged in `mask` induce a connected subgraph.
    /// The empty set counts as disconnected.
    pub(crate) fn is_connected_subset(&self, mask: &[bool]) -> bool {
        let Some(start) = (0..self.n).find(|&v| mask[v]) else {
            return false;
        };
        let total = mask.iter().filter(|&&b| b).count();
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(w, _) in &self.adj[u] {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == total
    }

    /// Connected components of `G[set]`, each sorted, ordered by least vertex.
    pub fn components_of(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mask = set.mask(self.n);
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in set.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(w, _) in &self.adj[u] {
                    if mask[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(VertexSet(comp));
        }
        out
    }

    /// Row-major multiplicity matrix of the subgraph induced by `order`, with
    /// row `i` corresponding to `order[i]`.
    pub fn induced_matrix(&self, order: &[usize]) -> Vec<u32> {
        order
            .iter()
            .flat_map(|&u| order.iter().map(move |&v| self.mult(u, v)))
            .collect()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        match set.iter().find(|&v| v >= self.n) {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multigraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Length of a shortest cycle, or `Infinite` for a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    /// `girth > bound`.
    pub fn exceeds(self, bound: u32) -> bool {
        match self {
            Girth::Finite(g) => g > bound,
            Girth::Infinite => true,
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u32(*g),
            Girth::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// A minimum cut between two vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub size: u64,
    /// Cut edge bundles as `(u, v, multiplicity)` with `u < v`.
    pub edges: Vec<(usize, usize, u32)>,
}

/// A set of distinct vertices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Validates membership against a graph on `n` vertices.
    pub fn new(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        if let Some(&last) = v.last() {
            if last >= n {
                return Err(Error::VertexOutOfRange { vertex: last, n });
            }
        }
        Ok(VertexSet(v))
    }

    /// Builds a set without a range check; duplicates are removed.
    pub fn from_unchecked(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.iter().any(|v| other.contains(v))
    }

    /// Membership flags for a graph on `n` vertices.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for v in self.iter() {
            if v < n {
                m[v] = true;
            }
        }
        m
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_unchecked(iter)
    }
}

/// A multiset of vertices: each vertex maps to a positive count.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexMultiset(BTreeMap<usize, u32>);

impl VertexMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a multiset from per-vertex counts; zero entries are dropped.
    pub fn from_counts(counts: &[u32]) -> Self {
        VertexMultiset(
            counts
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                .map(|(v, &c)| (v, c))
                .collect(),
        )
    }

    pub fn insert(&mut self, v: usize, count: u32) {
        if count > 0 {
            *self.0.entry(v).or_insert(0) += count;
        }
    }

    pub fn count(&self, v: usize) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    /// Total size counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.0.values().map(|&c| u64::from(c)).sum()
    }

    /// Size of the multiset intersection with `set`.
    pub fn intersection_size(&self, set: &VertexSet) -> u64 {
        set.iter().map(|v| u64::from(self.count(v))).sum()
    }

    /// `(vertex, count)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    /// Vertices listed with repetition, in ascending order.
    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c as usize))
            .collect()
    }
}

impl Serialize for VertexMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_sorted_vec().serialize(s)
    }
}
