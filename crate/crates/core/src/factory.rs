//! Deterministic generators for the graph families used throughout, and the
//! bipartite extension construction.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

fn param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return Err(param(format!("path needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
    Multigraph::from_edges(n, &edges)
}

/// Cycle on `n` vertices.
pub fn cycle(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(param(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
    Multigraph::from_edges(n, &edges)
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Result<Multigraph> {
    if n < 1 {
        return Err(param("complete graph needs n >= 1"));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v, 1)))
        .collect();
    Multigraph::from_edges(n, &edges)
}

/// `K_{a,b}` with side one `0..a` and side two `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Multigraph> {
    if a < 1 || b < 1 {
        return Err(param(format!(
            "complete bipartite needs both sides >= 1, got {a}, {b}"
        )));
    }
    let edges: Vec<_> = (0..a)
        .flat_map(|u| (0..b).map(move |w| (u, a + w, 1)))
        .collect();
    Multigraph::from_edges(a + b, &edges)
}

/// Crown graph on `two_n` vertices: `K_{n,n}` minus the perfect matching
/// `i <-> n + i`. Side one is `0..n`, side two is `n..2n`.
pub fn crown(two_n: usize) -> Result<Multigraph> {
    if two_n % 2 != 0 || two_n < 6 {
        return Err(param(format!(
            "crown needs an even vertex count >= 6, got {two_n}"
        )));
    }
    let n = two_n / 2;
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j, 1)))
        .collect();
    Multigraph::from_edges(two_n, &edges)
}

/// Path on `n` vertices with `mults[i]` parallel edges between `i` and `i+1`.
pub fn generalized_banana(n: usize, mults: &[u32]) -> Result<Multigraph> {
    if n < 2 {
        return Err(param(format!("banana graph needs n >= 2, got {n}")));
    }
    if mults.len() != n - 1 {
        return Err(param(format!(
            "banana graph on {n} vertices needs {} multiplicities, got {}",
            n - 1,
            mults.len()
        )));
    }
    if mults.contains(&0) {
        return Err(param("banana multiplicities must be positive"));
    }
    let edges: Vec<_> = mults
        .iter()
        .enumerate()
        .map(|(i, &m)| (i, i + 1, m))
        .collect();
    Multigraph::from_edges(n, &edges)
}

/// Side (1 or 2) of every vertex in a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BipartitionLabels(Vec<u8>);

impl BipartitionLabels {
    /// Checks that every label is 1 or 2 and every edge of `g` crosses sides.
    pub fn new(g: &Multigraph, part: Vec<u8>) -> Result<Self> {
        if part.len() != g.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: g.vertex_count(),
                got: part.len(),
            });
        }
        if let Some(bad) = part.iter().find(|&&p| p != 1 && p != 2) {
            return Err(param(format!("side labels must be 1 or 2, got {bad}")));
        }
        if let Some((u, v, _)) = g.edges().find(|&(u, v, _)| part[u] == part[v]) {
            return Err(Error::BadBipartition(u, v));
        }
        Ok(BipartitionLabels(part))
    }

    pub fn side(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// Vertices on `side`, ascending.
    pub fn members(&self, side: u8) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] == side).collect()
    }
}

/// A 2-colouring by breadth-first search with vertex 0 on side 1.
pub fn detect_bipartition(g: &Multigraph) -> Result<BipartitionLabels> {
    let n = g.vertex_count();
    let mut part = vec![0u8; n];
    part[0] = 1;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if part[w] == 0 {
                part[w] = 3 - part[u];
                queue.push_back(w);
            } else if part[w] == part[u] {
                return Err(Error::NotBipartite);
            }
        }
    }
    Ok(BipartitionLabels(part))
}

/// Which block of the extension a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Block {
    B1,
    B2,
    A1,
    A2,
}

/// Role of one extension vertex: its block and the vertex of the input graph
/// it copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Role {
    pub block: Block,
    pub original: usize,
}

/// The extension graph together with the role of each of its vertices.
#[derive(Debug, Clone)]
pub struct Extension {
    pub graph: Multigraph,
    pub roles: Vec<Role>,
}

impl Extension {
    /// Extension vertices of `block`, ordered like their originals.
    pub fn block(&self, block: Block) -> Vec<usize> {
        (0..self.roles.len())
            .filter(|&v| self.roles[v].block == block)
            .collect()
    }
}

/// Bipartite extension of a simple bipartite graph with sides `B1`, `B2`.
///
/// Adds `A1`, a copy of `B2` joined to `B1` as `B2` is, and `A2`, a copy of
/// `B1` joined to `B2` as `B1` is, then joins `A1` and `A2` completely. Each
/// of the induced subgraphs on `B1 ∪ B2`, `A1 ∪ B1` and `A2 ∪ B2` is a copy
/// of the input graph, and the result is bipartite with sides `A1 ∪ B2` and
/// `A2 ∪ B1`.
///
/// Numbering: `B1` in original order, then `B2`, then `A1` (ordered as
/// `B2`), then `A2` (ordered as `B1`).
pub fn bipartite_extension(g: &Multigraph, labels: &BipartitionLabels) -> Result<Extension> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let labels = BipartitionLabels::new(g, labels.as_slice().to_vec())?;
    let b1 = labels.members(1);
    let b2 = labels.members(2);
    if b1.is_empty() || b2.is_empty() {
        return Err(param("both sides of the bipartition must be nonempty"));
    }
    let (s1, s2) = (b1.len(), b2.len());
    let mut roles = Vec::with_capacity(2 * (s1 + s2));
    roles.extend(b1.iter().map(|&v| Role {
        block: Block::B1,
        original: v,
    }));
    roles.extend(b2.iter().map(|&v| Role {
        block: Block::B2,
        original: v,
    }));
    roles.extend(b2.iter().map(|&v| Role {
        block: Block::A1,
        original: v,
    }));
    roles.extend(b1.iter().map(|&v| Role {
        block: Block::A2,
        original: v,
    }));

    let b1_id = |i: usize| i;
    let b2_id = |j: usize| s1 + j;
    let a1_id = |j: usize| s1 + s2 + j;
    let a2_id = |i: usize| s1 + s2 + s2 + i;

    let mut edges = Vec::new();
    for (i, &u) in b1.iter().enumerate() {
        for (j, &w) in b2.iter().enumerate() {
            if g.mult(u, w) > 0 {
                edges.push((b1_id(i), b2_id(j), 1));
                edges.push((a1_id(j), b1_id(i), 1));
                edges.push((a2_id(i), b2_id(j), 1));
            }
            edges.push((a1_id(j), a2_id(i), 1));
        }
    }
    let graph = Multigraph::from_edges(roles.len(), &edges)?;
    Ok(Extension { graph, roles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn standard_families() {
        let c4 = cycle(4).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert!(c4.vertices().all(|v| c4.valence(v) == 2));
        let p2 = path(2).unwrap();
        assert_eq!(p2.edges().collect::<Vec<_>>(), vec![(0, 1, 1)]);
        let k44 = complete_bipartite(4, 4).unwrap();
        assert_eq!(k44.edge_count(), 16);
        assert!(k44.vertices().all(|v| k44.valence(v) == 4));
        assert!(path(1).is_err());
        assert!(cycle(2).is_err());
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn crown_shapes() {
        let c10 = crown(10).unwrap();
        assert_eq!((c10.vertex_count(), c10.edge_count()), (10, 20));
        assert!(c10.vertices().all(|v| c10.valence(v) == 4));
        assert_eq!(c10.girth(), Girth::Finite(4));
        let c6 = crown(6).unwrap();
        assert!(c6.vertices().all(|v| c6.valence(v) == 2));
        assert_eq!(c6.girth(), Girth::Finite(6));
        assert!(crown(7).is_err());
        assert!(crown(4).is_err());
    }

    #[test]
    fn banana_shapes() {
        let b = generalized_banana(3, &[6, 6]).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (3, 12));
        assert_eq!(b.edge_connectivity(), 6);
        assert_eq!(generalized_banana(2, &[1]).unwrap(), path(2).unwrap());
        assert_eq!(
            generalized_banana(3, &[2, 5]).unwrap().edge_connectivity(),
            2
        );
        assert!(generalized_banana(3, &[2]).is_err());
    }

    #[test]
    fn bipartition_detection() {
        let c4 = detect_bipartition(&cycle(4).unwrap()).unwrap();
        assert_eq!(c4.as_slice(), &[1, 2, 1, 2]);
        assert_eq!(
            detect_bipartition(&cycle(3).unwrap()),
            Err(Error::NotBipartite)
        );
        let cr = detect_bipartition(&crown(10).unwrap()).unwrap();
        assert_eq!(cr.members(1), vec![0, 1, 2, 3, 4]);
        assert_eq!(cr.members(2), vec![5, 6, 7, 8, 9]);
    }

    #[test]
    fn extension_counts() {
        let k44 = complete_bipartite(4, 4).unwrap();
        let ext = bipartite_extension(&k44, &detect_bipartition(&k44).unwrap()).unwrap();
        assert_eq!((ext.graph.vertex_count(), ext.graph.edge_count()), (16, 64));

        let cr = crown(10).unwrap();
        let ext = bipartite_extension(&cr, &detect_bipartition(&cr).unwrap()).unwrap();
        assert_eq!((ext.graph.vertex_count(), ext.graph.edge_count()), (20, 85));
        let b: Vec<usize> = (0..10).collect();
        assert_eq!(ext.graph.induced_matrix(&b), cr.induced_matrix(&b));
    }

    #[test]
    fn extension_rejects_bad_input() {
        let tri = cycle(3).unwrap();
        let labels = BipartitionLabels(vec![1, 2, 1]);
        assert!(bipartite_extension(&tri, &labels).is_err());
        let multi = generalized_banana(2, &[2]).unwrap();
        let labels = detect_bipartition(&multi).unwrap();
        assert_eq!(
            bipartite_extension(&multi, &labels).unwrap_err(),
            Error::NotSimple
        );
    }
}
