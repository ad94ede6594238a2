//! Shared fixtures: an isomorphism-free corpus of small connected simple
//! graphs, plus seeded random instances.

#![allow(dead_code)]

use std::collections::BTreeSet;

use chipfire::{verify_bramble, BrambleCertificate, Divisor, Multigraph, VertexSet};
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

/// Adjacency rows as bitmasks; `n <= 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    pub n: usize,
    pub rows: Vec<u8>,
}

impl SmallGraph {
    pub fn to_multigraph(&self) -> Multigraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.rows[u] >> v & 1 == 1 {
                    edges.push((u, v, 1));
                }
            }
        }
        Multigraph::from_edges(self.n, &edges).expect("corpus graphs are connected")
    }

    fn code_under(&self, pos_of: &[usize]) -> u64 {
        let mut bits = 0u64;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.rows[u] >> v & 1 == 1 {
                    let (a, b) = if pos_of[u] < pos_of[v] {
                        (pos_of[u], pos_of[v])
                    } else {
                        (pos_of[v], pos_of[u])
                    };
                    bits |= 1 << (b * (b - 1) / 2 + a);
                }
            }
        }
        bits
    }

    /// Stable colour refinement with colours ranked by their signatures, so
    /// the resulting ordered partition is isomorphism invariant.
    fn refined_cells(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut colour: Vec<usize> = (0..n).map(|v| self.rows[v].count_ones() as usize).collect();
        let mut classes = 0;
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = (0..n)
                        .filter(|&w| self.rows[v] >> w & 1 == 1)
                        .map(|w| colour[w])
                        .collect();
                    nb.sort_unstable();
                    (colour[v], nb)
                })
                .collect();
            let distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().sorted().dedup().collect();
            colour = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).unwrap())
                .collect();
            if distinct.len() == classes {
                break;
            }
            classes = distinct.len();
        }
        (0..classes)
            .map(|c| (0..n).filter(|&v| colour[v] == c).collect())
            .collect()
    }

    /// Smallest upper-triangle code over all orderings compatible with the
    /// refined partition.
    pub fn canonical_code(&self) -> u64 {
        let cells = self.refined_cells();
        let mut best = u64::MAX;
        let mut pos_of = vec![0usize; self.n];
        let per_cell: Vec<Vec<Vec<usize>>> = cells
            .iter()
            .map(|c| c.iter().copied().permutations(c.len()).collect())
            .collect();
        for choice in per_cell.iter().map(|p| p.iter()).multi_cartesian_product() {
            let mut next = 0;
            for cell in &choice {
                for &v in cell.iter() {
                    pos_of[v] = next;
                    next += 1;
                }
            }
            best = best.min(self.code_under(&pos_of));
        }
        if cells.is_empty() {
            best = 0;
        }
        best
    }

    fn from_code(n: usize, code: u64) -> Self {
        let mut rows = vec![0u8; n];
        for b in 1..n {
            for a in 0..b {
                if code >> (b * (b - 1) / 2 + a) & 1 == 1 {
                    rows[a] |= 1 << b;
                    rows[b] |= 1 << a;
                }
            }
        }
        SmallGraph { n, rows }
    }
}

/// Connected simple graphs on exactly `n` vertices, one per isomorphism
/// class, for every `n` in `1..=max_n`. Grown by attaching a new vertex to
/// each nonempty neighbourhood; every connected graph has a non-cut vertex,
/// so nothing is missed.
pub fn connected_corpus(max_n: usize) -> Vec<Vec<SmallGraph>> {
    assert!((1..=8).contains(&max_n));
    let mut levels = vec![vec![SmallGraph {
        n: 1,
        rows: vec![0],
    }]];
    for n in 2..=max_n {
        let mut codes = BTreeSet::new();
        for g in &levels[n - 2] {
            for nb in 1u16..(1 << (n - 1)) {
                let mut rows = g.rows.clone();
                rows.push(nb as u8);
                for (v, row) in rows.iter_mut().enumerate().take(n - 1) {
                    if nb >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                codes.insert(SmallGraph { n, rows }.canonical_code());
            }
        }
        levels.push(
            codes
                .into_iter()
                .map(|c| SmallGraph::from_code(n, c))
                .collect(),
        );
    }
    levels
}

/// All corpus graphs with `2 <= n <= max_n`, as multigraphs.
pub fn corpus_multigraphs(max_n: usize) -> Vec<Multigraph> {
    connected_corpus(max_n)
        .into_iter()
        .flatten()
        .filter(|g| g.n >= 2)
        .map(|g| g.to_multigraph())
        .collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A connected graph: a random spanning tree plus extra bundles, with
/// multiplicities in `1..=max_mult`.
pub fn random_graph(rng: &mut StdRng, n: usize, density: f64, max_mult: u32) -> Multigraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v, rng.random_range(1..=max_mult)));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !edges.iter().any(|&(a, b, _)| (a, b) == (u, v)) && rng.random_bool(density) {
                edges.push((u, v, rng.random_range(1..=max_mult)));
            }
        }
    }
    Multigraph::from_edges(n, &edges).unwrap()
}

pub fn random_divisor(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> Divisor {
    Divisor::new((0..n).map(|_| rng.random_range(lo..=hi)).collect())
}

pub fn random_script(rng: &mut StdRng, n: usize, span: i64) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-span..=span)).collect()
}

/// A random connected vertex set grown from a random seed vertex.
fn random_connected_set(rng: &mut StdRng, g: &Multigraph) -> VertexSet {
    let n = g.vertex_count();
    let target = rng.random_range(1..=n.min(4));
    let mut set = vec![rng.random_range(0..n)];
    while set.len() < target {
        let mut frontier: Vec<usize> = set
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().map(|&(w, _)| w))
            .filter(|w| !set.contains(w))
            .collect();
        frontier.sort_unstable();
        frontier.dedup();
        match frontier.choose(rng) {
            Some(&w) => set.push(w),
            None => break,
        }
    }
    VertexSet::from_unchecked(set)
}

/// Valid `r`-brambles on random connected graphs with `n <= 8`. Candidate
/// sets are random connected sets kept only when `r`-edge-connected and
/// `r`-touching everything chosen so far.
pub fn bramble_fixtures(seed: u64, count: usize) -> Vec<(Multigraph, BrambleCertificate)> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=8);
        let r = rng.random_range(1..=2);
        let max_mult = if rng.random_bool(0.5) { 1 } else { 3 };
        let g = random_graph(&mut rng, n, 0.4, max_mult);
        let mut sets: Vec<VertexSet> = Vec::new();
        for _ in 0..12 {
            let s = random_connected_set(&mut rng, &g);
            if sets.contains(&s) || !g.is_k_edge_connected(&s, u64::from(r)).unwrap() {
                continue;
            }
            let touches = sets
                .iter()
                .all(|t| !t.is_disjoint(&s) || g.edges_between(t, &s) >= u64::from(r));
            if touches {
                sets.push(s);
            }
        }
        if sets.is_empty() {
            continue;
        }
        let cert = BrambleCertificate { sets, r };
        assert!(verify_bramble(&g, &cert).valid);
        out.push((g, cert));
    }
    out
}
