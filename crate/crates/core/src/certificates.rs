//! Scramble and bramble certificates and the orders that lower-bound higher
//! gonality.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexMultiset, VertexSet};

/// A collection of eggs, each inducing an `r`-edge-connected subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrambleCertificate {
    pub eggs: Vec<VertexSet>,
    pub r: u32,
}

/// A collection of `r`-edge-connected sets that pairwise intersect or are
/// joined by at least `r` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrambleCertificate {
    pub sets: Vec<VertexSet>,
    pub r: u32,
}

impl BrambleCertificate {
    /// The same sets read as an `r`-scramble.
    pub fn as_scramble(&self) -> ScrambleCertificate {
        ScrambleCertificate {
            eggs: self.sets.clone(),
            r: self.r,
        }
    }
}

/// The scramble whose eggs are all singletons.
pub fn vertex_scramble(g: &Multigraph, r: u32) -> ScrambleCertificate {
    ScrambleCertificate {
        eggs: g.vertices().map(VertexSet::singleton).collect(),
        r,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Scramble,
    Bramble,
}

/// On-disk certificate: `{"kind": "scramble"|"bramble", "r": int, "sets": [[int, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub kind: CertificateKind,
    pub r: u32,
    pub sets: Vec<Vec<usize>>,
}

impl CertificateFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }

    /// Range- and duplicate-checked sets for a graph on `n` vertices.
    pub fn checked_sets(&self, n: usize) -> Result<Vec<VertexSet>> {
        if self.r == 0 {
            return Err(Error::InvalidCertificate("r must be at least 1".into()));
        }
        self.sets
            .iter()
            .map(|s| VertexSet::new(n, s.iter().copied()))
            .collect()
    }

    pub fn to_scramble(&self, n: usize) -> Result<ScrambleCertificate> {
        Ok(ScrambleCertificate {
            eggs: self.checked_sets(n)?,
            r: self.r,
        })
    }

    pub fn to_bramble(&self, n: usize) -> Result<BrambleCertificate> {
        Ok(BrambleCertificate {
            sets: self.checked_sets(n)?,
            r: self.r,
        })
    }
}

/// Why a certificate is invalid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoSets,
    ZeroR,
    EmptySet { index: usize },
    OutOfRange { index: usize, vertex: usize },
    NotEdgeConnected { index: usize },
    NotTouching { first: usize, second: usize },
}

/// Validity plus the first violation found, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl Verdict {
    fn from(violation: Option<Violation>) -> Self {
        Verdict {
            valid: violation.is_none(),
            violation,
        }
    }
}

fn check_sets(g: &Multigraph, sets: &[VertexSet], r: u32) -> Option<Violation> {
    if sets.is_empty() {
        return Some(Violation::NoSets);
    }
    if r == 0 {
        return Some(Violation::ZeroR);
    }
    for (index, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return Some(Violation::EmptySet { index });
        }
        if let Some(vertex) = s.iter().find(|&v| v >= g.vertex_count()) {
            return Some(Violation::OutOfRange { index, vertex });
        }
        if !g.is_k_edge_connected(s, u64::from(r)).unwrap_or(false) {
            return Some(Violation::NotEdgeConnected { index });
        }
    }
    None
}

pub fn verify_scramble(g: &Multigraph, cert: &ScrambleCertificate) -> Verdict {
    Verdict::from(check_sets(g, &cert.eggs, cert.r))
}

pub fn verify_bramble(g: &Multigraph, cert: &BrambleCertificate) -> Verdict {
    if let Some(v) = check_sets(g, &cert.sets, cert.r) {
        return Verdict::from(Some(v));
    }
    let r = u64::from(cert.r);
    for (i, a) in cert.sets.iter().enumerate() {
        for (j, b) in cert.sets.iter().enumerate().skip(i + 1) {
            if a.is_disjoint(b) && g.edges_between(a, b) < r {
                return Verdict::from(Some(Violation::NotTouching {
                    first: i,
                    second: j,
                }));
            }
        }
    }
    Verdict::from(None)
}

fn require_valid(verdict: Verdict) -> Result<()> {
    match verdict.violation {
        None => Ok(()),
        Some(v) => Err(Error::InvalidCertificate(format!("{v:?}"))),
    }
}

/// Minimum-size vertex multiset meeting every set at least `r` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hitting {
    pub size: u64,
    /// Lexicographically smallest as a sorted vertex list.
    pub witness: VertexMultiset,
}

/// Smallest egg-cut, or `Infinite` when no two eggs are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EggCut {
    Finite {
        size: u64,
        /// Cut bundles `(u, v, multiplicity)`.
        edges: Vec<(usize, usize, u32)>,
        /// Indices of the two eggs the cut separates.
        eggs: (usize, usize),
    },
    Infinite,
}

impl EggCut {
    pub fn size(&self) -> Option<u64> {
        match self {
            EggCut::Finite { size, .. } => Some(*size),
            EggCut::Infinite => None,
        }
    }
}

impl Serialize for EggCut {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Finite<'a> {
            size: u64,
            edges: &'a [(usize, usize, u32)],
            eggs: [usize; 2],
        }
        match self {
            EggCut::Finite { size, edges, eggs } => Finite {
                size: *size,
                edges,
                eggs: [eggs.0, eggs.1],
            }
            .serialize(s),
            EggCut::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// The scramble order `min(h_r, e)` with both of its parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub h_r: Hitting,
    pub egg_cut: EggCut,
    pub order: u64,
}

pub fn hitting_number_r(g: &Multigraph, cert: &ScrambleCertificate) -> Result<Hitting> {
    require_valid(verify_scramble(g, cert))?;
    Ok(min_r_hitting(
        g.vertex_count(),
        &cert.eggs,
        u64::from(cert.r),
    ))
}

/// Exact branch and bound. Vertices are decided in ascending order, trying
/// the largest useful count first, so the first optimum reached is the
/// lexicographically smallest sorted multiset. The bound packs pairwise
/// disjoint unsatisfied sets greedily over the undecided vertices and sums
/// their remaining demand.
pub(crate) fn min_r_hitting(n: usize, sets: &[VertexSet], r: u64) -> Hitting {
    let mut containing = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for v in s.iter() {
            containing[v].push(i);
        }
    }
    let mut search = HitSearch {
        sets,
        containing,
        deficit: vec![r; sets.len()],
        counts: vec![0; n],
        best: None,
        used: vec![false; n],
    };
    search.descend(0, 0);
    let (size, counts) = search.best.expect("every nonempty set can be hit");
    Hitting {
        size,
        witness: VertexMultiset::from_counts(&counts),
    }
}

struct HitSearch<'a> {
    sets: &'a [VertexSet],
    containing: Vec<Vec<usize>>,
    deficit: Vec<u64>,
    counts: Vec<u32>,
    best: Option<(u64, Vec<u32>)>,
    used: Vec<bool>,
}

impl HitSearch<'_> {
    fn descend(&mut self, v: usize, size: u64) {
        if self.deficit.iter().all(|&d| d == 0) {
            if self.best.as_ref().is_none_or(|(b, _)| size < *b) {
                self.best = Some((size, self.counts.clone()));
            }
            return;
        }
        let n = self.counts.len();
        if v == n {
            return;
        }
        match self.lower_bound(v) {
            None => return,
            Some(lb) => {
                if self.best.as_ref().is_some_and(|(b, _)| size + lb >= *b) {
                    return;
                }
            }
        }
        let cap = self.containing[v]
            .iter()
            .map(|&i| self.deficit[i])
            .max()
            .unwrap_or(0);
        let saved: Vec<u64> = self.containing[v]
            .iter()
            .map(|&i| self.deficit[i])
            .collect();
        for c in (0..=cap).rev() {
            for &i in &self.containing[v] {
                self.deficit[i] = self.deficit[i].saturating_sub(c);
            }
            self.counts[v] = c as u32;
            self.descend(v + 1, size + c);
            for (&i, &d) in self.containing[v].iter().zip(&saved) {
                self.deficit[i] = d;
            }
        }
        self.counts[v] = 0;
    }

    /// `None` if some unsatisfied set has no undecided vertex left.
    fn lower_bound(&mut self, from: usize) -> Option<u64> {
        self.used.fill(false);
        let mut order: Vec<usize> = (0..self.sets.len())
            .filter(|&i| self.deficit[i] > 0)
            .collect();
        order.sort_by_key(|&i| (self.sets[i].iter().filter(|&v| v >= from).count(), i));
        let mut bound = 0;
        for i in order {
            let mut rest = self.sets[i].iter().filter(|&v| v >= from).peekable();
            rest.peek()?;
            if self.sets[i]
                .iter()
                .filter(|&v| v >= from)
                .all(|v| !self.used[v])
            {
                for v in self.sets[i].iter().filter(|&v| v >= from) {
                    self.used[v] = true;
                }
                bound += self.deficit[i];
            }
        }
        Some(bound)
    }
}

/// Minimum over pairs of disjoint eggs of the min cut between them. Eggs are
/// connected, so a minimum cut between two contracted disjoint eggs keeps
/// each egg whole on its side; any egg-cut in turn separates some disjoint
/// pair. Ties go to the lexicographically first pair.
pub fn egg_cut_number(g: &Multigraph, cert: &ScrambleCertificate) -> Result<EggCut> {
    require_valid(verify_scramble(g, cert))?;
    Ok(min_egg_cut(g, &cert.eggs))
}

fn min_egg_cut(g: &Multigraph, eggs: &[VertexSet]) -> EggCut {
    let mut best = EggCut::Infinite;
    for (i, a) in eggs.iter().enumerate() {
        for (j, b) in eggs.iter().enumerate().skip(i + 1) {
            if !a.is_disjoint(b) {
                continue;
            }
            let cut = g
                .min_cut_with_witness(a, b)
                .expect("eggs are nonempty, in range and disjoint");
            if best.size().is_none_or(|s| cut.size < s) {
                best = EggCut::Finite {
                    size: cut.size,
                    edges: cut.edges,
                    eggs: (i, j),
                };
            }
        }
    }
    best
}

pub fn scramble_order(g: &Multigraph, cert: &ScrambleCertificate) -> Result<OrderReport> {
    require_valid(verify_scramble(g, cert))?;
    let h_r = min_r_hitting(g.vertex_count(), &cert.eggs, u64::from(cert.r));
    let egg_cut = min_egg_cut(g, &cert.eggs);
    let order = egg_cut.size().map_or(h_r.size, |e| e.min(h_r.size));
    Ok(OrderReport {
        h_r,
        egg_cut,
        order,
    })
}

/// Order of a valid scramble, a lower bound on `gon_r`.
pub fn certify_lower_bound(g: &Multigraph, cert: &ScrambleCertificate) -> Result<u64> {
    scramble_order(g, cert).map(|rep| rep.order)
}

/// Bramble order: the `r`-hitting number of its sets.
pub fn bramble_order_r(g: &Multigraph, cert: &BrambleCertificate) -> Result<u64> {
    require_valid(verify_bramble(g, cert))?;
    Ok(min_r_hitting(g.vertex_count(), &cert.sets, u64::from(cert.r)).size)
}

/// Bramble order minus `r`, a lower bound on `tw_r(G)`.
pub fn treewidth_r_lower_bound(g: &Multigraph, cert: &BrambleCertificate) -> Result<i64> {
    Ok(bramble_order_r(g, cert)? as i64 - i64::from(cert.r))
}
