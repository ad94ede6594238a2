//! Exact higher gonality by exhaustive search, and the upper bound coming
//! from distance-r independent sets.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::divisor::{Divisor, Reducer};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};

/// Largest graph the independence search handles (one bit per vertex).
pub const MAX_INDEPENDENCE_VERTICES: usize = 128;

/// Candidates evaluated per parallel batch. Batches run in lexicographic
/// order, so the first batch holding a witness yields the global minimum.
const BATCH: usize = 2048;

/// A maximum set of vertices with pairwise distance greater than `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub r: u32,
    pub alpha: usize,
    /// Lexicographically smallest among the maximum sets.
    pub witness: VertexSet,
}

/// `α_r(G)`: exact branch and bound over the "distance at most r" conflict
/// graph, including the lowest candidate vertex first.
pub fn alpha_r(g: &Multigraph, r: u32) -> Result<IndependenceReport> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let n = g.vertex_count();
    if n > MAX_INDEPENDENCE_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_INDEPENDENCE_VERTICES,
        });
    }
    let dist = g.distances();
    let conflict: Vec<u128> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && dist[u][v] <= r as usize)
                .fold(0u128, |acc, v| acc | (1u128 << v))
        })
        .collect();
    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let mut best = Vec::new();
    let mut current = Vec::new();
    max_independent(&conflict, all, &mut current, &mut best);
    Ok(IndependenceReport {
        r,
        alpha: best.len(),
        witness: VertexSet::from_unchecked(best),
    })
}

fn max_independent(conflict: &[u128], cand: u128, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cand == 0 {
        if current.len() > best.len() {
            best.clone_from(current);
        }
        return;
    }
    if current.len() + cand.count_ones() as usize <= best.len() {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let bit = 1u128 << v;
    current.push(v);
    max_independent(conflict, cand & !bit & !conflict[v], current, best);
    current.pop();
    max_independent(conflict, cand & !bit, current, best);
}

/// Whether every pair in `set` is at distance greater than `r`.
pub fn is_r_independent(g: &Multigraph, set: &VertexSet, r: u32) -> bool {
    set.iter().all(|u| {
        let d = g.distances_from(u);
        set.iter().all(|v| u == v || d[v] > r as usize)
    })
}

/// Knobs for the exhaustive searches.
#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Wall-clock limit; `None` searches to completion.
    pub budget: Option<Duration>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// First degree to try instead of `r`. When it already admits a witness
    /// the search walks downward until a degree is exhausted, so the hint
    /// never affects correctness.
    pub start_degree: Option<u32>,
}

/// Outcome of an exhaustive gonality search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub r: u32,
    pub multiplicity_free: bool,
    /// `None` when the budget ran out before a proof was complete.
    pub minimum_degree: Option<u32>,
    /// Rank at least `r` and minimum degree; the first such divisor when
    /// candidates are listed as sorted vertex multisets in lexicographic
    /// order.
    pub witness: Option<Divisor>,
    /// `(degree, candidates)` for every degree searched exhaustively without
    /// a witness. Since adding a chip never lowers rank, exhausting degree
    /// `minimum_degree - 1` alone proves minimality.
    pub degrees_exhausted: Vec<(u32, u64)>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
    pub budget_exceeded: bool,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

/// Exact `gon_r(G)`, the minimum degree of a divisor of rank at least `r`.
pub fn gonality(g: &Multigraph, r: u32, opts: &SearchOptions) -> Result<SearchReport> {
    search(g, r, false, opts)
}

/// Exact minimum degree of a multiplicity-free divisor (at most one chip per
/// vertex) of rank at least `r`.
pub fn mf_gonality(g: &Multigraph, r: u32, opts: &SearchOptions) -> Result<SearchReport> {
    search(g, r, true, opts)
}

enum Level {
    Witness(Vec<usize>),
    Exhausted(u64),
    OutOfTime,
}

fn search(g: &Multigraph, r: u32, mf: bool, opts: &SearchOptions) -> Result<SearchReport> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if opts.threads == Some(0) {
        return Err(Error::InvalidParameter(
            "thread count must be at least 1".into(),
        ));
    }
    let run = || search_levels(g, r, mf, opts);
    match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn search_levels(g: &Multigraph, r: u32, mf: bool, opts: &SearchOptions) -> Result<SearchReport> {
    let started = Instant::now();
    let deadline = opts.budget.map(|b| started + b);
    let n = g.vertex_count() as u32;
    // Any rank-r divisor has degree >= r; r chips everywhere always works,
    // and for the multiplicity-free case the all-ones divisor is the top.
    let floor = r;
    let ceiling = if mf { n } else { r * n };
    let start = opts
        .start_degree
        .unwrap_or(floor)
        .clamp(floor, ceiling.max(floor));

    let mut exhausted = Vec::new();
    let report = |min: Option<(u32, Vec<usize>)>, exhausted: Vec<(u32, u64)>, over: bool| {
        let mut exhausted = exhausted;
        exhausted.sort_unstable();
        let (minimum_degree, witness) = match min {
            Some((d, w)) => (Some(d), Some(to_divisor(g.vertex_count(), mf, &w))),
            None => (None, None),
        };
        SearchReport {
            r,
            multiplicity_free: mf,
            minimum_degree,
            witness,
            degrees_exhausted: exhausted,
            elapsed: started.elapsed(),
            budget_exceeded: over,
        }
    };

    let mut d = start;
    let mut found = loop {
        if d > ceiling {
            if mf {
                return Err(Error::MfInfeasible {
                    n: g.vertex_count(),
                    r,
                });
            }
            return Err(Error::Invariant(format!(
                "no divisor of degree <= {ceiling} reached rank {r}"
            )));
        }
        match search_level(g, r, d, mf, deadline) {
            Level::Witness(w) => break (d, w),
            Level::Exhausted(count) => exhausted.push((d, count)),
            Level::OutOfTime => return Ok(report(None, exhausted, true)),
        }
        d += 1;
    };

    if found.0 == start {
        let mut d = start;
        while d > floor {
            d -= 1;
            match search_level(g, r, d, mf, deadline) {
                Level::Witness(w) => found = (d, w),
                Level::Exhausted(count) => {
                    exhausted.push((d, count));
                    break;
                }
                Level::OutOfTime => return Ok(report(None, exhausted, true)),
            }
        }
    }
    Ok(report(Some(found), exhausted, false))
}

fn to_divisor(n: usize, mf: bool, vertices: &[usize]) -> Divisor {
    debug_assert!(!mf || vertices.windows(2).all(|w| w[0] < w[1]));
    Divisor::from_multiset(n, vertices)
}

/// Tests every candidate of one degree, in lexicographic order of sorted
/// vertex lists.
fn search_level(g: &Multigraph, r: u32, degree: u32, mf: bool, deadline: Option<Instant>) -> Level {
    let n = g.vertex_count();
    let k = degree as usize;
    let mut candidates: Box<dyn Iterator<Item = Vec<usize>>> = if mf {
        Box::new((0..n).combinations(k))
    } else {
        Box::new((0..n).combinations_with_replacement(k))
    };
    let timed_out = AtomicBool::new(false);
    let mut count = 0u64;
    loop {
        let batch: Vec<Vec<usize>> = candidates.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Level::Exhausted(count);
        }
        count += batch.len() as u64;
        let hit = batch
            .par_iter()
            .map_init(
                || (Reducer::new(g, 0), vec![0i64; n]),
                |(reducer, chips), cand| {
                    if deadline.is_some_and(|t| Instant::now() > t) {
                        timed_out.store(true, Ordering::Relaxed);
                        return false;
                    }
                    chips.fill(0);
                    for &v in cand {
                        chips[v] += 1;
                    }
                    reducer.rank_at_least(chips, r)
                },
            )
            .position_first(|ok| ok);
        if timed_out.load(Ordering::Relaxed) {
            return Level::OutOfTime;
        }
        if let Some(i) = hit {
            return Level::Witness(batch[i].clone());
        }
    }
}

/// Minimum valence at least `r` and girth greater than `r + 1`.
pub fn bound_preconditions(g: &Multigraph, r: u32) -> bool {
    r >= 1 && g.min_valence() >= u64::from(r) && g.girth().exceeds(r + 1)
}

/// Zero chips on a maximum distance-`r` independent set, one chip elsewhere.
/// Under the preconditions this divisor has rank at least `r`; the result is
/// re-checked before it is returned.
pub fn independence_divisor(g: &Multigraph, r: u32) -> Result<Divisor> {
    if !bound_preconditions(g, r) {
        return Err(Error::PreconditionsViolated { r });
    }
    let alpha = alpha_r(g, r)?;
    let n = g.vertex_count();
    let chips = (0..n)
        .map(|v| i64::from(!alpha.witness.contains(v)))
        .collect();
    let d = Divisor::new(chips);
    if !Reducer::new(g, 0).rank_at_least(d.chips(), r) {
        return Err(Error::Invariant(format!(
            "independence divisor {:?} fails rank {r}",
            d.chips()
        )));
    }
    Ok(d)
}

/// `n - α_r(G)`, an upper bound on `gon_r(G)` under the preconditions.
pub fn upper_bound(g: &Multigraph, r: u32) -> Result<u64> {
    if !bound_preconditions(g, r) {
        return Err(Error::PreconditionsViolated { r });
    }
    Ok((g.vertex_count() - alpha_r(g, r)?.alpha) as u64)
}
