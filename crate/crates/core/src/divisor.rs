//! Divisors, chip-firing and Baker-Norine rank.
//!
//! Sign conventions: a firing script `f` counts how often each vertex fires,
//! and applying it sends `D` to `D - Δf`, where `Δ` is the Laplacian.

use std::ops::{Index, Sub};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};

/// An integer chip count on every vertex; negative entries are debt.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(chips: Vec<i64>) -> Self {
        Divisor(chips)
    }

    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// One chip on each vertex of `set`, none elsewhere.
    pub fn indicator(n: usize, set: &VertexSet) -> Self {
        let mut d = Self::zero(n);
        for v in set.iter() {
            d.0[v] = 1;
        }
        d
    }

    /// The effective divisor whose multi-support is `vertices`.
    pub fn from_multiset(n: usize, vertices: &[usize]) -> Self {
        let mut d = Self::zero(n);
        for &v in vertices {
            d.0[v] += 1;
        }
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn chips(&self) -> &[i64] {
        &self.0
    }

    pub fn into_chips(self) -> Vec<i64> {
        self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Vertices holding at least one chip.
    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Vertices in debt.
    pub fn debt_support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c < 0)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn add_chips(&mut self, v: usize, k: i64) {
        self.0[v] += k;
    }

    fn check_len(&self, g: &Multigraph) -> Result<()> {
        if self.0.len() == g.vertex_count() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: g.vertex_count(),
                got: self.0.len(),
            })
        }
    }
}

impl Index<usize> for Divisor {
    type Output = i64;

    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl Sub for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// How many times each vertex fires.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FiringScript(Vec<i64>);

impl FiringScript {
    pub fn new(counts: Vec<i64>) -> Self {
        FiringScript(counts)
    }

    pub fn zero(n: usize) -> Self {
        FiringScript(vec![0; n])
    }

    pub fn counts(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// `D - Δ𝟙_U`: every vertex of `set` fires once.
pub fn fire_set(g: &Multigraph, d: &Divisor, set: &VertexSet) -> Result<Divisor> {
    d.check_len(g)?;
    if let Some(v) = set.iter().find(|&v| v >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        });
    }
    let mask = set.mask(g.vertex_count());
    let mut out = d.clone();
    fire_mask_in_place(g, &mut out.0, &mask, 1);
    Ok(out)
}

/// Fires the flagged set `times` times.
fn fire_mask_in_place(g: &Multigraph, chips: &mut [i64], mask: &[bool], times: i64) {
    for v in g.vertices().filter(|&v| mask[v]) {
        for &(w, m) in g.neighbors(v) {
            if !mask[w] {
                let moved = times * i64::from(m);
                chips[v] -= moved;
                chips[w] += moved;
            }
        }
    }
}

/// `D - Δf`.
pub fn apply_script(g: &Multigraph, d: &Divisor, script: &FiringScript) -> Result<Divisor> {
    d.check_len(g)?;
    if script.0.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            got: script.0.len(),
        });
    }
    let f = &script.0;
    let chips = g
        .vertices()
        .map(|v| {
            let lap: i64 = g.valence(v) as i64 * f[v]
                - g.neighbors(v)
                    .iter()
                    .map(|&(w, m)| i64::from(m) * f[w])
                    .sum::<i64>();
            d.0[v] - lap
        })
        .collect();
    Ok(Divisor(chips))
}

/// Result of the burning procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BurnOutcome {
    Found,
    None,
}

/// Outcome of [`mdba`], with the script that was fired and the flammable
/// components seen before the first stabilization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurnReport {
    pub outcome: BurnOutcome,
    /// The effective equivalent divisor, when one was found.
    pub result: Option<Divisor>,
    /// Cumulative script, so that `result = input - Δ script`.
    pub script: FiringScript,
    /// Connected components of the burned region after the first burn
    /// stabilizes. Empty when the input was already effective.
    pub first_pass_components: Vec<VertexSet>,
}

/// Modified Dhar burning. Each round starts from the non-debt vertices and
/// burns away every vertex with fewer chips than edges into the burned
/// region; whatever survives fires. Rounds continue until no debt remains or
/// everything burns.
pub fn mdba(g: &Multigraph, d: &Divisor) -> Result<BurnReport> {
    mdba_with_scan(g, d, ScanOrder::Ascending)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ScanOrder {
    Ascending,
    #[cfg(test)]
    Descending,
}

pub(crate) fn mdba_with_scan(g: &Multigraph, d: &Divisor, order: ScanOrder) -> Result<BurnReport> {
    d.check_len(g)?;
    let n = g.vertex_count();
    let mut chips = d.0.clone();
    let mut script = vec![0i64; n];
    let mut first_pass: Option<Vec<VertexSet>> = None;
    let scan: Vec<usize> = match order {
        ScanOrder::Ascending => (0..n).collect(),
        #[cfg(test)]
        ScanOrder::Descending => (0..n).rev().collect(),
    };
    let mut unburnt = vec![false; n];
    loop {
        if chips.iter().all(|&c| c >= 0) {
            return Ok(BurnReport {
                outcome: BurnOutcome::Found,
                result: Some(Divisor(chips)),
                script: FiringScript(script),
                first_pass_components: first_pass.unwrap_or_default(),
            });
        }
        for v in 0..n {
            unburnt[v] = chips[v] >= 0;
        }
        stabilize(g, &chips, &mut unburnt, &scan);
        if first_pass.is_none() {
            let burned = VertexSet::from_unchecked((0..n).filter(|&v| !unburnt[v]));
            first_pass = Some(g.components_of(&burned));
        }
        if !unburnt.iter().any(|&b| b) {
            return Ok(BurnReport {
                outcome: BurnOutcome::None,
                result: None,
                script: FiringScript(script),
                first_pass_components: first_pass.unwrap_or_default(),
            });
        }
        fire_mask_in_place(g, &mut chips, &unburnt, 1);
        for v in 0..n {
            if unburnt[v] {
                script[v] += 1;
            }
        }
    }
}

/// Removes vertices from `unburnt` while some member holds fewer chips than
/// its edges leaving the set. The fixed point is the unique maximal
/// non-burning subset, so the scan order does not affect it.
fn stabilize(g: &Multigraph, chips: &[i64], unburnt: &mut [bool], scan: &[usize]) {
    loop {
        let mut changed = false;
        for &v in scan {
            if unburnt[v] && chips[v] < g.outdeg_mask(unburnt, v) as i64 {
                unburnt[v] = false;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// The unique `q`-reduced divisor equivalent to `d`, with a script `f`
/// such that `reduced = d - Δf`.
pub fn q_reduce(g: &Multigraph, d: &Divisor, q: usize) -> Result<(Divisor, FiringScript)> {
    d.check_len(g)?;
    g.check_vertex(q)?;
    let mut reducer = Reducer::new(g, q);
    let mut chips = d.0.clone();
    let mut script = vec![0i64; g.vertex_count()];
    reducer.reduce(&mut chips, Some(&mut script));
    Ok((Divisor(chips), FiringScript(script)))
}

/// Whether `d` is equivalent to an effective divisor.
pub fn is_winnable(g: &Multigraph, d: &Divisor) -> Result<bool> {
    d.check_len(g)?;
    Ok(Reducer::new(g, 0).is_winnable(&d.0))
}

/// Baker-Norine rank: `-1` when `d` is not winnable, otherwise the largest
/// `r` such that `d - E` is winnable for every effective `E` of degree `r`.
pub fn rank(g: &Multigraph, d: &Divisor) -> Result<i64> {
    d.check_len(g)?;
    let mut reducer = Reducer::new(g, 0);
    if !reducer.is_winnable(&d.0) {
        return Ok(-1);
    }
    // A winnable divisor has rank at most its degree.
    let mut r = 0u32;
    while reducer.first_failing_debt(&d.0, r + 1).is_none() {
        r += 1;
    }
    Ok(i64::from(r))
}

/// `rank(d) >= r`, stopping at the first debt placement that cannot be paid.
pub fn rank_at_least(g: &Multigraph, d: &Divisor, r: u32) -> Result<bool> {
    Ok(first_failing_debt(g, d, r)?.is_none())
}

/// The lexicographically first effective `E` of degree `r` (as a sorted
/// vertex multiset) for which `d - E` is unwinnable.
pub fn first_failing_debt(g: &Multigraph, d: &Divisor, r: u32) -> Result<Option<Divisor>> {
    d.check_len(g)?;
    let mut reducer = Reducer::new(g, 0);
    Ok(reducer
        .first_failing_debt(&d.0, r)
        .map(|e| Divisor::from_multiset(g.vertex_count(), &e)))
}

/// Reusable scratch space for reducing divisors against a fixed vertex `q`.
pub(crate) struct Reducer<'g> {
    g: &'g Multigraph,
    q: usize,
    /// `levels[k]` holds the vertices at distance `k` from `q`.
    levels: Vec<Vec<usize>>,
    /// Multiplicity of edges from `v` to the previous level.
    gain: Vec<u64>,
    /// Multiplicity of edges from `v` to the next level.
    loss: Vec<u64>,
    work: Vec<i64>,
    burning: Vec<u64>,
    burnt: Vec<bool>,
    stack: Vec<usize>,
}

impl<'g> Reducer<'g> {
    pub fn new(g: &'g Multigraph, q: usize) -> Self {
        let n = g.vertex_count();
        let dist = g.distances_from(q);
        let depth = dist.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); depth + 1];
        for v in 0..n {
            levels[dist[v]].push(v);
        }
        let mut gain = vec![0u64; n];
        let mut loss = vec![0u64; n];
        for v in 0..n {
            for &(w, m) in g.neighbors(v) {
                if dist[w] + 1 == dist[v] {
                    gain[v] += u64::from(m);
                } else if dist[w] == dist[v] + 1 {
                    loss[v] += u64::from(m);
                }
            }
        }
        Reducer {
            g,
            q,
            levels,
            gain,
            loss,
            work: vec![0; n],
            burning: vec![0; n],
            burnt: vec![false; n],
            stack: Vec::with_capacity(n),
        }
    }

    /// Reduces `chips` in place; accumulates the fired script if requested.
    pub fn reduce(&mut self, chips: &mut [i64], mut script: Option<&mut [i64]>) {
        self.clear_debt_off_q(chips, script.as_deref_mut());
        self.dhar(chips, script);
    }

    /// Drives every vertex other than `q` out of debt by firing the balls
    /// around `q`, outermost level first. Firing the ball of radius `k - 1`
    /// only moves chips from level `k - 1` onto level `k`, so a finished outer
    /// level is never disturbed again.
    fn clear_debt_off_q(&mut self, chips: &mut [i64], mut script: Option<&mut [i64]>) {
        for k in (1..self.levels.len()).rev() {
            let times = self.levels[k]
                .iter()
                .filter(|&&v| chips[v] < 0)
                .map(|&v| {
                    let gain = self.gain[v] as i64;
                    (-chips[v] + gain - 1) / gain
                })
                .max()
                .unwrap_or(0);
            if times == 0 {
                continue;
            }
            for &v in &self.levels[k] {
                chips[v] += times * self.gain[v] as i64;
            }
            for &v in &self.levels[k - 1] {
                chips[v] -= times * self.loss[v] as i64;
            }
            if let Some(f) = script.as_deref_mut() {
                for level in &self.levels[..k] {
                    for &v in level {
                        f[v] += times;
                    }
                }
            }
        }
    }

    /// Dhar's burning from `q` on a divisor effective off `q`: while some
    /// nonempty set avoids the fire, fire it as many times as stays legal.
    fn dhar(&mut self, chips: &mut [i64], mut script: Option<&mut [i64]>) {
        let g = self.g;
        let n = g.vertex_count();
        loop {
            self.burning.fill(0);
            self.burnt.fill(false);
            self.burnt[self.q] = true;
            self.stack.clear();
            self.stack.push(self.q);
            let mut count = 1;
            while let Some(u) = self.stack.pop() {
                for &(w, m) in g.neighbors(u) {
                    if !self.burnt[w] {
                        self.burning[w] += u64::from(m);
                        if self.burning[w] as i64 > chips[w] {
                            self.burnt[w] = true;
                            count += 1;
                            self.stack.push(w);
                        }
                    }
                }
            }
            if count == n {
                return;
            }
            // Every edge leaving the unburnt set is burning, so burning[v] is
            // its outdegree; the set can fire `times` times without debt.
            let times = (0..n)
                .filter(|&v| !self.burnt[v] && self.burning[v] > 0)
                .map(|v| chips[v] / self.burning[v] as i64)
                .min()
                .unwrap_or(1)
                .max(1);
            for v in 0..n {
                if self.burnt[v] {
                    continue;
                }
                for &(w, m) in g.neighbors(v) {
                    if self.burnt[w] {
                        let moved = times * i64::from(m);
                        chips[v] -= moved;
                        chips[w] += moved;
                    }
                }
                if let Some(f) = script.as_deref_mut() {
                    f[v] += times;
                }
            }
        }
    }

    pub fn is_winnable(&mut self, chips: &[i64]) -> bool {
        if chips.iter().sum::<i64>() < 0 {
            return false;
        }
        if chips.iter().all(|&c| c >= 0) {
            return true;
        }
        let mut work = std::mem::take(&mut self.work);
        work.copy_from_slice(chips);
        self.reduce(&mut work, None);
        let ok = work[self.q] >= 0;
        self.work = work;
        ok
    }

    /// The first degree-`r` debt placement, in lexicographic multiset order,
    /// that `chips` cannot absorb.
    pub fn first_failing_debt(&mut self, chips: &[i64], r: u32) -> Option<Vec<usize>> {
        let n = self.g.vertex_count();
        if r == 0 {
            return (!self.is_winnable(chips)).then(Vec::new);
        }
        if chips.iter().sum::<i64>() < i64::from(r) {
            return Some(vec![0; r as usize]);
        }
        let mut shifted = chips.to_vec();
        for debt in (0..n).combinations_with_replacement(r as usize) {
            for &v in &debt {
                shifted[v] -= 1;
            }
            let ok = self.is_winnable(&shifted);
            for &v in &debt {
                shifted[v] += 1;
            }
            if !ok {
                return Some(debt);
            }
        }
        None
    }

    pub fn rank_at_least(&mut self, chips: &[i64], r: u32) -> bool {
        self.first_failing_debt(chips, r).is_none()
    }
}
