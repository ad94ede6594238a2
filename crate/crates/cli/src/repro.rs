//! Named reproductions, defined in `fixtures/repro.toml`.

use chipfire::{
    alpha_r, bipartite_extension, bramble_order_r, detect_bipartition, gonality, mf_gonality,
    rank_at_least, scramble_order, upper_bound, vertex_scramble, BrambleCertificate, Divisor,
    Multigraph, SearchOptions, VertexSet,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{build_family, Failure};

const FIXTURE: &str = include_str!("../fixtures/repro.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    target: Vec<Target>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    pub name: String,
    check: Check,
    family: String,
    params: Vec<u64>,
    #[serde(default)]
    extend: bool,
    r: u32,
    start_degree: Option<u32>,
    divisor: Option<Vec<i64>>,
    sets: Option<Vec<Vec<usize>>>,
    /// `(degree, candidates)` that the search must report as exhausted.
    exhausted: Option<(u32, u64)>,
    expected: Value,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Check {
    Gon,
    Mfgon,
    Alpha,
    Bound,
    RankAtLeast,
    ScrambleOrder,
    BrambleOrder,
}

pub fn targets() -> Vec<Target> {
    parse(FIXTURE).expect("built-in repro fixture parses")
}

pub fn parse(text: &str) -> Result<Vec<Target>, Failure> {
    let fixture: Fixture =
        toml::from_str(text).map_err(|e| Failure::invalid(format!("repro fixture: {e}")))?;
    Ok(fixture.target)
}

pub fn fixture_text() -> &'static str {
    FIXTURE
}

fn graph_for(t: &Target) -> Result<Multigraph, Failure> {
    let g = build_family(&t.family, &t.params)?;
    if !t.extend {
        return Ok(g);
    }
    let labels = detect_bipartition(&g)?;
    Ok(bipartite_extension(&g, &labels)?.graph)
}

/// Outcome of one target; `matched` is false on a wrong value or when the
/// search ran out of budget.
pub struct Outcome {
    pub value: Value,
    pub matched: bool,
    pub budget_exceeded: bool,
}

pub fn run(t: &Target, opts: &SearchOptions) -> Result<Outcome, Failure> {
    let g = graph_for(t)?;
    let mut extra = json!({});
    let mut budget_exceeded = false;
    let mut exhausted_ok = true;
    let computed = match t.check {
        Check::Gon | Check::Mfgon => {
            let opts = SearchOptions {
                start_degree: t.start_degree.or(opts.start_degree),
                ..opts.clone()
            };
            let rep = match t.check {
                Check::Gon => gonality(&g, t.r, &opts)?,
                _ => mf_gonality(&g, t.r, &opts)?,
            };
            budget_exceeded = rep.budget_exceeded;
            if let Some(want) = t.exhausted {
                exhausted_ok = rep.degrees_exhausted.contains(&want);
            }
            extra = json!({
                "witness": rep.witness,
                "degrees_exhausted": rep.degrees_exhausted,
            });
            json!(rep.minimum_degree)
        }
        Check::Alpha => {
            let rep = alpha_r(&g, t.r)?;
            extra = json!({ "witness": rep.witness });
            json!(rep.alpha)
        }
        Check::Bound => json!(upper_bound(&g, t.r)?),
        Check::RankAtLeast => {
            let chips = t
                .divisor
                .clone()
                .ok_or_else(|| Failure::usage("target lacks a divisor"))?;
            json!(rank_at_least(&g, &Divisor::new(chips), t.r)?)
        }
        Check::ScrambleOrder => json!(scramble_order(&g, &vertex_scramble(&g, t.r))?.order),
        Check::BrambleOrder => {
            let sets = t
                .sets
                .clone()
                .ok_or_else(|| Failure::usage("target lacks sets"))?;
            let sets = sets
                .into_iter()
                .map(|s| VertexSet::new(g.vertex_count(), s))
                .collect::<chipfire::Result<Vec<_>>>()?;
            json!(bramble_order_r(&g, &BrambleCertificate { sets, r: t.r })?)
        }
    };
    let matched = !budget_exceeded && exhausted_ok && computed == t.expected;
    let mut value = json!({
        "name": t.name,
        "expected": t.expected,
        "computed": computed,
        "match": matched,
    });
    if let (Some(obj), Some(more)) = (value.as_object_mut(), extra.as_object()) {
        obj.extend(more.clone());
    }
    if let Some(want) = t.exhausted {
        value["required_exhaustion"] = json!(want);
    }
    Ok(Outcome {
        value,
        matched,
        budget_exceeded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_parses_with_unique_names() {
        let ts = targets();
        assert!(ts.len() >= 10);
        let mut names: Vec<&str> = ts.iter().map(|t| t.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), ts.len());
    }

    #[test]
    fn every_target_carries_an_origin_comment() {
        let lines: Vec<&str> = FIXTURE.lines().collect();
        for (i, line) in lines.iter().enumerate() {
            if *line == "[[target]]" {
                assert!(i > 0 && lines[i - 1].starts_with('#'), "line {}", i + 1);
            }
        }
    }

    #[test]
    fn small_targets_match() {
        for name in [
            "c4-gon2",
            "c4-alpha2",
            "banana-scramble2",
            "banana-bramble2",
        ] {
            let t = targets().into_iter().find(|t| t.name == name).unwrap();
            let out = run(&t, &SearchOptions::default()).unwrap();
            assert!(out.matched, "{name}: {}", out.value);
        }
    }
}
