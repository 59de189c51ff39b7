//! JSON documents emitted by the command-line tools.

use serde::Serialize;
use serde_json::{json, Map, Value};

use lqn_core::algebra::AtomStructure;
use lqn_core::bounds::BoundsReport;
use lqn_core::coloring::{ColoringRun, Outcome};
use lqn_core::geometry::LabelMatrix;
use lqn_core::verify::{VerifyReport, ViolationKind};

pub fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Success => "success",
        Outcome::Exhausted => "exhausted",
        Outcome::Rejected => "rejected",
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub rounds: u64,
    pub resamples: u64,
    pub q: u32,
    pub n: u32,
    pub outcome: &'static str,
    pub max_rounds: u64,
    pub infeasible: bool,
}

impl From<&ColoringRun> for RunReport {
    fn from(r: &ColoringRun) -> Self {
        RunReport {
            seed: r.seed,
            rounds: r.rounds_used,
            resamples: r.resample_count,
            q: r.q,
            n: r.n,
            outcome: outcome_name(r.outcome),
            max_rounds: r.max_rounds,
            infeasible: r.infeasible,
        }
    }
}

pub fn verify_json(m: &LabelMatrix, report: &VerifyReport) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let kind = match v.kind {
                ViolationKind::ForbiddenTriangle => "forbidden_triangle",
                ViolationKind::MissingWitness => "missing_witness",
            };
            let mut points = vec![v.x, v.y];
            points.extend(v.z);
            json!({
                "kind": kind,
                "points": points,
                "atoms": v.atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "valid": report.valid,
        "q": m.q(),
        "n": m.n(),
        "V": m.vertex_count(),
        "violations": violations,
    })
}

/// `{"q":…, "n":…, "atoms": […], "comp": {"a0,a1": ["a2", …], …}}` over
/// unordered atom pairs in index order.
pub fn atom_table_json(s: &AtomStructure) -> Value {
    let mut comp = Map::new();
    for (x, y, members) in s.table_rows() {
        comp.insert(
            format!("{x},{y}"),
            Value::from(members.iter().map(|a| a.to_string()).collect::<Vec<_>>()),
        );
    }
    json!({
        "q": s.q(),
        "n": s.n(),
        "atoms": s.atoms().map(|a| a.to_string()).collect::<Vec<_>>(),
        "comp": comp,
    })
}

pub fn bounds_json(r: &BoundsReport) -> Value {
    json!({
        "q": r.q,
        "n": r.n,
        "union_bound_value": r.union_bound_value,
        "lll_lhs": r.lll_lhs,
        "lll_rhs": r.lll_rhs,
        "union_ok": r.union_ok,
        "lll_ok": r.lll_ok,
        "legacy_ok": r.legacy_ok,
        "infeasible": r.infeasible,
        "att_edge_probability": r.att_edge_probability,
        "tatta_edge_probability": r.tatta_edge_probability,
        "lll_ok_with_att": r.lll_ok_with_att,
    })
}
