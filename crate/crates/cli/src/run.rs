//! Dispatch of validated requests to the engine.

use mzlab_core::acceptance::{run_all, CriterionOutcome};
use mzlab_core::classify::{
    classify_ideal_derivation, classify_ideal_ederivation, classify_image_derivation,
    classify_image_ederivation, classify_single_partial_multivariate, classify_triangular,
    Decision, Verdict,
};
use mzlab_core::nilpotency::{
    coeff_table, is_ln_derivation, is_ln_ederivation, is_locally_finite, Finiteness, LnStatus,
};
use mzlab_core::oracle::{radical_probe, verify_multi_witness, verify_witness, WitnessCheck};
use mzlab_core::span::{
    ederivation_monomial_table, exact_member_ideal_derivation, image_span, triangular_window_span,
};
use mzlab_core::{Error, IdealSpec, Limits, MapSpec, Membership};
use serde::Serialize;
use serde_json::{json, Value};

use crate::request::{Command, EngineMap, Request, Resolved};

/// Outcome class; ordered by severity, and mapped to the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InvalidInput,
    /// A cap or budget was hit, or the engine answered Unknown.
    Unknown,
    InvariantViolation,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 1,
            Status::Unknown => 2,
            Status::InvariantViolation => 3,
        }
    }
}

/// The answer to one request.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub command: Command,
    pub status: Status,
    /// Command-specific result, or `{"error": message}`.
    pub result: Value,
}

/// Default window for `member` and `basis`.
pub const DEFAULT_DEGREE_CAP: usize = 40;
/// Powers replayed when the classifier's own witness is checked.
const SELF_CHECK_RANGE: (u32, u32) = (1, 4);
/// Total-degree cap for triangular windows.
const DEFAULT_TRIANGULAR_CAP: u32 = 8;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn engine_failure(e: Error) -> (Status, Value) {
    let status = match e {
        Error::BudgetExceeded { .. } | Error::DegreeCapExceeded { .. } => Status::Unknown,
        _ => Status::InvalidInput,
    };
    (status, json!({ "error": e.to_string() }))
}

/// Runs one request. `limits` carries the global budget.
pub fn execute(req: &Request, limits: &Limits) -> Outcome {
    let (status, result) = match req.resolve(limits) {
        Err(e) => (
            Status::InvalidInput,
            json!({ "error": e.to_string(), "path": e.path }),
        ),
        Ok(r) => dispatch(req, &r, limits).unwrap_or_else(engine_failure),
    };
    Outcome {
        command: req.command,
        status,
        result,
    }
}

fn whole_or(r: &Resolved) -> IdealSpec {
    r.ideal.clone().unwrap_or_else(|| IdealSpec::whole(r.field))
}

fn univariate(r: &Resolved) -> &MapSpec {
    match &r.map {
        Some(EngineMap::Univariate(m)) => m,
        _ => unreachable!("validated: univariate map present"),
    }
}

fn dispatch(req: &Request, r: &Resolved, limits: &Limits) -> Result<(Status, Value), Error> {
    match req.command {
        Command::Classify => classify(r, limits),
        Command::Member => member(r, limits),
        Command::Basis => basis(r, limits),
        Command::Ln => {
            let v = match univariate(r) {
                MapSpec::Derivation(d) => is_ln_derivation(d.coefficient(), r.iteration_cap)?,
                MapSpec::EDerivation(e) => is_ln_ederivation(e.phi())?,
                MapSpec::Triangular(_) => unreachable!("validated"),
            };
            let status = if matches!(v.status, LnStatus::Unknown { .. }) {
                Status::Unknown
            } else {
                Status::Ok
            };
            Ok((status, to_value(&v)))
        }
        Command::Lf => {
            let v = is_locally_finite(univariate(r), r.iteration_cap)?;
            let status = if v.status == Finiteness::Unknown {
                Status::Unknown
            } else {
                Status::Ok
            };
            Ok((status, to_value(&v)))
        }
        Command::TableThm25 => {
            let MapSpec::EDerivation(e) = univariate(r) else {
                unreachable!("validated")
            };
            let c = e.phi().coeff(0);
            let p = r.field.p() as usize;
            let cap = r.degree_cap.unwrap_or(p * p + p);
            let table = ederivation_monomial_table(r.field, c, cap)?;
            let mut v = to_value(&table);
            v["members"] = to_value(&table.members());
            Ok((Status::Ok, v))
        }
        Command::TableLemma37 => {
            let t = req.table.expect("validated");
            let table = coeff_table(
                r.field,
                t.i1,
                t.i2,
                t.c1 as u32,
                t.c2 as u32,
                t.k_max,
            )?;
            Ok((Status::Ok, to_value(&table)))
        }
        Command::OracleRadical => {
            let map = univariate(r);
            let span = image_span(map, &whole_or(r), r.probe.degree_cap, limits)?;
            let report = radical_probe(&span, &r.probe, limits)?;
            Ok((Status::Ok, to_value(&report)))
        }
        Command::OracleWitness => oracle_witness(r, limits),
        Command::Selftest => {
            let outcomes = run_all(limits)?;
            Ok(selftest_report(&outcomes))
        }
    }
}

/// The verdict for a request's map and ideal.
pub fn verdict_for(r: &Resolved) -> Result<Verdict, Error> {
    Ok(match r.map.as_ref().expect("validated") {
        EngineMap::Univariate(MapSpec::Derivation(d)) => match &r.ideal {
            None => classify_image_derivation(d.coefficient()),
            Some(i) => classify_ideal_derivation(d.coefficient(), i),
        },
        EngineMap::Univariate(MapSpec::EDerivation(e)) => match &r.ideal {
            None => classify_image_ederivation(e.phi()),
            Some(i) => classify_ideal_ederivation(e.phi(), i),
        },
        EngineMap::Triangular(MapSpec::Triangular(t)) => classify_triangular(t),
        EngineMap::Partial { f, var } => classify_single_partial_multivariate(f, *var)?,
        _ => unreachable!("map kinds match their engine form"),
    })
}

/// Classifies and replays any witness before reporting it; a refuted
/// witness is an internal invariant violation.
fn classify(r: &Resolved, limits: &Limits) -> Result<(Status, Value), Error> {
    let v = verdict_for(r)?;
    let mut status = if v.decision == Decision::Unknown {
        Status::Unknown
    } else {
        Status::Ok
    };
    let mut out = to_value(&v);
    let (lo, hi) = SELF_CHECK_RANGE;
    let check = match (&r.map, v.univariate_witness(), v.multivariate_witness()) {
        (Some(EngineMap::Univariate(m)), Some(w), _) => {
            Some(verify_witness(m, &whole_or(r), &w.clone().with_range(lo, hi), limits)?)
        }
        (Some(EngineMap::Triangular(MapSpec::Triangular(t))), _, Some(w)) => {
            let cap = r.degree_cap.map_or(DEFAULT_TRIANGULAR_CAP, |n| n as u32);
            Some(verify_multi_witness(t, &w.clone().with_range(lo, hi), cap, limits)?)
        }
        _ => None,
    };
    if let Some(check) = check {
        if !check.is_verified() {
            status = Status::InvariantViolation;
        }
        out["witness_check"] = to_value(&check);
    }
    Ok((status, out))
}

fn membership_str(m: Membership) -> &'static str {
    match m {
        Membership::In => "in",
        Membership::Out => "out",
        Membership::OutOfRange => "out_of_range",
    }
}

fn member(r: &Resolved, limits: &Limits) -> Result<(Status, Value), Error> {
    let map = univariate(r);
    let ideal = whole_or(r);
    let g = r.target.as_ref().expect("validated");
    let cap = r
        .degree_cap
        .unwrap_or(DEFAULT_DEGREE_CAP)
        .max(g.degree().unwrap_or(0))
        .max(1);
    let span = image_span(map, &ideal, cap, limits)?;
    let window = span.member(g);
    let mut out = json!({
        "degree_cap": cap,
        "exact": span.is_exact(),
        "window": membership_str(window),
    });
    if let MapSpec::Derivation(d) = map {
        let exact = exact_member_ideal_derivation(d.coefficient(), &ideal, g);
        out["exact_member"] = Value::Bool(exact);
        if span.is_exact() && (window == Membership::In) != exact {
            return Ok((Status::InvariantViolation, out));
        }
    }
    let status = if window == Membership::OutOfRange {
        Status::Unknown
    } else {
        Status::Ok
    };
    Ok((status, out))
}

fn basis(r: &Resolved, limits: &Limits) -> Result<(Status, Value), Error> {
    match r.map.as_ref().expect("validated") {
        EngineMap::Univariate(map) => {
            let cap = r.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
            let span = image_span(map, &whole_or(r), cap, limits)?;
            let sound = span.verify_preimages(map)?;
            let out = json!({
                "degree_cap": cap,
                "exact": span.is_exact(),
                "dimension": span.dimension(),
                "pivots": span.pivot_degrees(),
                "basis": to_value(&span.basis()),
                "preimages": to_value(&span.preimages()),
            });
            let status = if sound {
                Status::Ok
            } else {
                Status::InvariantViolation
            };
            Ok((status, out))
        }
        EngineMap::Triangular(MapSpec::Triangular(t)) => {
            let cap = r.degree_cap.map_or(DEFAULT_TRIANGULAR_CAP, |n| n as u32);
            let span = triangular_window_span(t, cap, limits)?;
            let rows = span.basis();
            Ok((
                Status::Ok,
                json!({
                    "degree_cap": cap,
                    "exact": span.is_exact(),
                    "dimension": rows.len(),
                    "basis": to_value(&rows),
                }),
            ))
        }
        _ => Err(Error::UnsupportedMap(
            "basis needs a univariate or triangular map",
        )),
    }
}

fn oracle_witness(r: &Resolved, limits: &Limits) -> Result<(Status, Value), Error> {
    let map = univariate(r);
    let ideal = whole_or(r);
    let (w, source) = match &r.witness {
        Some(w) => (w.clone(), "request"),
        None => {
            let v = verdict_for(r)?;
            match v.univariate_witness() {
                Some(w) => (w.clone(), "classifier"),
                None => {
                    return Ok((
                        Status::Ok,
                        json!({
                            "source": "classifier",
                            "decision": v.decision.as_str(),
                            "citation": v.citation.as_str(),
                            "check": Value::Null,
                        }),
                    ))
                }
            }
        }
    };
    let check = verify_witness(map, &ideal, &w, limits)?;
    // A refuted witness of our own making breaks an invariant; a refuted
    // user witness is just an answer.
    let status = match (source, check) {
        ("classifier", WitnessCheck::Refuted { .. }) => Status::InvariantViolation,
        _ => Status::Ok,
    };
    Ok((
        status,
        json!({
            "source": source,
            "witness": to_value(&w),
            "check": to_value(&check),
        }),
    ))
}

fn selftest_report(outcomes: &[CriterionOutcome]) -> (Status, Value) {
    let all = outcomes.iter().all(CriterionOutcome::passed);
    let status = if all {
        Status::Ok
    } else {
        Status::InvariantViolation
    };
    (status, json!({ "passed": all, "criteria": to_value(&outcomes) }))
}

/// The acceptance sweep without a request document.
pub fn run_selftest(limits: &Limits) -> Outcome {
    let (status, result) = run_all(limits)
        .map(|o| selftest_report(&o))
        .unwrap_or_else(engine_failure);
    Outcome {
        command: Command::Selftest,
        status,
        result,
    }
}
