use qintegral::quasi_integral::duality_check;
use qintegral::sampling::{Sampler, SetKind};
use qintegral::wire::{
    boundary_measure_to_json, bundle_csv, dtm_to_json, interval_set_to_json, pwl_to_json, scalar_to_json,
};
use qintegral::{
    classify, pushforward_check, quasi_integrals, reconstruct, rl_equal_criterion, round_trip_check, Certificate,
    CheckReport, ClassificationReport, Error, FunctionalHandle, QIntervalSet, RampSchedule, Rational, Result, Scalar,
};
use serde_json::{json, Map, Value};

use crate::scenario::{Scenario, Task};

pub const DEFAULT_BUDGET: usize = 100;

pub struct Settings {
    pub seed: u64,
    pub cases: usize,
}

pub struct Outcome {
    pub report: Value,
    pub csv: String,
    /// Some check task produced a Fail verdict.
    pub failed: bool,
}

fn certificate_to_json(c: &Certificate<Rational>) -> Value {
    match c {
        Certificate::Stabilized { width } => json!({"kind": "stabilized", "width": scalar_to_json(width)}),
        Certificate::Extrapolated { slope, intercept, residual } => json!({
            "kind": "extrapolated",
            "slope": scalar_to_json(slope),
            "intercept": scalar_to_json(intercept),
            "residual": scalar_to_json(residual),
        }),
    }
}

fn classification_to_json(report: &ClassificationReport<Rational>) -> Value {
    let classes: Map<String, Value> =
        report.verdicts.iter().map(|(c, v)| (c.name().to_string(), json!(v.to_report(c.name())))).collect();
    let properties: Map<String, Value> =
        report.properties.iter().map(|(p, v)| (p.name().to_string(), json!(v.to_report(p.name())))).collect();
    let broken: Vec<Value> = report.broken_implications.iter().map(|(a, b)| json!([a.name(), b.name()])).collect();
    json!({
        "classes": classes,
        "properties": properties,
        "hierarchy_consistent": report.hierarchy_consistent,
        "broken_implications": broken,
        "norm": report.norm.as_ref().map(scalar_to_json),
    })
}

fn reconstruction_sets(scenario: &Scenario, settings: &Settings) -> Vec<QIntervalSet> {
    if let Some(sets) = &scenario.sets {
        return sets.clone();
    }
    let mut sampler = Sampler::new(settings.seed);
    let pool = sampler.point_pool(&scenario.space, &scenario.measure.landmarks());
    (0..settings.cases)
        .map(|i| {
            let kind = if i % 2 == 0 { SetKind::Open } else { SetKind::Compact };
            sampler.set(&scenario.space, kind, &pool)
        })
        .collect()
}

fn bounds_check(scenario: &Scenario, r: &Rational, l: &Rational) -> CheckReport {
    let (lo, hi) = scenario.function.range_bounds();
    let m = scenario.measure.total_mass();
    let name = "bounds mu(X)min f <= R(f) <= L(f) <= mu(X)max f";
    if m.clone() * lo <= *r && r <= l && *l <= m * hi {
        CheckReport::pass(name, 1)
    } else {
        CheckReport::fail(name, 1, vec![("R".into(), r.to_wire()), ("L".into(), l.to_wire())], "bounds violated")
    }
}

pub fn run(scenario: &Scenario, settings: &Settings) -> Result<Outcome> {
    let (mu, f) = (&scenario.measure, &scenario.function);
    let budget = scenario.budget.unwrap_or(DEFAULT_BUDGET);
    let (r, l, bundle) = quasi_integrals(mu, f)?;
    let verdict = rl_equal_criterion(&bundle);
    let mut report = Map::new();
    report.insert("seed".into(), json!(settings.seed));
    report.insert("measure".into(), dtm_to_json(mu));
    report.insert("function".into(), pwl_to_json(f));
    report.insert("tasks".into(), json!(scenario.tasks.iter().map(Task::to_string).collect::<Vec<_>>()));

    if scenario.tasks.contains(&Task::Integrate) {
        report.insert("R".into(), scalar_to_json(&r));
        report.insert("L".into(), scalar_to_json(&l));
        report.insert("r_equals_l".into(), json!(verdict.equal));
    }
    if scenario.tasks.contains(&Task::Distributions) {
        let breakpoints: Vec<Value> = bundle.breakpoints().iter().map(scalar_to_json).collect();
        report.insert(
            "distributions".into(),
            json!({
                "csv": "distributions.csv",
                "mass": scalar_to_json(&bundle.mass),
                "range_hull": [scalar_to_json(&bundle.range_hull.0), scalar_to_json(&bundle.range_hull.1)],
                "breakpoints": breakpoints,
            }),
        );
    }
    if scenario.tasks.contains(&Task::Measures) {
        let witness = verdict.witness.as_ref().map(|(a, b)| json!([scalar_to_json(a), scalar_to_json(b)]));
        report.insert(
            "boundary_measures".into(),
            json!({
                "r": boundary_measure_to_json(&bundle.right_measure()),
                "l": boundary_measure_to_json(&bundle.left_measure()),
                "r_equals_l": verdict.equal,
                "criterion_gap": witness,
            }),
        );
    }

    let sets = if scenario.tasks.contains(&Task::Reconstruct) || scenario.tasks.contains(&Task::Check) {
        reconstruction_sets(scenario, settings)
    } else {
        Vec::new()
    };
    let schedule = RampSchedule::default();
    if scenario.tasks.contains(&Task::Reconstruct) {
        let rho = FunctionalHandle::induced_r(mu);
        let rows = sets
            .iter()
            .map(|set| {
                let result = reconstruct(&rho, set, &schedule)?;
                let samples: Vec<Value> =
                    result.samples.iter().map(|(w, v)| json!([scalar_to_json(w), scalar_to_json(v)])).collect();
                let kind = if set.is_open(&scenario.space) { "open" } else { "compact" };
                Ok(json!({
                    "set": interval_set_to_json(set),
                    "kind": kind,
                    "mu": scalar_to_json(&mu.eval(set)?),
                    "reconstructed": scalar_to_json(&result.value),
                    "certificate": certificate_to_json(&result.certificate),
                    "samples": samples,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        report.insert("reconstruction".into(), Value::Array(rows));
    }
    if scenario.tasks.contains(&Task::Classify) {
        let right = classify(&FunctionalHandle::induced_r(mu), budget, settings.seed)?;
        let left = classify(&FunctionalHandle::induced_l(mu), budget, settings.seed)?;
        report.insert(
            "classification".into(),
            json!({ "budget": budget, "R": classification_to_json(&right), "L": classification_to_json(&left) }),
        );
    }

    let mut failed = false;
    if scenario.tasks.contains(&Task::Check) {
        let mut checks = vec![
            match bundle.check_invariants() {
                Ok(()) => CheckReport::pass("distribution invariants", 1),
                Err(e) => CheckReport::fail("distribution invariants", 1, Vec::new(), e.to_string()),
            },
            duality_check(mu, f)?,
            bounds_check(scenario, &r, &l),
        ];
        let measures_equal = bundle.right_measure() == bundle.left_measure();
        checks.push(if measures_equal == verdict.equal {
            CheckReport::pass("r = l criterion agrees with boundary measures", 1)
        } else {
            CheckReport::fail("r = l criterion agrees with boundary measures", 1, Vec::new(), "criterion disagrees")
        });
        checks.push(pushforward_check(mu, f, &bundle, settings.cases, settings.seed));
        if mu.is_structurally_additive() {
            let linear = mu.linear_integral(f)?;
            checks.push(if linear == r {
                CheckReport::pass("R agrees with the linear integral", 1)
            } else {
                CheckReport::fail(
                    "R agrees with the linear integral",
                    1,
                    vec![("integral".into(), linear.to_wire())],
                    "mismatch",
                )
            });
        }
        if !sets.is_empty() {
            checks.push(round_trip_check(mu, &sets, &schedule));
        }
        failed = checks.iter().any(CheckReport::is_fail);
        report.insert("checks".into(), json!(checks));
        report.insert("passed".into(), json!(!failed));
    }
    Ok(Outcome { report: Value::Object(report), csv: bundle_csv(&bundle), failed })
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
}
