//! Named batches of checks (golden examples, sampled invariants, and the
//! representation round trip), all run in exact rational arithmetic.

use serde_json::{json, Value};

use crate::checks::{w, CheckReport};
use crate::distributions::{
    integration_by_parts_check, pushforward_check, rl_equal_criterion, BoundaryMeasure, DistributionBundle, Jump,
    JumpFunction,
};
use crate::error::{Error, Result};
use crate::functional_lab::{classify, quasi_linearity_check, FunctionalClass};
use crate::interval_sets::{IntervalSet, Space};
use crate::measures::Dtm;
use crate::pwl_functions::{Direction, PwlFunction};
use crate::quasi_integral::{
    conic_check_on_cone, duality_check, lipschitz_check, partition_identity_check, quasi_integral_l, quasi_integral_r,
    quasi_integrals, FunctionalHandle,
};
use crate::reconstruction::{reconstruct, round_trip_check, RampSchedule};
use crate::sampling::{Sampler, SetKind};
use crate::scalar::Scalar;
use crate::Rational;
use num_traits::Signed;

pub const SUITES: [&str; 3] = ["golden", "properties", "roundtrip"];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub suite: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.is_fail())
    }

    pub fn to_json(&self) -> Value {
        json!({ "suite": self.suite, "passed": self.passed(), "checks": self.checks })
    }

    /// One line per check: status, case count, name.
    pub fn summary_table(&self) -> String {
        let mut out = format!("{:<6} {:>6}  {}\n", "status", "cases", "check");
        for c in &self.checks {
            out.push_str(&format!("{:<6} {:>6}  {}\n", format!("{:?}", c.status), c.cases, c.name));
        }
        out
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// The fixed measure catalog on the line used by the round-trip and
/// classification suites.
pub fn catalog() -> Vec<(String, Dtm<Rational>)> {
    let line = Space::Line;
    let simple = |a, b| Dtm::simple(line.clone(), a, b).expect("valid catalog entry");
    let dirac = |x| Dtm::dirac(line.clone(), x).expect("valid catalog entry");
    let lebesgue = |a, b| Dtm::lebesgue(line.clone(), a, b).expect("valid catalog entry");
    let combo = |terms| Dtm::combo(line.clone(), terms).expect("valid catalog entry");
    let entries = vec![
        simple(q(0, 1), q(1, 1)),
        simple(q(1, 1), q(2, 1)),
        dirac(q(1, 2)),
        lebesgue(q(0, 1), q(1, 1)),
        combo(vec![(q(5, 1), dirac(q(0, 1)))]),
        combo(vec![(q(2, 1), simple(q(0, 1), q(1, 1))), (q(3, 1), dirac(q(0, 1)))]),
        combo(vec![(q(1, 1), lebesgue(q(-1, 1), q(1, 1))), (q(1, 2), simple(q(0, 1), q(1, 2)))]),
    ];
    entries.into_iter().map(|m| (m.to_string(), m)).collect()
}

/// Runs `body` on `cases` sampled inputs; the first `Some(witness)` fails the
/// check.
fn sampled(
    name: &str,
    cases: usize,
    sampler: &mut Sampler,
    mut body: impl FnMut(&mut Sampler) -> Result<Option<Vec<(String, String)>>>,
) -> Result<CheckReport> {
    for i in 0..cases {
        if let Some(witness) = body(sampler)? {
            return Ok(CheckReport::fail(name, i + 1, witness, "counterexample found"));
        }
    }
    Ok(CheckReport::pass(name, cases))
}

fn same_jump_function(a: &JumpFunction<Rational>, b: &JumpFunction<Rational>) -> bool {
    let mut ts = a.breakpoint_ts();
    ts.extend(b.breakpoint_ts());
    crate::scalar::sort_dedup(&mut ts);
    let mut probes = ts.clone();
    probes.extend(ts.windows(2).map(|p| (p[0].clone() + p[1].clone()) / q(2, 1)));
    if let (Some(first), Some(last)) = (ts.first(), ts.last()) {
        probes.push(first.clone() - q(1, 1));
        probes.push(last.clone() + q(1, 1));
    } else {
        probes.push(q(0, 1));
    }
    probes
        .iter()
        .all(|t| a.eval(t) == b.eval(t) && a.left_limit(t) == b.left_limit(t) && a.right_limit(t) == b.right_limit(t))
}

/// `1_{t>c}` (`above`) or `1_{t<c}`.
fn indicator(c: Rational, above: bool) -> JumpFunction<Rational> {
    let (left, right) = if above { (q(0, 1), q(1, 1)) } else { (q(1, 1), q(0, 1)) };
    JumpFunction::from_breakpoints(left.clone(), vec![Jump { t: c, left, value: q(0, 1), right }])
        .expect("single breakpoint")
}

fn golden_case(
    label: &str,
    mu: &Dtm<Rational>,
    f: &PwlFunction<Rational>,
    expect: (JumpFunction<Rational>, JumpFunction<Rational>, Rational, Rational, Rational, Rational, bool),
) -> Result<Vec<CheckReport>> {
    let (l1, r1, l_atom, r_atom, big_r, big_l, equal) = expect;
    let (r_val, l_val, bundle) = quasi_integrals(mu, f)?;
    let mut out = Vec::new();
    let mut push = |name: &str, ok: bool, got: String| {
        let name = format!("{label}: {name}");
        out.push(if ok {
            CheckReport::pass(&name, 1)
        } else {
            CheckReport::fail(&name, 1, vec![w("got", got)], "mismatch")
        });
    };
    push("L1", same_jump_function(&bundle.l1, &l1), format!("{:?}", bundle.l1.breakpoints()));
    push("R1", same_jump_function(&bundle.r1, &r1), format!("{:?}", bundle.r1.breakpoints()));
    let (l, r) = (bundle.left_measure(), bundle.right_measure());
    push("l", l == BoundaryMeasure::dirac(l_atom, q(1, 1)), format!("{l:?}"));
    push("r", r == BoundaryMeasure::dirac(r_atom, q(1, 1)), format!("{r:?}"));
    push("R(f)", r_val == big_r, r_val.to_wire());
    push("L(f)", l_val == big_l, l_val.to_wire());
    let verdict = rl_equal_criterion(&bundle);
    push("r = l", verdict.equal == equal, verdict.equal.to_string());
    Ok(out)
}

/// The two worked examples with a simple measure and a hat-shaped function.
pub fn golden() -> Result<SuiteOutcome> {
    let line = Space::Line;
    let mut checks = golden_case(
        "hat under simple[0, 1]",
        &Dtm::simple(line.clone(), q(0, 1), q(1, 1))?,
        &PwlFunction::hat(q(-1, 1), q(0, 1), q(1, 1), q(1, 1))?,
        (indicator(q(1, 1), true), indicator(q(0, 1), false), q(1, 1), q(0, 1), q(0, 1), q(1, 1), false),
    )?;
    let f = PwlFunction::on_line(vec![
        (q(-1, 1), q(0, 1)),
        (q(0, 1), q(2, 1)),
        (q(1, 1), q(1, 1)),
        (q(2, 1), q(1, 1)),
        (q(3, 1), q(0, 1)),
    ])?;
    checks.extend(golden_case(
        "plateau under simple[1, 2]",
        &Dtm::simple(line, q(1, 1), q(2, 1))?,
        &f,
        (indicator(q(1, 1), true), indicator(q(1, 1), false), q(1, 1), q(1, 1), q(1, 1), q(1, 1), true),
    )?);
    Ok(SuiteOutcome { suite: "golden".into(), checks })
}

fn unit_range(f: PwlFunction<Rational>) -> PwlFunction<Rational> {
    let top = f.range_bounds().1;
    if top.is_positive() {
        f.scale(&(q(1, 1) / top))
    } else {
        f
    }
}

/// Sampled invariants of distribution functions, quasi-integrals,
/// boundary measures, and the functional classification.
pub fn properties(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let line = Space::Line;
    let mut root = Sampler::new(seed);
    let mut checks = Vec::new();

    checks.push(sampled("bundle invariants", cases, &mut root.fork(), |s| {
        let (mu, f) = (s.measure(&line), s.pwl(&line));
        let b = DistributionBundle::compute(&mu, &f)?;
        b.check_invariants()?;
        let (r, l) = (b.right_measure(), b.left_measure());
        let (lo, hi) = f.range_bounds();
        let inside = |m: &BoundaryMeasure<Rational>| m.support_hull().is_none_or(|(a, z)| lo <= a && z <= hi);
        let ok = r.total() == mu.total_mass() && l.total() == mu.total_mass() && inside(&r) && inside(&l);
        Ok((!ok).then(|| vec![w("mu", &mu), w("f", &f)]))
    })?);

    checks.push(sampled("oracle min/max for simple measures", cases, &mut root.fork(), |s| {
        let (a, b) = s.sub_interval(&line);
        let f = s.pwl(&line);
        let mu = Dtm::simple(line.clone(), a.clone(), b.clone())?;
        let (min, max) = f.restricted_extrema(&IntervalSet::from(crate::Interval::closed(a, b)))?;
        let (r, l) = (quasi_integral_r(&mu, &f)?, quasi_integral_l(&mu, &f)?);
        Ok((r != min || l != max).then(|| vec![w("mu", &mu), w("f", &f), w("R", r.to_wire()), w("L", l.to_wire())]))
    })?);

    checks.push(sampled("duality L(-f) = -R(f)", cases, &mut root.fork(), |s| {
        let (mu, f) = (s.measure(&line), s.pwl(&line));
        let report = duality_check(&mu, &f)?;
        Ok(report.is_fail().then(|| [vec![w("mu", &mu), w("f", &f)], report.witness].concat()))
    })?);

    checks.push(sampled("bounds mu(X)min f <= R(f) <= mu(X)max f", cases, &mut root.fork(), |s| {
        let (mu, f) = (s.measure(&line), s.pwl(&line));
        let (lo, hi) = f.range_bounds();
        let m = mu.total_mass();
        let r = quasi_integral_r(&mu, &f)?;
        Ok((r < m.clone() * lo || r > m * hi).then(|| vec![w("mu", &mu), w("f", &f)]))
    })?);

    checks.push(sampled("conic linearity on cones", cases, &mut root.fork(), |s| {
        let (mu, f) = (s.measure(&line), s.pwl(&line));
        let (lo, hi) = f.range_bounds();
        let (lo, hi) = if lo < hi { (lo, hi) } else { (q(-1, 1), q(1, 1)) };
        let dir = if s.chance(0.5) { Direction::NonDecreasing } else { Direction::NonIncreasing };
        let phi = s.monotone_profile(&lo, &hi, dir, true);
        let psi = s.monotone_profile(&lo, &hi, dir, true);
        let (a, b) = (s.coefficient(), s.coefficient());
        let report = conic_check_on_cone(&mu, &f, &phi, &psi, &a, &b)?;
        Ok(report.is_fail().then(|| [vec![w("mu", &mu), w("f", &f)], report.witness].concat()))
    })?);

    checks.push(sampled("partition identity n in {2,4,8}", cases, &mut root.fork(), |s| {
        let mu = s.measure(&line);
        let f = unit_range(s.nonnegative_pwl(&line));
        for n in [2, 4, 8] {
            let report = partition_identity_check(&mu, &f, n)?;
            if report.is_fail() {
                return Ok(Some([vec![w("mu", &mu), w("f", &f), w("n", n)], report.witness].concat()));
            }
        }
        Ok(None)
    })?);

    checks.push(sampled("Lipschitz bound", cases, &mut root.fork(), |s| {
        let (mu, f, g) = (s.measure(&line), s.nonnegative_pwl(&line), s.nonnegative_pwl(&line));
        let report = lipschitz_check(&mu, &f, &g)?;
        Ok(report.is_fail().then(|| [vec![w("mu", &mu)], report.witness].concat()))
    })?);

    checks.push(sampled("additivity for linear measures", cases, &mut root.fork(), |s| {
        let (mu, f, g) = (s.linear_measure(&line), s.pwl(&line), s.pwl(&line));
        let lhs = quasi_integral_r(&mu, &f.add(&g)?)?;
        let rhs = quasi_integral_r(&mu, &f)? + quasi_integral_r(&mu, &g)?;
        Ok((lhs != rhs).then(|| vec![w("mu", &mu), w("f", &f), w("g", &g)]))
    })?);

    checks.push(sampled("r = l for topological measures", cases, &mut root.fork(), |s| {
        let (mu, f) = (s.linear_measure(&line), s.pwl(&line));
        let b = DistributionBundle::compute(&mu, &f)?;
        let ok = b.right_measure() == b.left_measure() && rl_equal_criterion(&b).equal;
        Ok((!ok).then(|| vec![w("mu", &mu), w("f", &f)]))
    })?);

    checks.push(sampled("r = l criterion agrees with measure equality", cases, &mut root.fork(), |s| {
        let (mu, f) = (s.measure(&line), s.pwl(&line));
        let b = DistributionBundle::compute(&mu, &f)?;
        let ok = rl_equal_criterion(&b).equal == (b.right_measure() == b.left_measure());
        Ok((!ok).then(|| vec![w("mu", &mu), w("f", &f)]))
    })?);

    checks.push(sampled("pushforward inequalities", cases, &mut root.fork(), |s| {
        let (mu, f) = (s.measure(&line), s.pwl(&line));
        let b = DistributionBundle::compute(&mu, &f)?;
        let sub_seed = s.index(1 << 30) as u64;
        let report = pushforward_check(&mu, &f, &b, 2, sub_seed);
        Ok(report.is_fail().then(|| [vec![w("mu", &mu), w("f", &f)], report.witness].concat()))
    })?);

    checks.push(sampled("integration by parts", cases, &mut root.fork(), |s| {
        let dir = |s: &mut Sampler| if s.chance(0.5) { Direction::NonDecreasing } else { Direction::NonIncreasing };
        let (d1, d2) = (dir(s), dir(s));
        let (f, g) = (s.monotone_jump::<Rational>(d1), s.monotone_jump::<Rational>(d2));
        let (a, b) = s.sub_interval(&line);
        let report = integration_by_parts_check(&f, &g, &a, &b);
        Ok(report.is_fail().then_some(report.witness))
    })?);

    let budget = (cases / 10).max(10);
    for (label, mu) in catalog() {
        let rho = FunctionalHandle::induced_r(&mu);
        let report = classify(&rho, budget, root.index(1 << 30) as u64)?;
        let name = format!("classification of R for {label}");
        let p_conic = report.verdict(FunctionalClass::PConic);
        let replay_ok = report
            .verdicts
            .values()
            .filter_map(|v| v.witness.as_ref())
            .map(|wit| wit.replay(&rho))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        checks.push(if report.hierarchy_consistent && p_conic.is_pass() && replay_ok {
            CheckReport::pass(&name, budget)
        } else {
            let broken: Vec<String> = report.broken_implications.iter().map(|(a, b)| format!("{a}=>{b}")).collect();
            CheckReport::fail(
                &name,
                budget,
                vec![
                    w("broken", broken.join(" ")),
                    w("p_conic", format!("{:?}", p_conic.status)),
                    w("replay", replay_ok),
                ],
                "classification invariant failed",
            )
        });
    }

    let simple = Dtm::simple(line.clone(), q(0, 1), q(1, 1))?;
    let hat = PwlFunction::hat(q(-1, 1), q(0, 1), q(1, 1), q(1, 1))?;
    let ql = quasi_linearity_check(&FunctionalHandle::induced_r(&simple), &hat, cases.max(50), seed)?;
    checks.push(if ql.is_fail() {
        CheckReport {
            name: "quasi-linearity witness for a simple measure".into(),
            status: crate::CheckStatus::Pass,
            ..ql
        }
    } else {
        CheckReport::fail("quasi-linearity witness for a simple measure", ql.cases, Vec::new(), "no witness found")
    });

    Ok(SuiteOutcome { suite: "properties".into(), checks })
}

/// Reconstruction of every catalog measure from its induced functional on
/// `cases` random open and compact sets, plus nested-set monotonicity.
pub fn roundtrip(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let line = Space::Line;
    let schedule = RampSchedule::default();
    let mut root = Sampler::new(seed);
    let mut checks = Vec::new();
    for (label, mu) in catalog() {
        let mut s = root.fork();
        let pool = s.point_pool(&line, &mu.landmarks());
        let sets: Vec<IntervalSet<Rational>> = (0..cases)
            .map(|i| s.set(&line, if i % 2 == 0 { SetKind::Open } else { SetKind::Compact }, &pool))
            .collect();
        let mut report = round_trip_check(&mu, &sets, &schedule);
        report.name = format!("round trip for {label}");
        checks.push(report);

        let rho = FunctionalHandle::induced_r(&mu);
        let nested = sampled(&format!("nested sets for {label}"), cases.div_ceil(5), &mut s, |s| {
            let k = s.set(&line, SetKind::Compact, &pool);
            if k.is_empty() {
                return Ok(None);
            }
            let u = k.expand_open(&s.grid(1, 4, 8), &line);
            let (rk, ru) = (reconstruct(&rho, &k, &schedule)?, reconstruct(&rho, &u, &schedule)?);
            let monotone_samples =
                rk.samples.windows(2).all(|p| p[0].1 >= p[1].1) && ru.samples.windows(2).all(|p| p[0].1 <= p[1].1);
            Ok((rk.value > ru.value || !monotone_samples).then(|| vec![w("K", &k), w("U", &u)]))
        })?;
        checks.push(nested);
    }
    Ok(SuiteOutcome { suite: "roundtrip".into(), checks })
}

pub fn run_suite(name: &str, seed: u64, cases: usize) -> Result<SuiteOutcome> {
    match name {
        "golden" => golden(),
        "properties" => properties(seed, cases),
        "roundtrip" => roundtrip(seed, cases),
        other => Err(Error::Parse(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}
