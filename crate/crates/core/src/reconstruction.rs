//! Recovering a set function from a functional: `μ_ρ(U)` as the supremum of
//! `ρ` over plateau functions inside `U`, `μ_ρ(K)` as the infimum over
//! functions dominating `1_K`, both read off along a shrinking ramp-width
//! schedule.

use crate::checks::{w, CheckReport};
use crate::error::{Error, Result};
use crate::interval_sets::{Extended, Interval, IntervalSet, Space};
use crate::limits::{dyadic_widths, limit_of, Certificate};
use crate::measures::Dtm;
use crate::pwl_functions::PwlFunction;
use crate::quasi_integral::FunctionalHandle;
use crate::scalar::{max_of, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct RampSchedule<S> {
    widths: Vec<S>,
}

impl<S: Scalar> RampSchedule<S> {
    pub fn new(widths: Vec<S>) -> Result<Self> {
        if widths.len() < 2 {
            return Err(Error::InvalidFunction("schedule needs at least two widths".into()));
        }
        if widths.iter().any(|w| !w.is_positive()) || widths.windows(2).any(|p| p[0] <= p[1]) {
            return Err(Error::InvalidFunction("widths must be positive and strictly decreasing".into()));
        }
        Ok(RampSchedule { widths })
    }

    pub fn widths(&self) -> &[S] {
        &self.widths
    }
}

impl<S: Scalar> Default for RampSchedule<S> {
    /// `1/4, 1/8, …, 1/2¹⁰`.
    fn default() -> Self {
        RampSchedule { widths: dyadic_widths(9) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionResult<S> {
    pub value: S,
    pub certificate: Certificate<S>,
    pub samples: Vec<(S, S)>,
}

/// A part's end as seen by the plateau builders.
enum End<S> {
    /// Finite end excluded from the set: ramp needed.
    Open(S),
    /// End at the boundary of a compact space and included: no ramp.
    Ambient(S),
}

fn part_ends<S: Scalar>(part: &Interval<S>, space: &Space<S>, far: &S) -> (End<S>, End<S>) {
    let lo = match part.lo() {
        Extended::Finite(x) if !part.lo_open() && !space.is_compact() => End::Open(x.clone()),
        Extended::Finite(x) if !part.lo_open() => End::Ambient(x.clone()),
        Extended::Finite(x) => End::Open(x.clone()),
        _ => End::Open(-far.clone()),
    };
    let hi = match part.hi() {
        Extended::Finite(x) if !part.hi_open() && !space.is_compact() => End::Open(x.clone()),
        Extended::Finite(x) if !part.hi_open() => End::Ambient(x.clone()),
        Extended::Finite(x) => End::Open(x.clone()),
        _ => End::Open(far.clone()),
    };
    (lo, hi)
}

fn finish<S: Scalar>(mut nodes: Vec<(S, S)>, space: &Space<S>) -> PwlFunction<S> {
    nodes.dedup();
    match space {
        Space::Line => PwlFunction::on_line(nodes).expect("plateau nodes are ordered"),
        Space::Compact { a, b } => {
            if nodes.is_empty() {
                return PwlFunction::zero(space.clone());
            }
            // nodes may stick out of [a, b]; evaluate on the line and cut
            let (first, last) = (nodes[0].0.clone(), nodes[nodes.len() - 1].0.clone());
            nodes.insert(0, (first - S::one(), S::zero()));
            nodes.push((last + S::one(), S::zero()));
            PwlFunction::on_line(nodes).and_then(|f| f.restrict(a, b)).expect("plateau restricts to the space")
        }
    }
}

/// Function with `0 ≤ f ≤ 1` and `{f ≠ 0}` compactly inside `U`, equal to 1
/// on `U` shrunk by `eps` at every finite end. Each open end gets a ramp
/// rising over `[end + eps/2, end + eps]`; ends on the boundary of a compact
/// space are kept at 1; infinite ends are cut at distance `reach + 1/eps`.
/// Parts too short for a full plateau carry a tent of height below 1.
pub fn plateau_inside<S: Scalar>(u: &IntervalSet<S>, eps: &S, space: &Space<S>, reach: &S) -> PwlFunction<S> {
    let half = eps.clone() / S::two();
    let far = reach.clone() + S::one() / eps.clone();
    let (zero, one) = (S::zero(), S::one());
    let mut nodes = Vec::new();
    for part in u.parts() {
        let (lo, hi) = part_ends(part, space, &far);
        let (lo_pt, lo_ramp) = match &lo {
            End::Open(x) => (x.clone() + half.clone(), true),
            End::Ambient(x) => (x.clone(), false),
        };
        let (hi_pt, hi_ramp) = match &hi {
            End::Open(x) => (x.clone() - half.clone(), true),
            End::Ambient(x) => (x.clone(), false),
        };
        let lo_full = if lo_ramp { lo_pt.clone() + half.clone() } else { lo_pt.clone() };
        let hi_full = if hi_ramp { hi_pt.clone() - half.clone() } else { hi_pt.clone() };
        if lo_full <= hi_full {
            if lo_ramp {
                nodes.push((lo_pt.clone(), zero.clone()));
            } else {
                nodes.push((lo_pt.clone() - one.clone(), one.clone()));
            }
            nodes.push((lo_full, one.clone()));
            nodes.push((hi_full, one.clone()));
            if hi_ramp {
                nodes.push((hi_pt, zero.clone()));
            } else {
                nodes.push((hi_pt + one.clone(), one.clone()));
            }
            continue;
        }
        if lo_pt >= hi_pt && lo_ramp && hi_ramp {
            // nothing fits strictly inside
            continue;
        }
        // tent: slope 1/(eps/2) from every ramped side
        match (lo_ramp, hi_ramp) {
            (true, true) => {
                let mid = (lo_pt.clone() + hi_pt.clone()) / S::two();
                let height = (mid.clone() - lo_pt.clone()) / half.clone();
                nodes.extend([(lo_pt, zero.clone()), (mid, height), (hi_pt, zero.clone())]);
            }
            (true, false) => {
                let height = (hi_pt.clone() - lo_pt.clone()) / half.clone();
                nodes.extend([(lo_pt, zero.clone()), (hi_pt.clone(), height.clone()), (hi_pt + one.clone(), height)]);
            }
            (false, true) => {
                let height = (hi_pt.clone() - lo_pt.clone()) / half.clone();
                nodes.extend([(lo_pt.clone() - one.clone(), height.clone()), (lo_pt, height), (hi_pt, zero.clone())]);
            }
            (false, false) => unreachable!("a part with no ramps always fits"),
        }
    }
    finish(nodes, space)
}

/// Function equal to 1 on `K`, falling linearly to 0 at distance `eps`
/// outside every part.
pub fn plateau_over<S: Scalar>(k: &IntervalSet<S>, eps: &S, space: &Space<S>) -> Result<PwlFunction<S>> {
    let (zero, one) = (S::zero(), S::one());
    let mut out = PwlFunction::zero(Space::Line);
    for part in k.parts() {
        let (lo, hi) = match (part.lo(), part.hi()) {
            (Extended::Finite(lo), Extended::Finite(hi)) => (lo.clone(), hi.clone()),
            _ => return Err(Error::NotAdmissibleSet),
        };
        let mut nodes = vec![(lo.clone() - eps.clone(), zero.clone()), (lo, one.clone())];
        if hi != nodes[1].0 {
            nodes.push((hi.clone(), one.clone()));
        }
        nodes.push((hi + eps.clone(), zero.clone()));
        let piece = PwlFunction::on_line(nodes)?;
        out = out.max(&piece)?;
    }
    match space {
        Space::Line => Ok(out),
        Space::Compact { a, b } => out.restrict(a, b),
    }
}

fn reach_for<S: Scalar>(rho: &FunctionalHandle<S>, set: &IntervalSet<S>) -> S {
    let own = set.finite_endpoints().iter().fold(S::one(), |acc, x| max_of(&acc, &(x.abs() + S::one())));
    match rho.horizon() {
        Some(h) => max_of(h, &own),
        None => own,
    }
}

fn run_schedule<S: Scalar>(
    rho: &FunctionalHandle<S>,
    schedule: &RampSchedule<S>,
    increasing: bool,
    build: impl Fn(&S) -> Result<PwlFunction<S>>,
) -> Result<ReconstructionResult<S>> {
    let mut samples: Vec<(S, S)> = Vec::with_capacity(schedule.widths().len());
    for eps in schedule.widths() {
        let value = rho.evaluate(&build(eps)?)?;
        if let Some((prev_eps, prev)) = samples.last() {
            let broken = if increasing { value < *prev } else { value > *prev };
            if broken {
                return Err(Error::NotMonotoneInput(format!(
                    "value {} at width {} after {} at width {}",
                    value.to_wire(),
                    eps.to_wire(),
                    prev.to_wire(),
                    prev_eps.to_wire()
                )));
            }
        }
        samples.push((eps.clone(), value));
    }
    let (value, certificate) = limit_of(&samples).expect("schedule has at least two widths");
    Ok(ReconstructionResult { value, certificate, samples })
}

/// `μ_ρ(U) = sup{ρ(f) : 0 ≤ f ≤ 1, supp f ⊆ U}` along plateau functions.
pub fn reconstruct_open<S: Scalar>(
    rho: &FunctionalHandle<S>,
    u: &IntervalSet<S>,
    schedule: &RampSchedule<S>,
) -> Result<ReconstructionResult<S>> {
    let space = rho.space().clone();
    if !u.is_subset(&space.whole()) || !u.is_open(&space) {
        return Err(Error::NotAdmissibleSet);
    }
    let reach = reach_for(rho, u);
    run_schedule(rho, schedule, true, |eps| Ok(plateau_inside(u, eps, &space, &reach)))
}

/// `μ_ρ(K) = inf{ρ(g) : g ≥ 1_K}` along plateau functions with outward ramps.
pub fn reconstruct_compact<S: Scalar>(
    rho: &FunctionalHandle<S>,
    k: &IntervalSet<S>,
    schedule: &RampSchedule<S>,
) -> Result<ReconstructionResult<S>> {
    let space = rho.space().clone();
    if !k.is_subset(&space.whole()) || !k.is_compact(&space) {
        return Err(Error::NotAdmissibleSet);
    }
    run_schedule(rho, schedule, false, |eps| plateau_over(k, eps, &space))
}

/// Reconstructs `μ_ρ` for an open or compact set.
pub fn reconstruct<S: Scalar>(
    rho: &FunctionalHandle<S>,
    set: &IntervalSet<S>,
    schedule: &RampSchedule<S>,
) -> Result<ReconstructionResult<S>> {
    if set.is_open(rho.space()) {
        reconstruct_open(rho, set, schedule)
    } else {
        reconstruct_compact(rho, set, schedule)
    }
}

/// `μ_{R_μ}(A) = μ(A)` for every set of the family.
pub fn round_trip_check<S: Scalar>(mu: &Dtm<S>, sets: &[IntervalSet<S>], schedule: &RampSchedule<S>) -> CheckReport {
    const NAME: &str = "representation round trip";
    let rho = FunctionalHandle::induced_r(mu);
    for (i, set) in sets.iter().enumerate() {
        let expected = match mu.eval(set) {
            Ok(v) => v,
            Err(e) => return CheckReport::fail(NAME, i, vec![w("A", set)], e.to_string()),
        };
        match reconstruct(&rho, set, schedule) {
            Ok(res) if res.value == expected && res.certificate.is_trusted() => {}
            Ok(res) => {
                return CheckReport::fail(
                    NAME,
                    i + 1,
                    vec![
                        w("A", set),
                        w("mu(A)", expected.to_wire()),
                        w("reconstructed", res.value.to_wire()),
                        w("certificate", format!("{:?}", res.certificate)),
                    ],
                    "reconstructed value differs",
                )
            }
            Err(e) => return CheckReport::fail(NAME, i + 1, vec![w("A", set)], e.to_string()),
        }
    }
    CheckReport::pass(NAME, sets.len())
}

/// `‖ρ‖` for a monotone positive-homogeneous functional, as the reconstructed
/// value of the whole space.
pub fn norm_estimate<S: Scalar>(
    rho: &FunctionalHandle<S>,
    schedule: &RampSchedule<S>,
) -> Result<ReconstructionResult<S>> {
    reconstruct_open(rho, &rho.space().whole(), schedule)
}
