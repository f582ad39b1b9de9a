//! Catalog of exactly-evaluable finite deficient topological measures and
//! randomized validators for their axioms.

use std::fmt;

use crate::error::{Error, Result};
use crate::interval_sets::{Interval, IntervalSet, Space};
use crate::limits::{dyadic_widths, limit_of};
use crate::pwl_functions::PwlFunction;
use crate::sampling::{Sampler, SetKind};
use crate::scalar::{sort_dedup, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureNode<S> {
    /// 1 on sets containing the compact interval `[lo, hi]`, 0 elsewhere.
    SimpleContains {
        lo: S,
        hi: S,
    },
    Dirac(S),
    /// Length of the intersection with `[lo, hi]`.
    LebesgueOn {
        lo: S,
        hi: S,
    },
    Combo(Vec<(S, MeasureNode<S>)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dtm<S> {
    space: Space<S>,
    node: MeasureNode<S>,
}

/// Anything that can be evaluated on open and compact interval sets; lets the
/// validators run on set functions outside the catalog.
pub trait SetFunction<S: Scalar> {
    fn space(&self) -> &Space<S>;
    fn measure(&self, set: &IntervalSet<S>) -> Result<S>;
    /// Points where the set function's behaviour changes.
    fn landmarks(&self) -> Vec<S>;
}

fn check_inside<S: Scalar>(space: &Space<S>, lo: &S, hi: &S) -> Result<()> {
    if lo > hi {
        return Err(Error::InvalidInterval(format!("[{lo:?}, {hi:?}] is empty")));
    }
    if !space.contains(lo) || !space.contains(hi) {
        return Err(Error::NotContained);
    }
    Ok(())
}

impl<S: Scalar> Dtm<S> {
    pub fn simple(space: Space<S>, lo: S, hi: S) -> Result<Self> {
        check_inside(&space, &lo, &hi)?;
        Ok(Dtm { space, node: MeasureNode::SimpleContains { lo, hi } })
    }

    pub fn dirac(space: Space<S>, x: S) -> Result<Self> {
        check_inside(&space, &x, &x)?;
        Ok(Dtm { space, node: MeasureNode::Dirac(x) })
    }

    pub fn lebesgue(space: Space<S>, lo: S, hi: S) -> Result<Self> {
        check_inside(&space, &lo, &hi)?;
        Ok(Dtm { space, node: MeasureNode::LebesgueOn { lo, hi } })
    }

    pub fn combo(space: Space<S>, terms: Vec<(S, Dtm<S>)>) -> Result<Self> {
        let mut nodes = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            if c.is_negative() {
                return Err(Error::InvalidMeasure(format!("negative coefficient {}", c.to_wire())));
            }
            if m.space != space {
                return Err(Error::SpaceMismatch);
            }
            nodes.push((c, m.node));
        }
        Ok(Dtm { space, node: MeasureNode::Combo(nodes) })
    }

    pub fn space(&self) -> &Space<S> {
        &self.space
    }

    pub fn node(&self) -> &MeasureNode<S> {
        &self.node
    }

    /// Value on a set that is open or closed in the space. On closed sets
    /// the value is the infimum over open neighbourhoods.
    pub fn eval(&self, set: &IntervalSet<S>) -> Result<S> {
        if !set.is_subset(&self.space.whole()) {
            return Err(Error::NotContained);
        }
        if !set.is_open(&self.space) && !set.is_closed(&self.space) {
            return Err(Error::NotAdmissibleSet);
        }
        Ok(eval_node(&self.node, set))
    }

    pub fn total_mass(&self) -> S {
        eval_node(&self.node, &self.space.whole())
    }

    pub fn landmarks(&self) -> Vec<S> {
        let mut out = Vec::new();
        collect_landmarks(&self.node, &mut out);
        sort_dedup(&mut out);
        out
    }

    /// True when no component is a simple measure with a nondegenerate interval,
    /// so the measure is additive.
    pub fn is_structurally_additive(&self) -> bool {
        node_is_additive(&self.node)
    }

    /// Ordinary integral of `f` when the measure is additive.
    pub fn linear_integral(&self, f: &PwlFunction<S>) -> Result<S> {
        if f.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        linear_node(&self.node, f)
    }

    /// Every leaf with its accumulated coefficient.
    pub fn leaves(&self) -> Vec<(S, MeasureNode<S>)> {
        let mut out = Vec::new();
        collect_leaves(&self.node, S::one(), &mut out);
        out
    }
}

fn eval_node<S: Scalar>(node: &MeasureNode<S>, set: &IntervalSet<S>) -> S {
    match node {
        MeasureNode::SimpleContains { lo, hi } => {
            let d = IntervalSet::from(Interval::closed(lo.clone(), hi.clone()));
            if d.is_subset(set) {
                S::one()
            } else {
                S::zero()
            }
        }
        MeasureNode::Dirac(x) => {
            if set.contains(x) {
                S::one()
            } else {
                S::zero()
            }
        }
        MeasureNode::LebesgueOn { lo, hi } => {
            set.intersect(&Interval::closed(lo.clone(), hi.clone()).into()).length().expect("bounded intersection")
        }
        MeasureNode::Combo(terms) => terms.iter().fold(S::zero(), |acc, (c, m)| acc + c.clone() * eval_node(m, set)),
    }
}

fn collect_landmarks<S: Scalar>(node: &MeasureNode<S>, out: &mut Vec<S>) {
    match node {
        MeasureNode::SimpleContains { lo, hi } | MeasureNode::LebesgueOn { lo, hi } => {
            out.push(lo.clone());
            out.push(hi.clone());
        }
        MeasureNode::Dirac(x) => out.push(x.clone()),
        MeasureNode::Combo(terms) => terms.iter().for_each(|(_, m)| collect_landmarks(m, out)),
    }
}

fn node_is_additive<S: Scalar>(node: &MeasureNode<S>) -> bool {
    match node {
        MeasureNode::SimpleContains { lo, hi } => lo == hi,
        MeasureNode::Combo(terms) => terms.iter().all(|(c, m)| c.is_zero() || node_is_additive(m)),
        _ => true,
    }
}

fn linear_node<S: Scalar>(node: &MeasureNode<S>, f: &PwlFunction<S>) -> Result<S> {
    match node {
        MeasureNode::SimpleContains { lo, hi } if lo == hi => Ok(f.value_at(lo)),
        MeasureNode::SimpleContains { .. } => Err(Error::NotLinear),
        MeasureNode::Dirac(x) => Ok(f.value_at(x)),
        MeasureNode::LebesgueOn { lo, hi } => Ok(f.integral_over(lo, hi)),
        MeasureNode::Combo(terms) => terms.iter().try_fold(S::zero(), |acc, (c, m)| {
            if c.is_zero() {
                Ok(acc)
            } else {
                Ok(acc + c.clone() * linear_node(m, f)?)
            }
        }),
    }
}

fn collect_leaves<S: Scalar>(node: &MeasureNode<S>, coeff: S, out: &mut Vec<(S, MeasureNode<S>)>) {
    match node {
        MeasureNode::Combo(terms) => {
            for (c, m) in terms {
                collect_leaves(m, coeff.clone() * c.clone(), out);
            }
        }
        leaf => out.push((coeff, leaf.clone())),
    }
}

impl<S: Scalar> SetFunction<S> for Dtm<S> {
    fn space(&self) -> &Space<S> {
        &self.space
    }

    fn measure(&self, set: &IntervalSet<S>) -> Result<S> {
        self.eval(set)
    }

    fn landmarks(&self) -> Vec<S> {
        Dtm::landmarks(self)
    }
}

impl<S: Scalar> fmt::Display for MeasureNode<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureNode::SimpleContains { lo, hi } => write!(f, "simple[{}, {}]", lo.to_wire(), hi.to_wire()),
            MeasureNode::Dirac(x) => write!(f, "dirac({})", x.to_wire()),
            MeasureNode::LebesgueOn { lo, hi } => write!(f, "lebesgue[{}, {}]", lo.to_wire(), hi.to_wire()),
            MeasureNode::Combo(terms) => {
                if terms.is_empty() {
                    return write!(f, "0");
                }
                for (i, (c, m)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    match m {
                        MeasureNode::Combo(_) => write!(f, "{}·({})", c.to_wire(), m)?,
                        _ => write!(f, "{}·{}", c.to_wire(), m)?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl<S: Scalar> fmt::Display for Dtm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessEntry<S> {
    pub label: String,
    pub set: IntervalSet<S>,
    pub value: S,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationReport<S> {
    Pass { cases: usize },
    Fail { check: String, witness: Vec<WitnessEntry<S>>, detail: String },
}

impl<S: Scalar> ValidationReport<S> {
    pub fn is_pass(&self) -> bool {
        matches!(self, ValidationReport::Pass { .. })
    }
}

fn entry<S>(label: &str, set: &IntervalSet<S>, value: S) -> WitnessEntry<S>
where
    S: Scalar,
{
    WitnessEntry { label: label.to_string(), set: set.clone(), value }
}

fn fail<S>(check: &str, witness: Vec<WitnessEntry<S>>, detail: String) -> ValidationReport<S> {
    ValidationReport::Fail { check: check.to_string(), witness, detail }
}

/// Compact intervals with both ends drawn from `points`, restricted to the space.
fn landmark_intervals<S: Scalar>(space: &Space<S>, points: &[S]) -> Vec<IntervalSet<S>> {
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i..] {
            if space.contains(p) && space.contains(q) {
                out.push(Interval::closed(p.clone(), q.clone()).into());
            }
        }
    }
    out
}

/// Landmarks with their neighbours at distance 1/2 and 1 and the midpoints
/// between consecutive landmarks, restricted to the space.
fn landmark_neighbourhood<S: Scalar>(space: &Space<S>, landmarks: &[S]) -> Vec<S> {
    let mut out = Vec::new();
    for l in landmarks {
        for d in [S::zero(), S::half(), S::one()] {
            out.push(l.clone() - d.clone());
            out.push(l.clone() + d);
        }
    }
    for w in landmarks.windows(2) {
        out.push((w[0].clone() + w[1].clone()) / S::two());
    }
    out.retain(|x| space.contains(x));
    sort_dedup(&mut out);
    out
}

const LANDMARK_PAIR_LIMIT: usize = 4096;

fn reach_of<S: Scalar>(points: &[S]) -> S {
    points.iter().fold(S::one(), |acc, p| {
        let a = p.abs() + S::one();
        if a > acc {
            a
        } else {
            acc
        }
    })
}

/// Randomized check of the deficient-topological-measure axioms: finite
/// additivity on compact sets, inner regularity on open sets, outer
/// regularity on compact sets, superadditivity, and monotonicity.
pub fn validate_dtm<S: Scalar, F: SetFunction<S> + ?Sized>(mu: &F, budget: usize, seed: u64) -> ValidationReport<S> {
    let space = mu.space().clone();
    let landmarks = mu.landmarks();
    let mut cases = 0;

    let intervals = landmark_intervals(&space, &landmarks);
    'pairs: for (i, c) in intervals.iter().enumerate() {
        for k in &intervals[i + 1..] {
            if cases >= LANDMARK_PAIR_LIMIT {
                break 'pairs;
            }
            if !c.intersect(k).is_empty() {
                continue;
            }
            if let Some(report) = additivity_case(mu, c, k) {
                return report;
            }
            cases += 1;
        }
    }

    let mut sampler = Sampler::new(seed);
    let pool = sampler.point_pool(&space, &landmarks);
    let reach = reach_of(&pool);
    let widths: Vec<S> = dyadic_widths(12);
    for round in 0..budget {
        let mut s = sampler.fork();
        let report = match round % 5 {
            0 => {
                let c = s.set(&space, SetKind::Compact, &pool);
                let k = s.set(&space, SetKind::Compact, &pool).difference(&c.expand_open(&S::ratio(1, 8), &space));
                additivity_case(mu, &c, &k)
            }
            1 => inner_regularity_case(mu, &s.set(&space, SetKind::Open, &pool), &widths, &reach),
            2 => outer_regularity_case(mu, &s.set(&space, SetKind::Compact, &pool), &widths),
            3 => superadditivity_case(mu, &mut s, &pool),
            _ => monotonicity_case(mu, &mut s, &pool),
        };
        if let Some(report) = report {
            return report;
        }
        cases += 1;
    }
    ValidationReport::Pass { cases }
}

fn eval_or_fail<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    label: &str,
    set: &IntervalSet<S>,
) -> std::result::Result<S, ValidationReport<S>> {
    mu.measure(set)
        .map_err(|e| fail("admissibility", vec![entry(label, set, S::zero())], format!("evaluation failed: {e}")))
}

macro_rules! eval_or_return {
    ($mu:expr, $label:expr, $set:expr) => {
        match eval_or_fail($mu, $label, $set) {
            Ok(v) => v,
            Err(report) => return Some(report),
        }
    };
}

fn additivity_case<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    c: &IntervalSet<S>,
    k: &IntervalSet<S>,
) -> Option<ValidationReport<S>> {
    if !c.intersect(k).is_empty() {
        return None;
    }
    let union = c.union(k);
    let vc = eval_or_return!(mu, "C", c);
    let vk = eval_or_return!(mu, "K", k);
    let vu = eval_or_return!(mu, "C ⊔ K", &union);
    if vu != vc.clone() + vk.clone() {
        let detail = format!("{} ≠ {} + {}", vu.to_wire(), vc.to_wire(), vk.to_wire());
        return Some(fail(
            "finite additivity on compact sets",
            vec![entry("C", c, vc), entry("K", k, vk), entry("C ⊔ K", &union, vu)],
            detail,
        ));
    }
    None
}

fn inner_regularity_case<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    u: &IntervalSet<S>,
    widths: &[S],
    reach: &S,
) -> Option<ValidationReport<S>> {
    let space = mu.space();
    let vu = eval_or_return!(mu, "U", u);
    let mut samples = Vec::with_capacity(widths.len());
    let mut previous: Option<(IntervalSet<S>, S)> = None;
    for w in widths {
        let k = u.shrink_compact(w, &(reach.clone() + S::one() / w.clone()), space);
        let vk = eval_or_return!(mu, "K_n", &k);
        if vk > vu {
            let detail = format!("compact subset exceeds the open set: {} > {}", vk.to_wire(), vu.to_wire());
            return Some(fail("inner regularity", vec![entry("U", u, vu), entry("K_n", &k, vk)], detail));
        }
        if let Some((pk, pv)) = &previous {
            if vk < *pv {
                let detail = format!("increasing compacts lost mass: {} < {}", vk.to_wire(), pv.to_wire());
                return Some(fail("monotonicity", vec![entry("K_n", pk, pv.clone()), entry("K_n+1", &k, vk)], detail));
            }
        }
        samples.push((w.clone(), vk.clone()));
        previous = Some((k, vk));
    }
    let (limit, cert) = limit_of(&samples).expect("at least two widths");
    if !cert.is_trusted() || limit != vu {
        let (k, vk) = previous.expect("nonempty schedule");
        let detail = format!("compact approximations tend to {} but ν(U) = {}", limit.to_wire(), vu.to_wire());
        return Some(fail("inner regularity", vec![entry("U", u, vu), entry("K_n", &k, vk)], detail));
    }
    None
}

fn outer_regularity_case<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    k: &IntervalSet<S>,
    widths: &[S],
) -> Option<ValidationReport<S>> {
    let space = mu.space();
    let vk = eval_or_return!(mu, "K", k);
    let mut samples = Vec::with_capacity(widths.len());
    let mut previous: Option<(IntervalSet<S>, S)> = None;
    for w in widths {
        let u = k.expand_open(w, space);
        let vu = eval_or_return!(mu, "U_n", &u);
        if vu < vk {
            let detail = format!("open superset below the compact set: {} < {}", vu.to_wire(), vk.to_wire());
            return Some(fail("outer regularity", vec![entry("K", k, vk), entry("U_n", &u, vu)], detail));
        }
        if let Some((pu, pv)) = &previous {
            if vu > *pv {
                let detail = format!("decreasing open sets gained mass: {} > {}", vu.to_wire(), pv.to_wire());
                return Some(fail("monotonicity", vec![entry("U_n", pu, pv.clone()), entry("U_n+1", &u, vu)], detail));
            }
        }
        samples.push((w.clone(), vu.clone()));
        previous = Some((u, vu));
    }
    let (limit, cert) = limit_of(&samples).expect("at least two widths");
    if !cert.is_trusted() || limit != vk {
        let (u, vu) = previous.expect("nonempty schedule");
        let detail = format!("open approximations tend to {} but ν(K) = {}", limit.to_wire(), vk.to_wire());
        return Some(fail("outer regularity", vec![entry("K", k, vk), entry("U_n", &u, vu)], detail));
    }
    None
}

fn superadditivity_case<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    s: &mut Sampler,
    pool: &[S],
) -> Option<ValidationReport<S>> {
    let space = mu.space();
    let count = 2 * (2 + s.index(3));
    let mut ends: Vec<S> = (0..count).map(|_| pool[s.index(pool.len())].clone()).collect();
    sort_dedup(&mut ends);
    let parts: Vec<IntervalSet<S>> =
        ends.chunks(2).filter(|c| c.len() == 2).map(|c| Interval::closed(c[0].clone(), c[1].clone()).into()).collect();
    let union = parts.iter().fold(IntervalSet::empty(), |acc, p| acc.union(p));
    let container = if s.chance(0.5) { union.expand_open(&S::ratio(1, 8), space) } else { union };
    let vc = eval_or_return!(mu, "A", &container);
    let mut sum = S::zero();
    let mut witness = vec![];
    for (i, p) in parts.iter().enumerate() {
        let v = eval_or_return!(mu, "C_i", p);
        sum = sum + v.clone();
        witness.push(entry(&format!("C_{}", i + 1), p, v));
    }
    if sum > vc {
        let detail = format!("sum of disjoint parts {} exceeds {}", sum.to_wire(), vc.to_wire());
        witness.push(entry("A", &container, vc));
        return Some(fail("superadditivity", witness, detail));
    }
    None
}

fn monotonicity_case<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    s: &mut Sampler,
    pool: &[S],
) -> Option<ValidationReport<S>> {
    let space = mu.space();
    let kind = if s.chance(0.5) { SetKind::Open } else { SetKind::Compact };
    let big = s.set(space, kind, pool);
    let small = big.intersect(&s.set(space, kind, pool));
    let vb = eval_or_return!(mu, "B", &big);
    let vs = eval_or_return!(mu, "A", &small);
    if vs > vb {
        let detail = format!("A ⊆ B but {} > {}", vs.to_wire(), vb.to_wire());
        return Some(fail("monotonicity", vec![entry("A", &small, vs), entry("B", &big, vb)], detail));
    }
    None
}

/// Searches pairs `K ⊆ U` (compact in open) for a violation of
/// `ν(U) ≤ ν(K) + ν(U ∖ K)`.
pub fn is_topological_measure<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    budget: usize,
    seed: u64,
) -> ValidationReport<S> {
    let space = mu.space().clone();
    let mut sampler = Sampler::new(seed);
    let pool = sampler.point_pool(&space, &mu.landmarks());
    let whole = space.whole();
    let mut cases = 0;

    let points = landmark_neighbourhood(&space, &mu.landmarks());
    let opens: Vec<IntervalSet<S>> = landmark_intervals(&space, &points)
        .into_iter()
        .filter_map(|c| {
            let (lo, hi) = c.hull()?;
            (lo < hi).then(|| IntervalSet::from(Interval::open(lo, hi)).intersect(&whole))
        })
        .chain(std::iter::once(whole.clone()))
        .collect();
    let compacts = landmark_intervals(&space, &points);
    let mut examined = 0;
    'outer: for u in opens.iter().rev() {
        for k in &compacts {
            examined += 1;
            if examined > LANDMARK_PAIR_LIMIT {
                break 'outer;
            }
            if !k.is_subset(u) {
                continue;
            }
            if let Some(report) = split_case(mu, u, k) {
                return report;
            }
            cases += 1;
        }
    }
    for _ in 0..budget {
        let mut s = sampler.fork();
        let u = s.set(&space, SetKind::Open, &pool);
        let k = u.intersect(&s.set(&space, SetKind::Compact, &pool));
        if !k.is_compact(&space) {
            continue;
        }
        if let Some(report) = split_case(mu, &u, &k) {
            return report;
        }
        cases += 1;
    }
    ValidationReport::Pass { cases }
}

fn split_case<S: Scalar, F: SetFunction<S> + ?Sized>(
    mu: &F,
    u: &IntervalSet<S>,
    k: &IntervalSet<S>,
) -> Option<ValidationReport<S>> {
    let rest = u.difference(k);
    let vu = eval_or_return!(mu, "U", u);
    let vk = eval_or_return!(mu, "K", k);
    let vr = eval_or_return!(mu, "U ∖ K", &rest);
    if vu > vk.clone() + vr.clone() {
        let detail = format!("{} > {} + {}", vu.to_wire(), vk.to_wire(), vr.to_wire());
        return Some(fail(
            "topological splitting",
            vec![entry("U", u, vu), entry("K", k, vk), entry("U ∖ K", &rest, vr)],
            detail,
        ));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn open(a: Rational, b: Rational) -> IntervalSet<Rational> {
        Interval::open(a, b).into()
    }

    fn closed(a: Rational, b: Rational) -> IntervalSet<Rational> {
        Interval::closed(a, b).into()
    }

    fn line_simple() -> Dtm<Rational> {
        Dtm::simple(Space::Line, q(0, 1), q(1, 1)).unwrap()
    }

    struct DisconnectedSimple(Space<Rational>);

    impl SetFunction<Rational> for DisconnectedSimple {
        fn space(&self) -> &Space<Rational> {
            &self.0
        }

        fn measure(&self, set: &IntervalSet<Rational>) -> Result<Rational> {
            let d = closed(q(0, 1), q(1, 1)).union(&closed(q(2, 1), q(3, 1)));
            Ok(if d.is_subset(set) { q(1, 1) } else { q(0, 1) })
        }

        fn landmarks(&self) -> Vec<Rational> {
            vec![q(0, 1), q(1, 1), q(2, 1), q(3, 1)]
        }
    }

    #[test]
    fn eval_examples() {
        let mu = line_simple();
        assert_eq!(mu.eval(&open(q(-1, 1), q(2, 1))).unwrap(), q(1, 1));
        assert_eq!(mu.eval(&open(q(0, 1), q(2, 1))).unwrap(), q(0, 1));
        let leb = Dtm::lebesgue(Space::Line, q(0, 1), q(1, 1)).unwrap();
        assert_eq!(leb.eval(&open(q(1, 4), q(3, 4))).unwrap(), q(1, 2));
        let combo = Dtm::combo(
            Space::Line,
            vec![(q(2, 1), line_simple()), (q(1, 1), Dtm::dirac(Space::Line, q(0, 1)).unwrap())],
        )
        .unwrap();
        assert_eq!(combo.eval(&closed(q(0, 1), q(1, 1))).unwrap(), q(3, 1));
    }

    #[test]
    fn eval_rejects_non_admissible_sets() {
        let half_open: IntervalSet<Rational> = Interval::bounded(q(0, 1), q(1, 1), false, true).unwrap().into();
        assert_eq!(line_simple().eval(&half_open), Err(Error::NotAdmissibleSet));
        let ray: IntervalSet<Rational> = Interval::above(q(0, 1), false).into();
        assert_eq!(line_simple().eval(&ray).unwrap(), q(1, 1));
        let gap: IntervalSet<Rational> = Interval::above(q(1, 2), false).into();
        assert_eq!(line_simple().eval(&gap).unwrap(), q(0, 1));
    }

    #[test]
    fn total_mass_examples() {
        assert_eq!(line_simple().total_mass(), q(1, 1));
        assert_eq!(Dtm::lebesgue(Space::Line, q(0, 1), q(1, 1)).unwrap().total_mass(), q(1, 1));
        let combo = Dtm::combo(
            Space::Line,
            vec![(q(2, 1), line_simple()), (q(3, 1), Dtm::dirac(Space::Line, q(5, 1)).unwrap())],
        )
        .unwrap();
        assert_eq!(combo.total_mass(), q(5, 1));
    }

    #[test]
    fn constructors_validate() {
        let space = Space::compact(q(0, 1), q(1, 1)).unwrap();
        assert_eq!(Dtm::dirac(space.clone(), q(2, 1)), Err(Error::NotContained));
        assert!(matches!(Dtm::simple(space.clone(), q(1, 1), q(0, 1)), Err(Error::InvalidInterval(_))));
        assert_eq!(Dtm::combo(space.clone(), vec![(q(1, 1), line_simple())]), Err(Error::SpaceMismatch));
        let d = Dtm::dirac(space.clone(), q(0, 1)).unwrap();
        assert!(matches!(Dtm::combo(space, vec![(q(-1, 1), d)]), Err(Error::InvalidMeasure(_))));
    }

    #[test]
    fn catalog_members_validate() {
        assert!(validate_dtm(&line_simple(), 200, 7).is_pass());
        assert!(validate_dtm(&Dtm::lebesgue(Space::Line, q(0, 1), q(1, 1)).unwrap(), 200, 7).is_pass());
        let space = Space::compact(q(0, 1), q(3, 1)).unwrap();
        let combo = Dtm::combo(
            space.clone(),
            vec![
                (q(1, 2), Dtm::simple(space.clone(), q(1, 1), q(2, 1)).unwrap()),
                (q(2, 1), Dtm::lebesgue(space.clone(), q(0, 1), q(3, 1)).unwrap()),
                (q(1, 1), Dtm::dirac(space.clone(), q(3, 1)).unwrap()),
            ],
        )
        .unwrap();
        assert!(validate_dtm(&combo, 200, 11).is_pass());
    }

    #[test]
    fn disconnected_simple_fails_with_witness() {
        match validate_dtm(&DisconnectedSimple(Space::Line), 50, 1) {
            ValidationReport::Fail { check, witness, .. } => {
                assert_eq!(check, "finite additivity on compact sets");
                assert_eq!(witness[0].set, closed(q(0, 1), q(1, 1)));
                assert_eq!(witness[1].set, closed(q(2, 1), q(3, 1)));
                assert_eq!(witness[2].value, q(1, 1));
                assert_eq!(witness[0].value.clone() + witness[1].value.clone(), q(0, 1));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn simple_is_not_topological() {
        let mu = line_simple();
        let u = open(q(-1, 1), q(2, 1));
        let k = closed(q(0, 1), q(1, 2));
        assert_eq!(mu.eval(&u).unwrap(), q(1, 1));
        assert_eq!(mu.eval(&k).unwrap(), q(0, 1));
        assert_eq!(mu.eval(&u.difference(&k)).unwrap(), q(0, 1));
        match is_topological_measure(&mu, 50, 3) {
            ValidationReport::Fail { witness, .. } => {
                let vals: Vec<_> = witness.iter().map(|w| mu.eval(&w.set).unwrap()).collect();
                assert!(vals[0] > vals[1].clone() + vals[2].clone());
                assert!(witness[1].set.is_subset(&witness[0].set));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn additive_members_are_topological() {
        assert!(is_topological_measure(&Dtm::lebesgue(Space::Line, q(0, 1), q(1, 1)).unwrap(), 200, 5).is_pass());
        assert!(is_topological_measure(&Dtm::dirac(Space::Line, q(1, 2)).unwrap(), 200, 5).is_pass());
    }

    #[test]
    fn linear_integral_of_additive_members() {
        let f = PwlFunction::hat(q(0, 1), q(1, 1), q(2, 1), q(2, 1)).unwrap();
        let leb = Dtm::lebesgue(Space::Line, q(0, 1), q(2, 1)).unwrap();
        assert_eq!(leb.linear_integral(&f).unwrap(), q(2, 1));
        assert_eq!(Dtm::dirac(Space::Line, q(1, 2)).unwrap().linear_integral(&f).unwrap(), q(1, 1));
        assert_eq!(line_simple().linear_integral(&f), Err(Error::NotLinear));
        assert!(!line_simple().is_structurally_additive());
    }

    #[test]
    fn display_is_readable() {
        let combo = Dtm::combo(
            Space::Line,
            vec![(q(2, 1), line_simple()), (q(1, 2), Dtm::dirac(Space::Line, q(0, 1)).unwrap())],
        )
        .unwrap();
        assert_eq!(combo.to_string(), "2·simple[0, 1] + 1/2·dirac(0)");
    }
}
