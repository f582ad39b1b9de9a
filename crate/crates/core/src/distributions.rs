//! Exact distribution functions `L₁, L₂, R₁, R₂` of a continuous piecewise-linear
//! function under a catalog measure, the right and left boundary measures
//! they generate, and the identities relating them.

use std::ops::Deref;

use crate::checks::{w, CheckReport};
use crate::error::{Error, Result};
use crate::interval_sets::{Interval, IntervalSet, Space};
use crate::measures::{Dtm, MeasureNode};
use crate::pwl_functions::{Direction, PwlFunction};
use crate::sampling::{Sampler, SetKind};
use crate::scalar::{sort_dedup, Scalar};

/// Breakpoint of a piecewise-affine function with jumps.
#[derive(Clone, Debug, PartialEq)]
pub struct Jump<S> {
    pub t: S,
    pub left: S,
    pub value: S,
    pub right: S,
}

/// Piecewise-affine function of one variable with finitely many jumps:
/// constant `base` before the first breakpoint, affine from each breakpoint's
/// right limit to the next one's left limit, constant after the last.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpFunction<S> {
    base: S,
    breakpoints: Vec<Jump<S>>,
}

impl<S: Scalar> JumpFunction<S> {
    pub fn constant(c: S) -> Self {
        JumpFunction { base: c, breakpoints: Vec::new() }
    }

    /// Single breakpoint at `t`, constant on either side.
    pub fn step(t: S, left: S, value: S, right: S) -> Self {
        JumpFunction { base: left.clone(), breakpoints: vec![Jump { t, left, value, right }] }
    }

    /// 0 before `lo`, `height` after `hi`, affine in between (`lo < hi`).
    pub fn ramp(lo: S, hi: S, height: S) -> Self {
        let z = S::zero();
        JumpFunction {
            base: z.clone(),
            breakpoints: vec![
                Jump { t: lo, left: z.clone(), value: z.clone(), right: z },
                Jump { t: hi, left: height.clone(), value: height.clone(), right: height },
            ],
        }
    }

    /// Builds from raw breakpoints; `base` must equal the first left limit.
    pub fn from_breakpoints(base: S, breakpoints: Vec<Jump<S>>) -> Result<Self> {
        if breakpoints.windows(2).any(|w| w[0].t >= w[1].t) {
            return Err(Error::InvalidFunction("breakpoints must be strictly increasing".into()));
        }
        if let Some(first) = breakpoints.first() {
            if first.left != base {
                return Err(Error::InvalidFunction("base differs from the first left limit".into()));
            }
        }
        let mut out = JumpFunction { base, breakpoints };
        out.simplify();
        Ok(out)
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn breakpoints(&self) -> &[Jump<S>] {
        &self.breakpoints
    }

    /// Value on `(t_last, ∞)`.
    pub fn tail(&self) -> &S {
        self.breakpoints.last().map_or(&self.base, |j| &j.right)
    }

    fn locate(&self, t: &S) -> std::result::Result<usize, usize> {
        self.breakpoints.binary_search_by(|j| j.t.partial_cmp(t).expect("comparable scalars"))
    }

    fn between(&self, idx: usize, t: &S) -> S {
        // `idx` is the insertion index of `t`, strictly between breakpoints
        if idx == 0 {
            return self.base.clone();
        }
        if idx == self.breakpoints.len() {
            return self.tail().clone();
        }
        let (p, q) = (&self.breakpoints[idx - 1], &self.breakpoints[idx]);
        p.right.clone() + (q.left.clone() - p.right.clone()) * (t.clone() - p.t.clone()) / (q.t.clone() - p.t.clone())
    }

    pub fn eval(&self, t: &S) -> S {
        match self.locate(t) {
            Ok(i) => self.breakpoints[i].value.clone(),
            Err(i) => self.between(i, t),
        }
    }

    pub fn left_limit(&self, t: &S) -> S {
        match self.locate(t) {
            Ok(i) => self.breakpoints[i].left.clone(),
            Err(i) => self.between(i, t),
        }
    }

    pub fn right_limit(&self, t: &S) -> S {
        match self.locate(t) {
            Ok(i) => self.breakpoints[i].right.clone(),
            Err(i) => self.between(i, t),
        }
    }

    pub fn breakpoint_ts(&self) -> Vec<S> {
        self.breakpoints.iter().map(|j| j.t.clone()).collect()
    }

    /// `Σ cᵢ·fᵢ + constant`.
    pub fn linear_combination(terms: &[(S, &JumpFunction<S>)], constant: S) -> Self {
        let mut ts: Vec<S> = terms.iter().flat_map(|(_, f)| f.breakpoint_ts()).collect();
        sort_dedup(&mut ts);
        let sum = |pick: &dyn Fn(&JumpFunction<S>) -> S| {
            terms.iter().fold(constant.clone(), |acc, (c, f)| acc + c.clone() * pick(f))
        };
        let base = sum(&|f| f.base.clone());
        let breakpoints = ts
            .into_iter()
            .map(|t| Jump {
                left: sum(&|f| f.left_limit(&t)),
                value: sum(&|f| f.eval(&t)),
                right: sum(&|f| f.right_limit(&t)),
                t,
            })
            .collect();
        let mut out = JumpFunction { base, breakpoints };
        out.simplify();
        out
    }

    /// Drops breakpoints where the function is continuous and affine across.
    fn simplify(&mut self) {
        let old = std::mem::take(&mut self.breakpoints);
        let n = old.len();
        let mut kept: Vec<Jump<S>> = Vec::with_capacity(n);
        for i in 0..n {
            let j = &old[i];
            let continuous = j.left == j.value && j.value == j.right;
            let removable = continuous && {
                let slope_in = match kept.last() {
                    None => S::zero(),
                    Some(p) => (j.left.clone() - p.right.clone()) / (j.t.clone() - p.t.clone()),
                };
                let slope_out = match old.get(i + 1) {
                    None => S::zero(),
                    Some(q) => (q.left.clone() - j.right.clone()) / (q.t.clone() - j.t.clone()),
                };
                slope_in == slope_out
            };
            if !removable {
                kept.push(j.clone());
            }
        }
        self.breakpoints = kept;
    }

    pub fn is_monotone(&self, direction: Direction) -> bool {
        let ok = |a: &S, b: &S| match direction {
            Direction::NonDecreasing => a <= b,
            Direction::NonIncreasing => a >= b,
        };
        let mut prev = self.base.clone();
        for j in &self.breakpoints {
            if !(ok(&prev, &j.left) && ok(&j.left, &j.value) && ok(&j.value, &j.right)) {
                return false;
            }
            prev = j.right.clone();
        }
        true
    }

    /// Exact `∫_a^b g(t) dt`.
    pub fn integral_over(&self, a: &S, b: &S) -> S {
        if a >= b {
            return S::zero();
        }
        let mut ts = vec![a.clone(), b.clone()];
        ts.extend(self.breakpoints.iter().map(|j| j.t.clone()).filter(|t| a < t && t < b));
        sort_dedup(&mut ts);
        ts.windows(2)
            .map(|w| (self.right_limit(&w[0]) + self.left_limit(&w[1])) * (w[1].clone() - w[0].clone()) / S::two())
            .fold(S::zero(), |x, y| x + y)
    }

    /// Points where the left and right limits differ.
    pub fn discontinuities(&self) -> Vec<S> {
        self.breakpoints.iter().filter(|j| j.left != j.right).map(|j| j.t.clone()).collect()
    }
}

/// A [`JumpFunction`] known to be monotone in the recorded direction.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonePwFunction<S> {
    direction: Direction,
    inner: JumpFunction<S>,
}

impl<S: Scalar> MonotonePwFunction<S> {
    pub fn new(direction: Direction, inner: JumpFunction<S>) -> Result<Self> {
        if !inner.is_monotone(direction) {
            return Err(Error::Invariant(format!("function is not {direction:?}")));
        }
        Ok(MonotonePwFunction { direction, inner })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn as_jump_function(&self) -> &JumpFunction<S> {
        &self.inner
    }

    /// Lebesgue–Stieltjes measure of the function (negative masses when
    /// non-increasing).
    pub fn stieltjes_measure(&self) -> BoundaryMeasure<S> {
        BoundaryMeasure::from_jump_function(&self.inner)
    }
}

impl<S> Deref for MonotonePwFunction<S> {
    type Target = JumpFunction<S>;

    fn deref(&self) -> &JumpFunction<S> {
        &self.inner
    }
}

/// Finite signed measure on the line: point masses plus a piecewise-constant
/// density. The right and left measures are the nonnegative instances.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMeasure<S> {
    atoms: Vec<(S, S)>,
    density: Vec<(S, S, S)>,
}

impl<S: Scalar> BoundaryMeasure<S> {
    /// Canonical form: atoms sorted with nonzero masses, density pieces sorted,
    /// disjoint, nonzero, and merged where adjacent pieces agree.
    pub fn new(mut atoms: Vec<(S, S)>, mut density: Vec<(S, S, S)>) -> Result<Self> {
        atoms.retain(|(_, m)| !m.is_zero());
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable scalars"));
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMeasure("atoms must have distinct locations".into()));
        }
        density.retain(|(lo, hi, v)| lo < hi && !v.is_zero());
        density.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable scalars"));
        let mut merged: Vec<(S, S, S)> = Vec::with_capacity(density.len());
        for piece in density {
            if let Some(last) = merged.last_mut() {
                if piece.0 < last.1 {
                    return Err(Error::InvalidMeasure("density pieces overlap".into()));
                }
                if piece.0 == last.1 && piece.2 == last.2 {
                    last.1 = piece.1;
                    continue;
                }
            }
            merged.push(piece);
        }
        Ok(BoundaryMeasure { atoms, density: merged })
    }

    pub fn zero() -> Self {
        BoundaryMeasure { atoms: Vec::new(), density: Vec::new() }
    }

    pub fn dirac(x: S, mass: S) -> Self {
        BoundaryMeasure::new(vec![(x, mass)], Vec::new()).expect("single atom")
    }

    pub fn uniform(lo: S, hi: S, density: S) -> Self {
        BoundaryMeasure::new(Vec::new(), vec![(lo, hi, density)]).expect("single piece")
    }

    pub fn from_jump_function(g: &JumpFunction<S>) -> Self {
        let atoms = g.breakpoints().iter().map(|j| (j.t.clone(), j.right.clone() - j.left.clone())).collect();
        let density = g
            .breakpoints()
            .windows(2)
            .map(|p| {
                let (a, b) = (&p[0], &p[1]);
                let slope = (b.left.clone() - a.right.clone()) / (b.t.clone() - a.t.clone());
                (a.t.clone(), b.t.clone(), slope)
            })
            .collect();
        BoundaryMeasure::new(atoms, density).expect("breakpoints are ordered")
    }

    pub fn atoms(&self) -> &[(S, S)] {
        &self.atoms
    }

    pub fn density(&self) -> &[(S, S, S)] {
        &self.density
    }

    pub fn total(&self) -> S {
        let atoms = self.atoms.iter().fold(S::zero(), |acc, (_, m)| acc + m.clone());
        self.density.iter().fold(atoms, |acc, (lo, hi, v)| acc + v.clone() * (hi.clone() - lo.clone()))
    }

    /// Smallest closed interval carrying the measure.
    pub fn support_hull(&self) -> Option<(S, S)> {
        let mut points: Vec<S> = self.atoms.iter().map(|(x, _)| x.clone()).collect();
        for (lo, hi, _) in &self.density {
            points.push(lo.clone());
            points.push(hi.clone());
        }
        sort_dedup(&mut points);
        Some((points.first()?.clone(), points.last()?.clone()))
    }

    pub fn measure_of(&self, set: &IntervalSet<S>) -> S {
        let atoms = self.atoms.iter().filter(|(x, _)| set.contains(x)).fold(S::zero(), |acc, (_, m)| acc + m.clone());
        self.density.iter().fold(atoms, |acc, (lo, hi, v)| {
            let piece: IntervalSet<S> = Interval::closed(lo.clone(), hi.clone()).into();
            acc + v.clone() * piece.intersect(set).length().expect("bounded")
        })
    }

    /// `∫ φ dm` for a profile defined on the support hull.
    pub fn stieltjes_integral(&self, phi: &PwlFunction<S>) -> Result<S> {
        if let (Some((lo, hi)), Space::Compact { .. }) = (self.support_hull(), phi.space()) {
            if !phi.space().contains(&lo) || !phi.space().contains(&hi) {
                return Err(Error::DomainTooSmall(format!("[{}, {}]", lo.to_wire(), hi.to_wire())));
            }
        }
        let atoms = self.atoms.iter().fold(S::zero(), |acc, (x, m)| acc + m.clone() * phi.value_at(x));
        Ok(self.density.iter().fold(atoms, |acc, (lo, hi, v)| acc + v.clone() * phi.integral_over(lo, hi)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.atoms.iter().all(|(_, m)| !m.is_negative()) && self.density.iter().all(|(_, _, v)| !v.is_negative())
    }
}

/// The four distribution functions of `f` under `μ` with their common data.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionBundle<S> {
    pub l1: MonotonePwFunction<S>,
    pub l2: MonotonePwFunction<S>,
    pub r1: MonotonePwFunction<S>,
    pub r2: MonotonePwFunction<S>,
    pub mass: S,
    /// `[a, b]` containing the closure of `f(X)`.
    pub range_hull: (S, S),
    /// Points where `R₂` is not left-continuous.
    pub e: Vec<S>,
    /// Points where `L₂` is not right-continuous.
    pub e1: Vec<S>,
}

struct Quad<S> {
    l1: Vec<(S, JumpFunction<S>)>,
    l2: Vec<(S, JumpFunction<S>)>,
    r1: Vec<(S, JumpFunction<S>)>,
    r2: Vec<(S, JumpFunction<S>)>,
    constant_r: S,
}

impl<S: Scalar> Quad<S> {
    fn step_pair(&mut self, c: &S, low: &S, high: &S) {
        let (z, o) = (S::zero(), S::one());
        self.l1.push((c.clone(), JumpFunction::step(high.clone(), z.clone(), z.clone(), o.clone())));
        self.l2.push((c.clone(), JumpFunction::step(high.clone(), z.clone(), o.clone(), o.clone())));
        self.r1.push((c.clone(), JumpFunction::step(low.clone(), o.clone(), z.clone(), z.clone())));
        self.r2.push((c.clone(), JumpFunction::step(low.clone(), o.clone(), o, z)));
    }
}

fn collect_leaf<S: Scalar>(node: &MeasureNode<S>, coeff: &S, f: &PwlFunction<S>, quad: &mut Quad<S>) {
    match node {
        MeasureNode::Dirac(x) => {
            let y = f.value_at(x);
            quad.step_pair(coeff, &y, &y);
        }
        MeasureNode::SimpleContains { lo, hi } => {
            let (m, big_m) = f
                .restricted_extrema(&Interval::closed(lo.clone(), hi.clone()).into())
                .expect("D is a nonempty compact subset of the space");
            quad.step_pair(coeff, &m, &big_m);
        }
        MeasureNode::LebesgueOn { lo, hi } => {
            if lo == hi {
                return;
            }
            let mut xs = vec![lo.clone(), hi.clone()];
            xs.extend(f.breakpoint_xs().into_iter().filter(|x| lo < x && x < hi));
            sort_dedup(&mut xs);
            let (z, o) = (S::zero(), S::one());
            for seg in xs.windows(2) {
                let h = seg[1].clone() - seg[0].clone();
                let (y0, y1) = (f.value_at(&seg[0]), f.value_at(&seg[1]));
                let c = coeff.clone() * h;
                if y0 == y1 {
                    quad.l1.push((c.clone(), JumpFunction::step(y0.clone(), z.clone(), z.clone(), o.clone())));
                    quad.l2.push((c, JumpFunction::step(y0, z.clone(), o.clone(), o.clone())));
                } else {
                    let (a, b) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
                    let ramp = JumpFunction::ramp(a, b, S::one());
                    quad.l1.push((c.clone(), ramp.clone()));
                    quad.l2.push((c, ramp));
                }
            }
            // R₁ = |I| − L₂ and R₂ = |I| − L₁ on this leaf
            let len = coeff.clone() * (hi.clone() - lo.clone());
            let first_new = quad.l1.len() - (xs.len() - 1);
            for k in first_new..quad.l1.len() {
                let (c1, g1) = quad.l1[k].clone();
                let (c2, g2) = quad.l2[k].clone();
                quad.r1.push((-c2, g2));
                quad.r2.push((-c1, g1));
            }
            quad.constant_r = quad.constant_r.clone() + len;
        }
        MeasureNode::Combo(terms) => {
            for (c, m) in terms {
                collect_leaf(m, &(coeff.clone() * c.clone()), f, quad);
            }
        }
    }
}

fn combine<S: Scalar>(terms: &[(S, JumpFunction<S>)], constant: S) -> JumpFunction<S> {
    let refs: Vec<(S, &JumpFunction<S>)> = terms.iter().map(|(c, g)| (c.clone(), g)).collect();
    JumpFunction::linear_combination(&refs, constant)
}

impl<S: Scalar> DistributionBundle<S> {
    pub fn compute(mu: &Dtm<S>, f: &PwlFunction<S>) -> Result<Self> {
        if mu.space() != f.space() {
            return Err(Error::SpaceMismatch);
        }
        let mut quad = Quad { l1: vec![], l2: vec![], r1: vec![], r2: vec![], constant_r: S::zero() };
        collect_leaf(mu.node(), &S::one(), f, &mut quad);
        let l1 = MonotonePwFunction::new(Direction::NonDecreasing, combine(&quad.l1, S::zero()))?;
        let l2 = MonotonePwFunction::new(Direction::NonDecreasing, combine(&quad.l2, S::zero()))?;
        let r1 = MonotonePwFunction::new(Direction::NonIncreasing, combine(&quad.r1, quad.constant_r.clone()))?;
        let r2 = MonotonePwFunction::new(Direction::NonIncreasing, combine(&quad.r2, quad.constant_r))?;
        let e = r2.breakpoints().iter().filter(|j| j.left != j.value).map(|j| j.t.clone()).collect();
        let e1 = l2.breakpoints().iter().filter(|j| j.value != j.right).map(|j| j.t.clone()).collect();
        let bundle = DistributionBundle { l1, l2, r1, r2, mass: mu.total_mass(), range_hull: f.range_bounds(), e, e1 };
        bundle.check_invariants()?;
        Ok(bundle)
    }

    /// One-sided continuity, `L₁ ≤ L₂`, `R₁ ≤ R₂`, boundary values, and `L₁ + R₁ ≤ μ(X)`.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(what.to_string()));
        if self.l1.breakpoints().iter().any(|j| j.left != j.value) {
            return fail("L1 is not left-continuous");
        }
        if self.r1.breakpoints().iter().any(|j| j.value != j.right) {
            return fail("R1 is not right-continuous");
        }
        let mut ts = self.l1.breakpoint_ts();
        for g in [&self.l2, &self.r1, &self.r2] {
            ts.extend(g.breakpoint_ts());
        }
        sort_dedup(&mut ts);
        let probes = ts.iter().flat_map(|t| {
            [
                (self.l1.left_limit(t), self.l2.left_limit(t), self.r1.left_limit(t), self.r2.left_limit(t)),
                (self.l1.eval(t), self.l2.eval(t), self.r1.eval(t), self.r2.eval(t)),
                (self.l1.right_limit(t), self.l2.right_limit(t), self.r1.right_limit(t), self.r2.right_limit(t)),
            ]
        });
        for (l1, l2, r1, r2) in probes {
            if l1 > l2 || r1 > r2 {
                return fail("L1 ≤ L2 or R1 ≤ R2 violated");
            }
            if l1 + r1 > self.mass {
                return fail("L1 + R1 exceeds the total mass");
            }
        }
        let (a, b) = &self.range_hull;
        if !self.l1.eval(a).is_zero() || self.l2.eval(b) != self.mass {
            return fail("L boundary values");
        }
        if self.r2.eval(a) != self.mass || !self.r1.eval(b).is_zero() {
            return fail("R boundary values");
        }
        Ok(())
    }

    /// Lebesgue–Stieltjes measure of `−R₁`.
    pub fn right_measure(&self) -> BoundaryMeasure<S> {
        BoundaryMeasure::from_jump_function(&JumpFunction::linear_combination(&[(-S::one(), &self.r1)], S::zero()))
    }

    /// Lebesgue–Stieltjes measure of `L₁`.
    pub fn left_measure(&self) -> BoundaryMeasure<S> {
        BoundaryMeasure::from_jump_function(&self.l1)
    }

    /// All breakpoints of the four functions together with the hull ends.
    pub fn breakpoints(&self) -> Vec<S> {
        let mut ts = vec![self.range_hull.0.clone(), self.range_hull.1.clone()];
        for g in [&self.l1, &self.l2, &self.r1, &self.r2] {
            ts.extend(g.breakpoint_ts());
        }
        sort_dedup(&mut ts);
        ts
    }

    /// Rows `(t, L1, L2, R1, R2)` at every breakpoint and every midpoint
    /// between consecutive breakpoints.
    pub fn table(&self) -> Vec<[S; 5]> {
        let ts = self.breakpoints();
        let mut points = Vec::with_capacity(2 * ts.len());
        for (i, t) in ts.iter().enumerate() {
            points.push(t.clone());
            if let Some(next) = ts.get(i + 1) {
                points.push((t.clone() + next.clone()) / S::two());
            }
        }
        points
            .into_iter()
            .map(|t| [t.clone(), self.l1.eval(&t), self.l2.eval(&t), self.r1.eval(&t), self.r2.eval(&t)])
            .collect()
    }
}

/// Outcome of the `r = l` criterion.
#[derive(Clone, Debug, PartialEq)]
pub struct RlVerdict<S> {
    pub equal: bool,
    /// Open interval on which `L₁ + R₁ < μ(X)` when not equal.
    pub witness: Option<(S, S)>,
}

/// Whether `L₁ + R₁ = μ(X)` except on a finite set.
pub fn rl_equal_criterion<S: Scalar>(bundle: &DistributionBundle<S>) -> RlVerdict<S> {
    let h = JumpFunction::linear_combination(&[(S::one(), &bundle.l1), (S::one(), &bundle.r1)], -bundle.mass.clone());
    let bps = h.breakpoints();
    let gap = |i: usize| -> (S, S) {
        let t = bps[i].t.clone();
        match bps.get(i + 1) {
            Some(next) => (t, next.t.clone()),
            None => (t.clone(), t + S::one()),
        }
    };
    if !h.base().is_zero() {
        let t0 = bps.first().map_or(S::zero(), |j| j.t.clone());
        return RlVerdict { equal: false, witness: Some((t0.clone() - S::one(), t0)) };
    }
    for (i, j) in bps.iter().enumerate() {
        if !j.left.is_zero() {
            let lo = if i == 0 { j.t.clone() - S::one() } else { bps[i - 1].t.clone() };
            return RlVerdict { equal: false, witness: Some((lo, j.t.clone())) };
        }
        if !j.right.is_zero() {
            return RlVerdict { equal: false, witness: Some(gap(i)) };
        }
    }
    RlVerdict { equal: true, witness: None }
}

/// Tail identities `r((t,∞)) = μ(f⁻¹((t,∞)))`, `l((−∞,t)) = μ(f⁻¹((−∞,t)))`
/// (and the closed versions off `E`, `E₁`) on every breakpoint and offset,
/// followed by `μ(f⁻¹(A)) ≤ r(A), l(A)` on sampled open and closed `A`. For
/// additive measures the pushforward identity `m(A) = μ(f⁻¹(A))` is also
/// checked on open `A` and on closed `A` (avoiding 0 on the line).
pub fn pushforward_check<S: Scalar>(
    mu: &Dtm<S>,
    f: &PwlFunction<S>,
    bundle: &DistributionBundle<S>,
    cases: usize,
    seed: u64,
) -> CheckReport {
    const NAME: &str = "pushforward";
    let r = bundle.right_measure();
    let l = bundle.left_measure();
    let mut count = 0;
    let mut probes = bundle.breakpoints();
    for t in bundle.breakpoints() {
        probes.push(t.clone() - S::half());
        probes.push(t + S::half());
    }
    sort_dedup(&mut probes);
    for t in &probes {
        let tails: [(&str, IntervalSet<S>, bool, &BoundaryMeasure<S>); 4] = [
            ("(t,∞)", Interval::above(t.clone(), true).into(), true, &r),
            ("[t,∞)", Interval::above(t.clone(), false).into(), !bundle.e.contains(t), &r),
            ("(−∞,t)", Interval::below(t.clone(), true).into(), true, &l),
            ("(−∞,t]", Interval::below(t.clone(), false).into(), !bundle.e1.contains(t), &l),
        ];
        for (label, a, applies, m) in tails {
            if !applies {
                continue;
            }
            let lhs = m.measure_of(&a);
            let rhs = mu.eval(&f.preimage(&a)).expect("preimages of open and closed sets are admissible");
            count += 1;
            if lhs != rhs {
                return CheckReport::fail(
                    NAME,
                    count,
                    vec![w("t", t.to_wire()), w("set", label), w("boundary", lhs.to_wire()), w("mu", rhs.to_wire())],
                    "tail identity violated",
                );
            }
        }
    }

    let additive = mu.is_structurally_additive();
    let mut sampler = Sampler::new(seed);
    let mut landmarks: Vec<S> = f.nodes().iter().map(|(_, y)| y.clone()).collect();
    landmarks.extend(bundle.breakpoints());
    let pool = sampler.point_pool(&Space::Line, &landmarks);
    for _ in 0..cases {
        let mut s = sampler.fork();
        let (a, open) = if s.chance(0.15) {
            let t = pool[s.index(pool.len())].clone();
            let ray = if s.chance(0.5) { Interval::above(t, false) } else { Interval::below(t, false) };
            (IntervalSet::from(ray), false)
        } else if s.chance(0.5) {
            (s.set(&Space::Line, SetKind::Open, &pool), true)
        } else {
            (s.set(&Space::Line, SetKind::Compact, &pool), false)
        };
        let pre = f.preimage(&a);
        let value = match mu.eval(&pre) {
            Ok(v) => v,
            Err(e) => {
                return CheckReport::fail(NAME, count, vec![w("A", &a), w("preimage", &pre)], e.to_string());
            }
        };
        let (ra, la) = (r.measure_of(&a), l.measure_of(&a));
        count += 1;
        let witness =
            || vec![w("A", &a), w("mu(f^-1(A))", value.to_wire()), w("r(A)", ra.to_wire()), w("l(A)", la.to_wire())];
        if value > ra || value > la {
            return CheckReport::fail(NAME, count, witness(), "μ(f⁻¹(A)) exceeds a boundary measure");
        }
        let zero_excluded = f.space().is_compact() || !a.contains(&S::zero());
        if additive && (open || zero_excluded) && (value != ra || value != la) {
            return CheckReport::fail(NAME, count, witness(), "pushforward identity fails for an additive measure");
        }
    }
    CheckReport::pass(NAME, count)
}

/// `∫_{[a,b]} h(x±) dm_g`; `right` selects right limits of `h` at atoms.
fn stieltjes_over<S: Scalar>(h: &JumpFunction<S>, right: bool, g: &JumpFunction<S>, a: &S, b: &S) -> S {
    let mut ts = vec![a.clone(), b.clone()];
    ts.extend(g.breakpoint_ts().into_iter().chain(h.breakpoint_ts()).filter(|t| a < t && t < b));
    sort_dedup(&mut ts);
    let atoms = ts.iter().fold(S::zero(), |acc, t| {
        let jump = g.right_limit(t) - g.left_limit(t);
        let side = if right { h.right_limit(t) } else { h.left_limit(t) };
        acc + jump * side
    });
    // on each open piece g is affine and h is affine, so the trapezoid rule is exact
    ts.windows(2).fold(atoms, |acc, p| {
        let rise = g.left_limit(&p[1]) - g.right_limit(&p[0]);
        acc + rise * (h.right_limit(&p[0]) + h.left_limit(&p[1])) / S::two()
    })
}

/// Integration by parts for Lebesgue–Stieltjes integrals over `[a, b]`:
/// `∫ G(x⁺) dm_F + ∫ F(x⁻) dm_G = F(b⁺)G(b⁺) − F(a⁻)G(a⁻)`.
pub fn integration_by_parts_check<S: Scalar>(
    f: &MonotonePwFunction<S>,
    g: &MonotonePwFunction<S>,
    a: &S,
    b: &S,
) -> CheckReport {
    const NAME: &str = "integration by parts";
    let lhs = stieltjes_over(g, true, f, a, b) + stieltjes_over(f, false, g, a, b);
    let rhs = f.right_limit(b) * g.right_limit(b) - f.left_limit(a) * g.left_limit(a);
    if lhs == rhs {
        CheckReport::pass(NAME, 1)
    } else {
        CheckReport::fail(NAME, 1, vec![w("lhs", lhs.to_wire()), w("rhs", rhs.to_wire())], "sides differ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn hat() -> (Dtm<Rational>, PwlFunction<Rational>) {
        let mu = Dtm::simple(Space::Line, q(0, 1), q(1, 1)).unwrap();
        let f = PwlFunction::hat(q(-1, 1), q(0, 1), q(1, 1), q(1, 1)).unwrap();
        (mu, f)
    }

    fn plateau() -> (Dtm<Rational>, PwlFunction<Rational>) {
        let mu = Dtm::simple(Space::Line, q(1, 1), q(2, 1)).unwrap();
        let f = PwlFunction::on_line(vec![
            (q(-1, 1), q(0, 1)),
            (q(0, 1), q(2, 1)),
            (q(1, 1), q(1, 1)),
            (q(2, 1), q(1, 1)),
            (q(3, 1), q(0, 1)),
        ])
        .unwrap();
        (mu, f)
    }

    fn lebesgue_id() -> (Dtm<Rational>, PwlFunction<Rational>) {
        let space = Space::compact(q(0, 1), q(1, 1)).unwrap();
        (Dtm::lebesgue(space, q(0, 1), q(1, 1)).unwrap(), PwlFunction::identity(q(0, 1), q(1, 1)).unwrap())
    }

    #[test]
    fn hat_step_functions() {
        let (mu, f) = hat();
        let b = DistributionBundle::compute(&mu, &f).unwrap();
        assert_eq!(b.l1.eval(&q(1, 1)), q(0, 1));
        assert_eq!(b.l1.eval(&q(3, 2)), q(1, 1));
        assert_eq!(b.r1.eval(&q(-1, 2)), q(1, 1));
        assert_eq!(b.r1.eval(&q(0, 1)), q(0, 1));
        assert_eq!(b.left_measure(), BoundaryMeasure::dirac(q(1, 1), q(1, 1)));
        assert_eq!(b.right_measure(), BoundaryMeasure::dirac(q(0, 1), q(1, 1)));
        let v = rl_equal_criterion(&b);
        assert!(!v.equal);
        assert_eq!(v.witness, Some((q(0, 1), q(1, 1))));
    }

    #[test]
    fn plateau_step_functions() {
        let (mu, f) = plateau();
        let b = DistributionBundle::compute(&mu, &f).unwrap();
        assert_eq!(b.l1.eval(&q(1, 1)), q(0, 1));
        assert_eq!(b.l1.eval(&q(11, 10)), q(1, 1));
        assert_eq!(b.r1.eval(&q(9, 10)), q(1, 1));
        assert_eq!(b.r1.eval(&q(1, 1)), q(0, 1));
        assert_eq!(b.left_measure(), BoundaryMeasure::dirac(q(1, 1), q(1, 1)));
        assert_eq!(b.right_measure(), b.left_measure());
        assert!(rl_equal_criterion(&b).equal);
    }

    #[test]
    fn lebesgue_identity_bundle() {
        let (mu, f) = lebesgue_id();
        let b = DistributionBundle::compute(&mu, &f).unwrap();
        for k in 0..=8 {
            let t = q(k, 8);
            assert_eq!(b.r1.eval(&t), q(1, 1) - t.clone());
            assert_eq!(b.l1.eval(&t), t);
        }
        let uniform = BoundaryMeasure::uniform(q(0, 1), q(1, 1), q(1, 1));
        assert_eq!(b.right_measure(), uniform);
        assert_eq!(b.left_measure(), uniform);
        assert!(rl_equal_criterion(&b).equal);
    }

    #[test]
    fn measure_of_and_stieltjes_examples() {
        let d0 = BoundaryMeasure::dirac(q(0, 1), q(1, 1));
        assert_eq!(d0.measure_of(&Interval::open(q(-1, 1), q(1, 1)).into()), q(1, 1));
        let id = PwlFunction::identity(q(-2, 1), q(2, 1)).unwrap();
        assert_eq!(BoundaryMeasure::dirac(q(1, 1), q(1, 1)).stieltjes_integral(&id).unwrap(), q(1, 1));
        let uniform = BoundaryMeasure::uniform(q(0, 1), q(1, 1), q(1, 1));
        assert_eq!(uniform.stieltjes_integral(&id).unwrap(), q(1, 2));
        let short = PwlFunction::identity(q(0, 1), q(1, 2)).unwrap();
        assert!(matches!(uniform.stieltjes_integral(&short), Err(Error::DomainTooSmall(_))));
    }

    #[test]
    fn pushforward_examples() {
        let (mu, f) = hat();
        let b = DistributionBundle::compute(&mu, &f).unwrap();
        let a: IntervalSet<Rational> = Interval::open(q(0, 1), q(1, 1)).into();
        assert_eq!(mu.eval(&f.preimage(&a)).unwrap(), q(0, 1));
        assert_eq!(b.right_measure().measure_of(&a), q(0, 1));
        assert!(pushforward_check(&mu, &f, &b, 200, 3).is_pass());

        let (mu, f) = lebesgue_id();
        let b = DistributionBundle::compute(&mu, &f).unwrap();
        let a: IntervalSet<Rational> = Interval::open(q(1, 4), q(1, 2)).into();
        assert_eq!(mu.eval(&f.preimage(&a)).unwrap(), q(1, 4));
        assert_eq!(b.right_measure().measure_of(&a), q(1, 4));
        assert!(pushforward_check(&mu, &f, &b, 200, 3).is_pass());

        let mu = Dtm::dirac(Space::Line, q(1, 2)).unwrap();
        let f = PwlFunction::hat(q(-1, 1), q(0, 1), q(1, 1), q(1, 1)).unwrap();
        let b = DistributionBundle::compute(&mu, &f).unwrap();
        assert!(pushforward_check(&mu, &f, &b, 200, 3).is_pass());
    }

    fn step_at_zero() -> MonotonePwFunction<Rational> {
        MonotonePwFunction::new(Direction::NonDecreasing, JumpFunction::step(q(0, 1), q(0, 1), q(1, 1), q(1, 1)))
            .unwrap()
    }

    #[test]
    fn integration_by_parts_examples() {
        let s = step_at_zero();
        assert!(integration_by_parts_check(&s, &s, &q(-1, 1), &q(1, 1)).is_pass());
        let ramp =
            MonotonePwFunction::new(Direction::NonDecreasing, JumpFunction::ramp(q(0, 1), q(1, 1), q(1, 1))).unwrap();
        assert_eq!(stieltjes_over(&ramp, true, &ramp, &q(0, 1), &q(1, 1)), q(1, 2));
        assert!(integration_by_parts_check(&ramp, &ramp, &q(0, 1), &q(1, 1)).is_pass());
        let c = MonotonePwFunction::new(Direction::NonDecreasing, JumpFunction::constant(q(3, 1))).unwrap();
        assert!(integration_by_parts_check(&ramp, &c, &q(-1, 2), &q(2, 1)).is_pass());
    }

    #[test]
    fn jump_function_algebra() {
        let g = JumpFunction::linear_combination(
            &[
                (q(1, 1), &JumpFunction::ramp(q(0, 1), q(1, 1), q(1, 1))),
                (q(1, 1), &JumpFunction::ramp(q(1, 1), q(2, 1), q(1, 1))),
            ],
            q(0, 1),
        );
        // the middle breakpoint is affine across and disappears
        assert_eq!(g.breakpoint_ts(), vec![q(0, 1), q(2, 1)]);
        assert_eq!(g.integral_over(&q(0, 1), &q(3, 1)), q(4, 1));
        assert!(g.is_monotone(Direction::NonDecreasing));
    }
}
