//! Continuous piecewise-linear functions with exact breakpoints.
//!
//! On the line a function is compactly supported: it is zero outside
//! `[x_first, x_last]`, and the empty node list is the zero function. On a
//! compact space `[a, b]` the nodes span exactly `[a, b]`. Every constructor
//! simplifies the node list (collinear interior nodes and redundant zero
//! nodes are dropped), so structural equality is equality of functions.

use std::fmt;

use crate::error::{Error, Result};
use crate::interval_sets::{Interval, IntervalSet, Space};
use crate::scalar::{max_of, min_of, sort_dedup, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PwlFunction<S> {
    space: Space<S>,
    nodes: Vec<(S, S)>,
}

impl<S: Scalar> PwlFunction<S> {
    pub fn new(space: Space<S>, nodes: Vec<(S, S)>) -> Result<Self> {
        if nodes.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidFunction("breakpoints must be strictly increasing".into()));
        }
        match &space {
            Space::Line => {
                if let (Some(first), Some(last)) = (nodes.first(), nodes.last()) {
                    if !first.1.is_zero() || !last.1.is_zero() {
                        return Err(Error::InvalidFunction(
                            "a function on the line must vanish at its outer breakpoints".into(),
                        ));
                    }
                }
            }
            Space::Compact { a, b } => {
                let ok =
                    nodes.len() >= 2 && nodes.first().map(|n| &n.0) == Some(a) && nodes.last().map(|n| &n.0) == Some(b);
                if !ok {
                    return Err(Error::InvalidFunction(
                        "breakpoints must start at a and end at b on a compact space".into(),
                    ));
                }
            }
        }
        let mut f = PwlFunction { space, nodes };
        f.simplify();
        Ok(f)
    }

    /// Function on the line through the given nodes.
    pub fn on_line(nodes: Vec<(S, S)>) -> Result<Self> {
        Self::new(Space::Line, nodes)
    }

    pub fn zero(space: Space<S>) -> Self {
        match &space {
            Space::Line => PwlFunction { space, nodes: Vec::new() },
            Space::Compact { a, b } => {
                let nodes = vec![(a.clone(), S::zero()), (b.clone(), S::zero())];
                PwlFunction { space, nodes }
            }
        }
    }

    /// Constant function on a compact space.
    pub fn constant(space: Space<S>, c: S) -> Result<Self> {
        match &space {
            Space::Line if c.is_zero() => Ok(Self::zero(space)),
            Space::Line => Err(Error::InvalidFunction("nonzero constants are not compactly supported".into())),
            Space::Compact { a, b } => {
                let nodes = vec![(a.clone(), c.clone()), (b.clone(), c)];
                Self::new(space.clone(), nodes)
            }
        }
    }

    /// The identity `x ↦ x` on the compact space `[a, b]`.
    pub fn identity(a: S, b: S) -> Result<Self> {
        let space = Space::compact(a.clone(), b.clone())?;
        Self::new(space, vec![(a.clone(), a), (b.clone(), b)])
    }

    /// Tent on the line: zero outside `(left, right)`, `height` at `peak`.
    pub fn hat(left: S, peak: S, right: S, height: S) -> Result<Self> {
        Self::on_line(vec![(left, S::zero()), (peak, height), (right, S::zero())])
    }

    pub fn space(&self) -> &Space<S> {
        &self.space
    }

    pub fn nodes(&self) -> &[(S, S)] {
        &self.nodes
    }

    fn simplify(&mut self) {
        if self.space == Space::Line {
            while self.nodes.len() >= 2 && self.nodes[1].1.is_zero() {
                self.nodes.remove(0);
            }
            while self.nodes.len() >= 2 && self.nodes[self.nodes.len() - 2].1.is_zero() {
                self.nodes.pop();
            }
            if self.nodes.len() == 1 {
                self.nodes.clear();
            }
        }
        let mut out: Vec<(S, S)> = Vec::with_capacity(self.nodes.len());
        for node in self.nodes.drain(..) {
            while out.len() >= 2 {
                let (x0, y0) = &out[out.len() - 2];
                let (x1, y1) = &out[out.len() - 1];
                let lhs = (y1.clone() - y0.clone()) * (node.0.clone() - x1.clone());
                let rhs = (node.1.clone() - y1.clone()) * (x1.clone() - x0.clone());
                if lhs == rhs {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(node);
        }
        self.nodes = out;
    }

    /// Value at `x`, treating points off the node range as the zero tail.
    /// Callers on compact spaces must check the domain first.
    pub(crate) fn value_at(&self, x: &S) -> S {
        let n = self.nodes.len();
        if n == 0 {
            return S::zero();
        }
        if x <= &self.nodes[0].0 {
            return if x == &self.nodes[0].0 { self.nodes[0].1.clone() } else { S::zero() };
        }
        if x >= &self.nodes[n - 1].0 {
            return if x == &self.nodes[n - 1].0 { self.nodes[n - 1].1.clone() } else { S::zero() };
        }
        let idx = self.nodes.partition_point(|(nx, _)| nx <= x);
        let (x0, y0) = &self.nodes[idx - 1];
        let (x1, y1) = &self.nodes[idx];
        if x == x0 {
            return y0.clone();
        }
        y0.clone() + (y1.clone() - y0.clone()) * (x.clone() - x0.clone()) / (x1.clone() - x0.clone())
    }

    pub fn evaluate(&self, x: &S) -> Result<S> {
        if !self.space.contains(x) {
            return Err(Error::OutOfDomain(x.to_wire()));
        }
        Ok(self.value_at(x))
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub(crate) fn breakpoint_xs(&self) -> Vec<S> {
        self.nodes.iter().map(|(x, _)| x.clone()).collect()
    }

    fn resampled(&self, xs: Vec<S>, value: impl Fn(&S) -> S) -> Self {
        let nodes = xs.into_iter().map(|x| {
            let y = value(&x);
            (x, y)
        });
        let mut f = PwlFunction { space: self.space.clone(), nodes: nodes.collect() };
        f.simplify();
        f
    }

    /// Pointwise `op(f, g)`. Min and Max insert the exact crossing points.
    pub fn combine(&self, other: &Self, op: CombineOp) -> Result<Self> {
        self.check_space(other)?;
        let mut xs = self.breakpoint_xs();
        xs.extend(other.breakpoint_xs());
        sort_dedup(&mut xs);
        if op != CombineOp::Add {
            let mut crossings = Vec::new();
            for w in xs.windows(2) {
                let d0 = self.value_at(&w[0]) - other.value_at(&w[0]);
                let d1 = self.value_at(&w[1]) - other.value_at(&w[1]);
                if (d0.is_negative() && d1.is_positive()) || (d0.is_positive() && d1.is_negative()) {
                    let t = d0.clone() / (d0 - d1);
                    crossings.push(w[0].clone() + (w[1].clone() - w[0].clone()) * t);
                }
            }
            xs.extend(crossings);
            sort_dedup(&mut xs);
        }
        Ok(self.resampled(xs, |x| {
            let (a, b) = (self.value_at(x), other.value_at(x));
            match op {
                CombineOp::Add => a + b,
                CombineOp::Min => min_of(&a, &b),
                CombineOp::Max => max_of(&a, &b),
            }
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, CombineOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(&other.neg(), CombineOp::Add)
    }

    pub fn min(&self, other: &Self) -> Result<Self> {
        self.combine(other, CombineOp::Min)
    }

    pub fn max(&self, other: &Self) -> Result<Self> {
        self.combine(other, CombineOp::Max)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.resampled(self.breakpoint_xs(), |x| self.value_at(x) * c.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// `f + c` on a compact space.
    pub fn shift(&self, c: &S) -> Result<Self> {
        let k = Self::constant(self.space.clone(), c.clone())?;
        self.add(&k)
    }

    /// `f⁺ = max(f, 0)`.
    pub fn pos_part(&self) -> Self {
        self.max(&Self::zero(self.space.clone())).expect("same space")
    }

    /// `f⁻ = max(−f, 0)`, so that `f = f⁺ − f⁻`.
    pub fn neg_part(&self) -> Self {
        self.neg().pos_part()
    }

    /// `(min f, max f)` over the whole space, including the zero tails on the line.
    pub fn range_bounds(&self) -> (S, S) {
        let mut lo = if self.space == Space::Line { Some(S::zero()) } else { None };
        let mut hi = lo.clone();
        for (_, y) in &self.nodes {
            lo = Some(lo.map_or(y.clone(), |l| min_of(&l, y)));
            hi = Some(hi.map_or(y.clone(), |h| max_of(&h, y)));
        }
        (lo.unwrap_or_else(S::zero), hi.unwrap_or_else(S::zero))
    }

    pub fn sup_norm(&self) -> S {
        let (lo, hi) = self.range_bounds();
        max_of(&lo.abs(), &hi.abs())
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.range_bounds().0.is_negative()
    }

    pub fn is_nonpositive(&self) -> bool {
        !self.range_bounds().1.is_positive()
    }

    /// `f ≤ g` everywhere.
    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_nonpositive())
    }

    /// True when `f·g = 0` everywhere.
    pub fn product_vanishes(&self, other: &Self) -> Result<bool> {
        self.check_space(other)?;
        let mut xs = self.breakpoint_xs();
        xs.extend(other.breakpoint_xs());
        sort_dedup(&mut xs);
        // both are linear on each merged segment, so the product vanishes on a
        // segment iff one factor is zero at both of its ends
        let at_nodes = xs.iter().all(|x| (self.value_at(x) * other.value_at(x)).is_zero());
        let on_segments = xs.windows(2).all(|w| {
            let f_zero = self.value_at(&w[0]).is_zero() && self.value_at(&w[1]).is_zero();
            let g_zero = other.value_at(&w[0]).is_zero() && other.value_at(&w[1]).is_zero();
            f_zero || g_zero
        });
        Ok(at_nodes && on_segments)
    }

    /// Exact preimage `f⁻¹(A)` as an interval set within the space.
    pub fn preimage(&self, target: &IntervalSet<S>) -> IntervalSet<S> {
        let levels = target.finite_endpoints();
        let mut critical = self.breakpoint_xs();
        for w in self.nodes.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            for v in &levels {
                let inside = (y0 < v && v < y1) || (y1 < v && v < y0);
                if inside {
                    let t = (v.clone() - y0.clone()) / (y1.clone() - y0.clone());
                    critical.push(x0.clone() + (x1.clone() - x0.clone()) * t);
                }
            }
        }
        IntervalSet::from_predicate(critical, |x| self.space.contains(x) && target.contains(&self.value_at(x)))
    }

    /// `f⁻¹((t, ∞))` when `strict`, `f⁻¹([t, ∞))` otherwise.
    pub fn superlevel(&self, t: &S, strict: bool) -> IntervalSet<S> {
        self.preimage(&Interval::above(t.clone(), strict).into())
    }

    /// `f⁻¹((−∞, t))` when `strict`, `f⁻¹((−∞, t])` otherwise.
    pub fn sublevel(&self, t: &S, strict: bool) -> IntervalSet<S> {
        self.preimage(&Interval::below(t.clone(), strict).into())
    }

    /// Closure of `{f ≠ 0}`.
    pub fn support(&self) -> IntervalSet<S> {
        let nonzero = self.superlevel(&S::zero(), true).union(&self.sublevel(&S::zero(), true));
        let closed = nonzero
            .parts()
            .iter()
            .map(|p| Interval::new(p.lo().clone(), p.hi().clone(), false, false).expect("closure of a valid interval"));
        IntervalSet::from_parts(closed.collect::<Vec<_>>())
    }

    /// Exact `(min, max)` of `f` over a nonempty compact set inside the space.
    pub fn restricted_extrema(&self, k: &IntervalSet<S>) -> Result<(S, S)> {
        if k.is_empty() {
            return Err(Error::EmptySet);
        }
        if !k.is_compact(&self.space) {
            return Err(Error::NotAdmissibleSet);
        }
        let mut candidates = k.finite_endpoints();
        candidates.extend(self.breakpoint_xs().into_iter().filter(|x| k.contains(x)));
        let mut values = candidates.iter().map(|x| self.value_at(x));
        let first = values.next().ok_or(Error::EmptySet)?;
        Ok(values.fold((first.clone(), first), |(lo, hi), v| (min_of(&lo, &v), max_of(&hi, &v))))
    }

    /// Exact `∫_lo^hi f(x) dx` (zero tails on the line).
    pub fn integral_over(&self, lo: &S, hi: &S) -> S {
        if lo >= hi {
            return S::zero();
        }
        let mut xs = vec![lo.clone(), hi.clone()];
        xs.extend(self.breakpoint_xs().into_iter().filter(|x| lo < x && x < hi));
        sort_dedup(&mut xs);
        xs.windows(2)
            .map(|w| (self.value_at(&w[0]) + self.value_at(&w[1])) * (w[1].clone() - w[0].clone()) / S::two())
            .fold(S::zero(), |a, b| a + b)
    }

    /// Restriction to a compact interval `[lo, hi]` inside the domain.
    pub fn restrict(&self, lo: &S, hi: &S) -> Result<Self> {
        if !(self.space.contains(lo) && self.space.contains(hi)) {
            return Err(Error::DomainTooSmall(format!("[{}, {}]", lo.to_wire(), hi.to_wire())));
        }
        let space = Space::compact(lo.clone(), hi.clone())?;
        let mut xs = vec![lo.clone(), hi.clone()];
        xs.extend(self.breakpoint_xs().into_iter().filter(|x| lo < x && x < hi));
        sort_dedup(&mut xs);
        let nodes = xs.into_iter().map(|x| {
            let y = self.value_at(&x);
            (x, y)
        });
        Self::new(space, nodes.collect())
    }

    /// `profile ∘ f`, for any continuous profile defined on a compact
    /// interval that covers the range of `f`. On the line the profile must
    /// vanish at 0 so the result keeps its zero tails.
    pub fn compose(profile: &PwlFunction<S>, f: &Self) -> Result<Self> {
        let (u0, u1) = match profile.space() {
            Space::Compact { a, b } => (a.clone(), b.clone()),
            Space::Line => return Err(Error::DomainTooSmall("profile must live on a compact interval".into())),
        };
        let (lo, hi) = f.range_bounds();
        if lo < u0 || hi > u1 {
            return Err(Error::DomainTooSmall(format!(
                "range [{}, {}] not within [{}, {}]",
                lo.to_wire(),
                hi.to_wire(),
                u0.to_wire(),
                u1.to_wire()
            )));
        }
        if f.space == Space::Line && !profile.value_at(&S::zero()).is_zero() {
            return Err(Error::NotAnchoredAtZero);
        }
        let levels: Vec<S> = profile.breakpoint_xs();
        let mut xs = f.breakpoint_xs();
        for w in f.nodes.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            for v in &levels {
                if (y0 < v && v < y1) || (y1 < v && v < y0) {
                    let t = (v.clone() - y0.clone()) / (y1.clone() - y0.clone());
                    xs.push(x0.clone() + (x1.clone() - x0.clone()) * t);
                }
            }
        }
        sort_dedup(&mut xs);
        Ok(f.resampled(xs, |x| profile.value_at(&f.value_at(x))))
    }

    /// `f·g` when it is piecewise linear, i.e. on every merged segment at
    /// most one factor has nonzero slope.
    pub fn try_product(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut xs = self.breakpoint_xs();
        xs.extend(other.breakpoint_xs());
        sort_dedup(&mut xs);
        for w in xs.windows(2) {
            let sf = self.value_at(&w[1]) - self.value_at(&w[0]);
            let sg = other.value_at(&w[1]) - other.value_at(&w[0]);
            if !sf.is_zero() && !sg.is_zero() {
                return Err(Error::ProductNotPwl(w[0].to_wire(), w[1].to_wire()));
            }
        }
        Ok(self.resampled(xs, |x| self.value_at(x) * other.value_at(x)))
    }

    /// The ramp pieces `f_i = φ_i ∘ f`, where `φ_i` rises with slope 1 on
    /// `[(i−1)/n, i/n]` and is constant elsewhere. Requires `0 ≤ f ≤ 1`.
    pub fn cone_partition(&self, n: usize) -> Result<Vec<Self>> {
        let (lo, hi) = self.range_bounds();
        if lo.is_negative() || hi > S::one() {
            return Err(Error::RangeViolation("cone partition needs 0 ≤ f ≤ 1".into()));
        }
        if n == 0 {
            return Err(Error::RangeViolation("partition size must be positive".into()));
        }
        let n_s = S::from_usize(n).expect("usize fits");
        let step = S::one() / n_s;
        (1..=n)
            .map(|i| {
                let phi = ramp_profile(i, n, &step)?;
                Self::compose(&phi, self)
            })
            .collect()
    }
}

fn ramp_profile<S: Scalar>(i: usize, n: usize, step: &S) -> Result<PwlFunction<S>> {
    let t0 = S::from_usize(i - 1).expect("usize fits") * step.clone();
    let t1 = S::from_usize(i).expect("usize fits") * step.clone();
    let mut nodes = vec![(S::zero(), S::zero())];
    if !t0.is_zero() {
        nodes.push((t0, S::zero()));
    }
    nodes.push((t1.clone(), step.clone()));
    if i < n {
        nodes.push((S::one(), step.clone()));
    }
    PwlFunction::new(Space::compact(S::zero(), S::one())?, nodes)
}

impl<S: Scalar> fmt::Display for PwlFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.space {
            Space::Line => write!(f, "ℝ:")?,
            Space::Compact { a, b } => write!(f, "[{}, {}]:", a.to_wire(), b.to_wire())?,
        }
        if self.nodes.is_empty() {
            return write!(f, " 0");
        }
        for (x, y) in &self.nodes {
            write!(f, " ({}, {})", x.to_wire(), y.to_wire())?;
        }
        Ok(())
    }
}

/// A monotone profile `φ` on a compact interval, used to build cone elements `φ ∘ f`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneProfile<S> {
    profile: PwlFunction<S>,
    direction: Direction,
}

impl<S: Scalar> MonotoneProfile<S> {
    pub fn new(nodes: Vec<(S, S)>, direction: Direction) -> Result<Self> {
        let (a, b) = match (nodes.first(), nodes.last()) {
            (Some(first), Some(last)) => (first.0.clone(), last.0.clone()),
            _ => return Err(Error::InvalidFunction("profile needs at least two nodes".into())),
        };
        let profile = PwlFunction::new(Space::compact(a, b)?, nodes)?;
        Self::from_function(profile, direction)
    }

    pub fn from_function(profile: PwlFunction<S>, direction: Direction) -> Result<Self> {
        if !profile.space().is_compact() {
            return Err(Error::InvalidFunction("profile must live on a compact interval".into()));
        }
        let ok = profile.nodes().windows(2).all(|w| match direction {
            Direction::NonDecreasing => w[0].1 <= w[1].1,
            Direction::NonIncreasing => w[0].1 >= w[1].1,
        });
        if !ok {
            return Err(Error::InvalidFunction(format!("profile is not {direction:?}")));
        }
        Ok(MonotoneProfile { profile, direction })
    }

    /// `id` on `[lo, hi]`.
    pub fn identity(lo: S, hi: S) -> Result<Self> {
        Self::new(vec![(lo.clone(), lo), (hi.clone(), hi)], Direction::NonDecreasing)
    }

    pub fn function(&self) -> &PwlFunction<S> {
        &self.profile
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Conic combination `a·self + b·other` on the shared domain.
    pub fn conic_combination(&self, a: &S, other: &Self, b: &S) -> Result<Self> {
        if self.direction != other.direction || a.is_negative() || b.is_negative() {
            return Err(Error::InvalidFunction("conic combination needs matching directions and a, b ≥ 0".into()));
        }
        let sum = self.profile.scale(a).add(&other.profile.scale(b))?;
        Self::from_function(sum, self.direction)
    }
}

/// `φ ∘ f` for a monotone `φ`; the result lies in the cone `A⁺(f)` or `A⁻(f)`.
pub fn compose_monotone<S: Scalar>(phi: &MonotoneProfile<S>, f: &PwlFunction<S>) -> Result<PwlFunction<S>> {
    PwlFunction::compose(phi.function(), f)
}
