//! Exact algebra of finite unions of intervals.
//!
//! Every set operation is reduced to one primitive, [`IntervalSet::from_predicate`]:
//! given the finitely many points where membership may change, the line splits
//! into points and open gaps on which membership is constant, and a canonical
//! union is rebuilt from a single test point per piece.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{sort_dedup, Scalar};

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq)]
pub enum Extended<S> {
    NegInf,
    Finite(S),
    PosInf,
}

impl<S: Scalar> Extended<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            Extended::Finite(x) => Some(x),
            _ => None,
        }
    }
}

/// The ambient space: the real line or a compact interval `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Space<S> {
    Line,
    Compact { a: S, b: S },
}

impl<S: Scalar> Space<S> {
    pub fn compact(a: S, b: S) -> Result<Self> {
        if a < b {
            Ok(Space::Compact { a, b })
        } else {
            Err(Error::InvalidInterval("compact space needs a < b".into()))
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, Space::Compact { .. })
    }

    pub fn as_interval(&self) -> Interval<S> {
        match self {
            Space::Line => Interval::line(),
            Space::Compact { a, b } => Interval::closed(a.clone(), b.clone()),
        }
    }

    pub fn whole(&self) -> IntervalSet<S> {
        IntervalSet::from(self.as_interval())
    }

    pub fn contains(&self, x: &S) -> bool {
        match self {
            Space::Line => true,
            Space::Compact { a, b } => a <= x && x <= b,
        }
    }
}

/// An interval with per-endpoint openness. Infinite endpoints are always open.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<S> {
    lo: Extended<S>,
    hi: Extended<S>,
    lo_open: bool,
    hi_open: bool,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: Extended<S>, hi: Extended<S>, lo_open: bool, hi_open: bool) -> Result<Self> {
        let lo_open = lo_open || !matches!(lo, Extended::Finite(_));
        let hi_open = hi_open || !matches!(hi, Extended::Finite(_));
        let ok = match (&lo, &hi) {
            (Extended::PosInf, _) | (_, Extended::NegInf) => false,
            (Extended::Finite(a), Extended::Finite(b)) => a < b || (a == b && !lo_open && !hi_open),
            _ => true,
        };
        if !ok {
            return Err(Error::InvalidInterval("need lo < hi, or lo = hi with both ends closed".into()));
        }
        Ok(Interval { lo, hi, lo_open, hi_open })
    }

    pub fn closed(a: S, b: S) -> Self {
        Self::new(Extended::Finite(a), Extended::Finite(b), false, false).expect("closed interval needs a <= b")
    }

    pub fn open(a: S, b: S) -> Self {
        Self::new(Extended::Finite(a), Extended::Finite(b), true, true).expect("open interval needs a < b")
    }

    pub fn bounded(a: S, b: S, lo_open: bool, hi_open: bool) -> Result<Self> {
        Self::new(Extended::Finite(a), Extended::Finite(b), lo_open, hi_open)
    }

    pub fn point(x: S) -> Self {
        Self::closed(x.clone(), x)
    }

    pub fn line() -> Self {
        Interval { lo: Extended::NegInf, hi: Extended::PosInf, lo_open: true, hi_open: true }
    }

    /// `(t, ∞)` when `strict`, `[t, ∞)` otherwise.
    pub fn above(t: S, strict: bool) -> Self {
        Interval { lo: Extended::Finite(t), hi: Extended::PosInf, lo_open: strict, hi_open: true }
    }

    /// `(−∞, t)` when `strict`, `(−∞, t]` otherwise.
    pub fn below(t: S, strict: bool) -> Self {
        Interval { lo: Extended::NegInf, hi: Extended::Finite(t), lo_open: true, hi_open: strict }
    }

    pub fn lo(&self) -> &Extended<S> {
        &self.lo
    }

    pub fn hi(&self) -> &Extended<S> {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.finite().is_some() && self.hi.finite().is_some()
    }

    pub fn contains(&self, x: &S) -> bool {
        let above_lo = match &self.lo {
            Extended::NegInf => true,
            Extended::Finite(a) => {
                if self.lo_open {
                    a < x
                } else {
                    a <= x
                }
            }
            Extended::PosInf => false,
        };
        let below_hi = match &self.hi {
            Extended::PosInf => true,
            Extended::Finite(b) => {
                if self.hi_open {
                    x < b
                } else {
                    x <= b
                }
            }
            Extended::NegInf => false,
        };
        above_lo && below_hi
    }

    /// Length of a bounded interval.
    pub fn length(&self) -> Option<S> {
        match (&self.lo, &self.hi) {
            (Extended::Finite(a), Extended::Finite(b)) => Some(b.clone() - a.clone()),
            _ => None,
        }
    }

    fn finite_endpoints(&self, out: &mut Vec<S>) {
        if let Extended::Finite(a) = &self.lo {
            out.push(a.clone());
        }
        if let Extended::Finite(b) = &self.hi {
            out.push(b.clone());
        }
    }
}

impl<S: Scalar> fmt::Display for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = match &self.lo {
            Extended::Finite(x) => x.to_wire(),
            _ => "-inf".into(),
        };
        let hi = match &self.hi {
            Extended::Finite(x) => x.to_wire(),
            _ => "inf".into(),
        };
        if self.lo == self.hi {
            return write!(f, "{{{lo}}}");
        }
        write!(f, "{}{}, {}{}", if self.lo_open { '(' } else { '[' }, lo, hi, if self.hi_open { ')' } else { ']' })
    }
}

/// A finite union of pairwise disjoint, sorted, non-mergeable intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSet<S> {
    parts: Vec<Interval<S>>,
}

enum Piece<S> {
    LeftRay,
    Point(S),
    Gap(S, S),
    RightRay,
}

impl<S: Scalar> IntervalSet<S> {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn line() -> Self {
        IntervalSet { parts: vec![Interval::line()] }
    }

    pub fn parts(&self) -> &[Interval<S>] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Canonical union of arbitrary (possibly overlapping) intervals.
    pub fn from_parts(parts: impl IntoIterator<Item = Interval<S>>) -> Self {
        let parts: Vec<_> = parts.into_iter().collect();
        let mut critical = Vec::new();
        for p in &parts {
            p.finite_endpoints(&mut critical);
        }
        Self::from_predicate(critical, |x| parts.iter().any(|p| p.contains(x)))
    }

    /// Build the canonical set `{x : pred(x)}`, assuming membership is constant
    /// on every open gap between consecutive `critical` points and on the two
    /// unbounded rays.
    pub fn from_predicate(mut critical: Vec<S>, pred: impl Fn(&S) -> bool) -> Self {
        sort_dedup(&mut critical);
        if critical.is_empty() {
            return if pred(&S::zero()) { Self::line() } else { Self::empty() };
        }
        let mut pieces = Vec::with_capacity(2 * critical.len() + 1);
        pieces.push(Piece::LeftRay);
        for (i, p) in critical.iter().enumerate() {
            pieces.push(Piece::Point(p.clone()));
            match critical.get(i + 1) {
                Some(q) => pieces.push(Piece::Gap(p.clone(), q.clone())),
                None => pieces.push(Piece::RightRay),
            }
        }
        let first = critical.first().unwrap().clone();
        let last = critical.last().unwrap().clone();
        let member: Vec<bool> = pieces
            .iter()
            .map(|piece| match piece {
                Piece::LeftRay => pred(&(first.clone() - S::one())),
                Piece::Point(p) => pred(p),
                Piece::Gap(p, q) => pred(&((p.clone() + q.clone()) / S::two())),
                Piece::RightRay => pred(&(last.clone() + S::one())),
            })
            .collect();

        let mut parts = Vec::new();
        let mut i = 0;
        while i < pieces.len() {
            if !member[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i + 1 < pieces.len() && member[i + 1] {
                i += 1;
            }
            let (lo, lo_open) = match &pieces[start] {
                Piece::LeftRay => (Extended::NegInf, true),
                Piece::Point(p) => (Extended::Finite(p.clone()), false),
                Piece::Gap(p, _) => (Extended::Finite(p.clone()), true),
                Piece::RightRay => (Extended::Finite(last.clone()), true),
            };
            let (hi, hi_open) = match &pieces[i] {
                Piece::LeftRay => (Extended::Finite(first.clone()), true),
                Piece::Point(p) => (Extended::Finite(p.clone()), false),
                Piece::Gap(_, q) => (Extended::Finite(q.clone()), true),
                Piece::RightRay => (Extended::PosInf, true),
            };
            parts.push(Interval { lo, hi, lo_open, hi_open });
            i += 1;
        }
        IntervalSet { parts }
    }

    pub fn contains(&self, x: &S) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn finite_endpoints(&self) -> Vec<S> {
        let mut out = Vec::new();
        for p in &self.parts {
            p.finite_endpoints(&mut out);
        }
        out
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let mut critical = self.finite_endpoints();
        critical.extend(other.finite_endpoints());
        Self::from_predicate(critical, |x| op(self.contains(x), other.contains(x)))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    /// Complement relative to the whole line.
    pub fn complement(&self) -> Self {
        Self::from_predicate(self.finite_endpoints(), |x| !self.contains(x))
    }

    /// `ambient ∖ self`; fails unless `self ⊆ ambient`.
    pub fn complement_within(&self, ambient: &Interval<S>) -> Result<Self> {
        let amb = IntervalSet::from(ambient.clone());
        if !self.is_subset(&amb) {
            return Err(Error::NotContained);
        }
        Ok(amb.difference(self))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.parts.iter().all(Interval::is_bounded)
    }

    /// Closed in the space (relative topology for a compact space).
    pub fn is_closed(&self, space: &Space<S>) -> bool {
        if !self.is_subset(&space.whole()) {
            return false;
        }
        self.parts.iter().all(|p| (p.lo.finite().is_none() || !p.lo_open) && (p.hi.finite().is_none() || !p.hi_open))
    }

    pub fn is_compact(&self, space: &Space<S>) -> bool {
        self.is_closed(space) && self.is_bounded()
    }

    /// Open in the space. On a compact `[a, b]` a closed endpoint at `a` or
    /// `b` is still relatively open.
    pub fn is_open(&self, space: &Space<S>) -> bool {
        if !self.is_subset(&space.whole()) {
            return false;
        }
        let (amb_lo, amb_hi) = match space {
            Space::Line => (None, None),
            Space::Compact { a, b } => (Some(a), Some(b)),
        };
        self.parts.iter().all(|p| {
            let lo_ok = p.lo_open || p.lo.finite() == amb_lo;
            let hi_ok = p.hi_open || p.hi.finite() == amb_hi;
            lo_ok && hi_ok
        })
    }

    /// Total length; `None` for unbounded sets.
    pub fn length(&self) -> Option<S> {
        self.parts.iter().try_fold(S::zero(), |acc, p| p.length().map(|l| acc + l))
    }

    /// Smallest and largest finite endpoints, when the set is bounded and nonempty.
    pub fn hull(&self) -> Option<(S, S)> {
        if self.is_empty() || !self.is_bounded() {
            return None;
        }
        let lo = self.parts.first()?.lo.finite()?.clone();
        let hi = self.parts.last()?.hi.finite()?.clone();
        Some((lo, hi))
    }

    /// Minkowski-style enlargement by `delta` (open result): every finite
    /// endpoint moves outward by `delta`, then the result is clipped to the space.
    pub fn expand_open(&self, delta: &S, space: &Space<S>) -> Self {
        let parts = self.parts.iter().map(|p| {
            let lo = match &p.lo {
                Extended::Finite(a) => Extended::Finite(a.clone() - delta.clone()),
                e => e.clone(),
            };
            let hi = match &p.hi {
                Extended::Finite(b) => Extended::Finite(b.clone() + delta.clone()),
                e => e.clone(),
            };
            Interval { lo, hi, lo_open: true, hi_open: true }
        });
        Self::from_parts(parts).intersect(&space.whole())
    }

    /// Compact inner approximation: each part keeps its relatively closed
    /// ambient endpoints, pulls open finite endpoints inward by `delta`, and
    /// truncates unbounded ends at distance `reach` from the origin. Parts
    /// that vanish are dropped.
    pub fn shrink_compact(&self, delta: &S, reach: &S, space: &Space<S>) -> Self {
        let mut parts = Vec::new();
        for p in &self.parts {
            let lo = match (&p.lo, p.lo_open) {
                (Extended::Finite(a), true) => a.clone() + delta.clone(),
                (Extended::Finite(a), false) => a.clone(),
                _ => -reach.clone(),
            };
            let hi = match (&p.hi, p.hi_open) {
                (Extended::Finite(b), true) => b.clone() - delta.clone(),
                (Extended::Finite(b), false) => b.clone(),
                _ => reach.clone(),
            };
            if lo <= hi {
                parts.push(Interval::closed(lo, hi));
            }
        }
        Self::from_parts(parts).intersect(&space.whole())
    }

    /// True iff no two parts can be merged and parts are sorted and disjoint.
    pub fn is_canonical(&self) -> bool {
        let rebuilt = Self::from_parts(self.parts.iter().cloned());
        rebuilt == *self
    }

    /// A point inside the first part.
    pub fn sample_point(&self) -> Option<S> {
        let p = self.parts.first()?;
        Some(match (&p.lo, &p.hi) {
            (Extended::Finite(a), Extended::Finite(b)) => (a.clone() + b.clone()) / S::two(),
            (Extended::Finite(a), _) => a.clone() + S::one(),
            (_, Extended::Finite(b)) => b.clone() - S::one(),
            _ => S::zero(),
        })
    }
}

impl<S: Scalar> From<Interval<S>> for IntervalSet<S> {
    fn from(i: Interval<S>) -> Self {
        IntervalSet { parts: vec![i] }
    }
}

impl<S: Scalar> fmt::Display for IntervalSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn closed(a: i64, b: i64) -> IntervalSet<Rational> {
        Interval::closed(q(a, 1), q(b, 1)).into()
    }

    fn open(a: i64, b: i64) -> IntervalSet<Rational> {
        Interval::open(q(a, 1), q(b, 1)).into()
    }

    #[test]
    fn open_endpoints_do_not_merge() {
        let u = open(0, 1).union(&open(1, 2));
        assert_eq!(u.parts().len(), 2);
        assert!(!u.contains(&q(1, 1)));
    }

    #[test]
    fn touching_closed_endpoint_merges() {
        let a: IntervalSet<Rational> = Interval::bounded(q(0, 1), q(1, 1), true, false).unwrap().into();
        let b: IntervalSet<Rational> = Interval::bounded(q(1, 1), q(2, 1), false, true).unwrap().into();
        assert_eq!(a.union(&b), open(0, 2));
    }

    #[test]
    fn empty_is_union_identity() {
        assert_eq!(IntervalSet::empty().union(&closed(0, 1)), closed(0, 1));
    }

    #[test]
    fn intersections() {
        let got = closed(0, 2).intersect(&open(1, 3));
        let want: IntervalSet<Rational> = Interval::bounded(q(1, 1), q(2, 1), true, false).unwrap().into();
        assert_eq!(got, want);
        assert!(closed(0, 1).intersect(&closed(2, 3)).is_empty());
    }

    #[test]
    fn complements() {
        let c = closed(0, 1).complement_within(&Interval::open(q(-1, 1), q(2, 1))).unwrap();
        assert_eq!(c, open(-1, 0).union(&open(1, 2)));
        let c = IntervalSet::empty().complement_within(&Interval::closed(q(0, 1), q(1, 1))).unwrap();
        assert_eq!(c, closed(0, 1));
        let u: IntervalSet<Rational> = Interval::open(q(-1, 2), q(3, 2)).into();
        let c = u.intersect(&IntervalSet::line()).complement_within(&Interval::line()).unwrap();
        let want = IntervalSet::from_parts([Interval::below(q(-1, 2), false), Interval::above(q(3, 2), false)]);
        assert_eq!(c, want);
        assert_eq!(closed(0, 3).complement_within(&Interval::closed(q(0, 1), q(1, 1))), Err(Error::NotContained));
    }

    #[test]
    fn subsets() {
        assert!(closed(0, 1).is_subset(&open(-1, 2)));
        assert!(!closed(0, 1).is_subset(&open(0, 2)));
        assert!(IntervalSet::<Rational>::empty().is_subset(&open(5, 6)));
    }

    #[test]
    fn topology_flags() {
        let line = Space::Line;
        let k = closed(0, 1).union(&closed(2, 3));
        assert!(k.is_compact(&line));
        assert!(open(0, 1).is_open(&line));
        assert!(!open(0, 1).is_compact(&line));
        let amb = Space::compact(q(0, 1), q(2, 1)).unwrap();
        let half: IntervalSet<Rational> = Interval::bounded(q(0, 1), q(1, 1), false, true).unwrap().into();
        assert!(half.is_open(&amb));
        assert!(!half.is_compact(&amb));
        assert!(!half.is_open(&line));
        // the whole compact space is clopen
        assert!(amb.whole().is_open(&amb) && amb.whole().is_compact(&amb));
    }

    #[test]
    fn singleton_and_display() {
        let p: IntervalSet<Rational> = Interval::point(q(1, 2)).into();
        assert!(p.is_compact(&Space::Line));
        assert_eq!(p.to_string(), "{1/2}");
        assert_eq!(open(0, 1).union(&closed(2, 3)).to_string(), "(0, 1) ∪ [2, 3]");
    }

    #[test]
    fn invalid_intervals_rejected() {
        assert!(Interval::bounded(q(1, 1), q(1, 1), true, false).is_err());
        assert!(Interval::bounded(q(2, 1), q(1, 1), false, false).is_err());
    }

    #[test]
    fn expand_and_shrink() {
        let u = open(0, 1);
        let k = u.shrink_compact(&q(1, 4), &q(10, 1), &Space::Line);
        assert_eq!(k, IntervalSet::from(Interval::closed(q(1, 4), q(3, 4))));
        let e = closed(0, 1).expand_open(&q(1, 4), &Space::Line);
        assert_eq!(e, IntervalSet::from(Interval::open(q(-1, 4), q(5, 4))));
    }
}
