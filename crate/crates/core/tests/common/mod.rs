#![allow(dead_code)]

use proptest::prelude::*;
use qintegral::{Dtm, Interval, IntervalSet, Pwl, QDtm, QIntervalSet, Rational, Scalar, Space};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

pub fn grid(lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi).prop_map(move |k| q(k, den))
}

fn nodes_from(xs: std::collections::BTreeSet<i64>, ys: Vec<i64>, zero_ends: bool) -> Vec<(Rational, Rational)> {
    let last = xs.len() - 1;
    xs.into_iter()
        .enumerate()
        .map(|(i, x)| {
            let y = if zero_ends && (i == 0 || i == last) { 0 } else { ys[i] };
            (q(x, 4), q(y, 4))
        })
        .collect()
}

/// Continuous compactly supported function on the line, nodes on a 1/4 grid
/// over `[-3, 4]`, values in `[ylo, yhi]/4`.
pub fn pwl_line_in(ylo: i64, yhi: i64) -> impl Strategy<Value = Pwl> {
    (proptest::collection::btree_set(-12i64..=16, 3..8), proptest::collection::vec(ylo..=yhi, 8))
        .prop_map(|(xs, ys)| Pwl::on_line(nodes_from(xs, ys, true)).unwrap())
}

pub fn pwl_line() -> impl Strategy<Value = Pwl> {
    pwl_line_in(-8, 8)
}

pub fn nonneg_pwl_line() -> impl Strategy<Value = Pwl> {
    pwl_line_in(0, 8)
}

/// Function on `[0, 2]` with nodes on a 1/8 grid.
pub fn pwl_compact() -> impl Strategy<Value = Pwl> {
    (proptest::collection::btree_set(1i64..=15, 0..5), proptest::collection::vec(-8i64..=8, 7)).prop_map(
        |(inner, ys)| {
            let mut xs = vec![q(0, 1)];
            xs.extend(inner.into_iter().map(|k| q(k, 8)));
            xs.push(q(2, 1));
            let nodes = xs.into_iter().zip(ys).map(|(x, y)| (x, q(y, 4))).collect();
            Pwl::new(compact02(), nodes).unwrap()
        },
    )
}

pub fn compact02() -> Space<Rational> {
    Space::compact(q(0, 1), q(2, 1)).unwrap()
}

/// Interval with ends on a 1/2 grid over `[-4, 4]`, possibly unbounded or
/// degenerate.
pub fn interval() -> impl Strategy<Value = Interval<Rational>> {
    (-8i64..=8, 0i64..=8, any::<bool>(), any::<bool>(), 0u8..6).prop_map(|(lo, len, lo_open, hi_open, shape)| {
        let (a, b) = (q(lo, 2), q(lo + len, 2));
        match shape {
            0 => Interval::above(a, lo_open),
            1 => Interval::below(b, hi_open),
            _ if len == 0 => Interval::point(a),
            _ => Interval::bounded(a, b, lo_open, hi_open).unwrap(),
        }
    })
}

pub fn interval_set() -> impl Strategy<Value = QIntervalSet> {
    proptest::collection::vec(interval(), 0..4).prop_map(IntervalSet::from_parts)
}

/// Open set: finite union of open intervals and rays.
pub fn open_set() -> impl Strategy<Value = QIntervalSet> {
    proptest::collection::vec((-8i64..=8, 1i64..=6, 0u8..8), 0..4).prop_map(|parts| {
        IntervalSet::from_parts(parts.into_iter().map(|(lo, len, shape)| match shape {
            0 => Interval::above(q(lo, 2), true),
            1 => Interval::below(q(lo, 2), true),
            _ => Interval::open(q(lo, 2), q(lo + len, 2)),
        }))
    })
}

/// Compact set: finite union of closed intervals and points.
pub fn compact_set() -> impl Strategy<Value = QIntervalSet> {
    proptest::collection::vec((-8i64..=8, 0i64..=6), 0..4).prop_map(|parts| {
        IntervalSet::from_parts(parts.into_iter().map(|(lo, len)| Interval::closed(q(lo, 2), q(lo + len, 2))))
    })
}

fn endpoints() -> impl Strategy<Value = (Rational, Rational)> {
    (-8i64..=8, 0i64..=6).prop_map(|(lo, len)| (q(lo, 4), q(lo + len, 4)))
}

pub fn atom_measure() -> impl Strategy<Value = QDtm> {
    (endpoints(), 0u8..3).prop_map(|((a, b), kind)| match kind {
        0 => Dtm::simple(Space::Line, a, b).unwrap(),
        1 => Dtm::dirac(Space::Line, a).unwrap(),
        _ => Dtm::lebesgue(Space::Line, a, b).unwrap(),
    })
}

/// Catalog measure on the line: an atom or a positive combination of atoms.
pub fn measure() -> impl Strategy<Value = QDtm> {
    prop_oneof![
        atom_measure(),
        proptest::collection::vec((1i64..=6, atom_measure()), 1..4).prop_map(|terms| {
            Dtm::combo(Space::Line, terms.into_iter().map(|(c, m)| (q(c, 2), m)).collect()).unwrap()
        }),
    ]
}

/// Positive combination of Dirac and Lebesgue pieces (no simple part).
pub fn linear_measure() -> impl Strategy<Value = QDtm> {
    proptest::collection::vec((1i64..=6, endpoints(), any::<bool>()), 1..4).prop_map(|terms| {
        let terms = terms
            .into_iter()
            .map(|(c, (a, b), dirac)| {
                let m = if dirac { Dtm::dirac(Space::Line, a) } else { Dtm::lebesgue(Space::Line, a, b) };
                (q(c, 2), m.unwrap())
            })
            .collect();
        Dtm::combo(Space::Line, terms).unwrap()
    })
}

pub fn compact_interval() -> impl Strategy<Value = (Rational, Rational)> {
    endpoints()
}

/// Nonnegative function supported in `[lo, hi]/4`.
pub fn bump(lo: i64, hi: i64) -> impl Strategy<Value = Pwl> {
    (proptest::collection::btree_set(lo..=hi, 3..6), proptest::collection::vec(0i64..=8, 6))
        .prop_map(|(xs, ys)| Pwl::on_line(nodes_from(xs, ys, true)).unwrap())
}

/// Catalog measure on `[0, 2]`.
pub fn measure_on_compact() -> impl Strategy<Value = QDtm> {
    proptest::collection::vec((1i64..=6, 0i64..=8, 0i64..=8, 0u8..3), 1..4).prop_map(|terms| {
        let space = compact02();
        let terms = terms
            .into_iter()
            .map(|(c, a, b, kind)| {
                let (lo, hi) = (q(a.min(b), 4), q(a.max(b), 4));
                let m = match kind {
                    0 => Dtm::simple(space.clone(), lo, hi),
                    1 => Dtm::dirac(space.clone(), lo),
                    _ => Dtm::lebesgue(space.clone(), lo, hi),
                };
                (q(c, 2), m.unwrap())
            })
            .collect();
        Dtm::combo(space, terms).unwrap()
    })
}
