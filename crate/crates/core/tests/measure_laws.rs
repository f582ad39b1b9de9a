mod common;

use common::*;
use proptest::prelude::*;
use qintegral::{Dtm, Interval, IntervalSet, Space};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eval_is_monotone(mu in measure(), u in open_set(), v in open_set(), k in compact_set(), k2 in compact_set()) {
        prop_assert!(mu.eval(&u).unwrap() <= mu.eval(&u.union(&v)).unwrap());
        prop_assert!(mu.eval(&k).unwrap() <= mu.eval(&k.union(&k2)).unwrap());
        let around = k.expand_open(&q(1, 4), &Space::Line);
        prop_assert!(mu.eval(&k).unwrap() <= mu.eval(&around).unwrap());
        prop_assert!(mu.eval(&k.intersect(&k2)).unwrap() <= mu.eval(&k).unwrap());
    }

    #[test]
    fn empty_set_has_measure_zero(mu in measure()) {
        prop_assert_eq!(mu.eval(&IntervalSet::empty()).unwrap(), q(0, 1));
    }

    #[test]
    fn additive_on_disjoint_compacts(mu in measure(), k1 in compact_set(), k2 in compact_set()) {
        let k2 = k2.difference(&k1.expand_open(&q(1, 8), &Space::Line));
        prop_assert!(k2.is_compact(&Space::Line));
        let joint = mu.eval(&k1.union(&k2)).unwrap();
        prop_assert_eq!(joint, mu.eval(&k1).unwrap() + mu.eval(&k2).unwrap());
    }

    #[test]
    fn conic_in_the_measure(mu in measure(), nu in measure(), a in grid(0, 8, 2), b in grid(0, 8, 2), u in open_set(), k in compact_set()) {
        let combo = Dtm::combo(Space::Line, vec![(a.clone(), mu.clone()), (b.clone(), nu.clone())]).unwrap();
        for set in [u, k] {
            let expected = a.clone() * mu.eval(&set).unwrap() + b.clone() * nu.eval(&set).unwrap();
            prop_assert_eq!(combo.eval(&set).unwrap(), expected);
        }
    }

    #[test]
    fn simple_measure_on_compacts_is_containment((lo, hi) in compact_interval(), k in compact_set()) {
        let mu = Dtm::simple(Space::Line, lo.clone(), hi.clone()).unwrap();
        let d = IntervalSet::from(Interval::closed(lo, hi));
        let expected = if d.is_subset(&k) { q(1, 1) } else { q(0, 1) };
        prop_assert_eq!(mu.eval(&k).unwrap(), expected);
    }
}
