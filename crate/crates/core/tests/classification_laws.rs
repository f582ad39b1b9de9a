mod common;

use common::*;
use proptest::prelude::*;
use qintegral::suites::catalog;
use qintegral::{classify, FunctionalClass, FunctionalHandle};

const BUDGET: usize = 30;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn classification_is_deterministic_and_consistent(mu in measure(), seed in any::<u64>()) {
        let rho = FunctionalHandle::induced_r(&mu);
        let first = classify(&rho, BUDGET, seed).unwrap();
        prop_assert_eq!(&first, &classify(&rho, BUDGET, seed).unwrap());
        prop_assert!(first.hierarchy_consistent, "{:?}", first.broken_implications);
        for verdict in first.verdicts.values().chain(first.properties.values()) {
            if let Some(w) = &verdict.witness {
                prop_assert!(w.replay(&rho).unwrap());
            }
        }
    }

    #[test]
    fn induced_functionals_are_conic_on_their_side(mu in measure(), seed in any::<u64>()) {
        let r = classify(&FunctionalHandle::induced_r(&mu), BUDGET, seed).unwrap();
        prop_assert!(r.verdict(FunctionalClass::PConic).is_pass());
        prop_assert!(r.verdict(FunctionalClass::R).is_pass());
        prop_assert_eq!(r.norm, Some(mu.total_mass()));
        let l = classify(&FunctionalHandle::induced_l(&mu), BUDGET, seed).unwrap();
        prop_assert!(l.verdict(FunctionalClass::NConic).is_pass());
        prop_assert!(l.verdict(FunctionalClass::L).is_pass());
    }
}

#[test]
fn every_catalog_functional_classifies_consistently() {
    for (name, mu) in catalog() {
        let rho = FunctionalHandle::induced_r(&mu);
        let report = classify(&rho, 60, 7).unwrap();
        assert!(report.hierarchy_consistent, "{name}");
        assert!(report.verdict(FunctionalClass::PConic).is_pass(), "{name}");
        assert!(report.verdict(FunctionalClass::D).is_pass(), "{name}");
    }
}

#[test]
fn linear_integrals_land_in_every_class() {
    let mu = qintegral::Dtm::lebesgue(qintegral::Space::Line, q(-1, 1), q(1, 1)).unwrap();
    let rho = FunctionalHandle::linear_integral(&mu).unwrap();
    let report = classify(&rho, 100, 3).unwrap();
    for class in FunctionalClass::ALL {
        assert!(report.verdict(class).is_pass(), "{}", class.name());
    }
}
