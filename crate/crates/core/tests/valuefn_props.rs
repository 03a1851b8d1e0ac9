mod common;

use prefcone::cones::GeneratorCone;
use prefcone::oracle::check_properties;
use prefcone::{consistency, EpsilonSearchConfig, ValueFunction, ValueFunctionKind};
use proptest::prelude::*;

fn report(v: &[prefcone::oracle::PropertyViolation]) -> String {
    v.iter()
        .take(3)
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join("\n")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_properties(inst in common::instance(4, 6), seed in any::<u64>()) {
        let psi = match ValueFunction::psi(&inst) {
            Ok(f) => f,
            Err(prefcone::Error::WholeSpace) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let v = check_properties(&psi, &inst, 300, seed);
        prop_assert!(v.is_empty(), "{}", report(&v));
    }

    #[test]
    fn vartheta_and_linear_properties(inst in common::instance(4, 6), seed in any::<u64>()) {
        prop_assume!(consistency::test_pointedness(&inst, 0.0).unwrap().pointed);
        let eps = consistency::epsilon_search(&inst, &EpsilonSearchConfig::default()).unwrap();
        let vartheta = ValueFunction::vartheta(&inst, eps).unwrap();
        let v = check_properties(&vartheta, &inst, 300, seed);
        prop_assert!(v.is_empty(), "{}", report(&v));
        let linear = ValueFunction::linear_from_instance(&inst).unwrap();
        let v = check_properties(&linear, &inst, 300, seed);
        prop_assert!(v.is_empty(), "{}", report(&v));
    }
}

#[test]
fn example_one_psi_has_no_violations() {
    let inst = common::example1();
    let psi = ValueFunction::psi(&inst).unwrap();
    assert!(check_properties(&psi, &inst, 1000, 42).is_empty());
}

#[test]
fn corrupted_facet_is_detected() {
    let inst = common::example1();
    let cone = GeneratorCone::from_instance(&inst, 0.0);
    let mut facets = cone.facets().unwrap();
    facets.facet_normals[0].iter_mut().for_each(|v| *v = -*v);
    let broken = ValueFunction::from_parts(ValueFunctionKind::Psi, inst.reference().to_vec(), cone, facets);
    assert!(!check_properties(&broken, &inst, 1000, 42).is_empty());
}

#[test]
fn linear_is_exactly_affine() {
    let inst = common::example1();
    let f = ValueFunction::linear(inst.reference().to_vec(), vec![1.0, 4.0]).unwrap();
    assert!(check_properties(&f, &inst, 1000, 42).is_empty());
    let (a, b) = ([3.0, -1.0], [-2.0, 5.0]);
    let mid = [0.5, 2.0];
    let lhs = f.evaluate(&mid).unwrap();
    let rhs = 0.5 * f.evaluate(&a).unwrap() + 0.5 * f.evaluate(&b).unwrap();
    assert!((lhs - rhs).abs() < 1e-12);
}
