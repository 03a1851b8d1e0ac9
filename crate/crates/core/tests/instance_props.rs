mod common;

use prefcone::{InstanceFormat, PreferenceInstance, ViolationCode};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

proptest! {
    #[test]
    fn generators_recover_alternatives(inst in common::instance(4, 6)) {
        let gens = inst.generators(0.0);
        for (g, &j) in gens.iter().zip(&inst.preferred_indices) {
            let back: Vec<f64> = g.iter().zip(inst.reference()).map(|(a, b)| a + b).collect();
            prop_assert_eq!(&back, &inst.alternatives[j]);
        }
    }

    #[test]
    fn generators_shift_by_epsilon(inst in common::instance(4, 6), e1 in 0.0..1.0f64, de in 1e-3..1.0f64) {
        let e2 = e1 + de;
        for (a, b) in inst.generators(e1).iter().zip(inst.generators(e2)) {
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(y < x);
                prop_assert!(((x - y) - (e2 - e1)).abs() <= 1e-12 * (1.0 + x.abs()));
            }
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact(
        rows in prop::collection::vec(prop::collection::vec(finite(), 3), 2..6),
        k in 0usize..6,
    ) {
        let m = rows.len();
        let k = k % m;
        let preferred: Vec<usize> = (0..m).filter(|&i| i != k).collect();
        let inst = PreferenceInstance::new(rows, k, preferred);
        let back = PreferenceInstance::parse(&inst.to_json(), InstanceFormat::Json).unwrap();
        for (a, b) in inst.alternatives.iter().flatten().zip(back.alternatives.iter().flatten()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(back.reference_index, inst.reference_index);
        prop_assert_eq!(back.preferred_indices, inst.preferred_indices);
    }

    #[test]
    fn csv_round_trip(inst in common::instance(4, 6)) {
        let back = PreferenceInstance::parse(&inst.to_csv(), InstanceFormat::Csv).unwrap();
        prop_assert_eq!(back.validate(), inst.validate());
        prop_assert_eq!(back.reference(), inst.reference());
        let mut a: Vec<&[f64]> = inst.preferred().collect();
        let mut b: Vec<&[f64]> = back.preferred().collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn random_instances_validate(inst in common::instance(4, 6)) {
        prop_assert!(inst.validate().ok);
    }
}

#[test]
fn csv_fixture_matches_json_fixture() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/");
    let json = std::fs::read_to_string(format!("{dir}ex1.json")).unwrap();
    let csv = std::fs::read_to_string(format!("{dir}ex1.csv")).unwrap();
    let a = PreferenceInstance::parse(&json, InstanceFormat::Json).unwrap();
    let b = PreferenceInstance::parse(&csv, InstanceFormat::Csv).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, common::example1());
}

#[test]
fn violations_are_all_reported() {
    let inst = PreferenceInstance::new(
        vec![vec![1.0, 2.0], vec![1.0, 2.0], vec![f64::NAN, 0.0]],
        0,
        vec![0, 5, 5],
    );
    let report = inst.validate();
    assert!(!report.ok);
    for code in [
        ViolationCode::DuplicateAlternative,
        ViolationCode::NonFiniteValue,
        ViolationCode::IndexOutOfRange,
        ViolationCode::DuplicatePreferredIndex,
        ViolationCode::ReferenceInPreferred,
    ] {
        assert!(report.has(code), "{code:?} missing from {report}");
    }
}
