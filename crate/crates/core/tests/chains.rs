use proptest::prelude::*;
use qabel_core::forms::{build, cor1_via_staircase, FormId};
use qabel_core::identity::{default_functions, verify_chain, Chain};
use qabel_core::scalar::{ratio, Rational};
use qabel_core::ArithmeticFunction;

const ORDER: usize = 30;

#[test]
fn chains_hold_for_builtin_functions() {
    let mut functions = default_functions();
    functions.push(ArithmeticFunction::Liouville);
    functions.push(ArithmeticFunction::Identity);
    for f in &functions {
        for chain in Chain::ALL {
            let r = verify_chain(chain, f, ORDER).unwrap();
            assert!(r.passed(), "{}: {:?}", r.identity, r.first_mismatch);
        }
    }
}

#[test]
fn staircase_enumeration_matches_cor1_partition() {
    for f in default_functions() {
        let direct = build::<Rational>(FormId::Cor1Partition, &f, 24, &()).unwrap();
        assert_eq!(cor1_via_staircase(&f, 24).unwrap(), direct, "{}", f.name());
    }
}

fn table() -> impl Strategy<Value = ArithmeticFunction> {
    prop::collection::vec((-5i64..=5, 1i64..=4), ORDER).prop_map(|v| {
        ArithmeticFunction::tabulated("random", v.into_iter().map(|(p, q)| ratio(p, q)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 3, ..ProptestConfig::default() })]

    #[test]
    fn chains_hold_for_random_tables(f in table()) {
        for chain in Chain::ALL {
            let r = verify_chain(chain, &f, ORDER).unwrap();
            prop_assert!(r.passed(), "{}: {:?}", r.identity, r.first_mismatch);
        }
        let direct = build::<Rational>(FormId::Cor1Partition, &f, 20, &()).unwrap();
        prop_assert_eq!(cor1_via_staircase(&f, 20).unwrap(), direct);
    }
}
