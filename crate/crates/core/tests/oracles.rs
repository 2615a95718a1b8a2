mod common;

use common::bar::{bar_tor, coequalizer_dim};
use homepi::algebra::bimodule_tensor;
use homepi::derived::{check_homological_epi, tor_dims, HepiOutcome, HepiWitness};
use homepi::fixtures;
use homepi::linalg::Field;

#[test]
fn bar_complex_sees_the_dual_numbers() {
    let d = fixtures::dual_numbers(Field::Rational);
    let rad = homepi::algebra::TwoSidedIdeal::radical(&d).unwrap();
    let top = homepi::algebra::RingMap::quotient(&rad, "k").unwrap();
    let k = homepi::algebra::Bimodule::restriction(&top).as_right_module();
    let n = homepi::algebra::Bimodule::along(&top);
    assert_eq!(bar_tor(&k, &n, 4), vec![1; 5]);
}

#[test]
fn resolution_tor_matches_bar_tor() {
    for (label, m, n) in common::tor_inputs() {
        let fast = tor_dims(&m, &n, 4).unwrap();
        let slow = bar_tor(&m, &n, 4);
        assert_eq!(fast, slow, "{label}");
    }
}

#[test]
fn tensor_dimension_matches_coequalizer() {
    for name in common::FIXTURES {
        for (label, f) in &common::load(name).ring_maps {
            let (_, t) = bimodule_tensor(
                &homepi::algebra::Bimodule::restriction(f),
                &homepi::algebra::Bimodule::along(f),
            )
            .unwrap();
            assert_eq!(t.dim(), coequalizer_dim(f), "{name}:{label}");
        }
    }
}

#[test]
fn split_inclusion_witness() {
    let f = fixtures::diagonal_into_ut2(Field::Rational);
    let v = check_homological_epi(&f, 4).unwrap();
    assert_eq!(coequalizer_dim(&f), 4);
    assert_eq!(
        v.outcome,
        HepiOutcome::Refuted(HepiWitness::Multiplication {
            tensor_dim: 4,
            target_dim: 3,
            rank: 3
        })
    );
}

#[test]
fn prime_field_agrees() {
    let f = fixtures::diagonal_into_ut2(Field::prime(5).unwrap());
    assert_eq!(coequalizer_dim(&f), 4);
    let r = fixtures::ut2(Field::prime(7).unwrap());
    for (_, m) in common::standard_modules(&r) {
        let n = homepi::algebra::Bimodule::regular(&r);
        assert_eq!(tor_dims(&m, &n, 3).unwrap(), bar_tor(&m, &n, 3));
    }
}
