use super::*;
use crate::fixtures;
use crate::linalg::Field;

const Q: Field = Field::Rational;

#[test]
fn projective_resolves_in_one_step() {
    let r = fixtures::ut2(Q);
    for i in 0..2 {
        let res = proj_resolution(&FdModule::projective(&r, i), 5).unwrap();
        assert_eq!(res.length(), 0);
        assert!(res.terminated());
        assert!(res.verify_exactness());
        assert_eq!(res.terms(), &[vec![i]]);
    }
    let zero = proj_resolution(&FdModule::zero(&r), 5).unwrap();
    assert!(zero.terminated());
    assert!(zero.complex().is_zero_object());
}

#[test]
fn simple_top_of_p1() {
    let r = fixtures::ut2(Q);
    let res = proj_resolution(&FdModule::simple(&r, 0).unwrap(), 5).unwrap();
    assert_eq!(res.terms(), &[vec![0], vec![1]]);
    assert!(res.terminated());
    assert!(res.verify_exactness());
    assert!(res.is_minimal().unwrap());
    assert_eq!(res.complex(), fixtures::ut2_s1_resolution(&r));
}

#[test]
fn dual_numbers_never_terminate() {
    let r = fixtures::dual_numbers(Q);
    let res = proj_resolution(&FdModule::simple(&r, 0).unwrap(), 6).unwrap();
    assert!(!res.terminated());
    assert_eq!(res.terms().len(), 7);
    assert!(res.terms().iter().all(|t| t == &[0]));
    assert!(res.verify_exactness());
    assert!(res.is_minimal().unwrap());
}

#[test]
fn tor_zero_is_the_module() {
    let r = fixtures::ut2(Q);
    let reg = Bimodule::regular(&r);
    for m in [FdModule::simple(&r, 0).unwrap(), FdModule::simple(&r, 1).unwrap(), FdModule::regular(&r)] {
        let dims = tor_dims(&m, &reg, 3).unwrap();
        assert_eq!(dims, vec![m.dim(), 0, 0, 0]);
    }
}

#[test]
fn tor_over_dual_numbers() {
    let r = fixtures::dual_numbers(Q);
    let rad = TwoSidedIdeal::radical(&r).unwrap();
    let k = Bimodule::along(&RingMap::quotient(&rad, "k").unwrap());
    let dims = tor_dims(&FdModule::simple(&r, 0).unwrap(), &k, 4).unwrap();
    assert_eq!(dims, vec![1; 5]);
}

#[test]
fn tor_needs_enough_terms() {
    let r = fixtures::dual_numbers(Q);
    let res = proj_resolution(&FdModule::simple(&r, 0).unwrap(), 2).unwrap();
    assert!(tor(&res, &Bimodule::regular(&r), 2).is_err());
    assert!(tor(&res, &Bimodule::regular(&r), 1).is_ok());
}

#[test]
fn identity_is_certified() {
    let r = fixtures::ut2(Q);
    let v = check_homological_epi(&RingMap::identity(&r), DEFAULT_MAX_DEGREE).unwrap();
    assert_eq!(v.outcome, HepiOutcome::Certified);
}

#[test]
fn corner_quotient_is_certified() {
    let v = check_homological_epi(&fixtures::corner_quotient(Q), DEFAULT_MAX_DEGREE).unwrap();
    assert_eq!((v.tensor_dim, v.target_dim), (1, 1));
    assert!(v.mult_iso);
    assert_eq!(v.tor[0], 0);
    assert!(v.terminated);
    assert_eq!(v.resolution_length, 1);
    assert_eq!(v.outcome, HepiOutcome::Certified);
}

#[test]
fn split_inclusion_is_refuted() {
    let v = check_homological_epi(&fixtures::diagonal_into_ut2(Q), DEFAULT_MAX_DEGREE).unwrap();
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
fn dual_numbers_to_field_is_refuted_by_tor() {
    let r = fixtures::dual_numbers(Q);
    let rad = TwoSidedIdeal::radical(&r).unwrap();
    let v = check_homological_epi(&RingMap::quotient(&rad, "k").unwrap(), 4).unwrap();
    assert!(v.mult_iso);
    assert_eq!(v.outcome, HepiOutcome::Refuted(HepiWitness::Tor { degree: 1, dim: 1 }));
}

#[test]
fn prime_field_resolution() {
    let r = fixtures::ut2(Field::prime(7).unwrap());
    let res = proj_resolution(&FdModule::simple(&r, 0).unwrap(), 3).unwrap();
    assert_eq!(res.terms(), &[vec![0], vec![1]]);
    assert!(res.verify_exactness());
}
