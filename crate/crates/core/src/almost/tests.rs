use super::*;
use crate::fixtures;
use crate::homcat::is_homotopy_equivalence;
use crate::linalg::Field;

const Q: Field = Field::Rational;

fn e11_ideal(r: &Arc<Algebra>) -> TwoSidedIdeal {
    TwoSidedIdeal::generated_by_idempotent(r, &r.basis_elem(0)).unwrap()
}

#[test]
fn whole_ring_is_trivial() {
    let r = fixtures::ut2(Q);
    let rep = serre_adjoint_report(&TwoSidedIdeal::whole(&r), &standard_modules(&r).unwrap()).unwrap();
    assert!(rep.idempotent());
    assert!(rep.certified());
    let SerreOutcome::Adjunction(checks) = rep.outcome else { panic!() };
    assert!(checks.iter().all(|c| c.hom_from_module == 0));
}

#[test]
fn corner_ideal_certifies_adjunction() {
    let r = fixtures::ut2(Q);
    let a = e11_ideal(&r);
    assert_eq!(a.dim(), 2);
    let setup = AlmostSetup::from_idempotent(&r, &r.basis_elem(0)).unwrap();
    assert_eq!(setup.ideal(), &a);
    let rep = serre_adjoint_report(&a, &standard_modules(&r).unwrap()).unwrap();
    assert!(rep.certified());
    let SerreOutcome::Adjunction(checks) = &rep.outcome else { panic!() };
    // S2 = P2 / 0 is killed by a and is a test module; Hom(P2, S2) = 1
    assert!(checks.iter().any(|c| c.module == "P2" && c.test_module == "S2" && c.hom_from_module == 1));
}

#[test]
fn radical_gives_serre_failure() {
    let r = fixtures::ut2(Q);
    let rad = TwoSidedIdeal::radical(&r).unwrap();
    assert!(AlmostSetup::new(rad.clone()).is_err());
    let rep = serre_adjoint_report(&rad, &[]).unwrap();
    let SerreOutcome::Failure(w) = &rep.outcome else { panic!("rad^2 = 0") };
    assert_eq!((w.module_dim, w.sub_dim, w.quotient_dim), (3, 1, 2));
    assert!(w.is_failure());
    assert_eq!(w.acting_element, r.basis_elem(1));
}

#[test]
fn corner_quotient_dimensions() {
    let r = fixtures::ut2(Q);
    let (q, rep) = almost_quotient(&r, &r.basis_elem(0), &standard_modules(&r).unwrap()).unwrap();
    assert_eq!(q.corner().dim(), 1);
    let dims: Vec<(&str, usize)> = rep.images.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    assert_eq!(dims, vec![("P1", 1), ("P2", 0), ("S1", 1), ("S2", 0), ("R", 1)]);
    assert!(rep.exact());
    let (_, id) = almost_quotient(&r, r.unit(), &standard_modules(&r).unwrap()).unwrap();
    assert_eq!(id.corner_dim, 3);
    assert!(id.images.iter().zip(standard_modules(&r).unwrap()).all(|((_, d), (_, m))| *d == m.dim()));
}

fn window(r: &Arc<Algebra>) -> Arc<FiniteSubcat> {
    Arc::new(FiniteSubcat::new(r, fixtures::ut2_indecomposables(r), (-2, 2)).unwrap())
}

#[test]
fn derived_ideal_cone_is_p2() {
    let r = fixtures::ut2(Q);
    let s = window(&r);
    let out = almost_derived_ideal(&e11_ideal(&r), &s, None).unwrap();
    assert_eq!((out.tensor_dim, out.multiplication_rank), (2, 2));
    assert_eq!(out.tensor_summands, vec![0]);
    assert!(out.tensor_left_projective);
    let c = &out.cone;
    let p2 = fixtures::projective_stalk(&r, 1);
    let proj = GradedMap::chain_map(
        c.clone(),
        p2,
        vec![(0, BlockMat::from_rows(&r, vec![1], vec![0, 1], vec![vec![r.zero(), r.basis_elem(2)]]).unwrap())],
    )
    .unwrap();
    assert!(is_homotopy_equivalence(&proj).is_some());
    assert!(out.idempotent);
    // the ideal annihilates Hom(-, Sigma^n P2): it kills P1 but not P2
    let x1 = s.index(crate::functors::ObjectRef { base: 0, shift: 0 }).unwrap();
    assert_eq!(out.ideal.dim(x1, x1), 0);
    let x3 = s.index(crate::functors::ObjectRef { base: 2, shift: 0 }).unwrap();
    assert_eq!(out.ideal.dim(x3, x3), 1);
}

#[test]
fn derived_ideal_extremes() {
    let r = fixtures::ut2(Q);
    let s = window(&r);
    let whole = almost_derived_ideal(&TwoSidedIdeal::whole(&r), &s, None).unwrap();
    assert!(crate::homcat::is_contractible(&whole.cone));
    assert_eq!(whole.ideal, HomIdeal::full(&s));
    let zero = almost_derived_ideal(&TwoSidedIdeal::zero(&r), &s, None).unwrap();
    assert_eq!(zero.cone.terms(), &[vec![0, 1]]);
    let x3 = s.index(crate::functors::ObjectRef { base: 2, shift: 1 }).unwrap();
    assert_eq!(zero.ideal.dim(x3, x3), 0);
    assert!(zero.ideal.is_subideal_of(&whole.ideal).unwrap());
}

#[test]
fn koszul_contraction() {
    let fx = koszul_localized();
    assert!(verify_contraction(&fx));
    let mut h = fx.homotopy().to_vec();
    h[1] = Mat::zeros(Q, 1, 2);
    assert!(!verify_contraction(&fx.with_homotopy(h).unwrap()));
    let ring = LaurentRing::new(vec![], vec![]).unwrap();
    assert!(verify_contraction(&ContractionFixture::new(ring.clone(), 0, vec![0], vec![], vec![]).unwrap()));
    assert!(!verify_contraction(&ContractionFixture::new(ring, 0, vec![1], vec![], vec![]).unwrap()));
}

#[test]
fn contraction_rejects_bad_input() {
    let fx = koszul_localized();
    let polys = LaurentRing::new(vec!["x".into(), "y".into()], vec![false, false]).unwrap();
    assert!(ContractionFixture::new(polys, -2, fx.ranks().to_vec(), fx.diffs().to_vec(), fx.homotopy().to_vec()).is_err());
    let mut d = fx.diffs().to_vec();
    d[0] = Mat::from_rows(Q, vec![vec![Scalar::one(Q), Scalar::zero(Q)]]).unwrap();
    assert!(ContractionFixture::new(fx.ring().clone(), -2, fx.ranks().to_vec(), d, fx.homotopy().to_vec()).is_err());
    assert!(fx.with_homotopy(vec![]).is_err());
}
