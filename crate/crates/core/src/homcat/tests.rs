use super::*;
use crate::fixtures;
use crate::linalg::Field;

fn ut2() -> std::sync::Arc<crate::algebra::Algebra> {
    fixtures::ut2(Field::Rational)
}

#[test]
fn shift_round_trip() {
    let r = ut2();
    let s1 = fixtures::ut2_s1_resolution(&r);
    assert_eq!(s1.shift(1).shift(-1), s1);
    assert_eq!(s1.shift(1).lo(), -2);
    assert_eq!(s1.shift(1).d(-2), s1.d(-1).neg());
}

#[test]
fn ext_one_between_simples() {
    let r = ut2();
    let s1 = fixtures::ut2_s1_resolution(&r);
    let s2 = fixtures::projective_stalk(&r, 1);
    assert_eq!(HomSpace::new(&s1, &s2.shift(1)).unwrap().dim(), 1);
    assert_eq!(HomSpace::new(&s2, &s1.shift(1)).unwrap().dim(), 0);
    assert_eq!(HomSpace::new(&s1, &s1).unwrap().dim(), 1);
}

#[test]
fn identity_class_and_contractibility() {
    let r = ut2();
    let s1 = fixtures::ut2_s1_resolution(&r);
    let end = HomSpace::new(&s1, &s1).unwrap();
    let id = GradedMap::identity(&s1);
    assert!(!end.is_null(&id));
    assert!(!is_contractible(&s1));
    assert!(is_contractible(&ProjComplex::zero(&r)));

    let p = fixtures::projective_stalk(&r, 0);
    let c = cone(&GradedMap::identity(&p)).complex;
    let h = contraction(&c).expect("cone of the identity is contractible");
    assert!(verify_null_homotopy(&GradedMap::identity(&c), &h));
}

#[test]
fn cone_of_zero_splits() {
    let r = ut2();
    let s1 = fixtures::ut2_s1_resolution(&r);
    let p1 = fixtures::projective_stalk(&r, 0);
    let c = cone(&GradedMap::zero(&s1, &p1, 0)).complex;
    let sum = direct_sum(&p1, &s1.shift(1)).complex;
    assert!(find_equivalence(&c, &sum).unwrap().is_some());
}

#[test]
fn cone_of_ideal_inclusion() {
    let r = ut2();
    let p1 = fixtures::projective_stalk(&r, 0);
    let reg = ProjComplex::stalk(&r, 0, vec![0, 1]).unwrap();
    let inc = direct_sum(&p1, &fixtures::projective_stalk(&r, 1)).inclusions[0].with_ends(p1.clone(), reg);
    assert!(inc.is_chain_map());
    let c = cone(&inc).complex;
    let (f, h) = find_equivalence(&c, &fixtures::projective_stalk(&r, 1)).unwrap().unwrap();
    assert!(verify_null_homotopy(&GradedMap::identity(&cone(&f).complex), &h));
}

#[test]
fn canonical_triangle_and_corruption() {
    let r = ut2();
    let t = fixtures::ut2_triangle(&r);
    let v = recognize_triangle(&t);
    assert!(v.exact);
    assert!(v.certificate.verify(&t));
    let mut rot = t.clone();
    for _ in 0..3 {
        rot = rot.rotate();
        let v = recognize_triangle(&rot);
        assert!(v.exact);
        assert!(v.certificate.verify(&rot));
    }
    let bad = Triangle::new(t.alpha.clone(), t.beta.clone(), GradedMap::zero(t.z(), t.gamma.target(), 0)).unwrap();
    let v = recognize_triangle(&bad);
    assert!(!v.exact);
    assert!(v.certificate.verify(&bad));
}

#[test]
fn shift_adjunction() {
    let r = ut2();
    let objs = [
        fixtures::ut2_s1_resolution(&r),
        fixtures::projective_stalk(&r, 0),
        fixtures::projective_stalk(&r, 1),
    ];
    for x in &objs {
        for y in &objs {
            for n in -2..=2 {
                let a = HomSpace::new(x, &y.shift(n)).unwrap().dim();
                let b = HomSpace::new(&x.shift(-n), y).unwrap().dim();
                assert_eq!(a, b);
            }
        }
    }
}
