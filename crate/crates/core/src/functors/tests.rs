use super::*;
use crate::fixtures;
use crate::homcat::Triangle;
use crate::linalg::Field;

fn ut2() -> Arc<Algebra> {
    fixtures::ut2(Field::Rational)
}

#[test]
fn identity_functor_is_identity() {
    let r = ut2();
    let id = BimoduleFunctor::identity(&r);
    let t = fixtures::ut2_triangle(&r);
    for x in [t.x(), t.y(), t.z()] {
        assert_eq!(&id.apply(x), x);
    }
    assert_eq!(id.apply_map(&t.gamma), t.gamma);
    assert_eq!(id.k0_map().unwrap(), vec![vec![1, 0], vec![0, 1]]);
}

#[test]
fn corner_induction() {
    let g = BimoduleFunctor::induction("g", &fixtures::corner_quotient(Field::Rational)).unwrap();
    let r = g.source().clone();
    assert!(g.apply(&fixtures::projective_stalk(&r, 1)).is_zero_object());
    let p1 = g.apply(&fixtures::projective_stalk(&r, 0));
    assert_eq!(p1.terms(), &[vec![0]]);
    assert_eq!(g.k0_map().unwrap(), vec![vec![1, 0]]);
}

#[test]
fn split_restriction() {
    let f = BimoduleFunctor::restriction("f", &fixtures::diagonal_into_ut2(Field::Rational), None).unwrap();
    let r = f.source().clone();
    assert_eq!(f.image_summands(0), vec![0, 1]);
    assert_eq!(f.image_summands(1), vec![1]);
    assert_eq!(f.k0_map().unwrap(), vec![vec![1, 0], vec![1, 1]]);
    let s1 = f.apply(&fixtures::ut2_s1_resolution(&r));
    assert_eq!(s1.terms(), &[vec![1], vec![0, 1]]);
}

#[test]
fn bad_witness_rejected() {
    let r = ut2();
    let w = vec![
        vec![Witness {
            target_idempotent: 0,
            generator: r.basis_elem(1),
        }],
        vec![Witness {
            target_idempotent: 1,
            generator: r.basis_elem(2),
        }],
    ];
    assert!(BimoduleFunctor::new("bad", Bimodule::regular(&r), Some(w)).is_err());
}

#[test]
fn functoriality_and_shift() {
    let f = BimoduleFunctor::restriction("f", &fixtures::diagonal_into_ut2(Field::Rational), None).unwrap();
    let r = f.source().clone();
    let t = fixtures::ut2_triangle(&r);
    let composite = t.beta.compose(&t.alpha);
    assert_eq!(f.apply_map(&composite), f.apply_map(&t.beta).compose(&f.apply_map(&t.alpha)));
    for x in [t.x(), t.y(), t.z()] {
        for k in -2..=2 {
            assert_eq!(f.apply(&x.shift(k)), f.apply(x).shift(k));
        }
    }
    let image = Triangle::new(f.apply_map(&t.alpha), f.apply_map(&t.beta), f.apply_map(&t.gamma)).unwrap();
    assert!(crate::homcat::recognize_triangle(&image).exact);
}

fn split_window(r: &Arc<Algebra>) -> Arc<FiniteSubcat> {
    Arc::new(FiniteSubcat::new(r, fixtures::ut2_indecomposables(r), (-2, 2)).unwrap())
}

#[test]
fn identity_annihilator_is_zero() {
    let r = ut2();
    let s = split_window(&r);
    let id = BimoduleFunctor::identity(&r);
    assert!(ann_on_subcat(&id, &s).unwrap().is_zero());
    assert!(ker_on_subcat(&id, &s).is_empty());
}

#[test]
fn split_functor_kills_ext_class() {
    let f = BimoduleFunctor::restriction("f", &fixtures::diagonal_into_ut2(Field::Rational), None).unwrap();
    let r = f.source().clone();
    let s = split_window(&r);
    let t = fixtures::ut2_triangle(&r);
    let (x2, sx1) = (s.find(t.z()).unwrap(), s.find(t.gamma.target()).unwrap());
    assert_eq!(s.hom_dim(x2, sx1), 1);
    let ann = ann_on_subcat(&f, &s).unwrap();
    assert_eq!(ann.dim(x2, sx1), 1);
    assert!(ker_on_subcat(&f, &s).is_empty());
}

#[test]
fn corner_kernel_contains_p2() {
    let g = BimoduleFunctor::induction("g", &fixtures::corner_quotient(Field::Rational)).unwrap();
    let r = g.source().clone();
    let bases = vec![
        ("P1".to_string(), fixtures::projective_stalk(&r, 0)),
        ("P2".to_string(), fixtures::projective_stalk(&r, 1)),
    ];
    let s = FiniteSubcat::new(&r, bases, (-1, 1)).unwrap();
    let ker = ker_on_subcat(&g, &s);
    let expected: Vec<usize> = (-1..=1).map(|n| s.index(ObjectRef { base: 1, shift: n }).unwrap()).collect();
    assert_eq!(ker, expected);
}

#[test]
fn window_indexing() {
    let r = ut2();
    let s = split_window(&r);
    assert_eq!(s.len(), 15);
    for i in 0..s.len() {
        assert_eq!(s.index(s.object_ref(i)), Some(i));
    }
    let i = s.index(ObjectRef { base: 1, shift: 2 }).unwrap();
    assert_eq!(s.shifted(i, 1), None);
    assert_eq!(s.shifted(i, -4), s.index(ObjectRef { base: 1, shift: -2 }));
    let id = s.identity_coords(i);
    assert_eq!(s.compose(i, i, i, &id, &id), id);
}
