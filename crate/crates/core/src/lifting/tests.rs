use super::*;
use crate::fixtures;
use crate::homcat::BlockMat;
use crate::linalg::Field;

const Q: Field = Field::Rational;

fn corner() -> BimoduleFunctor {
    BimoduleFunctor::induction("g", &fixtures::corner_quotient(Q)).unwrap()
}

fn split() -> BimoduleFunctor {
    BimoduleFunctor::restriction("f", &fixtures::diagonal_into_ut2(Q), None).unwrap()
}

#[test]
fn image_of_a_map_lifts_directly() {
    let f = split();
    let r = f.source().clone();
    let t = fixtures::ut2_triangle(&r);
    let alpha = f.apply_map(&t.beta);
    let LiftOutcome::Found(cert) = lift_chain_map(&f, t.y(), t.z(), &alpha, &SearchBudget::new(2, vec![])).unwrap() else {
        panic!("direct preimage exists");
    };
    assert_eq!(cert.depth(), 0);
    assert_eq!(&cert.x_prime, t.y());
    assert!(cert.verify(&f, t.y(), t.z(), &alpha));
    assert!(!cert.verify(&f, t.y(), t.z(), &alpha.scale(&Scalar::from_int(Q, 2))));
}

#[test]
fn corner_needs_one_cone() {
    let g = corner();
    let r = g.source().clone();
    let s = g.target().clone();
    let x = fixtures::ut2_s1_resolution(&r);
    let y = fixtures::projective_stalk(&r, 0);
    let (fx, fy) = (g.apply(&x), g.apply(&y));
    let one = BlockMat::from_rows(&s, vec![0], vec![0], vec![vec![s.unit().clone()]]).unwrap();
    let alpha = GradedMap::chain_map(fx, fy, vec![(0, one)]).unwrap();
    let budget = SearchBudget::new(3, vec![fixtures::projective_stalk(&r, 1)]);
    let LiftOutcome::Found(cert) = lift_chain_map(&g, &x, &y, &alpha, &budget).unwrap() else {
        panic!("lift exists at depth one");
    };
    assert_eq!(cert.depth(), 1);
    assert!(cert.verify(&g, &x, &y, &alpha));
    let zero = SearchBudget::new(0, vec![fixtures::projective_stalk(&r, 1)]);
    assert!(matches!(lift_chain_map(&g, &x, &y, &alpha, &zero).unwrap(), LiftOutcome::NotFound { .. }));
}

#[test]
fn generators_must_be_killed() {
    let g = corner();
    let r = g.source().clone();
    let p1 = fixtures::projective_stalk(&r, 0);
    let fp = g.apply(&p1);
    let budget = SearchBudget::new(1, vec![p1.clone()]);
    assert!(lift_chain_map(&g, &p1, &p1, &GradedMap::identity(&fp), &budget).is_err());
}

#[test]
fn split_projection_is_not_found() {
    let f = split();
    let r = f.source().clone();
    let b = f.target().clone();
    let (p1, p2) = (fixtures::projective_stalk(&r, 0), fixtures::projective_stalk(&r, 1));
    let (fp1, fp2) = (f.apply(&p1), f.apply(&p2));
    assert_eq!(fp1.terms(), &[vec![0, 1]]);
    let proj = BlockMat::from_rows(&b, vec![1], vec![0, 1], vec![vec![b.zero(), b.basis_elem(1)]]).unwrap();
    let alpha = GradedMap::chain_map(fp1, fp2, vec![(0, proj)]).unwrap();
    match lift_chain_map(&f, &p1, &p2, &alpha, &SearchBudget::new(4, vec![])).unwrap() {
        LiftOutcome::NotFound { note, .. } => assert!(note.is_some()),
        LiftOutcome::Found(_) => panic!("Hom(P1, P2) = 0"),
    }
}

#[test]
fn complexes_lift_over_the_identity() {
    let r = fixtures::ut2(Q);
    let id = BimoduleFunctor::identity(&r);
    let y = fixtures::ut2_s1_resolution(&r);
    let ComplexLiftOutcome::Found(l) = lift_complex(&id, &y, &[vec![1], vec![0]], &SearchBudget::new(1, vec![])).unwrap() else {
        panic!("identity lifts everything");
    };
    assert!(l.verify(&id, &y));
    assert_eq!(l.complex.terms(), y.terms());
}

#[test]
fn corner_complexes_lift() {
    let g = corner();
    let r = g.source().clone();
    let s = g.target().clone();
    let c = |k: i64| BlockMat::from_rows(&s, vec![0], vec![0], vec![vec![vec![Scalar::from_int(Q, k)]]]).unwrap();
    let budget = SearchBudget::new(1, vec![fixtures::projective_stalk(&r, 1)]);
    let two = ProjComplex::new(s.clone(), 0, vec![vec![0], vec![0]], vec![c(3)]).unwrap();
    let three = ProjComplex::new(s.clone(), -1, vec![vec![0], vec![0], vec![0]], vec![c(1), c(0)]).unwrap();
    let cases: Vec<(ProjComplex, Vec<Vec<usize>>)> = vec![
        (ProjComplex::stalk(&s, 2, vec![0]).unwrap(), vec![vec![0]]),
        (two.clone(), vec![vec![0], vec![0]]),
        (two, vec![vec![0, 1], vec![1, 0]]),
        (three, vec![vec![0], vec![0], vec![0]]),
    ];
    for (y, pre) in cases {
        let ComplexLiftOutcome::Found(l) = lift_complex(&g, &y, &pre, &budget).unwrap() else {
            panic!("corner complexes lift");
        };
        assert!(l.verify(&g, &y));
    }
}

#[test]
fn split_complex_lifts() {
    let f = split();
    let r = f.source().clone();
    let y = f.apply(&fixtures::ut2_s1_resolution(&r));
    let ComplexLiftOutcome::Found(l) = lift_complex(&f, &y, &[vec![1], vec![0]], &SearchBudget::new(1, vec![])).unwrap() else {
        panic!("image complexes lift");
    };
    assert!(l.verify(&f, &y));
}

#[test]
fn bad_preimages_rejected() {
    let g = corner();
    let s = g.target().clone();
    let y = ProjComplex::stalk(&s, 0, vec![0]).unwrap();
    assert!(lift_complex(&g, &y, &[vec![1]], &SearchBudget::new(1, vec![])).is_err());
    assert!(lift_complex(&g, &y, &[], &SearchBudget::new(1, vec![])).is_err());
}
