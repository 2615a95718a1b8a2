mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homepi::algebra::TwoSidedIdeal;
use homepi::fixtures;
use homepi::functors::FiniteSubcat;
use homepi::homcat::{recognize_triangle, Triangle};
use homepi::ideals::{factor_through_ideal, generate_ideal, WindowMap};
use homepi::linalg::{Field, LinearSolver, Mat, Scalar, Subspace};

const Q: Field = Field::Rational;

fn mat(rows: usize, cols: usize, vals: &[i64]) -> Mat {
    Mat::from_fn(Q, rows, cols, |i, j| Scalar::from_int(Q, vals[i * cols + j]))
}

fn small_mat() -> impl Strategy<Value = Mat> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| mat(r, c, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in small_mat()) {
        let s = LinearSolver::new(&a).unwrap();
        prop_assert_eq!(s.rank() + s.kernel().dim(), a.cols());
        prop_assert_eq!(a.rank().unwrap(), a.transpose().rank().unwrap());
        for v in s.kernel().basis() {
            prop_assert!(homepi::linalg::vec_ops::is_zero(&a.apply(v)));
        }
    }

    #[test]
    fn solve_recovers_a_preimage(a in small_mat(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<Scalar> = (0..a.cols()).map(|_| Scalar::from_int(Q, rng.gen_range(-3..=3))).collect();
        let b = a.apply(&x);
        let y = LinearSolver::new(&a).unwrap().solve(&b).unwrap().expect("b lies in the image");
        prop_assert_eq!(a.apply(&y), b);
    }

    #[test]
    fn multiplication_is_associative(a in small_mat(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..4);
        let m = rng.gen_range(1..4);
        let b = mat(a.cols(), k, &(0..a.cols() * k).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
        let c = mat(k, m, &(0..k * m).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn subspace_sum_and_intersection(a in small_mat(), b in small_mat()) {
        prop_assume!(a.cols() == b.cols());
        let n = a.cols();
        let (u, v) = (Subspace::span(Q, n, a.to_rows()).unwrap(), Subspace::span(Q, n, b.to_rows()).unwrap());
        let (s, i) = (u.sum(&v).unwrap(), u.intersect(&v).unwrap());
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u).unwrap() && u.is_subspace_of(&s).unwrap());
    }

    #[test]
    fn algebra_ideals_are_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = fixtures::ut2(Q);
        let gens: Vec<Vec<Scalar>> = (0..3)
            .map(|_| (0..3).map(|_| Scalar::from_int(Q, rng.gen_range(-1..=1))).collect())
            .collect();
        let small = TwoSidedIdeal::generated(&r, &gens[..1]).unwrap();
        let big = TwoSidedIdeal::generated(&r, &gens).unwrap();
        prop_assert!(small.is_subideal_of(&big));
        prop_assert!(small.product(&big).unwrap().is_subideal_of(&small));
        prop_assert!(small.square().unwrap().is_subideal_of(&big.square().unwrap()));
    }
}

fn window() -> Arc<FiniteSubcat> {
    let r = fixtures::ut2(Q);
    Arc::new(FiniteSubcat::new(&r, fixtures::ut2_indecomposables(&r), (-1, 1)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hom_ideals_are_monotone(seed in any::<u64>()) {
        let s = window();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<WindowMap> = (0..3)
            .map(|_| {
                let (i, j) = (rng.gen_range(0..s.len()), rng.gen_range(0..s.len()));
                let f = common::random_chain_map(&mut rng, s.object(i), s.object(j));
                WindowMap::locate(&s, &f).unwrap()
            })
            .collect();
        let small = generate_ideal(&s, &gens[..1]).unwrap();
        let big = generate_ideal(&s, &gens).unwrap();
        prop_assert!(small.is_subideal_of(&big).unwrap());
        prop_assert!(small.square().is_subideal_of(&big.square()).unwrap());
        prop_assert!(small.square().is_subideal_of(&small).unwrap());
        prop_assert!(small.closure_violation().is_none());
        let objs: Vec<usize> = (0..s.len()).filter(|_| rng.gen_bool(0.3)).collect();
        let fewer = factor_through_ideal(&s, &objs[..objs.len() / 2]).unwrap();
        prop_assert!(fewer.is_subideal_of(&factor_through_ideal(&s, &objs).unwrap()).unwrap());
    }

    #[test]
    fn cone_triangles_and_rotations_are_exact(seed in any::<u64>()) {
        let r = fixtures::ut2(Q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_complex(&mut rng, &r);
        let y = common::random_complex(&mut rng, &r);
        let f = common::random_chain_map(&mut rng, &x, &y);
        let mut t = Triangle::canonical(&f);
        for _ in 0..3 {
            let v = recognize_triangle(&t);
            prop_assert!(v.exact, "{:?}", v.reason);
            prop_assert!(v.certificate.verify(&t));
            t = t.rotate();
        }
    }
}
