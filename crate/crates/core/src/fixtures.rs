//! Small algebras and complexes built in code, used by tests, benchmarks and
//! the bundled fixture files.

use std::sync::Arc;

use crate::algebra::{validate_algebra, Algebra, RawAlgebra, RingMap, TwoSidedIdeal};
use crate::homcat::{BlockMat, GradedMap, ProjComplex, Triangle};
use crate::linalg::{unit, Field, Scalar};

fn table(field: Field, dim: usize, products: &[(usize, usize, usize)]) -> Vec<Vec<Vec<Scalar>>> {
    let mut t = vec![vec![vec![Scalar::zero(field); dim]; dim]; dim];
    for &(i, j, l) in products {
        t[i][j] = unit(field, dim, l);
    }
    t
}

/// Upper triangular 2x2 matrices, basis `e11, e12, e22`.
pub fn ut2_raw(field: Field) -> RawAlgebra {
    let one = Scalar::one(field);
    let zero = Scalar::zero(field);
    RawAlgebra {
        name: "UT2".into(),
        field,
        basis_names: vec!["e11".into(), "e12".into(), "e22".into()],
        table: table(field, 3, &[(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)]),
        unit: vec![one.clone(), zero.clone(), one],
        idempotents: vec![unit(field, 3, 0), unit(field, 3, 2)],
        primitive: true,
    }
}

pub fn ut2(field: Field) -> Arc<Algebra> {
    validate_algebra(ut2_raw(field)).expect("UT2 is an algebra")
}

pub fn k_times_k(field: Field) -> Arc<Algebra> {
    let one = Scalar::one(field);
    validate_algebra(RawAlgebra {
        name: "kxk".into(),
        field,
        basis_names: vec!["u1".into(), "u2".into()],
        table: table(field, 2, &[(0, 0, 0), (1, 1, 1)]),
        unit: vec![one.clone(), one],
        idempotents: vec![unit(field, 2, 0), unit(field, 2, 1)],
        primitive: true,
    })
    .expect("k x k is an algebra")
}

/// `k[x]/(x^2)`, basis `1, x`.
pub fn dual_numbers(field: Field) -> Arc<Algebra> {
    validate_algebra(RawAlgebra {
        name: "k[x]/x^2".into(),
        field,
        basis_names: vec!["1".into(), "x".into()],
        table: table(field, 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1)]),
        unit: unit(field, 2, 0),
        idempotents: vec![unit(field, 2, 0)],
        primitive: true,
    })
    .expect("dual numbers form an algebra")
}

/// The diagonal inclusion `k x k -> UT2`.
pub fn diagonal_into_ut2(field: Field) -> RingMap {
    let r = ut2(field);
    RingMap::new(k_times_k(field), r.clone(), vec![r.basis_elem(0), r.basis_elem(2)]).expect("diagonal inclusion is a ring map")
}

/// The ideal `span{e12, e22}` of UT2.
pub fn corner_ideal(r: &Arc<Algebra>) -> TwoSidedIdeal {
    TwoSidedIdeal::span(r, vec![r.basis_elem(1), r.basis_elem(2)]).expect("span{e12, e22} is an ideal")
}

/// `UT2 -> UT2 / span{e12, e22}`, a one-dimensional quotient.
pub fn corner_quotient(field: Field) -> RingMap {
    let r = ut2(field);
    RingMap::quotient(&corner_ideal(&r), "UT2/a").expect("quotient exists")
}

/// `e_i R` in degree 0.
pub fn projective_stalk(r: &Arc<Algebra>, i: usize) -> ProjComplex {
    ProjComplex::stalk(r, 0, vec![i]).expect("stalk complex")
}

/// The projective resolution `P2 --e12--> P1` of the simple top of `P1`,
/// in degrees -1 and 0.
pub fn ut2_s1_resolution(r: &Arc<Algebra>) -> ProjComplex {
    let d = BlockMat::from_rows(r, vec![0], vec![1], vec![vec![r.basis_elem(1)]]).expect("shape");
    ProjComplex::new(r.clone(), -1, vec![vec![1], vec![0]], vec![d]).expect("d o d = 0 trivially")
}

/// The triangle `S2 -> P1 -> S1 -> Sigma S2` over UT2 coming from the
/// non-split extension of the simple modules.
pub fn ut2_triangle(r: &Arc<Algebra>) -> Triangle {
    let s1 = ut2_s1_resolution(r);
    let s2 = projective_stalk(r, 1);
    let p1 = projective_stalk(r, 0);
    let one = |x: usize, t: usize, s: usize| BlockMat::from_rows(r, vec![t], vec![s], vec![vec![r.basis_elem(x)]]).expect("shape");
    let alpha = GradedMap::chain_map(s2.clone(), p1.clone(), vec![(0, one(1, 0, 1))]).expect("chain map");
    let beta = GradedMap::chain_map(p1, s1.clone(), vec![(0, one(0, 0, 0))]).expect("chain map");
    let gamma = GradedMap::chain_map(s1, s2.shift(1), vec![(-1, one(2, 1, 1))]).expect("chain map");
    Triangle::new(alpha, beta, gamma).expect("maps compose")
}

/// The indecomposables `X1 = S2`, `X2 = S1`, `X3 = P1` of `K^b(proj UT2)`
/// up to shift, as projective complexes.
pub fn ut2_indecomposables(r: &Arc<Algebra>) -> Vec<(String, ProjComplex)> {
    vec![
        ("X1".into(), projective_stalk(r, 1)),
        ("X2".into(), ut2_s1_resolution(r)),
        ("X3".into(), projective_stalk(r, 0)),
    ]
}
