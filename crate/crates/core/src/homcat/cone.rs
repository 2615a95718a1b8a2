use std::collections::BTreeMap;

use super::{BlockMat, GradedMap, ProjComplex};

/// `Cone(f)` with its canonical maps `iota: Y -> Cone(f)` and
/// `pi: Cone(f) -> Sigma X`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ProjComplex,
    pub iota: GradedMap,
    pub pi: GradedMap,
}

pub fn cone(f: &GradedMap) -> Cone {
    assert_eq!(f.degree(), 0, "cone of a map of nonzero degree");
    let (x, y) = (f.source(), f.target());
    let alg = x.algebra().clone();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let (lo, hi) = match (x.is_zero_object(), y.is_zero_object()) {
        (true, true) => (0, -1),
        (true, false) => (y.lo(), y.hi()),
        (false, true) => (x.lo() - 1, x.hi() - 1),
        _ => (lo, hi),
    };
    let term = |n: i64| -> Vec<usize> { x.term(n + 1).iter().chain(y.term(n)).copied().collect() };
    let terms: Vec<Vec<usize>> = (lo..=hi).map(term).collect();
    let diffs: Vec<BlockMat> = (lo..hi)
        .map(|n| {
            BlockMat::blocks(
                &alg,
                &x.d(n + 1).neg(),
                &BlockMat::zero(&alg, x.term(n + 2).to_vec(), y.term(n).to_vec()),
                &f.component(n + 1),
                &y.d(n),
            )
        })
        .collect();
    let complex = ProjComplex::new(alg.clone(), lo, terms, diffs).expect("cone of a chain map is a complex");
    let sx = x.shift(1);
    let mut iota = BTreeMap::new();
    let mut pi = BTreeMap::new();
    for n in lo..=hi {
        let (a, b) = (x.term(n + 1).to_vec(), y.term(n).to_vec());
        let top = BlockMat::zero(&alg, a.clone(), b.clone());
        iota.insert(n, stack_rows(&alg, &top, &BlockMat::identity(&alg, b.clone())));
        let right = BlockMat::zero(&alg, a.clone(), b);
        pi.insert(n, stack_cols(&alg, &BlockMat::identity(&alg, a), &right));
    }
    Cone {
        iota: GradedMap::from_parts(y.clone(), complex.clone(), 0, iota),
        pi: GradedMap::from_parts(complex.clone(), sx, 0, pi),
        complex,
    }
}

fn stack_rows(alg: &crate::algebra::Algebra, top: &BlockMat, bottom: &BlockMat) -> BlockMat {
    let empty_top = BlockMat::zero(alg, top.rows().to_vec(), Vec::new());
    let empty_bottom = BlockMat::zero(alg, bottom.rows().to_vec(), Vec::new());
    BlockMat::blocks(alg, &empty_top, top, &empty_bottom, bottom)
}

fn stack_cols(alg: &crate::algebra::Algebra, left: &BlockMat, right: &BlockMat) -> BlockMat {
    let empty_left = BlockMat::zero(alg, Vec::new(), left.cols().to_vec());
    let empty_right = BlockMat::zero(alg, Vec::new(), right.cols().to_vec());
    BlockMat::blocks(alg, &empty_left, &empty_right, left, right)
}

/// The map `Cone(f) -> Cone(f')` induced by `u: A -> A'`, `v: B -> B'` and a
/// homotopy `h: A -> B'` with `v f - f' u = d h + h d`. In each degree it is
/// `[[u, 0], [h, v]]`. The homotopy identity is not checked here.
pub fn cone_morphism(f: &GradedMap, f2: &GradedMap, u: &GradedMap, v: &GradedMap, h: &GradedMap) -> GradedMap {
    let c1 = cone(f).complex;
    let c2 = cone(f2).complex;
    let alg = f.algebra().clone();
    let comps = c1
        .degrees()
        .map(|n| {
            let block = BlockMat::blocks(&alg, &u.component(n + 1), &BlockMat::zero(&alg, f2.source().term(n + 1).to_vec(), f.target().term(n).to_vec()), &h.component(n + 1), &v.component(n));
            (n, block)
        })
        .collect();
    GradedMap::from_parts(c1, c2, 0, comps)
}

/// `X + Y` with its inclusions and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub complex: ProjComplex,
    pub inclusions: [GradedMap; 2],
    pub projections: [GradedMap; 2],
}

pub fn direct_sum(x: &ProjComplex, y: &ProjComplex) -> DirectSum {
    let alg = x.algebra().clone();
    let (lo, hi) = match (x.is_zero_object(), y.is_zero_object()) {
        (true, true) => (0, -1),
        (true, false) => (y.lo(), y.hi()),
        (false, true) => (x.lo(), x.hi()),
        _ => (x.lo().min(y.lo()), x.hi().max(y.hi())),
    };
    let terms = (lo..=hi)
        .map(|n| x.term(n).iter().chain(y.term(n)).copied().collect())
        .collect();
    let diffs = (lo..hi)
        .map(|n| {
            BlockMat::blocks(
                &alg,
                &x.d(n),
                &BlockMat::zero(&alg, x.term(n + 1).to_vec(), y.term(n).to_vec()),
                &BlockMat::zero(&alg, y.term(n + 1).to_vec(), x.term(n).to_vec()),
                &y.d(n),
            )
        })
        .collect();
    let complex = ProjComplex::new(alg.clone(), lo, terms, diffs).expect("sum of complexes is a complex");
    let mut inc = [BTreeMap::new(), BTreeMap::new()];
    let mut proj = [BTreeMap::new(), BTreeMap::new()];
    for n in lo..=hi {
        let (a, b) = (x.term(n).to_vec(), y.term(n).to_vec());
        let ia = BlockMat::identity(&alg, a.clone());
        let ib = BlockMat::identity(&alg, b.clone());
        inc[0].insert(n, stack_rows(&alg, &ia, &BlockMat::zero(&alg, b.clone(), a.clone())));
        inc[1].insert(n, stack_rows(&alg, &BlockMat::zero(&alg, a.clone(), b.clone()), &ib));
        proj[0].insert(n, stack_cols(&alg, &ia, &BlockMat::zero(&alg, a.clone(), b.clone())));
        proj[1].insert(n, stack_cols(&alg, &BlockMat::zero(&alg, b.clone(), a.clone()), &ib));
    }
    let [i0, i1] = inc;
    let [p0, p1] = proj;
    DirectSum {
        inclusions: [
            GradedMap::from_parts(x.clone(), complex.clone(), 0, i0),
            GradedMap::from_parts(y.clone(), complex.clone(), 0, i1),
        ],
        projections: [
            GradedMap::from_parts(complex.clone(), x.clone(), 0, p0),
            GradedMap::from_parts(complex.clone(), y.clone(), 0, p1),
        ],
        complex,
    }
}
