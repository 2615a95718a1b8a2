#![allow(dead_code)]

pub mod bar;

use std::path::PathBuf;
use std::sync::Arc;

use rand::Rng;

use homepi::algebra::{Algebra, Bimodule, FdModule, RingMap, TwoSidedIdeal};
use homepi::homcat::{BlockMat, GradedMap, HomSpace, ProjComplex};
use homepi::io::Fixture;
use homepi::linalg::Scalar;

pub const FIXTURES: [&str; 5] = ["corner", "split", "almost", "koszul", "dual"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

pub fn load(name: &str) -> Fixture {
    Fixture::from_path(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn small(rng: &mut impl Rng, field: homepi::linalg::Field) -> Scalar {
    Scalar::from_int(field, rng.gen_range(-2..=2))
}

/// A random element of `e_t R e_s`.
pub fn corner_elem(rng: &mut impl Rng, r: &Algebra, t: usize, s: usize) -> Vec<Scalar> {
    let mut x = r.zero();
    for v in r.corner(t, s).basis() {
        let c = small(rng, r.field());
        x = homepi::linalg::vec_ops::add(&x, &homepi::linalg::vec_ops::scale(&c, v));
    }
    x
}

fn random_term(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=2);
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

/// A random complex with one or two nonzero terms and at most two summands
/// per term.
pub fn random_complex(rng: &mut impl Rng, r: &Arc<Algebra>) -> ProjComplex {
    let n = r.n_idempotents();
    let lo = rng.gen_range(-1..=0);
    let a = random_term(rng, n);
    if rng.gen_bool(0.3) {
        return ProjComplex::stalk(r, lo, a).unwrap();
    }
    let b = random_term(rng, n);
    let entries = b
        .iter()
        .map(|&t| a.iter().map(|&s| corner_elem(rng, r, t, s)).collect())
        .collect();
    let d = BlockMat::from_rows(r, b.clone(), a.clone(), entries).unwrap();
    ProjComplex::new(r.clone(), lo, vec![a, b], vec![d]).unwrap()
}

/// A random chain map, not just a class representative.
pub fn random_chain_map(rng: &mut impl Rng, x: &ProjComplex, y: &ProjComplex) -> GradedMap {
    let h = HomSpace::new(x, y).unwrap();
    let field = x.algebra().field();
    let mut params = vec![Scalar::zero(field); h.layout().dim()];
    for v in h.cycles().basis() {
        let c = small(rng, field);
        params = homepi::linalg::vec_ops::add(&params, &homepi::linalg::vec_ops::scale(&c, v));
    }
    h.layout().to_map(&params)
}

/// Right modules used as test inputs over `r`: projectives, simples, `R`.
pub fn standard_modules(r: &Arc<Algebra>) -> Vec<(String, FdModule)> {
    homepi::almost::standard_modules(r).unwrap()
}

/// Every algebra, ring map and radical quotient mentioned in the bundled
/// fixtures, as `(label, M, N)` Tor inputs.
pub fn tor_inputs() -> Vec<(String, FdModule, Bimodule)> {
    let mut out = Vec::new();
    for name in FIXTURES {
        let fx = load(name);
        let mut maps: Vec<(String, RingMap)> = fx.ring_maps.iter().map(|(k, f)| (k.clone(), f.clone())).collect();
        for (a, r) in &fx.algebras {
            let rad = TwoSidedIdeal::radical(r).unwrap();
            if !rad.is_zero() {
                maps.push((format!("{a}/rad"), RingMap::quotient(&rad, "top").unwrap()));
            }
        }
        for (label, f) in &maps {
            let n = Bimodule::along(f);
            let mut ms = standard_modules(f.source());
            ms.push(("S_R".into(), Bimodule::restriction(f).as_right_module()));
            for (mname, m) in ms {
                out.push((format!("{name}:{label}:{mname}"), m, n.clone()));
            }
        }
    }
    out
}
