use std::collections::BTreeMap;

use super::{BlockMat, ProjComplex};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// A family `f^n: X^n -> Y^{n+degree}`. Chain maps have degree 0 and
/// null-homotopies degree -1.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: ProjComplex,
    target: ProjComplex,
    degree: i64,
    comps: BTreeMap<i64, BlockMat>,
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &GradedMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.degree == other.degree
            && self.source.degrees().all(|n| self.component(n) == other.component(n))
    }
}

impl GradedMap {
    /// Components not listed are zero. Shapes and corner membership are checked.
    pub fn new(source: ProjComplex, target: ProjComplex, degree: i64, comps: Vec<(i64, BlockMat)>) -> Result<GradedMap> {
        if !Algebra::same(source.algebra(), target.algebra()) {
            return Err(Error::ChainMap("source and target over different algebras".into()));
        }
        let mut map = BTreeMap::new();
        for (n, b) in comps {
            if b.cols() != source.term(n) || b.rows() != target.term(n + degree) {
                return Err(Error::ChainMap(format!("component in degree {n} does not match the terms")));
            }
            b.validate(source.algebra())
                .map_err(|e| Error::ChainMap(format!("component in degree {n}: {e}")))?;
            if !b.cols().is_empty() && !b.rows().is_empty() {
                map.insert(n, b);
            }
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            comps: map,
        })
    }

    /// Like [`GradedMap::new`] but also requires a chain map.
    pub fn chain_map(source: ProjComplex, target: ProjComplex, comps: Vec<(i64, BlockMat)>) -> Result<GradedMap> {
        let f = GradedMap::new(source, target, 0, comps)?;
        if !f.is_chain_map() {
            let bad = f.boundary().comps.keys().next().copied().unwrap_or(0);
            return Err(Error::ChainMap(format!("does not commute with the differentials in degree {bad}")));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: ProjComplex, target: ProjComplex, degree: i64, comps: BTreeMap<i64, BlockMat>) -> GradedMap {
        let comps = comps
            .into_iter()
            .filter(|(_, b)| !b.cols().is_empty() && !b.rows().is_empty() && !b.is_zero())
            .collect();
        GradedMap {
            source,
            target,
            degree,
            comps,
        }
    }

    pub fn zero(source: &ProjComplex, target: &ProjComplex, degree: i64) -> GradedMap {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(x: &ProjComplex) -> GradedMap {
        let comps = x
            .degrees()
            .map(|n| (n, BlockMat::identity(x.algebra(), x.term(n).to_vec())))
            .collect();
        GradedMap::from_parts(x.clone(), x.clone(), 0, comps)
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn algebra(&self) -> &std::sync::Arc<Algebra> {
        self.source.algebra()
    }

    pub fn component(&self, n: i64) -> BlockMat {
        match self.comps.get(&n) {
            Some(b) => b.clone(),
            None => BlockMat::zero(
                self.algebra(),
                self.target.term(n + self.degree).to_vec(),
                self.source.term(n).to_vec(),
            ),
        }
    }

    /// Nonzero components in degree order.
    pub fn components(&self) -> impl Iterator<Item = (i64, &BlockMat)> {
        self.comps.iter().map(|(n, b)| (*n, b))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(BlockMat::is_zero)
    }

    /// `self o earlier`
    pub fn compose(&self, earlier: &GradedMap) -> GradedMap {
        assert!(self.source == earlier.target, "composing maps with mismatched ends");
        let alg = self.algebra().clone();
        let comps = earlier
            .source
            .degrees()
            .map(|n| {
                let e = earlier.component(n);
                (n, self.component(n + earlier.degree).compose(&alg, &e))
            })
            .collect();
        GradedMap::from_parts(earlier.source.clone(), self.target.clone(), self.degree + earlier.degree, comps)
    }

    fn zip(&self, other: &GradedMap, f: impl Fn(&BlockMat, &BlockMat) -> BlockMat) -> GradedMap {
        assert!(
            self.source == other.source && self.target == other.target && self.degree == other.degree,
            "combining maps between different complexes"
        );
        let comps = self
            .source
            .degrees()
            .map(|n| (n, f(&self.component(n), &other.component(n))))
            .collect();
        GradedMap::from_parts(self.source.clone(), self.target.clone(), self.degree, comps)
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        self.zip(other, BlockMat::add)
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.zip(other, BlockMat::sub)
    }

    pub fn neg(&self) -> GradedMap {
        self.scale_by(|b| b.neg())
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        self.scale_by(|b| b.scale(c))
    }

    fn scale_by(&self, f: impl Fn(&BlockMat) -> BlockMat) -> GradedMap {
        let comps = self.comps.iter().map(|(n, b)| (*n, f(b))).collect();
        GradedMap::from_parts(self.source.clone(), self.target.clone(), self.degree, comps)
    }

    /// `d_Y f - (-1)^k f d_X` for `f` of degree `k`. Zero for chain maps;
    /// for a degree -1 map `h` it is `d h + h d`.
    pub fn boundary(&self) -> GradedMap {
        let alg = self.algebra().clone();
        let k = self.degree;
        let sign_odd = k.rem_euclid(2) == 1;
        let lo = self.source.lo() - 1;
        let hi = self.source.hi();
        let comps = (lo..=hi)
            .map(|n| {
                let left = self.target.d(n + k).compose(&alg, &self.component(n));
                let right = self.component(n + 1).compose(&alg, &self.source.d(n));
                let b = if sign_odd { left.add(&right) } else { left.sub(&right) };
                (n, b)
            })
            .collect();
        GradedMap::from_parts(self.source.clone(), self.target.clone(), k + 1, comps)
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.boundary().is_zero()
    }

    /// `Sigma^k f`, with the sign `(-1)^{k * degree}`.
    pub fn shift(&self, k: i64) -> GradedMap {
        let negate = (k * self.degree).rem_euclid(2) == 1;
        let comps = self
            .comps
            .iter()
            .map(|(n, b)| (n - k, if negate { b.neg() } else { b.clone() }))
            .collect();
        GradedMap::from_parts(self.source.shift(k), self.target.shift(k), self.degree, comps)
    }

    /// Replaces every block through `f`, moving to new ends with the same
    /// degree range. Used to transport maps along functors.
    pub fn map_blocks(&self, source: ProjComplex, target: ProjComplex, f: impl Fn(&BlockMat) -> BlockMat) -> GradedMap {
        let comps = self.comps.iter().map(|(n, b)| (*n, f(b))).collect();
        GradedMap::from_parts(source, target, self.degree, comps)
    }

    /// Same components, reinterpreted between other complexes with identical terms.
    pub(crate) fn with_ends(&self, source: ProjComplex, target: ProjComplex) -> GradedMap {
        GradedMap::from_parts(source, target, self.degree, self.comps.clone())
    }
}

#[derive(Clone, Debug)]
struct Slot {
    degree: i64,
    t: usize,
    s: usize,
    offset: usize,
    dim: usize,
}

/// Coordinates for all graded maps `X -> Y` of a fixed degree: each entry of
/// each component is written in the echelon basis of its corner `e_t R e_s`.
#[derive(Clone, Debug)]
pub struct MapLayout {
    source: ProjComplex,
    target: ProjComplex,
    degree: i64,
    slots: Vec<Slot>,
    dim: usize,
}

impl MapLayout {
    pub fn new(source: &ProjComplex, target: &ProjComplex, degree: i64) -> MapLayout {
        let alg = source.algebra();
        let mut slots = Vec::new();
        let mut offset = 0;
        for n in source.degrees() {
            let (src, tgt) = (source.term(n), target.term(n + degree));
            for (t, &i) in tgt.iter().enumerate() {
                for (s, &j) in src.iter().enumerate() {
                    let dim = alg.corner(i, j).dim();
                    if dim > 0 {
                        slots.push(Slot {
                            degree: n,
                            t,
                            s,
                            offset,
                            dim,
                        });
                        offset += dim;
                    }
                }
            }
        }
        MapLayout {
            source: source.clone(),
            target: target.clone(),
            degree,
            slots,
            dim: offset,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.source.algebra().field()
    }

    pub fn to_map(&self, params: &[Scalar]) -> GradedMap {
        let alg = self.source.algebra().clone();
        let mut comps: BTreeMap<i64, BlockMat> = BTreeMap::new();
        for slot in &self.slots {
            let coeffs = &params[slot.offset..slot.offset + slot.dim];
            if coeffs.iter().all(Scalar::is_zero) {
                continue;
            }
            let rows = self.target.term(slot.degree + self.degree);
            let cols = self.source.term(slot.degree);
            let block = comps
                .entry(slot.degree)
                .or_insert_with(|| BlockMat::zero(&alg, rows.to_vec(), cols.to_vec()));
            let x = alg.corner(rows[slot.t], cols[slot.s]).combine(coeffs);
            block.set(slot.t, slot.s, x);
        }
        GradedMap::from_parts(self.source.clone(), self.target.clone(), self.degree, comps)
    }

    pub fn unit_map(&self, k: usize) -> GradedMap {
        let mut params = vec![Scalar::zero(self.field()); self.dim];
        params[k] = Scalar::one(self.field());
        self.to_map(&params)
    }

    /// Coordinates of `f`; entries outside their corners are a bug upstream.
    pub fn params(&self, f: &GradedMap) -> Vec<Scalar> {
        debug_assert_eq!(f.degree(), self.degree);
        let alg = self.source.algebra().clone();
        let mut out = vec![Scalar::zero(self.field()); self.dim];
        let mut cache: BTreeMap<i64, BlockMat> = BTreeMap::new();
        for slot in &self.slots {
            let block = cache.entry(slot.degree).or_insert_with(|| f.component(slot.degree));
            let x = block.get(slot.t, slot.s);
            let rows = self.target.term(slot.degree + self.degree);
            let cols = self.source.term(slot.degree);
            let c = alg
                .corner(rows[slot.t], cols[slot.s])
                .coords(x)
                .expect("map entries lie in their corners");
            out[slot.offset..slot.offset + slot.dim].clone_from_slice(&c);
        }
        out
    }
}
