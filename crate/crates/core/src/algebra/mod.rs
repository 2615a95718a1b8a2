//! Finite-dimensional algebras given by structure constants, their ideals,
//! modules, bimodules and tensor products.
//!
//! Elements are coordinate vectors in the algebra's basis. Modules are right
//! modules with row-vector conventions: `x . a = x * A_a`, so the action
//! matrices satisfy `A_{ab} = A_a A_b`.

mod ideal;
mod module;
mod tensor;

pub use ideal::TwoSidedIdeal;
pub use module::{Bimodule, FdModule};
pub use tensor::{bimodule_tensor, module_tensor, Tensor};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{vec_ops, Field, Mat, Scalar, Subspace};

/// Algebra element in basis coordinates.
pub type Elem = Vec<Scalar>;

/// Unvalidated algebra data, as read from a fixture.
#[derive(Clone, Debug)]
pub struct RawAlgebra {
    pub name: String,
    pub field: Field,
    pub basis_names: Vec<String>,
    /// `table[i][j]` are the coordinates of `b_i * b_j`.
    pub table: Vec<Vec<Elem>>,
    pub unit: Elem,
    pub idempotents: Vec<Elem>,
    pub primitive: bool,
}

/// A validated finite-dimensional algebra with a complete set of orthogonal
/// idempotents.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    basis_names: Vec<String>,
    table: Vec<Vec<Elem>>,
    unit: Elem,
    idempotents: Vec<Elem>,
    primitive: bool,
    /// `corners[t][s]` is the subspace `e_t R e_s`.
    corners: Vec<Vec<Subspace>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.field == other.field
            && self.table == other.table
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }
}

/// Checks every algebra invariant and returns the validated algebra.
pub fn validate_algebra(raw: RawAlgebra) -> Result<Arc<Algebra>> {
    let d = raw.basis_names.len();
    if raw.table.len() != d {
        return Err(Error::StructureConstants(format!(
            "table has {} rows for {} basis elements",
            raw.table.len(),
            d
        )));
    }
    for (i, row) in raw.table.iter().enumerate() {
        if row.len() != d {
            return Err(Error::StructureConstants(format!("row {i} has {} entries, expected {d}", row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != d {
                return Err(Error::StructureConstants(format!(
                    "product ({i}, {j}) has {} coordinates, expected {d}",
                    v.len()
                )));
            }
            if v.iter().any(|s| s.is_laurent() || s.field() != raw.field) {
                return Err(Error::StructureConstants(format!("product ({i}, {j}) has scalars outside {}", raw.field)));
            }
        }
    }
    if raw.unit.len() != d {
        return Err(Error::Unit(format!("unit has {} coordinates, expected {d}", raw.unit.len())));
    }
    let mut alg = Algebra {
        name: raw.name,
        field: raw.field,
        basis_names: raw.basis_names,
        table: raw.table,
        unit: raw.unit,
        idempotents: raw.idempotents,
        primitive: raw.primitive,
        corners: Vec::new(),
    };
    for i in 0..d {
        for j in 0..d {
            let bij = alg.table[i][j].clone();
            for l in 0..d {
                let left = alg.mul(&bij, &alg.basis_elem(l));
                let right = alg.mul(&alg.basis_elem(i), &alg.table[j][l]);
                if left != right {
                    return Err(Error::NonAssociative { i, j, l });
                }
            }
        }
    }
    for i in 0..d {
        let b = alg.basis_elem(i);
        if alg.mul(&alg.unit, &b) != b || alg.mul(&b, &alg.unit) != b {
            return Err(Error::Unit(format!("fails on basis element {}", alg.basis_names[i])));
        }
    }
    if alg.idempotents.is_empty() {
        return Err(Error::Idempotents("empty idempotent list".into()));
    }
    let mut total = vec_ops::zeros(alg.field, d);
    for (i, e) in alg.idempotents.iter().enumerate() {
        if e.len() != d {
            return Err(Error::Idempotents(format!("idempotent {i} has wrong length")));
        }
        if vec_ops::is_zero(e) {
            return Err(Error::Idempotents(format!("idempotent {i} is zero")));
        }
        for (j, f) in alg.idempotents.iter().enumerate() {
            let p = alg.mul(e, f);
            let expect = if i == j { e.clone() } else { vec_ops::zeros(alg.field, d) };
            if p != expect {
                return Err(Error::Idempotents(if i == j {
                    format!("e{i} is not idempotent")
                } else {
                    format!("e{i} e{j} != 0")
                }));
            }
        }
        total = vec_ops::add(&total, e);
    }
    if total != alg.unit {
        return Err(Error::Idempotents("idempotents do not sum to the unit".into()));
    }
    let n = alg.idempotents.len();
    let mut corners = Vec::with_capacity(n);
    for t in 0..n {
        let mut row = Vec::with_capacity(n);
        for s in 0..n {
            let span: Vec<Elem> = (0..d)
                .map(|k| {
                    let x = alg.mul(&alg.idempotents[t], &alg.basis_elem(k));
                    alg.mul(&x, &alg.idempotents[s])
                })
                .collect();
            row.push(Subspace::span(alg.field, d, span)?);
        }
        corners.push(row);
    }
    alg.corners = corners;
    Ok(Arc::new(alg))
}

impl Algebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure_constants(&self) -> &[Vec<Elem>] {
        &self.table
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    pub fn idempotent(&self, i: usize) -> &Elem {
        &self.idempotents[i]
    }

    pub fn n_idempotents(&self) -> usize {
        self.idempotents.len()
    }

    /// Whether the idempotent list was declared primitive.
    pub fn primitive(&self) -> bool {
        self.primitive
    }

    /// `e_t R e_s`.
    pub fn corner(&self, t: usize, s: usize) -> &Subspace {
        &self.corners[t][s]
    }

    pub fn zero(&self) -> Elem {
        vec_ops::zeros(self.field, self.dim())
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        crate::linalg::unit(self.field, self.dim(), i)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Elem {
        let d = self.dim();
        let mut out = vec_ops::zeros(self.field, d);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                vec_ops::axpy(&mut out, &(x * y), &self.table[i][j]);
            }
        }
        out
    }

    /// Matrix of `x -> x * a` in row-vector convention.
    pub fn right_mult(&self, a: &[Scalar]) -> Mat {
        let rows: Vec<Elem> = (0..self.dim()).map(|i| self.mul(&self.basis_elem(i), a)).collect();
        Mat::from_rows(self.field, rows).expect("square")
    }

    /// Matrix of `x -> a * x` in row-vector convention.
    pub fn left_mult(&self, a: &[Scalar]) -> Mat {
        let rows: Vec<Elem> = (0..self.dim()).map(|i| self.mul(a, &self.basis_elem(i))).collect();
        Mat::from_rows(self.field, rows).expect("square")
    }

    pub fn is_idempotent_elem(&self, e: &[Scalar]) -> bool {
        self.mul(e, e) == e
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: Field) -> Arc<Algebra> {
        validate_algebra(RawAlgebra {
            name: "k".into(),
            field,
            basis_names: vec!["1".into()],
            table: vec![vec![vec![Scalar::one(field)]]],
            unit: vec![Scalar::one(field)],
            idempotents: vec![vec![Scalar::one(field)]],
            primitive: true,
        })
        .expect("ground field is an algebra")
    }

    pub fn opposite(&self) -> Arc<Algebra> {
        let d = self.dim();
        let table = (0..d).map(|i| (0..d).map(|j| self.table[j][i].clone()).collect()).collect();
        validate_algebra(RawAlgebra {
            name: format!("{}^op", self.name),
            field: self.field,
            basis_names: self.basis_names.clone(),
            table,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            primitive: self.primitive,
        })
        .expect("opposite of a valid algebra is valid")
    }

    /// Writes `e` as a sum of members of the idempotent list, if possible.
    pub fn idempotent_support(&self, e: &[Scalar]) -> Option<Vec<usize>> {
        let mut picked = Vec::new();
        let mut total = self.zero();
        for (i, ei) in self.idempotents.iter().enumerate() {
            let x = self.mul(e, ei);
            if vec_ops::is_zero(&x) {
                continue;
            }
            if &x != ei {
                return None;
            }
            picked.push(i);
            total = vec_ops::add(&total, ei);
        }
        (total == e).then_some(picked)
    }

    pub fn same(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn display_elem(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis_names[i].clone()
                } else {
                    format!("{c}*{}", self.basis_names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub(crate) fn ensure_same(a: &Arc<Algebra>, b: &Arc<Algebra>, what: &str) -> Result<()> {
    if Algebra::same(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(format!("{what}: {} vs {}", a.name(), b.name())))
    }
}

/// A unital algebra homomorphism, given by the images of the source basis.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    images: Vec<Elem>,
}

impl RingMap {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, images: Vec<Elem>) -> Result<RingMap> {
        if source.field() != target.field() {
            return Err(Error::RingMap("source and target fields differ".into()));
        }
        if images.len() != source.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::RingMap("image table has the wrong shape".into()));
        }
        let f = RingMap { source, target, images };
        if f.apply(f.source.unit()) != *f.target.unit() {
            return Err(Error::RingMap("unit is not preserved".into()));
        }
        let d = f.source.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = f.apply(&f.source.structure_constants()[i][j]);
                let rhs = f.target.mul(&f.images[i], &f.images[j]);
                if lhs != rhs {
                    return Err(Error::RingMap(format!(
                        "not multiplicative on ({}, {})",
                        f.source.basis_names()[i],
                        f.source.basis_names()[j]
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(alg: &Arc<Algebra>) -> RingMap {
        let images = (0..alg.dim()).map(|i| alg.basis_elem(i)).collect();
        RingMap {
            source: alg.clone(),
            target: alg.clone(),
            images,
        }
    }

    /// The quotient map `R -> R/a`. The quotient's basis is the set of basis
    /// elements of `R` that are not pivots of `a`'s echelon basis; its
    /// idempotents are the nonzero images of `R`'s idempotents.
    pub fn quotient(ideal: &TwoSidedIdeal, name: &str) -> Result<RingMap> {
        let r = ideal.algebra().clone();
        let space = ideal.space();
        let free = space.free_coords();
        if free.is_empty() {
            return Err(Error::Ideal("quotient by the whole algebra is the zero ring".into()));
        }
        let proj = |x: &Elem| space.quotient_coords(x);
        let table = free
            .iter()
            .map(|&i| free.iter().map(|&j| proj(&r.structure_constants()[i][j])).collect())
            .collect();
        let idempotents: Vec<Elem> = r
            .idempotents()
            .iter()
            .map(proj)
            .filter(|e| !vec_ops::is_zero(e))
            .collect();
        let target = validate_algebra(RawAlgebra {
            name: name.to_string(),
            field: r.field(),
            basis_names: free.iter().map(|&i| r.basis_names()[i].clone()).collect(),
            table,
            unit: proj(r.unit()),
            idempotents,
            primitive: r.primitive(),
        })?;
        let images = (0..r.dim()).map(|i| proj(&r.basis_elem(i))).collect();
        RingMap::new(r, target, images)
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: &[Scalar]) -> Elem {
        let mut out = self.target.zero();
        for (c, img) in x.iter().zip(&self.images) {
            vec_ops::axpy(&mut out, c, img);
        }
        out
    }
}

/// The corner algebra `eRe` with unit `e`, together with the embedding of
/// its basis into `R`.
pub fn corner_algebra(r: &Arc<Algebra>, e: &[Scalar]) -> Result<(Arc<Algebra>, Vec<Elem>)> {
    if !r.is_idempotent_elem(e) || vec_ops::is_zero(e) {
        return Err(Error::NotIdempotent);
    }
    let d = r.dim();
    let span: Vec<Elem> = (0..d).map(|i| r.mul(&r.mul(e, &r.basis_elem(i)), e)).collect();
    let space = Subspace::span(r.field(), d, span)?;
    let basis: Vec<Elem> = space.basis().to_vec();
    let coords = |x: &Elem| space.coords(x).expect("product stays in the corner");
    let table = basis
        .iter()
        .map(|a| basis.iter().map(|b| coords(&r.mul(a, b))).collect())
        .collect();
    let (idempotents, primitive) = match r.idempotent_support(e) {
        Some(idx) => (idx.iter().map(|&i| coords(r.idempotent(i))).collect(), r.primitive()),
        None => (vec![coords(&e.to_vec())], false),
    };
    let names = basis.iter().map(|b| r.display_elem(b)).collect();
    let alg = validate_algebra(RawAlgebra {
        name: format!("e{}e", r.name()),
        field: r.field(),
        basis_names: names,
        table,
        unit: coords(&e.to_vec()),
        idempotents,
        primitive,
    })?;
    Ok((alg, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn standard_algebras_validate() {
        let f = Field::Rational;
        assert_eq!(fixtures::ut2(f).dim(), 3);
        assert_eq!(fixtures::k_times_k(f).dim(), 2);
        assert_eq!(fixtures::dual_numbers(f).dim(), 2);
    }

    #[test]
    fn rejects_non_associative_table_with_witness() {
        // b1*b2 = b3, b3*b1 = b1, everything else zero: (b1 b2) b1 = b1 but b1 (b2 b1) = 0.
        let f = Field::Rational;
        let z = || vec![Scalar::zero(f); 4];
        let e = |i: usize| crate::linalg::unit(f, 4, i);
        let mut table = vec![vec![z(), z(), z(), z()]; 4];
        for i in 0..4 {
            table[0][i] = e(i);
            table[i][0] = e(i);
        }
        table[1][2] = e(3);
        table[3][1] = e(1);
        let raw = RawAlgebra {
            name: "bad".into(),
            field: f,
            basis_names: vec!["1".into(), "b1".into(), "b2".into(), "b3".into()],
            table,
            unit: e(0),
            idempotents: vec![e(0)],
            primitive: false,
        };
        match validate_algebra(raw) {
            Err(Error::NonAssociative { i, j, l }) => {
                assert_eq!((i, j, l), (1, 2, 1));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_idempotents() {
        let f = Field::Rational;
        let mut raw = fixtures::ut2_raw(f);
        raw.idempotents = vec![raw.idempotents[0].clone()];
        assert!(matches!(validate_algebra(raw), Err(Error::Idempotents(_))));
    }

    #[test]
    fn quotient_and_corner() {
        let f = Field::Rational;
        let r = fixtures::ut2(f);
        let a = TwoSidedIdeal::span(&r, vec![r.basis_elem(1), r.basis_elem(2)]).unwrap();
        let g = RingMap::quotient(&a, "k").unwrap();
        assert_eq!(g.target().dim(), 1);
        assert_eq!(g.target().n_idempotents(), 1);
        let (c, emb) = corner_algebra(&r, r.idempotent(0)).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(emb, vec![r.basis_elem(0)]);
    }
}
