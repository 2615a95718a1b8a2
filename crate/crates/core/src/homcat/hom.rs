use super::{cone, GradedMap, MapLayout, ProjComplex};
use crate::error::{Error, Result};
use crate::linalg::{LinearSolver, Scalar, Subspace};

/// A proof that `A x = b` has no solution: `y A = 0` and `y b != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Farkas {
    pub y: Vec<Scalar>,
}

impl Farkas {
    /// Checks the certificate against explicitly given columns of `A`.
    pub fn verify(&self, columns: &[Vec<Scalar>], b: &[Scalar]) -> bool {
        let dot = |v: &[Scalar]| {
            v.iter()
                .zip(&self.y)
                .fold(Scalar::zero(b.first().map(Scalar::field).unwrap_or(crate::linalg::Field::Rational)), |acc, (a, c)| {
                    &acc + &(a * c)
                })
        };
        self.y.len() == b.len() && columns.iter().all(|c| c.len() == b.len() && dot(c).is_zero()) && !dot(b).is_zero()
    }
}

/// Images of the unit homotopies `X -> Y` under `h -> d h + h d`, in the
/// degree-0 layout.
pub(crate) fn homotopy_columns(x: &ProjComplex, y: &ProjComplex, l0: &MapLayout) -> Vec<Vec<Scalar>> {
    let lm = MapLayout::new(x, y, -1);
    (0..lm.dim()).map(|k| l0.params(&lm.unit_map(k).boundary())).collect()
}

/// A homotopy `h` with `d h + h d = f`, if `f` is null-homotopic.
pub fn null_homotopy(f: &GradedMap) -> Option<GradedMap> {
    null_homotopy_or_witness(f).ok()
}

/// Either a null-homotopy of `f` or a certificate that none exists.
pub fn null_homotopy_or_witness(f: &GradedMap) -> std::result::Result<GradedMap, Farkas> {
    let (x, y) = (f.source(), f.target());
    let l0 = MapLayout::new(x, y, 0);
    let lm = MapLayout::new(x, y, -1);
    let cols = homotopy_columns(x, y, &l0);
    let b = l0.params(f);
    let solver = LinearSolver::from_columns(l0.field(), l0.dim(), &cols).expect("no Laurent entries");
    match solver.solve(&b).expect("shapes match") {
        Some(h) => Ok(lm.to_map(&h)),
        None => Err(Farkas {
            y: solver.infeasibility(&b).expect("inconsistent system has a witness"),
        }),
    }
}

/// Checks `d h + h d = f` directly.
pub fn verify_null_homotopy(f: &GradedMap, h: &GradedMap) -> bool {
    h.degree() == f.degree() - 1 && h.source() == f.source() && h.target() == f.target() && h.boundary() == *f
}

/// A contraction `h` with `d h + h d = id`, if `X` is contractible.
pub fn contraction(x: &ProjComplex) -> Option<GradedMap> {
    null_homotopy(&GradedMap::identity(x))
}

pub fn is_contractible(x: &ProjComplex) -> bool {
    x.is_zero_object() || contraction(x).is_some()
}

/// Whether the cone of the chain map `f` is contractible, with a contraction.
pub fn is_homotopy_equivalence(f: &GradedMap) -> Option<GradedMap> {
    if f.degree() != 0 {
        return None;
    }
    contraction(&cone(f).complex)
}

/// Searches `Hom(X, Y)` for a homotopy equivalence, trying each basis class and
/// then a few fixed combinations. A `None` answer is not a proof that `X` and
/// `Y` are inequivalent.
pub fn find_equivalence(x: &ProjComplex, y: &ProjComplex) -> Result<Option<(GradedMap, GradedMap)>> {
    let hom = HomSpace::new(x, y)?;
    if x.is_zero_object() && y.is_zero_object() {
        let f = GradedMap::zero(x, y, 0);
        return Ok(Some((f, GradedMap::zero(x, x, -1))));
    }
    let field = x.algebra().field();
    let d = hom.dim();
    let mut candidates: Vec<Vec<Scalar>> = (0..d)
        .map(|k| {
            let mut c = vec![Scalar::zero(field); d];
            c[k] = Scalar::one(field);
            c
        })
        .collect();
    for j in 0..=d as i64 {
        candidates.push((0..d as i64).map(|k| Scalar::from_int(field, (k + 1).pow(j as u32))).collect());
    }
    if d == 0 {
        candidates.push(Vec::new());
    }
    for c in candidates {
        let f = hom.map_from_coords(&c);
        if let Some(h) = is_homotopy_equivalence(&f) {
            return Ok(Some((f, h)));
        }
    }
    Ok(None)
}

/// `Hom(X, Y)` in the homotopy category: chain maps modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: ProjComplex,
    target: ProjComplex,
    layout: MapLayout,
    cycles: Subspace,
    boundaries: Subspace,
    basis: Vec<Vec<Scalar>>,
    class_solver: LinearSolver,
}

impl HomSpace {
    pub fn new(x: &ProjComplex, y: &ProjComplex) -> Result<HomSpace> {
        if !crate::algebra::Algebra::same(x.algebra(), y.algebra()) {
            return Err(Error::AlgebraMismatch("hom space between complexes over different algebras".into()));
        }
        let field = x.algebra().field();
        let l0 = MapLayout::new(x, y, 0);
        let l1 = MapLayout::new(x, y, 1);
        let defect_cols: Vec<Vec<Scalar>> = (0..l0.dim()).map(|k| l1.params(&l0.unit_map(k).boundary())).collect();
        let cycles = if l1.dim() == 0 {
            Subspace::full(field, l0.dim())
        } else {
            LinearSolver::from_columns(field, l1.dim(), &defect_cols)?.kernel()
        };
        let boundaries = Subspace::span(field, l0.dim(), homotopy_columns(x, y, &l0))?;
        let basis = cycles.quotient_basis(&boundaries)?;
        let mut cols = basis.clone();
        cols.extend(boundaries.basis().iter().cloned());
        let class_solver = LinearSolver::from_columns(field, l0.dim(), &cols)?;
        Ok(HomSpace {
            source: x.clone(),
            target: y.clone(),
            layout: l0,
            cycles,
            boundaries,
            basis,
            class_solver,
        })
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn layout(&self) -> &MapLayout {
        &self.layout
    }

    /// All chain maps, in layout coordinates.
    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    /// Null-homotopic chain maps, in layout coordinates.
    pub fn nullhomotopic(&self) -> &Subspace {
        &self.boundaries
    }

    pub fn basis_map(&self, k: usize) -> GradedMap {
        self.layout.to_map(&self.basis[k])
    }

    pub fn basis_maps(&self) -> Vec<GradedMap> {
        (0..self.dim()).map(|k| self.basis_map(k)).collect()
    }

    pub fn map_from_coords(&self, c: &[Scalar]) -> GradedMap {
        let mut params = vec![Scalar::zero(self.layout.field()); self.layout.dim()];
        for (coef, v) in c.iter().zip(&self.basis) {
            crate::linalg::vec_ops::axpy(&mut params, coef, v);
        }
        self.layout.to_map(&params)
    }

    /// Class coordinates of a chain map; `None` if `f` is not a chain map
    /// between these complexes.
    pub fn coords(&self, f: &GradedMap) -> Option<Vec<Scalar>> {
        if f.degree() != 0 || f.source() != &self.source || f.target() != &self.target {
            return None;
        }
        let p = self.layout.params(f);
        if !self.cycles.contains(&p).ok()? {
            return None;
        }
        let x = self.class_solver.solve(&p).ok()??;
        Some(x[..self.dim()].to_vec())
    }

    pub fn is_null(&self, f: &GradedMap) -> bool {
        self.coords(f).is_some_and(|c| c.iter().all(Scalar::is_zero))
    }
}
