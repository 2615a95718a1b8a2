use std::sync::Arc;

use super::{ensure_same, Algebra, RingMap, TwoSidedIdeal};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, vec_ops, Field, Mat, Scalar, Subspace};

/// A finite-dimensional right module. `action[i]` is the matrix of
/// `x -> x . b_i` acting on row vectors.
#[derive(Clone, Debug)]
pub struct FdModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Mat>,
}

fn check_square(m: &Mat, n: usize, what: &str) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Module(format!("{what} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
    }
    Ok(())
}

/// `sum_i a_i M_i`
fn combine(field: Field, n: usize, mats: &[Mat], a: &[Scalar]) -> Mat {
    let mut out = Mat::zeros(field, n, n);
    for (c, m) in a.iter().zip(mats) {
        if !c.is_zero() {
            out = out.add(&m.scale(c)).expect("same shape");
        }
    }
    out
}

impl FdModule {
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Result<FdModule> {
        if action.len() != algebra.dim() {
            return Err(Error::Module(format!(
                "{} action matrices for a {}-dimensional algebra",
                action.len(),
                algebra.dim()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            check_square(m, dim, &format!("action of {}", algebra.basis_names()[i]))?;
            if m.field() != algebra.field() {
                return Err(Error::Module("action over the wrong field".into()));
            }
        }
        let module = FdModule { algebra, dim, action };
        let r = &module.algebra;
        if module.action_of(r.unit()) != Mat::identity(r.field(), dim) {
            return Err(Error::Module("unit does not act as the identity".into()));
        }
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let lhs = module.action_of(&r.structure_constants()[i][j]);
                let rhs = module.action[i].mul(&module.action[j])?;
                if lhs != rhs {
                    return Err(Error::Module(format!(
                        "action is not compatible with {} * {}",
                        r.basis_names()[i],
                        r.basis_names()[j]
                    )));
                }
            }
        }
        Ok(module)
    }

    /// `R_R`
    pub fn regular(r: &Arc<Algebra>) -> FdModule {
        let action = (0..r.dim()).map(|i| r.right_mult(&r.basis_elem(i))).collect();
        FdModule {
            algebra: r.clone(),
            dim: r.dim(),
            action,
        }
    }

    /// `e_i R` with the echelon basis of `e_i R` inside `R`.
    pub fn projective(r: &Arc<Algebra>, i: usize) -> FdModule {
        let reg = FdModule::regular(r);
        reg.submodule(&reg.projective_span(i)).expect("e_i R is a submodule")
    }

    /// The subspace `e_i R` of `R`.
    pub fn projective_span(&self, i: usize) -> Subspace {
        let r = &self.algebra;
        let vs = (0..r.dim()).map(|k| r.mul(r.idempotent(i), &r.basis_elem(k))).collect();
        Subspace::span(r.field(), r.dim(), vs).expect("lengths match")
    }

    /// The simple top of `e_i R`.
    pub fn simple(r: &Arc<Algebra>, i: usize) -> Result<FdModule> {
        FdModule::projective(r, i).top()
    }

    pub fn zero(r: &Arc<Algebra>) -> FdModule {
        FdModule {
            algebra: r.clone(),
            dim: 0,
            action: vec![Mat::zeros(r.field(), 0, 0); r.dim()],
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    /// Matrix of right multiplication by `a`.
    pub fn action_of(&self, a: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.action, a)
    }

    /// `x . a`
    pub fn act(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec_ops::zeros(self.field(), self.dim);
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                vec_ops::axpy(&mut out, c, &m.left_apply(x));
            }
        }
        out
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| self.action.iter().all(|m| s.contains(&m.left_apply(v)).unwrap_or(false)))
    }

    /// Smallest submodule containing the given vectors.
    pub fn submodule_generated(&self, gens: &[Vec<Scalar>]) -> Result<Subspace> {
        let vs = gens
            .iter()
            .flat_map(|g| (0..self.algebra.dim()).map(move |i| self.action[i].left_apply(g)))
            .collect();
        Ok(Subspace::span(self.field(), self.dim, vs)?)
    }

    /// The submodule `s` as a module in its own echelon basis.
    pub fn submodule(&self, s: &Subspace) -> Result<FdModule> {
        if s.ambient() != self.dim {
            return Err(Error::Module("subspace lives in the wrong ambient space".into()));
        }
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            let mut rows = Vec::with_capacity(s.dim());
            for v in s.basis() {
                let w = m.left_apply(v);
                rows.push(s.coords(&w).ok_or_else(|| Error::Module("subspace is not a submodule".into()))?);
            }
            action.push(Mat::from_rows(self.field(), rows).unwrap_or_else(|_| Mat::zeros(self.field(), 0, 0)));
        }
        if s.dim() == 0 {
            action = vec![Mat::zeros(self.field(), 0, 0); self.action.len()];
        }
        Ok(FdModule {
            algebra: self.algebra.clone(),
            dim: s.dim(),
            action,
        })
    }

    /// `M / s`, in the basis of unit vectors at `s`'s free coordinates.
    pub fn quotient(&self, s: &Subspace) -> Result<FdModule> {
        if !self.is_submodule(s) {
            return Err(Error::Module("quotient by a non-submodule".into()));
        }
        let free = s.free_coords();
        let n = free.len();
        let action = self
            .action
            .iter()
            .map(|m| {
                let rows: Vec<Vec<Scalar>> = free.iter().map(|&p| s.quotient_coords(&m.row(p))).collect();
                if n == 0 {
                    Mat::zeros(self.field(), 0, 0)
                } else {
                    Mat::from_rows(self.field(), rows).expect("square")
                }
            })
            .collect();
        Ok(FdModule {
            algebra: self.algebra.clone(),
            dim: n,
            action,
        })
    }

    /// `M . I`
    pub fn times_ideal(&self, ideal: &TwoSidedIdeal) -> Result<Subspace> {
        ensure_same(&self.algebra, ideal.algebra(), "module times ideal")?;
        let mut vs = Vec::new();
        for a in ideal.basis() {
            let m = self.action_of(a);
            vs.extend(m.to_rows());
        }
        Ok(Subspace::span(self.field(), self.dim, vs)?)
    }

    /// `{m : m . I = 0}`
    pub fn annihilated_by(&self, ideal: &TwoSidedIdeal) -> Result<Subspace> {
        ensure_same(&self.algebra, ideal.algebra(), "annihilator")?;
        // m A_a = 0 for all a: stack the A_a side by side and take the left kernel
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for a in ideal.basis() {
            let m = self.action_of(a);
            for j in 0..self.dim {
                rows.push(m.col(j));
            }
        }
        Ok(Subspace::span(self.field(), self.dim, kernel_of_rows(self.field(), rows, self.dim))?)
    }

    pub fn is_annihilated_by(&self, ideal: &TwoSidedIdeal) -> bool {
        ideal.basis().iter().all(|a| self.action_of(a).is_zero())
    }

    pub fn radical_layer(&self) -> Result<Subspace> {
        let rad = TwoSidedIdeal::radical(&self.algebra)?;
        self.times_ideal(&rad)
    }

    /// `M / M rad R`
    pub fn top(&self) -> Result<FdModule> {
        let layer = self.radical_layer()?;
        self.quotient(&layer)
    }

    /// The subspace `M e`.
    pub fn idempotent_part(&self, e: &[Scalar]) -> Subspace {
        Subspace::span(self.field(), self.dim, self.action_of(e).to_rows()).expect("lengths match")
    }

    pub fn direct_sum(&self, other: &FdModule) -> Result<FdModule> {
        ensure_same(&self.algebra, &other.algebra, "direct sum")?;
        let (a, b) = (self.dim, other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                Mat::from_fn(self.field(), a + b, a + b, |i, j| match (i < a, j < a) {
                    (true, true) => x.get(i, j),
                    (false, false) => y.get(i - a, j - a),
                    _ => Scalar::zero(self.field()),
                })
            })
            .collect();
        Ok(FdModule {
            algebra: self.algebra.clone(),
            dim: a + b,
            action,
        })
    }

    /// Restriction along `f: R -> S` of a module over `S`.
    pub fn restrict(&self, f: &RingMap) -> Result<FdModule> {
        ensure_same(&self.algebra, f.target(), "restriction")?;
        let action = f.images().iter().map(|img| self.action_of(img)).collect();
        Ok(FdModule {
            algebra: f.source().clone(),
            dim: self.dim,
            action,
        })
    }

    /// `Hom_R(M, N)` as a subspace of `dim M x dim N` matrices flattened
    /// row-major. A matrix `F` is a homomorphism iff `A_i F = F B_i`.
    pub fn hom_space(&self, other: &FdModule) -> Result<Subspace> {
        ensure_same(&self.algebra, &other.algebra, "module hom")?;
        let (m, n) = (self.dim, other.dim);
        let f = self.field();
        let unknowns = m * n;
        let mut rows = Vec::new();
        for (a, b) in self.action.iter().zip(&other.action) {
            // entry (p, q) of A F - F B
            for p in 0..m {
                for q in 0..n {
                    let mut row = vec_ops::zeros(f, unknowns);
                    for k in 0..m {
                        let c = a.get(p, k);
                        if !c.is_zero() {
                            row[k * n + q] = &row[k * n + q] + &c;
                        }
                    }
                    for k in 0..n {
                        let c = b.get(k, q);
                        if !c.is_zero() {
                            row[p * n + k] = &row[p * n + k] - &c;
                        }
                    }
                    if !vec_ops::is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        Ok(Subspace::span(f, unknowns, kernel_of_rows(f, rows, unknowns))?)
    }

    pub fn hom_dim(&self, other: &FdModule) -> Result<usize> {
        Ok(self.hom_space(other)?.dim())
    }

    /// Generators of a projective cover: greedy basis vectors of `M e_i`
    /// modulo `M rad + (chosen so far)`, by idempotent and then basis order.
    pub fn cover_generators(&self) -> Result<Vec<(usize, Vec<Scalar>)>> {
        let mut acc = self.radical_layer()?;
        let mut gens = Vec::new();
        for i in 0..self.algebra.n_idempotents() {
            let part = self.idempotent_part(self.algebra.idempotent(i));
            for v in part.basis() {
                if !acc.contains(v)? {
                    acc = acc.sum(&Subspace::span(self.field(), self.dim, vec![v.clone()])?)?;
                    gens.push((i, v.clone()));
                }
            }
        }
        Ok(gens)
    }

    /// Whether `M` is projective: the cover built from [`FdModule::cover_generators`]
    /// is injective. Requires a primitive idempotent list.
    pub fn is_projective(&self) -> Result<bool> {
        let gens = self.cover_generators()?;
        let cover: usize = gens
            .iter()
            .map(|(i, _)| FdModule::regular(&self.algebra).projective_span(*i).dim())
            .sum();
        Ok(cover == self.dim)
    }

    /// Multiplicity of each simple in the top, measured as
    /// `dim(top(M) e_j) / dim(top(e_j R) e_j)`.
    pub fn top_multiplicities(&self) -> Result<Vec<usize>> {
        let top = self.top()?;
        let r = &self.algebra;
        (0..r.n_idempotents())
            .map(|j| {
                let e = r.idempotent(j);
                let num = top.idempotent_part(e).dim();
                let den = FdModule::simple(r, j)?.idempotent_part(e).dim();
                if den == 0 || num % den != 0 {
                    return Err(Error::Module(format!("top multiplicity at idempotent {j} is not integral")));
                }
                Ok(num / den)
            })
            .collect()
    }
}

/// An `(R, S)`-bimodule. Left actions use the row convention too:
/// `a . x = x L_a`, so `L_{ab} = L_b L_a`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Mat>,
    right_action: Vec<Mat>,
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Mat>,
        right_action: Vec<Mat>,
    ) -> Result<Bimodule> {
        if left.field() != right.field() {
            return Err(Error::Bimodule("left and right algebras over different fields".into()));
        }
        FdModule::new(right.clone(), dim, right_action.clone()).map_err(|e| Error::Bimodule(format!("right action: {e}")))?;
        FdModule::new(left.opposite(), dim, left_action.clone())
            .map_err(|e| Error::Bimodule(format!("left action: {e}")))?;
        for (i, l) in left_action.iter().enumerate() {
            for (j, r) in right_action.iter().enumerate() {
                if l.mul(r)? != r.mul(l)? {
                    return Err(Error::Bimodule(format!(
                        "actions of {} and {} do not commute",
                        left.basis_names()[i],
                        right.basis_names()[j]
                    )));
                }
            }
        }
        Ok(Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        })
    }

    /// `R` as an `(R, R)`-bimodule.
    pub fn regular(r: &Arc<Algebra>) -> Bimodule {
        Bimodule::along(&RingMap::identity(r))
    }

    /// `S` as an `(R, S)`-bimodule via `f: R -> S`; tensoring with it is
    /// induction along `f`.
    pub fn along(f: &RingMap) -> Bimodule {
        let s = f.target();
        Bimodule {
            left: f.source().clone(),
            right: s.clone(),
            dim: s.dim(),
            left_action: f.images().iter().map(|a| s.left_mult(a)).collect(),
            right_action: (0..s.dim()).map(|i| s.right_mult(&s.basis_elem(i))).collect(),
        }
    }

    /// `S` as an `(S, R)`-bimodule via `f: R -> S`; tensoring with it is
    /// restriction along `f`.
    pub fn restriction(f: &RingMap) -> Bimodule {
        let s = f.target();
        Bimodule {
            left: s.clone(),
            right: f.source().clone(),
            dim: s.dim(),
            left_action: (0..s.dim()).map(|i| s.left_mult(&s.basis_elem(i))).collect(),
            right_action: f.images().iter().map(|a| s.right_mult(a)).collect(),
        }
    }

    /// A two-sided ideal as an `(R, R)`-bimodule in its echelon basis.
    pub fn from_ideal(ideal: &TwoSidedIdeal) -> Bimodule {
        let r = ideal.algebra();
        let space = ideal.space();
        let restrict = |m: &Mat| {
            let rows: Vec<Vec<Scalar>> = space
                .basis()
                .iter()
                .map(|v| space.coords(&m.left_apply(v)).expect("ideal is closed"))
                .collect();
            if rows.is_empty() {
                Mat::zeros(r.field(), 0, 0)
            } else {
                Mat::from_rows(r.field(), rows).expect("square")
            }
        };
        Bimodule {
            left: r.clone(),
            right: r.clone(),
            dim: space.dim(),
            left_action: (0..r.dim()).map(|i| restrict(&r.left_mult(&r.basis_elem(i)))).collect(),
            right_action: (0..r.dim()).map(|i| restrict(&r.right_mult(&r.basis_elem(i)))).collect(),
        }
    }

    pub fn left(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn left_action(&self) -> &[Mat] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Mat] {
        &self.right_action
    }

    pub fn left_of(&self, a: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.left_action, a)
    }

    pub fn right_of(&self, s: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.right_action, s)
    }

    /// `a . x`
    pub fn act_left(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.left_of(a).left_apply(x)
    }

    /// `x . s`
    pub fn act_right(&self, x: &[Scalar], s: &[Scalar]) -> Vec<Scalar> {
        self.right_of(s).left_apply(x)
    }

    pub fn as_right_module(&self) -> FdModule {
        FdModule {
            algebra: self.right.clone(),
            dim: self.dim,
            action: self.right_action.clone(),
        }
    }

    /// The left structure as a right module over `R^op`.
    pub fn as_left_module_op(&self) -> FdModule {
        FdModule {
            algebra: self.left.opposite(),
            dim: self.dim,
            action: self.left_action.clone(),
        }
    }

    /// The subspace `e B` for an element `e` of the left algebra.
    pub fn left_part(&self, e: &[Scalar]) -> Subspace {
        Subspace::span(self.field(), self.dim, self.left_of(e).to_rows()).expect("lengths match")
    }
}
