//! Almost module categories `Mod R / a^perp` for idempotent ideals, realized
//! through the corner algebra `eRe` when `a = ReR`, plus the derived ideal
//! cut out by `Cone(a (x) a -> R)` and the Laurent contraction checker.

mod contraction;

pub use contraction::{koszul_localized, verify_contraction, ContractionFixture, LaurentRing};

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{bimodule_tensor, corner_algebra, Algebra, Bimodule, Elem, FdModule, TwoSidedIdeal};
use crate::error::{Error, Result};
use crate::functors::FiniteSubcat;
use crate::homcat::{cone, BlockMat, GradedMap, HomSpace, ProjComplex};
use crate::ideals::HomIdeal;
use crate::linalg::{kernel_of_rows, vec_ops, Mat, Scalar, Subspace};

/// An idempotent two-sided ideal, optionally presented as `ReR`.
#[derive(Clone, Debug)]
pub struct AlmostSetup {
    algebra: Arc<Algebra>,
    idempotent: Option<Elem>,
    ideal: TwoSidedIdeal,
}

impl AlmostSetup {
    pub fn new(ideal: TwoSidedIdeal) -> Result<AlmostSetup> {
        if !ideal.is_idempotent()? {
            return Err(Error::Ideal(format!("a^2 has dimension {} but a has dimension {}", ideal.square()?.dim(), ideal.dim())));
        }
        Ok(AlmostSetup {
            algebra: ideal.algebra().clone(),
            idempotent: None,
            ideal,
        })
    }

    pub fn from_idempotent(r: &Arc<Algebra>, e: &[Scalar]) -> Result<AlmostSetup> {
        if !r.is_idempotent_elem(e) {
            return Err(Error::NotIdempotent);
        }
        let ideal = TwoSidedIdeal::generated_by_idempotent(r, e)?;
        Ok(AlmostSetup {
            algebra: r.clone(),
            idempotent: Some(e.to_vec()),
            ideal,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn idempotent(&self) -> Option<&Elem> {
        self.idempotent.as_ref()
    }

    pub fn ideal(&self) -> &TwoSidedIdeal {
        &self.ideal
    }
}

/// Projectives, simples and `R` itself, named `P1.., S1.., R`.
pub fn standard_modules(r: &Arc<Algebra>) -> Result<Vec<(String, FdModule)>> {
    let n = r.n_idempotents();
    let mut out: Vec<(String, FdModule)> = (0..n).map(|i| (format!("P{}", i + 1), FdModule::projective(r, i))).collect();
    for i in 0..n {
        out.push((format!("S{}", i + 1), FdModule::simple(r, i)?));
    }
    out.push(("R".into(), FdModule::regular(r)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub module: String,
    pub test_module: String,
    /// `dim Hom(M / Ma, N)` and `dim Hom(M, N)`
    pub hom_from_quotient: usize,
    pub hom_from_module: usize,
    /// `dim Hom(N, ann_M a)` and `dim Hom(N, M)`
    pub hom_into_annihilator: usize,
    pub hom_into_module: usize,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.hom_from_quotient == self.hom_from_module && self.hom_into_annihilator == self.hom_into_module
    }
}

/// `R / a^2` with the sub `a / a^2` and quotient `R / a` in `a^perp` while
/// the middle term is not: `1 . x` is nonzero modulo `a^2` for `x` in `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreWitness {
    pub module_dim: usize,
    pub sub_dim: usize,
    pub quotient_dim: usize,
    pub sub_annihilated: bool,
    pub quotient_annihilated: bool,
    pub module_annihilated: bool,
    pub acting_element: Elem,
}

impl SerreWitness {
    pub fn is_failure(&self) -> bool {
        self.sub_annihilated && self.quotient_annihilated && !self.module_annihilated
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SerreOutcome {
    Adjunction(Vec<AdjunctionCheck>),
    Failure(SerreWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub ideal_dim: usize,
    pub square_dim: usize,
    pub outcome: SerreOutcome,
}

impl SerreReport {
    pub fn idempotent(&self) -> bool {
        self.ideal_dim == self.square_dim
    }

    /// True when the branch taken produced what it promises.
    pub fn certified(&self) -> bool {
        match &self.outcome {
            SerreOutcome::Adjunction(c) => c.iter().all(AdjunctionCheck::holds),
            SerreOutcome::Failure(w) => w.is_failure(),
        }
    }
}

/// For idempotent `a`, checks the adjunction identities on every sample `M`
/// against test modules `N` in `a^perp` (the samples killed by `a`, every
/// `M / Ma` and the zero module). Otherwise builds the `R / a^2` witness.
pub fn serre_adjoint_report(a: &TwoSidedIdeal, samples: &[(String, FdModule)]) -> Result<SerreReport> {
    let r = a.algebra();
    let sq = a.square()?;
    if sq.dim() != a.dim() {
        let reg = FdModule::regular(r);
        let module = reg.quotient(sq.space())?;
        let sub_space = Subspace::span(r.field(), module.dim(), a.basis().iter().map(|x| sq.space().quotient_coords(x)).collect())?;
        let sub = module.submodule(&sub_space)?;
        let quotient = reg.quotient(a.space())?;
        let acting = a
            .basis()
            .iter()
            .find(|x| !sq.contains(x))
            .expect("a is not contained in a^2")
            .clone();
        return Ok(SerreReport {
            ideal_dim: a.dim(),
            square_dim: sq.dim(),
            outcome: SerreOutcome::Failure(SerreWitness {
                module_dim: module.dim(),
                sub_dim: sub.dim(),
                quotient_dim: quotient.dim(),
                sub_annihilated: sub.is_annihilated_by(a),
                quotient_annihilated: quotient.is_annihilated_by(a),
                module_annihilated: module.is_annihilated_by(a),
                acting_element: acting,
            }),
        });
    }
    let mut tests: Vec<(String, FdModule)> = vec![("0".into(), FdModule::zero(r))];
    let mut quotients = Vec::new();
    for (name, m) in samples {
        if m.is_annihilated_by(a) {
            tests.push((name.clone(), m.clone()));
        }
        let q = m.quotient(&m.times_ideal(a)?)?;
        quotients.push(q.clone());
        tests.push((format!("{name}/{name}a"), q));
    }
    let pairs: Vec<(usize, usize)> = (0..samples.len()).flat_map(|i| (0..tests.len()).map(move |j| (i, j))).collect();
    let checks = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (name, m) = &samples[i];
            let (tname, n) = &tests[j];
            let ann = m.submodule(&m.annihilated_by(a)?)?;
            Ok(AdjunctionCheck {
                module: name.clone(),
                test_module: tname.clone(),
                hom_from_quotient: quotients[i].hom_dim(n)?,
                hom_from_module: m.hom_dim(n)?,
                hom_into_annihilator: n.hom_dim(&ann)?,
                hom_into_module: n.hom_dim(m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SerreReport {
        ideal_dim: a.dim(),
        square_dim: sq.dim(),
        outcome: SerreOutcome::Adjunction(checks),
    })
}

/// The corner algebra `eRe` and the functor `M -> Me`.
#[derive(Clone, Debug)]
pub struct AlmostQuotient {
    source: Arc<Algebra>,
    e: Elem,
    corner: Arc<Algebra>,
    embedding: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCheck {
    pub module: String,
    pub sub_dim: usize,
    pub module_dim: usize,
    pub quotient_dim: usize,
    pub exact: bool,
}

impl AlmostQuotient {
    pub fn new(r: &Arc<Algebra>, e: &[Scalar]) -> Result<AlmostQuotient> {
        let (corner, embedding) = corner_algebra(r, e)?;
        Ok(AlmostQuotient {
            source: r.clone(),
            e: e.to_vec(),
            corner,
            embedding,
        })
    }

    pub fn corner(&self) -> &Arc<Algebra> {
        &self.corner
    }

    pub fn embedding(&self) -> &[Elem] {
        &self.embedding
    }

    /// `Me` as a right `eRe`-module.
    pub fn apply(&self, m: &FdModule) -> Result<FdModule> {
        if !Algebra::same(m.algebra(), &self.source) {
            return Err(Error::AlgebraMismatch("module lives over another algebra".into()));
        }
        let part = m.idempotent_part(&self.e);
        let action = self
            .embedding
            .iter()
            .map(|b| {
                let act = m.action_of(b);
                let rows: Vec<Vec<Scalar>> = part
                    .basis()
                    .iter()
                    .map(|v| part.coords(&act.left_apply(v)).expect("Me is stable under eRe"))
                    .collect();
                if rows.is_empty() {
                    Mat::zeros(m.field(), 0, 0)
                } else {
                    Mat::from_rows(m.field(), rows).expect("square")
                }
            })
            .collect();
        FdModule::new(self.corner.clone(), part.dim(), action)
    }

    /// Applies the functor to `0 -> sub -> M -> M/sub -> 0` and checks that
    /// `sub e = sub cap Me` and that `Me -> (M/sub)e` is onto.
    pub fn check_exact(&self, name: &str, m: &FdModule, sub: &Subspace) -> Result<ExactnessCheck> {
        let me = m.idempotent_part(&self.e);
        let s = m.submodule(sub)?;
        let q = m.quotient(sub)?;
        let se = s.idempotent_part(&self.e).dim();
        let qe = q.idempotent_part(&self.e).dim();
        let meet = me.intersect(sub)?.dim();
        let image = Subspace::span(m.field(), q.dim(), me.basis().iter().map(|v| sub.quotient_coords(v)).collect())?;
        let image_in_qe = image.is_subspace_of(&q.idempotent_part(&self.e))?;
        Ok(ExactnessCheck {
            module: name.to_string(),
            sub_dim: se,
            module_dim: me.dim(),
            quotient_dim: qe,
            exact: se == meet && image.dim() == qe && image_in_qe && se + qe == me.dim(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub corner_dim: usize,
    pub images: Vec<(String, usize)>,
    pub exactness: Vec<ExactnessCheck>,
}

impl QuotientReport {
    pub fn exact(&self) -> bool {
        self.exactness.iter().all(|c| c.exact)
    }
}

/// Runs `M -> Me` over the samples and over `0 -> M rad -> M -> top M -> 0`.
pub fn almost_quotient(r: &Arc<Algebra>, e: &[Scalar], samples: &[(String, FdModule)]) -> Result<(AlmostQuotient, QuotientReport)> {
    let q = AlmostQuotient::new(r, e)?;
    let mut images = Vec::new();
    let mut exactness = Vec::new();
    for (name, m) in samples {
        images.push((name.clone(), q.apply(m)?.dim()));
        exactness.push(q.check_exact(name, m, &m.radical_layer()?)?);
    }
    let report = QuotientReport {
        corner_dim: q.corner.dim(),
        images,
        exactness,
    };
    Ok((q, report))
}

#[derive(Clone, Debug)]
pub struct AlmostDerived {
    pub ideal_dim: usize,
    pub tensor_dim: usize,
    /// rank of `a (x) a -> R`
    pub multiplication_rank: usize,
    pub ideal_projective: bool,
    pub tensor_projective: bool,
    /// `a (x) a` projective as a left module, checked as a right `R^op`-module
    pub tensor_left_projective: bool,
    /// summands of the projective cover `(+) e_i R -> a (x) a`
    pub tensor_summands: Vec<usize>,
    pub cone: ProjComplex,
    pub window: (i64, i64),
    pub ideal: HomIdeal,
    pub idempotent: bool,
}

/// `C = Cone(a (x)_R a -> R)` and the ideal `{phi in S : Hom(phi, Sigma^n C) = 0}`
/// for `n` in `window`. The default window is every shift at which some
/// `Hom(X, Sigma^n C)` with `X` in `S` can be nonzero, so nothing is lost.
pub fn almost_derived_ideal(a: &TwoSidedIdeal, s: &Arc<FiniteSubcat>, window: Option<(i64, i64)>) -> Result<AlmostDerived> {
    let r = a.algebra().clone();
    if !Algebra::same(&r, s.algebra()) {
        return Err(Error::AlgebraMismatch("ideal and subcategory live over different algebras".into()));
    }
    if !a.is_idempotent()? {
        return Err(Error::Ideal("the ideal is not idempotent".into()));
    }
    let ab = Bimodule::from_ideal(a);
    let ideal_projective = ab.as_right_module().is_projective()?;
    let (t, tensor) = bimodule_tensor(&ab, &ab)?;
    let tm = t.as_right_module();
    let tensor_projective = tm.is_projective()?;
    if !ideal_projective || !tensor_projective {
        return Err(Error::Witness(format!(
            "a projective: {ideal_projective}, a (x) a projective: {tensor_projective}"
        )));
    }
    let tensor_left_projective = t.as_left_module_op().is_projective()?;

    // mu on the class basis: the representative b_p (x) b_q goes to b_p b_q
    let basis = a.space().basis();
    let mu: Vec<Elem> = tensor.reps().iter().map(|&(p, q)| r.mul(&basis[p], &basis[q])).collect();
    let apply_mu = |v: &[Scalar]| {
        let mut out = r.zero();
        for (c, m) in v.iter().zip(&mu) {
            vec_ops::axpy(&mut out, c, m);
        }
        out
    };
    let mult_rows: Vec<Vec<Scalar>> = (0..tm.dim()).map(|k| apply_mu(&crate::linalg::unit(r.field(), tm.dim(), k))).collect();
    let multiplication_rank = Subspace::span(r.field(), r.dim(), mult_rows)?.dim();

    let gens = tm.cover_generators()?;
    let summands: Vec<usize> = gens.iter().map(|(i, _)| *i).collect();
    let all: Vec<usize> = (0..r.n_idempotents()).collect();
    let mut block = BlockMat::zero(&r, all.clone(), summands.clone());
    for (s_idx, (_, v)) in gens.iter().enumerate() {
        let img = apply_mu(v);
        for &t_idx in &all {
            block.set(t_idx, s_idx, r.mul(r.idempotent(t_idx), &img));
        }
    }
    let src = ProjComplex::stalk(&r, 0, summands.clone())?;
    let tgt = ProjComplex::stalk(&r, 0, all)?;
    let map = GradedMap::chain_map(src, tgt, vec![(0, block)])?;
    let c = cone(&map).complex;

    let window = match window {
        Some(w) => w,
        None => default_window(s, &c),
    };
    let ideal = cone_annihilator(s, &c, window)?;
    let idempotent = ideal.is_idempotent();
    Ok(AlmostDerived {
        ideal_dim: a.dim(),
        tensor_dim: tm.dim(),
        multiplication_rank,
        ideal_projective,
        tensor_projective,
        tensor_left_projective,
        tensor_summands: summands,
        cone: c,
        window,
        ideal,
        idempotent,
    })
}

fn default_window(s: &FiniteSubcat, c: &ProjComplex) -> (i64, i64) {
    if c.is_zero_object() || s.is_empty() {
        return (0, 0);
    }
    let lo = (0..s.len()).map(|i| s.object(i).lo()).min().expect("nonempty");
    let hi = (0..s.len()).map(|i| s.object(i).hi()).max().expect("nonempty");
    // Sigma^n C lives in degrees c.lo - n ..= c.hi - n; overlap with [lo, hi]
    (c.lo() - hi, c.hi() - lo)
}

/// `{phi : X_i -> X_j : psi phi = 0 for all psi : X_j -> Sigma^n C}`
pub fn cone_annihilator(s: &Arc<FiniteSubcat>, c: &ProjComplex, window: (i64, i64)) -> Result<HomIdeal> {
    let shifts: Vec<ProjComplex> = (window.0..=window.1).map(|n| c.shift(n)).collect();
    let homs: Vec<Vec<HomSpace>> = (0..s.len())
        .into_par_iter()
        .map(|i| shifts.iter().map(|t| HomSpace::new(s.object(i), t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let field = s.algebra().field();
    let pairs: Vec<(usize, usize)> = (0..s.len()).flat_map(|i| (0..s.len()).map(move |j| (i, j))).collect();
    let spaces = pairs
        .par_iter()
        .map(|&(i, j)| {
            let hom = s.hom(i, j);
            let d = hom.dim();
            if d == 0 {
                return Ok(Subspace::zero(field, 0));
            }
            let phis = hom.basis_maps();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for (hj, hi) in homs[j].iter().zip(&homs[i]) {
                for psi in hj.basis_maps() {
                    let cols: Vec<Vec<Scalar>> = phis
                        .iter()
                        .map(|phi| hi.coords(&psi.compose(phi)).expect("composite of chain maps"))
                        .collect();
                    rows.extend((0..hi.dim()).map(|k| cols.iter().map(|col| col[k].clone()).collect::<Vec<_>>()));
                }
            }
            Ok(Subspace::span(field, d, kernel_of_rows(field, rows, d))?)
        })
        .collect::<Result<Vec<Subspace>>>()?;
    HomIdeal::from_spaces(s.clone(), spaces)
}

#[cfg(test)]
mod tests;
