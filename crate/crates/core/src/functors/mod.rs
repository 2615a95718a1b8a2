//! Functors `- (x)_R B: K^b(proj R) -> K^b(proj S)` given by bimodules, and
//! their kernels and annihilators on finite windows.

mod subcat;

pub use subcat::{FiniteSubcat, ObjectRef};

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{Algebra, Bimodule, Elem, FdModule, RingMap};
use crate::error::{Error, Result};
use crate::homcat::{is_contractible, BlockMat, GradedMap, HomSpace, ProjComplex};
use crate::ideals::HomIdeal;
use crate::linalg::{kernel_of_rows, LinearSolver, Scalar, Subspace};

/// One summand `e_j S` of `e_i B`, generated by `generator` in `e_i B e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub target_idempotent: usize,
    pub generator: Elem,
}

#[derive(Clone, Debug)]
struct Decomposition {
    witnesses: Vec<Witness>,
    /// For each witness, the echelon basis of `e_j S`, in order.
    bases: Vec<Vec<Elem>>,
    solver: LinearSolver,
}

/// The functor `- (x)_R B` for an `(R, S)`-bimodule `B` whose summands
/// `e_i B` are projective right `S`-modules, each with an explicit
/// decomposition `e_i B = sum_k g_k S`.
#[derive(Clone, Debug)]
pub struct BimoduleFunctor {
    name: String,
    bimodule: Bimodule,
    decomps: Vec<Decomposition>,
}

impl BimoduleFunctor {
    /// Checks the supplied witnesses, or derives them from projective covers
    /// when none are given.
    pub fn new(name: &str, bimodule: Bimodule, witnesses: Option<Vec<Vec<Witness>>>) -> Result<BimoduleFunctor> {
        let r = bimodule.left().clone();
        let witnesses = match witnesses {
            Some(w) => {
                if w.len() != r.n_idempotents() {
                    return Err(Error::Witness(format!(
                        "{} witness lists for {} source idempotents",
                        w.len(),
                        r.n_idempotents()
                    )));
                }
                w
            }
            None => (0..r.n_idempotents()).map(|i| derive_witnesses(&bimodule, i)).collect::<Result<_>>()?,
        };
        let decomps = witnesses
            .into_iter()
            .enumerate()
            .map(|(i, w)| decompose(&bimodule, i, w))
            .collect::<Result<_>>()?;
        Ok(BimoduleFunctor {
            name: name.to_string(),
            bimodule,
            decomps,
        })
    }

    pub fn induction(name: &str, f: &RingMap) -> Result<BimoduleFunctor> {
        BimoduleFunctor::new(name, Bimodule::along(f), None)
    }

    pub fn restriction(name: &str, f: &RingMap, witnesses: Option<Vec<Vec<Witness>>>) -> Result<BimoduleFunctor> {
        BimoduleFunctor::new(name, Bimodule::restriction(f), witnesses)
    }

    pub fn identity(r: &Arc<Algebra>) -> BimoduleFunctor {
        BimoduleFunctor::new("id", Bimodule::regular(r), None).expect("R is projective over itself")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Algebra> {
        self.bimodule.left()
    }

    pub fn target(&self) -> &Arc<Algebra> {
        self.bimodule.right()
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn witnesses(&self, i: usize) -> &[Witness] {
        &self.decomps[i].witnesses
    }

    /// Summands of `F(e_i R)`.
    pub fn image_summands(&self, i: usize) -> Vec<usize> {
        self.decomps[i].witnesses.iter().map(|w| w.target_idempotent).collect()
    }

    fn image_term(&self, term: &[usize]) -> Vec<usize> {
        term.iter().flat_map(|&i| self.image_summands(i)).collect()
    }

    /// The block `F(x): F(e_s R) -> F(e_t R)` for `x` in `e_t R e_s`.
    fn transport_entry(&self, x: &Elem, t: usize, s: usize) -> Vec<Vec<Elem>> {
        let s_alg = self.target();
        let dt = &self.decomps[t];
        let ds = &self.decomps[s];
        let mut cols = Vec::with_capacity(ds.witnesses.len());
        for w in &ds.witnesses {
            let rhs = self.bimodule.act_left(x, &w.generator);
            let coeffs = dt
                .solver
                .solve(&rhs)
                .expect("shapes match")
                .expect("x g lies in e_t B, which the witnesses span");
            let mut col = Vec::with_capacity(dt.witnesses.len());
            let mut offset = 0;
            for basis in &dt.bases {
                let mut y = s_alg.zero();
                for (c, b) in coeffs[offset..offset + basis.len()].iter().zip(basis) {
                    crate::linalg::vec_ops::axpy(&mut y, c, b);
                }
                offset += basis.len();
                col.push(y);
            }
            cols.push(col);
        }
        (0..dt.witnesses.len())
            .map(|l| (0..ds.witnesses.len()).map(|k| cols[k][l].clone()).collect())
            .collect()
    }

    pub fn apply_block(&self, b: &BlockMat) -> BlockMat {
        let s_alg = self.target();
        let rows = self.image_term(b.rows());
        let cols = self.image_term(b.cols());
        let mut out = BlockMat::zero(s_alg, rows, cols);
        let mut r0 = 0;
        for (ti, &t) in b.rows().iter().enumerate() {
            let mut c0 = 0;
            let nt = self.decomps[t].witnesses.len();
            for (si, &s) in b.cols().iter().enumerate() {
                let ns = self.decomps[s].witnesses.len();
                let x = b.get(ti, si);
                if !crate::linalg::vec_ops::is_zero(x) {
                    for (l, row) in self.transport_entry(x, t, s).into_iter().enumerate() {
                        for (k, y) in row.into_iter().enumerate() {
                            out.set(r0 + l, c0 + k, y);
                        }
                    }
                }
                c0 += ns;
            }
            r0 += nt;
        }
        out
    }

    pub fn apply(&self, x: &ProjComplex) -> ProjComplex {
        assert!(Algebra::same(x.algebra(), self.source()), "complex over the wrong algebra");
        if x.is_zero_object() {
            return ProjComplex::zero(self.target());
        }
        let terms = x.terms().iter().map(|t| self.image_term(t)).collect();
        let diffs = x.diffs().iter().map(|d| self.apply_block(d)).collect();
        ProjComplex::new(self.target().clone(), x.lo(), terms, diffs).expect("functors preserve complexes")
    }

    pub fn apply_map(&self, f: &GradedMap) -> GradedMap {
        let src = self.apply(f.source());
        let tgt = self.apply(f.target());
        f.map_blocks(src, tgt, |b| self.apply_block(b))
    }

    /// Class of `F(e_i R)` in the basis `[e_j S]`: `out[j][i]`. The counts
    /// from the witnesses are cross-checked against the tops of `e_i B`.
    pub fn k0_map(&self) -> Result<Vec<Vec<i64>>> {
        let s = self.target();
        if !s.primitive() {
            return Err(Error::Witness("target idempotents are not declared primitive".into()));
        }
        let n_src = self.source().n_idempotents();
        let n_tgt = s.n_idempotents();
        let mut out = vec![vec![0i64; n_src]; n_tgt];
        for i in 0..n_src {
            for j in self.image_summands(i) {
                out[j][i] += 1;
            }
            let (module, _) = summand_module(&self.bimodule, i)?;
            let tops = module.top_multiplicities()?;
            for j in 0..n_tgt {
                if tops[j] as i64 != out[j][i] {
                    return Err(Error::Witness(format!(
                        "witness count {} for e{} S in F(P{}) disagrees with the top multiplicity {}",
                        out[j][i],
                        j + 1,
                        i + 1,
                        tops[j]
                    )));
                }
            }
        }
        Ok(out)
    }
}

/// `e_i B` as a right module over the target, in the echelon basis of `e_i B`.
fn summand_module(b: &Bimodule, i: usize) -> Result<(FdModule, Subspace)> {
    let span = b.left_part(b.left().idempotent(i));
    let module = b.as_right_module().submodule(&span)?;
    Ok((module, span))
}

fn derive_witnesses(b: &Bimodule, i: usize) -> Result<Vec<Witness>> {
    let (module, span) = summand_module(b, i)?;
    Ok(module
        .cover_generators()?
        .into_iter()
        .map(|(j, v)| Witness {
            target_idempotent: j,
            generator: span.combine(&v),
        })
        .collect())
}

fn decompose(b: &Bimodule, i: usize, witnesses: Vec<Witness>) -> Result<Decomposition> {
    let s = b.right().clone();
    let r = b.left().clone();
    let field = s.field();
    let reg = FdModule::regular(&s);
    let mut bases = Vec::with_capacity(witnesses.len());
    let mut columns = Vec::new();
    for (k, w) in witnesses.iter().enumerate() {
        let j = w.target_idempotent;
        if j >= s.n_idempotents() || w.generator.len() != b.dim() {
            return Err(Error::Witness(format!("witness {k} of e{} B is malformed", i + 1)));
        }
        let g = &w.generator;
        if b.act_left(r.idempotent(i), g) != *g || b.act_right(g, s.idempotent(j)) != *g {
            return Err(Error::Witness(format!(
                "generator {k} of e{} B does not lie in e{} B e{}",
                i + 1,
                i + 1,
                j + 1
            )));
        }
        let basis = reg.projective_span(j).basis().to_vec();
        for y in &basis {
            columns.push(b.act_right(g, y));
        }
        bases.push(basis);
    }
    let target_dim = b.left_part(r.idempotent(i)).dim();
    let solver = LinearSolver::from_columns(field, b.dim(), &columns)?;
    if columns.len() != target_dim || solver.rank() != columns.len() {
        return Err(Error::Witness(format!(
            "the witnesses do not decompose e{} B: {} generated dimensions, rank {}, dim e{} B = {}",
            i + 1,
            columns.len(),
            solver.rank(),
            i + 1,
            target_dim
        )));
    }
    Ok(Decomposition {
        witnesses,
        bases,
        solver,
    })
}

/// Objects of the window whose image is contractible.
pub fn ker_on_subcat(f: &BimoduleFunctor, s: &FiniteSubcat) -> Vec<usize> {
    (0..s.len())
        .into_par_iter()
        .filter(|&i| is_contractible(&f.apply(s.object(i))))
        .collect()
}

/// Per pair of window objects, the maps `phi` with `F(phi)` null-homotopic.
pub fn ann_on_subcat(f: &BimoduleFunctor, s: &Arc<FiniteSubcat>) -> Result<HomIdeal> {
    let images: Vec<ProjComplex> = (0..s.len()).into_par_iter().map(|i| f.apply(s.object(i))).collect();
    let pairs: Vec<(usize, usize)> = (0..s.len()).flat_map(|i| (0..s.len()).map(move |j| (i, j))).collect();
    let spaces = pairs
        .par_iter()
        .map(|&(i, j)| {
            let hom = s.hom(i, j);
            let field = f.source().field();
            if hom.dim() == 0 {
                return Ok(Subspace::zero(field, 0));
            }
            let image_hom = HomSpace::new(&images[i], &images[j])?;
            // columns: coordinates of F(basis_b); kernel of the matrix with these columns
            let cols: Vec<Vec<Scalar>> = hom
                .basis_maps()
                .iter()
                .map(|phi| {
                    image_hom
                        .coords(&f.apply_map(phi))
                        .expect("functors send chain maps to chain maps")
                })
                .collect();
            let rows: Vec<Vec<Scalar>> = (0..image_hom.dim()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            Ok(Subspace::span(field, hom.dim(), kernel_of_rows(field, rows, hom.dim()))?)
        })
        .collect::<Result<Vec<Subspace>>>()?;
    HomIdeal::from_spaces(s.clone(), spaces)
}

#[cfg(test)]
mod tests;
