//! Minimal projective resolutions, Tor, and the homological epimorphism test.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{bimodule_tensor, Algebra, Bimodule, Elem, FdModule, RingMap, TwoSidedIdeal};
use crate::error::{Error, Result};
use crate::homcat::{BlockMat, ProjComplex};
use crate::linalg::{kernel_of_rows, Mat, Scalar, Subspace};

pub const DEFAULT_MAX_DEGREE: usize = 20;

/// `... -> P_1 -> P_0 -> M -> 0`, computed up to some length.
#[derive(Clone, Debug)]
pub struct ResolutionPrefix {
    module: FdModule,
    /// Summands of `P_n`.
    terms: Vec<Vec<usize>>,
    /// `diffs[n - 1]: P_n -> P_{n-1}`.
    diffs: Vec<BlockMat>,
    /// Images in `M` of the generators of `P_0`.
    augmentation: Vec<Vec<Scalar>>,
    terminated: bool,
}

fn free_sum(r: &Arc<Algebra>, m: usize) -> FdModule {
    let reg = FdModule::regular(r);
    (1..m).fold(reg.clone(), |acc, _| acc.direct_sum(&reg).expect("same algebra"))
}

/// Basis of `e_{j_1} R + ... + e_{j_m} R` inside `R^m`, summand by summand.
fn summand_bases(r: &Arc<Algebra>, term: &[usize]) -> Vec<(usize, Elem)> {
    let field = r.field();
    let d = r.dim();
    let reg = FdModule::regular(r);
    let mut out = Vec::new();
    for (k, &j) in term.iter().enumerate() {
        for b in reg.projective_span(j).basis() {
            let mut v = vec![Scalar::zero(field); d * term.len()];
            v[k * d..(k + 1) * d].clone_from_slice(b);
            out.push((k, v));
        }
    }
    out
}

/// Minimal projective resolution of `m` with at most `max_degree + 1` terms.
/// Covers are built from [`FdModule::cover_generators`], so ties are broken
/// by basis order.
pub fn proj_resolution(m: &FdModule, max_degree: usize) -> Result<ResolutionPrefix> {
    let r = m.algebra().clone();
    let field = r.field();
    let d = r.dim();
    let mut ambient = m.clone();
    let mut to_cover = Subspace::full(field, m.dim());
    let mut terms: Vec<Vec<usize>> = Vec::new();
    let mut diffs = Vec::new();
    let mut augmentation = Vec::new();
    let mut terminated = false;
    for n in 0..=max_degree {
        if to_cover.is_zero() {
            terminated = true;
            break;
        }
        let sub = ambient.submodule(&to_cover)?;
        let gens: Vec<(usize, Vec<Scalar>)> = sub
            .cover_generators()?
            .into_iter()
            .map(|(j, v)| (j, to_cover.combine(&v)))
            .collect();
        let term: Vec<usize> = gens.iter().map(|g| g.0).collect();
        if n == 0 {
            augmentation = gens.iter().map(|g| g.1.clone()).collect();
        } else {
            let prev = &terms[n - 1];
            let entries = (0..prev.len())
                .map(|t| gens.iter().map(|(_, w)| w[t * d..(t + 1) * d].to_vec()).collect())
                .collect();
            diffs.push(BlockMat::from_rows(&r, prev.clone(), term.clone(), entries).map_err(Error::Complex)?);
        }
        // kernel of the cover P_n -> ambient
        let basis = summand_bases(&r, &term);
        let images: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|(k, v)| ambient.act(&gens[*k].1, &v[k * d..(k + 1) * d]))
            .collect();
        let rows = (0..ambient.dim()).map(|i| images.iter().map(|c| c[i].clone()).collect()).collect();
        let kernel: Vec<Vec<Scalar>> = kernel_of_rows(field, rows, basis.len())
            .into_iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(field); d * term.len()];
                for (x, (_, b)) in c.iter().zip(&basis) {
                    crate::linalg::vec_ops::axpy(&mut v, x, b);
                }
                v
            })
            .collect();
        ambient = free_sum(&r, term.len());
        to_cover = Subspace::span(field, ambient.dim(), kernel)?;
        terms.push(term);
    }
    if !terminated && to_cover.is_zero() {
        terminated = true;
    }
    Ok(ResolutionPrefix {
        module: m.clone(),
        terms,
        diffs,
        augmentation,
        terminated,
    })
}

/// Matrix of a block map `P -> Q` on the bases of [`summand_bases`], in
/// the ambient coordinates of `Q`.
fn block_matrix(r: &Arc<Algebra>, b: &BlockMat) -> Vec<Vec<Scalar>> {
    let d = r.dim();
    summand_bases(r, b.cols())
        .into_iter()
        .map(|(s, v)| {
            let y = &v[s * d..(s + 1) * d];
            let mut out = vec![Scalar::zero(r.field()); d * b.rows().len()];
            for t in 0..b.rows().len() {
                out[t * d..(t + 1) * d].clone_from_slice(&r.mul(b.get(t, s), y));
            }
            out
        })
        .collect()
}

fn rank_of_rows(field: crate::linalg::Field, rows: Vec<Vec<Scalar>>, ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    Mat::from_rows(field, rows).expect("rectangular").rank().expect("no Laurent entries")
}

impl ResolutionPrefix {
    pub fn module(&self) -> &FdModule {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    /// Index of the last computed term; `0` for the zero module as well.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    /// `P_n -> P_{n-1}` for `n >= 1`.
    pub fn differential(&self, n: usize) -> Option<&BlockMat> {
        n.checked_sub(1).and_then(|k| self.diffs.get(k))
    }

    pub fn augmentation(&self) -> &[Vec<Scalar>] {
        &self.augmentation
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    /// The computed prefix as a complex in degrees `-length..=0`.
    pub fn complex(&self) -> ProjComplex {
        let r = self.algebra();
        if self.terms.is_empty() {
            return ProjComplex::zero(r);
        }
        let terms = self.terms.iter().rev().cloned().collect();
        let diffs = self.diffs.iter().rev().cloned().collect();
        ProjComplex::new(r.clone(), -(self.length() as i64), terms, diffs).expect("resolutions are complexes")
    }

    /// Rechecks exactness with rank computations that do not reuse the
    /// kernels found during construction: the augmentation is onto, and at
    /// every `P_n` below the top `rank d_n + rank d_{n+1} = dim P_n`. A
    /// terminated resolution must also have an injective top differential.
    pub fn verify_exactness(&self) -> bool {
        let r = self.algebra();
        let field = r.field();
        let d = r.dim();
        if self.terms.is_empty() {
            return self.module.dim() == 0;
        }
        let dims: Vec<usize> = self.terms.iter().map(|t| summand_bases(r, t).len()).collect();
        // augmentation: x in e_j R at summand k maps to g_k x
        let aug_rows: Vec<Vec<Scalar>> = summand_bases(r, &self.terms[0])
            .into_iter()
            .map(|(k, v)| self.module.act(&self.augmentation[k], &v[k * d..(k + 1) * d]))
            .collect();
        let mut ranks = vec![rank_of_rows(field, aug_rows, self.module.dim())];
        ranks.extend(
            self.diffs
                .par_iter()
                .map(|b| rank_of_rows(field, block_matrix(r, b), d * b.rows().len()))
                .collect::<Vec<_>>(),
        );
        if ranks[0] != self.module.dim() {
            return false;
        }
        for (n, &dim) in dims.iter().enumerate() {
            let below = ranks[n];
            match ranks.get(n + 1) {
                Some(&above) => {
                    if below + above != dim {
                        return false;
                    }
                }
                None if self.terminated => {
                    if below != dim {
                        return false;
                    }
                }
                None => {}
            }
        }
        self.diffs.windows(2).all(|w| w[0].compose(r, &w[1]).is_zero())
    }

    /// Differentials land in `P_{n-1} rad R`.
    pub fn is_minimal(&self) -> Result<bool> {
        let rad = TwoSidedIdeal::radical(self.algebra())?;
        Ok(self
            .diffs
            .iter()
            .all(|b| b.to_rows().iter().flatten().all(|x| rad.contains(x))))
    }
}

/// `dim Tor_i(M, N)` for `i = 0..=i_max`, from a resolution of `M` tensored
/// with the left `R`-module underlying `n`.
pub fn tor(res: &ResolutionPrefix, n: &Bimodule, i_max: usize) -> Result<Vec<usize>> {
    let r = res.algebra();
    crate::algebra::ensure_same(r, n.left(), "tor")?;
    if !res.terminated() && res.terms().len() < i_max + 2 {
        return Err(Error::Budget(format!(
            "Tor_{i_max} needs {} resolution terms, only {} were computed",
            i_max + 2,
            res.terms().len()
        )));
    }
    let field = r.field();
    let parts: Vec<Subspace> = (0..r.n_idempotents()).map(|j| n.left_part(r.idempotent(j))).collect();
    let dim_c = |k: usize| -> usize { res.terms().get(k).map_or(0, |t| t.iter().map(|&j| parts[j].dim()).sum()) };
    // rank of P_k (x) N -> P_{k-1} (x) N
    let rank = |k: usize| -> usize {
        let Some(b) = res.differential(k) else { return 0 };
        let mut rows = Vec::new();
        for (s, &js) in b.cols().iter().enumerate() {
            for v in parts[js].basis() {
                let mut row = Vec::new();
                for (t, &jt) in b.rows().iter().enumerate() {
                    let img = n.act_left(b.get(t, s), v);
                    row.extend(parts[jt].coords(&img).expect("x e_s N lies in e_t N"));
                }
                rows.push(row);
            }
        }
        rank_of_rows(field, rows, dim_c(k - 1))
    };
    let ranks: Vec<usize> = (0..=i_max + 1).into_par_iter().map(rank).collect();
    Ok((0..=i_max).map(|i| dim_c(i) - ranks[i] - ranks[i + 1]).collect())
}

/// `dim Tor_i(M, N)` for `i = 0..=i_max`.
pub fn tor_dims(m: &FdModule, n: &Bimodule, i_max: usize) -> Result<Vec<usize>> {
    let res = proj_resolution(m, i_max + 1)?;
    tor(&res, n, i_max)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HepiWitness {
    /// `S (x)_R S -> S` is not bijective.
    Multiplication { tensor_dim: usize, target_dim: usize, rank: usize },
    /// First nonvanishing `Tor_degree^R(S, S)`.
    Tor { degree: usize, dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HepiOutcome {
    Certified,
    Refuted(HepiWitness),
    /// The resolution did not terminate within the given number of steps.
    Inconclusive(usize),
}

#[derive(Clone, Debug)]
pub struct HepiVerdict {
    pub tensor_dim: usize,
    pub target_dim: usize,
    pub multiplication_rank: usize,
    pub mult_iso: bool,
    /// `dim Tor_i^R(S, S)` for `i = 1..=max_degree`.
    pub tor: Vec<usize>,
    pub resolution_length: usize,
    pub terminated: bool,
    pub outcome: HepiOutcome,
}

/// Tests whether `f: R -> S` is a homological epimorphism: the multiplication
/// `S (x)_R S -> S` is bijective and `Tor_i^R(S, S) = 0` for `i >= 1`.
/// Certification requires the resolution of `S_R` to terminate.
pub fn check_homological_epi(f: &RingMap, max_degree: usize) -> Result<HepiVerdict> {
    let s = f.target();
    let s_over_r = Bimodule::restriction(f);
    let r_s = Bimodule::along(f);
    let (_, t) = bimodule_tensor(&s_over_r, &r_s)?;
    let field = s.field();
    let mult_rows: Vec<Vec<Scalar>> = t
        .reps()
        .iter()
        .map(|&(p, q)| s.mul(&s.basis_elem(p), &s.basis_elem(q)))
        .collect();
    let multiplication_rank = rank_of_rows(field, mult_rows, s.dim());
    let (tensor_dim, target_dim) = (t.dim(), s.dim());
    let mult_iso = tensor_dim == target_dim && multiplication_rank == target_dim;

    let res = proj_resolution(&s_over_r.as_right_module(), max_degree + 1)?;
    let dims = tor(&res, &r_s, max_degree)?;
    let tor_list = dims[1..].to_vec();
    let outcome = if !mult_iso {
        HepiOutcome::Refuted(HepiWitness::Multiplication {
            tensor_dim,
            target_dim,
            rank: multiplication_rank,
        })
    } else if let Some(i) = tor_list.iter().position(|&x| x != 0) {
        HepiOutcome::Refuted(HepiWitness::Tor {
            degree: i + 1,
            dim: tor_list[i],
        })
    } else if res.terminated() && res.length() <= max_degree {
        HepiOutcome::Certified
    } else {
        HepiOutcome::Inconclusive(max_degree)
    };
    Ok(HepiVerdict {
        tensor_dim,
        target_dim,
        multiplication_rank,
        mult_iso,
        tor: tor_list,
        resolution_length: res.length(),
        terminated: res.terminated(),
        outcome,
    })
}

#[cfg(test)]
mod tests;
