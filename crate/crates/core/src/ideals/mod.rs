//! Ideals of a finite window `S` of `K^b(proj R)`.
//!
//! An ideal stores, for every ordered pair of objects of `S`, a subspace of
//! the class coordinates of the hom space. Composites are only formed through
//! intermediate objects of `S`, so every statement here is relative to `S`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functors::{ann_on_subcat, ker_on_subcat, BimoduleFunctor, FiniteSubcat};
use crate::homcat::{recognize_triangle, GradedMap, Triangle};
use crate::linalg::{kernel_of_rows, unit, Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct HomIdeal {
    subcat: Arc<FiniteSubcat>,
    spaces: Vec<Subspace>,
}

impl PartialEq for HomIdeal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.subcat, &other.subcat) && self.spaces == other.spaces
    }
}

/// A map of the window given by its endpoints and class coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowMap {
    pub source: usize,
    pub target: usize,
    pub coords: Vec<Scalar>,
}

impl WindowMap {
    /// Locates a chain map in the window.
    pub fn locate(s: &FiniteSubcat, f: &GradedMap) -> Result<WindowMap> {
        if f.degree() != 0 {
            return Err(Error::ChainMap("only degree zero maps live in the window".into()));
        }
        let source = s
            .find(f.source())
            .ok_or_else(|| Error::Window(format!("source {} is not in S", f.source().describe())))?;
        let target = s
            .find(f.target())
            .ok_or_else(|| Error::Window(format!("target {} is not in S", f.target().describe())))?;
        let coords = s
            .hom(source, target)
            .coords(f)
            .ok_or_else(|| Error::ChainMap("generator is not a chain map".into()))?;
        Ok(WindowMap { source, target, coords })
    }
}

fn pair_span(s: &FiniteSubcat, i: usize, j: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
    Subspace::span(s.algebra().field(), s.hom_dim(i, j), vectors).expect("coordinates have the hom dimension")
}

/// Post-composites `b o v` for `v` in `spaces[i][j]` and all `b: j -> k`,
/// then pre-composites with all `a: m -> i`. The result is the two-sided
/// closure of the input family.
fn close(s: &FiniteSubcat, spaces: &[Subspace]) -> Vec<Subspace> {
    let n = s.len();
    let field = s.algebra().field();
    let post: Vec<Subspace> = (0..n * n)
        .into_par_iter()
        .map(|p| {
            let (i, k) = (p / n, p % n);
            let mut vs = Vec::new();
            for j in 0..n {
                for v in spaces[i * n + j].basis() {
                    for b in 0..s.hom_dim(j, k) {
                        vs.push(s.compose(i, j, k, &unit(field, s.hom_dim(j, k), b), v));
                    }
                }
            }
            pair_span(s, i, k, vs)
        })
        .collect();
    (0..n * n)
        .into_par_iter()
        .map(|p| {
            let (m, k) = (p / n, p % n);
            let mut vs = Vec::new();
            for i in 0..n {
                for v in post[i * n + k].basis() {
                    for a in 0..s.hom_dim(m, i) {
                        vs.push(s.compose(m, i, k, v, &unit(field, s.hom_dim(m, i), a)));
                    }
                }
            }
            pair_span(s, m, k, vs)
        })
        .collect()
}

impl HomIdeal {
    /// Checks the two-sided closure of the family before accepting it.
    pub fn from_spaces(subcat: Arc<FiniteSubcat>, spaces: Vec<Subspace>) -> Result<HomIdeal> {
        let n = subcat.len();
        if spaces.len() != n * n {
            return Err(Error::Window(format!("{} subspaces for {} ordered pairs", spaces.len(), n * n)));
        }
        for (p, v) in spaces.iter().enumerate() {
            if v.ambient() != subcat.hom_dim(p / n, p % n) {
                return Err(Error::Window(format!("subspace {p} has the wrong ambient dimension")));
            }
        }
        let ideal = HomIdeal { subcat, spaces };
        if let Some((i, j)) = ideal.closure_violation() {
            return Err(Error::Ideal(format!(
                "composites with {} -> {} leave the family",
                ideal.subcat.object_name(i),
                ideal.subcat.object_name(j)
            )));
        }
        Ok(ideal)
    }

    pub fn zero(subcat: &Arc<FiniteSubcat>) -> HomIdeal {
        let n = subcat.len();
        let field = subcat.algebra().field();
        HomIdeal {
            spaces: (0..n * n).map(|p| Subspace::zero(field, subcat.hom_dim(p / n, p % n))).collect(),
            subcat: subcat.clone(),
        }
    }

    pub fn full(subcat: &Arc<FiniteSubcat>) -> HomIdeal {
        let n = subcat.len();
        let field = subcat.algebra().field();
        HomIdeal {
            spaces: (0..n * n).map(|p| Subspace::full(field, subcat.hom_dim(p / n, p % n))).collect(),
            subcat: subcat.clone(),
        }
    }

    pub fn subcat(&self) -> &Arc<FiniteSubcat> {
        &self.subcat
    }

    pub fn space(&self, i: usize, j: usize) -> &Subspace {
        &self.spaces[i * self.subcat.len() + j]
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.space(i, j).dim()
    }

    /// `dims[i][j] = dim I(X_i, X_j)`.
    pub fn dims(&self) -> Vec<Vec<usize>> {
        let n = self.subcat.len();
        (0..n).map(|i| (0..n).map(|j| self.dim(i, j)).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn contains(&self, f: &WindowMap) -> bool {
        self.space(f.source, f.target).contains(&f.coords).unwrap_or(false)
    }

    fn same_window(&self, other: &HomIdeal) -> Result<()> {
        if Arc::ptr_eq(&self.subcat, &other.subcat) {
            Ok(())
        } else {
            Err(Error::Window("ideals live on different windows".into()))
        }
    }

    pub fn is_subideal_of(&self, other: &HomIdeal) -> Result<bool> {
        self.same_window(other)?;
        Ok(self
            .spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.is_subspace_of(b).expect("same ambient")))
    }

    /// First pair whose composites with some hom basis map leave the family.
    pub fn closure_violation(&self) -> Option<(usize, usize)> {
        let s = &self.subcat;
        let n = s.len();
        let field = s.algebra().field();
        (0..n * n).into_par_iter().find_first(|&p| {
            let (i, j) = (p / n, p % n);
            self.space(i, j).basis().iter().any(|v| {
                (0..n).any(|k| {
                    let post = (0..s.hom_dim(j, k)).any(|b| {
                        let c = s.compose(i, j, k, &unit(field, s.hom_dim(j, k), b), v);
                        !self.space(i, k).contains(&c).expect("same ambient")
                    });
                    post || (0..s.hom_dim(k, i)).any(|a| {
                        let c = s.compose(k, i, j, v, &unit(field, s.hom_dim(k, i), a));
                        !self.space(k, j).contains(&c).expect("same ambient")
                    })
                })
            })
        })
        .map(|p| (p / n, p % n))
    }

    /// `(I J)(X, Z)` is spanned by `psi o phi` with `phi` in `J(X, Y)` and
    /// `psi` in `I(Y, Z)`, `Y` in the window.
    pub fn product(&self, other: &HomIdeal) -> Result<HomIdeal> {
        self.same_window(other)?;
        let s = &self.subcat;
        let n = s.len();
        let spaces: Vec<Subspace> = (0..n * n)
            .into_par_iter()
            .map(|p| {
                let (i, k) = (p / n, p % n);
                let mut vs = Vec::new();
                for j in 0..n {
                    for phi in other.space(i, j).basis() {
                        for psi in self.space(j, k).basis() {
                            vs.push(s.compose(i, j, k, psi, phi));
                        }
                    }
                }
                pair_span(s, i, k, vs)
            })
            .collect();
        HomIdeal::from_spaces(s.clone(), spaces)
    }

    pub fn square(&self) -> HomIdeal {
        self.product(self).expect("same window")
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }

    /// Checks `Sigma I(X, Y) = I(Sigma X, Sigma Y)` for every pair whose
    /// shifts stay in the window. Returns the first pair that fails.
    pub fn sigma_violation(&self) -> Option<(usize, usize)> {
        let s = &self.subcat;
        let n = s.len();
        (0..n * n)
            .find(|&p| {
                let (i, j) = (p / n, p % n);
                let (Some(si), Some(sj)) = (s.shifted(i, 1), s.shifted(j, 1)) else {
                    return false;
                };
                let image: Vec<Vec<Scalar>> = self
                    .space(i, j)
                    .basis()
                    .iter()
                    .map(|v| s.shift_coords(i, j, 1, v).expect("shift stays in the window"))
                    .collect();
                pair_span(s, si, sj, image) != *self.space(si, sj)
            })
            .map(|p| (p / n, p % n))
    }

    pub fn sigma_stable(&self) -> bool {
        self.sigma_violation().is_none()
    }
}

/// The least ideal of the window containing the generators.
pub fn generate_ideal(s: &Arc<FiniteSubcat>, gens: &[WindowMap]) -> Result<HomIdeal> {
    let n = s.len();
    let mut vectors: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n * n];
    for g in gens {
        if g.source >= n || g.target >= n {
            return Err(Error::Window("generator endpoints outside S".into()));
        }
        if g.coords.len() != s.hom_dim(g.source, g.target) {
            return Err(Error::Window("generator coordinates have the wrong length".into()));
        }
        vectors[g.source * n + g.target].push(g.coords.clone());
    }
    let spaces: Vec<Subspace> = vectors
        .into_iter()
        .enumerate()
        .map(|(p, vs)| pair_span(s, p / n, p % n, vs))
        .collect();
    HomIdeal::from_spaces(s.clone(), close(s, &spaces))
}

/// Per pair, the span of all composites `X -> K -> Y` with `K` in `objects`.
pub fn factor_through_ideal(s: &Arc<FiniteSubcat>, objects: &[usize]) -> Result<HomIdeal> {
    let n = s.len();
    if objects.iter().any(|&k| k >= n) {
        return Err(Error::Window("object outside S".into()));
    }
    let field = s.algebra().field();
    let spaces: Vec<Subspace> = (0..n * n)
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p / n, p % n);
            let mut vs = Vec::new();
            for &k in objects {
                let (da, db) = (s.hom_dim(i, k), s.hom_dim(k, j));
                for a in 0..da {
                    for b in 0..db {
                        vs.push(s.compose(i, k, j, &unit(field, db, b), &unit(field, da, a)));
                    }
                }
            }
            pair_span(s, i, j, vs)
        })
        .collect();
    HomIdeal::from_spaces(s.clone(), spaces)
}

/// A triangle `X' -> X -> X'' -> Sigma X'` whose first three objects lie in
/// the window, with its exactness verified.
#[derive(Clone, Debug)]
pub struct WindowTriangle {
    pub alpha: WindowMap,
    pub beta: WindowMap,
}

impl WindowTriangle {
    pub fn new(s: &FiniteSubcat, t: &Triangle) -> Result<WindowTriangle> {
        let verdict = recognize_triangle(t);
        if !verdict.exact {
            return Err(Error::UnverifiedTriangle(verdict.reason.unwrap_or_default()));
        }
        Ok(WindowTriangle {
            alpha: WindowMap::locate(s, &t.alpha)?,
            beta: WindowMap::locate(s, &t.beta)?,
        })
    }
}

/// `phi: X -> Y` with `phi o alpha` and `beta` in the ideal but `phi` not.
#[derive(Clone, Debug, PartialEq)]
pub struct SaturationWitness {
    pub triangle: usize,
    pub phi: WindowMap,
}

impl HomIdeal {
    /// Saturation against the listed triangles, with `Y` ranging over the
    /// window. Returns the first violation.
    pub fn saturation_witness(&self, triangles: &[WindowTriangle]) -> Option<SaturationWitness> {
        let s = &self.subcat;
        let field = s.algebra().field();
        for (t_idx, t) in triangles.iter().enumerate() {
            if !self.contains(&t.beta) {
                continue;
            }
            let (a, x) = (t.alpha.source, t.alpha.target);
            for y in 0..s.len() {
                let dim = s.hom_dim(x, y);
                if dim == 0 {
                    continue;
                }
                let target = self.space(a, y);
                // phi |-> class of phi o alpha modulo I(X', Y)
                let cols: Vec<Vec<Scalar>> = (0..dim)
                    .map(|b| target.quotient_coords(&s.compose(a, x, y, &unit(field, dim, b), &t.alpha.coords)))
                    .collect();
                let m = cols.first().map_or(0, Vec::len);
                let rows = (0..m).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
                let preimage = kernel_of_rows(field, rows, dim);
                if let Some(phi) = preimage
                    .into_iter()
                    .find(|v| !self.space(x, y).contains(v).expect("same ambient"))
                {
                    return Some(SaturationWitness {
                        triangle: t_idx,
                        phi: WindowMap {
                            source: x,
                            target: y,
                            coords: phi,
                        },
                    });
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct TelescopeReport {
    pub window: String,
    pub annihilator: HomIdeal,
    pub kernel: Vec<usize>,
    pub factor_through_kernel: HomIdeal,
    /// `Ann F = <id_K : K in Ker F>` on the window.
    pub consistent: bool,
    pub idempotent: bool,
    pub sigma_stable: bool,
    /// `None` when no triangles were supplied.
    pub saturation: Option<Option<SaturationWitness>>,
}

pub fn telescope_report(f: &BimoduleFunctor, s: &Arc<FiniteSubcat>, triangles: &[WindowTriangle]) -> Result<TelescopeReport> {
    let annihilator = ann_on_subcat(f, s)?;
    let kernel = ker_on_subcat(f, s);
    let factor_through_kernel = factor_through_ideal(s, &kernel)?;
    let saturation = (!triangles.is_empty()).then(|| annihilator.saturation_witness(triangles));
    Ok(TelescopeReport {
        window: s.describe(),
        consistent: annihilator == factor_through_kernel,
        idempotent: annihilator.is_idempotent(),
        sigma_stable: annihilator.sigma_stable(),
        annihilator,
        kernel,
        factor_through_kernel,
        saturation,
    })
}
