use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homcat::{HomSpace, ProjComplex};
use crate::linalg::{vec_ops, Scalar};

/// `Sigma^shift` of base object `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObjectRef {
    pub base: usize,
    pub shift: i64,
}

/// A finite full subcategory: the shifts `Sigma^n X` of a list of base
/// complexes, for `n` in a closed window. Hom spaces and composition tables
/// are computed on first use and cached.
#[derive(Debug)]
pub struct FiniteSubcat {
    algebra: Arc<Algebra>,
    names: Vec<String>,
    bases: Vec<ProjComplex>,
    window: (i64, i64),
    objects: Vec<ProjComplex>,
    homs: Vec<OnceLock<HomSpace>>,
    /// `compositions[(i, j, k)]`: coordinates of `b o a` for basis maps `a: i -> j`, `b: j -> k`.
    compositions: Vec<OnceLock<Vec<Vec<Vec<Scalar>>>>>,
}

impl FiniteSubcat {
    pub fn new(algebra: &Arc<Algebra>, bases: Vec<(String, ProjComplex)>, window: (i64, i64)) -> Result<FiniteSubcat> {
        if window.0 > window.1 {
            return Err(Error::Window(format!("empty shift window [{}, {}]", window.0, window.1)));
        }
        for (name, x) in &bases {
            if !Algebra::same(algebra, x.algebra()) {
                return Err(Error::Window(format!("object {name} lives over another algebra")));
            }
        }
        let (names, bases): (Vec<String>, Vec<ProjComplex>) = bases.into_iter().unzip();
        let objects: Vec<ProjComplex> = bases
            .iter()
            .flat_map(|x| (window.0..=window.1).map(move |n| x.shift(n)))
            .collect();
        let n = objects.len();
        Ok(FiniteSubcat {
            algebra: algebra.clone(),
            names,
            bases,
            window,
            homs: (0..n * n).map(|_| OnceLock::new()).collect(),
            compositions: (0..n * n * n).map(|_| OnceLock::new()).collect(),
            objects,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn base_names(&self) -> &[String] {
        &self.names
    }

    pub fn bases(&self) -> &[ProjComplex] {
        &self.bases
    }

    fn width(&self) -> usize {
        (self.window.1 - self.window.0 + 1) as usize
    }

    pub fn object(&self, i: usize) -> &ProjComplex {
        &self.objects[i]
    }

    pub fn object_ref(&self, i: usize) -> ObjectRef {
        ObjectRef {
            base: i / self.width(),
            shift: self.window.0 + (i % self.width()) as i64,
        }
    }

    pub fn index(&self, r: ObjectRef) -> Option<usize> {
        if r.base >= self.bases.len() || r.shift < self.window.0 || r.shift > self.window.1 {
            return None;
        }
        Some(r.base * self.width() + (r.shift - self.window.0) as usize)
    }

    pub fn object_name(&self, i: usize) -> String {
        let r = self.object_ref(i);
        match r.shift {
            0 => self.names[r.base].clone(),
            1 => format!("S{}", self.names[r.base]),
            n => format!("S^{n} {}", self.names[r.base]),
        }
    }

    /// The index of `Sigma^k` of object `i`, if it is in the window.
    pub fn shifted(&self, i: usize, k: i64) -> Option<usize> {
        let r = self.object_ref(i);
        self.index(ObjectRef {
            base: r.base,
            shift: r.shift + k,
        })
    }

    /// First object equal to `x`.
    pub fn find(&self, x: &ProjComplex) -> Option<usize> {
        self.objects.iter().position(|o| o == x)
    }

    pub fn describe(&self) -> String {
        format!(
            "relative to S = {{Sigma^n X : X in [{}], {} <= n <= {}}}",
            self.names.join(", "),
            self.window.0,
            self.window.1
        )
    }

    pub fn hom(&self, i: usize, j: usize) -> &HomSpace {
        self.homs[i * self.len() + j]
            .get_or_init(|| HomSpace::new(&self.objects[i], &self.objects[j]).expect("objects share the algebra"))
    }

    /// Computes every hom space, in parallel.
    pub fn precompute(&self) {
        let n = self.len();
        (0..n * n).into_par_iter().for_each(|k| {
            self.hom(k / n, k % n);
        });
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom(i, j).dim()
    }

    fn table(&self, i: usize, j: usize, k: usize) -> &Vec<Vec<Vec<Scalar>>> {
        let n = self.len();
        self.compositions[(i * n + j) * n + k].get_or_init(|| {
            let (a, b, c) = (self.hom(i, j), self.hom(j, k), self.hom(i, k));
            let amaps = a.basis_maps();
            b.basis_maps()
                .iter()
                .map(|g| {
                    amaps
                        .iter()
                        .map(|f| c.coords(&g.compose(f)).expect("composite of chain maps"))
                        .collect()
                })
                .collect()
        })
    }

    /// Class coordinates of `psi o phi` for `phi: i -> j`, `psi: j -> k`.
    pub fn compose(&self, i: usize, j: usize, k: usize, psi: &[Scalar], phi: &[Scalar]) -> Vec<Scalar> {
        let field = self.algebra.field();
        let mut out = vec_ops::zeros(field, self.hom_dim(i, k));
        if psi.iter().all(Scalar::is_zero) || phi.iter().all(Scalar::is_zero) {
            return out;
        }
        let t = self.table(i, j, k);
        for (b, x) in psi.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (a, y) in phi.iter().enumerate() {
                if !y.is_zero() {
                    vec_ops::axpy(&mut out, &(x * y), &t[b][a]);
                }
            }
        }
        out
    }

    /// Class coordinates of `Sigma^k phi` in `Hom(Sigma^k X_i, Sigma^k X_j)`.
    pub fn shift_coords(&self, i: usize, j: usize, k: i64, phi: &[Scalar]) -> Option<Vec<Scalar>> {
        let (si, sj) = (self.shifted(i, k)?, self.shifted(j, k)?);
        let f = self.hom(i, j).map_from_coords(phi).shift(k);
        self.hom(si, sj).coords(&f)
    }

    /// Class coordinates of the identity of object `i`.
    pub fn identity_coords(&self, i: usize) -> Vec<Scalar> {
        self.hom(i, i)
            .coords(&crate::homcat::GradedMap::identity(&self.objects[i]))
            .expect("identity is a chain map")
    }
}
