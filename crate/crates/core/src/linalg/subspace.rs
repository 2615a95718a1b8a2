use super::echelon::rref;
use super::{Field, LinalgError, Scalar};

/// A subspace of `field^ambient`, stored as its reduced row-echelon basis.
///
/// Because the basis is canonical, two subspaces are equal as sets exactly
/// when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let basis = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Subspace, LinalgError> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(LinalgError::Ambient {
                    expected: ambient,
                    found: v.len(),
                });
            }
            if v.iter().any(Scalar::is_laurent) {
                return Err(LinalgError::NoDivision);
            }
        }
        let mut rows = vectors;
        let pivots = rref(&mut rows, ambient);
        rows.truncate(pivots.len());
        Ok(Subspace {
            field,
            ambient,
            basis: rows,
            pivots,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Ambient {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    out[j] = &out[j] - &(&f * r);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::Ambient {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.reduce(v).iter().all(Scalar::is_zero))
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient || !self.reduce(v).iter().all(Scalar::is_zero) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.field); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    out[j] = &out[j] + &(c * r);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self.basis.iter().all(|v| other.reduce(v).iter().all(Scalar::is_zero)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, vs)
    }

    /// Intersection via the kernel of `(a, b) -> a*V - b*W`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let (dv, dw) = (self.dim(), other.dim());
        if dv == 0 || dw == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // columns of the system: V's basis then -W's basis, rows = ambient coordinates
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let system: Vec<Vec<Scalar>> = (0..self.ambient)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let kernel = kernel_of_rows(self.field, system, dv + dw);
        let vectors = kernel
            .into_iter()
            .map(|k| self.combine(&k[..dv]))
            .collect();
        Subspace::span(self.field, self.ambient, vectors)
    }

    /// Vectors of `self` whose cosets form a basis of `self / sub`.
    ///
    /// Candidates are taken from `self`'s echelon basis in order, keeping each
    /// one that is independent of `sub` plus the ones already kept.
    pub fn quotient_basis(&self, sub: &Subspace) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        self.check(sub)?;
        if !sub.is_subspace_of(self)? {
            return Err(LinalgError::NotSubspace);
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !acc.contains(v)? {
                out.push(v.clone());
                acc = acc.sum(&Subspace::span(self.field, self.ambient, vec![v.clone()])?)?;
            }
        }
        Ok(out)
    }

    /// Coordinates not occupied by a pivot; the matching unit vectors span a
    /// canonical complement.
    pub fn free_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Coordinates of the class of `v` in `ambient / self`, relative to the
    /// canonical complement of [`Subspace::free_coords`].
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.free_coords().into_iter().map(|i| r[i].clone()).collect()
    }
}

pub(crate) fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(field); n];
    v[i] = Scalar::one(field);
    v
}

/// Kernel basis of the matrix given by `rows` (each of length `ncols`).
pub(crate) fn kernel_of_rows(field: Field, mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let pivots = rref(&mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(field); ncols];
        v[free] = Scalar::one(field);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&rows[r][free];
        }
        out.push(v);
    }
    out
}
