//! Bounded complexes of finitely generated projectives up to homotopy.
//!
//! Conventions: grading is cohomological and `d^n: X^n -> X^{n+1}`. Each term
//! is a list of idempotent indices `i`, standing for `e_i R`. A map
//! `e_s R -> e_t R` is left multiplication by an element of `e_t R e_s`, so a
//! block matrix has one row per target summand and one column per source
//! summand, and composition is the algebra product `later * earlier`.
//!
//! `(Sigma X)^n = X^{n+1}` with differential `-d`. A graded map of degree `k`
//! shifts to `(Sigma f)^n = (-1)^k f^{n+1}`, so chain maps shift without a
//! sign and null-homotopies stay null-homotopies. `Cone(f: X -> Y)` has terms
//! `X^{n+1} + Y^n` (the `X` summands first) and differential
//! `[[-d_X, 0], [f, d_Y]]`.

mod block;
mod cone;
mod hom;
mod map;
mod triangle;

pub use block::BlockMat;
pub use cone::{cone, cone_morphism, direct_sum, Cone, DirectSum};
pub use hom::{contraction, find_equivalence, is_contractible, is_homotopy_equivalence, null_homotopy, verify_null_homotopy, Farkas, HomSpace};
pub use map::{GradedMap, MapLayout};
pub use triangle::{recognize_triangle, Triangle, TriangleCertificate, TriangleVerdict};

use std::sync::Arc;

use crate::algebra::{Algebra, Elem};
use crate::error::{Error, Result};

/// A bounded complex of finitely generated projective right modules.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    algebra: Arc<Algebra>,
    lo: i64,
    terms: Vec<Vec<usize>>,
    diffs: Vec<BlockMat>,
}

impl PartialEq for ProjComplex {
    fn eq(&self, other: &ProjComplex) -> bool {
        Algebra::same(&self.algebra, &other.algebra)
            && self.lo == other.lo
            && self.terms == other.terms
            && self.diffs == other.diffs
    }
}

impl ProjComplex {
    /// `terms[k]` sits in degree `lo + k`; `diffs[k]` maps it to degree
    /// `lo + k + 1`. Empty terms at either end are trimmed.
    pub fn new(algebra: Arc<Algebra>, lo: i64, terms: Vec<Vec<usize>>, diffs: Vec<BlockMat>) -> Result<ProjComplex> {
        if terms.is_empty() {
            if !diffs.is_empty() {
                return Err(Error::Complex("differentials without terms".into()));
            }
            return Ok(ProjComplex::zero(&algebra));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::Complex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        let n = algebra.n_idempotents();
        for (k, t) in terms.iter().enumerate() {
            if let Some(&bad) = t.iter().find(|&&i| i >= n) {
                return Err(Error::Complex(format!("degree {}: no idempotent {bad}", lo + k as i64)));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            let deg = lo + k as i64;
            if d.cols() != terms[k].as_slice() || d.rows() != terms[k + 1].as_slice() {
                return Err(Error::Complex(format!("differential in degree {deg} does not match the terms")));
            }
            d.validate(&algebra)
                .map_err(|e| Error::Complex(format!("differential in degree {deg}: {e}")))?;
        }
        for k in 1..diffs.len() {
            if !diffs[k].compose(&algebra, &diffs[k - 1]).is_zero() {
                return Err(Error::Complex(format!("d o d != 0 at degree {}", lo + k as i64 - 1)));
            }
        }
        Ok(ProjComplex::trimmed(algebra, lo, terms, diffs))
    }

    fn trimmed(algebra: Arc<Algebra>, mut lo: i64, mut terms: Vec<Vec<usize>>, mut diffs: Vec<BlockMat>) -> ProjComplex {
        while terms.last().is_some_and(|t| t.is_empty()) {
            terms.pop();
            diffs.pop();
        }
        while terms.first().is_some_and(|t| t.is_empty()) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        if terms.is_empty() {
            return ProjComplex::zero(&algebra);
        }
        ProjComplex { algebra, lo, terms, diffs }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> ProjComplex {
        ProjComplex {
            algebra: algebra.clone(),
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `P` concentrated in a single degree.
    pub fn stalk(algebra: &Arc<Algebra>, degree: i64, summands: Vec<usize>) -> Result<ProjComplex> {
        ProjComplex::new(algebra.clone(), degree, vec![summands], Vec::new())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn is_zero_object(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    /// Number of degrees from the lowest to the highest nonzero term.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn term(&self, n: i64) -> &[usize] {
        if n < self.lo || n > self.hi() {
            return &[];
        }
        &self.terms[(n - self.lo) as usize]
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    /// `d^n: X^n -> X^{n+1}`.
    pub fn d(&self, n: i64) -> BlockMat {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            BlockMat::zero(&self.algebra, self.term(n + 1).to_vec(), self.term(n).to_vec())
        }
    }

    pub fn diffs(&self) -> &[BlockMat] {
        &self.diffs
    }

    /// Total number of projective summands.
    pub fn rank(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// `Sigma^k X`.
    pub fn shift(&self, k: i64) -> ProjComplex {
        if self.is_zero_object() {
            return self.clone();
        }
        let diffs = if k.rem_euclid(2) == 1 {
            self.diffs.iter().map(|d| d.neg()).collect()
        } else {
            self.diffs.clone()
        };
        ProjComplex {
            algebra: self.algebra.clone(),
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Degrees `lo..=hi` of `self` only (brutal truncation), or zero.
    pub fn truncate(&self, lo: i64, hi: i64) -> ProjComplex {
        let (a, b) = (lo.max(self.lo), hi.min(self.hi()));
        if a > b {
            return ProjComplex::zero(&self.algebra);
        }
        let terms = (a..=b).map(|n| self.term(n).to_vec()).collect();
        let diffs = (a..b).map(|n| self.d(n)).collect();
        ProjComplex::trimmed(self.algebra.clone(), a, terms, diffs)
    }

    pub fn describe(&self) -> String {
        if self.is_zero_object() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .degrees()
            .map(|n| {
                let t = self.term(n);
                let s = if t.is_empty() {
                    "0".to_string()
                } else {
                    t.iter().map(|i| format!("P{}", i + 1)).collect::<Vec<_>>().join("+")
                };
                format!("{n}:{s}")
            })
            .collect();
        parts.join(" -> ")
    }

    /// Entries of every differential, for serialization.
    pub fn entries(&self) -> Vec<Vec<Vec<Elem>>> {
        self.diffs.iter().map(BlockMat::to_rows).collect()
    }
}

#[cfg(test)]
mod tests;
