use crate::algebra::{Algebra, Elem};
use crate::linalg::{vec_ops, Scalar};

/// A map `sum_s e_{cols[s]} R -> sum_t e_{rows[t]} R`; entry `(t, s)` lies in
/// `e_{rows[t]} R e_{cols[s]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMat {
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<Elem>,
}

impl BlockMat {
    pub fn zero(alg: &Algebra, rows: Vec<usize>, cols: Vec<usize>) -> BlockMat {
        let entries = vec![alg.zero(); rows.len() * cols.len()];
        BlockMat { rows, cols, entries }
    }

    pub fn identity(alg: &Algebra, summands: Vec<usize>) -> BlockMat {
        let mut m = BlockMat::zero(alg, summands.clone(), summands.clone());
        for (k, &i) in summands.iter().enumerate() {
            m.set(k, k, alg.idempotent(i).clone());
        }
        m
    }

    /// Builds from row-major entries; shape is checked, corner membership is
    /// left to [`BlockMat::validate`].
    pub fn from_rows(alg: &Algebra, rows: Vec<usize>, cols: Vec<usize>, entries: Vec<Vec<Elem>>) -> Result<BlockMat, String> {
        if entries.len() != rows.len() {
            return Err(format!("{} entry rows for {} target summands", entries.len(), rows.len()));
        }
        let mut flat = Vec::with_capacity(rows.len() * cols.len());
        for (t, row) in entries.into_iter().enumerate() {
            if row.len() != cols.len() {
                return Err(format!("entry row {t} has {} entries for {} source summands", row.len(), cols.len()));
            }
            for x in row {
                if x.len() != alg.dim() {
                    return Err(format!("entry has {} coordinates, expected {}", x.len(), alg.dim()));
                }
                flat.push(x);
            }
        }
        Ok(BlockMat { rows, cols, entries: flat })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn get(&self, t: usize, s: usize) -> &Elem {
        &self.entries[t * self.cols.len() + s]
    }

    pub fn set(&mut self, t: usize, s: usize, x: Elem) {
        let n = self.cols.len();
        self.entries[t * n + s] = x;
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows.len())
            .map(|t| (0..self.cols.len()).map(|s| self.get(t, s).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| vec_ops::is_zero(x))
    }

    /// Checks that every entry lies in its corner.
    pub fn validate(&self, alg: &Algebra) -> Result<(), String> {
        for (t, &i) in self.rows.iter().enumerate() {
            for (s, &j) in self.cols.iter().enumerate() {
                let x = self.get(t, s);
                if !alg.corner(i, j).contains(x).unwrap_or(false) {
                    return Err(format!(
                        "entry ({t}, {s}) = {} is not in e{} R e{}",
                        alg.display_elem(x),
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// `self o earlier`
    pub fn compose(&self, alg: &Algebra, earlier: &BlockMat) -> BlockMat {
        assert_eq!(self.cols, earlier.rows, "composing incompatible block matrices");
        let mut out = BlockMat::zero(alg, self.rows.clone(), earlier.cols.clone());
        for t in 0..self.rows.len() {
            for s in 0..earlier.cols.len() {
                let mut acc = alg.zero();
                for u in 0..self.cols.len() {
                    let (a, b) = (self.get(t, u), earlier.get(u, s));
                    if vec_ops::is_zero(a) || vec_ops::is_zero(b) {
                        continue;
                    }
                    acc = vec_ops::add(&acc, &alg.mul(a, b));
                }
                out.set(t, s, acc);
            }
        }
        out
    }

    fn zip(&self, other: &BlockMat, f: impl Fn(&Elem, &Elem) -> Elem) -> BlockMat {
        assert!(self.rows == other.rows && self.cols == other.cols, "block shapes differ");
        BlockMat {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &BlockMat) -> BlockMat {
        self.zip(other, |a, b| vec_ops::add(a, b))
    }

    pub fn sub(&self, other: &BlockMat) -> BlockMat {
        self.zip(other, |a, b| vec_ops::sub(a, b))
    }

    pub fn neg(&self) -> BlockMat {
        self.map_entries(|x| vec_ops::neg(x))
    }

    pub fn scale(&self, c: &Scalar) -> BlockMat {
        BlockMat {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|x| vec_ops::scale(c, x)).collect(),
        }
    }

    /// `[[a, b], [c, d]]` with `a`'s rows and columns first.
    pub fn blocks(alg: &Algebra, a: &BlockMat, b: &BlockMat, c: &BlockMat, d: &BlockMat) -> BlockMat {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let rows: Vec<usize> = a.rows.iter().chain(&c.rows).copied().collect();
        let cols: Vec<usize> = a.cols.iter().chain(&b.cols).copied().collect();
        let (ra, ca) = (a.rows.len(), a.cols.len());
        let mut out = BlockMat::zero(alg, rows.clone(), cols.clone());
        for t in 0..rows.len() {
            for s in 0..cols.len() {
                let x = match (t < ra, s < ca) {
                    (true, true) => a.get(t, s),
                    (true, false) => b.get(t, s - ca),
                    (false, true) => c.get(t - ra, s),
                    (false, false) => d.get(t - ra, s - ca),
                };
                out.set(t, s, x.clone());
            }
        }
        out
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn sub_block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> BlockMat {
        let rows = self.rows[r0..r1].to_vec();
        let cols = self.cols[c0..c1].to_vec();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for t in r0..r1 {
            for s in c0..c1 {
                entries.push(self.get(t, s).clone());
            }
        }
        BlockMat { rows, cols, entries }
    }

    /// Entrywise image under a linear map of algebra elements.
    pub fn map_entries(&self, f: impl Fn(&Elem) -> Elem) -> BlockMat {
        BlockMat {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }
}
