use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU8, Ordering};

use super::{Field, LinalgError, Scalar};

static SPARSE_THRESHOLD_PERCENT: AtomicU8 = AtomicU8::new(25);

/// Sets the density (in percent) below which new matrices use sparse storage.
/// Storage never changes any computed value.
pub fn set_sparse_threshold(percent: u8) {
    SPARSE_THRESHOLD_PERCENT.store(percent.min(100), Ordering::Relaxed);
}

pub fn sparse_threshold() -> u8 {
    SPARSE_THRESHOLD_PERCENT.load(Ordering::Relaxed)
}

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<Scalar>),
    Sparse(BTreeMap<(usize, usize), Scalar>),
}

/// A matrix of exact scalars.
#[derive(Clone, Debug)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            storage: Storage::Sparse(BTreeMap::new()),
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        Mat::from_fn(field, n, n, |i, j| {
            if i == j {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat::from_dense(field, rows, cols, data)
    }

    /// Picks dense or sparse storage from the density of `data`.
    fn from_dense(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        debug_assert_eq!(data.len(), rows * cols);
        let nnz = data.iter().filter(|s| !s.is_zero()).count();
        let total = rows * cols;
        let sparse = total > 0 && nnz * 100 < total * sparse_threshold() as usize;
        let storage = if sparse {
            let mut map = BTreeMap::new();
            for (k, s) in data.into_iter().enumerate() {
                if !s.is_zero() {
                    map.insert((k / cols, k % cols), s);
                }
            }
            Storage::Sparse(map)
        } else {
            Storage::Dense(data)
        };
        Mat {
            field,
            rows,
            cols,
            storage,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(Mat::from_dense(field, r, c, rows.into_iter().flatten().collect()))
    }

    /// Builds a matrix with the given columns; `rows` is needed when `cols` is empty.
    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        Mat::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j].clone(),
            Storage::Sparse(m) => m.get(&(i, j)).cloned().unwrap_or_else(|| Scalar::zero(self.field)),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, Scalar)> {
        match &self.storage {
            Storage::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(k, s)| (k / self.cols, k % self.cols, s.clone()))
                .collect(),
            Storage::Sparse(m) => m.iter().map(|(&(i, j), s)| (i, j, s.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Dense(d) => d.iter().all(Scalar::is_zero),
            Storage::Sparse(m) => m.values().all(Scalar::is_zero),
        }
    }

    pub fn has_laurent(&self) -> bool {
        self.nonzeros().iter().any(|(_, _, s)| s.is_laurent())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = vec![Scalar::zero(self.field); self.rows * rhs.cols];
        let rhs_rows: Vec<Vec<(usize, Scalar)>> = {
            let mut rr = vec![Vec::new(); rhs.rows];
            for (i, j, s) in rhs.nonzeros() {
                rr[i].push((j, s));
            }
            rr
        };
        for (i, k, a) in self.nonzeros() {
            for (j, b) in &rhs_rows[k] {
                let slot = &mut out[i * rhs.cols + j];
                *slot = &*slot + &(&a * b);
            }
        }
        Ok(Mat::from_dense(self.field, self.rows, rhs.cols, out))
    }

    fn zip(&self, rhs: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::Shape(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Mat::from_fn(self.field, self.rows, self.cols, |i, j| {
            f(&self.get(i, j), &rhs.get(i, j))
        }))
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| &self.get(i, j) * s)
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| -&self.get(i, j))
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        Mat::from_fn(self.field, self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            &self.get(i / rhs.rows, j / rhs.cols) * &rhs.get(i % rhs.rows, j % rhs.cols)
        })
    }

    pub fn hstack(&self, rhs: &Mat) -> Result<Mat, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::Shape("hstack row mismatch".into()));
        }
        Ok(Mat::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                rhs.get(i, j - self.cols)
            }
        }))
    }

    /// `v * self` for a row vector `v`.
    pub fn left_apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![Scalar::zero(self.field); self.cols];
        for (i, j, s) in self.nonzeros() {
            if !v[i].is_zero() {
                out[j] = &out[j] + &(&v[i] * &s);
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for (i, j, s) in self.nonzeros() {
            if !v[j].is_zero() {
                out[i] = &out[i] + &(&s * &v[j]);
            }
        }
        out
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        if self.has_laurent() {
            return Err(LinalgError::NoDivision);
        }
        let mut rows = self.to_rows();
        Ok(super::echelon::rref(&mut rows, self.cols).len())
    }
}

impl PartialEq for Mat {
    fn eq(&self, other: &Mat) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.nonzeros() == other.nonzeros()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(Field::Rational, n)
    }

    #[test]
    fn storage_is_invisible() {
        let a = Mat::from_rows(Field::Rational, vec![vec![q(1), q(0)], vec![q(0), q(0)]]).unwrap();
        set_sparse_threshold(0);
        let dense = Mat::from_rows(Field::Rational, vec![vec![q(1), q(0)], vec![q(0), q(0)]]).unwrap();
        set_sparse_threshold(25);
        assert!(!dense.is_sparse());
        assert_eq!(a, dense);
        assert_eq!(a.mul(&dense).unwrap(), a);
    }

    #[test]
    fn shape_errors() {
        let a = Mat::zeros(Field::Rational, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&Mat::zeros(Field::Rational, 3, 2)).is_err());
        assert!(Mat::from_rows(Field::Rational, vec![vec![q(1)], vec![]]).is_err());
    }
}
