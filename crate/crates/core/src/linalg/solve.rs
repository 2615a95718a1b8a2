use super::echelon::rref;
use super::subspace::kernel_of_rows;
use super::{Field, LinalgError, Mat, Scalar, Subspace};

/// Result of [`solve`]: a particular solution when `A x = b` is consistent,
/// together with the kernel of `A`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Option<Mat>,
    pub kernel: Subspace,
}

/// Solves `A x = b` exactly over a field.
pub fn solve(a: &Mat, b: &Mat) -> Result<Solution, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::Shape(format!(
            "A has {} rows but b has {}",
            a.rows(),
            b.rows()
        )));
    }
    if a.field() != b.field() {
        return Err(LinalgError::FieldMismatch);
    }
    let solver = LinearSolver::new(a)?;
    let mut cols = Vec::with_capacity(b.cols());
    let mut consistent = true;
    for j in 0..b.cols() {
        match solver.solve(&b.col(j))? {
            Some(x) => cols.push(x),
            None => {
                consistent = false;
                break;
            }
        }
    }
    let particular = consistent.then(|| Mat::from_cols(a.field(), a.cols(), &cols));
    Ok(Solution {
        particular,
        kernel: solver.kernel(),
    })
}

/// A factorisation of `A` that answers many right-hand sides cheaply.
///
/// Stores `E` with `E A = R` in reduced echelon form.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    field: Field,
    rows: usize,
    cols: usize,
    reduced: Vec<Vec<Scalar>>,
    transform: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(a: &Mat) -> Result<LinearSolver, LinalgError> {
        if a.has_laurent() {
            return Err(LinalgError::NoDivision);
        }
        LinearSolver::from_rows(a.field(), a.rows(), a.cols(), a.to_rows())
    }

    /// Builds from the columns of `A`, the natural shape for maps given by
    /// the images of basis vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<LinearSolver, LinalgError> {
        let r = (0..rows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        LinearSolver::from_rows(field, rows, columns.len(), r)
    }

    fn from_rows(field: Field, m: usize, n: usize, rows: Vec<Vec<Scalar>>) -> Result<LinearSolver, LinalgError> {
        if rows.iter().flatten().any(Scalar::is_laurent) {
            return Err(LinalgError::NoDivision);
        }
        let mut aug: Vec<Vec<Scalar>> = rows
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..m).map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) }));
                r
            })
            .collect();
        let pivots = rref(&mut aug, n);
        let mut reduced = Vec::with_capacity(m);
        let mut transform = Vec::with_capacity(m);
        for mut r in aug {
            let t = r.split_off(n);
            reduced.push(r);
            transform.push(t);
        }
        Ok(LinearSolver {
            field,
            rows: m,
            cols: n,
            reduced,
            transform,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// A solution of `A x = b` with free variables set to zero, or `None`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let nz: Vec<usize> = (0..self.rows).filter(|&i| !b[i].is_zero()).collect();
        let eb = |i: usize| {
            let mut acc = Scalar::zero(self.field);
            for &k in &nz {
                let t = &self.transform[i][k];
                if !t.is_zero() {
                    acc = &acc + &(t * &b[k]);
                }
            }
            acc
        };
        for i in self.rank()..self.rows {
            if !eb(i).is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = eb(i);
        }
        Ok(Some(x))
    }

    /// For an inconsistent system, a row vector `y` with `y A = 0` and
    /// `y b != 0`. Such a `y` proves infeasibility without trusting the
    /// elimination that found it.
    pub fn infeasibility(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        if b.len() != self.rows {
            return None;
        }
        (self.rank()..self.rows).find_map(|i| {
            let y = &self.transform[i];
            let yb = y.iter().zip(b).fold(Scalar::zero(self.field), |acc, (u, v)| &acc + &(u * v));
            (!yb.is_zero()).then(|| y.clone())
        })
    }

    pub fn kernel(&self) -> Subspace {
        let rows = self.reduced[..self.rank()].to_vec();
        let basis = kernel_of_rows(self.field, rows, self.cols);
        Subspace::span(self.field, self.cols, basis).expect("kernel vectors have the right length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_scalar() {
        let f = Field::Rational;
        let b = Mat::from_rows(f, vec![vec![Scalar::from_int(f, 3)], vec![Scalar::from_int(f, -1)]]).unwrap();
        let s = solve(&Mat::identity(f, 2), &b).unwrap();
        assert_eq!(s.particular.unwrap(), b);
        assert!(s.kernel.is_zero());

        let two = Mat::from_rows(f, vec![vec![Scalar::from_int(f, 2)]]).unwrap();
        let one = Mat::from_rows(f, vec![vec![Scalar::one(f)]]).unwrap();
        let x = solve(&two, &one).unwrap().particular.unwrap();
        assert_eq!(x.get(0, 0), Scalar::from_ratio(f, 1, 2).unwrap());
    }

    #[test]
    fn inconsistent() {
        let f = Field::Rational;
        let a = Mat::zeros(f, 1, 1);
        let b = Mat::identity(f, 1);
        let s = solve(&a, &b).unwrap();
        assert!(s.particular.is_none());
        assert_eq!(s.kernel.dim(), 1);
    }

    #[test]
    fn laurent_rejected() {
        use crate::linalg::Laurent;
        use num_rational::BigRational;
        let f = Field::Rational;
        let x = Scalar::laurent(Laurent::monomial(vec![1], BigRational::from_integer(1.into())));
        let a = Mat::from_rows(f, vec![vec![x]]).unwrap();
        assert!(matches!(solve(&a, &Mat::identity(f, 1)), Err(LinalgError::NoDivision)));
    }
}
