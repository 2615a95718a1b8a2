//! Exact arithmetic and linear algebra over the rationals and prime fields,
//! plus Laurent polynomials for certificate checks.
//!
//! Everything is exact; there is no floating point anywhere in the crate.

mod echelon;
mod laurent;
mod mat;
mod scalar;
mod solve;
mod subspace;

pub use laurent::Laurent;
pub use mat::{set_sparse_threshold, sparse_threshold, Mat};
pub use scalar::{Field, ModP, Scalar};
pub use solve::{solve, LinearSolver, Solution};
pub use subspace::Subspace;

pub(crate) use subspace::{kernel_of_rows, unit};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    Ambient { expected: usize, found: usize },
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("Laurent polynomial entries do not support division")]
    NoDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a valid scalar: {0:?}")]
    BadScalar(String),
    #[error("{0} is not a supported prime modulus")]
    BadModulus(u64),
    #[error("argument is not a subspace of the receiver")]
    NotSubspace,
}

/// Coordinate-vector helpers.
pub mod vec_ops {
    use super::{Field, Scalar};

    pub fn zeros(field: Field, n: usize) -> Vec<Scalar> {
        vec![Scalar::zero(field); n]
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| c * x).collect()
    }

    pub fn neg(a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| -x).collect()
    }

    pub fn is_zero(a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    /// `acc += c * a`
    pub fn axpy(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (x, y) in acc.iter_mut().zip(a) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }
}
