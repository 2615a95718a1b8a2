use std::sync::Arc;

use super::{Algebra, Elem};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, Field, Scalar, Subspace};

/// A two-sided ideal, stored as a subspace of the algebra.
#[derive(Clone, Debug)]
pub struct TwoSidedIdeal {
    algebra: Arc<Algebra>,
    space: Subspace,
}

impl PartialEq for TwoSidedIdeal {
    fn eq(&self, other: &TwoSidedIdeal) -> bool {
        Algebra::same(&self.algebra, &other.algebra) && self.space == other.space
    }
}

impl TwoSidedIdeal {
    /// Checks that the span of `vectors` is already a two-sided ideal.
    pub fn span(r: &Arc<Algebra>, vectors: Vec<Elem>) -> Result<TwoSidedIdeal> {
        let space = Subspace::span(r.field(), r.dim(), vectors)?;
        for v in space.basis() {
            for k in 0..r.dim() {
                let b = r.basis_elem(k);
                for w in [r.mul(v, &b), r.mul(&b, v)] {
                    if !space.contains(&w)? {
                        return Err(Error::Ideal(format!(
                            "{} * {} leaves the span",
                            r.display_elem(v),
                            r.basis_names()[k]
                        )));
                    }
                }
            }
        }
        Ok(TwoSidedIdeal { algebra: r.clone(), space })
    }

    /// The ideal `R x R` generated by the given elements.
    pub fn generated(r: &Arc<Algebra>, gens: &[Elem]) -> Result<TwoSidedIdeal> {
        let d = r.dim();
        let mut vs = Vec::with_capacity(gens.len() * d * d);
        for g in gens {
            if g.len() != d {
                return Err(Error::Ideal("generator has the wrong length".into()));
            }
            for i in 0..d {
                let left = r.mul(&r.basis_elem(i), g);
                for j in 0..d {
                    vs.push(r.mul(&left, &r.basis_elem(j)));
                }
            }
        }
        let space = Subspace::span(r.field(), d, vs)?;
        Ok(TwoSidedIdeal { algebra: r.clone(), space })
    }

    /// `R e R` for an idempotent `e`.
    pub fn generated_by_idempotent(r: &Arc<Algebra>, e: &[Scalar]) -> Result<TwoSidedIdeal> {
        if !r.is_idempotent_elem(e) {
            return Err(Error::NotIdempotent);
        }
        TwoSidedIdeal::generated(r, &[e.to_vec()])
    }

    pub fn zero(r: &Arc<Algebra>) -> TwoSidedIdeal {
        TwoSidedIdeal {
            algebra: r.clone(),
            space: Subspace::zero(r.field(), r.dim()),
        }
    }

    pub fn whole(r: &Arc<Algebra>) -> TwoSidedIdeal {
        TwoSidedIdeal {
            algebra: r.clone(),
            space: Subspace::full(r.field(), r.dim()),
        }
    }

    /// Jacobson radical as the kernel of the trace form `tr(L_{xy})`.
    ///
    /// Only sound in characteristic zero or above the dimension; the result
    /// is checked to be nilpotent before it is returned.
    pub fn radical(r: &Arc<Algebra>) -> Result<TwoSidedIdeal> {
        let d = r.dim();
        let p = r.field().characteristic();
        if p != 0 && p <= d as u64 {
            return Err(Error::Characteristic { characteristic: p, dim: d });
        }
        let traces: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let m = r.left_mult(&r.structure_constants()[i][j]);
                        (0..d).fold(Scalar::zero(r.field()), |acc, k| &acc + &m.get(k, k))
                    })
                    .collect()
            })
            .collect();
        // x is in the radical iff sum_i x_i T[i][j] = 0 for all j, i.e. T^t x = 0
        let transposed: Vec<Vec<Scalar>> = (0..d).map(|j| (0..d).map(|i| traces[i][j].clone()).collect()).collect();
        let kernel = kernel_of_rows(r.field(), transposed, d);
        let rad = TwoSidedIdeal::span(r, kernel)?;
        let mut power = rad.clone();
        for _ in 0..=d {
            if power.is_zero() {
                return Ok(rad);
            }
            power = power.product(&rad)?;
        }
        Err(Error::Ideal("trace-form kernel is not nilpotent".into()))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_whole(&self) -> bool {
        self.space.dim() == self.algebra.dim()
    }

    pub fn basis(&self) -> &[Elem] {
        self.space.basis()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.space.contains(x).unwrap_or(false)
    }

    /// `I J`, the span of all products.
    pub fn product(&self, other: &TwoSidedIdeal) -> Result<TwoSidedIdeal> {
        super::ensure_same(&self.algebra, &other.algebra, "ideal product")?;
        let r = &self.algebra;
        let vs = self
            .basis()
            .iter()
            .flat_map(|x| other.basis().iter().map(move |y| r.mul(x, y)))
            .collect();
        TwoSidedIdeal::span(r, vs)
    }

    pub fn square(&self) -> Result<TwoSidedIdeal> {
        self.product(self)
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.square()? == *self)
    }

    pub fn is_subideal_of(&self, other: &TwoSidedIdeal) -> bool {
        self.space.is_subspace_of(&other.space).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn radicals() {
        let f = Field::Rational;
        assert!(TwoSidedIdeal::radical(&fixtures::k_times_k(f)).unwrap().is_zero());
        let r = fixtures::ut2(f);
        let rad = TwoSidedIdeal::radical(&r).unwrap();
        assert_eq!(rad.basis(), &[r.basis_elem(1)]);
        let d = fixtures::dual_numbers(f);
        assert_eq!(TwoSidedIdeal::radical(&d).unwrap().basis(), &[d.basis_elem(1)]);
    }

    #[test]
    fn characteristic_guard() {
        let f = Field::prime(3).unwrap();
        assert!(matches!(
            TwoSidedIdeal::radical(&fixtures::ut2(f)),
            Err(Error::Characteristic { .. })
        ));
        assert!(TwoSidedIdeal::radical(&fixtures::ut2(Field::prime(5).unwrap())).is_ok());
    }

    #[test]
    fn idempotency() {
        let r = fixtures::ut2(Field::Rational);
        let rad = TwoSidedIdeal::radical(&r).unwrap();
        assert!(rad.square().unwrap().is_zero());
        assert!(!rad.is_idempotent().unwrap());
        let a = TwoSidedIdeal::generated_by_idempotent(&r, r.idempotent(0)).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_idempotent().unwrap());
        assert!(TwoSidedIdeal::whole(&r).is_idempotent().unwrap());
        assert!(matches!(
            TwoSidedIdeal::generated_by_idempotent(&r, &r.basis_elem(1)),
            Err(Error::NotIdempotent)
        ));
    }
}
