use super::{ensure_same, Bimodule, FdModule};
use crate::error::Result;
use crate::linalg::{Field, Mat, Scalar, Subspace};

/// `M (x)_R N` presented as `M (x)_k N` modulo the balancing relations.
///
/// The quotient basis consists of the classes of unit tensors `m_p (x) n_q`
/// at the free coordinates of the relation subspace, listed in [`Tensor::reps`].
#[derive(Clone, Debug)]
pub struct Tensor {
    field: Field,
    left_dim: usize,
    right_dim: usize,
    relations: Subspace,
    reps: Vec<(usize, usize)>,
}

impl Tensor {
    /// `right_actions[i]` acts on the left factor from the right,
    /// `left_actions[i]` on the right factor from the left, both in row
    /// convention.
    pub fn balance(field: Field, left_dim: usize, right_dim: usize, right_actions: &[Mat], left_actions: &[Mat]) -> Tensor {
        let n = left_dim * right_dim;
        let mut rels = Vec::new();
        for (a, l) in right_actions.iter().zip(left_actions) {
            for p in 0..left_dim {
                let mp = a.row(p);
                for q in 0..right_dim {
                    let nq = l.row(q);
                    let mut v = vec![Scalar::zero(field); n];
                    for (x, c) in mp.iter().enumerate() {
                        if !c.is_zero() {
                            v[x * right_dim + q] = &v[x * right_dim + q] + c;
                        }
                    }
                    for (y, c) in nq.iter().enumerate() {
                        if !c.is_zero() {
                            v[p * right_dim + y] = &v[p * right_dim + y] - c;
                        }
                    }
                    if v.iter().any(|s| !s.is_zero()) {
                        rels.push(v);
                    }
                }
            }
        }
        let relations = Subspace::span(field, n, rels).expect("lengths match");
        let reps = relations
            .free_coords()
            .into_iter()
            .map(|k| (k / right_dim.max(1), k % right_dim.max(1)))
            .collect();
        Tensor {
            field,
            left_dim,
            right_dim,
            relations,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[(usize, usize)] {
        &self.reps
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Class of a vector of `M (x)_k N`.
    pub fn class(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.relations.quotient_coords(v)
    }

    /// Class of `x (x) y`.
    pub fn class_of(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(self.field); self.left_dim * self.right_dim];
        for (p, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    v[p * self.right_dim + q] = a * b;
                }
            }
        }
        self.class(&v)
    }

    /// Matrix (row convention) of `f (x) g` from `self` to `target`.
    pub fn induced(&self, target: &Tensor, f: &Mat, g: &Mat) -> Mat {
        let rows: Vec<Vec<Scalar>> = self.reps.iter().map(|&(p, q)| target.class_of(&f.row(p), &g.row(q))).collect();
        if rows.is_empty() {
            Mat::zeros(self.field, 0, target.dim())
        } else {
            Mat::from_rows(self.field, rows).expect("rectangular")
        }
    }
}

/// `M (x)_R B` as a right `S`-module, for `M` over `R` and an `(R, S)`-bimodule `B`.
pub fn module_tensor(m: &FdModule, b: &Bimodule) -> Result<(FdModule, Tensor)> {
    ensure_same(m.algebra(), b.left(), "module tensor")?;
    let t = Tensor::balance(m.field(), m.dim(), b.dim(), m.action(), b.left_action());
    let id = Mat::identity(m.field(), m.dim());
    let action = b.right_action().iter().map(|r| t.induced(&t, &id, r)).collect();
    let module = FdModule::new(b.right().clone(), t.dim(), action)?;
    Ok((module, t))
}

/// `B (x)_S C` as an `(R, T)`-bimodule.
pub fn bimodule_tensor(b: &Bimodule, c: &Bimodule) -> Result<(Bimodule, Tensor)> {
    ensure_same(b.right(), c.left(), "bimodule tensor")?;
    let t = Tensor::balance(b.field(), b.dim(), c.dim(), b.right_action(), c.left_action());
    let id_b = Mat::identity(b.field(), b.dim());
    let id_c = Mat::identity(b.field(), c.dim());
    let left = b.left_action().iter().map(|l| t.induced(&t, l, &id_c)).collect();
    let right = c.right_action().iter().map(|r| t.induced(&t, &id_b, r)).collect();
    let out = Bimodule::new(b.left().clone(), c.right().clone(), t.dim(), left, right)?;
    Ok((out, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TwoSidedIdeal;
    use crate::fixtures;

    #[test]
    fn unit_bimodule() {
        let r = fixtures::ut2(Field::Rational);
        for i in 0..2 {
            let p = FdModule::projective(&r, i);
            let (t, _) = module_tensor(&p, &Bimodule::regular(&r)).unwrap();
            assert_eq!(t.dim(), p.dim());
            assert_eq!(t.hom_dim(&p).unwrap(), p.hom_dim(&p).unwrap());
        }
    }

    #[test]
    fn idempotent_ideal_tensor() {
        let r = fixtures::ut2(Field::Rational);
        let a = TwoSidedIdeal::generated_by_idempotent(&r, r.idempotent(0)).unwrap();
        let ab = Bimodule::from_ideal(&a);
        let (aa, _) = bimodule_tensor(&ab, &ab).unwrap();
        assert_eq!(aa.dim(), 2);
    }

    #[test]
    fn split_map_tensor() {
        let f = fixtures::diagonal_into_ut2(Field::Rational);
        let a = Bimodule::restriction(&f);
        let b = Bimodule::along(&f);
        // A (x)_B A
        let (t, _) = bimodule_tensor(&a, &b).unwrap();
        assert_eq!(t.dim(), 4);
    }
}
