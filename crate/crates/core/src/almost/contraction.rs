use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Field, Laurent, Mat, Scalar};

/// `Q[x_1, .., x_k]` with the variables flagged in `inverted` made invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    pub variables: Vec<String>,
    pub inverted: Vec<bool>,
}

impl LaurentRing {
    pub fn new(variables: Vec<String>, inverted: Vec<bool>) -> Result<LaurentRing> {
        if variables.len() != inverted.len() {
            return Err(Error::Fixture("one inversion flag per variable".into()));
        }
        Ok(LaurentRing { variables, inverted })
    }

    pub fn contains(&self, x: &Laurent) -> bool {
        x.terms().all(|(exp, _)| {
            exp.len() <= self.variables.len() && exp.iter().zip(&self.inverted).all(|(&e, &inv)| e >= 0 || inv)
        })
    }

    fn check(&self, m: &Mat, what: &str) -> Result<()> {
        for (i, j, s) in m.nonzeros() {
            if matches!(s, Scalar::Mod(_)) || !self.contains(&s.as_laurent()) {
                return Err(Error::Fixture(format!("{what} entry ({i}, {j}) = {} is not in the ring", s.as_laurent())));
            }
        }
        Ok(())
    }
}

/// A bounded complex of free modules over a Laurent ring, matrices in row
/// convention: `diffs[k]` is `d^{lo+k}` of shape `ranks[k] x ranks[k+1]` and
/// `homotopy[k]` is `h^{lo+k+1}` of shape `ranks[k+1] x ranks[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionFixture {
    ring: LaurentRing,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<Mat>,
    homotopy: Vec<Mat>,
}

fn shape(m: &Mat, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::Complex(format!("{what} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    Ok(())
}

impl ContractionFixture {
    pub fn new(ring: LaurentRing, lo: i64, ranks: Vec<usize>, diffs: Vec<Mat>, homotopy: Vec<Mat>) -> Result<ContractionFixture> {
        let steps = ranks.len().saturating_sub(1);
        if diffs.len() != steps || homotopy.len() != steps {
            return Err(Error::Complex(format!(
                "{} terms need {steps} differentials and homotopy components, found {} and {}",
                ranks.len(),
                diffs.len(),
                homotopy.len()
            )));
        }
        for k in 0..steps {
            let n = lo + k as i64;
            shape(&diffs[k], ranks[k], ranks[k + 1], &format!("d^{n}"))?;
            shape(&homotopy[k], ranks[k + 1], ranks[k], &format!("h^{}", n + 1))?;
            ring.check(&diffs[k], &format!("d^{n}"))?;
            ring.check(&homotopy[k], &format!("h^{}", n + 1))?;
        }
        for k in 1..steps {
            if !diffs[k - 1].mul(&diffs[k])?.is_zero() {
                return Err(Error::Complex(format!("d^{} d^{} is not zero", lo + k as i64, lo + k as i64 - 1)));
            }
        }
        Ok(ContractionFixture {
            ring,
            lo,
            ranks,
            diffs,
            homotopy,
        })
    }

    pub fn ring(&self) -> &LaurentRing {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn diffs(&self) -> &[Mat] {
        &self.diffs
    }

    pub fn homotopy(&self) -> &[Mat] {
        &self.homotopy
    }

    /// Same complex, different homotopy; validated like the original.
    pub fn with_homotopy(&self, homotopy: Vec<Mat>) -> Result<ContractionFixture> {
        ContractionFixture::new(self.ring.clone(), self.lo, self.ranks.clone(), self.diffs.clone(), homotopy)
    }
}

fn entry(m: &Mat, i: usize, j: usize) -> Laurent {
    m.get(i, j).as_laurent()
}

/// `(A B)[i][j]`, computed entrywise in Laurent arithmetic.
fn product_entry(a: &Mat, b: &Mat, i: usize, j: usize) -> Laurent {
    let mut acc = Laurent::zero();
    for k in 0..a.cols() {
        acc = &acc + &(&entry(a, i, k) * &entry(b, k, j));
    }
    acc
}

/// Checks `d^{n-1} h^n + h^{n+1} d^n = id` at every degree, which in row
/// convention reads `H_n D_{n-1} + D_n H_{n+1} = I`.
pub fn verify_contraction(fx: &ContractionFixture) -> bool {
    let one = Laurent::constant(BigRational::one());
    (0..fx.ranks.len()).all(|k| {
        let r = fx.ranks[k];
        (0..r).all(|i| {
            (0..r).all(|j| {
                let mut v = Laurent::zero();
                if k > 0 {
                    v = &v + &product_entry(&fx.homotopy[k - 1], &fx.diffs[k - 1], i, j);
                }
                if k + 1 < fx.ranks.len() {
                    v = &v + &product_entry(&fx.diffs[k], &fx.homotopy[k], i, j);
                }
                if i == j {
                    v = &v + &(-&one);
                }
                v.is_zero()
            })
        })
    })
}

fn mono(exp: &[i64], c: i64) -> Scalar {
    Scalar::laurent(Laurent::monomial(exp.to_vec(), BigRational::from_integer(c.into())))
}

/// The Koszul complex `R -> R^2 -> R` of `(x, y)` over `Q[x, x^-1, y]` in
/// degrees `-2..0`, with its contraction.
pub fn koszul_localized() -> ContractionFixture {
    let q = Field::Rational;
    let zero = Scalar::zero(q);
    let (x, y) = (mono(&[1], 1), mono(&[0, 1], 1));
    let (neg_x, neg_xinv, xinv) = (mono(&[1], -1), mono(&[-1], -1), mono(&[-1], 1));
    let m = |rows: Vec<Vec<Scalar>>| Mat::from_rows(q, rows).expect("rectangular");
    let ring = LaurentRing::new(vec!["x".into(), "y".into()], vec![true, false]).expect("flags match");
    ContractionFixture::new(
        ring,
        -2,
        vec![1, 2, 1],
        vec![m(vec![vec![y, neg_x]]), m(vec![vec![x], vec![mono(&[0, 1], 1)]])],
        vec![m(vec![vec![zero.clone()], vec![neg_xinv]]), m(vec![vec![xinv, zero]])],
    )
    .expect("Koszul complex is a complex")
}
