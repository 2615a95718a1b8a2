//! Multivariate Laurent polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{is_negative, rational_display};

/// A finite sum of monomials `c * x0^a0 * x1^a1 * ...` with integer exponents.
///
/// Exponent vectors are stored with trailing zeros trimmed and zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<Vec<i64>, BigRational>,
}

fn trim(mut exp: Vec<i64>) -> Vec<i64> {
    while exp.last() == Some(&0) {
        exp.pop();
    }
    exp
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn constant(c: BigRational) -> Laurent {
        Laurent::monomial(Vec::new(), c)
    }

    pub fn monomial(exp: Vec<i64>, coeff: BigRational) -> Laurent {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exp), coeff);
        }
        Laurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, BigRational)>>(it: I) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in it {
            out.add_term(trim(e), c);
        }
        out
    }

    fn add_term(&mut self, exp: Vec<i64>, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let n = ea.len().max(eb.len());
                let exp: Vec<i64> = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(trim(exp), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (exp, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = if neg { -c } else { c.clone() };
            let vars: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { format!("t{i}") } else { format!("t{i}^{a}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", rational_display(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rational_display(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}
