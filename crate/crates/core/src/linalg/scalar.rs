//! Exact scalars: rationals, prime-field residues, and Laurent polynomials
//! with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::Laurent;
use super::LinalgError;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Characteristic of the field, 0 for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Builds a prime field, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(LinalgError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo a prime, always kept in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP {
    value: u64,
    modulus: u64,
}

impl ModP {
    pub fn new(value: i128, modulus: u64) -> ModP {
        let m = modulus as i128;
        ModP {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> ModP {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        ModP {
            value: acc,
            modulus: self.modulus,
        }
    }

    fn inv(self) -> Option<ModP> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

/// An exact scalar.
///
/// Laurent polynomials whose support is the constant monomial are always
/// collapsed to `Rat`, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(ModP),
    Laurent(Laurent),
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod(ModP::new(n as i128, p)),
        }
    }

    pub fn from_ratio(field: Field, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        if den == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        match field {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num.into(), den.into()))),
            Field::Prime(_) => {
                let d = Scalar::from_int(field, den);
                let d = d.inv().ok_or(LinalgError::DivisionByZero)?;
                Ok(&Scalar::from_int(field, num) * &d)
            }
        }
    }

    /// Parses `"n"` or `"n/d"`.
    pub fn parse(field: Field, s: &str) -> Result<Scalar, LinalgError> {
        let s = s.trim();
        let bad = || LinalgError::BadScalar(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        match field {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let reduce = |x: &BigInt| -> i128 {
                    let r = ((x % &m) + &m) % &m;
                    i128::try_from(r).expect("residue fits")
                };
                let n = Scalar::Mod(ModP::new(reduce(&num), p));
                let d = ModP::new(reduce(&den), p)
                    .inv()
                    .ok_or(LinalgError::DivisionByZero)?;
                Ok(&n * &Scalar::Mod(d))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(m) => m.value == 0,
            Scalar::Laurent(l) => l.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(m) => m.value == 1,
            Scalar::Laurent(_) => false,
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, Scalar::Laurent(_))
    }

    /// Multiplicative inverse; `None` for zero and for Laurent values.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) if !r.is_zero() => Some(Scalar::Rat(r.recip())),
            Scalar::Mod(m) => m.inv().map(Scalar::Mod),
            _ => None,
        }
    }

    /// Field of a field-valued scalar; Laurent values report `Rational`.
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod(m) => Field::Prime(m.modulus),
            _ => Field::Rational,
        }
    }

    pub fn as_laurent(&self) -> Laurent {
        match self {
            Scalar::Rat(r) => Laurent::constant(r.clone()),
            Scalar::Laurent(l) => l.clone(),
            Scalar::Mod(_) => panic!("prime-field scalar used in Laurent arithmetic"),
        }
    }

    fn from_laurent(l: Laurent) -> Scalar {
        match l.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Laurent(l),
        }
    }

    pub fn laurent(l: Laurent) -> Scalar {
        Scalar::from_laurent(l)
    }

    /// Small-integer view used by deterministic test generators and k0 counts.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => i64::try_from(r.to_integer()).ok(),
            Scalar::Mod(m) => Some(m.value as i64),
            _ => None,
        }
    }
}

fn mixed() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => Scalar::Mod(ModP {
                value: (a.value + b.value) % a.modulus,
                modulus: a.modulus,
            }),
            (Scalar::Mod(_), _) | (_, Scalar::Mod(_)) => mixed(),
            (a, b) => Scalar::from_laurent(&a.as_laurent() + &b.as_laurent()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => Scalar::Mod(ModP {
                value: a.value * b.value % a.modulus,
                modulus: a.modulus,
            }),
            (Scalar::Mod(_), _) | (_, Scalar::Mod(_)) => mixed(),
            (a, b) => Scalar::from_laurent(&a.as_laurent() * &b.as_laurent()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => Scalar::Mod(ModP::new(-(a.value as i128), a.modulus)),
            Scalar::Laurent(l) => Scalar::Laurent(-l),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(m) => write!(f, "{}", m.value),
            Scalar::Laurent(l) => write!(f, "{l}"),
        }
    }
}

pub(crate) fn rational_display(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn is_negative(r: &BigRational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let q = Scalar::parse(Field::Rational, "6/4").unwrap();
        assert_eq!(q.to_string(), "3/2");
        let p = Field::prime(7).unwrap();
        let half = Scalar::parse(p, "1/2").unwrap();
        assert_eq!(half.to_string(), "4");
        assert_eq!(Scalar::parse(p, "-1").unwrap().to_string(), "6");
        assert!(Scalar::parse(Field::Rational, "1/0").is_err());
        assert!(Scalar::parse(Field::Rational, "abc").is_err());
    }

    #[test]
    fn inverses() {
        let p = Field::prime(5).unwrap();
        for v in 1..5 {
            let x = Scalar::from_int(p, v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(Scalar::zero(Field::Rational).inv().is_none());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
    }
}
