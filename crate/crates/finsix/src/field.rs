//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > (1 << 31) || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::F(n.rem_euclid(*p as i64) as u64, *p),
        }
    }

    pub fn frac(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        let d = self.int(den).inv().ok_or_else(|| {
            Error::Parse(format!("denominator {den} vanishes in {self}"))
        })?;
        Ok(self.int(num) * d)
    }

    /// True when `n` is invertible in the field, i.e. the characteristic does not divide it.
    pub fn admits_order(&self, n: usize) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => (n as u64) % p != 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" || s == "qq" || s == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:").or_else(|| s.strip_prefix("f")) {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad field spec `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::Parse(format!("bad field spec `{s}`")))
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

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    F(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::F(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::F(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::F(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::F(v, p) => Scalar::F(pow_mod(*v, p - 2, *p), *p),
        })
    }

    /// Integer value when the scalar is an integer (rational case) or its residue.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Scalar::Q(r) if r.is_integer() => i64::try_from(r.to_integer()).ok(),
            Scalar::Q(_) => None,
            Scalar::F(v, _) => Some(*v as i64),
        }
    }

    /// Numerator and denominator (denominator 1 for residues).
    pub fn num_den(&self) -> (String, String) {
        match self {
            Scalar::Q(r) => (r.numer().to_string(), r.denom().to_string()),
            Scalar::F(v, _) => (v.to_string(), "1".into()),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.is_negative())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::F(v, _) => write!(f, "{v}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $q:expr, $fp:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q($q(a, b)),
                    (Scalar::F(a, p), Scalar::F(b, q)) if p == q => Scalar::F($fp(*a, *b, *p), *p),
                    _ => panic!("scalar field mismatch"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: u64, b: u64, p: u64| a * b % p);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::F(a, p) => Scalar::F((p - a) % p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:5".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("fp:6".parse::<Field>().is_err());
    }

    #[test]
    fn prime_inverse() {
        let f = Field::Prime(7);
        for n in 1..7 {
            let x = f.int(n);
            assert!((x.clone() * x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_arith() {
        let f = Field::Rational;
        let h = f.frac(1, 2).unwrap();
        assert_eq!(h.clone() + h, f.one());
        assert!(Field::Prime(5).admits_order(6));
        assert!(!Field::Prime(3).admits_order(6));
    }
}
