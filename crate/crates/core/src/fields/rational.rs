use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring};
use crate::error::NonInvertible;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self, NonInvertible> {
        if self.is_zero() {
            Err(NonInvertible)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Reduction modulo a prime `p`; fails if `p` divides the denominator.
    pub fn mod_prime(&self, p: u64) -> Result<u64, NonInvertible> {
        let pb = BigInt::from(p);
        let reduce = |n: &BigInt| -> u64 {
            let r = ((n % &pb) + &pb) % &pb;
            r.try_into().expect("residue fits in u64")
        };
        let num = reduce(self.numer());
        let den = reduce(self.denom());
        if den == 0 {
            return Err(NonInvertible);
        }
        let field = super::PrimeField::new_unchecked(p);
        Ok(field.mul(&num, &field.inv(&den)?))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("invalid integer `{n}`"))?;
        let d: BigInt = d.parse().map_err(|_| format!("invalid integer `{d}`"))?;
        Rational::new(n, d).ok_or_else(|| format!("zero denominator in `{s}`"))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type El = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_int(n)
    }
    fn add(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }
    fn sub(&self, x: &Rational, y: &Rational) -> Rational {
        x - y
    }
    fn neg(&self, x: &Rational) -> Rational {
        -x
    }
    fn mul(&self, x: &Rational, y: &Rational) -> Rational {
        x * y
    }
    fn is_zero(&self, x: &Rational) -> bool {
        x.is_zero()
    }
    fn equal(&self, x: &Rational, y: &Rational) -> bool {
        x == y
    }
}

impl Field for RationalField {
    fn inv(&self, x: &Rational) -> Result<Rational, NonInvertible> {
        x.recip()
    }
}
