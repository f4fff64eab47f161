//! Rational functions in a, b, η over Q(ρ): the field K = k(a, b, η).
//!
//! No multivariate GCD is computed. Normalization removes the common monomial
//! factor, cancels the denominator when it divides the numerator exactly, and
//! makes the denominator's leading coefficient 1. Equality is decided by
//! cross-multiplication, so it does not depend on how far normalization got.

use std::fmt;

use super::{Cyclotomic5, Field, MultiPoly, Ring, Var};
use crate::error::{Error, NonInvertible};

#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: Cyclotomic5) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` when this is a constant of Q(ρ).
    pub fn as_constant(&self) -> Option<Cyclotomic5> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n.mul(&d.inv().ok()?))
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: MultiPoly::one(),
            };
        }
        let (mut num, mut den) = (num, den);
        let cn = num.monomial_content();
        let cd = den.monomial_content();
        let common = [cn[0].min(cd[0]), cn[1].min(cd[1]), cn[2].min(cd[2])];
        if common != [0; 3] {
            num = num.shift_down(&common);
            den = den.shift_down(&common);
        }
        if den.as_constant().is_none() && den.num_terms() <= num.num_terms() {
            if let Some(q) = num.exact_div(&den) {
                num = q;
                den = MultiPoly::one();
            }
        }
        let (_, lead) = den.leading_term().expect("nonzero denominator");
        if !lead.is_one_cyc() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone());
        }
        Self::normalize(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_poly(MultiPoly::zero());
        }
        Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self, NonInvertible> {
        if self.is_zero() {
            return Err(NonInvertible);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

trait IsOneCyc {
    fn is_one_cyc(&self) -> bool;
}

impl IsOneCyc for Cyclotomic5 {
    fn is_one_cyc(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one_cyc()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// The field K = Q(ρ)(a, b, η).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RatFuncField;

impl RatFuncField {
    pub fn var(&self, v: Var) -> RatFunc {
        RatFunc::var(v)
    }

    pub fn rho(&self) -> RatFunc {
        RatFunc::constant(Cyclotomic5::rho())
    }
}

impl Ring for RatFuncField {
    type El = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(MultiPoly::zero())
    }
    fn one(&self) -> RatFunc {
        RatFunc::from_poly(MultiPoly::one())
    }
    fn from_int(&self, n: i64) -> RatFunc {
        RatFunc::constant(Cyclotomic5::from_int(n))
    }
    fn add(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        x.add(y)
    }
    fn sub(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        x.sub(y)
    }
    fn neg(&self, x: &RatFunc) -> RatFunc {
        x.neg()
    }
    fn mul(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        x.mul(y)
    }
    fn is_zero(&self, x: &RatFunc) -> bool {
        x.is_zero()
    }
    fn equal(&self, x: &RatFunc, y: &RatFunc) -> bool {
        x.equals(y)
    }
}

impl Field for RatFuncField {
    fn inv(&self, x: &RatFunc) -> Result<RatFunc, NonInvertible> {
        x.inv()
    }
}
