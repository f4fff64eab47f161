//! Exact arithmetic kernel.
//!
//! Every algorithm above this layer is written against [`Ring`] / [`Field`],
//! which follow the "ring as a value" style: the structure object carries any
//! runtime parameters (the prime, the quadratic modulus, ...) and elements are
//! plain data. The same charpoly or descent code therefore runs over exact
//! rational functions, prime fields, syntactic expressions and degree bounds.

use std::fmt::Debug;

use crate::error::NonInvertible;

pub mod cyclotomic;
pub mod degree;
pub mod multipoly;
pub mod prime;
pub mod quadratic;
pub mod ratfunc;
pub mod rational;
pub mod unipoly;

pub use cyclotomic::{Cyclotomic5, Cyclotomic5Field};
pub use degree::{DegreeBound, DegreeRing};
pub use multipoly::{MultiPoly, Var};
pub use prime::PrimeField;
pub use quadratic::QuadraticExtension;
pub use ratfunc::{RatFunc, RatFuncField};
pub use rational::{Rational, RationalField};
pub use unipoly::UniPoly;

pub trait Ring: Clone + Send + Sync {
    type El: Clone + Debug + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_int(&self, n: i64) -> Self::El;
    fn add(&self, x: &Self::El, y: &Self::El) -> Self::El;
    fn sub(&self, x: &Self::El, y: &Self::El) -> Self::El;
    fn neg(&self, x: &Self::El) -> Self::El;
    fn mul(&self, x: &Self::El, y: &Self::El) -> Self::El;
    /// Exact zero test. Rings without decidable equality (syntactic
    /// expressions) only recognise literal zeros.
    fn is_zero(&self, x: &Self::El) -> bool;

    fn equal(&self, x: &Self::El, y: &Self::El) -> bool {
        self.is_zero(&self.sub(x, y))
    }

    /// False for rings whose `is_zero` is only a sufficient test.
    fn decides_zero(&self) -> bool {
        true
    }

    fn is_one(&self, x: &Self::El) -> bool {
        self.equal(x, &self.one())
    }

    fn pow(&self, x: &Self::El, mut k: u64) -> Self::El {
        let mut base = x.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::El
    where
        I: IntoIterator<Item = &'a Self::El>,
        Self::El: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub trait Field: Ring {
    fn inv(&self, x: &Self::El) -> Result<Self::El, NonInvertible>;

    fn div(&self, x: &Self::El, y: &Self::El) -> Result<Self::El, NonInvertible> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    fn pow_signed(&self, x: &Self::El, k: i64) -> Result<Self::El, NonInvertible> {
        if k >= 0 {
            Ok(self.pow(x, k as u64))
        } else {
            Ok(self.pow(&self.inv(x)?, k.unsigned_abs()))
        }
    }
}
