//! Quadratic extensions F[t]/(t² + m₁t + m₀) over any base field.

use super::{Field, Ring};
use crate::error::NonInvertible;

/// Elements are pairs `(u, v)` meaning `u + v·t`. This is a field only when
/// the modulus is irreducible; inversion reports `NonInvertible` on zero
/// divisors otherwise.
#[derive(Debug, Clone)]
pub struct QuadraticExtension<F: Field> {
    base: F,
    m0: F::El,
    m1: F::El,
}

impl<F: Field> QuadraticExtension<F> {
    /// The extension by a root of `t² + m1·t + m0`.
    pub fn new(base: F, m0: F::El, m1: F::El) -> Self {
        QuadraticExtension { base, m0, m1 }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// The adjoined root t.
    pub fn generator(&self) -> (F::El, F::El) {
        (self.base.zero(), self.base.one())
    }

    pub fn embed(&self, x: F::El) -> (F::El, F::El) {
        (x, self.base.zero())
    }

    /// The other root's image: u + v·t ↦ u + v·(−m₁ − t).
    pub fn conjugate(&self, x: &(F::El, F::El)) -> (F::El, F::El) {
        let f = &self.base;
        (f.sub(&x.0, &f.mul(&self.m1, &x.1)), f.neg(&x.1))
    }
}

impl<F: Field> Ring for QuadraticExtension<F> {
    type El = (F::El, F::El);

    fn zero(&self) -> Self::El {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::El {
        (self.base.one(), self.base.zero())
    }
    fn from_int(&self, n: i64) -> Self::El {
        (self.base.from_int(n), self.base.zero())
    }
    fn add(&self, x: &Self::El, y: &Self::El) -> Self::El {
        (self.base.add(&x.0, &y.0), self.base.add(&x.1, &y.1))
    }
    fn sub(&self, x: &Self::El, y: &Self::El) -> Self::El {
        (self.base.sub(&x.0, &y.0), self.base.sub(&x.1, &y.1))
    }
    fn neg(&self, x: &Self::El) -> Self::El {
        (self.base.neg(&x.0), self.base.neg(&x.1))
    }
    fn mul(&self, x: &Self::El, y: &Self::El) -> Self::El {
        // (u + vt)(u' + v't) = uu' + (uv' + vu')t + vv't², t² = −m₁t − m₀
        let f = &self.base;
        let vv = f.mul(&x.1, &y.1);
        let c0 = f.sub(&f.mul(&x.0, &y.0), &f.mul(&vv, &self.m0));
        let c1 = f.sub(
            &f.add(&f.mul(&x.0, &y.1), &f.mul(&x.1, &y.0)),
            &f.mul(&vv, &self.m1),
        );
        (c0, c1)
    }
    fn is_zero(&self, x: &Self::El) -> bool {
        self.base.is_zero(&x.0) && self.base.is_zero(&x.1)
    }
}

impl<F: Field> Field for QuadraticExtension<F> {
    fn inv(&self, x: &Self::El) -> Result<Self::El, NonInvertible> {
        let conj = self.conjugate(x);
        let n = self.mul(x, &conj);
        debug_assert!(self.base.is_zero(&n.1));
        let ninv = self.base.inv(&n.0)?;
        Ok((self.base.mul(&conj.0, &ninv), self.base.mul(&conj.1, &ninv)))
    }
}
