//! Dense univariate polynomials over any [`Ring`], lowest degree first.

use super::{Field, Ring};
use crate::error::NonInvertible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial, trimming trailing zeros.
    pub fn new<R: Ring<El = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant<R: Ring<El = E>>(ring: &R, c: E) -> Self {
        Self::new(ring, vec![c])
    }

    /// The monic linear polynomial Z − r.
    pub fn linear_root<R: Ring<El = E>>(ring: &R, r: &E) -> Self {
        Self::new(ring, vec![ring.neg(r), ring.one()])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<R: Ring<El = E>>(&self, ring: &R, k: usize) -> E {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn add<R: Ring<El = E>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| ring.add(&self.coeff(ring, k), &other.coeff(ring, k)))
            .collect();
        Self::new(ring, coeffs)
    }

    pub fn neg<R: Ring<El = E>>(&self, ring: &R) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect(),
        }
    }

    pub fn sub<R: Ring<El = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: Ring<El = E>>(&self, ring: &R, c: &E) -> Self {
        Self::new(ring, self.coeffs.iter().map(|x| ring.mul(x, c)).collect())
    }

    pub fn mul<R: Ring<El = E>>(&self, ring: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
        Self::new(ring, out)
    }

    /// Horner evaluation.
    pub fn eval<R: Ring<El = E>>(&self, ring: &R, z: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, z), c))
    }

    pub fn equal<R: Ring<El = E>>(&self, ring: &R, other: &Self) -> bool {
        self.sub(ring, other).is_zero()
    }

    /// Division with remainder: `self = q·g + r`, `deg r < deg g`.
    pub fn divrem<F: Field<El = E>>(&self, field: &F, g: &Self) -> Result<(Self, Self), NonInvertible> {
        let lead = g.leading().ok_or(NonInvertible)?;
        let lead_inv = field.inv(lead)?;
        let dg = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let c = field.mul(&rem[k + dg], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (i, gi) in g.coeffs.iter().enumerate() {
                rem[k + i] = field.sub(&rem[k + i], &field.mul(&c, gi));
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(field, quot), Self::new(field, rem)))
    }
}
