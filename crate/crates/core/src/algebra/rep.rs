//! The 5×5 representation of D over L = K[Y]/(Y⁵ − b) ≅ K[y] and reduced
//! characteristic polynomials.
//!
//! x acts by the matrix with 1s on the subdiagonal and a in the top-right
//! corner; m ∈ K[y] acts by Diag(m, σ(m), …, σ⁴(m)). L is only a commutative
//! ring in general (Y⁵ − b may split at a specialization), so everything here
//! is ring-theoretic except the divisions by 1..5 and explicit inverses.

use super::{AlgebraElement, SymbolAlgebra};
use crate::error::{Error, NonInvertible};
use crate::fields::{Field, Ring, UniPoly};

/// L = F[Y]/(Y⁵ − b); elements are coefficient vectors in 1, Y, …, Y⁴.
#[derive(Debug, Clone)]
pub struct SubfieldRing<F: Field> {
    field: F,
    b: F::El,
}

pub type LMatrix<E> = [[[E; 5]; 5]; 5];

impl<F: Field> SubfieldRing<F> {
    pub fn new(field: F, b: F::El) -> Self {
        SubfieldRing { field, b }
    }

    pub fn embed(&self, c: F::El) -> [F::El; 5] {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    pub fn mat_zero(&self) -> LMatrix<F::El> {
        std::array::from_fn(|_| std::array::from_fn(|_| self.zero()))
    }

    pub fn mat_identity(&self) -> LMatrix<F::El> {
        self.mat_scalar(&self.one())
    }

    pub fn mat_scalar(&self, s: &[F::El; 5]) -> LMatrix<F::El> {
        let mut m = self.mat_zero();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = s.clone();
        }
        m
    }

    pub fn mat_add(&self, p: &LMatrix<F::El>, q: &LMatrix<F::El>) -> LMatrix<F::El> {
        std::array::from_fn(|i| std::array::from_fn(|j| self.add(&p[i][j], &q[i][j])))
    }

    pub fn mat_scale(&self, s: &[F::El; 5], p: &LMatrix<F::El>) -> LMatrix<F::El> {
        std::array::from_fn(|i| std::array::from_fn(|j| self.mul(s, &p[i][j])))
    }

    pub fn mat_mul(&self, p: &LMatrix<F::El>, q: &LMatrix<F::El>) -> LMatrix<F::El> {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..5).fold(self.zero(), |acc, k| {
                    if self.is_zero(&p[i][k]) || self.is_zero(&q[k][j]) {
                        acc
                    } else {
                        self.add(&acc, &self.mul(&p[i][k], &q[k][j]))
                    }
                })
            })
        })
    }

    pub fn mat_trace(&self, p: &LMatrix<F::El>) -> [F::El; 5] {
        (0..5).fold(self.zero(), |acc, i| self.add(&acc, &p[i][i]))
    }

    pub fn mat_equal(&self, p: &LMatrix<F::El>, q: &LMatrix<F::El>) -> bool {
        (0..5).all(|i| (0..5).all(|j| self.equal(&p[i][j], &q[i][j])))
    }

    pub fn mat_is_zero(&self, p: &LMatrix<F::El>) -> bool {
        p.iter().flatten().all(|e| self.is_zero(e))
    }

    /// Checks an L-element lies in F (Y-degree 0) and returns it.
    /// Rings without a zero test only yield the Y⁰ part.
    fn in_base(&self, v: &[F::El; 5], index: usize) -> Result<F::El, Error> {
        if !self.field.decides_zero() {
            return Ok(v[0].clone());
        }
        match (1..5).find(|&d| !self.field.is_zero(&v[d])) {
            Some(degree) => Err(Error::CoefficientNotInK { index, degree }),
            None => Ok(v[0].clone()),
        }
    }
}

impl<F: Field> Ring for SubfieldRing<F> {
    type El = [F::El; 5];

    fn zero(&self) -> Self::El {
        std::array::from_fn(|_| self.field.zero())
    }
    fn one(&self) -> Self::El {
        self.embed(self.field.one())
    }
    fn from_int(&self, n: i64) -> Self::El {
        self.embed(self.field.from_int(n))
    }
    fn add(&self, x: &Self::El, y: &Self::El) -> Self::El {
        std::array::from_fn(|k| self.field.add(&x[k], &y[k]))
    }
    fn sub(&self, x: &Self::El, y: &Self::El) -> Self::El {
        std::array::from_fn(|k| self.field.sub(&x[k], &y[k]))
    }
    fn neg(&self, x: &Self::El) -> Self::El {
        std::array::from_fn(|k| self.field.neg(&x[k]))
    }
    fn mul(&self, x: &Self::El, y: &Self::El) -> Self::El {
        let f = &self.field;
        let mut lo: [F::El; 5] = std::array::from_fn(|_| f.zero());
        let mut hi: [F::El; 4] = std::array::from_fn(|_| f.zero());
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let t = f.mul(xi, yj);
                if i + j < 5 {
                    lo[i + j] = f.add(&lo[i + j], &t);
                } else {
                    hi[i + j - 5] = f.add(&hi[i + j - 5], &t);
                }
            }
        }
        for (k, h) in hi.iter().enumerate() {
            if !f.is_zero(h) {
                lo[k] = f.add(&lo[k], &f.mul(h, &self.b));
            }
        }
        lo
    }
    fn is_zero(&self, x: &Self::El) -> bool {
        x.iter().all(|c| self.field.is_zero(c))
    }
}

/// Monic degree-5 characteristic polynomial X⁵ + c₁X⁴ + … + c₅.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly<E> {
    coeffs: [E; 5],
}

impl<E: Clone> CharPoly<E> {
    pub fn new(coeffs: [E; 5]) -> Self {
        CharPoly { coeffs }
    }

    /// cᵢ for i in 1..=5.
    pub fn c(&self, i: usize) -> &E {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[E; 5] {
        &self.coeffs
    }

    /// As a univariate polynomial, lowest degree first.
    pub fn to_unipoly<R: Ring<El = E>>(&self, ring: &R) -> UniPoly<E> {
        let mut v: Vec<E> = self.coeffs.iter().rev().cloned().collect();
        v.push(ring.one());
        UniPoly::new(ring, v)
    }
}

impl<F: Field> SymbolAlgebra<F> {
    pub fn rep_ring(&self) -> SubfieldRing<F> {
        SubfieldRing::new(self.field.clone(), self.b().clone())
    }

    pub fn regular_rep(&self, u: &AlgebraElement<F::El>) -> LMatrix<F::El> {
        self.regular_rep_with(u, super::sigma_exponent())
    }

    /// Σᵢ Xⁱ·Diag(σᶜ(nᵢ)) for u = Σᵢ xⁱnᵢ, σ(Y) = ρˢY.
    pub(super) fn regular_rep_with(&self, u: &AlgebraElement<F::El>, s: u32) -> LMatrix<F::El> {
        let f = &self.field;
        let l = self.rep_ring();
        let mut m = l.mat_zero();
        for i in 0..5 {
            if u.c[i].iter().all(|c| f.is_zero(c)) {
                continue;
            }
            for col in 0..5 {
                let row = (col + i) % 5;
                let mut entry: [F::El; 5] = std::array::from_fn(|j| {
                    f.mul(&u.c[i][j], self.rho_pow((s as usize * col * j) as i64))
                });
                if col + i >= 5 {
                    entry = std::array::from_fn(|j| f.mul(&entry[j], self.a()));
                }
                m[row][col] = l.add(&m[row][col], &entry);
            }
        }
        m
    }

    /// Faddeev–LeVerrier over L, returning c₁..c₅ as elements of L without
    /// checking that they lie in K.
    pub fn charpoly_lifted(&self, u: &AlgebraElement<F::El>) -> Result<[[F::El; 5]; 5], NonInvertible> {
        let f = &self.field;
        let l = self.rep_ring();
        let a = self.regular_rep(u);
        let mut c: Vec<[F::El; 5]> = Vec::with_capacity(5);
        let mut am = l.mat_zero(); // A·M_{k-1}
        let mut prev = l.one(); // c_{k-1}
        for k in 1..=5 {
            let m = l.mat_add(&am, &l.mat_scalar(&prev));
            am = l.mat_mul(&a, &m);
            let kinv = f.inv(&f.from_int(k))?;
            let tr = l.mat_trace(&am);
            let ck: [F::El; 5] = std::array::from_fn(|j| f.neg(&f.mul(&tr[j], &kinv)));
            prev = ck.clone();
            c.push(ck);
        }
        Ok(super::to_array(c))
    }

    /// Reduced characteristic polynomial; every coefficient is checked to lie
    /// in K.
    pub fn charpoly(&self, u: &AlgebraElement<F::El>) -> Result<CharPoly<F::El>, Error> {
        let lifted = self.charpoly_lifted(u)?;
        let l = self.rep_ring();
        let mut out = Vec::with_capacity(5);
        for (i, ci) in lifted.iter().enumerate() {
            out.push(l.in_base(ci, i + 1)?);
        }
        Ok(CharPoly::new(super::to_array(out)))
    }

    /// Reduced trace, −c₁.
    pub fn trace(&self, u: &AlgebraElement<F::El>) -> Result<F::El, Error> {
        Ok(self.field.neg(self.charpoly(u)?.c(1)))
    }

    /// Reduced norm, −c₅ (degree 5 is odd).
    pub fn norm(&self, u: &AlgebraElement<F::El>) -> Result<F::El, Error> {
        Ok(self.field.neg(self.charpoly(u)?.c(5)))
    }

    /// Trace of the representing matrix, checked to lie in K.
    pub fn matrix_trace(&self, u: &AlgebraElement<F::El>) -> Result<F::El, Error> {
        let l = self.rep_ring();
        l.in_base(&l.mat_trace(&self.regular_rep(u)), 1)
    }

    /// P(u) evaluated in D by Horner's rule; zero by Cayley–Hamilton.
    pub fn charpoly_at(&self, p: &CharPoly<F::El>, u: &AlgebraElement<F::El>) -> AlgebraElement<F::El> {
        p.coeffs.iter().fold(self.one(), |acc, c| {
            self.add(&self.mul(&acc, u), &self.scalar(c.clone()))
        })
    }

    /// u⁻¹ = −c₅⁻¹(u⁴ + c₁u³ + c₂u² + c₃u + c₄), from Cayley–Hamilton.
    pub fn inverse(&self, u: &AlgebraElement<F::El>) -> Result<AlgebraElement<F::El>, Error> {
        let p = self.charpoly(u)?;
        self.inverse_with(&p, u)
    }

    pub fn inverse_with(&self, p: &CharPoly<F::El>, u: &AlgebraElement<F::El>) -> Result<AlgebraElement<F::El>, Error> {
        let f = &self.field;
        let scale = f.neg(&f.inv(p.c(5))?);
        let q = p.coeffs[..4].iter().fold(self.one(), |acc, c| {
            self.add(&self.mul(&acc, u), &self.scalar(c.clone()))
        });
        Ok(self.scale(&scale, &q))
    }

    /// Newton's identities between the power traces pₖ = tr(uᵏ) and the
    /// coefficients: pₖ + c₁pₖ₋₁ + … + cₖ₋₁p₁ + k·cₖ = 0 for k = 1..5.
    pub fn newton_check(&self, u: &AlgebraElement<F::El>) -> Result<bool, Error> {
        let f = &self.field;
        let c = self.charpoly(u)?;
        let mut p = Vec::with_capacity(5);
        let mut pow = self.one();
        for _ in 0..5 {
            pow = self.mul(&pow, u);
            p.push(self.matrix_trace(&pow)?);
        }
        for k in 1..=5 {
            let mut s = p[k - 1].clone();
            for i in 1..k {
                s = f.add(&s, &f.mul(c.c(i), &p[k - i - 1]));
            }
            s = f.add(&s, &f.mul(&f.from_int(k as i64), c.c(k)));
            if !f.is_zero(&s) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks P_{t⁻¹}(X) = −N(t)⁻¹·X⁵·P_t(X⁻¹), with t⁻¹ from Cayley–Hamilton.
    pub fn reciprocal_charpoly_check(&self, t: &AlgebraElement<F::El>) -> Result<bool, Error> {
        let f = &self.field;
        let p = self.charpoly(t)?;
        let n = f.neg(p.c(5));
        let t_inv = self.inverse_with(&p, t)?;
        if !self.equal(&self.mul(t, &t_inv), &self.one()) {
            return Ok(false);
        }
        let p_inv = self.charpoly(&t_inv)?;
        // X⁵·P_t(1/X) has coefficients of P_t reversed
        let mut rev: Vec<F::El> = p.to_unipoly(f).coeffs().to_vec();
        rev.reverse();
        let scale = f.neg(&f.inv(&n)?);
        let rhs = UniPoly::new(f, rev).scale(f, &scale);
        Ok(p_inv.to_unipoly(f).equal(f, &rhs))
    }
}
