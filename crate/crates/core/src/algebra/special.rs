//! Distinguished elements: x + x⁻¹, its inverse, the c₃ closed form and the
//! normalization u ↦ u³τ(u)⁻³.

use super::{AlgebraElement, SymbolAlgebra};
use crate::error::{Error, NonInvertible};
use crate::expr::pit::{expr_equal, EqualityMode};
use crate::expr::{Expr, ExprRing};
use crate::fields::Field;

/// x + x⁻¹.
pub fn xpx<F: Field>(alg: &SymbolAlgebra<F>) -> Result<AlgebraElement<F::El>, NonInvertible> {
    Ok(alg.add(&alg.x(), &alg.x_inv()?))
}

/// (a + a⁻¹)⁻¹.
fn inv_a_plus_inv_a<F: Field>(alg: &SymbolAlgebra<F>) -> Result<F::El, NonInvertible> {
    let f = alg.field();
    let a_inv = f.inv(alg.a())?;
    f.inv(&f.add(alg.a(), &a_inv))
}

/// (x + x⁻¹)⁻¹ = (a + a⁻¹)⁻¹(1 + a⁻¹x − x² − a⁻¹x³ + x⁴).
pub fn xpx_inverse<F: Field>(alg: &SymbolAlgebra<F>) -> Result<AlgebraElement<F::El>, NonInvertible> {
    let f = alg.field();
    let s = inv_a_plus_inv_a(alg)?;
    let a_inv = f.inv(alg.a())?;
    let terms = [f.one(), a_inv.clone(), f.neg(&f.one()), f.neg(&a_inv), f.one()];
    let mut u = alg.zero();
    for (i, c) in terms.into_iter().enumerate() {
        u.c[i][0] = f.mul(&s, &c);
    }
    Ok(u)
}

/// ((x + x⁻¹)⁴ − 5(x + x⁻¹)² + 5)(a + a⁻¹)⁻¹, from λ⁵ − 5λ³ + 5λ = a + a⁻¹.
pub fn xpx_inverse_via_minpoly<F: Field>(alg: &SymbolAlgebra<F>) -> Result<AlgebraElement<F::El>, NonInvertible> {
    let f = alg.field();
    let l = xpx(alg)?;
    let l2 = alg.mul(&l, &l);
    let l4 = alg.mul(&l2, &l2);
    let poly = alg.add(&alg.sub(&l4, &alg.scale(&f.from_int(5), &l2)), &alg.scalar(f.from_int(5)));
    Ok(alg.scale(&inv_a_plus_inv_a(alg)?, &poly))
}

/// (a + a⁻¹)⁻¹ Σᵢ σⁱ(m·σ(m)·σ²(m)) for m ∈ K[y]; equals c₃ of
/// charpoly((x + x⁻¹)⁻¹m).
pub fn c3_closed_form<F: Field>(alg: &SymbolAlgebra<F>, m: &AlgebraElement<F::El>) -> Result<F::El, Error> {
    let prod = alg.mul(&alg.mul(m, &alg.sigma(m, 1)?), &alg.sigma(m, 2)?);
    let mut orbit = alg.zero();
    for i in 0..5 {
        orbit = alg.add(&orbit, &alg.sigma(&prod, i)?);
    }
    debug_assert!(!alg.field().decides_zero() || alg.is_scalar(&orbit), "σ-orbit sums are σ-invariant");
    Ok(alg.field().mul(&inv_a_plus_inv_a(alg)?, orbit.coeff(0, 0)))
}

/// u′ = u³·τ(u)⁻³, given u and τ(u) as values at the same point.
///
/// Requires conjugation by u to act on K[y] as σ and conjugation by τ(u) as
/// σ⁻¹; then u′ acts as u does. If also τ²(u) = u then τ(u′) = u′⁻¹ (τ has
/// order 4 on D, so this is a real restriction).
pub fn normalize_beta<F: Field>(
    alg: &SymbolAlgebra<F>,
    u: &AlgebraElement<F::El>,
    tau_u: &AlgebraElement<F::El>,
) -> Result<AlgebraElement<F::El>, Error> {
    let u_inv = alg.inverse(u)?;
    let tau_u_inv = alg.inverse(tau_u)?;
    let y = alg.y();
    let acts_as = |v: &AlgebraElement<F::El>, v_inv: &AlgebraElement<F::El>, k: i64| -> Result<bool, Error> {
        Ok(alg.equal(&alg.mul(&alg.mul(v_inv, &y), v), &alg.sigma(&y, k)?))
    };
    let checkable = alg.field().decides_zero();
    if checkable && (!acts_as(u, &u_inv, 1)? || !acts_as(tau_u, &tau_u_inv, -1)?) {
        return Err(Error::PreconditionViolated(
            "conjugation does not act on K[y] as σ^±1".into(),
        ));
    }
    Ok(alg.mul(&alg.pow(u, 3), &alg.pow(&tau_u_inv, 3)))
}

/// Every coefficient of τ(u) − u vanishes.
pub fn is_tau_fixed(alg: &SymbolAlgebra<ExprRing>, u: &AlgebraElement<Expr>, mode: EqualityMode) -> Result<bool, Error> {
    let tu = alg.tau(u);
    for (row, trow) in u.c.iter().zip(tu.c.iter()) {
        for (c, tc) in row.iter().zip(trow.iter()) {
            if c.is_literal_zero() && tc.is_literal_zero() {
                continue;
            }
            if !expr_equal(c, tc, mode)?.equal {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Scalar and τ-fixed. Scalarity is read syntactically.
pub fn is_in_f(alg: &SymbolAlgebra<ExprRing>, u: &AlgebraElement<Expr>, mode: EqualityMode) -> Result<bool, Error> {
    Ok(alg.is_scalar(u) && is_tau_fixed(alg, u, mode)?)
}
