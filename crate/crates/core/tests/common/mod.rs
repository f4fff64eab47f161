//! Planted cubic-descent instances: the generator is the oracle.
//!
//! g(Z) = c·m_t(Z)·(Z − w) is homogenized to a binary cubic G(x, y) with
//! G(Z, 1) = g(Z), then pulled back along a random invertible A. On the
//! pulled-back form the line A⁻¹(0, 1) + A⁻¹(1, 0)Z restricts to g again, so
//! the descended zero must be A⁻¹(w, 1).

#![allow(dead_code)]

use qsym_core::descent::{CubicForm, QuadraticCertificate};
use qsym_core::fields::{Field, UniPoly};

pub struct Planted<E> {
    pub form: CubicForm<E>,
    pub cert: QuadraticCertificate<E>,
    pub expected: Vec<E>,
    /// g is divisible by m_t but not by this one.
    pub wrong_m_t: Option<UniPoly<E>>,
}

/// Binary forms of degree d as coefficient vectors of x^i y^(d−i).
fn binary_mul<F: Field>(f: &F, p: &[F::El], q: &[F::El]) -> Vec<F::El> {
    let mut out = vec![f.zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(a, b));
        }
    }
    out
}

/// `degenerate` plants G(β) = 0 by dropping the linear factor.
pub fn planted<F: Field>(f: &F, draw: &mut dyn FnMut() -> F::El, degenerate: bool) -> Planted<F::El> {
    let m_t = UniPoly::new(f, vec![draw(), draw(), f.one()]);
    let c = loop {
        let c = draw();
        if !f.is_zero(&c) {
            break c;
        }
    };
    let w = draw();
    let mut g = m_t.scale(f, &c);
    if !degenerate {
        g = g.mul(f, &UniPoly::linear_root(f, &w));
    }
    let (a11, a12, a21, a22) = loop {
        let m = (draw(), draw(), draw(), draw());
        let det = f.sub(&f.mul(&m.0, &m.3), &f.mul(&m.1, &m.2));
        if !f.is_zero(&det) {
            break m;
        }
    };
    // G(x, y) = Σ g_k x^k y^(3−k) with x = a11 v1 + a12 v2, y = a21 v1 + a22 v2
    let x = [a12.clone(), a11.clone()];
    let y = [a22.clone(), a21.clone()];
    let mut pulled = vec![f.zero(); 4];
    for k in 0..=3 {
        let gk = g.coeff(f, k);
        if f.is_zero(&gk) {
            continue;
        }
        let mut term = vec![gk];
        for _ in 0..k {
            term = binary_mul(f, &term, &x);
        }
        for _ in k..3 {
            term = binary_mul(f, &term, &y);
        }
        for (i, t) in term.into_iter().enumerate() {
            pulled[i] = f.add(&pulled[i], &t);
        }
    }
    let terms = pulled
        .into_iter()
        .enumerate()
        .map(|(i, c)| (vec![i as u32, 3 - i as u32], c));
    let form = CubicForm::new(f, 2, terms).expect("binary cubic");

    let det = f.sub(&f.mul(&a11, &a22), &f.mul(&a12, &a21));
    let di = f.inv(&det).expect("invertible");
    let apply_inv = |u: &F::El, v: &F::El| -> Vec<F::El> {
        vec![
            f.mul(&di, &f.sub(&f.mul(&a22, u), &f.mul(&a12, v))),
            f.mul(&di, &f.sub(&f.mul(&a11, v), &f.mul(&a21, u))),
        ]
    };
    let alpha = apply_inv(&f.zero(), &f.one());
    let beta = apply_inv(&f.one(), &f.zero());
    let expected = if degenerate { beta.clone() } else { apply_inv(&w, &f.one()) };

    let shifted = m_t.add(f, &UniPoly::constant(f, f.one()));
    let (_, r) = g.divrem(f, &shifted).expect("monic divisor");
    Planted {
        form,
        cert: QuadraticCertificate { alpha, beta, m_t },
        expected,
        wrong_m_t: (!r.is_zero()).then_some(shifted),
    }
}
