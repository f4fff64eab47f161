//! The symbol algebra D = (a, b)_K = K⟨x, y | x⁵ = a, y⁵ = b, yxy⁻¹ = ρx⟩.
//!
//! Elements are kept in the normal form Σ c_ij xⁱyʲ, 0 ≤ i, j ≤ 4, and all
//! arithmetic is generic over the coefficient field, so the same code runs on
//! syntactic expressions (to apply τ), on exact rational functions, and on
//! prime-field specializations.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, NonInvertible};
use crate::expr::{Evaluator, Expr, ExprRing, TauRewriter};
use crate::fields::{Field, PrimeField, RatFunc, RatFuncField, Ring};

mod rep;
mod special;

pub use rep::{CharPoly, LMatrix, SubfieldRing};
pub use special::{c3_closed_form, is_in_f, is_tau_fixed, normalize_beta, xpx, xpx_inverse, xpx_inverse_via_minpoly};

/// Σ c[i][j] xⁱyʲ.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<E> {
    c: [[E; 5]; 5],
}

impl<E> AlgebraElement<E> {
    pub fn coeff(&self, i: usize, j: usize) -> &E {
        &self.c[i][j]
    }

    pub fn coeffs(&self) -> &[[E; 5]; 5] {
        &self.c
    }

    pub fn from_coeffs(c: [[E; 5]; 5]) -> Self {
        AlgebraElement { c }
    }

    /// Coefficient-wise map, e.g. evaluation at a specialization.
    pub fn try_map<G, Er>(&self, mut f: impl FnMut(&E) -> Result<G, Er>) -> Result<AlgebraElement<G>, Er> {
        let mut rows = Vec::with_capacity(5);
        for row in &self.c {
            let mut out = Vec::with_capacity(5);
            for x in row {
                out.push(f(x)?);
            }
            rows.push(to_array(out));
        }
        Ok(AlgebraElement { c: to_array(rows) })
    }
}

fn to_array<T>(v: Vec<T>) -> [T; 5] {
    v.try_into().unwrap_or_else(|_| unreachable!("exactly five entries"))
}

impl<E: fmt::Debug> fmt::Debug for AlgebraElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

/// The algebra over a concrete coefficient field, with chosen images of
/// ρ, a, b and η.
#[derive(Debug, Clone)]
pub struct SymbolAlgebra<F: Field> {
    field: F,
    gens: [F::El; 4],
    rho_pows: [F::El; 5],
}

impl SymbolAlgebra<ExprRing> {
    /// The generic algebra with coefficients as expressions in ρ, a, b, η.
    pub fn generic() -> Self {
        Self::new(ExprRing, [Expr::rho(), Expr::a(), Expr::b(), Expr::eta()])
    }

    /// τ extended semilinearly: coefficients by the τ-rewrite,
    /// x ↦ x⁻¹ = a⁻¹x⁴, y ↦ ηy⁻² = ηb⁻¹y³.
    pub fn tau(&self, u: &AlgebraElement<Expr>) -> AlgebraElement<Expr> {
        self.tau_with(&mut TauRewriter::new(), u)
    }

    pub fn tau_with(&self, rw: &mut TauRewriter, u: &AlgebraElement<Expr>) -> AlgebraElement<Expr> {
        let (a, b, eta) = (Expr::a(), Expr::b(), Expr::eta());
        let tx = self.monomial(a.inv(), 4, 0);
        let ty = self.monomial(eta.mul(&b.inv()), 0, 3);
        let mut out = self.zero();
        let mut tx_pow = self.one();
        for i in 0..5 {
            let mut mono = tx_pow.clone();
            for j in 0..5 {
                let c = &u.c[i][j];
                if !c.is_literal_zero() {
                    out = self.add(&out, &self.scale(&rw.apply(c), &mono));
                }
                mono = self.mul(&mono, &ty);
            }
            tx_pow = self.mul(&tx_pow, &tx);
        }
        out
    }

    pub fn tau_pow(&self, u: &AlgebraElement<Expr>, k: usize) -> AlgebraElement<Expr> {
        (0..k).fold(u.clone(), |acc, _| self.tau(&acc))
    }

    /// Evaluates every coefficient with a shared memo table.
    pub fn eval<F: Field>(ev: &mut Evaluator<F>, u: &AlgebraElement<Expr>) -> Result<AlgebraElement<F::El>, NonInvertible> {
        u.try_map(|c| ev.eval(c))
    }
}

impl SymbolAlgebra<RatFuncField> {
    /// The algebra over K = Q(ρ)(a, b, η) itself.
    pub fn symbolic() -> Self {
        let ev = crate::expr::symbolic_evaluator();
        Self::new(RatFuncField, ev.generators().clone())
    }
}

impl SymbolAlgebra<PrimeField> {
    pub fn at(pt: &crate::expr::pit::Specialization) -> Self {
        Self::new(pt.field, pt.values)
    }

    /// Uniform element of D over F_p.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement<u64> {
        AlgebraElement {
            c: std::array::from_fn(|_| std::array::from_fn(|_| self.field.random(rng))),
        }
    }

    /// Uniform element of K[y] over F_p.
    pub fn random_subfield_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement<u64> {
        self.subfield(std::array::from_fn(|_| self.field.random(rng)))
    }
}

impl<F: Field> SymbolAlgebra<F> {
    /// `gens` are the images of ρ, a, b, η.
    pub fn new(field: F, gens: [F::El; 4]) -> Self {
        let rho_pows = std::array::from_fn(|k| field.pow(&gens[0], k as u64));
        SymbolAlgebra {
            field,
            gens,
            rho_pows,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rho(&self) -> &F::El {
        &self.gens[0]
    }
    pub fn a(&self) -> &F::El {
        &self.gens[1]
    }
    pub fn b(&self) -> &F::El {
        &self.gens[2]
    }
    pub fn eta(&self) -> &F::El {
        &self.gens[3]
    }
    pub fn generators(&self) -> &[F::El; 4] {
        &self.gens
    }

    /// ρᵏ for any integer k.
    pub fn rho_pow(&self, k: i64) -> &F::El {
        &self.rho_pows[k.rem_euclid(5) as usize]
    }

    pub fn zero(&self) -> AlgebraElement<F::El> {
        AlgebraElement {
            c: std::array::from_fn(|_| std::array::from_fn(|_| self.field.zero())),
        }
    }

    pub fn one(&self) -> AlgebraElement<F::El> {
        self.scalar(self.field.one())
    }

    pub fn scalar(&self, c: F::El) -> AlgebraElement<F::El> {
        self.monomial(c, 0, 0)
    }

    pub fn monomial(&self, c: F::El, i: usize, j: usize) -> AlgebraElement<F::El> {
        let mut u = self.zero();
        u.c[i][j] = c;
        u
    }

    pub fn x(&self) -> AlgebraElement<F::El> {
        self.monomial(self.field.one(), 1, 0)
    }

    pub fn y(&self) -> AlgebraElement<F::El> {
        self.monomial(self.field.one(), 0, 1)
    }

    /// x⁻¹ = a⁻¹x⁴.
    pub fn x_inv(&self) -> Result<AlgebraElement<F::El>, NonInvertible> {
        Ok(self.monomial(self.field.inv(self.a())?, 4, 0))
    }

    /// y⁻¹ = b⁻¹y⁴.
    pub fn y_inv(&self) -> Result<AlgebraElement<F::El>, NonInvertible> {
        Ok(self.monomial(self.field.inv(self.b())?, 0, 4))
    }

    /// Σ m_j yʲ in the maximal subfield K[y].
    pub fn subfield(&self, m: [F::El; 5]) -> AlgebraElement<F::El> {
        let mut u = self.zero();
        u.c[0] = m;
        u
    }

    pub fn add(&self, u: &AlgebraElement<F::El>, v: &AlgebraElement<F::El>) -> AlgebraElement<F::El> {
        AlgebraElement {
            c: std::array::from_fn(|i| std::array::from_fn(|j| self.field.add(&u.c[i][j], &v.c[i][j]))),
        }
    }

    pub fn sub(&self, u: &AlgebraElement<F::El>, v: &AlgebraElement<F::El>) -> AlgebraElement<F::El> {
        AlgebraElement {
            c: std::array::from_fn(|i| std::array::from_fn(|j| self.field.sub(&u.c[i][j], &v.c[i][j]))),
        }
    }

    pub fn neg(&self, u: &AlgebraElement<F::El>) -> AlgebraElement<F::El> {
        AlgebraElement {
            c: std::array::from_fn(|i| std::array::from_fn(|j| self.field.neg(&u.c[i][j]))),
        }
    }

    /// Left multiplication by a central scalar.
    pub fn scale(&self, k: &F::El, u: &AlgebraElement<F::El>) -> AlgebraElement<F::El> {
        AlgebraElement {
            c: std::array::from_fn(|i| std::array::from_fn(|j| self.field.mul(k, &u.c[i][j]))),
        }
    }

    /// Normal-form product: (xⁱyʲ)(xᵏyˡ) = ρ^{jk} x^{i+k} y^{j+l}, then
    /// x⁵ → a, y⁵ → b.
    pub fn mul(&self, u: &AlgebraElement<F::El>, v: &AlgebraElement<F::El>) -> AlgebraElement<F::El> {
        let f = &self.field;
        // terms[i][j] collects contributions before reduction scalars
        let mut acc: [[Vec<F::El>; 5]; 5] = Default::default();
        for i in 0..5 {
            for j in 0..5 {
                let cu = &u.c[i][j];
                if f.is_zero(cu) {
                    continue;
                }
                for k in 0..5 {
                    for l in 0..5 {
                        let cv = &v.c[k][l];
                        if f.is_zero(cv) {
                            continue;
                        }
                        let mut t = f.mul(cu, cv);
                        let twist = (j * k) % 5;
                        if twist != 0 {
                            t = f.mul(&t, &self.rho_pows[twist]);
                        }
                        if i + k >= 5 {
                            t = f.mul(&t, self.a());
                        }
                        if j + l >= 5 {
                            t = f.mul(&t, self.b());
                        }
                        acc[(i + k) % 5][(j + l) % 5].push(t);
                    }
                }
            }
        }
        AlgebraElement {
            c: acc.map(|row| row.map(|terms| balanced_sum(f, terms))),
        }
    }

    pub fn pow(&self, u: &AlgebraElement<F::El>, k: u32) -> AlgebraElement<F::El> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, u);
        }
        acc
    }

    pub fn is_zero(&self, u: &AlgebraElement<F::El>) -> bool {
        u.c.iter().flatten().all(|c| self.field.is_zero(c))
    }

    pub fn equal(&self, u: &AlgebraElement<F::El>, v: &AlgebraElement<F::El>) -> bool {
        self.is_zero(&self.sub(u, v))
    }

    /// Supported on (i, j) = (0, 0).
    pub fn is_scalar(&self, u: &AlgebraElement<F::El>) -> bool {
        (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(|&ij| ij != (0, 0))
            .all(|(i, j)| self.field.is_zero(&u.c[i][j]))
    }

    /// Supported on x-degree 0.
    pub fn in_subfield(&self, u: &AlgebraElement<F::El>) -> bool {
        u.c[1..].iter().flatten().all(|c| self.field.is_zero(c))
    }

    /// σᵏ on K[y], where σ is conjugation by x in the direction that makes
    /// the regular representation multiplicative: σ(y) = ρ^s y with
    /// s = [`sigma_exponent`].
    pub fn sigma(&self, m: &AlgebraElement<F::El>, k: i64) -> Result<AlgebraElement<F::El>, Error> {
        if !self.in_subfield(m) {
            return Err(Error::NotInSubfield);
        }
        Ok(self.sigma_unchecked(m, k * sigma_exponent() as i64))
    }

    /// y ↦ ρᵗ y, no subfield check.
    fn sigma_unchecked(&self, m: &AlgebraElement<F::El>, t: i64) -> AlgebraElement<F::El> {
        let mut out = m.clone();
        for j in 1..5 {
            out.c[0][j] = self.field.mul(&m.c[0][j], self.rho_pow(t * j as i64));
        }
        out
    }
}

/// Pairwise summation; keeps expression DAGs shallow.
fn balanced_sum<F: Ring>(f: &F, mut terms: Vec<F::El>) -> F::El {
    if terms.is_empty() {
        return f.zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(x) = it.next() {
            match it.next() {
                Some(y) => next.push(f.add(&x, &y)),
                None => next.push(x),
            }
        }
        terms = next;
    }
    terms.pop().expect("one term")
}

/// Exponent s with σ(y) = ρˢy, fixed once per process by checking which
/// choice makes the regular representation multiplicative on x and y over a
/// small prime field. The answer is 1, i.e. σ(m) = x⁻¹mx.
pub fn sigma_exponent() -> u32 {
    static EXPONENT: OnceLock<u32> = OnceLock::new();
    *EXPONENT.get_or_init(|| {
        // F_11 has the primitive fifth root 3.
        let field = PrimeField::new(11).expect("11 is prime");
        let alg = SymbolAlgebra::new(field, [3, 2, 7, 5]);
        let pairs = [(alg.x(), alg.y()), (alg.y(), alg.x()), (alg.x(), alg.x())];
        [1u32, 4]
            .into_iter()
            .find(|&s| {
                pairs.iter().all(|(u, v)| {
                    let lhs = alg.regular_rep_with(&alg.mul(u, v), s);
                    let rhs = alg.rep_ring().mat_mul(&alg.regular_rep_with(u, s), &alg.regular_rep_with(v, s));
                    alg.rep_ring().mat_equal(&lhs, &rhs)
                })
            })
            .expect("one σ convention makes the representation multiplicative")
    })
}

impl SymbolAlgebra<RatFuncField> {
    /// Renders in the CLI grammar.
    pub fn display(u: &AlgebraElement<RatFunc>) -> String {
        display_with(u, |c| c.is_zero(), |c| c.to_string())
    }
}

pub fn display_expr_element(u: &AlgebraElement<Expr>) -> String {
    display_with(u, |c| c.is_literal_zero(), |c| c.to_string())
}

pub fn display_prime_element(u: &AlgebraElement<u64>) -> String {
    display_with(u, |c| *c == 0, |c| c.to_string())
}

/// Parenthesizes unless `s` is already atomic or fully bracketed.
fn wrap_factor(s: String) -> String {
    let atomic = s.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '^');
    let bracketed = s.starts_with('(') && s.ends_with(')') && {
        let mut depth = 0i32;
        s.char_indices().all(|(k, ch)| {
            depth += match ch {
                '(' => 1,
                ')' => -1,
                _ => 0,
            };
            depth > 0 || k == s.len() - 1
        })
    };
    if atomic || bracketed {
        s
    } else {
        format!("({s})")
    }
}

fn display_with<E>(u: &AlgebraElement<E>, is_zero: impl Fn(&E) -> bool, show: impl Fn(&E) -> String) -> String {
    let mut parts = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            let c = &u.c[i][j];
            if is_zero(c) {
                continue;
            }
            let text = show(c);
            let mut factors = Vec::new();
            if text != "1" || (i, j) == (0, 0) {
                factors.push(wrap_factor(text));
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            parts.push(factors.join("*"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests;
