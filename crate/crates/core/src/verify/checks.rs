//! Check bodies.
//!
//! Every randomized check is one generic function producing a list of
//! [`Item`]s. Over F_p the items are tested; over [`DegreeRing`] the same
//! function yields the degree of each identity for the Schwartz–Zippel bound.
//!
//! [`DegreeRing`]: crate::fields::DegreeRing

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    c3_closed_form, normalize_beta, xpx, xpx_inverse, xpx_inverse_via_minpoly, AlgebraElement, SymbolAlgebra,
};
use crate::construction::{compute_alpha_beta, line_anchors, line_cubic, trace_form, witness_terms};
use crate::descent::third_root;
use crate::error::Error;
use crate::expr::{symbolic_evaluator, tau_power_order, Evaluator, Expr, ExprRing};
use crate::fields::{Cyclotomic5, Cyclotomic5Field, Field, Ring};

/// Outcome of a deterministic check.
#[derive(Debug, Clone)]
pub struct ExactOutcome {
    pub pass: bool,
    pub details: Vec<String>,
}

fn outcome(items: Vec<(String, bool)>) -> ExactOutcome {
    ExactOutcome {
        pass: items.iter().all(|(_, ok)| *ok),
        details: items
            .into_iter()
            .map(|(label, ok)| format!("{}: {label}", if ok { "ok" } else { "FAILED" }))
            .collect(),
    }
}

pub fn tau_order() -> Result<ExactOutcome, Error> {
    let order = tau_power_order(12);
    let g = SymbolAlgebra::generic();
    let s = SymbolAlgebra::symbolic();
    let mut ev = symbolic_evaluator();
    let mut fixes = |k: usize, u: &AlgebraElement<Expr>| -> Result<bool, Error> {
        let lhs = SymbolAlgebra::<ExprRing>::eval(&mut ev, &g.tau_pow(u, k))?;
        let rhs = SymbolAlgebra::<ExprRing>::eval(&mut ev, u)?;
        Ok(s.equal(&lhs, &rhs))
    };
    let xy = g.add(&g.x(), &g.y());
    let on_d = fixes(4, &xy)?;
    let not_two = !fixes(2, &xy)?;
    Ok(outcome(vec![
        (format!("order of tau on generators = {}", order.map_or("none".into(), |k| k.to_string())), order == Some(4)),
        ("tau^4 fixes x + y".into(), on_d),
        ("tau^2 moves x + y".into(), not_two),
    ]))
}

pub fn tau_squared() -> Result<ExactOutcome, Error> {
    let g = SymbolAlgebra::generic();
    let s = SymbolAlgebra::symbolic();
    let mut ev = symbolic_evaluator();
    let t2y = SymbolAlgebra::<ExprRing>::eval(&mut ev, &g.tau_pow(&g.y(), 2))?;
    let eq = |e: Expr, f: Expr| crate::expr::symbolic_equal(&e, &f);
    Ok(outcome(vec![
        ("tau^2(y) = y^-1".into(), s.equal(&t2y, &s.y_inv()?)),
        ("tau^2(eta) = eta^-1".into(), eq(Expr::eta().tau_pow(2), Expr::eta().inv())),
        ("tau^2(b) = b^-1".into(), eq(Expr::b().tau_pow(2), Expr::b().inv())),
    ]))
}

pub fn minpoly_xpx() -> Result<ExactOutcome, Error> {
    let alg = SymbolAlgebra::symbolic();
    let f = alg.field();
    let l = alg.rep_ring();
    let m = alg.regular_rep(&xpx(&alg)?);
    let m2 = l.mat_mul(&m, &m);
    let m3 = l.mat_mul(&m2, &m);
    let m5 = l.mat_mul(&m3, &m2);
    let a = alg.a().clone();
    let a_plus = f.add(&a, &f.inv(&a)?);
    let five = l.from_int(5);
    let value = [
        m5,
        l.mat_scale(&l.neg(&five), &m3),
        l.mat_scale(&five, &m),
        l.mat_scalar(&l.embed(f.neg(&a_plus))),
    ]
    .iter()
    .fold(l.mat_zero(), |acc, t| l.mat_add(&acc, t));
    let p = alg.charpoly(&xpx(&alg)?)?;
    let expected = [f.zero(), f.from_int(-5), f.zero(), f.from_int(5), f.neg(&a_plus)];
    let charpoly_ok = p.coeffs().iter().zip(&expected).all(|(c, e)| f.equal(c, e));
    Ok(outcome(vec![
        ("lambda^5 - 5 lambda^3 + 5 lambda - (a + a^-1) annihilates rep(x + x^-1)".into(), l.mat_is_zero(&value)),
        ("charpoly(x + x^-1) = lambda^5 - 5 lambda^3 + 5 lambda - (a + a^-1)".into(), charpoly_ok),
    ]))
}

pub fn xpx_inverse_check() -> Result<ExactOutcome, Error> {
    let alg = SymbolAlgebra::symbolic();
    let inv = xpx_inverse(&alg)?;
    let l = xpx(&alg)?;
    Ok(outcome(vec![
        ("(x + x^-1) * xpx_inverse = 1".into(), alg.equal(&alg.mul(&l, &inv), &alg.one())),
        ("xpx_inverse * (x + x^-1) = 1".into(), alg.equal(&alg.mul(&inv, &l), &alg.one())),
        ("closed form = minimal-polynomial form".into(), alg.equal(&inv, &xpx_inverse_via_minpoly(&alg)?)),
    ]))
}

pub fn line_invariants() -> Result<ExactOutcome, Error> {
    let s = SymbolAlgebra::symbolic();
    let line = compute_alpha_beta(&s)?;
    let (z1, z2) = line_anchors(&s)?;
    let g = SymbolAlgebra::generic();
    let gl = compute_alpha_beta(&g)?;
    let mut ev = symbolic_evaluator();
    let mut fixed = |u: &AlgebraElement<Expr>| -> Result<bool, Error> {
        let lhs = SymbolAlgebra::<ExprRing>::eval(&mut ev, &g.tau(u))?;
        let rhs = SymbolAlgebra::<ExprRing>::eval(&mut ev, u)?;
        Ok(s.equal(&lhs, &rhs))
    };
    let alpha_fixed = fixed(&gl.alpha)?;
    let beta_fixed = fixed(&gl.beta)?;
    Ok(outcome(vec![
        ("alpha + beta t1 = y + y^-1".into(), s.equal(&line.point(&s, &line.t1), &z1)),
        ("alpha + beta t2 = eta y^-2 + eta^-1 y^2".into(), s.equal(&line.point(&s, &line.t2), &z2)),
        ("tau(alpha) = alpha".into(), alpha_fixed),
        ("tau(beta) = beta".into(), beta_fixed),
    ]))
}

pub fn cyclotomic_relations() -> Result<ExactOutcome, Error> {
    let f = Cyclotomic5Field;
    let t1 = f.add(&Cyclotomic5::rho_pow(1), &Cyclotomic5::rho_pow(4));
    let t2 = f.add(&Cyclotomic5::rho_pow(2), &Cyclotomic5::rho_pow(3));
    let d = f.sub(&t1, &t2);
    Ok(outcome(vec![
        ("t1 + t2 = -1".into(), f.equal(&f.add(&t1, &t2), &f.from_int(-1))),
        ("t1 t2 = -1".into(), f.equal(&f.mul(&t1, &t2), &f.from_int(-1))),
        ("(t1 - t2)^2 = 5".into(), f.equal(&f.mul(&d, &d), &f.from_int(5))),
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Zero,
    /// At least one value is nonzero.
    SomeNonZero,
}

#[derive(Debug, Clone)]
pub struct Item<E> {
    pub label: &'static str,
    pub index: usize,
    pub expect: Expect,
    pub values: Vec<E>,
}

/// Per-trial context. `sample` draws a generic scalar: a uniform element of
/// F_p, or a fresh variable when propagating degrees.
pub struct Ctx<'a, F: Field> {
    pub alg: SymbolAlgebra<F>,
    pub ev: Evaluator<F>,
    pub rng: &'a mut ChaCha8Rng,
    pub sample: &'a mut dyn FnMut(&mut ChaCha8Rng) -> F::El,
    /// Multiplier on the per-trial sample counts (1 when propagating degrees).
    pub full: bool,
    items: Vec<Item<F::El>>,
}

impl<'a, F: Field> Ctx<'a, F> {
    pub fn new(
        alg: SymbolAlgebra<F>,
        ev: Evaluator<F>,
        rng: &'a mut ChaCha8Rng,
        sample: &'a mut dyn FnMut(&mut ChaCha8Rng) -> F::El,
        full: bool,
    ) -> Self {
        Ctx {
            alg,
            ev,
            rng,
            sample,
            full,
            items: Vec::new(),
        }
    }

    pub fn into_items(self) -> Vec<Item<F::El>> {
        self.items
    }

    fn count(&self, n: usize) -> usize {
        if self.full {
            n
        } else {
            1
        }
    }

    fn scalar(&mut self) -> F::El {
        (self.sample)(self.rng)
    }

    fn subfield_element(&mut self) -> AlgebraElement<F::El> {
        let m = std::array::from_fn(|_| (self.sample)(self.rng));
        self.alg.subfield(m)
    }

    fn element(&mut self) -> AlgebraElement<F::El> {
        AlgebraElement::from_coeffs(std::array::from_fn(|_| std::array::from_fn(|_| (self.sample)(self.rng))))
    }

    fn zero(&mut self, label: &'static str, index: usize, values: Vec<F::El>) {
        self.items.push(Item {
            label,
            index,
            expect: Expect::Zero,
            values,
        });
    }

    fn zero_element(&mut self, label: &'static str, index: usize, u: &AlgebraElement<F::El>, v: &AlgebraElement<F::El>) {
        let d = self.alg.sub(u, v);
        self.zero(label, index, d.coeffs().iter().flatten().cloned().collect());
    }

    fn eval(&mut self, u: &AlgebraElement<Expr>) -> Result<AlgebraElement<F::El>, Error> {
        Ok(SymbolAlgebra::<ExprRing>::eval(&mut self.ev, u)?)
    }

    /// Σ_j c_j yʲ with each c_j a small random integer combination of
    /// 1, ρ, a, b, η; gives τ something to act on.
    fn expr_subfield_element(&mut self) -> AlgebraElement<Expr> {
        let gens = [Expr::constant(1), Expr::rho(), Expr::a(), Expr::b(), Expr::eta()];
        let coeffs = std::array::from_fn(|_| {
            gens.iter().fold(Expr::constant(0), |acc, g| {
                let k: i64 = self.rng.gen_range(-9..=9);
                acc.add(&g.mul(&Expr::constant(k)))
            })
        });
        SymbolAlgebra::generic().subfield(coeffs)
    }
}

/// tr(xⁱe) = 0, i = 1..4.
pub fn trace_vanishing<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    for s in 0..cx.count(100) {
        let e = cx.subfield_element();
        for i in 1..5 {
            let t = cx.alg.mul(&cx.alg.pow(&cx.alg.x(), i), &e);
            let tr = cx.alg.trace(&t)?;
            cx.zero("tr(x^i e)", s, vec![tr]);
        }
    }
    Ok(())
}

/// c₁ = c₃ = 0 for (x + x⁻¹)e.
pub fn odd_coefficients<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let l = xpx(&cx.alg)?;
    for s in 0..cx.count(100) {
        let e = cx.subfield_element();
        let p = cx.alg.charpoly(&cx.alg.mul(&l, &e))?;
        cx.zero("c1, c3 of (x + x^-1) e", s, vec![p.c(1).clone(), p.c(3).clone()]);
    }
    Ok(())
}

/// c₂ = c₄ = 0 for e(x + x⁻¹)⁻¹: random e, τ-fixed e, and points of L.
pub fn even_coefficients<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let inv = xpx_inverse(&cx.alg)?;
    let check = |cx: &mut Ctx<F>, label, s, e: &AlgebraElement<F::El>| -> Result<(), Error> {
        let p = cx.alg.charpoly(&cx.alg.mul(e, &inv))?;
        cx.zero(label, s, vec![p.c(2).clone(), p.c(4).clone()]);
        Ok(())
    };
    for s in 0..cx.count(100) {
        let e = cx.subfield_element();
        check(cx, "c2, c4 of e (x + x^-1)^-1", s, &e)?;
    }
    let g = SymbolAlgebra::generic();
    for s in 0..cx.count(10) {
        let e = cx.expr_subfield_element();
        let orbit = (1..4).fold(e.clone(), |acc, k| g.add(&acc, &g.tau_pow(&e, k)));
        let v = cx.eval(&orbit)?;
        check(cx, "c2, c4 for tau-fixed e", s, &v)?;
    }
    let line = compute_alpha_beta(&cx.alg)?;
    for s in 0..cx.count(10) {
        let z = cx.scalar();
        let v = line.point(&cx.alg, &z);
        check(cx, "c2, c4 on the line L", s, &v)?;
    }
    Ok(())
}

pub fn reciprocal_charpoly<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let f = cx.alg.field().clone();
    for s in 0..cx.count(50) {
        let t = cx.element();
        let p = cx.alg.charpoly(&t)?;
        let t_inv = cx.alg.inverse_with(&p, &t)?;
        cx.zero_element("t * t^-1 = 1", s, &cx.alg.mul(&t, &t_inv), &cx.alg.one());
        let q = cx.alg.charpoly(&t_inv)?;
        // P_{t⁻¹}(X) = −N⁻¹ X⁵ P_t(1/X), N = −c₅
        let scale = f.inv(p.c(5))?;
        let mut diffs = Vec::with_capacity(5);
        for i in 1..=5 {
            let rhs = if i == 5 { scale.clone() } else { f.mul(&scale, p.c(5 - i)) };
            diffs.push(f.sub(q.c(i), &rhs));
        }
        cx.zero("P_{t^-1} = -N^-1 X^5 P_t(1/X)", s, diffs);
    }
    Ok(())
}

pub fn c3_closed_form_check<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let inv = xpx_inverse(&cx.alg)?;
    let f = cx.alg.field().clone();
    for s in 0..cx.count(200) {
        let m = cx.subfield_element();
        let p = cx.alg.charpoly(&cx.alg.mul(&inv, &m))?;
        let closed = c3_closed_form(&cx.alg, &m)?;
        cx.zero("c3 closed form", s, vec![f.sub(&closed, p.c(3))]);
    }
    Ok(())
}

pub fn newton<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let f = cx.alg.field().clone();
    for s in 0..cx.count(50) {
        let u = cx.element();
        let c = cx.alg.charpoly(&u)?;
        let mut p = Vec::with_capacity(5);
        let mut pow = cx.alg.one();
        for _ in 0..5 {
            pow = cx.alg.mul(&pow, &u);
            p.push(cx.alg.matrix_trace(&pow)?);
        }
        let mut residues = Vec::with_capacity(5);
        for k in 1..=5 {
            let mut r = p[k - 1].clone();
            for i in 1..k {
                r = f.add(&r, &f.mul(c.c(i), &p[k - i - 1]));
            }
            residues.push(f.add(&r, &f.mul(&f.from_int(k as i64), c.c(k))));
        }
        cx.zero("Newton identities", s, residues);
    }
    Ok(())
}

/// τστ⁻¹ = σ⁻¹ on K[y], with τ⁻¹ = τ³.
pub fn dihedral_identity<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let g = SymbolAlgebra::generic();
    let mut cases: Vec<AlgebraElement<Expr>> = (0..5).map(|j| g.pow(&g.y(), j)).collect();
    for _ in 0..cx.count(5) {
        cases.push(cx.expr_subfield_element());
    }
    for (s, m) in cases.iter().enumerate() {
        let lhs = g.tau(&g.sigma(&g.tau_pow(m, 3), 1)?);
        let rhs = g.sigma(m, -1)?;
        let (l, r) = (cx.eval(&lhs)?, cx.eval(&rhs)?);
        cx.zero_element("tau sigma tau^-1 = sigma^-1", s, &l, &r);
    }
    Ok(())
}

/// u′ = u³τ(u)⁻³ for u = x and for u = m·x with τ²(m) = m.
pub fn normalize_beta_check<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let g = SymbolAlgebra::generic();
    let mut cases = vec![g.x()];
    for _ in 0..cx.count(20) {
        let n = cx.expr_subfield_element();
        let m = g.mul(&n, &g.tau_pow(&n, 2));
        cases.push(g.mul(&m, &g.x()));
    }
    for (s, u) in cases.iter().enumerate() {
        let tu = g.tau(u);
        let t2u = g.tau(&tu);
        let (u, tu, t2u) = (cx.eval(u)?, cx.eval(&tu)?, cx.eval(&t2u)?);
        let alg = &cx.alg;
        let u1 = normalize_beta(alg, &u, &tu)?;
        // τ(u′) = τ(u)³τ²(u)⁻³ by semilinearity
        let tu1 = alg.mul(&alg.pow(&tu, 3), &alg.pow(&alg.inverse(&t2u)?, 3));
        let u1_inv = alg.inverse(&u1)?;
        let y = alg.y();
        let conj = alg.mul(&alg.mul(&u1_inv, &y), &u1);
        let (prod, one, sy) = (alg.mul(&tu1, &u1), alg.one(), alg.sigma(&y, 1)?);
        let ax = (s == 0).then(|| alg.scale(alg.a(), &alg.x()));
        cx.zero_element("tau(u') u' = 1", s, &prod, &one);
        cx.zero_element("u' acts on K[y] as sigma", s, &conj, &sy);
        if let Some(ax) = ax {
            cx.zero_element("x' = a x", s, &u1, &ax);
        }
    }
    Ok(())
}

/// The headline: charpoly(w) = λ⁵ − w⁵ with w⁵ ∈ F, w ∈ D^τ non-scalar.
pub fn witness<F: Field>(cx: &mut Ctx<F>) -> Result<(), Error> {
    let terms = witness_terms();
    let f = cx.alg.field().clone();
    let w = cx.eval(&terms.w)?;
    let p = cx.alg.charpoly(&w)?;
    cx.zero("c1..c4 of charpoly(w)", 0, p.coeffs()[..4].to_vec());

    let fifth = cx.ev.eval(&terms.fifth_power)?;
    let norm = f.neg(p.c(5));
    cx.zero("w^5 = -c5", 0, vec![f.sub(&fifth, &norm)]);
    let w5 = cx.alg.pow(&w, 5);
    let scalar = cx.alg.scalar(norm);
    cx.zero_element("w^5 = -c5 * 1", 0, &w5, &scalar);
    let tau_fifth = cx.ev.eval(&terms.tau_fifth_power)?;
    cx.zero("tau(w^5) = w^5", 0, vec![f.sub(&tau_fifth, &fifth)]);

    let tau_w = cx.eval(&terms.tau_w)?;
    cx.zero_element("tau(w) = w", 0, &tau_w, &w);
    let (t3, tau_t3) = (cx.ev.eval(&terms.t3)?, cx.ev.eval(&terms.tau_t3)?);
    cx.zero("tau(t3) = t3", 0, vec![f.sub(&tau_t3, &t3)]);

    let line = compute_alpha_beta(&cx.alg)?;
    let g = line_cubic(&cx.alg, &line)?;
    let lead = g.coeff(&f, 3);
    let roots = vec![g.eval(&f, &line.t1), g.eval(&f, &line.t2)];
    cx.zero("g(t1) = g(t2) = 0", 0, roots);
    let g_beta = trace_form(&cx.alg, &line.beta)?;
    cx.zero("lead(g) = G(beta)", 0, vec![f.sub(&lead, &g_beta)]);
    let t3_here = third_root(&f, &g, &lead, &f.from_int(-1))?;
    cx.zero("t3 = G(alpha)/G(beta)", 0, vec![f.sub(&t3_here, &t3)]);

    let off_center = w
        .coeffs()
        .iter()
        .flatten()
        .skip(1)
        .cloned()
        .collect();
    cx.items.push(Item {
        label: "w is not scalar",
        index: 0,
        expect: Expect::SomeNonZero,
        values: off_center,
    });
    Ok(())
}
