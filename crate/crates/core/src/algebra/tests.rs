use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::expr::pit::Specialization;
use crate::fields::{Ring, UniPoly};

fn point(seed: u64) -> (Specialization, SymbolAlgebra<PrimeField>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = PrimeField::generate(61, &mut rng).unwrap();
    let pt = Specialization::sample(field, &mut rng, 0, 0).unwrap();
    let alg = SymbolAlgebra::at(&pt);
    (pt, alg)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed)
}

/// det(M) over L by the Leibniz expansion.
fn leibniz_det<F: Field>(l: &SubfieldRing<F>, m: &LMatrix<F::El>) -> [F::El; 5] {
    fn perms(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !cur.contains(&i) {
                cur.push(i);
                perms(k, cur, out);
                cur.pop();
            }
        }
    }
    let mut all = Vec::new();
    perms(5, &mut Vec::new(), &mut all);
    let mut det = l.zero();
    for p in all {
        let inversions = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..5).fold(l.one(), |acc, i| l.mul(&acc, &m[i][p[i]]));
        det = if inversions % 2 == 0 { l.add(&det, &term) } else { l.sub(&det, &term) };
    }
    det
}

/// P_u(λ) = det(λI − rep(u)) at several points λ.
fn charpoly_matches_determinant(alg: &SymbolAlgebra<PrimeField>, u: &AlgebraElement<u64>, r: &mut ChaCha8Rng) -> bool {
    let f = alg.field();
    let l = alg.rep_ring();
    let p = alg.charpoly(u).unwrap().to_unipoly(f);
    let rep = alg.regular_rep(u);
    (0..6).all(|_| {
        let lam = f.random(r);
        let shifted = l.mat_add(&l.mat_scalar(&l.embed(lam)), &l.mat_scale(&l.from_int(-1), &rep));
        l.equal(&leibniz_det(&l, &shifted), &l.embed(p.eval(f, &lam)))
    })
}

#[test]
fn defining_relations() {
    let alg = SymbolAlgebra::symbolic();
    let (x, y) = (alg.x(), alg.y());
    let rho = alg.rho().clone();
    assert!(alg.equal(&alg.mul(&y, &x), &alg.scale(&rho, &alg.mul(&x, &y))));
    assert!(alg.equal(&alg.mul(&alg.pow(&x, 2), &alg.pow(&x, 4)), &alg.scale(alg.a(), &x)));
    assert!(alg.equal(&alg.mul(&alg.pow(&y, 3), &alg.pow(&y, 4)), &alg.scale(alg.b(), &alg.pow(&y, 2))));
    assert!(alg.equal(&alg.mul(&x, &alg.x_inv().unwrap()), &alg.one()));
    assert!(alg.equal(&alg.mul(&alg.y_inv().unwrap(), &y), &alg.one()));
}

#[test]
fn sigma_convention() {
    assert_eq!(sigma_exponent(), 1);
    let alg = SymbolAlgebra::symbolic();
    let (x, y) = (alg.x(), alg.y());
    let conj = alg.mul(&alg.mul(&alg.x_inv().unwrap(), &y), &x);
    assert!(alg.equal(&alg.sigma(&y, 1).unwrap(), &conj));
    assert!(alg.equal(&alg.sigma(&y, 5).unwrap(), &y));
    assert!(matches!(alg.sigma(&x, 1), Err(Error::NotInSubfield)));
}

#[test]
fn rep_of_generators() {
    let (_, alg) = point(1);
    let l = alg.rep_ring();
    assert!(l.mat_equal(&alg.regular_rep(&alg.one()), &l.mat_identity()));
    let rx = alg.regular_rep(&alg.x());
    for r in 0..5 {
        for c in 0..5 {
            let expect = match (r, c) {
                (0, 4) => l.embed(*alg.a()),
                _ if r == c + 1 => l.one(),
                _ => l.zero(),
            };
            assert_eq!(rx[r][c], expect, "entry ({r}, {c})");
        }
    }
    let ry = alg.regular_rep(&alg.y());
    for k in 0..5 {
        let mut expect = l.zero();
        expect[1] = *alg.rho_pow(k as i64);
        assert_eq!(ry[k][k], expect);
    }
}

#[test]
fn rep_is_multiplicative() {
    let (_, alg) = point(2);
    let l = alg.rep_ring();
    let mut r = rng(2);
    for _ in 0..50 {
        let u = alg.random_element(&mut r);
        let v = alg.random_element(&mut r);
        let lhs = alg.regular_rep(&alg.mul(&u, &v));
        let rhs = l.mat_mul(&alg.regular_rep(&u), &alg.regular_rep(&v));
        assert!(l.mat_equal(&lhs, &rhs));
        let sum = alg.regular_rep(&alg.add(&u, &v));
        assert!(l.mat_equal(&sum, &l.mat_add(&alg.regular_rep(&u), &alg.regular_rep(&v))));
    }
}

#[test]
fn charpoly_of_x_against_determinant() {
    let (_, alg) = point(3);
    let f = alg.field();
    let p = alg.charpoly(&alg.x()).unwrap();
    assert_eq!(p.coeffs(), &[0, 0, 0, 0, f.neg(alg.a())]);
    assert_eq!(alg.norm(&alg.x()).unwrap(), *alg.a());
    let mut r = rng(3);
    assert!(charpoly_matches_determinant(&alg, &alg.x(), &mut r));
    for _ in 0..10 {
        let u = alg.random_element(&mut r);
        assert!(charpoly_matches_determinant(&alg, &u, &mut r));
    }
}

#[test]
fn charpoly_of_scalar() {
    let (_, alg) = point(4);
    let f = alg.field();
    let k = 12345u64;
    let p = alg.charpoly(&alg.scalar(k)).unwrap().to_unipoly(f);
    let lin = UniPoly::linear_root(f, &k);
    let fifth = (0..4).fold(lin.clone(), |acc, _| acc.mul(f, &lin));
    assert!(p.equal(f, &fifth));
    assert_eq!(alg.trace(&alg.one()).unwrap(), 5);
}

#[test]
fn charpoly_of_xpx_symbolic() {
    let alg = SymbolAlgebra::symbolic();
    let f = alg.field();
    let p = alg.charpoly(&xpx(&alg).unwrap()).unwrap();
    let a = alg.a().clone();
    let a_plus = f.add(&a, &f.inv(&a).unwrap());
    assert!(f.is_zero(p.c(1)));
    assert!(f.equal(p.c(2), &f.from_int(-5)));
    assert!(f.is_zero(p.c(3)));
    assert!(f.equal(p.c(4), &f.from_int(5)));
    assert!(f.equal(p.c(5), &f.neg(&a_plus)));
}

#[test]
fn xpx_inverse_forms() {
    let alg = SymbolAlgebra::symbolic();
    let f = alg.field();
    let inv = xpx_inverse(&alg).unwrap();
    assert!(alg.equal(&alg.mul(&inv, &xpx(&alg).unwrap()), &alg.one()));
    assert!(alg.equal(&inv, &xpx_inverse_via_minpoly(&alg).unwrap()));

    // ±1, ±a, ±a⁻¹ pattern scaled by (a + a⁻¹)⁻¹
    let a = alg.a().clone();
    let ai = f.inv(&a).unwrap();
    let s = f.inv(&f.add(&a, &ai)).unwrap();
    let one = f.one();
    let m1 = f.neg(&one);
    let na = f.neg(&a);
    let nai = f.neg(&ai);
    let table = [
        [&one, &a, &m1, &na, &one],
        [&ai, &one, &a, &m1, &na],
        [&m1, &ai, &one, &a, &m1],
        [&nai, &m1, &ai, &one, &a],
        [&one, &nai, &m1, &ai, &one],
    ];
    let rep = alg.regular_rep(&inv);
    let l = alg.rep_ring();
    for r in 0..5 {
        for c in 0..5 {
            assert!(l.equal(&rep[r][c], &l.embed(f.mul(&s, table[r][c]))), "entry ({r}, {c})");
        }
    }
}

#[test]
fn c3_closed_form_small_cases() {
    let alg = SymbolAlgebra::symbolic();
    let f = alg.field();
    assert!(f.is_zero(&c3_closed_form(&alg, &alg.zero()).unwrap()));
    let one = c3_closed_form(&alg, &alg.one()).unwrap();
    let p = alg.charpoly(&xpx_inverse(&alg).unwrap()).unwrap();
    assert!(f.equal(&one, p.c(3)));
    let a = alg.a().clone();
    let five_s = f.mul(&f.from_int(5), &f.inv(&f.add(&a, &f.inv(&a).unwrap())).unwrap());
    assert!(f.equal(&one, &five_s));
    assert!(matches!(c3_closed_form(&alg, &alg.x()), Err(Error::NotInSubfield)));
}

#[test]
fn c3_closed_form_random() {
    let (_, alg) = point(5);
    let mut r = rng(5);
    let inv = xpx_inverse(&alg).unwrap();
    for _ in 0..20 {
        let m = alg.random_subfield_element(&mut r);
        let p = alg.charpoly(&alg.mul(&inv, &m)).unwrap();
        assert_eq!(c3_closed_form(&alg, &m).unwrap(), *p.c(3));
    }
}

#[test]
fn inverse_and_reciprocal() {
    let (_, alg) = point(6);
    let mut r = rng(6);
    let xi = alg.inverse(&alg.x()).unwrap();
    assert!(alg.equal(&xi, &alg.x_inv().unwrap()));
    let f = alg.field();
    let p = alg.charpoly(&xi).unwrap();
    assert_eq!(p.coeffs(), &[0, 0, 0, 0, f.neg(&f.inv(alg.a()).unwrap())]);
    for _ in 0..10 {
        let t = alg.random_element(&mut r);
        assert!(alg.reciprocal_charpoly_check(&t).unwrap());
        let p = alg.charpoly(&t).unwrap();
        assert!(alg.is_zero(&alg.charpoly_at(&p, &t)));
    }
    assert!(alg.reciprocal_charpoly_check(&alg.scalar(77)).unwrap());
}

#[test]
fn newton_identities() {
    let (_, alg) = point(7);
    let mut r = rng(7);
    assert!(alg.newton_check(&alg.one()).unwrap());
    assert!(alg.newton_check(&alg.x()).unwrap());
    let x5 = alg.pow(&alg.x(), 5);
    assert_eq!(alg.matrix_trace(&x5).unwrap(), alg.field().mul(&5, alg.a()));
    for k in 1..5 {
        assert_eq!(alg.matrix_trace(&alg.pow(&alg.x(), k)).unwrap(), 0);
    }
    for _ in 0..10 {
        assert!(alg.newton_check(&alg.random_element(&mut r)).unwrap());
    }
}

#[test]
fn tau_on_generators() {
    let g = SymbolAlgebra::generic();
    let mut ev = crate::expr::symbolic_evaluator();
    let s = SymbolAlgebra::symbolic();
    let eval = |ev: &mut _, u: &AlgebraElement<Expr>| SymbolAlgebra::<ExprRing>::eval(ev, u).unwrap();

    let tx = eval(&mut ev, &g.tau(&g.x()));
    assert!(s.equal(&tx, &s.x_inv().unwrap()));
    let ty = g.tau(&g.y());
    let ty5 = eval(&mut ev, &g.pow(&ty, 5));
    let tb = ev.eval(&Expr::b().tau()).unwrap();
    assert!(s.equal(&ty5, &s.scalar(tb)));
    let t2y = eval(&mut ev, &g.tau_pow(&g.y(), 2));
    assert!(s.equal(&t2y, &s.y_inv().unwrap()));
    // τ(x)τ(y) = ρ²-twisted commutation
    let lhs = eval(&mut ev, &g.mul(&ty, &g.tau(&g.x())));
    let rhs = eval(&mut ev, &g.scale(&Expr::rho().tau(), &g.mul(&g.tau(&g.x()), &ty)));
    assert!(s.equal(&lhs, &rhs));
}

#[test]
fn tau_has_order_four_on_d() {
    let g = SymbolAlgebra::generic();
    let mut ev = crate::expr::symbolic_evaluator();
    let s = SymbolAlgebra::symbolic();
    let u = g.add(&g.mul(&g.x(), &g.y()), &g.scale(&Expr::eta(), &g.pow(&g.y(), 2)));
    let back = SymbolAlgebra::<ExprRing>::eval(&mut ev, &g.tau_pow(&u, 4)).unwrap();
    let orig = SymbolAlgebra::<ExprRing>::eval(&mut ev, &u).unwrap();
    assert!(s.equal(&back, &orig));
    let two = SymbolAlgebra::<ExprRing>::eval(&mut ev, &g.tau_pow(&u, 2)).unwrap();
    assert!(!s.equal(&two, &orig));
}

#[test]
fn normalize_beta_on_x() {
    let (pt, alg) = point(8);
    let g = SymbolAlgebra::generic();
    let mut ev = pt.evaluator();
    let tx = SymbolAlgebra::<ExprRing>::eval(&mut ev, &g.tau(&g.x())).unwrap();
    let u = normalize_beta(&alg, &alg.x(), &tx).unwrap();
    assert!(alg.equal(&u, &alg.scale(alg.a(), &alg.x())));
    let y = alg.y();
    assert!(matches!(normalize_beta(&alg, &y, &y), Err(Error::PreconditionViolated(_))));
}

#[test]
fn membership_predicates() {
    use crate::expr::pit::EqualityMode;
    let g = SymbolAlgebra::generic();
    let mode = EqualityMode::Symbolic;
    let a = Expr::a();
    let f_elt = g.scalar(a.add(&a.inv()));
    assert!(is_in_f(&g, &f_elt, mode).unwrap());
    assert!(!g.is_scalar(&g.y()));
    let rho = g.scalar(Expr::rho());
    assert!(g.is_scalar(&rho));
    assert!(!is_tau_fixed(&g, &rho, mode).unwrap());
    let xpx_g = xpx(&g).unwrap();
    assert!(is_tau_fixed(&g, &xpx_g, mode).unwrap());
    assert!(!is_in_f(&g, &xpx_g, mode).unwrap());
}

#[test]
fn display_forms() {
    let alg = SymbolAlgebra::symbolic();
    assert_eq!(SymbolAlgebra::display(&alg.zero()), "0");
    assert_eq!(SymbolAlgebra::display(&alg.mul(&alg.y(), &alg.x())), "(rho)*x*y");
    let u = alg.add(&alg.x(), &alg.scale(&alg.field().from_int(-3), &alg.pow(&alg.y(), 2)));
    assert_eq!(SymbolAlgebra::display(&u), "(-3)*y^2 + x");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let (_, alg) = point(seed % 7);
        let mut r = rng(seed);
        let (u, v, w) = (alg.random_element(&mut r), alg.random_element(&mut r), alg.random_element(&mut r));
        prop_assert!(alg.equal(&alg.mul(&alg.mul(&u, &v), &w), &alg.mul(&u, &alg.mul(&v, &w))));
        prop_assert!(alg.equal(&alg.mul(&u, &alg.add(&v, &w)), &alg.add(&alg.mul(&u, &v), &alg.mul(&u, &w))));
    }

    #[test]
    fn cayley_hamilton(seed in any::<u64>()) {
        let (_, alg) = point(seed % 5);
        let mut r = rng(seed);
        let u = alg.random_element(&mut r);
        let p = alg.charpoly(&u).unwrap();
        prop_assert!(alg.is_zero(&alg.charpoly_at(&p, &u)));
    }
}

