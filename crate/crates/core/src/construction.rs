//! The explicit element w of D^τ with w ∉ F and w⁵ ∈ F.
//!
//! The line L = {α + βt} in K[y] passes through y + y⁻¹ (at t = t₁ = ρ + ρ⁴)
//! and τ(y + y⁻¹) (at t = t₂ = ρ² + ρ³), with α, β τ-fixed. Restricting the
//! trace form G(Z) = c₃((x + x⁻¹)⁻¹Z) to L gives a cubic over F with roots
//! t₁, t₂, so its third root t₃ = G(α)/G(β) lies in F, and
//! w = (x + x⁻¹)⁻¹(α + βt₃) has characteristic polynomial λ⁵ − w⁵.

use std::sync::OnceLock;

use crate::algebra::{c3_closed_form, xpx_inverse, AlgebraElement, SymbolAlgebra};
use crate::descent::{third_root, CubicForm};
use crate::error::{Error, NonInvertible};
use crate::expr::{Expr, ExprRing};
use crate::fields::{Field, UniPoly};

#[derive(Debug, Clone)]
pub struct LineL<E> {
    pub alpha: AlgebraElement<E>,
    pub beta: AlgebraElement<E>,
    pub t1: E,
    pub t2: E,
}

impl<E: Clone> LineL<E> {
    pub fn point<F: Field<El = E>>(&self, alg: &SymbolAlgebra<F>, z: &E) -> AlgebraElement<E> {
        alg.add(&self.alpha, &alg.scale(z, &self.beta))
    }
}

/// y + y⁻¹ and its τ-image ηy⁻² + η⁻¹y².
pub fn line_anchors<F: Field>(alg: &SymbolAlgebra<F>) -> Result<(AlgebraElement<F::El>, AlgebraElement<F::El>), NonInvertible> {
    let f = alg.field();
    let y = alg.y();
    let y_inv = alg.y_inv()?;
    let y2 = alg.pow(&y, 2);
    let y_inv2 = alg.mul(&y_inv, &y_inv);
    let z1 = alg.add(&y, &y_inv);
    let z2 = alg.add(&alg.scale(alg.eta(), &y_inv2), &alg.scale(&f.inv(alg.eta())?, &y2));
    Ok((z1, z2))
}

/// β = (Z₁ − Z₂)/(t₁ − t₂), α = Z₁ − βt₁.
pub fn compute_alpha_beta<F: Field>(alg: &SymbolAlgebra<F>) -> Result<LineL<F::El>, NonInvertible> {
    let f = alg.field();
    let t1 = f.add(alg.rho_pow(1), alg.rho_pow(4));
    let t2 = f.add(alg.rho_pow(2), alg.rho_pow(3));
    let (z1, z2) = line_anchors(alg)?;
    let beta = alg.scale(&f.inv(&f.sub(&t1, &t2))?, &alg.sub(&z1, &z2));
    let alpha = alg.sub(&z1, &alg.scale(&t1, &beta));
    Ok(LineL { alpha, beta, t1, t2 })
}

/// G(Z) = (a + a⁻¹)⁻¹ tr_σ(Z σ(Z) σ²(Z)) for Z ∈ K[y].
pub fn trace_form<F: Field>(alg: &SymbolAlgebra<F>, z: &AlgebraElement<F::El>) -> Result<F::El, Error> {
    c3_closed_form(alg, z)
}

/// G as a cubic form in the coordinates of Z = Σ z_j yʲ:
/// 5(a + a⁻¹)⁻¹ Σ_{j+k+l ≡ 0 (5)} ρ^{k+2l} b^{(j+k+l)/5} z_j z_k z_l.
pub fn trace_form_cubic<F: Field>(alg: &SymbolAlgebra<F>) -> Result<CubicForm<F::El>, NonInvertible> {
    let f = alg.field();
    let a = alg.a();
    let s = f.inv(&f.add(a, &f.inv(a)?))?;
    let five_s = f.mul(&f.from_int(5), &s);
    let mut terms = Vec::new();
    for j in 0..5 {
        for k in 0..5 {
            for l in 0..5 {
                let total = j + k + l;
                if total % 5 != 0 {
                    continue;
                }
                let mut c = f.mul(&five_s, alg.rho_pow((k + 2 * l) as i64));
                c = f.mul(&c, &f.pow(alg.b(), (total / 5) as u64));
                let mut exps = vec![0u32; 5];
                exps[j] += 1;
                exps[k] += 1;
                exps[l] += 1;
                terms.push((exps, c));
            }
        }
    }
    Ok(CubicForm::new(f, 5, terms).expect("exponent vectors have degree 3"))
}

/// y-coordinates of an element of K[y].
pub fn subfield_coords<E: Clone>(u: &AlgebraElement<E>) -> Vec<E> {
    u.coeffs()[0].to_vec()
}

/// g(t) = G(α + βt).
pub fn line_cubic<F: Field>(alg: &SymbolAlgebra<F>, line: &LineL<F::El>) -> Result<UniPoly<F::El>, NonInvertible> {
    let form = trace_form_cubic(alg)?;
    Ok(form.specialize_line(alg.field(), &subfield_coords(&line.alpha), &subfield_coords(&line.beta)))
}

/// tr((x + x⁻¹)⁻¹(α + βz)) = 0.
pub fn line_trace_zero<F: Field>(alg: &SymbolAlgebra<F>, line: &LineL<F::El>, z: &F::El) -> Result<bool, Error> {
    let l = alg.mul(&xpx_inverse(alg)?, &line.point(alg, z));
    let tr = alg.trace(&l)?;
    Ok(alg.field().is_zero(&tr))
}

/// The witness as expressions over the generic algebra, with the τ-images
/// needed to test membership in D^τ and F after specialization.
#[derive(Debug, Clone)]
pub struct WitnessTerms {
    pub line: LineL<Expr>,
    /// Cubic on L; leading coefficient G(β).
    pub cubic: UniPoly<Expr>,
    pub t3: Expr,
    pub tau_t3: Expr,
    pub w: AlgebraElement<Expr>,
    pub tau_w: AlgebraElement<Expr>,
    /// (0, 0) coefficient of w⁵.
    pub fifth_power: Expr,
    pub tau_fifth_power: Expr,
}

/// t₃ = third root of g with t₁t₂ = −1, w = (x + x⁻¹)⁻¹(α + βt₃).
pub fn build_witness_terms() -> Result<WitnessTerms, Error> {
    let alg = SymbolAlgebra::generic();
    let f = ExprRing;
    let line = compute_alpha_beta(&alg)?;
    let cubic = line_cubic(&alg, &line)?;
    let lead = cubic.coeff(&f, 3);
    let t3 = third_root(&f, &cubic, &lead, &Expr::constant(-1))?;
    let w = alg.mul(&xpx_inverse(&alg)?, &line.point(&alg, &t3));
    let tau_w = alg.tau(&w);
    let fifth_power = alg.pow(&w, 5).coeff(0, 0).clone();
    Ok(WitnessTerms {
        tau_t3: t3.tau(),
        tau_fifth_power: fifth_power.tau(),
        line,
        cubic,
        t3,
        tau_w,
        w,
        fifth_power,
    })
}

/// Shared instance of [`build_witness_terms`].
pub fn witness_terms() -> &'static WitnessTerms {
    static TERMS: OnceLock<WitnessTerms> = OnceLock::new();
    TERMS.get_or_init(|| build_witness_terms().expect("generic witness construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::pit::Specialization;
    use crate::expr::symbolic_evaluator;
    use crate::fields::{PrimeField, Ring};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn point(seed: u64) -> Specialization {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = PrimeField::generate(62, &mut rng).unwrap();
        Specialization::sample(field, &mut rng, 0, 0).unwrap()
    }

    #[test]
    fn line_equations_exact() {
        let alg = SymbolAlgebra::symbolic();
        let f = alg.field();
        let line = compute_alpha_beta(&alg).unwrap();
        let (z1, z2) = line_anchors(&alg).unwrap();
        assert!(alg.equal(&line.point(&alg, &line.t1), &z1));
        assert!(alg.equal(&line.point(&alg, &line.t2), &z2));
        assert!(f.equal(&f.add(&line.t1, &line.t2), &f.from_int(-1)));
        assert!(f.equal(&f.mul(&line.t1, &line.t2), &f.from_int(-1)));
    }

    #[test]
    fn line_is_tau_fixed() {
        let g = SymbolAlgebra::generic();
        let line = compute_alpha_beta(&g).unwrap();
        let mut ev = symbolic_evaluator();
        let s = SymbolAlgebra::symbolic();
        for u in [&line.alpha, &line.beta] {
            let lhs = SymbolAlgebra::<ExprRing>::eval(&mut ev, &g.tau(u)).unwrap();
            let rhs = SymbolAlgebra::<ExprRing>::eval(&mut ev, u).unwrap();
            assert!(s.equal(&lhs, &rhs));
        }
    }

    #[test]
    fn trace_form_agrees_with_cubic_and_charpoly() {
        let pt = point(21);
        let alg = SymbolAlgebra::at(&pt);
        let f = alg.field();
        let form = trace_form_cubic(&alg).unwrap();
        let inv = xpx_inverse(&alg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let z = alg.random_subfield_element(&mut rng);
            let closed = trace_form(&alg, &z).unwrap();
            assert_eq!(closed, form.eval(f, &subfield_coords(&z)));
            assert_eq!(closed, *alg.charpoly(&alg.mul(&inv, &z)).unwrap().c(3));
        }
        let (z1, _) = line_anchors(&alg).unwrap();
        assert_eq!(trace_form(&alg, &z1).unwrap(), 0);
        assert_eq!(trace_form(&alg, &alg.zero()).unwrap(), 0);
    }

    #[test]
    fn cubic_on_line_has_known_roots() {
        let pt = point(22);
        let alg = SymbolAlgebra::at(&pt);
        let f = alg.field();
        let line = compute_alpha_beta(&alg).unwrap();
        let g = line_cubic(&alg, &line).unwrap();
        assert_eq!(g.eval(f, &line.t1), 0);
        assert_eq!(g.eval(f, &line.t2), 0);
        assert_eq!(g.coeff(f, 3), trace_form(&alg, &line.beta).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for z in [0, line.t1, f.random(&mut rng), f.random(&mut rng)] {
            assert!(line_trace_zero(&alg, &line, &z).unwrap());
        }
    }

    #[test]
    fn witness_at_a_point() {
        let terms = witness_terms();
        let pt = point(23);
        let alg = SymbolAlgebra::at(&pt);
        let f = alg.field();
        let mut ev = pt.evaluator();
        let w = SymbolAlgebra::<ExprRing>::eval(&mut ev, &terms.w).unwrap();
        let p = alg.charpoly(&w).unwrap();
        assert_eq!(&p.coeffs()[..4], &[0, 0, 0, 0]);
        let fifth = ev.eval(&terms.fifth_power).unwrap();
        assert_eq!(fifth, f.neg(p.c(5)));
        assert_eq!(ev.eval(&terms.tau_fifth_power).unwrap(), fifth);
        assert!(alg.equal(&alg.pow(&w, 5), &alg.scalar(fifth)));
        assert!(!alg.is_scalar(&w));
        let tau_w = SymbolAlgebra::<ExprRing>::eval(&mut ev, &terms.tau_w).unwrap();
        assert!(alg.equal(&tau_w, &w));
        assert_eq!(ev.eval(&terms.t3).unwrap(), ev.eval(&terms.tau_t3).unwrap());
    }
}
