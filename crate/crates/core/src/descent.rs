//! Descent of a zero of a cubic form from a quadratic extension F[t] to F.
//!
//! Given α + βt with G(α + βt) = 0 in F[t]/(m_t), the restriction
//! g(Z) = G(α + βZ) is a cubic with leading coefficient G(β) that m_t
//! divides, so either G(β) = 0 or g = G(β)·m_t·(Z − w) and α + βw is a zero
//! over F.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, NonInvertible};
use crate::fields::{Field, PrimeField, Rational, RationalField, Ring, UniPoly};

/// Homogeneous cubic Σ c_e xᵉ in n variables.
#[derive(Debug, Clone)]
pub struct CubicForm<E> {
    n: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone> CubicForm<E> {
    /// Merges repeated exponent vectors and drops zero coefficients.
    pub fn new<R: Ring<El = E>>(ring: &R, n: usize, terms: impl IntoIterator<Item = (Vec<u32>, E)>) -> Result<Self, Error> {
        let mut map: BTreeMap<Vec<u32>, E> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::PreconditionViolated(format!(
                    "exponent vector {exps:?} has length {}, expected {n}",
                    exps.len()
                )));
            }
            if exps.iter().sum::<u32>() != 3 {
                return Err(Error::PreconditionViolated(format!("term {exps:?} is not of degree 3")));
            }
            let slot = map.entry(exps).or_insert_with(|| ring.zero());
            *slot = ring.add(slot, &c);
        }
        map.retain(|_, c| !ring.is_zero(c));
        Ok(CubicForm { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &E)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn eval<R: Ring<El = E>>(&self, ring: &R, v: &[E]) -> E {
        let mut acc = ring.zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in v.iter().zip(exps) {
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(x, e as u64));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// g(Z) = G(α + βZ).
    pub fn specialize_line<R: Ring<El = E>>(&self, ring: &R, alpha: &[E], beta: &[E]) -> UniPoly<E> {
        let lines: Vec<UniPoly<E>> = alpha
            .iter()
            .zip(beta)
            .map(|(a, b)| UniPoly::new(ring, vec![a.clone(), b.clone()]))
            .collect();
        let mut g = UniPoly::zero();
        for (exps, c) in &self.terms {
            let mut t = UniPoly::constant(ring, c.clone());
            for (line, &e) in lines.iter().zip(exps) {
                for _ in 0..e {
                    t = t.mul(ring, line);
                }
            }
            g = g.add(ring, &t);
        }
        g
    }
}

/// A zero α + βt of G over F[t]/(m_t), m_t monic of degree 2.
#[derive(Debug, Clone)]
pub struct QuadraticCertificate<E> {
    pub alpha: Vec<E>,
    pub beta: Vec<E>,
    pub m_t: UniPoly<E>,
}

/// Returns γ ∈ Fⁿ with G(γ) = 0, after checking the certificate.
///
/// When β = 0 the certificate says G(α) = 0 and α is returned; otherwise β is
/// returned when G(β) = 0.
pub fn descend<F: Field>(field: &F, form: &CubicForm<F::El>, cert: &QuadraticCertificate<F::El>) -> Result<Vec<F::El>, Error> {
    let n = form.n();
    if cert.alpha.len() != n || cert.beta.len() != n {
        return Err(Error::PreconditionViolated(format!("line vectors must have length {n}")));
    }
    if cert.m_t.degree() != Some(2) || !field.is_one(cert.m_t.leading().expect("degree 2")) {
        return Err(Error::PreconditionViolated("m_t must be monic of degree 2".into()));
    }
    let g = form.specialize_line(field, &cert.alpha, &cert.beta);
    let (q, r) = g.divrem(field, &cert.m_t)?;
    if !r.is_zero() {
        return Err(Error::CertificateInvalid("G(α + βt) has nonzero remainder modulo m_t".into()));
    }
    let g_beta = form.eval(field, &cert.beta);
    if field.is_zero(&g_beta) {
        let beta_zero = cert.beta.iter().all(|c| field.is_zero(c));
        return Ok(if beta_zero { cert.alpha.clone() } else { cert.beta.clone() });
    }
    assert_eq!(g.degree(), Some(3), "leading coefficient of g is G(β) ≠ 0");
    // q = G(β)(Z − w)
    let w = field.neg(&field.div(&q.coeff(field, 0), &q.coeff(field, 1))?);
    let gamma: Vec<F::El> = cert
        .alpha
        .iter()
        .zip(&cert.beta)
        .map(|(a, b)| field.add(a, &field.mul(b, &w)))
        .collect();
    if !field.is_zero(&form.eval(field, &gamma)) {
        return Err(Error::CertificateInvalid("descended point is not a zero of G".into()));
    }
    Ok(gamma)
}

/// Third root t₃ = −g(0)/(t₁t₂·c) of g = c(Z − t₁)(Z − t₂)(Z − t₃), given
/// the product t₁t₂ of two known roots.
pub fn third_root<F: Field>(field: &F, g: &UniPoly<F::El>, c: &F::El, t1t2: &F::El) -> Result<F::El, Error> {
    if g.degree().is_some_and(|d| d > 3) {
        return Err(Error::PreconditionViolated("g must have degree at most 3".into()));
    }
    let lead = g.coeff(field, 3);
    if field.decides_zero() && !field.is_zero(&lead) && !field.equal(&lead, c) {
        return Err(Error::PreconditionViolated("c is not the leading coefficient of g".into()));
    }
    let denom = field.mul(t1t2, c);
    Ok(field.neg(&field.div(&g.coeff(field, 0), &denom)?))
}

/// On-disk descent instance (TOML).
///
/// ```toml
/// n = 2
/// alpha = ["0", "1"]
/// beta = ["1", "0"]
/// m_t = ["-2", "0", "1"]   # lowest degree first
/// # prime = 1000000007     # optional: work over F_p instead of Q
///
/// [[terms]]
/// exponents = [3, 0]
/// coeff = "1"
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub n: usize,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub m_t: Vec<String>,
    pub terms: Vec<InstanceTerm>,
    pub prime: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl Instance {
    pub fn from_toml(text: &str) -> Result<Self, Error> {
        toml::from_str(text).map_err(|e| Error::Config(format!("invalid instance: {}", e.message())))
    }

    /// Runs the descent over Q, or over F_p when `prime` is set, and renders
    /// the zero as decimal strings.
    pub fn solve(&self) -> Result<Vec<String>, Error> {
        let rationals = |v: &[String]| -> Result<Vec<Rational>, Error> {
            v.iter()
                .map(|s| s.parse::<Rational>().map_err(|e| Error::Config(format!("invalid number: {e}"))))
                .collect()
        };
        let alpha = rationals(&self.alpha)?;
        let beta = rationals(&self.beta)?;
        let m_t = rationals(&self.m_t)?;
        let coeffs = rationals(&self.terms.iter().map(|t| t.coeff.clone()).collect::<Vec<_>>())?;
        let exps = self.terms.iter().map(|t| t.exponents.clone());
        match self.prime {
            None => {
                let f = RationalField;
                let form = CubicForm::new(&f, self.n, exps.zip(coeffs))?;
                let cert = QuadraticCertificate {
                    alpha,
                    beta,
                    m_t: UniPoly::new(&f, m_t),
                };
                Ok(descend(&f, &form, &cert)?.iter().map(|c| c.to_string()).collect())
            }
            Some(p) => {
                let f = PrimeField::new(p)?;
                let reduce = |v: Vec<Rational>| -> Result<Vec<u64>, Error> {
                    v.iter()
                        .map(|r| r.mod_prime(p).map_err(|NonInvertible| Error::ZeroDenominator))
                        .collect()
                };
                let form = CubicForm::new(&f, self.n, exps.zip(reduce(coeffs)?))?;
                let cert = QuadraticCertificate {
                    alpha: reduce(alpha)?,
                    beta: reduce(beta)?,
                    m_t: UniPoly::new(&f, reduce(m_t)?),
                };
                Ok(descend(&f, &form, &cert)?.iter().map(|c| c.to_string()).collect())
            }
        }
    }
}

/// Renders a point as "(c1, c2, ...)".
pub fn format_point(coords: &[String]) -> String {
    format!("({})", coords.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::QuadraticExtension;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn worked_form() -> CubicForm<Rational> {
        CubicForm::new(
            &RationalField,
            2,
            [(vec![3, 0], q(1)), (vec![2, 1], q(-5)), (vec![1, 2], q(-2)), (vec![0, 3], q(10))],
        )
        .unwrap()
    }

    fn z2_minus(k: i64) -> UniPoly<Rational> {
        UniPoly::new(&RationalField, vec![q(-k), q(0), q(1)])
    }

    #[test]
    fn specialize_worked_line() {
        let f = RationalField;
        let g = worked_form().specialize_line(&f, &[q(0), q(1)], &[q(1), q(0)]);
        assert_eq!(g.coeffs(), &[q(10), q(-2), q(-5), q(1)]);
        let flat = worked_form().specialize_line(&f, &[q(2), q(3)], &[q(0), q(0)]);
        assert_eq!(flat.coeffs(), &[worked_form().eval(&f, &[q(2), q(3)])]);
    }

    #[test]
    fn worked_descent() {
        let f = RationalField;
        let cert = QuadraticCertificate {
            alpha: vec![q(0), q(1)],
            beta: vec![q(1), q(0)],
            m_t: z2_minus(2),
        };
        let gamma = descend(&f, &worked_form(), &cert).unwrap();
        assert_eq!(gamma, vec![q(5), q(1)]);
        assert!(worked_form().eval(&f, &gamma).is_zero());
    }

    #[test]
    fn early_exit_returns_beta() {
        let f = RationalField;
        let form = CubicForm::new(&f, 2, [(vec![2, 1], q(1)), (vec![0, 3], q(-2))]).unwrap();
        let cert = QuadraticCertificate {
            alpha: vec![q(0), q(1)],
            beta: vec![q(1), q(0)],
            m_t: z2_minus(2),
        };
        assert_eq!(descend(&f, &form, &cert).unwrap(), vec![q(1), q(0)]);
    }

    #[test]
    fn corrupted_certificate_is_rejected() {
        let f = RationalField;
        let cert = QuadraticCertificate {
            alpha: vec![q(0), q(1)],
            beta: vec![q(1), q(0)],
            m_t: z2_minus(3),
        };
        assert!(matches!(descend(&f, &worked_form(), &cert), Err(Error::CertificateInvalid(_))));
    }

    #[test]
    fn malformed_inputs() {
        let f = RationalField;
        assert!(CubicForm::new(&f, 2, [(vec![2, 0], q(1))]).is_err());
        assert!(CubicForm::new(&f, 2, [(vec![3], q(1))]).is_err());
        let cert = QuadraticCertificate {
            alpha: vec![q(0), q(1)],
            beta: vec![q(1), q(0)],
            m_t: UniPoly::new(&f, vec![q(-2), q(0), q(2)]),
        };
        assert!(matches!(descend(&f, &worked_form(), &cert), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn third_root_examples() {
        let f = RationalField;
        let m = UniPoly::new(&f, vec![q(-1), q(1), q(1)]);
        let g = m.mul(&f, &UniPoly::linear_root(&f, &q(7)));
        assert_eq!(third_root(&f, &g, &q(1), &q(-1)).unwrap(), q(7));
        let g3 = g.scale(&f, &q(3));
        assert_eq!(third_root(&f, &g3, &q(3), &q(-1)).unwrap(), q(7));
        let cubic = UniPoly::new(&f, vec![q(0), q(0), q(-2), q(1)]);
        assert!(matches!(third_root(&f, &cubic, &q(1), &q(0)), Err(Error::NonInvertible)));
    }

    /// x³ − 2xz² + y³ − 3yz² vanishes at (√2, √3, 1): descend through
    /// Q(√2)(√3) one quadratic step at a time.
    #[test]
    fn two_step_tower() {
        let base = RationalField;
        let k1 = QuadraticExtension::new(base, q(-2), q(0));
        let emb = |r: i64| k1.embed(q(r));
        let form = CubicForm::new(
            &k1,
            3,
            [
                (vec![3, 0, 0], emb(1)),
                (vec![1, 0, 2], emb(-2)),
                (vec![0, 3, 0], emb(1)),
                (vec![0, 1, 2], emb(-3)),
            ],
        )
        .unwrap();
        let sqrt2 = k1.generator();
        let cert = QuadraticCertificate {
            alpha: vec![sqrt2.clone(), emb(0), emb(1)],
            beta: vec![emb(0), emb(1), emb(0)],
            m_t: UniPoly::new(&k1, vec![emb(-3), emb(0), emb(1)]),
        };
        let step1 = descend(&k1, &form, &cert).unwrap();
        assert!(k1.is_zero(&form.eval(&k1, &step1)));

        // write step1 = α + β√2 over Q
        let f = base;
        let form_q = CubicForm::new(
            &f,
            3,
            [(vec![3, 0, 0], q(1)), (vec![1, 0, 2], q(-2)), (vec![0, 3, 0], q(1)), (vec![0, 1, 2], q(-3))],
        )
        .unwrap();
        let cert_q = QuadraticCertificate {
            alpha: step1.iter().map(|c| c.0.clone()).collect(),
            beta: step1.iter().map(|c| c.1.clone()).collect(),
            m_t: z2_minus(2),
        };
        let gamma = descend(&f, &form_q, &cert_q).unwrap();
        assert!(form_q.eval(&f, &gamma).is_zero());
        assert!(gamma.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn instance_round_trip() {
        let text = r#"
n = 2
alpha = ["0", "1"]
beta = ["1", "0"]
m_t = ["-2", "0", "1"]

[[terms]]
exponents = [3, 0]
coeff = "1"
[[terms]]
exponents = [2, 1]
coeff = "-5"
[[terms]]
exponents = [1, 2]
coeff = "-2"
[[terms]]
exponents = [0, 3]
coeff = "10"
"#;
        let inst = Instance::from_toml(text).unwrap();
        assert_eq!(format_point(&inst.solve().unwrap()), "(5, 1)");
        let mut over_p = inst.clone();
        over_p.prime = Some(1_000_000_007);
        assert_eq!(format_point(&over_p.solve().unwrap()), "(5, 1)");
        assert!(matches!(Instance::from_toml("n = 2\nbogus = 1"), Err(Error::Config(_))));
    }
}
