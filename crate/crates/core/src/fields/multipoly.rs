//! Sparse polynomials in a, b, η with coefficients in Q(ρ).

use std::collections::BTreeMap;
use std::fmt;

use super::{Cyclotomic5, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A = 0,
    B = 1,
    Eta = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::A, Var::B, Var::Eta];

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::Eta => "eta",
        }
    }
}

pub type Exponents = [u32; 3];

/// Terms are keyed by exponent triples; lexicographic key order (a > b > η)
/// doubles as the monomial order, so the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, Cyclotomic5>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Cyclotomic5) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic5::one())
    }

    pub fn monomial(c: Cyclotomic5, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v as usize] = 1;
        Self::monomial(Cyclotomic5::one(), e)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exponents, Cyclotomic5)>) -> Self {
        let mut p = MultiPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Cyclotomic5)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Cyclotomic5> {
        match self.terms.len() {
            0 => Some(Cyclotomic5::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Cyclotomic5)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponents, c: &Cyclotomic5) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(*e, c);
        }
        big
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic5) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, &c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, c: &Cyclotomic5, m: &Exponents) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| ([e[0] + m[0], e[1] + m[1], e[2] + m[2]], x.mul(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return [0; 3];
        };
        it.fold(*first, |acc, e| {
            [acc[0].min(e[0]), acc[1].min(e[1]), acc[2].min(e[2])]
        })
    }

    /// Divides every exponent by the monomial `m` (which must divide all terms).
    pub fn shift_down(&self, m: &Exponents) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] - m[0], e[1] - m[1], e[2] - m[2]], c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading_term()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((re, rc)) = rem.leading_term() {
            if (0..3).any(|i| re[i] < de[i]) {
                return None;
            }
            let m = [re[0] - de[0], re[1] - de[1], re[2] - de[2]];
            let c = rc.mul(&dc_inv);
            rem = rem.sub(&d.mul_monomial(&c, &m));
            quot.add_term(m, &c);
        }
        Some(quot)
    }

    pub fn eval<T, F>(&self, mut f: F) -> T
    where
        F: FnMut(&Exponents, &Cyclotomic5) -> T,
        T: std::iter::Sum<T>,
    {
        self.terms.iter().map(|(e, c)| f(e, c)).sum()
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(Cyclotomic5::from_rational(r))
    }
}

impl fmt::Display for MultiPoly {
    /// Grammar-compatible rendering, highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[**v as usize] > 0)
                .map(|v| match e[*v as usize] {
                    1 => v.name().to_string(),
                    k => format!("{}^{k}", v.name()),
                })
                .collect();
            let coeff = match c.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    let mag = r.abs();
                    let body = if mag.is_integer() {
                        mag.to_string()
                    } else {
                        format!("({mag})")
                    };
                    (neg, body, mag.is_one())
                }
                None => (false, format!("({c})"), false),
            };
            let (neg, body, unit) = coeff;
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if unit {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{body}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> MultiPoly {
        MultiPoly::var(Var::A)
    }
    fn b() -> MultiPoly {
        MultiPoly::var(Var::B)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(Cyclotomic5::from_int(n))
    }

    #[test]
    fn zero_is_normalized() {
        let p = a().sub(&a());
        assert!(p.is_zero());
        assert_eq!(p, MultiPoly::zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let num = a().mul(&a()).sub(&c(1));
        let den = a().sub(&c(1));
        assert_eq!(num.exact_div(&den).unwrap(), a().add(&c(1)));
        assert!(num.exact_div(&b()).is_none());
        let ab = a().mul(&b());
        assert_eq!(ab.exact_div(&b()).unwrap(), a());
    }

    #[test]
    fn display() {
        let p = a().mul(&a()).scale(&Cyclotomic5::from_int(3)).sub(&b()).add(&c(2));
        assert_eq!(p.to_string(), "3*a^2 - b + 2");
        let q = MultiPoly::var(Var::Eta).scale(&Cyclotomic5::rho());
        assert_eq!(q.to_string(), "(rho)*eta");
    }

    #[test]
    fn content() {
        let p = a().mul(&a()).mul(&b()).add(&a().mul(&b()).mul(&b()));
        assert_eq!(p.monomial_content(), [1, 1, 0]);
    }
}
