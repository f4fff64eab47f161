//! Degree propagation for Schwartz–Zippel accounting.
//!
//! [`DegreeRing`] is an abstract-interpretation backend: running any generic
//! computation over it yields, for each intermediate value, an upper bound on
//! the total degree of a numerator/denominator representation of the rational
//! function that value computes. Denominators are kept factored into "atoms"
//! (the numerator polynomial of some inverted value) so that sums take an lcm
//! rather than a product of denominators. Distinct atoms are assumed coprime,
//! which can only overestimate.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::{Field, Ring};
use crate::error::NonInvertible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBound {
    zero: bool,
    num: u64,
    /// atom id → (degree of the atom, multiplicity)
    den: BTreeMap<u64, (u64, u32)>,
    /// Atom id to use when this value is inverted (set for variables).
    atom: Option<u64>,
}

impl DegreeBound {
    /// Bound on the numerator's total degree; this is the quantity that
    /// enters the Schwartz–Zippel estimate for an identity `value = 0`.
    pub fn numerator_degree(&self) -> u64 {
        if self.zero {
            0
        } else {
            self.num
        }
    }

    pub fn denominator_degree(&self) -> u64 {
        den_degree(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    fn constant() -> Self {
        DegreeBound {
            zero: false,
            num: 0,
            den: BTreeMap::new(),
            atom: None,
        }
    }

    fn zero() -> Self {
        DegreeBound {
            zero: true,
            ..Self::constant()
        }
    }
}

fn den_degree(den: &BTreeMap<u64, (u64, u32)>) -> u64 {
    den.values()
        .fold(0u64, |acc, (d, m)| acc.saturating_add(d.saturating_mul(*m as u64)))
}

#[derive(Debug, Clone)]
pub struct DegreeRing {
    next_atom: Arc<AtomicU64>,
}

impl Default for DegreeRing {
    fn default() -> Self {
        Self::new()
    }
}

impl DegreeRing {
    pub fn new() -> Self {
        DegreeRing {
            next_atom: Arc::new(AtomicU64::new(1)),
        }
    }

    /// A fresh independent variable (degree 1).
    pub fn variable(&self) -> DegreeBound {
        DegreeBound {
            zero: false,
            num: 1,
            den: BTreeMap::new(),
            atom: Some(self.fresh()),
        }
    }

    /// A nonzero constant (degree 0), e.g. the image of ρ.
    pub fn constant(&self) -> DegreeBound {
        DegreeBound::constant()
    }

    fn fresh(&self) -> u64 {
        self.next_atom.fetch_add(1, Ordering::Relaxed)
    }
}

impl Ring for DegreeRing {
    type El = DegreeBound;

    fn zero(&self) -> DegreeBound {
        DegreeBound::zero()
    }
    fn one(&self) -> DegreeBound {
        DegreeBound::constant()
    }
    fn from_int(&self, n: i64) -> DegreeBound {
        if n == 0 {
            DegreeBound::zero()
        } else {
            DegreeBound::constant()
        }
    }
    fn add(&self, x: &DegreeBound, y: &DegreeBound) -> DegreeBound {
        if x.zero {
            return DegreeBound { atom: None, ..y.clone() };
        }
        if y.zero {
            return DegreeBound { atom: None, ..x.clone() };
        }
        let mut lcm = x.den.clone();
        for (k, (d, m)) in &y.den {
            let e = lcm.entry(*k).or_insert((*d, 0));
            e.1 = e.1.max(*m);
        }
        let l = den_degree(&lcm);
        let lift = |v: &DegreeBound| v.num.saturating_add(l - den_degree(&v.den));
        DegreeBound {
            zero: false,
            num: lift(x).max(lift(y)),
            den: lcm,
            atom: None,
        }
    }
    fn sub(&self, x: &DegreeBound, y: &DegreeBound) -> DegreeBound {
        self.add(x, y)
    }
    fn neg(&self, x: &DegreeBound) -> DegreeBound {
        x.clone()
    }
    fn mul(&self, x: &DegreeBound, y: &DegreeBound) -> DegreeBound {
        if x.zero || y.zero {
            return DegreeBound::zero();
        }
        let mut den = x.den.clone();
        for (k, (d, m)) in &y.den {
            let e = den.entry(*k).or_insert((*d, 0));
            e.1 += *m;
        }
        DegreeBound {
            zero: false,
            num: x.num.saturating_add(y.num),
            den,
            atom: None,
        }
    }
    fn is_zero(&self, x: &DegreeBound) -> bool {
        x.zero
    }
    fn decides_zero(&self) -> bool {
        false
    }
    fn equal(&self, _x: &DegreeBound, _y: &DegreeBound) -> bool {
        false
    }
}

impl Field for DegreeRing {
    fn inv(&self, x: &DegreeBound) -> Result<DegreeBound, NonInvertible> {
        if x.zero {
            return Err(NonInvertible);
        }
        let num = den_degree(&x.den);
        let mut den = BTreeMap::new();
        if x.num > 0 {
            let id = x.atom.unwrap_or_else(|| self.fresh());
            den.insert(id, (x.num, 1));
        }
        Ok(DegreeBound {
            zero: false,
            num,
            den,
            atom: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_share_denominators() {
        let r = DegreeRing::new();
        let a = r.variable();
        let ainv = r.inv(&a).unwrap();
        // a + 1/a = (a² + 1)/a
        let s = r.add(&a, &ainv);
        assert_eq!(s.numerator_degree(), 2);
        assert_eq!(s.denominator_degree(), 1);
        // many copies of 1/a: denominator stays a
        let mut acc = r.zero();
        for _ in 0..10 {
            acc = r.add(&acc, &ainv);
        }
        assert_eq!(acc.denominator_degree(), 1);
        assert_eq!(acc.numerator_degree(), 0);
    }

    #[test]
    fn products_and_inverses() {
        let r = DegreeRing::new();
        let a = r.variable();
        let b = r.variable();
        let p = r.mul(&r.add(&a, &b), &r.inv(&b).unwrap()); // (a+b)/b
        assert_eq!((p.numerator_degree(), p.denominator_degree()), (1, 1));
        let q = r.inv(&p).unwrap(); // b/(a+b)
        assert_eq!((q.numerator_degree(), q.denominator_degree()), (1, 1));
        let z = r.from_int(0);
        assert!(r.inv(&z).is_err());
        assert!(r.is_zero(&r.mul(&z, &a)));
    }
}
