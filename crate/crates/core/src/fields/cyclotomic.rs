//! The cyclotomic field Q(ρ), ρ a primitive fifth root of unity.
//!
//! Elements are stored in the power basis 1, ρ, ρ², ρ³ modulo
//! Φ₅ = ρ⁴+ρ³+ρ²+ρ+1.

use std::fmt;

use super::{Field, PrimeField, Rational, Ring};
use crate::error::NonInvertible;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic5 {
    coeffs: [Rational; 4],
}

impl Cyclotomic5 {
    pub fn new(coeffs: [Rational; 4]) -> Self {
        Cyclotomic5 { coeffs }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic5 {
            coeffs: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ρᵏ for any integer k.
    pub fn rho_pow(k: i64) -> Self {
        let mut slots: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        slots[k.rem_euclid(5) as usize] = Rational::one();
        Self::reduce(slots)
    }

    pub fn rho() -> Self {
        Self::rho_pow(1)
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coeffs[0])
    }

    /// Folds a combination of 1, ρ, …, ρ⁴ back into the power basis using
    /// ρ⁴ = −1 − ρ − ρ² − ρ³.
    fn reduce(slots: [Rational; 5]) -> Self {
        let [c0, c1, c2, c3, c4] = slots;
        Cyclotomic5 {
            coeffs: [&c0 - &c4, &c1 - &c4, &c2 - &c4, &c3 - &c4],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Cyclotomic5 {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &other.coeffs[i]),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Cyclotomic5 {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &other.coeffs[i]),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic5 {
            coeffs: std::array::from_fn(|i| -&self.coeffs[i]),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic5 {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] * r),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        let mut slots: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % 5;
                slots[k] = &slots[k] + &(x * y);
            }
        }
        Self::reduce(slots)
    }

    /// The automorphism ρ ↦ ρᵏ (k coprime to 5).
    pub fn conjugate(&self, k: u32) -> Self {
        assert!(k % 5 != 0, "ρ ↦ ρ^{k} is not an automorphism");
        let mut slots: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = (i * k as usize) % 5;
            slots[t] = &slots[t] + c;
        }
        Self::reduce(slots)
    }

    /// Field norm to Q: the product of all four conjugates.
    pub fn norm(&self) -> Rational {
        let n = self
            .mul(&self.conjugate(2))
            .mul(&self.conjugate(3))
            .mul(&self.conjugate(4));
        debug_assert!(n.is_rational());
        n.coeffs[0].clone()
    }

    pub fn inv(&self) -> Result<Self, NonInvertible> {
        if self.is_rational() {
            return Ok(Self::from_rational(self.coeffs[0].recip()?));
        }
        let others = self
            .conjugate(2)
            .mul(&self.conjugate(3))
            .mul(&self.conjugate(4));
        let n = self.mul(&others);
        debug_assert!(n.is_rational());
        Ok(others.scale(&n.coeffs[0].recip()?))
    }

    /// Image under Q(ρ) → F_p sending ρ to `rho`.
    pub fn to_prime(&self, field: &PrimeField, rho: u64) -> Result<u64, NonInvertible> {
        let mut acc = 0u64;
        let mut rp = 1u64;
        for c in &self.coeffs {
            if !c.is_zero() {
                let v = c.mod_prime(field.modulus())?;
                acc = field.add(&acc, &field.mul(&v, &rp));
            }
            rp = field.mul(&rp, &rho);
        }
        Ok(acc)
    }
}

impl fmt::Display for Cyclotomic5 {
    /// Prints in the expression grammar, e.g. `1 + 2*rho - rho^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, c.abs())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag_str = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match i {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}*")?;
                    }
                    if i == 1 {
                        write!(f, "rho")?;
                    } else {
                        write!(f, "rho^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic5({self})")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Cyclotomic5Field;

impl Ring for Cyclotomic5Field {
    type El = Cyclotomic5;

    fn zero(&self) -> Cyclotomic5 {
        Cyclotomic5::zero()
    }
    fn one(&self) -> Cyclotomic5 {
        Cyclotomic5::one()
    }
    fn from_int(&self, n: i64) -> Cyclotomic5 {
        Cyclotomic5::from_int(n)
    }
    fn add(&self, x: &Cyclotomic5, y: &Cyclotomic5) -> Cyclotomic5 {
        x.add(y)
    }
    fn sub(&self, x: &Cyclotomic5, y: &Cyclotomic5) -> Cyclotomic5 {
        x.sub(y)
    }
    fn neg(&self, x: &Cyclotomic5) -> Cyclotomic5 {
        x.neg()
    }
    fn mul(&self, x: &Cyclotomic5, y: &Cyclotomic5) -> Cyclotomic5 {
        x.mul(y)
    }
    fn is_zero(&self, x: &Cyclotomic5) -> bool {
        x.is_zero()
    }
    fn equal(&self, x: &Cyclotomic5, y: &Cyclotomic5) -> bool {
        x == y
    }
}

impl Field for Cyclotomic5Field {
    fn inv(&self, x: &Cyclotomic5) -> Result<Cyclotomic5, NonInvertible> {
        x.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho(k: i64) -> Cyclotomic5 {
        Cyclotomic5::rho_pow(k)
    }

    #[test]
    fn cyclotomic_relation() {
        let s = (0..5).fold(Cyclotomic5::zero(), |acc, k| acc.add(&rho(k)));
        assert!(s.is_zero());
        assert_eq!(rho(1).mul(&rho(4)), Cyclotomic5::one());
        assert_eq!(rho(1).mul(&rho(1)).mul(&rho(3)), Cyclotomic5::one());
        assert_eq!(rho(5), Cyclotomic5::one());
    }

    #[test]
    fn periods() {
        let t1 = rho(1).add(&rho(4));
        let t2 = rho(2).add(&rho(3));
        assert_eq!(t1.add(&t2), Cyclotomic5::from_int(-1));
        assert_eq!(t1.mul(&t2), Cyclotomic5::from_int(-1));
        let d = t1.sub(&t2);
        assert_eq!(d.mul(&d), Cyclotomic5::from_int(5));
    }

    #[test]
    fn conjugation() {
        assert_eq!(rho(1).conjugate(2), rho(2));
        assert_eq!(rho(1).add(&rho(4)).conjugate(2), rho(2).add(&rho(3)));
        let x = Cyclotomic5::new([
            Rational::from_int(3),
            Rational::from_int(-1),
            Rational::new(1, 2).unwrap(),
            Rational::from_int(7),
        ]);
        assert_eq!(x.conjugate(1), x);
        let mut y = x.clone();
        for _ in 0..4 {
            y = y.conjugate(2);
        }
        assert_eq!(y, x);
        assert_ne!(x.conjugate(2), x);
        // automorphism: multiplicative
        let z = rho(3).add(&Cyclotomic5::from_int(2));
        assert_eq!(x.mul(&z).conjugate(3), x.conjugate(3).mul(&z.conjugate(3)));
    }

    #[test]
    fn inverse() {
        let x = Cyclotomic5::new([
            Rational::from_int(1),
            Rational::from_int(2),
            Rational::from_int(0),
            Rational::from_int(-3),
        ]);
        assert_eq!(x.mul(&x.inv().unwrap()), Cyclotomic5::one());
        assert!(Cyclotomic5::zero().inv().is_err());
        let t1 = rho(1).add(&rho(4));
        assert_eq!(t1.mul(&t1.inv().unwrap()), Cyclotomic5::one());
    }

    #[test]
    fn display() {
        assert_eq!(rho(4).to_string(), "-1 - rho - rho^2 - rho^3");
        assert_eq!(Cyclotomic5::zero().to_string(), "0");
    }

    #[test]
    fn prime_image() {
        let f = PrimeField::new(11).unwrap();
        // 3 has order 5 mod 11
        let t1 = rho(1).add(&rho(4));
        assert_eq!(t1.to_prime(&f, 3).unwrap(), (3 + 4) % 11); // 3^4 = 81 = 4 mod 11
    }
}
