//! Prime fields F_p with p < 2⁶³, the evaluation target for identity testing.

use rand::Rng;

use super::{Field, Ring};
use crate::error::{Error, NonInvertible};

/// Candidates examined by [`PrimeField::generate`] before giving up.
pub const PRIME_SEARCH_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Requires `p` prime, `5 < p < 2⁶³`.
    pub fn new(p: u64) -> Result<Self, Error> {
        if p <= 5 || p >= 1 << 63 || !is_prime(p) {
            return Err(Error::Config(format!(
                "{p} is not a prime in (5, 2^63)"
            )));
        }
        Ok(PrimeField { p })
    }

    pub(crate) fn new_unchecked(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Draws a random prime of exactly `bits` bits with p ≡ 1 (mod 5).
    pub fn generate<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> Result<Self, Error> {
        if !(8..=63).contains(&bits) {
            return Err(Error::Config(format!("prime size {bits} bits out of range")));
        }
        let lo = 1u64 << (bits - 1);
        let hi = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        for _ in 0..PRIME_SEARCH_LIMIT {
            let mut c = rng.gen_range(lo..=hi);
            // p ≡ 1 (mod 10): odd and ≡ 1 (mod 5)
            c -= c % 10;
            c += 1;
            if c < lo {
                c += 10;
            }
            if c > hi {
                continue;
            }
            if is_prime(c) {
                return Ok(PrimeField { p: c });
            }
        }
        Err(Error::Config(format!(
            "no {bits}-bit prime found after {PRIME_SEARCH_LIMIT} candidates"
        )))
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Uniform element of F_p^×.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    /// A random primitive fifth root of unity; needs p ≡ 1 (mod 5).
    pub fn random_primitive_fifth_root<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64, Error> {
        if self.p % 5 != 1 {
            return Err(Error::Config(format!("{} is not 1 mod 5", self.p)));
        }
        let e = (self.p - 1) / 5;
        loop {
            let g = self.random_unit(rng);
            let r = self.pow(&g, e);
            if r != 1 {
                return Ok(r);
            }
        }
    }
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Ring for PrimeField {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    #[inline]
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }
    #[inline]
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mulmod(*x, *y, self.p)
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn equal(&self, x: &u64, y: &u64) -> bool {
        x == y
    }
    fn pow(&self, x: &u64, k: u64) -> u64 {
        powmod(*x, k, self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, x: &u64) -> Result<u64, NonInvertible> {
        if *x == 0 {
            return Err(NonInvertible);
        }
        // extended Euclid on (x, p)
        let (mut r0, mut r1) = (self.p as i128, *x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn generated_primes_have_fifth_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for bits in [32, 48, 62, 63] {
            let f = PrimeField::generate(bits, &mut rng).unwrap();
            let p = f.modulus();
            assert_eq!(p % 5, 1);
            assert_eq!(64 - p.leading_zeros(), bits);
            let r = f.random_primitive_fifth_root(&mut rng).unwrap();
            assert_ne!(r, 1);
            assert_eq!(f.pow(&r, 5), 1);
        }
    }

    #[test]
    fn inverse_and_ops() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        for x in [1u64, 2, 12345, 999_999_999] {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
        }
        assert!(f.inv(&0).is_err());
        assert_eq!(f.from_int(-1), 1_000_000_006);
        assert_eq!(f.sub(&3, &5), 1_000_000_005);
        assert!(PrimeField::new(5).is_err());
        assert!(PrimeField::new(91).is_err());
    }
}
