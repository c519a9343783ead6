//! Coefficient fields: exact rationals and prime fields with a runtime modulus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact field arithmetic for polynomial coefficients.
///
/// `Config` carries whatever is needed to embed an integer into the field:
/// nothing for the rationals, the modulus for a prime field. Elements of
/// distinct prime fields must never be mixed; the arithmetic panics on a
/// modulus mismatch.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Config: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn from_int(k: i64, cfg: &Self::Config) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.clone() * rhs.inv()
    }
}

impl Field for BigRational {
    type Config = ();

    fn from_int(k: i64, _cfg: &()) -> Self {
        BigRational::from_integer(k.into())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Element of the prime field Z/p with the modulus carried alongside the value.
///
/// The value is always reduced to `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf {
    value: u64,
    modulus: u64,
}

impl Gf {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let p = modulus as i128;
        let v = ((value as i128 % p) + p) % p;
        Gf {
            value: v as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check_same(self, rhs: Gf) -> u64 {
        assert_eq!(
            self.modulus, rhs.modulus,
            "prime field modulus mismatch: {} vs {}",
            self.modulus, rhs.modulus
        );
        self.modulus
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        let p = self.check_same(rhs);
        let s = self.value as u128 + rhs.value as u128;
        Gf {
            value: (s % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        let p = self.check_same(rhs);
        let s = self.value as u128 + (p - rhs.value) as u128;
        Gf {
            value: (s % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        let p = self.check_same(rhs);
        let s = self.value as u128 * rhs.value as u128;
        Gf {
            value: (s % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        if self.value == 0 {
            self
        } else {
            Gf {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }
}

impl Field for Gf {
    type Config = u64;

    fn from_int(k: i64, cfg: &u64) -> Self {
        Gf::new(k, *cfg)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        // Fermat: p is validated prime at construction of the run config.
        Gf {
            value: pow_mod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_arithmetic_is_reduced() {
        let p = 32003;
        let a = Gf::new(-1, p);
        assert_eq!(a.value(), p - 1);
        assert_eq!((a * a).value(), 1);
        assert_eq!((a + Gf::new(1, p)).value(), 0);
        let b = Gf::new(1234, p);
        assert!((b * b.inv()).is_one());
    }

    #[test]
    fn rational_inverse() {
        let x = BigRational::from_int(-6, &());
        assert!(Field::is_one(&(x.clone() * x.inv())));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(32003));
        assert!(is_prime_u64(2147483647));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(32001));
        assert!(!is_prime_u64(6700417 * 3));
    }
}
