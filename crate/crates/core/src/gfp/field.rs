use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::GfpError;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A validated prime modulus. All residue arithmetic in the crate goes through
/// this type; residues are plain `u32` in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, GfpError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(GfpError::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a non-zero residue.
    ///
    /// # Panics
    /// If `a ≡ 0 (mod p)`.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.0), "zero has no inverse mod {}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }

    /// `(-1)^e` as a residue.
    #[inline]
    pub fn sign(self, odd: bool) -> u32 {
        if odd {
            self.neg(1)
        } else {
            1 % self.0
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: Prime,
}

impl Fp {
    pub fn new(value: i64, p: Prime) -> Self {
        Fp { value: p.reduce(value), p }
    }

    pub fn zero(p: Prime) -> Self {
        Fp { value: 0, p }
    }

    pub fn one(p: Prime) -> Self {
        Fp::new(1, p)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| Fp { value: self.p.inv(self.value), p: self.p })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: self.p.add(self.value, rhs.value), p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: self.p.sub(self.value, rhs.value), p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: self.p.mul(self.value, rhs.value), p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: self.p.neg(self.value), p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(Prime::new(9), Err(GfpError::NotPrime(9)));
    }

    #[test]
    fn field_ops() {
        let p = Prime::new(7).unwrap();
        let a = Fp::new(-3, p);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!((a + Fp::new(3, p)).value(), 0);
        assert_eq!((-a).value(), 3);
        assert!(Fp::zero(p).inv().is_none());
        assert_eq!(p.sign(true), 6);
        assert_eq!(Prime::new(2).unwrap().sign(true), 1);
    }
}
