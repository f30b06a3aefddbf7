//! Arithmetic in the prime field GF(p).
//!
//! Residues are stored canonically in `[0, p)` as `u32`. With `p <= 97`
//! every product of two residues fits comfortably in a `u32`, so no wide
//! intermediate arithmetic is needed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_MODULUS: u32 = 97;

/// A prime field GF(p) with `2 <= p <= MAX_MODULUS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_MODULUS as u64 {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(Field { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Checks that `value` is already a canonical residue.
    pub fn residue(self, value: u64) -> Result<u32> {
        if value < self.p as u64 {
            Ok(value as u32)
        } else {
            Err(Error::CoefficientOutOfRange { value, p: self.p })
        }
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, value: i64) -> u32 {
        value.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    /// All residues `0..p`.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }

    /// Nonzero residues `1..p`.
    pub fn units(self) -> impl Iterator<Item = u32> {
        1..self.p
    }
}

impl TryFrom<u32> for Field {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Field::new(p as u64)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p
    }
}
