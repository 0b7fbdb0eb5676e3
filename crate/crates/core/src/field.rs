//! Arithmetic in a prime field GF(p).

use crate::error::{Error, Result};

/// Coefficient representative, always in `[0, modulus)`.
pub type Coeff = u32;

/// Largest 16-bit prime. Products of two reduced elements stay far below
/// `u64::MAX`, which lets the dense kernels delay reductions.
pub const DEFAULT_PRIME: u32 = 65521;

/// A prime field `Z/pZ` with `3 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            modulus: DEFAULT_PRIME,
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(modulus: u32) -> Result<Self> {
        if !(3..(1 << 31)).contains(&modulus) || !is_prime(modulus) {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(PrimeField { modulus })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(&self, v: i64) -> Coeff {
        v.rem_euclid(self.modulus as i64) as Coeff
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> Coeff {
        (v % self.modulus as u64) as Coeff
    }

    #[inline]
    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a as u64 + b as u64;
        let m = self.modulus as u64;
        (if s >= m { s - m } else { s }) as Coeff
    }

    #[inline]
    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.modulus as u64) as Coeff
    }

    pub fn pow(&self, mut base: Coeff, mut exp: u64) -> Coeff {
        let mut acc: Coeff = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat. Panics on zero.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero in GF({})", self.modulus);
        self.pow(a, self.modulus as u64 - 2)
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: Coeff) -> i64 {
        if a as u64 > self.modulus as u64 / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }

    /// Number of `(p-1)^2` products that can be summed in a `u64` on top of
    /// a reduced value without overflow.
    pub(crate) fn lazy_budget(&self) -> u64 {
        let m = self.modulus as u64 - 1;
        (u64::MAX - m) / (m * m)
    }
}
