//! Arithmetic in the prime field F_p and binomial coefficients modulo p.
//!
//! Residues are stored as `u32` values in `[0, p)`. Vectors over F_p used by
//! the rest of the crate are plain `Vec<u32>` slices interpreted against a
//! [`PrimeField`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest modulus accepted by [`PrimeField::new`] (exclusive).
pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("modulus {0} exceeds the supported bound {MAX_PRIME}")]
    TooLarge(u32),
    #[error("division by zero in F_p")]
    DivisionByZero,
    #[error("mixed moduli: {0} and {1}")]
    MixedModuli(u32, u32),
}

/// The prime field F_p for an odd prime p below [`MAX_PRIME`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = FpError;
    fn try_from(p: u32) -> Result<Self, FpError> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
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

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FpError> {
        if p >= MAX_PRIME {
            return Err(FpError::TooLarge(p));
        }
        if p == 2 || !is_prime(p as u64) {
            return Err(FpError::NotOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    pub fn elem(self, value: i64) -> Scalar {
        Scalar {
            value: self.reduce(value),
            field: self,
        }
    }

    pub fn zero(self) -> Scalar {
        self.elem(0)
    }

    pub fn one(self) -> Scalar {
        self.elem(1)
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
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
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32, FpError> {
        if a.is_multiple_of(self.p) {
            return Err(FpError::DivisionByZero);
        }
        // Fermat: a^(p-2)
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    // Vector helpers used throughout the engine.

    /// `acc += c * v`
    #[inline]
    pub fn axpy(self, acc: &mut [u32], c: u32, v: &[u32]) {
        if c == 0 {
            return;
        }
        debug_assert_eq!(acc.len(), v.len());
        for (a, &b) in acc.iter_mut().zip(v) {
            if b != 0 {
                *a = self.add(*a, self.mul(c, b));
            }
        }
    }

    pub fn scale(self, v: &mut [u32], c: u32) {
        for a in v.iter_mut() {
            *a = self.mul(*a, c);
        }
    }

    pub fn negated(self, v: &[u32]) -> Vec<u32> {
        v.iter().map(|&a| self.neg(a)).collect()
    }

    /// C(a, b) mod p by Lucas' theorem.
    pub fn binomial(self, mut a: u64, mut b: u64) -> u32 {
        if b > a {
            return 0;
        }
        let p = self.p as u64;
        let mut acc = 1u32 % self.p;
        while b > 0 {
            let (ad, bd) = (a % p, b % p);
            if bd > ad {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(ad as u32, bd as u32));
            a /= p;
            b /= p;
        }
        acc
    }

    /// C(a, b) mod p for digits `0 <= b <= a < p`, as a product of quotients.
    fn small_binomial(self, a: u32, b: u32) -> u32 {
        let b = b.min(a - b);
        let mut num = 1u32;
        let mut den = 1u32;
        for i in 0..b {
            num = self.mul(num, a - i);
            den = self.mul(den, i + 1);
        }
        // den is a product of integers < p, hence invertible
        self.mul(num, self.inv(den).expect("digit factorial is a unit"))
    }
}

/// An element of a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: PrimeField,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Scalar) -> Result<PrimeField, FpError> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(FpError::MixedModuli(self.field.p, other.field.p))
        }
    }

    pub fn checked_add(self, rhs: Scalar) -> Result<Scalar, FpError> {
        let f = self.same_field(rhs)?;
        Ok(Scalar {
            value: f.add(self.value, rhs.value),
            field: f,
        })
    }

    pub fn checked_sub(self, rhs: Scalar) -> Result<Scalar, FpError> {
        let f = self.same_field(rhs)?;
        Ok(Scalar {
            value: f.sub(self.value, rhs.value),
            field: f,
        })
    }

    pub fn checked_mul(self, rhs: Scalar) -> Result<Scalar, FpError> {
        let f = self.same_field(rhs)?;
        Ok(Scalar {
            value: f.mul(self.value, rhs.value),
            field: f,
        })
    }

    pub fn inv(self) -> Result<Scalar, FpError> {
        Ok(Scalar {
            value: self.field.inv(self.value)?,
            field: self.field,
        })
    }
}

// The operator impls panic on mixed moduli; use the `checked_*` methods when
// operands may come from different fields.
impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

/// Binomial coefficient C(a, b) as an element of `field`.
pub fn lucas_binomial(a: u64, b: u64, field: PrimeField) -> Scalar {
    Scalar {
        value: field.binomial(a, b),
        field,
    }
}
