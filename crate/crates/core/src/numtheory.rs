//! Exact integer number theory: p-adic valuations, generalized binomial
//! coefficients, and binomial coefficients modulo 2.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("valuation of zero is infinite")]
    ZeroArgument,
    #[error("{0} is not a prime")]
    NotPrime(u64),
}

/// Exponent of the largest power of a prime dividing a nonzero integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Valuation(pub u64);

impl Valuation {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Z2(bool);

impl Z2 {
    pub const ZERO: Z2 = Z2(false);
    pub const ONE: Z2 = Z2(true);

    pub fn new(bit: bool) -> Self {
        Z2(bit)
    }

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }

    pub fn as_u8(self) -> u8 {
        self.0 as u8
    }

    /// Reduction of an exact integer modulo 2.
    pub fn parity(x: &BigInt) -> Self {
        Z2(x.bit(0))
    }

    pub fn parity_i64(x: i64) -> Self {
        Z2(x & 1 == 1)
    }
}

impl From<bool> for Z2 {
    fn from(b: bool) -> Self {
        Z2(b)
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Add for Z2 {
    type Output = Z2;
    fn add(self, rhs: Z2) -> Z2 {
        Z2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl AddAssign for Z2 {
    fn add_assign(&mut self, rhs: Z2) {
        self.0 ^= rhs.0;
    }
}

// Characteristic 2: subtraction and negation coincide with addition.
#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Sub for Z2 {
    type Output = Z2;
    fn sub(self, rhs: Z2) -> Z2 {
        self + rhs
    }
}

impl Neg for Z2 {
    type Output = Z2;
    fn neg(self) -> Z2 {
        self
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Mul for Z2 {
    type Output = Z2;
    fn mul(self, rhs: Z2) -> Z2 {
        Z2(self.0 & rhs.0)
    }
}

impl std::iter::Sum for Z2 {
    fn sum<I: Iterator<Item = Z2>>(iter: I) -> Z2 {
        iter.fold(Z2::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Serialize for Z2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for Z2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(Z2::ZERO),
            1 => Ok(Z2::ONE),
            other => Err(serde::de::Error::custom(format!("expected 0 or 1 for a Z2 value, got {other}"))),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// The `p`-adic valuation of `|m|`.
pub fn nu_p(p: u64, m: &BigInt) -> Result<Valuation, NumTheoryError> {
    if !is_prime(p) {
        return Err(NumTheoryError::NotPrime(p));
    }
    if m.is_zero() {
        return Err(NumTheoryError::ZeroArgument);
    }
    if p == 2 {
        // trailing_zeros is Some for every nonzero value
        return Ok(Valuation(m.trailing_zeros().unwrap_or(0)));
    }
    let p = BigInt::from(p);
    let mut rest = m.abs();
    let mut count = 0;
    loop {
        let (q, r) = (&rest / &p, &rest % &p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        count += 1;
    }
    Ok(Valuation(count))
}

/// 2-adic valuation of a nonzero machine integer.
pub fn nu2_i128(m: i128) -> Result<Valuation, NumTheoryError> {
    if m == 0 {
        return Err(NumTheoryError::ZeroArgument);
    }
    Ok(Valuation(m.trailing_zeros() as u64))
}

/// `nu_2(m!)` by Legendre's floor sum, without forming `m!`.
pub fn nu2_factorial(m: u64) -> Valuation {
    let mut total = 0u64;
    let mut q = m;
    while q > 0 {
        q >>= 1;
        total += q;
    }
    Valuation(total)
}

/// Generalized binomial coefficient `a (a-1) ... (a-b+1) / b!` for any integer `a`.
///
/// For `0 <= a < b` the falling factorial passes through zero, so the result is 0.
/// Negative `a` gives `(-1)^b C(b-a-1, b)`.
pub fn binomial(a: i64, b: u64) -> BigInt {
    let mut acc = BigInt::one();
    let top = BigInt::from(a);
    for i in 0..b {
        // the running product of i+1 consecutive integers is divisible by (i+1)!
        acc *= &top - BigInt::from(i);
        acc /= BigInt::from(i + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `binomial(a, b) mod 2` using only bit operations.
///
/// For `a >= 0` this is Lucas' theorem: the coefficient is odd iff the binary
/// digits of `b` form a submask of those of `a`. Negative `a` is reduced
/// through `C(a, b) = (-1)^b C(b-a-1, b)`.
#[inline]
pub fn binomial_mod2(a: i64, b: u64) -> Z2 {
    let top: u128 = if a >= 0 {
        a as u128
    } else {
        // b - a - 1 = b + |a| - 1 >= b, fits comfortably in u128
        b as u128 + a.unsigned_abs() as u128 - 1
    };
    Z2((b as u128) & !top == 0)
}

/// Parity of `binomial(a, b)` for arbitrary-precision `a`.
pub fn binomial_mod2_big(a: &BigInt, b: u64) -> Z2 {
    if let Some(small) = a.to_i64() {
        return binomial_mod2(small, b);
    }
    let top = if a.is_negative() { BigInt::from(b) - a - 1 } else { a.clone() };
    // b fits in 64 bits, so only the low 64 bits of `top` matter for the submask test
    let mut bits = b;
    let mut i = 0;
    while bits != 0 {
        if bits & 1 == 1 && !top.bit(i) {
            return Z2::ZERO;
        }
        bits >>= 1;
        i += 1;
    }
    Z2::ONE
}
