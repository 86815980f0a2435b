//! Truncated power series with exact integer coefficients.
//!
//! One record serves every variable used in the crate: `t` for Hilbert series
//! and `x` for characteristic classes. Division is not provided; inverses of
//! `1 + c x^s` are expanded as alternating geometric series.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gf2::Gf2Poly;
use crate::numtheory::binomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("coefficient t^{requested} requested from a series truncated at order {order}")]
    BeyondTruncation { requested: i64, order: usize },
    #[error("negative exponent {0} for (1-t)^(-e)")]
    NegativeExponent(i64),
}

/// Power series `c_0 + c_1 t + ... + c_N t^N` with all higher terms discarded.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedIntSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedIntSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedIntSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Build from explicit coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector, which has no valid order.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least the constant term");
        TruncatedIntSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = BigInt::from(c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^j`; zero for negative `j`, an error past the truncation order.
    pub fn coefficient(&self, j: i64) -> Result<BigInt, SeriesError> {
        if j < 0 {
            return Ok(BigInt::zero());
        }
        self.coeffs.get(j as usize).cloned().ok_or(SeriesError::BeyondTruncation { requested: j, order: self.order() })
    }

    /// `(1 - t)^(-e)`: the coefficient of `t^j` is `C(j + e - 1, j)`.
    pub fn geom_inverse_pow(e: u64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e == 0 {
            s.coeffs[0] = BigInt::one();
            return s;
        }
        // C(j+e-1, j) = C(j+e-2, j-1) * (j+e-1) / j
        let mut c = BigInt::one();
        for j in 0..=order {
            if j > 0 {
                c = c * BigInt::from(j as u64 + e - 1) / BigInt::from(j as u64);
            }
            s.coeffs[j] = c.clone();
        }
        s
    }

    /// `(1 + c t^step)^e`, truncated.
    pub fn binomial_power(c: &BigInt, step: usize, e: u64, order: usize) -> Self {
        assert!(step > 0, "step must be positive");
        let mut s = Self::zero(order);
        let mut c_pow = BigInt::one();
        for i in 0..=e {
            let exp = i as usize * step;
            if exp > order {
                break;
            }
            s.coeffs[exp] = binomial(e as i64, i) * &c_pow;
            c_pow *= c;
        }
        s
    }

    /// `(1 + c t^step)^(-1) = sum_i (-c)^i t^(i step)`, truncated.
    pub fn inverse_one_plus_monomial(c: &BigInt, step: usize, order: usize) -> Self {
        assert!(step > 0, "step must be positive");
        let mut s = Self::zero(order);
        let neg = -c;
        let mut term = BigInt::one();
        let mut exp = 0;
        while exp <= order {
            s.coeffs[exp] = term.clone();
            term *= &neg;
            exp += step;
        }
        s
    }

    /// Cauchy product, truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiply in place by `1 - t^d`.
    pub fn mul_one_minus_monomial(&mut self, d: usize) {
        if d == 0 {
            // 1 - t^0 = 0
            self.coeffs.iter_mut().for_each(|c| *c = BigInt::zero());
            return;
        }
        for j in (d..self.coeffs.len()).rev() {
            let lower = self.coeffs[j - d].clone();
            self.coeffs[j] -= lower;
        }
    }

    /// Coefficientwise reduction modulo 2.
    pub fn to_gf2(&self) -> Gf2Poly {
        Gf2Poly::from_exponents(self.coeffs.iter().enumerate().filter(|(_, c)| c.bit(0)).map(|(j, _)| j))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// Hilbert series `(1-t)^(-(n+k+1)) (1-t^d_1) ... (1-t^d_k)` of `X_n(d)`, truncated at `order`.
///
/// `n >= -1` is accepted so the same product serves the abstract invariant.
pub fn hilbert_series(n: i64, degrees: &[u64], order: usize) -> Result<TruncatedIntSeries, SeriesError> {
    let e = n + degrees.len() as i64 + 1;
    if e < 0 {
        return Err(SeriesError::NegativeExponent(e));
    }
    let mut s = TruncatedIntSeries::geom_inverse_pow(e as u64, order);
    for &d in degrees {
        s.mul_one_minus_monomial(d as usize);
    }
    Ok(s)
}

impl fmt::Debug for TruncatedIntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedIntSeries{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for TruncatedIntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
