//! Â-genus of even-dimensional spin complete intersections.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::binomial;
use crate::series::hilbert_series;
use crate::topology::twist;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AhatError {
    #[error("dimension must be even and at least 2, got {0}")]
    Dimension(i64),
    #[error("degrees must be at least 1, got {0}")]
    Degree(u64),
    #[error("an even number of degrees are even, so X_{n}(...) is not spin")]
    NotSpin { n: i64 },
    #[error("Â backends disagree: sign sum {sign_sum}, Hilbert {hilbert}")]
    BackendDisagreement { sign_sum: BigInt, hilbert: BigInt },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AhatBackend {
    SignSum,
    Hilbert,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AhatValue {
    pub value: BigInt,
    pub backend: AhatBackend,
}

fn check(n: i64, degrees: &[u64]) -> Result<i64, AhatError> {
    if n < 2 || n % 2 != 0 {
        return Err(AhatError::Dimension(n));
    }
    if let Some(&d) = degrees.iter().find(|&&d| d == 0) {
        return Err(AhatError::Degree(d));
    }
    let signed: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    twist(n, &signed).ok_or(AhatError::NotSpin { n })
}

/// Signed sum `sum_eps sgn(eps) C((n+k-1 + eps.d)/2, n+k)` over all `2^k`
/// sign patterns, in exact integer arithmetic.
pub fn ahat_sign_sum(n: i64, degrees: &[u64]) -> Result<AhatValue, AhatError> {
    check(n, degrees)?;
    let k = degrees.len();
    assert!(k < 64, "sign-pattern enumeration supports k < 64, got {k}");
    let bottom = n + k as i64;
    let mut total = BigInt::zero();
    for mask in 0u64..(1u64 << k) {
        let mut dot = 0i64;
        for (i, &d) in degrees.iter().enumerate() {
            if mask >> i & 1 == 1 {
                dot -= d as i64;
            } else {
                dot += d as i64;
            }
        }
        // spin parity makes bottom - 1 + dot even
        let term = binomial((bottom - 1 + dot) / 2, bottom as u64);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(AhatValue { value: total, backend: AhatBackend::SignSum })
}

/// Twice the `t^m` coefficient of the Hilbert series, `2m = -n-k-1+sum d_i` (zero for `m < 0`).
pub fn ahat_hilbert(n: i64, degrees: &[u64]) -> Result<AhatValue, AhatError> {
    let m = check(n, degrees)?;
    let value = if m < 0 {
        BigInt::zero()
    } else {
        let s = hilbert_series(n, degrees, m as usize).expect("n >= 2 keeps the exponent positive");
        s.coefficient(m).expect("series truncated at m") * 2
    };
    Ok(AhatValue { value, backend: AhatBackend::Hilbert })
}

/// Both backends, required to agree.
pub fn ahat(n: i64, degrees: &[u64]) -> Result<BigInt, AhatError> {
    let a = ahat_sign_sum(n, degrees)?;
    let b = ahat_hilbert(n, degrees)?;
    if a.value != b.value {
        return Err(AhatError::BackendDisagreement { sign_sum: a.value, hilbert: b.value });
    }
    Ok(a.value)
}

/// Whether a value satisfies the evenness constraint `Â = 2 dim H^0`.
pub fn is_even(value: &BigInt) -> bool {
    !value.bit(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_sum_examples() {
        assert_eq!(ahat_sign_sum(2, &[4]).unwrap().value, BigInt::from(2));
        assert_eq!(ahat_sign_sum(2, &[2]).unwrap().value, BigInt::zero());
        assert_eq!(ahat_sign_sum(2, &[6]).unwrap().value, BigInt::from(8));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(ahat_hilbert(2, &[4]).unwrap().value, BigInt::from(2));
        assert_eq!(ahat_hilbert(4, &[2]).unwrap().value, BigInt::zero());
        assert_eq!(ahat_hilbert(2, &[6]).unwrap().value, BigInt::from(8));
    }

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(ahat(3, &[4]), Err(AhatError::Dimension(3)));
        assert_eq!(ahat(0, &[4]), Err(AhatError::Dimension(0)));
        assert_eq!(ahat(2, &[3]), Err(AhatError::NotSpin { n: 2 }));
        assert_eq!(ahat(2, &[2, 2]), Err(AhatError::NotSpin { n: 2 }));
        assert_eq!(ahat(2, &[0, 4]), Err(AhatError::Degree(0)));
    }

    #[test]
    fn padding_with_linear_equation() {
        for n in [2i64, 4, 6] {
            for d in [vec![4u64], vec![6], vec![2, 3], vec![3, 4, 5], vec![8]] {
                let mut padded = d.clone();
                padded.push(1);
                assert_eq!(ahat(n, &d), ahat(n, &padded), "n = {n}, d = {d:?}");
            }
        }
    }

    #[test]
    fn values_are_even() {
        for n in [2i64, 4, 6] {
            for a in 1..=10u64 {
                for b in a..=10 {
                    if let Ok(v) = ahat(n, &[a, b, 2]) {
                        assert!(is_even(&v), "n = {n}: {v}");
                    }
                }
            }
        }
    }
}
