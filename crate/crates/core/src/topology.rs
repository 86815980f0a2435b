//! Complete intersections `X_n(d_1, ..., d_k)` in complex projective space and
//! their characteristic-class data.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::TruncatedIntSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("complex dimension must be at least 1, got {0}")]
    Dimension(i64),
    #[error("degrees must be at least 1, got {0}")]
    Degree(i64),
    #[error("malformed profile key {0:?}")]
    ProfileKey(String),
}

/// A smooth complete intersection of complex dimension `n` cut out by
/// hypersurfaces of the given degrees. Degrees are kept sorted ascending;
/// degree-1 entries are retained.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompleteIntersection {
    n: u32,
    degrees: Vec<u64>,
}

/// Outcome of the spin test: when spin, the canonical bundle is `O(2m)` and
/// the spin structure comes from the square root `O(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinStatus {
    Spin { twist: i64 },
    NotSpin,
}

impl SpinStatus {
    pub fn is_spin(self) -> bool {
        matches!(self, SpinStatus::Spin { .. })
    }

    pub fn twist(self) -> Option<i64> {
        match self {
            SpinStatus::Spin { twist } => Some(twist),
            SpinStatus::NotSpin => None,
        }
    }
}

/// `2m = -n - k - 1 + sum d_i`; `None` when the right side is odd.
pub fn twist(n: i64, degrees: &[i64]) -> Option<i64> {
    let two_m = -n - degrees.len() as i64 - 1 + degrees.iter().sum::<i64>();
    (two_m % 2 == 0).then_some(two_m / 2)
}

impl CompleteIntersection {
    pub fn new(n: i64, degrees: impl Into<Vec<i64>>) -> Result<Self, TopologyError> {
        if n < 1 || n > u32::MAX as i64 {
            return Err(TopologyError::Dimension(n));
        }
        let mut out = Vec::new();
        for d in degrees.into() {
            if d < 1 {
                return Err(TopologyError::Degree(d));
            }
            out.push(d as u64);
        }
        out.sort_unstable();
        Ok(CompleteIntersection { n: n as u32, degrees: out })
    }

    pub fn from_degrees(n: u32, degrees: &[u64]) -> Result<Self, TopologyError> {
        if n == 0 {
            return Err(TopologyError::Dimension(0));
        }
        if let Some(&bad) = degrees.iter().find(|&&d| d == 0) {
            return Err(TopologyError::Degree(bad as i64));
        }
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable();
        Ok(CompleteIntersection { n, degrees })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    /// The same variety with one more linear equation.
    pub fn padded_with_one(&self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.push(1);
        degrees.sort_unstable();
        CompleteIntersection { n: self.n, degrees }
    }

    /// Drop all degree-1 entries (they cut out a linear subspace and change nothing).
    pub fn without_linear(&self) -> Self {
        CompleteIntersection { n: self.n, degrees: self.degrees.iter().copied().filter(|&d| d != 1).collect() }
    }

    pub fn even_degree_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d % 2 == 0).count()
    }

    pub fn is_spin(&self) -> SpinStatus {
        let signed: Vec<i64> = self.degrees.iter().map(|&d| d as i64).collect();
        match twist(self.n as i64, &signed) {
            Some(m) => SpinStatus::Spin { twist: m },
            None => SpinStatus::NotSpin,
        }
    }

    pub fn total_degree(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }

    /// `sigma_j = sum_i d_i^j`.
    pub fn power_sum(&self, j: u32) -> BigInt {
        self.degrees.iter().map(|&d| num_traits::pow(BigInt::from(d), j as usize)).sum()
    }

    /// Total Chern class `(1+x)^(n+k+1) prod (1 + d_i x)^(-1)` modulo `x^(n+1)`.
    pub fn chern_series(&self) -> TruncatedIntSeries {
        self.class_series(1)
    }

    /// Total Pontryagin class `(1+x^2)^(n+k+1) prod (1 + d_i^2 x^2)^(-1)` modulo `x^(n+1)`.
    pub fn pontryagin_series(&self) -> TruncatedIntSeries {
        self.class_series(2)
    }

    fn class_series(&self, step: usize) -> TruncatedIntSeries {
        let order = self.n as usize;
        let e = (self.n as usize + self.k() + 1) as u64;
        let mut s = TruncatedIntSeries::binomial_power(&BigInt::one(), step, e, order);
        for &d in &self.degrees {
            let c = num_traits::pow(BigInt::from(d), step);
            let inv = TruncatedIntSeries::inverse_one_plus_monomial(&c, step, order);
            s = s.mul(&inv).expect("both factors share the order n");
        }
        s
    }

    /// `chi = d_tot * [x^n] c(TX)`, since `x^n` integrates to the total degree.
    pub fn euler_characteristic(&self) -> BigInt {
        let top = self.chern_series().coefficient(self.n as i64).expect("chern series is truncated at x^n");
        top * self.total_degree()
    }

    pub fn invariant_profile(&self) -> InvariantProfile {
        let k = BigInt::from(self.k());
        let sums = (1..=self.n / 2).map(|j| self.power_sum(2 * j) - &k).collect();
        InvariantProfile { n: self.n, d_tot: self.total_degree(), normalized_power_sums: sums }
    }
}

impl fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "X_{}({})", self.n, ds.join(","))
    }
}

/// Dimension, total degree and the normalized even power sums
/// `sigma_{2j} - k` for `j = 1..=floor(n/2)`.
///
/// For fixed dimension, equal profiles mean equal total degree and equal
/// Pontryagin classes. Appending degree-1 equations leaves the profile unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantProfile {
    pub n: u32,
    pub d_tot: BigInt,
    pub normalized_power_sums: Vec<BigInt>,
}

impl InvariantProfile {
    /// Profiles only carry diffeomorphism information above real dimension 4.
    pub fn is_diffeomorphism_data(&self) -> bool {
        self.n >= 3
    }

    /// Canonical text form `n:d_tot:s_1,s_2,...` (the sums list may be empty).
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sums: Vec<String> = self.normalized_power_sums.iter().map(|s| s.to_string()).collect();
        write!(f, "{}:{}:{}", self.n, self.d_tot, sums.join(","))
    }
}

impl FromStr for InvariantProfile {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TopologyError::ProfileKey(s.to_string());
        let mut parts = s.splitn(3, ':');
        let n: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let d_tot: BigInt = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let rest = parts.next().ok_or_else(bad)?;
        let normalized_power_sums = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        if normalized_power_sums.len() != (n / 2) as usize {
            return Err(bad());
        }
        Ok(InvariantProfile { n, d_tot, normalized_power_sums })
    }
}

impl Serialize for InvariantProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for InvariantProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
