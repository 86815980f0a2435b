//! The alpha invariant `alpha_n(d)` in Z2.
//!
//! Four independent backends compute the invariant of a spin complete
//! intersection of dimension `n = 1 (mod 4)`:
//!
//! * [`alpha_sign_sum`]: a sum of `2^k` binomial coefficients over sign patterns,
//!   evaluated mod 2 with the falling-factorial convention for negative upper arguments;
//! * [`alpha_hilbert`]: parity of the `t^m` coefficient of the Hilbert series,
//!   computed directly over Z2 with packed bits;
//! * [`alpha_partition_sum`]: a sum over compositions of `n + 1` into `k` parts;
//! * [`alpha_fr`]: the `T^(n+1)` coefficient of `f_{d_1}(T) ... f_{d_k}(T)`.
//!
//! All of them also make sense for arbitrary integers `n` and `d_i`
//! ([`alpha_abstract`]), where `alpha_n(d) = 0` for `n < -1` and the `t^m`
//! coefficient is taken to be zero when `m < 0`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::Gf2Poly;
use crate::numtheory::{binomial_mod2, nu_p, Z2};
use crate::series::TruncatedIntSeries;
use crate::topology::twist;

/// Largest `k` for which the dispatcher runs the `2^k` sign-pattern sum.
pub const SIGN_SUM_MAX_K: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphaError {
    #[error("dimension {0} is not 1 mod 4; the alpha invariant is a Z2 mod-2 index only there (use abstract mode)")]
    DimensionNotOneModFour(i64),
    #[error("degrees must be at least 1 in geometric mode, got {0}")]
    NonPositiveDegree(i64),
    #[error("an odd number of degrees are even, so X_{n}(...) has no distinguished spin structure")]
    NotSpin { n: i64 },
    #[error("nu_2(d_tot) = 1: no distinguished spin structure on the curve")]
    NoDistinguishedSpin,
    #[error("the two printed forms of the composition sum disagree for n = {n}, d = {degrees:?}")]
    PartitionFormsDisagree { n: i64, degrees: Vec<i64> },
    #[error("backend disagreement for n = {n}, d = {degrees:?}: {values:?}")]
    BackendDisagreement { n: i64, degrees: Vec<i64>, values: Vec<AlphaValue> },
}

impl AlphaError {
    /// True for errors that signal an implementation bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, AlphaError::BackendDisagreement { .. } | AlphaError::PartitionFormsDisagree { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    SignSum,
    Hilbert,
    PartitionSum,
    Fr,
    Abstract,
    CurveClosedForm,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::SignSum => "sign-sum",
            Backend::Hilbert => "hilbert",
            Backend::PartitionSum => "partition-sum",
            Backend::Fr => "fr",
            Backend::Abstract => "abstract",
            Backend::CurveClosedForm => "curve-closed-form",
        })
    }
}

/// A value of the invariant tagged with the formula that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaValue {
    pub value: Z2,
    pub backend: Backend,
}

impl AlphaValue {
    fn new(value: Z2, backend: Backend) -> Self {
        AlphaValue { value, backend }
    }
}

// ---------------------------------------------------------------------------
// f_r polynomials

/// `f_r(T)` over Z2, defined by `f_0 = 0`, `f_1 = 1`, `f_r = T f_{r-1} + f_{r-2}`.
///
/// For odd `r` only even powers of `T` occur, for even `r` only odd powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrPolynomial {
    pub r: u64,
    pub poly: Gf2Poly,
}

impl FrPolynomial {
    /// Closed form `sum_j C(r + j, 2j + 1) T^j` (mod 2).
    pub fn closed_form(r: u64) -> Self {
        let mut poly = Gf2Poly::zero();
        for j in 0..r {
            if binomial_mod2((r + j) as i64, 2 * j + 1).is_one() {
                poly.flip(j as usize);
            }
        }
        FrPolynomial { r, poly }
    }

    /// Only even exponents for odd `r`, only odd exponents for even `r`.
    pub fn has_parity_structure(&self) -> bool {
        let wanted = if self.r % 2 == 1 { 0 } else { 1 };
        self.poly.support().iter().all(|e| e % 2 == wanted)
    }
}

impl fmt::Display for FrPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_with("T"))
    }
}

/// `f_r(T)` by the three-term recursion.
pub fn fr_polynomial(r: u64) -> FrPolynomial {
    fr_polynomial_truncated(r, None)
}

fn fr_polynomial_truncated(r: u64, cap: Option<usize>) -> FrPolynomial {
    let (mut prev, mut cur) = (Gf2Poly::zero(), Gf2Poly::one());
    if r == 0 {
        return FrPolynomial { r, poly: prev };
    }
    for _ in 1..r {
        let mut next = cur.shl(1);
        next.add_assign(&prev);
        if let Some(cap) = cap {
            next.truncate(cap);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    FrPolynomial { r, poly: cur }
}

// ---------------------------------------------------------------------------
// Backends

/// Symmetric sign sum `sum_eps C((n+k+1 + eps.d)/2, n+k+1)` mod 2 over all `2^k` patterns.
///
/// The walk visits sign patterns in Gray-code order so `eps.d` changes by one
/// term per step. Panics for `k >= 64`.
pub fn alpha_sign_sum(n: i64, degrees: &[u64]) -> AlphaValue {
    let value = sign_sum_core(n, degrees, false);
    AlphaValue::new(value, Backend::SignSum)
}

/// Half-size variant with `eps_1 = +1` fixed: `sum C((n+k-1 + eps.d)/2, n+k)` mod 2.
///
/// Needs `k >= 1`; the empty multi-degree has no first sign to fix.
pub fn alpha_sign_sum_half(n: i64, degrees: &[u64]) -> Option<AlphaValue> {
    if degrees.is_empty() {
        return None;
    }
    Some(AlphaValue::new(sign_sum_core(n, degrees, true), Backend::SignSum))
}

fn sign_sum_core(n: i64, degrees: &[u64], fix_first: bool) -> Z2 {
    if n < -1 {
        return Z2::ZERO;
    }
    let k = degrees.len();
    assert!(k < 64, "sign-pattern enumeration supports k < 64, got {k}");
    let (bottom, free) = if fix_first { (n + k as i64, &degrees[1..]) } else { (n + k as i64 + 1, degrees) };
    // with eps_1 fixed the upper argument is (N - 1 + d_1 + eps'.d') / 2
    let base = if fix_first { bottom - 1 + degrees[0] as i64 } else { bottom };
    let mut dot: i64 = free.iter().map(|&d| d as i64).sum();
    if (base + dot).rem_euclid(2) == 1 {
        return Z2::ZERO;
    }
    let bottom = bottom as u64;
    let mut negative = vec![false; free.len()];
    let mut acc = binomial_mod2((base + dot) / 2, bottom);
    for step in 1u64..(1u64 << free.len()) {
        let i = step.trailing_zeros() as usize;
        let d = free[i] as i64;
        dot += if negative[i] { 2 * d } else { -2 * d };
        negative[i] = !negative[i];
        acc += binomial_mod2((base + dot) / 2, bottom);
    }
    acc
}

/// Parity of the `t^m` coefficient of `(1-t)^(-(n+k+1)) prod (1 - t^d_i)`, with `2m = -n-k-1+sum d_i`.
///
/// Works over Z2 throughout: the product of `(1 + t^d_i)` is a packed bit
/// polynomial and each coefficient of `(1-t)^(-N)` comes from Lucas' theorem.
pub fn alpha_hilbert(n: i64, degrees: &[u64]) -> AlphaValue {
    AlphaValue::new(hilbert_parity(n, degrees), Backend::Hilbert)
}

fn hilbert_parity(n: i64, degrees: &[u64]) -> Z2 {
    if n < -1 {
        return Z2::ZERO;
    }
    let signed: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    let m = match twist(n, &signed) {
        Some(m) if m >= 0 => m as usize,
        _ => return Z2::ZERO,
    };
    let big_n = n + degrees.len() as i64 + 1;
    let mut product = Gf2Poly::one();
    for &d in degrees {
        product.mul_one_plus_monomial(d as usize, m);
        if product.is_zero() {
            return Z2::ZERO;
        }
    }
    // [t^j] (1-t)^(-N) = C(j + N - 1, j)
    product
        .support()
        .into_iter()
        .map(|e| {
            let j = (m - e) as i64;
            binomial_mod2(j + big_n - 1, j as u64)
        })
        .sum()
}

/// Sum over compositions `j_1 + ... + j_k = n + 1` of `prod C(d_i + j_i, 2 j_i + 1)` mod 2.
///
/// The restricted form, which keeps only `j_i + d_i` odd and uses
/// `C((d_i + j_i - 1)/2, j_i)`, is evaluated alongside and must agree.
/// Degrees may be any integers.
pub fn alpha_partition_sum(n: i64, degrees: &[i64]) -> Result<AlphaValue, AlphaError> {
    let total = n + 1;
    if total < 0 {
        return Ok(AlphaValue::new(Z2::ZERO, Backend::PartitionSum));
    }
    let total = total as usize;
    let unrestricted: Vec<Vec<Z2>> =
        degrees.iter().map(|&d| (0..=total as i64).map(|j| binomial_mod2(d + j, 2 * j as u64 + 1)).collect()).collect();
    let restricted: Vec<Vec<Z2>> = degrees
        .iter()
        .map(|&d| {
            (0..=total as i64)
                .map(|j| {
                    if (d + j).rem_euclid(2) == 1 {
                        binomial_mod2((d + j - 1).div_euclid(2), j as u64)
                    } else {
                        Z2::ZERO
                    }
                })
                .collect()
        })
        .collect();
    let a = composition_sum(&unrestricted, total);
    let b = composition_sum(&restricted, total);
    if a != b {
        return Err(AlphaError::PartitionFormsDisagree { n, degrees: degrees.to_vec() });
    }
    Ok(AlphaValue::new(a, Backend::PartitionSum))
}

/// Enumerate compositions of `total` into `tables.len()` nonnegative parts and
/// sum the products `prod tables[i][j_i]`, skipping branches with a zero factor.
fn composition_sum(tables: &[Vec<Z2>], total: usize) -> Z2 {
    fn walk(tables: &[Vec<Z2>], remaining: usize) -> Z2 {
        match tables {
            [] => Z2::from(remaining == 0),
            [last] => last[remaining],
            [first, rest @ ..] => {
                let mut acc = Z2::ZERO;
                for (j, c) in first.iter().enumerate().take(remaining + 1) {
                    if c.is_one() {
                        acc += walk(rest, remaining - j);
                    }
                }
                acc
            }
        }
    }
    walk(tables, total)
}

/// Coefficient of `T^(n+1)` in `f_{d_1}(T) ... f_{d_k}(T)`.
pub fn alpha_fr(n: i64, degrees: &[u64]) -> AlphaValue {
    let target = n + 1;
    if target < 0 {
        return AlphaValue::new(Z2::ZERO, Backend::Fr);
    }
    let cap = target as usize;
    let mut product = Gf2Poly::one();
    for &d in degrees {
        let f = fr_polynomial_truncated(d, Some(cap));
        product = product.mul_truncated(&f.poly, Some(cap));
        if product.is_zero() {
            break;
        }
    }
    AlphaValue::new(product.coeff(cap), Backend::Fr)
}

/// The abstract invariant for any integer `n` and any integer degrees.
///
/// Zero when `n < -1`, when some `d_i = 0`, or when `-n-k-1+sum d_i` is odd.
/// Otherwise the signs of the degrees are dropped and the result is the parity
/// of the `t^m` coefficient of `K_n(d) = (1-t)^(-(n+k+1)) prod (1 + t^d_i)`,
/// computed with exact integers (zero when `m < 0`).
pub fn alpha_abstract(n: i64, degrees: &[i64]) -> AlphaValue {
    let zero = AlphaValue::new(Z2::ZERO, Backend::Abstract);
    if n < -1 || degrees.contains(&0) {
        return zero;
    }
    if twist(n, degrees).is_none() {
        return zero;
    }
    let magnitudes: Vec<i64> = degrees.iter().map(|d| d.abs()).collect();
    let m = match twist(n, &magnitudes) {
        Some(m) if m >= 0 => m as usize,
        _ => return zero,
    };
    let e = (n + degrees.len() as i64 + 1) as u64;
    let mut k_series = TruncatedIntSeries::geom_inverse_pow(e, m);
    for &d in &magnitudes {
        k_series = mul_one_plus_monomial(&k_series, d as usize);
    }
    let coeff = k_series.coefficient(m as i64).expect("series truncated at m");
    AlphaValue::new(Z2::parity(&coeff), Backend::Abstract)
}

fn mul_one_plus_monomial(s: &TruncatedIntSeries, d: usize) -> TruncatedIntSeries {
    let mut coeffs: Vec<BigInt> = s.coeffs().to_vec();
    for j in (0..coeffs.len()).rev() {
        if j >= d {
            let lower = s.coeffs()[j - d].clone();
            coeffs[j] += lower;
        }
    }
    TruncatedIntSeries::from_coeffs(coeffs)
}

/// Closed form on curves (`n = 1`) in terms of the total degree alone.
///
/// Requires an even number of even degrees. Returns 0 if `nu_2(d_tot) >= 3`,
/// 1 if it equals 2, and for odd `d_tot`, 0 exactly when `d_tot = ±1 (mod 8)`.
pub fn alpha_n1_closed(degrees: &[u64]) -> Result<AlphaValue, AlphaError> {
    if let Some(&d) = degrees.iter().find(|&&d| d == 0) {
        return Err(AlphaError::NonPositiveDegree(d as i64));
    }
    if degrees.iter().filter(|&&d| d % 2 == 0).count() % 2 == 1 {
        return Err(AlphaError::NoDistinguishedSpin);
    }
    let d_tot: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    let nu = nu_p(2, &d_tot).expect("product of positive degrees is nonzero").value();
    let value = match nu {
        0 => {
            let residue = (&d_tot % 8u32).iter_u32_digits().next().unwrap_or(0);
            Z2::from(residue == 3 || residue == 5)
        }
        1 => return Err(AlphaError::NoDistinguishedSpin),
        2 => Z2::ONE,
        _ => Z2::ZERO,
    };
    Ok(AlphaValue::new(value, Backend::CurveClosedForm))
}

// ---------------------------------------------------------------------------
// Dispatcher

/// Common value of every backend that ran, plus each backend's own result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub n: i64,
    pub degrees: Vec<i64>,
    pub value: Z2,
    /// `m` with `2m = -n-k-1+sum d_i`, when that is an integer.
    pub twist: Option<i64>,
    pub backends: Vec<AlphaValue>,
}

fn agree(n: i64, degrees: Vec<i64>, values: Vec<AlphaValue>) -> Result<AlphaReport, AlphaError> {
    let first = values[0].value;
    if values.iter().any(|v| v.value != first) {
        return Err(AlphaError::BackendDisagreement { n, degrees, values });
    }
    let twist = twist(n, &degrees);
    Ok(AlphaReport { n, degrees, value: first, twist, backends: values })
}

/// Alpha invariant of the spin complete intersection `X_n(d)`, `n = 1 (mod 4)`.
///
/// Runs every backend (the sign sum only when `k <= SIGN_SUM_MAX_K`, the curve
/// closed form when `n = 1`) and fails loudly if any two disagree.
pub fn alpha(n: i64, degrees: &[u64]) -> Result<AlphaReport, AlphaError> {
    if n < 1 || n % 4 != 1 {
        return Err(AlphaError::DimensionNotOneModFour(n));
    }
    if degrees.contains(&0) {
        return Err(AlphaError::NonPositiveDegree(0));
    }
    if degrees.iter().filter(|&&d| d % 2 == 0).count() % 2 == 1 {
        return Err(AlphaError::NotSpin { n });
    }
    let signed: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    let mut values = Vec::with_capacity(5);
    if degrees.len() <= SIGN_SUM_MAX_K {
        values.push(alpha_sign_sum(n, degrees));
    }
    values.push(alpha_hilbert(n, degrees));
    values.push(alpha_partition_sum(n, &signed)?);
    values.push(alpha_fr(n, degrees));
    if n == 1 {
        values.push(alpha_n1_closed(degrees)?);
    }
    agree(n, signed, values)
}

/// Abstract invariant for arbitrary integers, cross-checked by every backend
/// that extends to this setting (after dropping degree signs where needed).
pub fn alpha_abstract_checked(n: i64, degrees: &[i64]) -> Result<AlphaReport, AlphaError> {
    let magnitudes: Vec<u64> = degrees.iter().map(|d| d.unsigned_abs()).collect();
    let mut values = vec![alpha_abstract(n, degrees)];
    if degrees.len() <= SIGN_SUM_MAX_K {
        values.push(alpha_sign_sum(n, &magnitudes));
    }
    values.push(alpha_hilbert(n, &magnitudes));
    values.push(alpha_partition_sum(n, degrees)?);
    values.push(alpha_fr(n, &magnitudes));
    agree(n, degrees.to_vec(), values)
}
