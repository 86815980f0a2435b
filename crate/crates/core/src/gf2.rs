//! Bit-packed polynomials over the field with two elements.

use std::fmt;

use crate::numtheory::Z2;

const WORD: usize = 64;

/// Polynomial over Z2 stored as packed little-endian bits (bit `i` is the coefficient of `X^i`).
///
/// Trailing zero words are always trimmed so that equality is structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    pub fn monomial(exp: usize) -> Self {
        let mut p = Gf2Poly::zero();
        p.set(exp, Z2::ONE);
        p
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Gf2Poly::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    #[inline]
    pub fn coeff(&self, exp: usize) -> Z2 {
        match self.words.get(exp / WORD) {
            Some(w) => Z2::new((w >> (exp % WORD)) & 1 == 1),
            None => Z2::ZERO,
        }
    }

    /// Coefficient at a possibly negative exponent (zero there).
    pub fn coeff_at(&self, exp: i64) -> Z2 {
        if exp < 0 {
            Z2::ZERO
        } else {
            self.coeff(exp as usize)
        }
    }

    pub fn set(&mut self, exp: usize, value: Z2) {
        if self.coeff(exp) != value {
            self.flip(exp);
        }
    }

    pub fn flip(&mut self, exp: usize) {
        let idx = exp / WORD;
        if idx >= self.words.len() {
            self.words.resize(idx + 1, 0);
        }
        self.words[idx] ^= 1u64 << (exp % WORD);
        self.trim();
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let tz = bits.trailing_zeros() as usize;
                out.push(i * WORD + tz);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn add_assign(&mut self, other: &Gf2Poly) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.trim();
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Multiply by `X^shift`.
    pub fn shl(&self, shift: usize) -> Gf2Poly {
        if self.is_zero() {
            return Gf2Poly::zero();
        }
        let (word_shift, bit_shift) = (shift / WORD, shift % WORD);
        let mut words = vec![0u64; self.words.len() + word_shift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + word_shift] ^= w << bit_shift;
            if bit_shift != 0 {
                words[i + word_shift + 1] ^= w >> (WORD - bit_shift);
            }
        }
        let mut out = Gf2Poly { words };
        out.trim();
        out
    }

    /// Drop every term of degree greater than `max_degree`.
    pub fn truncate(&mut self, max_degree: usize) {
        let keep = max_degree / WORD + 1;
        if self.words.len() > keep {
            self.words.truncate(keep);
        }
        if let Some(last) = self.words.get_mut(keep - 1) {
            let used = max_degree % WORD + 1;
            if used < WORD {
                *last &= (1u64 << used) - 1;
            }
        }
        self.trim();
    }

    /// Multiply in place by `1 + X^d`, keeping only degrees `<= max_degree`.
    pub fn mul_one_plus_monomial(&mut self, d: usize, max_degree: usize) {
        let shifted = self.shl(d);
        self.add_assign(&shifted);
        self.truncate(max_degree);
    }

    /// Carry-less product, truncated at `max_degree` when given.
    pub fn mul_truncated(&self, other: &Gf2Poly, max_degree: Option<usize>) -> Gf2Poly {
        let mut acc = Gf2Poly::zero();
        let (small, large) = if self.words.len() <= other.words.len() { (self, other) } else { (other, self) };
        for e in small.support() {
            if let Some(cap) = max_degree {
                if e > cap {
                    break;
                }
            }
            let mut term = large.shl(e);
            if let Some(cap) = max_degree {
                term.truncate(cap);
            }
            acc.add_assign(&term);
        }
        acc
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        self.mul_truncated(other, None)
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl Gf2Poly {
    /// Render with a chosen variable name, highest degree first, e.g. `T^4 + T^2 + 1`.
    pub fn display_with(&self, var: &str) -> String {
        let support = self.support();
        if support.is_empty() {
            return "0".to_string();
        }
        support
            .iter()
            .rev()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("X"))
    }
}
