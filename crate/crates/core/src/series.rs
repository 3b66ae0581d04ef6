//! Dense truncated power series over the rationals, and partition
//! enumeration.
//!
//! A [`RationalSeries`] of order `N` holds the coefficients of
//! `x^0, …, x^N`; everything above is `O(x^{N+1})`. Binary operations demand
//! equal orders and fail otherwise, so callers truncate explicitly.

use std::ops::Index;

use rug::{Integer, Rational};

use crate::bigmath::factorial;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    coeffs: Vec<Rational>,
}

impl RationalSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        RationalSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        RationalSeries {
            coeffs: vec![Rational::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::from(1);
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        RationalSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Drops (or zero-pads) to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Rational::new());
        RationalSeries { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(RationalSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * s)).collect(),
        }
    }

    /// Cauchy product `c_n = Σ_{k≤n} a_k b_{n-k}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                out.coeffs[i + j] += Rational::from(a * b);
            }
        }
        Ok(out)
    }

    /// Formal exponential; requires a zero constant term.
    ///
    /// Uses `n E_n = Σ_{k=1}^{n} k a_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].cmp0().is_ne() {
            return Err(Error::ConstantTerm {
                expected: "0",
                found: self.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        let mut e = Vec::with_capacity(order + 1);
        e.push(Rational::from(1));
        for n in 1..=order {
            let mut acc = Rational::new();
            for k in 1..=n {
                if self.coeffs[k].cmp0().is_ne() {
                    acc += Rational::from(&self.coeffs[k] * &e[n - k]) * k as u32;
                }
            }
            e.push(acc / n as u32);
        }
        Ok(RationalSeries { coeffs: e })
    }

    /// Formal logarithm; requires constant term one.
    ///
    /// Uses `n L_n = n a_n - Σ_{k=1}^{n-1} k L_k a_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != 1 {
            return Err(Error::ConstantTerm {
                expected: "1",
                found: self.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        let mut l = vec![Rational::new(); order + 1];
        for n in 1..=order {
            let mut acc = Rational::from(&self.coeffs[n] * n as u32);
            for k in 1..n {
                if self.coeffs[n - k].cmp0().is_ne() {
                    acc -= Rational::from(&l[k] * &self.coeffs[n - k]) * k as u32;
                }
            }
            l[n] = acc / n as u32;
        }
        Ok(RationalSeries { coeffs: l })
    }

    /// `a^e = exp(e · log a)` for a series with constant term one.
    pub fn pow(&self, e: &Rational) -> Result<Self> {
        self.log()?.scale(e).exp()
    }
}

impl Index<usize> for RationalSeries {
    type Output = Rational;

    fn index(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }
}

/// One solution of `Σ_i (i+ℓ) k_i = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTerm {
    /// `k_1, …, k_n` (index 0 holds `k_1`).
    pub multiplicities: Vec<u32>,
    /// `1 / (k_1! k_2! ⋯ k_n!)`.
    pub weight: Rational,
}

impl PartitionTerm {
    /// `Σ k_i`.
    pub fn total_parts(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// `(i, k_i)` for the nonzero multiplicities, `i` counted from one.
    pub fn parts(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i + 1, k))
    }
}

/// Iterator over the multiplicity vectors `(k_1, …, k_n)` with
/// `Σ_i (i+ℓ) k_i = n`, in descending lexicographic order.
///
/// ```
/// use barnes_core::series::Partitions;
/// let all: Vec<Vec<u32>> = Partitions::new(3, 0).map(|t| t.multiplicities).collect();
/// assert_eq!(all, vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
/// ```
pub struct Partitions<F = fn(usize) -> bool> {
    n: u32,
    ell: u32,
    allowed: F,
    k: Vec<u32>,
    started: bool,
    done: bool,
}

impl Partitions {
    pub fn new(n: u32, ell: u32) -> Self {
        Partitions::with_filter(n, ell, |_| true)
    }
}

impl<F: Fn(usize) -> bool> Partitions<F> {
    /// Enumerates only multiplicity vectors whose nonzero entries sit at part
    /// indices `i` (counted from one) with `allowed(i)`.
    pub fn with_filter(n: u32, ell: u32, allowed: F) -> Self {
        assert!(n >= 1, "partitions need n >= 1");
        Partitions {
            n,
            ell,
            allowed,
            k: vec![0; n as usize],
            started: false,
            done: false,
        }
    }

    fn size(&self, idx: usize) -> u32 {
        idx as u32 + 1 + self.ell
    }

    fn remaining_before(&self, idx: usize) -> u32 {
        self.n - (0..idx).map(|j| self.k[j] * self.size(j)).sum::<u32>()
    }

    /// Greedily fills positions `from..` and reports whether nothing is left.
    fn fill_from(&mut self, from: usize) -> bool {
        let mut rem = self.remaining_before(from);
        for idx in from..self.k.len() {
            let size = self.size(idx);
            self.k[idx] = if (self.allowed)(idx + 1) { rem / size } else { 0 };
            rem -= self.k[idx] * size;
        }
        rem == 0
    }

    /// Steps to the next candidate in descending order (decrement the
    /// right-most free position, refill greedily after it) until one sums to
    /// `n` exactly. Returns `false` when the candidates run out.
    fn advance(&mut self) -> bool {
        // The last position is pinned by the others.
        let last = self.k.len() - 1;
        loop {
            let Some(idx) = (0..last).rev().find(|&i| self.k[i] > 0) else {
                return false;
            };
            self.k[idx] -= 1;
            if self.fill_from(idx + 1) {
                return true;
            }
        }
    }
}

impl<F: Fn(usize) -> bool> Iterator for Partitions<F> {
    type Item = PartitionTerm;

    fn next(&mut self) -> Option<PartitionTerm> {
        if self.done {
            return None;
        }
        let found = if self.started {
            self.advance()
        } else {
            self.started = true;
            self.fill_from(0) || self.advance()
        };
        if !found {
            self.done = true;
            return None;
        }
        let denom = self
            .k
            .iter()
            .fold(Integer::from(1), |acc, &k| acc * factorial(k));
        Some(PartitionTerm {
            multiplicities: self.k.clone(),
            weight: Rational::from((Integer::from(1), denom)),
        })
    }
}

/// All multiplicity vectors with `Σ_i (i+ℓ) k_i = n`.
pub fn enumerate_partitions(n: u32, ell: u32) -> Partitions {
    Partitions::new(n, ell)
}
