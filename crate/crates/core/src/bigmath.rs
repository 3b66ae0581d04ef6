//! Exact integer and rational kernel.
//!
//! Bernoulli numbers and both Stirling triangles live in process-wide
//! grow-only caches: readers share a lock, and the first request for a larger
//! index extends the table under the write lock. Entries never change once
//! written.

use std::sync::RwLock;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// A table that only ever grows at the end.
pub(crate) struct GrowOnly<T> {
    rows: RwLock<Vec<T>>,
}

impl<T: Clone> GrowOnly<T> {
    pub(crate) const fn new() -> Self {
        GrowOnly {
            rows: RwLock::new(Vec::new()),
        }
    }

    /// Runs `read` on a table holding at least `len` rows, calling `grow`
    /// first when it is shorter.
    pub(crate) fn with<R>(
        &self,
        len: usize,
        grow: impl FnOnce(&mut Vec<T>, usize),
        read: impl FnOnce(&[T]) -> R,
    ) -> R {
        {
            let rows = self.rows.read().unwrap_or_else(|e| e.into_inner());
            if rows.len() >= len {
                return read(&rows);
            }
        }
        let mut rows = self.rows.write().unwrap_or_else(|e| e.into_inner());
        if rows.len() < len {
            grow(&mut rows, len);
        }
        read(&rows)
    }
}

static BERNOULLI: GrowOnly<Rational> = GrowOnly::new();
static STIRLING1: GrowOnly<Vec<Integer>> = GrowOnly::new();
static STIRLING2: GrowOnly<Vec<Integer>> = GrowOnly::new();
static FACTORIALS: GrowOnly<Integer> = GrowOnly::new();

fn grow_bernoulli(table: &mut Vec<Rational>, len: usize) {
    while table.len() < len {
        let m = table.len();
        let value = match m {
            0 => Rational::from(1),
            1 => Rational::from((-1, 2)),
            _ if m % 2 == 1 => Rational::new(),
            _ => {
                // sum_{k<m} C(m+1,k) B_k = -(m+1) B_m, odd B_k (k >= 3) vanish.
                let m1 = m as u32 + 1;
                let mut acc = Rational::from(1) - Rational::from((m1, 2));
                for k in (2..m).step_by(2) {
                    let binom = Integer::from(Integer::binomial_u(m1, k as u32));
                    acc += Rational::from(binom * &table[k]);
                }
                -acc / m1
            }
        };
        table.push(value);
    }
}

/// The Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// ```
/// use barnes_core::bigmath::bernoulli;
/// use barnes_core::Rational;
/// assert_eq!(bernoulli(4), Rational::from((-1, 30)));
/// assert_eq!(bernoulli(7), 0);
/// ```
pub fn bernoulli(n: usize) -> Rational {
    BERNOULLI.with(n + 1, grow_bernoulli, |t| t[n].clone())
}

/// `B_0, …, B_max` in one lock acquisition.
pub fn bernoulli_upto(max: usize) -> Vec<Rational> {
    BERNOULLI.with(max + 1, grow_bernoulli, |t| t[..=max].to_vec())
}

fn grow_stirling2(rows: &mut Vec<Vec<Integer>>, len: usize) {
    while rows.len() < len {
        let nu = rows.len();
        let mut row = vec![Integer::new(); nu + 1];
        if nu == 0 {
            row[0] = Integer::from(1);
        } else {
            let prev = &rows[nu - 1];
            for k in 1..=nu {
                let mut v = Integer::new();
                if k < nu {
                    v += Integer::from(&prev[k] * k as u32);
                }
                v += &prev[k - 1];
                row[k] = v;
            }
        }
        rows.push(row);
    }
}

fn grow_stirling1(rows: &mut Vec<Vec<Integer>>, len: usize) {
    while rows.len() < len {
        let n = rows.len();
        let mut row = vec![Integer::new(); n + 1];
        if n == 0 {
            row[0] = Integer::from(1);
        } else {
            let prev = &rows[n - 1];
            for nu in 1..=n {
                let mut v = prev[nu - 1].clone();
                if nu < n {
                    v -= Integer::from(&prev[nu] * (n - 1) as u32);
                }
                row[nu] = v;
            }
        }
        rows.push(row);
    }
}

/// Stirling number of the second kind `S(ν, k)`; zero outside `0 ≤ k ≤ ν`.
pub fn stirling2(nu: u32, k: u32) -> Integer {
    if k > nu {
        return Integer::new();
    }
    let (nu, k) = (nu as usize, k as usize);
    STIRLING2.with(nu + 1, grow_stirling2, |rows| rows[nu][k].clone())
}

/// Signed Stirling number of the first kind `s(n, ν)`; zero outside
/// `0 ≤ ν ≤ n`.
pub fn stirling1_signed(n: u32, nu: u32) -> Integer {
    if nu > n {
        return Integer::new();
    }
    let (n, nu) = (n as usize, nu as usize);
    STIRLING1.with(n + 1, grow_stirling1, |rows| rows[n][nu].clone())
}

/// `S(ν, k)` from the inclusion–exclusion sum
/// `(1/k!) Σ_j (-1)^j C(k,j) (k-j)^ν`.
pub fn stirling2_explicit(nu: u32, k: u32) -> Integer {
    let mut acc = Integer::new();
    for j in 0..=k {
        let term = Integer::from(Integer::binomial_u(k, j)) * Integer::from(k - j).pow(nu);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / factorial(k)
}

fn grow_factorials(table: &mut Vec<Integer>, len: usize) {
    if table.is_empty() {
        table.push(Integer::from(1));
    }
    while table.len() < len {
        let n = table.len() as u32;
        let next = Integer::from(&table[n as usize - 1] * n);
        table.push(next);
    }
}

/// `n!`. Values up to 4096 are cached; larger ones are computed directly.
pub fn factorial(n: u32) -> Integer {
    if n <= 4096 {
        FACTORIALS.with(n as usize + 1, grow_factorials, |t| t[n as usize].clone())
    } else {
        Integer::from(Integer::factorial(n))
    }
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// The falling factorial `(x)_i = x (x-1) ⋯ (x-i+1)`, with `(x)_0 = 1`.
pub trait FallingFactorial: Sized {
    fn falling_factorial(&self, i: u32) -> Self;
}

impl FallingFactorial for Integer {
    fn falling_factorial(&self, i: u32) -> Self {
        (0..i).fold(Integer::from(1), |acc, j| acc * Integer::from(self - j))
    }
}

impl FallingFactorial for Rational {
    fn falling_factorial(&self, i: u32) -> Self {
        (0..i).fold(Rational::from(1), |acc, j| acc * Rational::from(self - j))
    }
}

impl FallingFactorial for Float {
    fn falling_factorial(&self, i: u32) -> Self {
        let prec = self.prec();
        (0..i).fold(Float::with_val(prec, 1), |acc, j| {
            acc * Float::with_val(prec, self - j)
        })
    }
}

pub fn falling_factorial<T: FallingFactorial>(x: &T, i: u32) -> T {
    x.falling_factorial(i)
}

/// `ζ(2k)` as an exact multiple of a power of π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenZeta {
    pub coefficient: Rational,
    pub pi_power: u32,
}

impl EvenZeta {
    pub fn to_float(&self, prec: u32) -> Float {
        let pi = Float::with_val(prec, Constant::Pi);
        pi.pow(self.pi_power) * &self.coefficient
    }
}

/// `ζ(2k) = (-1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!)`, returned as
/// `(q, 2k)` with `ζ(2k) = q π^{2k}`.
pub fn zeta_even_exact(k: u32) -> EvenZeta {
    assert!(k >= 1, "zeta_even_exact needs k >= 1");
    let two_k = 2 * k;
    let mut q = bernoulli(two_k as usize) * (Integer::from(1) << (two_k - 1));
    q /= factorial(two_k);
    if k.is_multiple_of(2) {
        q = -q;
    }
    EvenZeta {
        coefficient: q,
        pi_power: two_k,
    }
}
