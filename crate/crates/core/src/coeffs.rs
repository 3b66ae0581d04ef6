//! Exact coefficient families.
//!
//! | family | definition |
//! |---|---|
//! | `c_n` | `B_{2n+2} / (2n (2n+1) (2n+2))`, the Bernoulli tail of `log G` |
//! | `b_n(r)` | recurrence `b_n = r/(2n) Σ_j B_{2n-2j+2} b_j / ((2n-2j+1)(2n-2j+2))` |
//! | `b_n(ℓ,r)` | partition sum over `Σ (i+ℓ) k_i = n` |
//! | `a_n(ℓ,r)` | exponential-series coefficients of `Σ b_n(ℓ,r) x^n` |
//! | `b_n(θ,κ,r)` | `[x^n] (Σ_k b_k(1) x^k)^{θr+κ}` |
//! | `γ_n` | Stirling coefficients of `ν!` |
//!
//! Values are cached in append-only [`CoeffTable`]s keyed by family and
//! parameters. A table only ever grows, and regrowing one from scratch
//! yields the same rationals.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bigmath::{bernoulli, bernoulli_upto, factorial, stirling2};
use crate::series::{Partitions, RationalSeries};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffFamily {
    /// `c_n`, the Bernoulli tail coefficients.
    C,
    /// `b_n(r)`.
    BOfR,
    /// `b_n(ℓ, r)`.
    BEllR,
    /// `a_n(ℓ, r)`.
    AEllR,
    /// `b_n(θ, κ, r)`.
    BThetaKappaR,
    /// `γ_n`.
    GammaStirling,
}

/// Parameters a table was built for; unused ones stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CoeffParams {
    pub r: Option<Rational>,
    pub ell: Option<u32>,
    pub theta: Option<Rational>,
    pub kappa: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    family: CoeffFamily,
    params: CoeffParams,
    values: Vec<Rational>,
    // b_n(ℓ, r) feeding an a_n(ℓ, r) table.
    inner: Option<Box<CoeffTable>>,
}

fn nonzero(r: &Rational, err: Error) -> Result<Rational> {
    if r.cmp0().is_eq() {
        Err(err)
    } else {
        Ok(r.clone())
    }
}

impl CoeffTable {
    fn seeded(family: CoeffFamily, params: CoeffParams, seed: Rational) -> Self {
        CoeffTable {
            family,
            params,
            values: vec![seed],
            inner: None,
        }
    }

    /// `c_n`. Index 0 holds 0 (the constant term of `Σ c_n x^n`).
    pub fn c() -> Self {
        Self::seeded(CoeffFamily::C, CoeffParams::default(), Rational::new())
    }

    pub fn b_of_r(r: &Rational) -> Result<Self> {
        let r = nonzero(r, Error::ZeroR)?;
        Ok(Self::seeded(
            CoeffFamily::BOfR,
            CoeffParams { r: Some(r), ..Default::default() },
            Rational::from(1),
        ))
    }

    /// `b_n(ℓ, r)`. Index 0 holds 1, the leading term of `1 + Σ b_n/z^n`.
    pub fn b_ell_r(ell: u32, r: &Rational) -> Result<Self> {
        let r = nonzero(r, Error::ZeroR)?;
        Ok(Self::seeded(
            CoeffFamily::BEllR,
            CoeffParams { r: Some(r), ell: Some(ell), ..Default::default() },
            Rational::from(1),
        ))
    }

    pub fn a_ell_r(ell: u32, r: &Rational) -> Result<Self> {
        let inner = Self::b_ell_r(ell, r)?;
        let mut table = Self::seeded(CoeffFamily::AEllR, inner.params.clone(), Rational::from(1));
        table.inner = Some(Box::new(inner));
        Ok(table)
    }

    pub fn b_theta_kappa_r(theta: &Rational, kappa: &Rational, r: &Rational) -> Result<Self> {
        let theta = nonzero(theta, Error::ZeroTheta)?;
        let r = nonzero(r, Error::ZeroR)?;
        Ok(Self::seeded(
            CoeffFamily::BThetaKappaR,
            CoeffParams {
                r: Some(r),
                theta: Some(theta),
                kappa: Some(kappa.clone()),
                ..Default::default()
            },
            Rational::from(1),
        ))
    }

    pub fn gamma_stirling() -> Self {
        Self::seeded(CoeffFamily::GammaStirling, CoeffParams::default(), Rational::from(1))
    }

    pub fn family(&self) -> CoeffFamily {
        self.family
    }

    pub fn params(&self) -> &CoeffParams {
        &self.params
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The `n`-th value, growing the table first if needed.
    pub fn get(&mut self, n: usize) -> &Rational {
        self.extend_to(n);
        &self.values[n]
    }

    fn r(&self) -> &Rational {
        self.params.r.as_ref().expect("table without r")
    }

    pub fn extend_to(&mut self, max: usize) {
        if max <= self.max_index() {
            return;
        }
        match self.family {
            CoeffFamily::C => {
                for n in self.values.len()..=max {
                    self.values.push(c_coeff(n as u32));
                }
            }
            CoeffFamily::BOfR => self.extend_b_of_r(max),
            CoeffFamily::BEllR => {
                let ell = self.params.ell.unwrap_or(0);
                for n in self.values.len()..=max {
                    let v = partition_b(n as u32, ell, self.r());
                    self.values.push(v);
                }
            }
            CoeffFamily::AEllR => {
                let inner = self.inner.as_mut().expect("a-table without b-table");
                inner.extend_to(max);
                let b = &inner.values;
                for n in self.values.len()..=max {
                    let v = partition_exp(n as u32, b);
                    self.values.push(v);
                }
            }
            CoeffFamily::BThetaKappaR => {
                let params = &self.params;
                let exponent = Rational::from(params.theta.as_ref().unwrap() * self.r())
                    + params.kappa.as_ref().unwrap();
                let mut base = CoeffTable::b_of_r(&Rational::from(1)).unwrap();
                base.extend_to(max);
                let base = RationalSeries::new(base.values);
                let power = base.pow(&exponent).expect("base series has unit constant term");
                self.values.extend(power.into_coeffs().drain(self.values.len()..));
            }
            CoeffFamily::GammaStirling => {
                let log_series = stirling_log_series(max);
                let e = log_series.exp().expect("Stirling series has zero constant term");
                self.values.extend(e.into_coeffs().drain(self.values.len()..));
            }
        }
    }

    fn extend_b_of_r(&mut self, max: usize) {
        let b = bernoulli_upto(2 * max + 2);
        let r = self.r().clone();
        for n in self.values.len()..=max {
            let mut acc = Rational::new();
            for (j, bj) in self.values.iter().enumerate() {
                let d = (2 * (n - j)) as u32;
                acc += Rational::from(&b[d as usize + 2] * bj) / ((d + 1) * (d + 2));
            }
            acc *= &r;
            acc /= 2 * n as u32;
            self.values.push(acc);
        }
    }
}

/// `Σ_k B_{2k}/(2k(2k-1)) x^{2k-1}` to the given order.
fn stirling_log_series(order: usize) -> RationalSeries {
    let b = bernoulli_upto(order + 1);
    RationalSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            let two_k = i as u32 + 1;
            Rational::from(&b[two_k as usize] / (two_k * (two_k - 1)))
        } else {
            Rational::new()
        }
    })
}

/// Sum over `Σ (i+ℓ) k_i = n` of `r^{Σk} ∏ (B_{i+2}/(i(i+1)(i+2)))^{k_i} / k_i!`.
fn partition_b(n: u32, ell: u32, r: &Rational) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    let b = bernoulli_upto(n as usize + 2);
    let factor = |i: usize| {
        let i = i as u32;
        Rational::from(&b[i as usize + 2] / (i * (i + 1) * (i + 2)))
    };
    // B_{i+2} vanishes for odd i.
    let mut sum = Rational::new();
    for term in Partitions::with_filter(n, ell, |i| i % 2 == 0) {
        let mut t = term.weight.clone();
        for (i, k) in term.parts() {
            t *= factor(i).pow(k as i32);
        }
        t *= r.clone().pow(term.total_parts() as i32);
        sum += t;
    }
    sum
}

/// Sum over `Σ i k_i = n` of `∏ b_i^{k_i} / k_i!`, i.e. `[x^n] exp(Σ b_i x^i)`.
fn partition_exp(n: u32, b: &[Rational]) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    let mut sum = Rational::new();
    for term in Partitions::with_filter(n, 0, |i| b[i].cmp0().is_ne()) {
        let mut t = term.weight.clone();
        for (i, k) in term.parts() {
            t *= b[i].clone().pow(k as i32);
        }
        sum += t;
    }
    sum
}

type TableKey = (CoeffFamily, CoeffParams);

static TABLES: LazyLock<Mutex<HashMap<TableKey, CoeffTable>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Reads entries `0..=max` of the memoised table built by `make`.
fn cached<R>(
    make: impl FnOnce() -> Result<CoeffTable>,
    max: usize,
    read: impl FnOnce(&[Rational]) -> R,
) -> Result<R> {
    let table = make()?;
    let key = (table.family, table.params.clone());
    let mut tables = TABLES.lock().unwrap_or_else(|e| e.into_inner());
    let entry = tables.entry(key).or_insert(table);
    entry.extend_to(max);
    Ok(read(&entry.values[..=max]))
}

/// `c_n = B_{2n+2} / (2n (2n+1) (2n+2))` for `n ≥ 1`.
pub fn c_coeff(n: u32) -> Rational {
    assert!(n >= 1, "c_n is defined for n >= 1");
    let d = 2 * n;
    bernoulli(d as usize + 2) / (d * (d + 1) * (d + 2))
}

/// `b_n(r)` from its defining recurrence (memoised per `r`).
///
/// ```
/// use barnes_core::coeffs::bn_exact;
/// use barnes_core::Rational;
/// let one = Rational::from(1);
/// assert_eq!(bn_exact(0, &one).unwrap(), 1);
/// assert_eq!(bn_exact(2, &one).unwrap(), Rational::from((1447, 7257600)));
/// ```
pub fn bn_exact(n: u32, r: &Rational) -> Result<Rational> {
    cached(|| CoeffTable::b_of_r(r), n as usize, |v| v[n as usize].clone())
}

/// `b_0(r), …, b_max(r)`.
pub fn bn_exact_table(max: u32, r: &Rational) -> Result<Vec<Rational>> {
    cached(|| CoeffTable::b_of_r(r), max as usize, <[Rational]>::to_vec)
}

/// `b_n(ℓ, r)` as a partition sum. Note `b_{2n}(0, r) = b_n(r)`.
pub fn bn_partition(n: u32, ell: u32, r: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    cached(|| CoeffTable::b_ell_r(ell, r), n as usize, |v| v[n as usize].clone())
}

/// `a_n(ℓ, r)`: partition sum over `k_1 + 2k_2 + ⋯ + n k_n = n` of
/// `∏ b_i(ℓ,r)^{k_i} / k_i!`.
pub fn an_partition(n: u32, ell: u32, r: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    cached(|| CoeffTable::a_ell_r(ell, r), n as usize, |v| v[n as usize].clone())
}

/// `[x^n] (1 + Σ_{k=1}^{order} b_k(1) x^k)^{θr+κ}`.
pub fn bn_theta_kappa(
    n: u32,
    theta: &Rational,
    kappa: &Rational,
    r: &Rational,
    order: u32,
) -> Result<Rational> {
    if n > order {
        return Err(Error::out_of_range("n", n, format!("0..={order}")));
    }
    cached(
        || CoeffTable::b_theta_kappa_r(theta, kappa, r),
        order as usize,
        |v| v[n as usize].clone(),
    )
}

/// The Stirling coefficient `γ_n`, defined by
/// `ν! ~ (ν/e)^ν √(2πν) Σ γ_n ν^{-n}` and computed as the coefficients of
/// `exp(Σ_k B_{2k} x^{2k-1} / (2k(2k-1)))`.
pub fn gamma_stirling(n: u32) -> Rational {
    cached(|| Ok(CoeffTable::gamma_stirling()), n as usize, |v| v[n as usize].clone())
        .expect("gamma table construction is infallible")
}

pub fn gamma_stirling_table(max: u32) -> Vec<Rational> {
    cached(|| Ok(CoeffTable::gamma_stirling()), max as usize, <[Rational]>::to_vec)
        .expect("gamma table construction is infallible")
}

/// How to read the denominator of the closed-form double sum for `γ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NemesReading {
    /// `(2n+2k+1) (2n-k)!`, which reproduces the exact `γ_n`.
    Corrected,
    /// `(2n+2k+1) (2n-2k)` as typeset; vanishes at `k = n`.
    AsPrinted,
}

/// `γ_n` from the double-sum representation
/// `Γ(3n+3/2)/√π Σ_{k=0}^{2n} 2^{n+k+1}/((2n+2k+1)(2n-k)!)
///  Σ_{j=0}^{k} (-1)^{k-j} S(2n+2k-j, k-j) / (j! (2n+2k-j)!)`,
/// evaluated in floating point at `prec` bits.
pub fn gamma_stirling_nemes(n: u32, prec: u32) -> Float {
    gamma_stirling_nemes_reading(n, NemesReading::Corrected, prec)
        .expect("corrected reading has no vanishing denominators")
}

pub fn gamma_stirling_nemes_reading(n: u32, reading: NemesReading, prec: u32) -> Result<Float> {
    let wp = prec + 64;
    let mut outer = Float::with_val(wp, 0);
    for k in 0..=2 * n {
        let denom = match reading {
            NemesReading::Corrected => Float::with_val(wp, factorial(2 * n - k)),
            NemesReading::AsPrinted => {
                let d = 2 * i64::from(n) - 2 * i64::from(k);
                if d == 0 {
                    return Err(Error::Singular(format!(
                        "denominator (2n-2k) vanishes at n = {n}, k = {k}"
                    )));
                }
                Float::with_val(wp, d)
            }
        } * (2 * n + 2 * k + 1);
        let mut inner = Float::with_val(wp, 0);
        for j in 0..=k {
            let top = 2 * n + 2 * k - j;
            let den = factorial(j) * factorial(top);
            let term = Float::with_val(wp, stirling2(top, k - j)) / Float::with_val(wp, den);
            if (k - j) % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        let scale = Float::with_val(wp, Integer::from(1) << (n + k + 1)) / denom;
        outer += inner * scale;
    }
    let prefactor = Float::with_val(wp, Rational::from((6 * n + 3, 2))).gamma()
        / Float::with_val(wp, Constant::Pi).sqrt();
    Ok(Float::with_val(prec, outer * prefactor))
}
