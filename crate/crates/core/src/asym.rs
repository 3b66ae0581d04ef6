//! Approximations of the higher-order coefficients `b_n(r)`.
//!
//! Three families are provided, in increasing order of closed-formness:
//!
//! * [`bn_tail_approx`] keeps the first `m` terms of
//!   `b_n(r) ≈ Σ_{k<m} b_k(r) r B_{2n-2k+2} / ((2n-2k)(2n-2k+1)(2n-2k+2))`.
//!   Only `b_0, …, b_{m-1}` are needed, so large `n` is cheap.
//! * [`bn_full_asym`] evaluates
//!   `(-1)^n r (2n-1) ((n-1)/(πe))^{2n-2} √((n-1)/π⁷) Σ_{k≤K} I_{k,n}(r)/(n-1)^k`
//!   with `I_{0,n} = 1/4` and the `I_{k,n}(r)` of [`i_kn`].
//! * [`leading_predictor`] is the first-order equivalent
//!   `(-1)^n 2 s (2n-1)! / (2π)^{2n+2}`, shared by `b_n(θ,κ,r)` (with
//!   `s = θr+κ`), `b_n(ℓ,r)` and `a_n(ℓ,r)` (with `s = r`).
//!
//! Exact comparison values are always rational and are rounded to the
//! comparison precision, never the other way round.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bigmath::{bernoulli, bernoulli_upto, factorial, stirling2, zeta_even_exact};
use crate::coeffs::{bn_exact, bn_exact_table, gamma_stirling_table};
use crate::{Error, Result};

const GUARD_BITS: u32 = 64;

fn require_r(r: &Rational) -> Result<()> {
    if r.cmp0().is_eq() {
        Err(Error::ZeroR)
    } else {
        Ok(())
    }
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// The truncated Bernoulli tail as an exact rational.
pub fn bn_tail_approx_exact(n: u32, r: &Rational, m: u32) -> Result<Rational> {
    require_r(r)?;
    if m < 1 || m >= n {
        return Err(Error::out_of_range("m", m, format!("1..={}", n.saturating_sub(1))));
    }
    let b = bn_exact_table(m - 1, r)?;
    let bern = bernoulli_upto(2 * n as usize + 2);
    let mut sum = Rational::new();
    for (k, bk) in b.iter().enumerate() {
        let d = 2 * (n - k as u32);
        sum += Rational::from(bk * &bern[d as usize + 2]) / (Integer::from(d) * (d + 1) * (d + 2));
    }
    Ok(sum * r)
}

/// `Σ_{k=0}^{m-1} b_k(r) r B_{2n-2k+2} / ((2n-2k)(2n-2k+1)(2n-2k+2))`,
/// for `1 ≤ m ≤ n-1`.
///
/// ```
/// use barnes_core::asym::bn_tail_approx;
/// use barnes_core::decimal::float_to_scientific;
/// use barnes_core::Rational;
/// let v = bn_tail_approx(25, &Rational::from(1), 10, 384).unwrap();
/// assert_eq!(float_to_scientific(&v, 30), "-3.80007230719156771563759457627e21");
/// ```
pub fn bn_tail_approx(n: u32, r: &Rational, m: u32, prec: u32) -> Result<Float> {
    bn_tail_approx_exact(n, r, m).map(|q| Float::with_val(prec, q))
}

/// `I_{k,n}(r)`: `1/4` for `k = 0`, otherwise
/// `γ_k/2^{k+2} + (1/(2n-1)) Σ_{j=1}^{k} Σ_{ν=1}^{⌊(j+1)/2⌋}
///  (-1)^ν 2^{2ν-k-2} π^{2ν} b_ν(r) γ_{k-j} S(j-1, 2ν-2)`.
pub fn i_kn(k: u32, n: u32, r: &Rational, prec: u32) -> Result<Float> {
    require_r(r)?;
    if k == 0 {
        return Ok(Float::with_val(prec, 0.25));
    }
    let gamma = gamma_stirling_table(k);
    let b = bn_exact_table(k.div_ceil(2), r)?;
    let pi2 = Float::with_val(prec, pi(prec).square());
    // Collect the exact coefficient of each π^{2ν} first.
    let mut by_power = vec![Rational::new(); (k as usize).div_ceil(2) + 1];
    for j in 1..=k {
        for nu in 1..=j.div_ceil(2) {
            let s = stirling2(j - 1, 2 * nu - 2);
            if s.cmp0().is_eq() {
                continue;
            }
            let mut t = Rational::from(&b[nu as usize] * &gamma[(k - j) as usize]) * s;
            let shift = 2 * nu as i32 - k as i32 - 2;
            if shift >= 0 {
                t <<= shift as u32;
            } else {
                t >>= (-shift) as u32;
            }
            if nu % 2 == 1 {
                t = -t;
            }
            by_power[nu as usize] += t;
        }
    }
    let mut corr = Float::with_val(prec, 0);
    let mut pow = Float::with_val(prec, 1);
    for q in by_power.iter().skip(1) {
        pow *= &pi2;
        corr += Float::with_val(prec, &pow * q);
    }
    corr /= 2 * n - 1;
    let lead = Rational::from(&gamma[k as usize] >> (k + 2));
    Ok(corr + lead)
}

/// Whether to multiply the full asymptotic formula by `ζ(2n+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZetaFactor {
    /// The formula as stated, with `ζ(2n+2)` absorbed.
    #[default]
    Omit,
    /// Diagnostic variant restoring the `ζ(2n+2)` factor.
    Include,
}

/// `(-1)^n r (2n-1) ((n-1)/(πe))^{2n-2} √((n-1)/π⁷) Σ_{k=0}^{k_max} I_{k,n}(r)/(n-1)^k`
/// for `n ≥ 2`.
pub fn bn_full_asym(n: u32, r: &Rational, k_max: u32, prec: u32) -> Result<Float> {
    bn_full_asym_with(n, r, k_max, ZetaFactor::Omit, prec)
}

pub fn bn_full_asym_with(
    n: u32,
    r: &Rational,
    k_max: u32,
    zeta: ZetaFactor,
    prec: u32,
) -> Result<Float> {
    require_r(r)?;
    if n < 2 {
        return Err(Error::out_of_range("n", n, "n >= 2"));
    }
    let wp = prec + GUARD_BITS;
    let pi = pi(wp);
    let e = Float::with_val(wp, 1).exp();
    let nm1 = Float::with_val(wp, n - 1);

    let base = Float::with_val(wp, &nm1 / Float::with_val(wp, &pi * &e));
    let mut pre = base.pow(2 * n - 2);
    pre *= Float::with_val(wp, &nm1 / Float::with_val(wp, pi.clone().pow(7u32))).sqrt();
    pre *= 2 * n - 1;
    pre *= r;
    if n % 2 == 1 {
        pre = -pre;
    }

    let mut sum = Float::with_val(wp, 0);
    let mut scale = Float::with_val(wp, 1);
    for k in 0..=k_max {
        sum += i_kn(k, n, r, wp)? / &scale;
        scale *= &nm1;
    }
    let mut value = pre * sum;
    if zeta == ZetaFactor::Include {
        value *= zeta_even_exact(n + 1).to_float(wp);
    }
    Ok(Float::with_val(prec, value))
}

/// `(-1)^n 2 scale (2n-1)! / (2π)^{2n+2}`.
///
/// ```
/// use barnes_core::asym::leading_predictor;
/// use barnes_core::Rational;
/// let v = leading_predictor(1, &Rational::from(1), 256);
/// assert!((v.to_f64() + 1.2832e-3).abs() < 1e-7);
/// ```
pub fn leading_predictor(n: u32, scale: &Rational, prec: u32) -> Float {
    assert!(n >= 1, "leading_predictor needs n >= 1");
    let wp = prec + GUARD_BITS;
    let two_pi = Float::with_val(wp, pi(wp) * 2u32);
    let mut v = Float::with_val(wp, factorial(2 * n - 1)) / two_pi.pow(2 * n + 2);
    v *= Float::with_val(wp, scale);
    v *= 2u32;
    if n % 2 == 1 {
        v = -v;
    }
    Float::with_val(prec, v)
}

/// Result of checking `2(2n+2)!/(2π)^{2n+2} < |B_{2n+2}| < 4(2n+2)!/(2π)^{2n+2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliBounds {
    pub lower: Float,
    pub value: Float,
    pub upper: Float,
    pub holds: bool,
}

/// Evaluates both bounds on `|B_{2n+2}|`.
///
/// The ratio `|B_{2n+2}| / lower` is `ζ(2n+2) = 1 + O(4^{-n-1})`, so the
/// working precision grows with `n` to keep the lower comparison honest.
pub fn bernoulli_bounds_check(n: u32) -> BernoulliBounds {
    let prec = 4 * n + 128;
    let m = 2 * n + 2;
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let base = Float::with_val(prec, factorial(m)) / two_pi.pow(m);
    let lower = Float::with_val(prec, &base * 2u32);
    let upper = Float::with_val(prec, &base * 4u32);
    let value = Float::with_val(prec, bernoulli(m as usize).abs());
    let holds = lower < value && value < upper;
    BernoulliBounds {
        lower,
        value,
        upper,
        holds,
    }
}

/// `ζ(2n-2k+2) / ζ(2n+2)` from the exact even zeta values, for `k < n`.
pub fn zeta_ratio_factor(n: u32, k: u32, prec: u32) -> Float {
    assert!(k < n, "zeta_ratio_factor needs k < n");
    let top = zeta_even_exact(n - k + 1);
    let bottom = zeta_even_exact(n + 1);
    let q = Rational::from(&top.coefficient / &bottom.coefficient);
    let wp = prec + GUARD_BITS;
    let v = Float::with_val(wp, q) / Float::with_val(wp, pi(wp).square()).pow(k);
    Float::with_val(prec, v)
}

/// `|exact - approx| / |exact|`, or `None` when `exact` is zero.
pub fn relative_error(exact: &Float, approx: &Float) -> Option<Float> {
    if exact.is_zero() {
        return None;
    }
    let prec = exact.prec().max(approx.prec());
    let diff = Float::with_val(prec, exact - approx);
    Some(Float::with_val(prec, diff / exact).abs())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// Truncated Bernoulli tail with `m` terms.
    TailM { m: u32 },
    /// Full asymptotic series through `I_{k_max,n}`.
    FullAsym { k_max: u32 },
    /// Leading-order predictor with scale `r`.
    Leading,
}

impl Formula {
    pub fn name(&self) -> &'static str {
        match self {
            Formula::TailM { .. } => "tail",
            Formula::FullAsym { .. } => "full-asym",
            Formula::Leading => "leading",
        }
    }
}

/// One comparison of an approximation against the exact `b_n(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    n: u32,
    r: Rational,
    formula: Formula,
    precision: u32,
    exact: Float,
    approx: Float,
    rel_error: Option<Float>,
}

impl ApproxReport {
    /// Builds a report from an exact value and an approximation.
    pub fn new(n: u32, r: Rational, formula: Formula, exact: &Rational, approx: Float) -> Self {
        let precision = approx.prec();
        let exact = Float::with_val(precision, exact);
        let rel_error = relative_error(&exact, &approx);
        ApproxReport {
            n,
            r,
            formula,
            precision,
            exact,
            approx,
            rel_error,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn exact(&self) -> &Float {
        &self.exact
    }

    pub fn approx(&self) -> &Float {
        &self.approx
    }

    /// `None` only when the exact value is zero.
    pub fn rel_error(&self) -> Option<&Float> {
        self.rel_error.as_ref()
    }
}

/// Computes `b_n(r)` exactly, the chosen approximation, and their relative
/// error at `prec` bits.
pub fn make_report(n: u32, r: &Rational, formula: Formula, prec: u32) -> Result<ApproxReport> {
    let exact = bn_exact(n, r)?;
    let approx = match formula {
        Formula::TailM { m } => bn_tail_approx(n, r, m, prec)?,
        Formula::FullAsym { k_max } => bn_full_asym(n, r, k_max, prec)?,
        Formula::Leading => {
            if n == 0 {
                return Err(Error::out_of_range("n", n, "n >= 1"));
            }
            leading_predictor(n, r, prec)
        }
    };
    Ok(ApproxReport::new(n, r.clone(), formula, &exact, approx))
}
