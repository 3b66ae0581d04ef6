//! `log Γ`, `log G`, and the constants they need.
//!
//! Both functions use a shifted asymptotic series: the argument is raised to
//! at least `max(10, P/6)` with the functional equation, and the Bernoulli
//! tail is summed until its terms stop shrinking. For `G` the expansion is
//!
//! ```text
//! log G(z+1) ~ z²/4 + z log Γ(z+1) - (z(z+1)/2 + 1/12) log z - log A
//!              + Σ_{n≥1} B_{2n+2} / (2n(2n+1)(2n+2) z^{2n})
//! ```
//!
//! γ and ζ'(2) come from Euler–Maclaurin sums; `log A` is assembled from
//! them. [`log_g_weierstrass`] is a slow, independent check based on the
//! canonical product.

use std::collections::HashMap;
use std::sync::Mutex;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::bigmath::bernoulli;
use crate::{Error, Result};

const GUARD_BITS: u32 = 64;

/// A series evaluation together with its truncation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub value: Float,
    /// Number of Bernoulli tail terms included.
    pub terms_used: u32,
    /// Magnitude of the last included tail term.
    pub last_term_magnitude: Float,
    pub precision: u32,
}

/// Smallest argument at which the asymptotic series is applied.
pub fn shift_threshold(prec: u32) -> u32 {
    (prec / 6).max(10)
}

fn shift_count(z: &Float, threshold: u32) -> u32 {
    if *z >= threshold {
        0
    } else {
        let gap = Float::with_val(z.prec(), threshold - Float::with_val(z.prec(), z));
        gap.ceil().to_u32_saturating().unwrap_or(u32::MAX)
    }
}

/// Sums `Σ_{n≥1} term(n)` until the terms fall below `2^{-wp}` relative to
/// `scale` or stop decreasing.
fn bernoulli_tail(
    wp: u32,
    scale: &Float,
    mut term: impl FnMut(u32) -> Float,
) -> (Float, u32, Float) {
    let mut sum = Float::with_val(wp, 0);
    let mut last = Float::with_val(wp, 0);
    let mut prev: Option<Float> = None;
    let mut used = 0;
    let floor = {
        let mut f = Float::with_val(wp, scale.abs_ref()).max(&Float::with_val(wp, 1));
        f >>= wp;
        f
    };
    for n in 1.. {
        let t = term(n);
        let mag = Float::with_val(wp, t.abs_ref());
        if prev.as_ref().is_some_and(|p| mag >= *p) {
            break;
        }
        sum += &t;
        used = n;
        last = mag.clone();
        if mag < floor {
            break;
        }
        prev = Some(mag);
    }
    (sum, used, last)
}

fn require_positive(name: &str, z: &Float) -> Result<()> {
    if z.is_nan() || *z <= 0 {
        Err(Error::Domain(format!("{name} requires z > 0, got {}", z.to_f64())))
    } else {
        Ok(())
    }
}

/// Stirling series for `log Γ(x)` at a large `x`.
fn log_gamma_asym(x: &Float, wp: u32) -> (Float, u32, Float) {
    let half_log_2pi = Float::with_val(wp, Float::with_val(wp, Constant::Pi) * 2u32).ln() / 2u32;
    let ln_x = Float::with_val(wp, x.ln_ref());
    let mut base = Float::with_val(wp, x - Rational::from((1, 2))) * &ln_x;
    base -= x;
    base += half_log_2pi;
    let x_sq = Float::with_val(wp, x.square_ref());
    let mut x_pow = Float::with_val(wp, x);
    let (tail, used, last) = bernoulli_tail(wp, &base, |k| {
        let k = k as u64;
        let denom = Integer::from(2 * k) * (2 * k - 1);
        let t = Float::with_val(wp, &(bernoulli(2 * k as usize) / denom)) / &x_pow;
        x_pow *= &x_sq;
        t
    });
    (base + tail, used, last)
}

/// `log Γ(z)` for real `z > 0`.
///
/// ```
/// use barnes_core::barnes::log_gamma;
/// use barnes_core::Float;
/// let v = log_gamma(&Float::with_val(128, 5), 128).unwrap().value;
/// assert!((v - Float::with_val(128, 24).ln()).abs() < 1e-35);
/// ```
pub fn log_gamma(z: &Float, prec: u32) -> Result<EvalResult> {
    require_positive("log_gamma", z)?;
    let wp = prec + GUARD_BITS;
    let z = Float::with_val(wp, z);
    let s = shift_count(&z, shift_threshold(prec));
    let mut product = Float::with_val(wp, 1);
    let mut x = z.clone();
    for _ in 0..s {
        product *= &x;
        x += 1u32;
    }
    let (value, terms_used, last) = log_gamma_asym(&x, wp);
    Ok(EvalResult {
        value: Float::with_val(prec, value - product.ln()),
        terms_used,
        last_term_magnitude: Float::with_val(prec, last),
        precision: prec,
    })
}

/// `log G(z+1)` for real `z > 0`.
///
/// ```
/// use barnes_core::barnes::log_barnes_g;
/// use barnes_core::Float;
/// // G(4) = Γ(3) G(3) = 2
/// let v = log_barnes_g(&Float::with_val(128, 3), 128).unwrap().value;
/// assert!((v - Float::with_val(128, 2).ln()).abs() < 1e-35);
/// ```
pub fn log_barnes_g(z: &Float, prec: u32) -> Result<EvalResult> {
    log_barnes_g_with_threshold(z, shift_threshold(prec), prec)
}

/// [`log_barnes_g`] with an explicit shift threshold; `0` applies the
/// series directly at `z`.
pub fn log_barnes_g_with_threshold(z: &Float, threshold: u32, prec: u32) -> Result<EvalResult> {
    require_positive("log_barnes_g", z)?;
    let wp = prec + GUARD_BITS;
    let z = Float::with_val(wp, z);
    let s = shift_count(&z, threshold);

    // log G(z+s+1) = log G(z+1) + Σ_{i=1}^{s} log Γ(z+i)
    let mut correction = Float::with_val(wp, 0);
    if s > 0 {
        let mut lg = log_gamma(&Float::with_val(wp, &z + 1u32), wp)?.value;
        let mut x = Float::with_val(wp, &z + 1u32);
        for i in 1..=s {
            if i > 1 {
                lg += Float::with_val(wp, x.ln_ref());
                x += 1u32;
            }
            correction += &lg;
        }
    }
    let w = Float::with_val(wp, &z + s);

    let ln_w = Float::with_val(wp, w.ln_ref());
    let lg1 = log_gamma(&Float::with_val(wp, &w + 1u32), wp)?.value;
    let w_sq = Float::with_val(wp, w.square_ref());
    let mut base = Float::with_val(wp, &w_sq / 4u32);
    base += Float::with_val(wp, &w * &lg1);
    let half = Float::with_val(wp, Float::with_val(wp, &w_sq + &w) / 2u32) + Rational::from((1, 12));
    base -= half * &ln_w;
    base -= log_glaisher(wp);

    let mut w_pow = w_sq.clone();
    let (tail, terms_used, last) = bernoulli_tail(wp, &base, |n| {
        let d = 2 * n as u64;
        let denom = Integer::from(d) * (d + 1) * (d + 2);
        let t = Float::with_val(wp, &(bernoulli(d as usize + 2) / denom)) / &w_pow;
        w_pow *= &w_sq;
        t
    });
    Ok(EvalResult {
        value: Float::with_val(prec, base + tail - correction),
        terms_used,
        last_term_magnitude: Float::with_val(prec, last),
        precision: prec,
    })
}

static EULER_GAMMA: Mutex<Option<HashMap<u32, Float>>> = Mutex::new(None);
static LOG_GLAISHER: Mutex<Option<HashMap<u32, Float>>> = Mutex::new(None);

fn memo(cache: &Mutex<Option<HashMap<u32, Float>>>, prec: u32, make: impl FnOnce() -> Float) -> Float {
    if let Some(v) = cache.lock().unwrap().get_or_insert_with(HashMap::new).get(&prec) {
        return v.clone();
    }
    let v = make();
    cache
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .entry(prec)
        .or_insert(v)
        .clone()
}

fn em_cutoff(prec: u32) -> u32 {
    (prec / 4).max(16)
}

/// Euler–Mascheroni constant `γ`.
pub fn euler_gamma(prec: u32) -> Float {
    assert!(prec >= 64, "euler_gamma needs at least 64 bits");
    memo(&EULER_GAMMA, prec, || euler_gamma_with(em_cutoff(prec), prec))
}

/// `γ = H_N - log N - 1/(2N) + Σ_k B_{2k} / (2k N^{2k})`.
pub fn euler_gamma_with(n_cut: u32, prec: u32) -> Float {
    assert!(n_cut >= 1);
    let wp = prec + GUARD_BITS;
    let mut h = Float::with_val(wp, 0);
    for k in 1..=n_cut {
        h += Float::with_val(wp, 1) / k;
    }
    let n = Float::with_val(wp, n_cut);
    let mut g = h - Float::with_val(wp, n.ln_ref()) - Float::with_val(wp, Float::with_val(wp, 1) / &n) / 2u32;
    let n_sq = Float::with_val(wp, n.square_ref());
    let mut n_pow = n_sq.clone();
    let (tail, _, _) = bernoulli_tail(wp, &g, |k| {
        let t = Float::with_val(wp, &(bernoulli(2 * k as usize) / (2 * k))) / &n_pow;
        n_pow *= &n_sq;
        t
    });
    g += tail;
    Float::with_val(prec, g)
}

/// `ζ'(2) = -Σ_{n≥1} log n / n²`.
pub fn zeta_prime_two(prec: u32) -> Float {
    zeta_prime_two_with(em_cutoff(prec), prec)
}

/// Euler–Maclaurin with the first `n_cut - 1` terms summed directly.
pub fn zeta_prime_two_with(n_cut: u32, prec: u32) -> Float {
    assert!(n_cut >= 2);
    let wp = prec + GUARD_BITS;
    let mut s = Float::with_val(wp, 0);
    for k in 2..n_cut {
        let k_f = Float::with_val(wp, k);
        s += k_f.clone().ln() / Float::with_val(wp, k_f.square_ref());
    }
    let n = Float::with_val(wp, n_cut);
    let ln_n = Float::with_val(wp, n.ln_ref());
    s += Float::with_val(wp, &ln_n + 1u32) / &n;
    s += Float::with_val(wp, &ln_n / Float::with_val(wp, n.square_ref())) / 2u32;

    // f^{(2k-1)}(N) = -(2k)! N^{-2k-1} (log N - H_{2k} + 1)
    let n_sq = Float::with_val(wp, n.square_ref());
    let mut n_pow = Float::with_val(wp, &n_sq * &n);
    let mut harmonic = Rational::new();
    let (tail, _, _) = bernoulli_tail(wp, &s, |k| {
        let k2 = 2 * k;
        harmonic += Rational::from((1, k2 - 1)) + Rational::from((1, k2));
        let factor = Float::with_val(wp, &ln_n - Float::with_val(wp, &harmonic)) + 1u32;
        let t = Float::with_val(wp, bernoulli(k2 as usize)) * factor / &n_pow;
        n_pow *= &n_sq;
        t
    });
    Float::with_val(prec, -(s + tail))
}

/// `log A = (γ + log 2π)/12 - ζ'(2)/(2π²)`.
///
/// ```
/// use barnes_core::barnes::log_glaisher;
/// let v = log_glaisher(64).to_f64();
/// assert!((v - 0.24875447).abs() < 1e-8);
/// ```
pub fn log_glaisher(prec: u32) -> Float {
    assert!(prec >= 64, "log_glaisher needs at least 64 bits");
    memo(&LOG_GLAISHER, prec, || {
        let wp = prec + GUARD_BITS;
        let pi = Float::with_val(wp, Constant::Pi);
        let two_pi = Float::with_val(wp, &pi * 2u32);
        let mut v = (euler_gamma(wp) + two_pi.ln()) / 12u32;
        v -= zeta_prime_two(wp) / (pi.square() * 2u32);
        Float::with_val(prec, v)
    })
}

/// Canonical product for `log G(z+1)` truncated after `k_terms` factors:
/// `(z/2) log 2π - z(z+1)/2 - γz²/2 + Σ_{k≤K} [k log(1+z/k) - z + z²/(2k)]`.
pub fn log_g_weierstrass(z: &Float, k_terms: u32, prec: u32) -> Result<Float> {
    if z.is_nan() || *z <= -1 {
        return Err(Error::Domain(format!("log_g_weierstrass requires z > -1, got {}", z.to_f64())));
    }
    if k_terms == 0 {
        return Err(Error::out_of_range("K", k_terms, "K >= 1"));
    }
    // k log(1+z/k) - z cancels roughly 2 log2(k/z) bits.
    let wp = prec + GUARD_BITS + 2 * (32 - k_terms.leading_zeros());
    let z = Float::with_val(wp, z);
    let z_sq = Float::with_val(wp, z.square_ref());
    let mut sum = Float::with_val(wp, 0);
    for k in 1..=k_terms {
        let ratio = Float::with_val(wp, &z / k);
        let mut t = ratio.ln_1p() * k;
        t -= &z;
        t += Float::with_val(wp, &z_sq / (2 * k));
        sum += t;
    }
    let pi = Float::with_val(wp, Constant::Pi);
    let mut v = Float::with_val(wp, Float::with_val(wp, &pi * 2u32).ln() * &z) / 2u32;
    v -= Float::with_val(wp, &z_sq + &z) / 2u32;
    v -= euler_gamma(wp) * &z_sq / 2u32;
    v += sum;
    Ok(Float::with_val(prec, v))
}

/// `|log G(z) + log Γ(z) - log G(z+1)|` for `z ≥ 2`.
pub fn functional_equation_residual(z: &Float, prec: u32) -> Result<Float> {
    if z.is_nan() || *z < 2 {
        return Err(Error::out_of_range("z", z.to_f64(), "z >= 2"));
    }
    let wp = prec + GUARD_BITS;
    let z = Float::with_val(wp, z);
    let g_z = log_barnes_g(&Float::with_val(wp, &z - 1u32), prec)?.value;
    let g_z1 = log_barnes_g(&z, prec)?.value;
    let lg = log_gamma(&z, prec)?.value;
    Ok(Float::with_val(prec, g_z + lg - g_z1).abs())
}
