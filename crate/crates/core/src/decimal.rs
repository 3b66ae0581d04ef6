//! Scientific decimal rendering with round-half-even.
//!
//! Output looks like `-3.80007230719156835910256254456e21`: one leading
//! digit, exactly `digits` significant digits, and an `e{k}` exponent (no
//! `+` sign). Zero renders as `0.000…e0`.

use rug::{Float, Integer, Rational};

fn pow10(e: u32) -> Integer {
    Integer::from(Integer::u_pow_u(10, e))
}

/// `floor(log10 |x|)` for nonzero `x`.
fn decimal_exponent(x: &Rational) -> i64 {
    let bits = x.numer().significant_bits() as i64 - x.denom().significant_bits() as i64;
    let mut e = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let a = Rational::from(x.abs_ref());
    let scaled = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from(pow10(e as u32))
        } else {
            Rational::from((1, pow10((-e) as u32)))
        }
    };
    while scaled(e) > a {
        e -= 1;
    }
    while scaled(e + 1) <= a {
        e += 1;
    }
    e
}

/// Rounds `num/den` (both positive) to the nearest integer, ties to even.
fn round_half_even(num: &Integer, den: &Integer) -> Integer {
    let (q, r) = Integer::from(num).div_rem_floor(den.clone());
    let twice = Integer::from(&r << 1);
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1u32,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q + 1u32
            } else {
                q
            }
        }
    }
}

/// Renders an exact rational to `digits` significant digits.
///
/// ```
/// use barnes_core::decimal::to_scientific;
/// use barnes_core::Rational;
/// assert_eq!(to_scientific(&Rational::from((1, 3)), 5), "3.3333e-1");
/// assert_eq!(to_scientific(&Rational::from(125), 2), "1.2e2");
/// ```
pub fn to_scientific(x: &Rational, digits: u32) -> String {
    assert!(digits >= 1, "at least one significant digit");
    if x.cmp0().is_eq() {
        return format_mantissa(false, &"0".repeat(digits as usize), 0);
    }
    let negative = x.cmp0().is_lt();
    let mut e = decimal_exponent(x);
    let shift = digits as i64 - 1 - e;
    let (mut num, mut den) = (Integer::from(x.numer().abs_ref()), x.denom().clone());
    if shift >= 0 {
        num *= pow10(shift as u32);
    } else {
        den *= pow10((-shift) as u32);
    }
    let mut q = round_half_even(&num, &den);
    if q == pow10(digits) {
        q /= 10u32;
        e += 1;
    }
    format_mantissa(negative, &q.to_string(), e)
}

fn format_mantissa(negative: bool, digits: &str, exp: i64) -> String {
    let mut s = String::with_capacity(digits.len() + 8);
    if negative {
        s.push('-');
    }
    s.push_str(&digits[..1]);
    if digits.len() > 1 {
        s.push('.');
        s.push_str(&digits[1..]);
    }
    s.push('e');
    s.push_str(&exp.to_string());
    s
}

/// Renders a float through its exact binary value, so the only rounding is
/// the final decimal one.
pub fn float_to_scientific(x: &Float, digits: u32) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    let exact = x.to_rational().expect("finite float");
    to_scientific(&exact, digits)
}

/// Number of leading significant digits on which two renderings agree.
pub fn agreeing_digits(a: &str, b: &str) -> usize {
    let split = |s: &str| -> (String, String) {
        let (m, e) = s.split_once('e').unwrap_or((s, "0"));
        (m.replace(['.', '-'], ""), format!("{}{}", s.starts_with('-'), e))
    };
    let (ma, ea) = split(a);
    let (mb, eb) = split(b);
    if ea != eb {
        return 0;
    }
    ma.chars().zip(mb.chars()).take_while(|(x, y)| x == y).count()
}
