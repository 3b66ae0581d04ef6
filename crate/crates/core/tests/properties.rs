use barnes_core::asym::{bn_tail_approx, bn_tail_approx_exact, leading_predictor};
use barnes_core::barnes::{log_barnes_g, log_gamma};
use barnes_core::coeffs::{bn_exact, c_coeff};
use barnes_core::{Float, Rational};
use proptest::prelude::*;

const P: u32 = 192;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12)
        .prop_filter("nonzero", |(p, _)| *p != 0)
        .prop_map(|(p, q)| Rational::from((p, q)))
}

#[test]
fn one_term_ratio_is_independent_of_r() {
    for n in 1..=60u32 {
        let ratios: Vec<Float> = [Rational::from(1), Rational::from(2), Rational::from((1, 2))]
            .iter()
            .map(|r| bn_tail_approx(n + 1, r, 1, P).unwrap() / leading_predictor(n + 1, r, P))
            .collect();
        assert_eq!(ratios[0], ratios[1], "n = {n}");
        assert_eq!(ratios[0], ratios[2], "n = {n}");
    }
}

#[test]
fn exact_ratio_is_nearly_independent_of_r() {
    for n in 10..=40u32 {
        let ratio = |r: Rational| {
            let exact = Float::with_val(P, &bn_exact(n, &r).unwrap());
            exact / leading_predictor(n, &r, P)
        };
        let base = ratio(Rational::from(1));
        for r in [Rational::from(2), Rational::from((1, 2))] {
            let d = Float::with_val(P, ratio(r) - &base).abs();
            assert!(d < 1e-3, "n = {n}");
        }
    }
}

#[test]
fn g_values_at_integers_are_superfactorials() {
    let mut acc = Float::with_val(P, 0);
    for m in 1..=30u32 {
        // log G(m+1) = Σ_{k<m} log k!
        if m >= 2 {
            acc += Float::with_val(P, m - 1).ln_gamma() + Float::with_val(P, m - 1).ln();
        }
        let v = log_barnes_g(&Float::with_val(P, m), P).unwrap().value;
        let d = Float::with_val(P, v - &acc).abs();
        assert!(d < Float::with_val(P, Float::i_exp(1, -(P as i32) + 24)) * (1u32 + m * m), "m = {m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tail_with_one_term_is_r_times_c(n in 2u32..60, r in small_rational()) {
        prop_assert_eq!(bn_tail_approx_exact(n, &r, 1).unwrap(), &r * c_coeff(n));
    }

    #[test]
    fn first_coefficient_is_linear_in_r(r in small_rational()) {
        prop_assert_eq!(bn_exact(1, &r).unwrap(), &r * c_coeff(1));
        let b2 = bn_exact(2, &r).unwrap();
        let expected = (&r * c_coeff(2)) + (r.clone().square() * c_coeff(1).square()) / 2u32;
        prop_assert_eq!(b2, expected);
    }

    #[test]
    fn gamma_recurrence(z in 0.05f64..60.0) {
        let zf = Float::with_val(P, z);
        let a = log_gamma(&Float::with_val(P, &zf + 1u32), P).unwrap().value;
        let b = log_gamma(&zf, P).unwrap().value;
        let d = Float::with_val(P, a - b - zf.ln()).abs();
        prop_assert!(d < Float::with_val(P, Float::i_exp(1, -(P as i32) + 16)));
    }

    #[test]
    fn barnes_functional_equation(z in 0.5f64..45.0) {
        // G(z+2) = Γ(z+1) G(z+1)
        let zf = Float::with_val(P, z);
        let up = log_barnes_g(&Float::with_val(P, &zf + 1u32), P).unwrap().value;
        let here = log_barnes_g(&zf, P).unwrap().value;
        let lg = log_gamma(&Float::with_val(P, &zf + 1u32), P).unwrap().value;
        let d = Float::with_val(P, up - here - lg).abs();
        prop_assert!(d < Float::with_val(P, Float::i_exp(1, -(P as i32) + 20)));
    }
}
